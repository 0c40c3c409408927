#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kddx/dataset.hpp"
#include "kddx/ingest.hpp"

namespace kddx {

// Per categorical column: dense codes 0..V-1 assigned by ascending
// lexicographic token order, so the encoding is reproducible regardless of
// record order.
struct Encoder {
    std::vector<std::string> vocabulary;  // sorted; code == index

    std::int64_t code_of(const std::string& token) const;  // -1 if unseen
    const std::string& token_of(std::size_t code) const { return vocabulary[code]; }
};

struct ScalerColumn {
    double mean = 0.0;
    double std = 0.0;  // population std
    bool constant = false;
};

struct PreprocessorState {
    std::map<std::size_t, Encoder> encoders;  // categorical column -> encoder
    std::vector<ScalerColumn> scaler;         // size kNumFeatures; identity for categoricals
    bool scaler_fitted = false;
    std::string fitted_on;  // provenance

    std::string to_json() const;
    static PreprocessorState from_json(const std::string& text);
    void save(const std::string& path) const;
    static PreprocessorState load(const std::string& path);
};

struct SplitSpec {
    double test_fraction = 0.20;
    std::uint64_t seed = 42;
    bool stratified = true;
};

// Fit categorical vocabularies over all records (encoders are schema-level;
// scaler statistics come later, from training rows only).
PreprocessorState fit_encoders(const RawDataset& ds);

// Encode categoricals and build integer class ids without scaling. Class
// names are the sorted distinct labels.
Dataset encode(const RawDataset& ds, const PreprocessorState& st);

// Population mean/std per numeric column, computed over the given dataset
// (the caller passes the training partition only).
void fit_scaler(PreprocessorState& st, const Dataset& train);

// Standardize numeric columns in place: (x - mean) / std, constant columns
// to 0. Categorical codes are left untouched.
void apply_scaler(Dataset& ds, const PreprocessorState& st);

// Full transform for the inference path: encode + scale in one step.
Dataset transform(const RawDataset& ds, const PreprocessorState& st);

// Seeded (optionally stratified) split. Per class, the test share is
// round(count * fraction) clamped to [1, count-1]; a 1-member class falls
// back to train with a warning on stderr.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitSpec& spec);

// Index-level variant; returns (train_rows, test_rows), each sorted ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    const std::vector<std::int32_t>& y, std::size_t n_classes, const SplitSpec& spec);

}  // namespace kddx
