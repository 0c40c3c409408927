#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kddx/forest.hpp"
#include "kddx/svm.hpp"
#include "kddx/tree.hpp"

namespace kddx {

// Self-describing persisted model: kind tag + hyperparams + structure, plus
// the class names and a fingerprint of the preprocessor it was trained
// behind, so inference can refuse mismatched inputs.
struct TrainedModel {
    std::variant<DecisionTreeModel, ForestModel, SvmOvrModel> model;
    std::vector<std::string> class_names;
    std::string preprocessor_fingerprint;

    std::string kind() const;
    std::vector<std::int32_t> predict(const Dataset& ds) const;

    std::string to_json() const;
    static TrainedModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static TrainedModel load(const std::string& path);
};

// FNV-1a 64 over bytes, hex-encoded; used for dataset and preprocessor
// fingerprints in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace kddx
