#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kddx/forest.hpp"
#include "kddx/ingest.hpp"
#include "kddx/metrics.hpp"
#include "kddx/preprocess.hpp"
#include "kddx/smote.hpp"
#include "kddx/svm.hpp"

namespace kddx {

enum class ModelKind { DecisionTree, RandomForest, Svm };

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind k);

struct ModelSpec {
    std::string name;  // row label in the report
    ModelKind kind = ModelKind::DecisionTree;
    bool smote = false;
    TreeParams tree;
    ForestParams forest;
    SvmParams svm;
};

struct ExperimentConfig {
    std::string dataset_path;
    LabelMode label_mode = LabelMode::FiveCategory;
    std::string label_mapping_path;  // five_category token->category file
    SplitSpec split;
    SmoteConfig smote;
    std::vector<ModelSpec> models;
    std::string output_dir = "out";
    // Pegasos on the full training partition is unnecessary for a linear
    // model; stratified seeded cap keeps runtime bounded and is recorded in
    // the report.
    std::size_t svm_train_cap = 100000;
    bool strict_parse = true;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig load(const std::string& path);
};

struct ModelResult {
    std::string name;
    double train_score = 0.0;  // train accuracy
    double test_score = 0.0;   // test accuracy
    double f1_score = 0.0;     // test weighted F1
    ConfusionMatrix train_confusion;
    ConfusionMatrix test_confusion;
    MetricsBundle test_metrics;
    std::optional<ResampleReport> resample;
    double train_seconds = 0.0;
};

struct EvaluationReport {
    std::vector<ModelResult> rows;
    std::vector<std::string> class_names;
    std::string config_echo;       // the resolved config as JSON text
    std::string dataset_hash;      // FNV-1a of the raw dataset bytes
    std::string dataset_provenance;
    std::uint64_t seed = 0;
    std::string started_at;        // ISO-8601
    std::map<std::string, double> stage_seconds;
    std::size_t svm_train_cap_applied = 0;  // 0 = no cap hit

    std::string to_json() const;
    static EvaluationReport from_json(const std::string& text);
    std::string to_csv() const;           // Model,TrainScore,TestScore,F1Score
    std::string to_console_table() const; // aligned text table
};

// Full pipeline in order: ingest -> dedup -> map labels -> encode -> split ->
// fit scaler (train only) -> scale -> per model [optional SMOTE on train] ->
// train -> evaluate. Persists report + models under cfg.output_dir.
EvaluationReport run_experiment(const ExperimentConfig& cfg);

// Write report.csv and report.json under dir, return the paths written.
std::vector<std::string> emit_report(const EvaluationReport& report, const std::string& dir);

}  // namespace kddx
