#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "kddx/harness.hpp"
#include "kddx/model_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Resolves relative dataset paths against KDDX_DATA_DIR when set.
std::string resolve_data_path(const std::string& path) {
    if (std::filesystem::exists(path)) return path;
    if (const char* dir = std::getenv("KDDX_DATA_DIR")) {
        auto candidate = std::filesystem::path(dir) / path;
        if (std::filesystem::exists(candidate)) return candidate.string();
    }
    return path;
}

kddx::LabelMapping make_mapping(const std::string& mode, const std::string& mapping_path) {
    switch (kddx::label_mode_from_string(mode)) {
        case kddx::LabelMode::Raw: return kddx::LabelMapping::raw();
        case kddx::LabelMode::Binary: return kddx::LabelMapping::binary();
        case kddx::LabelMode::FiveCategory:
            return kddx::LabelMapping::load_five_category(mapping_path);
    }
    throw kddx::ConfigError("bad label mode");
}

int cmd_ingest(const std::string& input, const std::string& mode,
               const std::string& mapping_path, bool lenient) {
    auto ds = kddx::parse_kdd_file(resolve_data_path(input), !lenient);
    auto deduped = kddx::dedup(ds);
    auto mapped = kddx::map_labels(deduped, make_mapping(mode, mapping_path));

    std::map<std::string, std::size_t> inventory;
    for (const auto& r : mapped.records) inventory[r.label]++;

    std::cout << "source: " << mapped.source << "\n";
    std::cout << "records: " << mapped.records.size() << "\n";
    std::cout << "classes:\n";
    for (const auto& [name, count] : inventory)
        std::cout << "  " << name << ": " << count << "\n";
    return kExitOk;
}

int cmd_preprocess(const std::string& input, const std::string& mode,
                   const std::string& mapping_path, const std::string& out_path,
                   double test_fraction, std::uint64_t seed) {
    auto raw = kddx::map_labels(kddx::dedup(kddx::parse_kdd_file(resolve_data_path(input))),
                                make_mapping(mode, mapping_path));
    auto state = kddx::fit_encoders(raw);
    auto full = kddx::encode(raw, state);
    kddx::SplitSpec spec{test_fraction, seed, true};
    auto [train, test] = kddx::stratified_split(full, spec);
    kddx::fit_scaler(state, train);
    state.save(out_path);
    std::cout << "preprocessor state written to " << out_path << " (fitted on "
              << train.n_rows << " training rows, " << test.n_rows
              << " test rows held out)\n";
    return kExitOk;
}

int cmd_run(const std::string& config_path) {
    auto cfg = kddx::ExperimentConfig::load(config_path);
    cfg.dataset_path = resolve_data_path(cfg.dataset_path);
    auto report = kddx::run_experiment(cfg);
    std::cout << report.to_console_table();
    std::cout << "report written to " << cfg.output_dir << "/report.{csv,json}\n";
    return kExitOk;
}

int cmd_report(const std::string& report_path, const std::string& format) {
    std::ifstream f(report_path);
    if (!f) throw kddx::IoError("cannot read report: " + report_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    auto report = kddx::EvaluationReport::from_json(ss.str());
    if (format == "csv")
        std::cout << report.to_csv();
    else if (format == "table")
        std::cout << report.to_console_table();
    else
        std::cout << report.to_json() << "\n";
    return kExitOk;
}

int cmd_train(const std::string& input, const std::string& mode,
              const std::string& mapping_path, const std::string& kind,
              const std::string& out_path, std::uint64_t seed) {
    kddx::ExperimentConfig cfg;
    cfg.dataset_path = resolve_data_path(input);
    cfg.label_mode = kddx::label_mode_from_string(mode);
    cfg.label_mapping_path = mapping_path;
    cfg.split.seed = seed;
    cfg.smote.seed = seed;
    kddx::ModelSpec spec;
    spec.kind = kddx::model_kind_from_string(kind);
    spec.name = kind;
    spec.forest.seed = seed;
    spec.svm.seed = seed;
    cfg.models = {spec};
    cfg.output_dir = std::filesystem::path(out_path).parent_path().string();
    if (cfg.output_dir.empty()) cfg.output_dir = ".";

    auto report = kddx::run_experiment(cfg);
    std::string slug = spec.name;
    for (auto& ch : slug)
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    std::filesystem::rename(
        std::filesystem::path(cfg.output_dir) / ("model_" + slug + ".json"), out_path);
    std::cout << report.to_console_table();
    std::cout << "model written to " << out_path << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& model_path, const std::string& input,
                 const std::string& mode, const std::string& mapping_path,
                 const std::string& preproc_path) {
    auto model = kddx::TrainedModel::load(model_path);
    auto state = kddx::PreprocessorState::load(preproc_path);
    auto raw = kddx::map_labels(kddx::dedup(kddx::parse_kdd_file(resolve_data_path(input))),
                                make_mapping(mode, mapping_path));
    auto ds = kddx::transform(raw, state);
    auto pred = model.predict(ds);
    auto cm = kddx::confusion(ds.y, pred, ds.n_classes(), ds.class_names);
    auto m = kddx::compute_metrics(cm);
    std::cout << "rows: " << ds.n_rows << "\n";
    std::cout << "accuracy: " << m.accuracy << "\n";
    std::cout << "weighted_f1: " << m.weighted_f1 << "\n";
    std::cout << "macro_f1: " << m.macro_f1 << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kddx - intrusion detection experiment toolkit"};
    app.require_subcommand(1);

    std::string input, mode = "five_category";
    std::string mapping_path = "data/kdd_attack_categories.tsv";
    std::string out_path, config_path, model_path, preproc_path, kind, format = "table";
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
    bool lenient = false;

    auto* ingest = app.add_subcommand("ingest", "Parse, dedup, and summarize a KDD file");
    ingest->add_option("input", input, "KDD CSV file (optionally .gz)")->required();
    ingest->add_option("--label-mode", mode, "raw|five_category|binary");
    ingest->add_option("--mapping", mapping_path, "token<TAB>category file");
    ingest->add_flag("--lenient", lenient, "skip malformed records instead of aborting");

    auto* pre = app.add_subcommand("preprocess", "Fit encoders + scaler, persist state");
    pre->add_option("input", input)->required();
    pre->add_option("--label-mode", mode);
    pre->add_option("--mapping", mapping_path);
    pre->add_option("-o,--out", out_path, "output JSON path")->required();
    pre->add_option("--test-fraction", test_fraction);
    pre->add_option("--seed", seed);

    auto* train = app.add_subcommand("train", "Train one model with default hyperparameters");
    train->add_option("input", input)->required();
    train->add_option("--label-mode", mode);
    train->add_option("--mapping", mapping_path);
    train->add_option("--model", kind, "decision_tree|random_forest|svm")->required();
    train->add_option("-o,--out", out_path, "model output path")->required();
    train->add_option("--seed", seed);

    auto* eval = app.add_subcommand("evaluate", "Evaluate a persisted model on a dataset");
    eval->add_option("input", input)->required();
    eval->add_option("--model-file", model_path)->required();
    eval->add_option("--preprocessor", preproc_path)->required();
    eval->add_option("--label-mode", mode);
    eval->add_option("--mapping", mapping_path);

    auto* run = app.add_subcommand("run", "Run a full experiment from a config file");
    run->add_option("-c,--config", config_path, "experiment config JSON")->required();

    auto* report = app.add_subcommand("report", "Re-render a persisted report JSON");
    report->add_option("report_json", model_path)->required();
    report->add_option("--format", format, "table|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest) return cmd_ingest(input, mode, mapping_path, lenient);
        if (*pre) return cmd_preprocess(input, mode, mapping_path, out_path,
                                        test_fraction, seed);
        if (*train) return cmd_train(input, mode, mapping_path, kind, out_path, seed);
        if (*eval) return cmd_evaluate(model_path, input, mode, mapping_path, preproc_path);
        if (*run) return cmd_run(config_path);
        if (*report) return cmd_report(model_path, format);
    } catch (const kddx::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
