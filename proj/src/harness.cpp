#include "kddx/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "kddx/model_io.hpp"
#include "kddx/rng.hpp"

namespace kddx {

using nlohmann::json;
namespace fs = std::filesystem;

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "decision_tree") return ModelKind::DecisionTree;
    if (s == "random_forest") return ModelKind::RandomForest;
    if (s == "svm") return ModelKind::Svm;
    throw ConfigError("unknown model kind: '" + s + "'");
}

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::DecisionTree: return "decision_tree";
        case ModelKind::RandomForest: return "random_forest";
        case ModelKind::Svm: return "svm";
    }
    return "?";
}

namespace {

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}
    template <typename F>
    auto time(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            sink_[name] += seconds_since(t0);
        } else {
            auto r = f();
            sink_[name] += seconds_since(t0);
            return r;
        }
    }
    static double seconds_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }

private:
    std::map<std::string, double>& sink_;
};

json model_spec_to_json(const ModelSpec& m) {
    json j;
    j["name"] = m.name;
    j["kind"] = to_string(m.kind);
    j["smote"] = m.smote;
    json p;
    switch (m.kind) {
        case ModelKind::DecisionTree:
            if (m.tree.max_depth) p["max_depth"] = *m.tree.max_depth;
            p["min_samples_split"] = m.tree.min_samples_split;
            p["min_impurity_decrease"] = m.tree.min_impurity_decrease;
            break;
        case ModelKind::RandomForest:
            p["n_trees"] = m.forest.n_trees;
            p["features_per_split"] = m.forest.features_per_split;
            p["bootstrap"] = m.forest.bootstrap;
            p["seed"] = m.forest.seed;
            p["n_threads"] = m.forest.n_threads;
            if (m.forest.tree.max_depth) p["max_depth"] = *m.forest.tree.max_depth;
            p["min_samples_split"] = m.forest.tree.min_samples_split;
            p["min_impurity_decrease"] = m.forest.tree.min_impurity_decrease;
            break;
        case ModelKind::Svm:
            p["lambda"] = m.svm.lambda;
            p["epochs"] = m.svm.epochs;
            p["seed"] = m.svm.seed;
            break;
    }
    j["params"] = p;
    return j;
}

ModelSpec model_spec_from_json(const json& j, std::uint64_t default_seed) {
    ModelSpec m;
    m.kind = model_kind_from_string(j.at("kind").get<std::string>());
    m.name = j.value("name", to_string(m.kind));
    m.smote = j.value("smote", false);
    const json p = j.value("params", json::object());
    switch (m.kind) {
        case ModelKind::DecisionTree:
            if (p.contains("max_depth")) m.tree.max_depth = p.at("max_depth").get<std::size_t>();
            m.tree.min_samples_split = p.value("min_samples_split", std::size_t{2});
            m.tree.min_impurity_decrease = p.value("min_impurity_decrease", 0.0);
            break;
        case ModelKind::RandomForest:
            m.forest.n_trees = p.value("n_trees", std::size_t{100});
            m.forest.features_per_split = p.value("features_per_split", std::size_t{0});
            m.forest.bootstrap = p.value("bootstrap", true);
            m.forest.seed = p.value("seed", default_seed);
            m.forest.n_threads = p.value("n_threads", std::size_t{0});
            if (p.contains("max_depth"))
                m.forest.tree.max_depth = p.at("max_depth").get<std::size_t>();
            m.forest.tree.min_samples_split = p.value("min_samples_split", std::size_t{2});
            m.forest.tree.min_impurity_decrease = p.value("min_impurity_decrease", 0.0);
            break;
        case ModelKind::Svm:
            m.svm.lambda = p.value("lambda", 1e-4);
            m.svm.epochs = p.value("epochs", std::size_t{5});
            m.svm.seed = p.value("seed", default_seed);
            break;
    }
    return m;
}

json confusion_to_json(const ConfusionMatrix& cm) {
    return {{"n_classes", cm.n_classes},
            {"counts", cm.counts},
            {"class_names", cm.class_names}};
}

ConfusionMatrix confusion_from_json(const json& j) {
    ConfusionMatrix cm;
    cm.n_classes = j.at("n_classes").get<std::size_t>();
    cm.counts = j.at("counts").get<std::vector<std::size_t>>();
    cm.class_names = j.at("class_names").get<std::vector<std::string>>();
    return cm;
}

// Seeded stratified subsample of at most `cap` rows.
Dataset subsample_stratified(const Dataset& ds, std::size_t cap, std::uint64_t seed) {
    const double keep = static_cast<double>(cap) / static_cast<double>(ds.n_rows);
    std::vector<std::vector<std::size_t>> by_class(ds.n_classes());
    for (std::size_t i = 0; i < ds.n_rows; ++i)
        by_class[static_cast<std::size_t>(ds.y[i])].push_back(i);
    std::vector<std::size_t> rows;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        if (members.empty()) continue;
        std::size_t take = static_cast<std::size_t>(
            std::llround(static_cast<double>(members.size()) * keep));
        take = std::clamp<std::size_t>(take, 1, members.size());
        Rng rng(mix_seed(seed, 0x500 + c));
        rng.shuffle(members);
        rows.insert(rows.end(), members.begin(), members.begin() + take);
    }
    std::sort(rows.begin(), rows.end());
    return ds.select_rows(rows);
}

}  // namespace

std::string ExperimentConfig::to_json() const {
    json j;
    j["dataset_path"] = dataset_path;
    j["label_mode"] = kddx::to_string(label_mode);
    j["label_mapping_path"] = label_mapping_path;
    j["split"] = {{"test_fraction", split.test_fraction},
                  {"seed", split.seed},
                  {"stratified", split.stratified}};
    j["smote"] = {{"k_neighbors", smote.k_neighbors},
                  {"seed", smote.seed},
                  {"neighbor_pool_cap", smote.neighbor_pool_cap}};
    j["svm_train_cap"] = svm_train_cap;
    j["strict_parse"] = strict_parse;
    j["output_dir"] = output_dir;
    json models_j = json::array();
    for (const auto& m : models) models_j.push_back(model_spec_to_json(m));
    j["models"] = models_j;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.dataset_path = j.at("dataset_path").get<std::string>();
        cfg.label_mode = label_mode_from_string(j.value("label_mode", "five_category"));
        cfg.label_mapping_path = j.value("label_mapping_path", "");
        if (j.contains("split")) {
            const json& s = j["split"];
            cfg.split.test_fraction = s.value("test_fraction", 0.20);
            cfg.split.seed = s.value("seed", std::uint64_t{42});
            cfg.split.stratified = s.value("stratified", true);
        }
        if (j.contains("smote")) {
            const json& s = j["smote"];
            cfg.smote.k_neighbors = s.value("k_neighbors", std::size_t{5});
            cfg.smote.seed = s.value("seed", cfg.split.seed);
            cfg.smote.neighbor_pool_cap =
                s.value("neighbor_pool_cap", std::size_t{4096});
        } else {
            cfg.smote.seed = cfg.split.seed;
        }
        cfg.svm_train_cap = j.value("svm_train_cap", std::size_t{100000});
        cfg.strict_parse = j.value("strict_parse", true);
        cfg.output_dir = j.value("output_dir", "out");
        if (!j.contains("models") || !j["models"].is_array() || j["models"].empty())
            throw ConfigError("config: at least one model is required");
        for (const auto& m : j["models"])
            cfg.models.push_back(model_spec_from_json(m, cfg.split.seed));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

std::string EvaluationReport::to_csv() const {
    std::string out = "Model,TrainScore,TestScore,F1Score\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", r.name.c_str(),
                      r.train_score, r.test_score, r.f1_score);
        out += buf;
    }
    return out;
}

std::string EvaluationReport::to_console_table() const {
    std::size_t name_w = 5;
    for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
    std::ostringstream os;
    os << std::left;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-*s  %11s  %11s  %11s\n",
                  static_cast<int>(name_w), "Model", "Train Score", "Test Score",
                  "F1 Score");
    os << buf;
    os << std::string(name_w + 2 + 3 * 13, '-') << "\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-*s  %11.6f  %11.6f  %11.6f\n",
                      static_cast<int>(name_w), r.name.c_str(), r.train_score,
                      r.test_score, r.f1_score);
        os << buf;
    }
    return os.str();
}

std::string EvaluationReport::to_json() const {
    json j;
    j["class_names"] = class_names;
    j["config"] = json::parse(config_echo.empty() ? "{}" : config_echo);
    j["dataset_hash"] = dataset_hash;
    j["dataset_provenance"] = dataset_provenance;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["stage_seconds"] = stage_seconds;
    j["svm_train_cap_applied"] = svm_train_cap_applied;

    json rows_j = json::array();
    for (const auto& r : rows) {
        json rj;
        rj["model"] = r.name;
        rj["train_score"] = r.train_score;
        rj["test_score"] = r.test_score;
        rj["f1_score"] = r.f1_score;
        rj["train_confusion"] = confusion_to_json(r.train_confusion);
        rj["test_confusion"] = confusion_to_json(r.test_confusion);
        json pc = json::array();
        for (const auto& m : r.test_metrics.per_class)
            pc.push_back({{"precision", m.precision},
                          {"recall", m.recall},
                          {"f1", m.f1},
                          {"support", m.support},
                          {"zero_division", m.zero_division}});
        rj["test_metrics"] = {{"accuracy", r.test_metrics.accuracy},
                              {"weighted_f1", r.test_metrics.weighted_f1},
                              {"macro_f1", r.test_metrics.macro_f1},
                              {"per_class", pc}};
        if (r.resample) {
            json rs = json::array();
            for (const auto& c : r.resample->per_class)
                rs.push_back({{"before", c.before},
                              {"after", c.after},
                              {"synthetic", c.synthetic}});
            rj["resample"] = rs;
        }
        rj["train_seconds"] = r.train_seconds;
        rows_j.push_back(std::move(rj));
    }
    j["rows"] = rows_j;
    return j.dump(2);
}

EvaluationReport EvaluationReport::from_json(const std::string& text) {
    json j = json::parse(text);
    EvaluationReport rep;
    rep.class_names = j.at("class_names").get<std::vector<std::string>>();
    rep.config_echo = j.at("config").dump(2);
    rep.dataset_hash = j.at("dataset_hash").get<std::string>();
    rep.dataset_provenance = j.at("dataset_provenance").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.started_at = j.at("started_at").get<std::string>();
    rep.stage_seconds = j.at("stage_seconds").get<std::map<std::string, double>>();
    rep.svm_train_cap_applied = j.at("svm_train_cap_applied").get<std::size_t>();
    for (const auto& rj : j.at("rows")) {
        ModelResult r;
        r.name = rj.at("model").get<std::string>();
        r.train_score = rj.at("train_score").get<double>();
        r.test_score = rj.at("test_score").get<double>();
        r.f1_score = rj.at("f1_score").get<double>();
        r.train_confusion = confusion_from_json(rj.at("train_confusion"));
        r.test_confusion = confusion_from_json(rj.at("test_confusion"));
        const json& tm = rj.at("test_metrics");
        r.test_metrics.accuracy = tm.at("accuracy").get<double>();
        r.test_metrics.weighted_f1 = tm.at("weighted_f1").get<double>();
        r.test_metrics.macro_f1 = tm.at("macro_f1").get<double>();
        for (const auto& pc : tm.at("per_class")) {
            ClassMetrics m;
            m.precision = pc.at("precision").get<double>();
            m.recall = pc.at("recall").get<double>();
            m.f1 = pc.at("f1").get<double>();
            m.support = pc.at("support").get<std::size_t>();
            m.zero_division = pc.at("zero_division").get<bool>();
            r.test_metrics.per_class.push_back(m);
        }
        if (rj.contains("resample")) {
            ResampleReport rs;
            for (const auto& c : rj.at("resample"))
                rs.per_class.push_back({c.at("before").get<std::size_t>(),
                                        c.at("after").get<std::size_t>(),
                                        c.at("synthetic").get<std::size_t>()});
            r.resample = std::move(rs);
        }
        r.train_seconds = rj.at("train_seconds").get<double>();
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

std::vector<std::string> emit_report(const EvaluationReport& report,
                                     const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output dir: " + dir);

    std::vector<std::string> written;
    const std::string csv_path = (fs::path(dir) / "report.csv").string();
    const std::string json_path = (fs::path(dir) / "report.json").string();
    {
        std::ofstream f(csv_path);
        if (!f) throw IoError("cannot write " + csv_path);
        f << report.to_csv();
    }
    {
        std::ofstream f(json_path);
        if (!f) throw IoError("cannot write " + json_path);
        f << report.to_json() << "\n";
    }
    written.push_back(csv_path);
    written.push_back(json_path);
    return written;
}

EvaluationReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.models.empty()) throw ConfigError("config: at least one model is required");

    EvaluationReport rep;
    rep.started_at = iso8601_now();
    rep.seed = cfg.split.seed;
    rep.config_echo = cfg.to_json();
    StageTimer timer(rep.stage_seconds);

    // (1) ingest
    RawDataset raw = timer.time("ingest", [&] {
        auto ds = parse_kdd_file(cfg.dataset_path, cfg.strict_parse);
        std::ifstream f(cfg.dataset_path, std::ios::binary);
        std::ostringstream bytes;
        bytes << f.rdbuf();
        rep.dataset_hash = fnv1a_hex(bytes.str());
        return ds;
    });

    // (2) clean + label mapping
    RawDataset mapped = timer.time("clean", [&] {
        RawDataset d = dedup(raw);
        LabelMapping m;
        switch (cfg.label_mode) {
            case LabelMode::Raw: m = LabelMapping::raw(); break;
            case LabelMode::Binary: m = LabelMapping::binary(); break;
            case LabelMode::FiveCategory:
                if (cfg.label_mapping_path.empty())
                    throw ConfigError("five_category mode requires label_mapping_path");
                m = LabelMapping::load_five_category(cfg.label_mapping_path);
                break;
        }
        return map_labels(d, m);
    });
    rep.dataset_provenance = mapped.source;
    rep.class_names = [&] {
        std::set<std::string> s;
        for (const auto& r : mapped.records) s.insert(r.label);
        return std::vector<std::string>(s.begin(), s.end());
    }();

    // (3) encode, (4) split, then scaler fitted on the training partition only
    PreprocessorState state = timer.time("preprocess", [&] { return fit_encoders(mapped); });
    Dataset full = timer.time("preprocess", [&] { return encode(mapped, state); });
    auto [train, test] =
        timer.time("split", [&] { return stratified_split(full, cfg.split); });
    timer.time("preprocess", [&] {
        fit_scaler(state, train);
        apply_scaler(train, state);
        apply_scaler(test, state);
    });
    // fingerprint covers the semantic state only; the source path is provenance
    const std::string preproc_fp = [&] {
        PreprocessorState canonical = state;
        canonical.fitted_on.clear();
        return fnv1a_hex(canonical.to_json());
    }();

    // SMOTE output is shared across every model that requests it
    std::optional<std::pair<Dataset, ResampleReport>> smoted;
    auto smote_train = [&]() -> const std::pair<Dataset, ResampleReport>& {
        if (!smoted)
            smoted = timer.time("smote", [&] { return smote_resample(train, cfg.smote); });
        return *smoted;
    };

    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output dir: " + cfg.output_dir);

    for (const auto& spec : cfg.models) {
        ModelResult res;
        res.name = spec.name;

        const Dataset* fit_data = &train;
        if (spec.smote) {
            const auto& [ds, rs] = smote_train();
            fit_data = &ds;
            res.resample = rs;
        }

        TrainedModel tm;
        tm.class_names = train.class_names;
        tm.preprocessor_fingerprint = preproc_fp;

        const auto t0 = std::chrono::steady_clock::now();
        try {
            switch (spec.kind) {
                case ModelKind::DecisionTree:
                    tm.model = fit_tree(*fit_data, spec.tree);
                    break;
                case ModelKind::RandomForest:
                    tm.model = fit_forest(*fit_data, spec.forest);
                    break;
                case ModelKind::Svm: {
                    const Dataset* svm_data = fit_data;
                    Dataset capped;
                    if (cfg.svm_train_cap > 0 && fit_data->n_rows > cfg.svm_train_cap) {
                        capped = subsample_stratified(*fit_data, cfg.svm_train_cap,
                                                      cfg.split.seed);
                        svm_data = &capped;
                        rep.svm_train_cap_applied = cfg.svm_train_cap;
                    }
                    tm.model = fit_svm(*svm_data, spec.svm);
                    break;
                }
            }
        } catch (const DataError& e) {
            throw DataError("stage train[" + spec.name + "]: " + e.what());
        }
        res.train_seconds = StageTimer::seconds_since(t0);
        rep.stage_seconds["train"] += res.train_seconds;

        timer.time("evaluate", [&] {
            // train score is reported on the un-resampled training partition
            const auto train_pred = tm.predict(train);
            const auto test_pred = tm.predict(test);
            res.train_confusion =
                confusion(train.y, train_pred, train.n_classes(), train.class_names);
            res.test_confusion =
                confusion(test.y, test_pred, test.n_classes(), test.class_names);
            res.train_score = compute_metrics(res.train_confusion).accuracy;
            res.test_metrics = compute_metrics(res.test_confusion);
            res.test_score = res.test_metrics.accuracy;
            res.f1_score = res.test_metrics.weighted_f1;
        });

        std::string slug = spec.name;
        for (auto& ch : slug)
            if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
        tm.save((fs::path(cfg.output_dir) / ("model_" + slug + ".json")).string());

        rep.rows.push_back(std::move(res));
    }

    state.save((fs::path(cfg.output_dir) / "preprocessor.json").string());
    emit_report(rep, cfg.output_dir);
    return rep;
}

}  // namespace kddx
