#include "kddx/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "kddx/error.hpp"

namespace kddx {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json tree_to_json(const DecisionTreeModel& t) {
    json nodes = json::array();
    for (const auto& nd : t.nodes) {
        nodes.push_back({{"feature", nd.feature_index},
                         {"threshold", nd.threshold},
                         {"left", nd.left},
                         {"right", nd.right},
                         {"class_id", nd.class_id},
                         {"decrease", nd.split_decrease},
                         {"histogram", nd.class_histogram}});
    }
    json hp;
    if (t.params.max_depth) hp["max_depth"] = *t.params.max_depth;
    hp["min_samples_split"] = t.params.min_samples_split;
    hp["min_impurity_decrease"] = t.params.min_impurity_decrease;
    return {{"nodes", nodes},
            {"hyperparams", hp},
            {"n_cols", t.n_cols},
            {"n_classes", t.n_classes}};
}

DecisionTreeModel tree_from_json(const json& j) {
    DecisionTreeModel t;
    for (const auto& nd : j.at("nodes")) {
        TreeNode n;
        n.feature_index = nd.at("feature").get<std::int32_t>();
        n.threshold = nd.at("threshold").get<double>();
        n.left = nd.at("left").get<std::int32_t>();
        n.right = nd.at("right").get<std::int32_t>();
        n.class_id = nd.at("class_id").get<std::int32_t>();
        n.split_decrease = nd.at("decrease").get<double>();
        n.class_histogram = nd.at("histogram").get<std::vector<std::size_t>>();
        t.nodes.push_back(std::move(n));
    }
    const json& hp = j.at("hyperparams");
    if (hp.contains("max_depth")) t.params.max_depth = hp.at("max_depth").get<std::size_t>();
    t.params.min_samples_split = hp.at("min_samples_split").get<std::size_t>();
    t.params.min_impurity_decrease = hp.at("min_impurity_decrease").get<double>();
    t.n_cols = j.at("n_cols").get<std::size_t>();
    t.n_classes = j.at("n_classes").get<std::size_t>();
    return t;
}

}  // namespace

std::string TrainedModel::kind() const {
    if (std::holds_alternative<DecisionTreeModel>(model)) return "decision_tree";
    if (std::holds_alternative<ForestModel>(model)) return "random_forest";
    return "svm_ovr";
}

std::vector<std::int32_t> TrainedModel::predict(const Dataset& ds) const {
    return std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DecisionTreeModel>)
                return predict_tree(m, ds);
            else if constexpr (std::is_same_v<T, ForestModel>)
                return predict_forest(m, ds);
            else
                return predict_svm(m, ds);
        },
        model);
}

std::string TrainedModel::to_json() const {
    json j;
    j["kind"] = kind();
    j["class_names"] = class_names;
    j["preprocessor_fingerprint"] = preprocessor_fingerprint;

    if (const auto* t = std::get_if<DecisionTreeModel>(&model)) {
        j["tree"] = tree_to_json(*t);
    } else if (const auto* f = std::get_if<ForestModel>(&model)) {
        json trees = json::array();
        for (const auto& t : f->trees) trees.push_back(tree_to_json(t));
        j["forest"] = {{"trees", trees},
                       {"n_trees", f->params.n_trees},
                       {"features_per_split", f->params.features_per_split},
                       {"bootstrap", f->params.bootstrap},
                       {"seed", f->params.seed},
                       {"n_cols", f->n_cols},
                       {"n_classes", f->n_classes}};
    } else if (const auto* s = std::get_if<SvmOvrModel>(&model)) {
        j["svm"] = {{"weights", s->weights},
                    {"biases", s->biases},
                    {"lambda", s->params.lambda},
                    {"epochs", s->params.epochs},
                    {"seed", s->params.seed},
                    {"n_cols", s->n_cols},
                    {"n_classes", s->n_classes}};
    }
    return j.dump();
}

TrainedModel TrainedModel::from_json(const std::string& text) {
    json j = json::parse(text);
    TrainedModel out;
    out.class_names = j.at("class_names").get<std::vector<std::string>>();
    out.preprocessor_fingerprint = j.at("preprocessor_fingerprint").get<std::string>();

    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "decision_tree") {
        out.model = tree_from_json(j.at("tree"));
    } else if (kind == "random_forest") {
        const json& fj = j.at("forest");
        ForestModel f;
        for (const auto& t : fj.at("trees")) f.trees.push_back(tree_from_json(t));
        f.params.n_trees = fj.at("n_trees").get<std::size_t>();
        f.params.features_per_split = fj.at("features_per_split").get<std::size_t>();
        f.params.bootstrap = fj.at("bootstrap").get<bool>();
        f.params.seed = fj.at("seed").get<std::uint64_t>();
        f.n_cols = fj.at("n_cols").get<std::size_t>();
        f.n_classes = fj.at("n_classes").get<std::size_t>();
        out.model = std::move(f);
    } else if (kind == "svm_ovr") {
        const json& sj = j.at("svm");
        SvmOvrModel s;
        s.weights = sj.at("weights").get<std::vector<std::vector<double>>>();
        s.biases = sj.at("biases").get<std::vector<double>>();
        s.params.lambda = sj.at("lambda").get<double>();
        s.params.epochs = sj.at("epochs").get<std::size_t>();
        s.params.seed = sj.at("seed").get<std::uint64_t>();
        s.n_cols = sj.at("n_cols").get<std::size_t>();
        s.n_classes = sj.at("n_classes").get<std::size_t>();
        out.model = std::move(s);
    } else {
        throw IoError("unknown model kind: " + kind);
    }
    return out;
}

void TrainedModel::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << to_json() << "\n";
}

TrainedModel TrainedModel::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

}  // namespace kddx
