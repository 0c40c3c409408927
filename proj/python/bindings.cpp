#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kddx/harness.hpp"
#include "kddx/model_io.hpp"

namespace py = pybind11;
using namespace kddx;

namespace {

py::array_t<double> dataset_X(const Dataset& ds) {
    py::array_t<double> arr({ds.n_rows, ds.n_cols});
    std::copy(ds.X.begin(), ds.X.end(), arr.mutable_data());
    return arr;
}

// the count+pointer array_t ctor builds zero-stride arrays under pybind11
// 3.0; spelling the shape out avoids it
template <typename T>
py::array_t<T> to_array_1d(const std::vector<T>& v) {
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(v.size())};
    return py::array_t<T>(shape, v.data());
}

py::array_t<std::int32_t> dataset_y(const Dataset& ds) { return to_array_1d(ds.y); }

Dataset dataset_from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> X,
                            py::array_t<std::int32_t, py::array::c_style | py::array::forcecast> y,
                            std::vector<std::string> class_names) {
    if (X.ndim() != 2) throw py::value_error("X must be 2-D");
    if (y.ndim() != 1 || static_cast<std::size_t>(y.shape(0)) !=
                             static_cast<std::size_t>(X.shape(0)))
        throw py::value_error("y must be 1-D with len(y) == X.shape[0]");
    Dataset ds;
    ds.n_rows = X.shape(0);
    ds.n_cols = X.shape(1);
    ds.X.assign(X.data(), X.data() + ds.n_rows * ds.n_cols);
    ds.y.assign(y.data(), y.data() + ds.n_rows);
    if (class_names.empty()) {
        std::int32_t c_max = -1;
        for (auto v : ds.y) c_max = std::max(c_max, v);
        for (std::int32_t c = 0; c <= c_max; ++c)
            class_names.push_back("class_" + std::to_string(c));
    }
    ds.class_names = std::move(class_names);
    ds.column_kinds.assign(ds.n_cols, ColumnKind::Numeric);
    for (std::size_t c = 0; c < ds.n_cols; ++c)
        ds.column_names.push_back("f" + std::to_string(c));
    return ds;
}

LabelMapping mapping_for(const std::string& mode, const std::string& mapping_path) {
    switch (label_mode_from_string(mode)) {
        case LabelMode::Raw: return LabelMapping::raw();
        case LabelMode::Binary: return LabelMapping::binary();
        case LabelMode::FiveCategory:
            return LabelMapping::load_five_category(mapping_path);
    }
    throw ConfigError("bad label mode");
}

py::dict metrics_to_dict(const MetricsBundle& m) {
    py::dict d;
    d["accuracy"] = m.accuracy;
    d["weighted_f1"] = m.weighted_f1;
    d["macro_f1"] = m.macro_f1;
    py::list per_class;
    for (const auto& c : m.per_class) {
        py::dict cd;
        cd["precision"] = c.precision;
        cd["recall"] = c.recall;
        cd["f1"] = c.f1;
        cd["support"] = c.support;
        per_class.append(cd);
    }
    d["per_class"] = per_class;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kddx, m) {
    m.doc() = "Intrusion-detection toolkit: KDD ingestion, preprocessing, SMOTE, "
              "decision tree / random forest / linear SVM, and evaluation";

    py::register_exception<DataError>(m, "DataError");

    py::class_<RawDataset>(m, "RawDataset")
        .def_property_readonly("source", [](const RawDataset& d) { return d.source; })
        .def("__len__", [](const RawDataset& d) { return d.records.size(); })
        .def("labels", [](const RawDataset& d) {
            std::vector<std::string> out;
            out.reserve(d.records.size());
            for (const auto& r : d.records) out.push_back(r.label);
            return out;
        });

    py::class_<Dataset>(m, "Dataset")
        .def_static("from_arrays", &dataset_from_arrays, py::arg("X"), py::arg("y"),
                    py::arg("class_names") = std::vector<std::string>{})
        .def_property_readonly("X", &dataset_X)
        .def_property_readonly("y", &dataset_y)
        .def_property_readonly("class_names",
                               [](const Dataset& d) { return d.class_names; })
        .def("__len__", [](const Dataset& d) { return d.n_rows; });

    m.def("parse_kdd_file", &parse_kdd_file, py::arg("path"), py::arg("strict") = true);
    m.def("dedup", &dedup);
    m.def(
        "map_labels",
        [](const RawDataset& ds, const std::string& mode, const std::string& mapping_path) {
            return map_labels(ds, mapping_for(mode, mapping_path));
        },
        py::arg("dataset"), py::arg("mode") = "five_category",
        py::arg("mapping_path") = "");

    py::class_<PreprocessorState>(m, "PreprocessorState")
        .def("to_json", &PreprocessorState::to_json)
        .def("save", &PreprocessorState::save)
        .def_static("load", &PreprocessorState::load);

    m.def("fit_encoders", &fit_encoders);
    m.def("encode", &encode);
    m.def("fit_scaler", &fit_scaler);
    m.def("apply_scaler", &apply_scaler);
    m.def("transform", &transform);
    m.def(
        "stratified_split",
        [](const Dataset& ds, double test_fraction, std::uint64_t seed, bool stratified) {
            return stratified_split(ds, SplitSpec{test_fraction, seed, stratified});
        },
        py::arg("dataset"), py::arg("test_fraction") = 0.2, py::arg("seed") = 42,
        py::arg("stratified") = true);

    m.def(
        "smote_resample",
        [](const Dataset& train, std::size_t k_neighbors, std::uint64_t seed) {
            SmoteConfig cfg;
            cfg.k_neighbors = k_neighbors;
            cfg.seed = seed;
            auto [ds, report] = smote_resample(train, cfg);
            py::list rows;
            for (const auto& c : report.per_class) {
                py::dict d;
                d["before"] = c.before;
                d["after"] = c.after;
                d["synthetic"] = c.synthetic;
                rows.append(d);
            }
            return py::make_tuple(std::move(ds), rows);
        },
        py::arg("train"), py::arg("k_neighbors") = 5, py::arg("seed") = 0);

    py::class_<TrainedModel>(m, "TrainedModel")
        .def_property_readonly("kind", &TrainedModel::kind)
        .def("predict",
             [](const TrainedModel& tm, const Dataset& ds) {
                 return to_array_1d(tm.predict(ds));
             })
        .def("to_json", &TrainedModel::to_json)
        .def("save", &TrainedModel::save)
        .def_static("load", &TrainedModel::load);

    m.def(
        "fit_tree",
        [](const Dataset& train, std::optional<std::size_t> max_depth,
           std::size_t min_samples_split, double min_impurity_decrease) {
            TreeParams p{max_depth, min_samples_split, min_impurity_decrease};
            TrainedModel tm;
            tm.model = fit_tree(train, p);
            tm.class_names = train.class_names;
            return tm;
        },
        py::arg("train"), py::arg("max_depth") = std::nullopt,
        py::arg("min_samples_split") = 2, py::arg("min_impurity_decrease") = 0.0);

    m.def(
        "fit_forest",
        [](const Dataset& train, std::size_t n_trees, std::size_t features_per_split,
           bool bootstrap, std::uint64_t seed, std::size_t n_threads) {
            ForestParams p;
            p.n_trees = n_trees;
            p.features_per_split = features_per_split;
            p.bootstrap = bootstrap;
            p.seed = seed;
            p.n_threads = n_threads;
            TrainedModel tm;
            tm.model = fit_forest(train, p);
            tm.class_names = train.class_names;
            return tm;
        },
        py::arg("train"), py::arg("n_trees") = 100, py::arg("features_per_split") = 0,
        py::arg("bootstrap") = true, py::arg("seed") = 0, py::arg("n_threads") = 0);

    m.def(
        "fit_svm",
        [](const Dataset& train, double lambda, std::size_t epochs, std::uint64_t seed) {
            TrainedModel tm;
            tm.model = fit_svm(train, SvmParams{lambda, epochs, seed});
            tm.class_names = train.class_names;
            return tm;
        },
        py::arg("train"), py::arg("lambda_") = 1e-4, py::arg("epochs") = 5,
        py::arg("seed") = 0);

    m.def("feature_importances", [](const TrainedModel& tm) {
        const auto* f = std::get_if<ForestModel>(&tm.model);
        if (!f) throw py::value_error("feature_importances requires a forest model");
        return to_array_1d(feature_importances(*f));
    });

    m.def(
        "evaluate",
        [](py::array_t<std::int32_t, py::array::c_style | py::array::forcecast> y_true,
           py::array_t<std::int32_t, py::array::c_style | py::array::forcecast> y_pred,
           std::size_t n_classes) {
            std::vector<std::int32_t> t(y_true.data(), y_true.data() + y_true.shape(0));
            std::vector<std::int32_t> p(y_pred.data(), y_pred.data() + y_pred.shape(0));
            return metrics_to_dict(compute_metrics(confusion(t, p, n_classes)));
        },
        py::arg("y_true"), py::arg("y_pred"), py::arg("n_classes"));

    m.def(
        "run_experiment",
        [](const std::string& config_path) {
            auto report = run_experiment(ExperimentConfig::load(config_path));
            return report.to_json();
        },
        py::arg("config_path"),
        "Run a full experiment from a config file; returns the report as JSON text");
}
