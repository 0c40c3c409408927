#include "kddx/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "kddx/rng.hpp"

namespace kddx {

using nlohmann::json;

std::int64_t Encoder::code_of(const std::string& token) const {
    auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), token);
    if (it == vocabulary.end() || *it != token) return -1;
    return it - vocabulary.begin();
}

PreprocessorState fit_encoders(const RawDataset& ds) {
    PreprocessorState st;
    st.scaler.assign(kNumFeatures, ScalerColumn{});
    for (std::size_t col : kCategoricalColumns) {
        std::set<std::string> vocab;
        for (const auto& rec : ds.records) vocab.insert(rec.features[col]);
        Encoder enc;
        enc.vocabulary.assign(vocab.begin(), vocab.end());
        st.encoders.emplace(col, std::move(enc));
    }
    st.fitted_on = ds.source;
    return st;
}

namespace {

double parse_numeric(const std::string& s) {
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

}  // namespace

Dataset encode(const RawDataset& ds, const PreprocessorState& st) {
    Dataset out;
    out.n_rows = ds.records.size();
    out.n_cols = kNumFeatures;
    out.X.resize(out.n_rows * out.n_cols);
    out.y.resize(out.n_rows);
    for (const auto& c : kSchema) {
        out.column_names.emplace_back(c.name);
        out.column_kinds.push_back(c.kind);
    }

    std::set<std::string> classes;
    for (const auto& rec : ds.records) classes.insert(rec.label);
    out.class_names.assign(classes.begin(), classes.end());

    for (std::size_t r = 0; r < out.n_rows; ++r) {
        const auto& rec = ds.records[r];
        for (std::size_t c = 0; c < kNumFeatures; ++c) {
            if (is_categorical(c)) {
                const auto& enc = st.encoders.at(c);
                std::int64_t code = enc.code_of(rec.features[c]);
                if (code < 0)
                    throw UnknownCategory("column '" + std::string(kSchema[c].name) +
                                          "': unseen token '" + rec.features[c] + "'");
                out.at(r, c) = static_cast<double>(code);
            } else {
                out.at(r, c) = parse_numeric(rec.features[c]);
            }
        }
        auto it = std::lower_bound(out.class_names.begin(), out.class_names.end(), rec.label);
        out.y[r] = static_cast<std::int32_t>(it - out.class_names.begin());
    }
    return out;
}

void fit_scaler(PreprocessorState& st, const Dataset& train) {
    if (train.n_rows == 0) throw InsufficientData("scaler: empty training partition");
    if (st.scaler.size() != train.n_cols)
        st.scaler.assign(train.n_cols, ScalerColumn{});

    const double n = static_cast<double>(train.n_rows);
    for (std::size_t c = 0; c < train.n_cols; ++c) {
        if (train.column_kinds[c] == ColumnKind::Categorical) continue;
        double sum = 0.0;
        for (std::size_t r = 0; r < train.n_rows; ++r) sum += train.at(r, c);
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t r = 0; r < train.n_rows; ++r) {
            const double d = train.at(r, c) - mean;
            ss += d * d;
        }
        ScalerColumn& sc = st.scaler[c];
        sc.mean = mean;
        sc.std = std::sqrt(ss / n);  // population std
        sc.constant = (sc.std == 0.0);
    }
    st.scaler_fitted = true;
}

void apply_scaler(Dataset& ds, const PreprocessorState& st) {
    if (!st.scaler_fitted) throw InsufficientData("scaler not fitted");
    if (st.scaler.size() != ds.n_cols) throw DimensionMismatch("scaler/dataset column mismatch");
    for (std::size_t c = 0; c < ds.n_cols; ++c) {
        if (ds.column_kinds[c] == ColumnKind::Categorical) continue;
        const ScalerColumn& sc = st.scaler[c];
        for (std::size_t r = 0; r < ds.n_rows; ++r) {
            ds.at(r, c) = sc.constant ? 0.0 : (ds.at(r, c) - sc.mean) / sc.std;
        }
    }
}

Dataset transform(const RawDataset& ds, const PreprocessorState& st) {
    Dataset out = encode(ds, st);
    apply_scaler(out, st);
    return out;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
    Dataset out;
    out.n_rows = rows.size();
    out.n_cols = n_cols;
    out.class_names = class_names;
    out.column_kinds = column_kinds;
    out.column_names = column_names;
    out.X.resize(out.n_rows * n_cols);
    out.y.resize(out.n_rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy(row(rows[i]), row(rows[i]) + n_cols, out.X.begin() + i * n_cols);
        out.y[i] = y[rows[i]];
    }
    return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    const std::vector<std::int32_t>& y, std::size_t n_classes, const SplitSpec& spec) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
        throw ConfigError("test_fraction must be in (0,1)");
    if (y.empty()) throw InsufficientData("split: empty dataset");

    std::vector<std::size_t> train_rows, test_rows;

    if (!spec.stratified) {
        std::vector<std::size_t> idx(y.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        Rng rng(mix_seed(spec.seed, 0));
        rng.shuffle(idx);
        std::size_t n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(y.size()) * spec.test_fraction));
        n_test = std::clamp<std::size_t>(n_test, 1, y.size() - 1);
        test_rows.assign(idx.begin(), idx.begin() + n_test);
        train_rows.assign(idx.begin() + n_test, idx.end());
    } else {
        std::vector<std::vector<std::size_t>> by_class(n_classes);
        for (std::size_t i = 0; i < y.size(); ++i)
            by_class[static_cast<std::size_t>(y[i])].push_back(i);

        for (std::size_t c = 0; c < n_classes; ++c) {
            auto& members = by_class[c];
            if (members.empty()) continue;
            if (members.size() == 1) {
                std::cerr << "kddx: class " << c
                          << " has a single member; placing it in train\n";
                train_rows.push_back(members[0]);
                continue;
            }
            std::size_t n_test = static_cast<std::size_t>(
                std::llround(static_cast<double>(members.size()) * spec.test_fraction));
            n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
            Rng rng(mix_seed(spec.seed, c));
            rng.shuffle(members);
            test_rows.insert(test_rows.end(), members.begin(), members.begin() + n_test);
            train_rows.insert(train_rows.end(), members.begin() + n_test, members.end());
        }
    }

    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    return {std::move(train_rows), std::move(test_rows)};
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitSpec& spec) {
    auto [train_rows, test_rows] = split_indices(ds.y, ds.n_classes(), spec);
    return {ds.select_rows(train_rows), ds.select_rows(test_rows)};
}

std::string PreprocessorState::to_json() const {
    json j;
    j["fitted_on"] = fitted_on;
    j["scaler_fitted"] = scaler_fitted;
    json encs = json::object();
    for (const auto& [col, enc] : encoders) encs[std::to_string(col)] = enc.vocabulary;
    j["encoders"] = encs;
    json cols = json::array();
    for (const auto& sc : scaler)
        cols.push_back({{"mean", sc.mean}, {"std", sc.std}, {"constant", sc.constant}});
    j["scaler"] = cols;
    return j.dump(2);
}

PreprocessorState PreprocessorState::from_json(const std::string& text) {
    json j = json::parse(text);
    PreprocessorState st;
    st.fitted_on = j.at("fitted_on").get<std::string>();
    st.scaler_fitted = j.at("scaler_fitted").get<bool>();
    for (const auto& [key, vocab] : j.at("encoders").items()) {
        Encoder enc;
        enc.vocabulary = vocab.get<std::vector<std::string>>();
        st.encoders.emplace(std::stoul(key), std::move(enc));
    }
    for (const auto& sc : j.at("scaler")) {
        st.scaler.push_back({sc.at("mean").get<double>(), sc.at("std").get<double>(),
                             sc.at("constant").get<bool>()});
    }
    return st;
}

void PreprocessorState::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << to_json() << "\n";
}

PreprocessorState PreprocessorState::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

}  // namespace kddx
