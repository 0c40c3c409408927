#include <doctest.h>

#include <cmath>

#include "kddx/svm.hpp"
#include "test_util.hpp"

using namespace kddx;
using kddx::test::make_dataset;

TEST_CASE("hinge loss at known points") {
    std::vector<double> w = {1.0, 0.0};
    double x_far[2] = {2.0, 0.0};
    double x_near[2] = {0.5, 0.0};
    CHECK(hinge_loss(w, 0.0, x_far, 2, +1.0) == 0.0);
    CHECK(hinge_loss(w, 0.0, x_near, 2, +1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("separable 1-D pair is classified correctly") {
    auto ds = make_dataset({{-1, 0}, {1, 0}}, {0, 1}, 2);
    SvmParams p;
    p.lambda = 1e-3;
    p.epochs = 200;
    p.seed = 1;
    auto model = fit_svm(ds, p);
    CHECK(predict_svm(model, ds) == std::vector<std::int32_t>{0, 1});
}

TEST_CASE("multiclass blobs reach high accuracy") {
    Rng rng(3);
    std::vector<std::vector<double>> rows;
    std::vector<std::int32_t> y;
    const double centers[3][2] = {{0, 0}, {4, 0}, {0, 4}};
    for (std::int32_t c = 0; c < 3; ++c)
        for (int i = 0; i < 100; ++i) {
            rows.push_back({centers[c][0] + rng.next_unit() - 0.5,
                            centers[c][1] + rng.next_unit() - 0.5});
            y.push_back(c);
        }
    auto ds = make_dataset(rows, y, 3);
    SvmParams p;
    p.lambda = 1e-3;
    p.epochs = 20;
    p.seed = 2;
    auto model = fit_svm(ds, p);
    auto pred = predict_svm(model, ds);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == y[i];
    CHECK(double(ok) / pred.size() > 0.98);
}

TEST_CASE("argmax prediction and tie rules") {
    SvmOvrModel m;
    m.n_cols = 1;
    m.n_classes = 3;
    m.weights = {{0.0}, {0.0}, {0.0}};
    m.biases = {2.0, 1.0, -1.0};
    auto ds = make_dataset({{0}}, {0}, 3);
    CHECK(predict_svm(m, ds) == std::vector<std::int32_t>{0});

    m.biases = {1.0, 1.0, 1.0};  // three-way tie -> class 0
    CHECK(predict_svm(m, ds) == std::vector<std::int32_t>{0});
}

TEST_CASE("scaling all scores by a positive constant preserves predictions") {
    auto ds = kddx::test::make_blobs(50, 3, 7, 1.0, 3.0);
    SvmParams p;
    p.epochs = 10;
    p.seed = 4;
    auto model = fit_svm(ds, p);
    auto before = predict_svm(model, ds);
    for (auto& w : model.weights)
        for (auto& v : w) v *= 7.5;
    for (auto& b : model.biases) b *= 7.5;
    CHECK(predict_svm(model, ds) == before);
}

TEST_CASE("binary OvR with symmetric machines equals the sign rule") {
    auto ds = kddx::test::make_blobs(30, 2, 9, 1.0, 3.0);
    SvmParams p;
    p.epochs = 20;
    p.seed = 5;
    auto model = fit_svm(ds, p);
    SvmOvrModel sym = model;
    for (std::size_t d = 0; d < sym.n_cols; ++d) sym.weights[1][d] = -sym.weights[0][d];
    sym.biases[1] = -sym.biases[0];
    auto pred = predict_svm(sym, ds);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        double s = sym.biases[0];
        for (std::size_t d = 0; d < ds.n_cols; ++d) s += sym.weights[0][d] * ds.at(i, d);
        CHECK(pred[i] == (s >= 0.0 ? 0 : 1));
    }
}

TEST_CASE("objective decreases from initialization on a fixed-seed run") {
    auto ds = kddx::test::make_blobs(100, 4, 15, 1.0, 2.0);
    SvmParams p;
    p.lambda = 1e-3;
    p.epochs = 10;
    p.seed = 8;
    const std::vector<double> w0(ds.n_cols, 0.0);
    const double at_init = svm_objective(w0, 0.0, ds, 0, p.lambda);
    auto model = fit_svm(ds, p);
    const double trained = svm_objective(model.weights[0], model.biases[0], ds, 0, p.lambda);
    CHECK(trained < at_init);
}

TEST_CASE("determinism given seed") {
    auto ds = kddx::test::make_blobs(60, 3, 21, 1.0, 2.0);
    SvmParams p;
    p.epochs = 5;
    p.seed = 13;
    auto a = fit_svm(ds, p);
    auto b = fit_svm(ds, p);
    CHECK(a.weights == b.weights);
    CHECK(a.biases == b.biases);
}

TEST_CASE("invalid lambda and column mismatch are rejected") {
    auto ds = kddx::test::make_blobs(10, 2, 1);
    SvmParams p;
    p.lambda = 0.0;
    CHECK_THROWS_AS(fit_svm(ds, p), ConfigError);

    SvmParams ok;
    ok.epochs = 1;
    auto model = fit_svm(ds, ok);
    auto other = kddx::test::make_blobs(4, 3, 2);
    CHECK_THROWS_AS(predict_svm(model, other), DimensionMismatch);
}
