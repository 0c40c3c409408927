#include "kddx/metrics.hpp"

#include <numeric>

namespace kddx {

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ConfusionMatrix confusion(const std::vector<std::int32_t>& y_true,
                          const std::vector<std::int32_t>& y_pred,
                          std::size_t n_classes,
                          std::vector<std::string> class_names) {
    if (y_true.size() != y_pred.size())
        throw LengthMismatch("confusion: y_true and y_pred differ in length");
    ConfusionMatrix cm;
    cm.n_classes = n_classes;
    cm.counts.assign(n_classes * n_classes, 0);
    cm.class_names = std::move(class_names);
    if (cm.class_names.empty())
        for (std::size_t c = 0; c < n_classes; ++c)
            cm.class_names.push_back("class_" + std::to_string(c));

    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const auto t = y_true[i];
        const auto p = y_pred[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes ||
            static_cast<std::size_t>(p) >= n_classes)
            throw ClassOutOfRange("confusion: class id out of range at row " +
                                  std::to_string(i));
        cm.counts[static_cast<std::size_t>(t) * n_classes +
                  static_cast<std::size_t>(p)]++;
    }
    return cm;
}

MetricsBundle compute_metrics(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw EmptyMatrix("compute_metrics: empty confusion matrix");

    MetricsBundle out;
    out.per_class.resize(cm.n_classes);

    std::size_t diag = 0;
    double weighted = 0.0, macro = 0.0;
    for (std::size_t c = 0; c < cm.n_classes; ++c) {
        std::size_t tp = cm.at(c, c);
        std::size_t pred = 0, truth = 0;
        for (std::size_t k = 0; k < cm.n_classes; ++k) {
            pred += cm.at(k, c);
            truth += cm.at(c, k);
        }
        diag += tp;

        ClassMetrics& m = out.per_class[c];
        m.support = truth;
        m.zero_division = (pred == 0 || truth == 0);
        m.precision = pred == 0 ? 0.0 : static_cast<double>(tp) / pred;
        m.recall = truth == 0 ? 0.0 : static_cast<double>(tp) / truth;
        m.f1 = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        weighted += (static_cast<double>(m.support) / total) * m.f1;
        macro += m.f1 / static_cast<double>(cm.n_classes);
    }
    out.accuracy = static_cast<double>(diag) / total;
    out.weighted_f1 = weighted;
    out.macro_f1 = macro;
    return out;
}

}  // namespace kddx
