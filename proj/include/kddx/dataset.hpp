#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kddx/error.hpp"
#include "kddx/schema.hpp"

namespace kddx {

// Dense numeric dataset consumed by every model: row-major doubles plus
// integer class ids 0..C-1.
struct Dataset {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> X;        // n_rows * n_cols, row-major
    std::vector<std::int32_t> y;  // class ids
    std::vector<std::string> class_names;
    std::vector<ColumnKind> column_kinds;  // size n_cols
    std::vector<std::string> column_names;

    double at(std::size_t row, std::size_t col) const { return X[row * n_cols + col]; }
    double& at(std::size_t row, std::size_t col) { return X[row * n_cols + col]; }
    const double* row(std::size_t r) const { return X.data() + r * n_cols; }

    std::size_t n_classes() const { return class_names.size(); }

    std::vector<std::size_t> class_counts() const {
        std::vector<std::size_t> c(n_classes(), 0);
        for (auto v : y) c[static_cast<std::size_t>(v)]++;
        return c;
    }

    // New dataset holding the given rows, in the given order.
    Dataset select_rows(const std::vector<std::size_t>& rows) const;
};

}  // namespace kddx
