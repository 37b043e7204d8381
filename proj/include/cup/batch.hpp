#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cup/errors.hpp"

namespace cup {

/// A batch of points in R^dim, stored contiguously per point (row-major):
/// consumers stream point pairs, so a point is always one cache run.
struct PointBatch {
    int dim = 0;
    std::vector<double> data;

    PointBatch() = default;
    PointBatch(int dimension, std::size_t count) : dim(dimension), data() {
        require_domain(dimension >= 1, "PointBatch requires dim >= 1");
        data.resize(static_cast<std::size_t>(dimension) * count);
    }

    std::size_t count() const { return dim == 0 ? 0 : data.size() / dim; }

    std::span<double> point(std::size_t i) {
        return std::span<double>(data.data() + i * dim, static_cast<std::size_t>(dim));
    }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(data.data() + i * dim, static_cast<std::size_t>(dim));
    }
};

inline double squared_norm(std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

inline double norm(std::span<const double> x) {
    return std::sqrt(squared_norm(x));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace cup
