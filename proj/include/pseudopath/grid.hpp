#pragma once

#include <cstddef>
#include <vector>

#include "pseudopath/errors.hpp"

namespace pseudopath {

/// Uniform spatial grid, endpoint-exclusive on the right (periodic
/// convention, so fast transforms see exactly one period).
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n_points = 2;

    Grid1D() = default;
    Grid1D(double xmin, double xmax, std::size_t n) : x_min(xmin), x_max(xmax), n_points(n) {
        if (!(x_min < x_max)) throw InadmissibleSpec("Grid1D: x_min must be < x_max");
        if (n_points < 2) throw InadmissibleSpec("Grid1D: n_points must be >= 2");
    }

    double spacing() const { return (x_max - x_min) / static_cast<double>(n_points); }

    double point(std::size_t i) const { return x_min + static_cast<double>(i) * spacing(); }

    std::vector<double> points() const {
        std::vector<double> xs(n_points);
        for (std::size_t i = 0; i < n_points; ++i) xs[i] = point(i);
        return xs;
    }

    bool operator==(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
    }
};

} // namespace pseudopath
