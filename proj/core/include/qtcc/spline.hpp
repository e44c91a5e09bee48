#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qtcc {

/// Clamped uniform B-spline basis on [lo, hi] with `grid_cells` equal knot
/// spans. There are grid_cells + degree basis functions; together they form
/// a partition of unity on [lo, hi]. Arguments outside the interval are
/// clamped to its ends.
class BSplineBasis {
public:
    BSplineBasis(double lo, double hi, int grid_cells, int degree);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    int degree() const noexcept { return degree_; }
    int grid_cells() const noexcept { return grid_cells_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(grid_cells_ + degree_); }
    std::span<const double> knots() const noexcept { return knots_; }

    /// Writes B_0(x) .. B_{size()-1}(x) into `out`.
    void evaluate(double x, std::span<double> out) const;
    std::vector<double> evaluate(double x) const;

    /// sum_l coefficients[l] * B_l(x)
    double combine(double x, std::span<const double> coefficients) const;

    /// [knot_l, knot_{l+degree+1}], the closed support of B_l.
    std::pair<double, double> support(std::size_t l) const;

private:
    double lo_;
    double hi_;
    int grid_cells_;
    int degree_;
    std::vector<double> knots_;
};

}  // namespace qtcc
