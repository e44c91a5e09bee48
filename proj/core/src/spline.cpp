#include "qtcc/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtcc {

BSplineBasis::BSplineBasis(double lo, double hi, int grid_cells, int degree)
    : lo_(lo), hi_(hi), grid_cells_(grid_cells), degree_(degree) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("spline interval must satisfy lo < hi");
    }
    if (grid_cells < 1) throw std::invalid_argument("spline grid needs at least one cell");
    if (degree < 0) throw std::invalid_argument("spline degree must be non-negative");

    const double h = (hi - lo) / grid_cells;
    knots_.reserve(static_cast<std::size_t>(grid_cells + 2 * degree + 1));
    for (int i = 0; i < degree; ++i) knots_.push_back(lo);
    for (int i = 0; i <= grid_cells; ++i) knots_.push_back(i == grid_cells ? hi : lo + i * h);
    for (int i = 0; i < degree; ++i) knots_.push_back(hi);
}

void BSplineBasis::evaluate(double x, std::span<double> out) const {
    if (out.size() != size()) throw std::invalid_argument("spline output buffer has the wrong size");
    std::fill(out.begin(), out.end(), 0.0);
    x = std::clamp(x, lo_, hi_);

    // Knot span containing x: index s with knots[s] <= x < knots[s+1],
    // taking the last non-degenerate span at x == hi.
    const int p = degree_;
    const int last_span = p + grid_cells_ - 1;
    int span = last_span;
    if (x < hi_) {
        const auto it = std::upper_bound(knots_.begin() + p, knots_.begin() + last_span + 1, x);
        span = static_cast<int>(it - knots_.begin()) - 1;
    }

    // Cox-de Boor triangle for the p+1 functions that are nonzero on the span.
    std::vector<double> n(static_cast<std::size_t>(p + 1), 0.0);
    std::vector<double> left(static_cast<std::size_t>(p + 1)), right(static_cast<std::size_t>(p + 1));
    n[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[static_cast<std::size_t>(j)] = x - knots_[static_cast<std::size_t>(span + 1 - j)];
        right[static_cast<std::size_t>(j)] = knots_[static_cast<std::size_t>(span + j)] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double denom = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
            const double temp = n[static_cast<std::size_t>(r)] / denom;
            n[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
            saved = left[static_cast<std::size_t>(j - r)] * temp;
        }
        n[static_cast<std::size_t>(j)] = saved;
    }
    for (int r = 0; r <= p; ++r) out[static_cast<std::size_t>(span - p + r)] = n[static_cast<std::size_t>(r)];
}

std::vector<double> BSplineBasis::evaluate(double x) const {
    std::vector<double> out(size());
    evaluate(x, out);
    return out;
}

double BSplineBasis::combine(double x, std::span<const double> coefficients) const {
    if (coefficients.size() != size()) throw std::invalid_argument("spline coefficient count mismatch");
    const auto b = evaluate(x);
    double sum = 0.0;
    for (std::size_t l = 0; l < b.size(); ++l) sum += coefficients[l] * b[l];
    return sum;
}

std::pair<double, double> BSplineBasis::support(std::size_t l) const {
    if (l >= size()) throw std::out_of_range("spline basis index out of range");
    return {knots_[l], knots_[l + static_cast<std::size_t>(degree_) + 1]};
}

}  // namespace qtcc
