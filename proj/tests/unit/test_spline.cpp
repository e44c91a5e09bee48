#include "qtcc/spline.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using qtcc::BSplineBasis;

namespace {

// Textbook recursive Cox-de Boor on an explicit knot vector. The right end of
// the last non-degenerate span is closed so the basis sums to one at hi.
double cox_de_boor(const std::vector<double>& t, std::size_t i, int p, double x) {
    if (p == 0) {
        const bool last = x == t.back() && t[i] < t[i + 1] && t[i + 1] == t.back();
        return (t[i] <= x && x < t[i + 1]) || last ? 1.0 : 0.0;
    }
    double left = 0.0;
    double right = 0.0;
    const double dl = t[i + static_cast<std::size_t>(p)] - t[i];
    const double dr = t[i + static_cast<std::size_t>(p) + 1] - t[i + 1];
    if (dl > 0) left = (x - t[i]) / dl * cox_de_boor(t, i, p - 1, x);
    if (dr > 0) right = (t[i + static_cast<std::size_t>(p) + 1] - x) / dr * cox_de_boor(t, i + 1, p - 1, x);
    return left + right;
}

std::vector<double> clamped_knots(double lo, double hi, int cells, int degree) {
    std::vector<double> t;
    for (int k = 0; k < degree; ++k) t.push_back(lo);
    for (int g = 0; g <= cells; ++g) t.push_back(lo + (hi - lo) * g / cells);
    for (int k = 0; k < degree; ++k) t.push_back(hi);
    return t;
}

}  // namespace

TEST(BSpline, SizeAndKnots) {
    const BSplineBasis b(0.0, 0.25, 5, 3);
    EXPECT_EQ(b.size(), 8u);
    const auto want = clamped_knots(0.0, 0.25, 5, 3);
    ASSERT_EQ(b.knots().size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(b.knots()[i], want[i], 1e-15);
    EXPECT_THROW(BSplineBasis(1.0, 0.0, 5, 3), std::invalid_argument);
    EXPECT_THROW(BSplineBasis(0.0, 1.0, 0, 3), std::invalid_argument);
}

TEST(BSpline, MatchesRecursiveOracle) {
    for (int degree : {0, 1, 2, 3}) {
        const BSplineBasis b(-1.0, 2.0, 4, degree);
        const auto t = clamped_knots(-1.0, 2.0, 4, degree);
        for (int k = 0; k <= 300; ++k) {
            const double x = -1.0 + 3.0 * k / 300.0;
            const auto got = b.evaluate(x);
            for (std::size_t l = 0; l < b.size(); ++l) {
                EXPECT_NEAR(got[l], cox_de_boor(t, l, degree, x), 1e-12) << "degree " << degree << " l " << l << " x " << x;
            }
        }
    }
}

TEST(BSpline, PartitionOfUnityAndLocalSupport) {
    const BSplineBasis b(0.0, 0.25, 5, 3);
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 0.25);
    for (int k = 0; k < 10000; ++k) {
        const double x = k == 0 ? 0.0 : k == 1 ? 0.25 : u(gen);
        const auto v = b.evaluate(x);
        double sum = 0.0;
        for (std::size_t l = 0; l < v.size(); ++l) {
            EXPECT_GE(v[l], -1e-15);
            sum += v[l];
            const auto [a, z] = b.support(l);
            if (x < a || x > z) EXPECT_LE(std::abs(v[l]), 1e-12);
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(BSpline, ClampsOutsideDomain) {
    const BSplineBasis b(0.0, 1.0, 3, 2);
    EXPECT_EQ(b.evaluate(-5.0), b.evaluate(0.0));
    EXPECT_EQ(b.evaluate(7.0), b.evaluate(1.0));
    EXPECT_NEAR(b.evaluate(1.0).back(), 1.0, 1e-15);
}

TEST(BSpline, CombineIsWeightedSum) {
    const BSplineBasis b(0.0, 1.0, 5, 3);
    std::vector<double> c(b.size());
    for (std::size_t l = 0; l < c.size(); ++l) c[l] = 0.3 * static_cast<double>(l) - 1.0;
    for (double x : {0.0, 0.13, 0.5, 0.99}) {
        const auto v = b.evaluate(x);
        double want = 0.0;
        for (std::size_t l = 0; l < v.size(); ++l) want += c[l] * v[l];
        EXPECT_NEAR(b.combine(x, c), want, 1e-15);
    }
    // constant coefficients reproduce the constant
    EXPECT_NEAR(b.combine(0.42, std::vector<double>(b.size(), 2.5)), 2.5, 1e-14);
    EXPECT_THROW(b.combine(0.5, std::vector<double>(3, 1.0)), std::invalid_argument);
}
