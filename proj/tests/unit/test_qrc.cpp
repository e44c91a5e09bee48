#include "qtcc/qrc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qtcc;
using namespace qtcc::qrc;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, RngStream& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal(0, 1);
    return m;
}

Eigen::VectorXd random_vector(int n, RngStream& rng) { return random_matrix(n, 1, rng); }

Reservoir small_reservoir(std::uint64_t seed, double noise_scale = 0.2) {
    RngStream rng(seed);
    return make_reservoir(4, 1.0, 10, kDefaultDetuning, false, noise_scale, rng);
}

}  // namespace

TEST(Waveform, SinAndSawValues) {
    const auto s = generate_waveform({WaveKind::sin, 20, 20, 0});
    EXPECT_NEAR(s[0], 0.0, 1e-15);
    EXPECT_NEAR(s[5], 1.0, 1e-15);
    EXPECT_NEAR(s[15], -1.0, 1e-15);
    const auto saw = generate_waveform({WaveKind::saw, 20, 20, 0});
    EXPECT_DOUBLE_EQ(saw[0], -1.0);
    EXPECT_DOUBLE_EQ(saw[10], 0.0);
    EXPECT_NEAR(saw[19], 0.9, 1e-15);
}

TEST(Waveform, TriangleAndBlockValues) {
    const auto tri = generate_waveform({WaveKind::triangle, 20, 20, 0});
    EXPECT_NEAR(tri[0], 0.0, 1e-15);
    EXPECT_NEAR(tri[5], 1.0, 1e-15);
    EXPECT_NEAR(tri[10], 0.0, 1e-15);
    EXPECT_NEAR(tri[15], -1.0, 1e-15);
    const auto block = generate_waveform({WaveKind::block, 20, 20, 0});
    for (int k = 0; k < 20; ++k) EXPECT_EQ(block[static_cast<std::size_t>(k)], k < 10 ? 1.0 : -1.0) << k;
}

TEST(Waveform, PeriodicBoundedAndSeeded) {
    for (WaveKind kind : {WaveKind::sin, WaveKind::triangle, WaveKind::block, WaveKind::saw}) {
        const auto w = generate_waveform({kind, 100, 20, 0});
        for (std::size_t k = 0; k + 20 < w.size(); ++k) EXPECT_NEAR(w[k], w[k + 20], 1e-12);
    }
    const auto r1 = generate_waveform({WaveKind::random, 100, 20, 5});
    const auto r2 = generate_waveform({WaveKind::random, 100, 20, 6});
    EXPECT_EQ(r1, generate_waveform({WaveKind::random, 100, 20, 5}));
    EXPECT_NE(r1, r2);
    double peak = 0.0;
    for (double v : r1) peak = std::max(peak, std::abs(v));
    EXPECT_NEAR(peak, 1.0, 1e-12);
    EXPECT_THROW(generate_waveform({WaveKind::sin, 10, 1, 0}), std::invalid_argument);
}

TEST(InputOperator, Endpoints) {
    EXPECT_EQ(input_operator(1.0), (ProjectorTerm{0, 1.0, 0.0}));
    EXPECT_EQ(input_operator(-1.0), (ProjectorTerm{0, 0.0, 1.0}));
    EXPECT_EQ(input_operator(0.0), (ProjectorTerm{0, 0.5, 0.5}));
    EXPECT_THROW(input_operator(1.0001), std::invalid_argument);
}

TEST(Teacher, DelayedCopy) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    EXPECT_EQ(echo_teacher(x, 2), (std::vector<double>{0, 0, 1, 2, 3}));
    EXPECT_EQ(echo_teacher(x, 0), x);
}

TEST(Harvest, RowsBoundedAndShaped) {
    const auto res = small_reservoir(1);
    const auto inputs = generate_waveform({WaveKind::sin, 60, 20, 0});
    for (Mode mode : {Mode::noiseless, Mode::qtcc}) {
        RngStream rng(2);
        const auto v = harvest_features(inputs, res, mode, rng);
        ASSERT_EQ(v.rows(), 60);
        ASSERT_EQ(v.cols(), 4);
        EXPECT_GE(v.minCoeff(), 0.0);
        EXPECT_LE(v.maxCoeff(), 1.0);
    }
}

TEST(Harvest, FrozenDynamicsKeepsInitialRow) {
    RngStream rng(1);
    const auto res = make_reservoir(4, 1e-11, 10, kDefaultDetuning, false, 0.2, rng);
    const auto inputs = generate_waveform({WaveKind::saw, 30, 10, 0});
    RngStream noise(3);
    const auto v = harvest_features(inputs, res, Mode::qtcc, noise);
    EXPECT_LT((v.array() - 1.0).abs().maxCoeff(), 1e-8);
}

TEST(Harvest, NoiselessDoesNotDrawAndIsDeterministic) {
    const auto res = small_reservoir(4);
    const auto inputs = generate_waveform({WaveKind::triangle, 40, 20, 0});
    RngStream a(1);
    RngStream b(2);
    EXPECT_EQ(harvest_features(inputs, res, Mode::noiseless, a), harvest_features(inputs, res, Mode::noiseless, b));
    EXPECT_EQ(a.draws(), 0u);
    RngStream c(9);
    RngStream d(9);
    const auto q1 = harvest_features(inputs, res, Mode::qtcc, c);
    EXPECT_EQ(q1, harvest_features(inputs, res, Mode::qtcc, d));
    EXPECT_GT(c.draws(), 0u);
    RngStream e(1);
    EXPECT_NE(q1, harvest_features(inputs, res, Mode::noiseless, e));
}

TEST(Harvest, InputChangesFeatures) {
    const auto res = small_reservoir(6);
    const std::vector<double> up(30, 1.0);
    const std::vector<double> down(30, -1.0);
    RngStream rng(1);
    EXPECT_GT((harvest_features(up, res, Mode::noiseless, rng) - harvest_features(down, res, Mode::noiseless, rng))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-3);
}

TEST(FitFilter, IdentityGivesTarget) {
    const Eigen::VectorXd y = Eigen::Vector3d(1.0, -2.0, 0.5);
    EXPECT_LT((fit_filter(Eigen::Matrix3d::Identity(), y) - y).norm(), 1e-14);
}

TEST(FitFilter, MatchesNormalEquationOracle) {
    RngStream rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::MatrixXd v = random_matrix(30, 4, rng);
        const Eigen::VectorXd y = random_vector(30, rng);
        const Eigen::VectorXd oracle = (v.transpose() * v).inverse() * v.transpose() * y;
        const Eigen::VectorXd w = fit_filter(v, y);
        EXPECT_NEAR((v * w - y).norm(), (v * oracle - y).norm(), 1e-8);
        EXPECT_LT((w - oracle).norm(), 1e-8);
    }
}

TEST(FitFilter, DuplicatedColumnGivesMinimumNorm) {
    // V = [a a]: every W with w0 + w1 = s minimises, where s = a.y / a.a. The
    // shortest is w0 = w1 = s / 2.
    Eigen::MatrixXd v(3, 2);
    v << 1, 1, 2, 2, -1, -1;
    const Eigen::VectorXd y = Eigen::Vector3d(1.0, 0.0, 2.0);
    const Eigen::VectorXd a = v.col(0);
    const double s = a.dot(y) / a.dot(a);
    const Eigen::VectorXd w = fit_filter(v, y);
    EXPECT_NEAR(w[0], s / 2, 1e-12);
    EXPECT_NEAR(w[1], s / 2, 1e-12);
}

TEST(FitFilter, NoPerturbationImprovesResidual) {
    RngStream rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::MatrixXd v = random_matrix(30, 4, rng);
        const Eigen::VectorXd y = random_vector(30, rng);
        const Eigen::VectorXd w = fit_filter(v, y);
        const double best = (v * w - y).norm();
        for (int probe = 0; probe < 50; ++probe) {
            Eigen::VectorXd eps = random_vector(4, rng);
            eps *= 1e-3 * rng.uniform(0.0, 1.0) / eps.norm();
            EXPECT_GE((v * (w + eps) - y).norm(), best - 1e-12);
        }
    }
}

TEST(FitFilter, Errors) {
    EXPECT_THROW(fit_filter(Eigen::MatrixXd::Zero(3, 2), Eigen::VectorXd::Ones(3)), DegenerateRankError);
    EXPECT_THROW(fit_filter(Eigen::MatrixXd::Ones(3, 2), Eigen::VectorXd::Ones(2)), std::invalid_argument);
    EXPECT_THROW(fit_filter(Eigen::MatrixXd::Ones(3, 2), Eigen::VectorXd::Ones(3), 0.0), std::invalid_argument);
}

TEST(PredictAndLoss, Arithmetic) {
    EXPECT_EQ(predict(Eigen::MatrixXd::Ones(3, 2), Eigen::VectorXd::Zero(2)), Eigen::VectorXd::Zero(3));
    const Eigen::VectorXd w = Eigen::Vector3d(1, 2, 3);
    EXPECT_EQ(predict(Eigen::MatrixXd::Identity(3, 3), w), w);
    EXPECT_THROW(predict(Eigen::MatrixXd::Ones(3, 2), w), std::invalid_argument);
    EXPECT_DOUBLE_EQ(qrc_loss(Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 4)), 25.0);
    EXPECT_DOUBLE_EQ(qrc_loss(Eigen::VectorXd::Constant(7, 2.0), Eigen::VectorXd::Constant(7, 1.0)), 7.0);
    EXPECT_THROW(qrc_loss(Eigen::Vector2d(0, 0), Eigen::Vector3d(0, 0, 0)), std::invalid_argument);
}

TEST(FitPredict, SquareSystemInterpolates) {
    RngStream rng(3);
    const Eigen::MatrixXd v = random_matrix(4, 4, rng);
    const Eigen::VectorXd y = random_vector(4, rng);
    EXPECT_LT((predict(v, fit_filter(v, y)) - y).norm(), 1e-8);
}

TEST(EchoSuite, ShapeAndDeterminism) {
    EchoConfig c;
    c.master_seed = 5;
    c.attempts = 2;
    const auto a = run_echo_suite(c);
    const auto b = run_echo_suite(c);
    ASSERT_EQ(a.records.size(), 2u * 6u * 2u);
    EXPECT_EQ(a.waves.size(), 6u);
    EXPECT_EQ(a.test_start, 60);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].loss, b.records[i].loss);
        EXPECT_EQ(a.records[i].prediction, b.records[i].prediction);
        EXPECT_GE(a.records[i].train_loss, 0.0);
        EXPECT_TRUE(std::isfinite(a.records[i].loss));
        EXPECT_EQ(a.records[i].prediction.size(), 40u);
        if (a.records[i].mode == Mode::noiseless) EXPECT_EQ(a.records[i].noise_draws, 0u);
    }
}

TEST(EchoSuite, ConfigValidation) {
    EchoConfig c;
    c.train_fraction = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = EchoConfig{};
    c.echo_delay = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}
