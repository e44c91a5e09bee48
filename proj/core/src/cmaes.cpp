#include "qtcc/cmaes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtcc {

CmaEs::CmaEs(Eigen::VectorXd x0, double sigma0, std::uint64_t seed, std::optional<int> lambda) : rng_(seed) {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw std::invalid_argument("sigma0 must be positive");
    if (x0.size() == 0) throw std::invalid_argument("CMA-ES needs at least one dimension");
    if (!x0.allFinite()) throw std::invalid_argument("x0 must be finite");

    const int n = static_cast<int>(x0.size());
    const double nd = n;
    auto& s = state_;
    s.dimension = n;
    s.lambda = lambda.value_or(4 + static_cast<int>(std::floor(3.0 * std::log(nd))));
    if (s.lambda < 2) throw std::invalid_argument("population size must be at least 2");
    s.mu = s.lambda / 2;

    s.weights.resize(s.mu);
    for (int i = 0; i < s.mu; ++i) s.weights[i] = std::log((s.lambda + 1) / 2.0) - std::log(i + 1.0);
    s.weights /= s.weights.sum();
    s.mueff = 1.0 / s.weights.squaredNorm();

    cc_ = (4.0 + s.mueff / nd) / (nd + 4.0 + 2.0 * s.mueff / nd);
    cs_ = (s.mueff + 2.0) / (nd + s.mueff + 5.0);
    c1_ = 2.0 / ((nd + 1.3) * (nd + 1.3) + s.mueff);
    cmu_ = std::min(1.0 - c1_, 2.0 * (s.mueff - 2.0 + 1.0 / s.mueff) / ((nd + 2.0) * (nd + 2.0) + s.mueff));
    damps_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((s.mueff - 1.0) / (nd + 1.0)) - 1.0) + cs_;
    chi_n_ = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

    s.mean = std::move(x0);
    s.sigma = sigma0;
    s.covariance = Eigen::MatrixXd::Identity(n, n);
    s.eigenbasis = Eigen::MatrixXd::Identity(n, n);
    s.axis_lengths = Eigen::VectorXd::Ones(n);
    s.path_sigma = Eigen::VectorXd::Zero(n);
    s.path_c = Eigen::VectorXd::Zero(n);
    s.best_params = s.mean;
}

std::vector<Eigen::VectorXd> CmaEs::ask() {
    const auto& s = state_;
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(s.lambda));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < s.lambda; ++k) {
        Eigen::VectorXd z(s.dimension);
        for (int i = 0; i < s.dimension; ++i) z[i] = normal(rng_);
        out.push_back(s.mean + s.sigma * (s.eigenbasis * s.axis_lengths.cwiseProduct(z)));
    }
    return out;
}

void CmaEs::tell(std::span<const Eigen::VectorXd> candidates, std::span<const double> fitness) {
    auto& s = state_;
    if (candidates.size() != fitness.size() || candidates.empty()) {
        throw std::invalid_argument("tell: candidate and fitness counts differ");
    }
    std::vector<std::size_t> order;
    order.reserve(fitness.size());
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (candidates[i].size() != s.dimension) throw std::invalid_argument("tell: candidate dimension mismatch");
        if (std::isfinite(fitness[i])) {
            order.push_back(i);
        } else {
            ++excluded;
        }
    }
    if (order.empty()) throw std::runtime_error("tell: every fitness value is non-finite; generation rejected");
    s.nonfinite_fitness += excluded;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });

    if (fitness[order.front()] < s.best_fitness) {
        s.best_fitness = fitness[order.front()];
        s.best_params = candidates[order.front()];
    }

    // Fewer finite candidates than mu: recombine the ones we have.
    const int mu = std::min<int>(s.mu, static_cast<int>(order.size()));
    Eigen::VectorXd w = s.weights.head(mu);
    w /= w.sum();
    const double mueff = 1.0 / w.squaredNorm();

    const Eigen::VectorXd old_mean = s.mean;
    Eigen::MatrixXd steps(s.dimension, mu);
    for (int i = 0; i < mu; ++i) steps.col(i) = (candidates[order[static_cast<std::size_t>(i)]] - old_mean) / s.sigma;
    const Eigen::VectorXd y_w = steps * w;
    s.mean = old_mean + s.sigma * y_w;

    // C^{-1/2} y_w = B D^{-1} B^T y_w
    const Eigen::VectorXd inv_sqrt_y =
        s.eigenbasis * (s.eigenbasis.transpose() * y_w).cwiseQuotient(s.axis_lengths);
    s.path_sigma = (1.0 - cs_) * s.path_sigma + std::sqrt(cs_ * (2.0 - cs_) * mueff) * inv_sqrt_y;

    const double ps_norm = s.path_sigma.norm();
    const double decay = 1.0 - std::pow(1.0 - cs_, 2.0 * (s.generation + 1));
    const bool hsig = ps_norm / std::sqrt(decay) / chi_n_ < 1.4 + 2.0 / (s.dimension + 1.0);
    s.path_c = (1.0 - cc_) * s.path_c + (hsig ? std::sqrt(cc_ * (2.0 - cc_) * mueff) : 0.0) * y_w;

    const double delta_hsig = hsig ? 0.0 : cc_ * (2.0 - cc_);
    Eigen::MatrixXd rank_mu = steps * w.asDiagonal() * steps.transpose();
    s.covariance = (1.0 - c1_ - cmu_) * s.covariance + c1_ * (s.path_c * s.path_c.transpose() + delta_hsig * s.covariance) +
                   cmu_ * rank_mu;

    s.sigma *= std::exp((cs_ / damps_) * (ps_norm / chi_n_ - 1.0));
    ++s.generation;
    update_eigensystem();
}

void CmaEs::update_eigensystem() {
    auto& s = state_;
    s.covariance = 0.5 * (s.covariance + s.covariance.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.covariance);
    Eigen::VectorXd ev = solver.eigenvalues();
    const double max_ev = ev.maxCoeff();
    if (!(max_ev > 0.0) || !std::isfinite(max_ev)) {
        // Collapsed or blown-up covariance: restart the shape, keep mean and step.
        s.covariance = Eigen::MatrixXd::Identity(s.dimension, s.dimension);
        s.eigenbasis = Eigen::MatrixXd::Identity(s.dimension, s.dimension);
        s.axis_lengths = Eigen::VectorXd::Ones(s.dimension);
        ++s.reconditionings;
        return;
    }
    if (ev.minCoeff() < 1e-14 * max_ev) {
        s.covariance.diagonal().array() += 1e-13 * max_ev - ev.minCoeff();
        solver.compute(s.covariance);
        ev = solver.eigenvalues();
        ++s.reconditionings;
    }
    s.eigenbasis = solver.eigenvectors();
    s.axis_lengths = ev.cwiseMax(0.0).cwiseSqrt();
}

double CmaEs::condition_number() const {
    const auto& d = state_.axis_lengths;
    return (d.maxCoeff() * d.maxCoeff()) / (d.minCoeff() * d.minCoeff());
}

OptimizeResult optimize(const Objective& loss, const Eigen::VectorXd& x0, double sigma0, int max_generations,
                        std::uint64_t seed, std::optional<int> lambda) {
    if (max_generations < 1) throw std::invalid_argument("max_generations must be at least 1");
    CmaEs es(x0, sigma0, seed, lambda);
    OptimizeResult result;
    result.history.reserve(static_cast<std::size_t>(max_generations));
    for (int g = 0; g < max_generations; ++g) {
        const auto candidates = es.ask();
        std::vector<double> fitness(candidates.size());
        for (std::size_t m = 0; m < candidates.size(); ++m) {
            fitness[m] = loss(candidates[m], EvalContext{g, static_cast<int>(m)});
        }
        es.tell(candidates, fitness);

        double sum = 0.0;
        double gen_best = std::numeric_limits<double>::infinity();
        int finite = 0;
        for (double f : fitness) {
            if (!std::isfinite(f)) continue;
            sum += f;
            gen_best = std::min(gen_best, f);
            ++finite;
        }
        result.history.push_back({g, es.state().best_fitness, gen_best, sum / finite});
    }
    result.best_params = es.state().best_params;
    result.best_fitness = es.state().best_fitness;
    result.final_state = es.state();
    return result;
}

}  // namespace qtcc
