#pragma once

// Covariance Matrix Adaptation Evolution Strategy (rank-one + rank-mu
// covariance update with cumulative step-size adaptation), using the
// default strategy parameters of Hansen's tutorial.

#include "qtcc/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace qtcc {

struct CmaState {
    int dimension = 0;
    int lambda = 0;
    int mu = 0;
    Eigen::VectorXd weights;
    double mueff = 0.0;

    Eigen::VectorXd mean;
    double sigma = 0.0;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd eigenbasis;     // B: columns are eigenvectors of C
    Eigen::VectorXd axis_lengths;   // D: square roots of C's eigenvalues
    Eigen::VectorXd path_sigma;
    Eigen::VectorXd path_c;
    int generation = 0;

    Eigen::VectorXd best_params;
    double best_fitness = std::numeric_limits<double>::infinity();

    std::size_t nonfinite_fitness = 0;  // excluded candidates so far
    std::size_t reconditionings = 0;
};

class CmaEs {
public:
    /// lambda defaults to 4 + floor(3 ln n). Throws if sigma0 <= 0 or x0 is empty.
    CmaEs(Eigen::VectorXd x0, double sigma0, std::uint64_t seed, std::optional<int> lambda = std::nullopt);

    const CmaState& state() const noexcept { return state_; }

    /// lambda samples mean + sigma * B D z with z standard normal.
    std::vector<Eigen::VectorXd> ask();

    /// Updates the distribution from the candidates of the last ask(). Non-finite
    /// fitness values are excluded (and counted); if none is finite the
    /// generation is rejected with std::runtime_error and the state is unchanged.
    void tell(std::span<const Eigen::VectorXd> candidates, std::span<const double> fitness);

    /// Condition number of the covariance (max / min eigenvalue).
    double condition_number() const;

private:
    void update_eigensystem();

    CmaState state_;
    RngStream rng_;
    double cc_, cs_, c1_, cmu_, damps_, chi_n_;
};

struct EvalContext {
    int generation;
    int member;
};

using Objective = std::function<double(const Eigen::VectorXd&, const EvalContext&)>;

struct GenerationRecord {
    int generation;
    double best_fitness;        // best ever, after this generation
    double generation_best;
    double mean_fitness;        // over finite fitnesses of this generation
};

struct OptimizeResult {
    Eigen::VectorXd best_params;
    double best_fitness;
    std::vector<GenerationRecord> history;
    CmaState final_state;
};

OptimizeResult optimize(const Objective& loss, const Eigen::VectorXd& x0, double sigma0, int max_generations,
                        std::uint64_t seed, std::optional<int> lambda = std::nullopt);

}  // namespace qtcc
