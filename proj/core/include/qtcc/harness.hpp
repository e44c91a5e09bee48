#pragma once

#include "qtcc/cmaes.hpp"
#include "qtcc/config.hpp"
#include "qtcc/qml.hpp"
#include "qtcc/qrc.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qtcc {

/// One attempt of one group (a wave for qrc_echo, the model for fits).
struct AttemptRecord {
    std::string group;
    Mode mode;
    int attempt;
    double metric;       // held-out echo loss, or sum of absolute test distances
    double train_loss;   // echo training loss, or best CMA-ES fitness
    std::size_t clamp_events = 0;
    std::uint64_t noise_draws = 0;
};

struct TraceRow {
    int attempt;
    GenerationRecord record;
};

/// Test-point prediction of a fit attempt.
struct PredictionRow {
    int attempt;
    int point;
    qml::Point u;
    double prediction;
    double target;
};

/// Final parameters of a fit attempt.
struct ParameterSnapshot {
    int attempt;
    std::vector<std::string> names;
    std::vector<double> values;
};

struct SummaryRow {
    std::string group;
    Mode mode;
    std::string statistic;  // average, maximum, minimum, median
    double value;
};

struct RunReport {
    ExperimentConfig config;
    std::vector<AttemptRecord> attempts;
    std::vector<TraceRow> traces;
    std::vector<PredictionRow> predictions;
    std::vector<ParameterSnapshot> parameters;
    qrc::EchoSuiteResult echo;  // qrc_echo only
    double wall_clock_seconds = 0.0;
};

/// Average, maximum, minimum and median of `metric` per (group, mode), in
/// first-appearance order. For qrc_echo an extra "all" group pools every wave.
std::vector<SummaryRow> summarize(const std::vector<AttemptRecord>& attempts, bool pooled_group);

double median(std::vector<double> values);

/// Per-attempt seeds, independent of the mode so that noiseless and qtcc
/// runs of the same config see identical data and initial parameters.
struct AttemptSeeds {
    std::uint64_t train_points;
    std::uint64_t test_points;
    std::uint64_t init_params;
    std::uint64_t cmaes;
    std::uint64_t train_noise;
    std::uint64_t test_noise;
};
AttemptSeeds attempt_seeds(std::uint64_t master_seed, int attempt);

/// One CMA-ES fit of the configured model, evaluated on its test points.
struct FitAttempt {
    AttemptRecord record;
    std::vector<qml::EncodedInput> train;
    std::vector<qml::EncodedInput> test;
    std::vector<double> test_predictions;
    OptimizeResult optimization;
};
FitAttempt run_fit_attempt(const ExperimentConfig& config, int attempt);

RunReport run_case(const ExperimentConfig& config);

}  // namespace qtcc
