#pragma once

#include "qtcc/floquet.hpp"
#include "qtcc/qml.hpp"
#include "qtcc/qrc.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qtcc {

enum class ExperimentKind { qrc_echo, fit_qnn, fit_vqkan };

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view text);

/// Fully resolved experiment configuration. Every field has a default; the
/// defaults follow the reference protocol (2 layers, 10 frames, 10 noise
/// repeats, 10 train / 50 test points, 15 generations, 10 attempts, d = 0.001).
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::qrc_echo;
    Mode mode = Mode::noiseless;  // ignored by qrc_echo, which runs both modes
    std::uint64_t seed = 1;
    int attempts = 10;
    int generations = 15;

    // Floquet substrate
    double half_period = 1.0;
    int frames_per_half_period = 10;
    double d = kDefaultDetuning;
    double noise_scale = 0.1;
    double noise_sigma = kNoiseSigma;
    bool resample_per_frame = false;

    // Reservoir echo
    int reservoir_qubits = 4;
    int echo_delay = 5;
    int n_steps = 100;
    int period_steps = 20;
    double train_fraction = 0.6;
    double rcond = 1e-10;

    // Function fitting
    int n_layers = 2;
    int n_train = 10;
    int n_test = 50;
    double domain_lo = 0.0;
    double domain_hi = 0.25;
    int spline_grid = 5;
    int spline_degree = 3;
    int noise_repeats = 10;
    double sigma0 = 0.3;

    bool operator==(const ExperimentConfig&) const = default;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    qrc::EchoConfig echo_config() const;
    qml::ModelSpec model_spec() const;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    /// Offending key, empty for syntax errors.
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses a JSON object of config keys. An empty (or all-whitespace) document
/// yields the defaults. Unknown keys, wrong types and out-of-range values raise
/// ConfigError; syntax errors report line and column.
ExperimentConfig parse_config(std::string_view text);

/// Pretty-printed JSON with every key; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);

}  // namespace qtcc
