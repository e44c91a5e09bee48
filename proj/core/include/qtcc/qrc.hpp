#pragma once

// Quantum reservoir computing on the Floquet substrate: waveform corpus,
// input injection on qubit 0, feature harvesting, pseudoinverse readout and
// the six-wave echo benchmark.

#include "qtcc/floquet.hpp"
#include "qtcc/quantum_core.hpp"
#include "qtcc/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtcc::qrc {

enum class WaveKind { sin, triangle, block, saw, random };

std::string_view to_string(WaveKind kind) noexcept;
WaveKind parse_wave_kind(std::string_view text);

struct WaveformSpec {
    WaveKind kind = WaveKind::sin;
    int n_steps = 100;
    int period_steps = 20;
    std::uint64_t seed = 0;  // random kind only
};

/// Values in [-1, 1]. All kinds except random repeat every period_steps.
std::vector<double> generate_waveform(const WaveformSpec& spec);

/// 0.5 (1 + x) |0><0| + 0.5 (1 - x) |1><1| on qubit 0.
ProjectorTerm input_operator(double x);

struct Reservoir {
    FloquetSchedule schedule;
    /// base holds the drawn H1 coefficients; amplitudes the qtcc noise.
    NoiseSpec noise;
};

/// Base H1 coefficients drawn uniformly from [-1, 1], one per template term.
Reservoir make_reservoir(int n_qubits, double half_period, int frames_per_half_period, double d,
                         bool resample_per_frame, double noise_scale, RngStream& rng,
                         double noise_sigma = kNoiseSigma);

/// One feature row, (0.5 (<Z_l> + 1)) for every qubit l.
Eigen::RowVectorXd feature_row(const Statevector& state);

/// Starting from |0...0>, evolves one Floquet frame per input value with the
/// input operator added to the active branch Hamiltonian, recording one row
/// after each frame. Row k therefore belongs to sample k / frames, frame
/// k % frames. In noiseless mode the noise amplitudes are ignored and `rng`
/// is not touched.
Eigen::MatrixXd harvest_features(std::span<const double> inputs, const Reservoir& reservoir, Mode mode,
                                 RngStream& rng);

class DegenerateRankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimum-norm least-squares W with V W ~ y, via SVD. Singular values
/// below rcond * sigma_max are discarded.
Eigen::VectorXd fit_filter(const Eigen::MatrixXd& v, const Eigen::VectorXd& y, double rcond = 1e-10);

Eigen::VectorXd predict(const Eigen::MatrixXd& v, const Eigen::VectorXd& w);

/// Sum of squared differences.
double qrc_loss(const Eigen::VectorXd& y_tilde, const Eigen::VectorXd& y);

struct EchoConfig {
    std::uint64_t master_seed = 0;
    int attempts = 10;
    int n_qubits = 4;
    double half_period = 1.0;
    int frames_per_half_period = 10;
    double d = kDefaultDetuning;
    bool resample_per_frame = false;
    double noise_scale = 0.1;
    double noise_sigma = kNoiseSigma;
    int echo_delay = 5;
    int n_steps = 100;
    int period_steps = 20;
    double train_fraction = 0.6;
    double rcond = 1e-10;

    void validate() const;
};

/// The six benchmark waves: sin, triangle, block, saw and two random seeds.
struct EchoWave {
    std::string label;
    WaveformSpec spec;
};
std::vector<EchoWave> echo_waves(const EchoConfig& config);

struct EchoRecord {
    std::string wave;
    Mode mode;
    int attempt;
    double train_loss;
    double loss;  // held-out segment
    std::vector<double> prediction;  // held-out segment
    std::uint64_t noise_draws = 0;
};

struct EchoSuiteResult {
    std::vector<EchoRecord> records;
    std::vector<EchoWave> waves;
    int test_start = 0;
    /// Teacher values over the held-out segment, per wave (same order as `waves`).
    std::vector<std::vector<double>> targets;
};

/// Teacher: the input delayed by `delay` steps, zero before the wave starts.
std::vector<double> echo_teacher(std::span<const double> inputs, int delay);

/// One attempt of one wave in one mode. The reservoir is drawn from the
/// ("reservoir", attempt) stream and noise from ("reservoir_noise/<wave>",
/// attempt). Train and test rows come from one continuous execution.
EchoRecord run_echo_attempt(const EchoConfig& config, const EchoWave& wave, Mode mode, int attempt);

/// Every wave x attempt in both modes. Attempt a uses the same reservoir in
/// both modes.
EchoSuiteResult run_echo_suite(const EchoConfig& config);

}  // namespace qtcc::qrc
