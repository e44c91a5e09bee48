#include "qtcc/qrc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtcc::qrc {
namespace {

double frac(double v) { return v - std::floor(v); }

}  // namespace

std::string_view to_string(WaveKind kind) noexcept {
    switch (kind) {
        case WaveKind::sin: return "sin";
        case WaveKind::triangle: return "triangle";
        case WaveKind::block: return "block";
        case WaveKind::saw: return "saw";
        case WaveKind::random: return "random";
    }
    return "unknown";
}

WaveKind parse_wave_kind(std::string_view text) {
    for (auto k : {WaveKind::sin, WaveKind::triangle, WaveKind::block, WaveKind::saw, WaveKind::random}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown wave kind '" + std::string(text) + "'");
}

std::vector<double> generate_waveform(const WaveformSpec& spec) {
    if (spec.n_steps < 1) throw std::invalid_argument("waveform needs at least one step");
    if (spec.period_steps < 2) throw std::invalid_argument("waveform period must be at least 2 steps");

    const double period = spec.period_steps;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> out(static_cast<std::size_t>(spec.n_steps));

    if (spec.kind == WaveKind::random) {
        // Five harmonics of the base period with random amplitudes and phases,
        // normalised to unit peak over the generated window.
        RngStream rng(spec.seed);
        double amp[5];
        double phase[5];
        for (int m = 0; m < 5; ++m) {
            amp[m] = rng.uniform(0.0, 1.0);
            phase[m] = rng.uniform(0.0, two_pi);
        }
        double peak = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            double v = 0.0;
            for (int m = 0; m < 5; ++m) v += amp[m] * std::sin(two_pi * (m + 1) * static_cast<double>(k) / period + phase[m]);
            out[k] = v;
            peak = std::max(peak, std::abs(v));
        }
        if (peak > 0.0) {
            for (double& v : out) v /= peak;
        }
        return out;
    }

    for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = static_cast<double>(k) / period;
        switch (spec.kind) {
            case WaveKind::sin: out[k] = std::sin(two_pi * t); break;
            case WaveKind::triangle: out[k] = 1.0 - 4.0 * std::abs(frac(t + 0.25) - 0.5); break;
            case WaveKind::block: {
                // sign(sin) with sign(0) = +1; decided on the integer phase so
                // that round-off in sin(pi) cannot flip a step.
                const int pos = static_cast<int>(k % static_cast<std::size_t>(spec.period_steps));
                out[k] = 2 * pos < spec.period_steps ? 1.0 : -1.0;
                break;
            }
            case WaveKind::saw: out[k] = 2.0 * frac(t) - 1.0; break;
            case WaveKind::random: break;
        }
    }
    return out;
}

ProjectorTerm input_operator(double x) {
    if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("input value must lie in [-1, 1]");
    return {0, 0.5 * (1.0 + x), 0.5 * (1.0 - x)};
}

Reservoir make_reservoir(int n_qubits, double half_period, int frames_per_half_period, double d,
                         bool resample_per_frame, double noise_scale, RngStream& rng, double noise_sigma) {
    FloquetSchedule schedule{all_to_all_ising_template(n_qubits), half_period, frames_per_half_period, d,
                             resample_per_frame};
    schedule.validate();
    std::vector<double> base(schedule.h1_template.term_count());
    for (double& b : base) b = rng.uniform(-1.0, 1.0);
    return {std::move(schedule), NoiseSpec::uniform(std::move(base), noise_scale, noise_sigma)};
}

Eigen::RowVectorXd feature_row(const Statevector& state) {
    const int n = state.n_qubits();
    Eigen::RowVectorXd row(n);
    std::string label(static_cast<std::size_t>(n), 'I');
    for (int l = 0; l < n; ++l) {
        label[static_cast<std::size_t>(l)] = 'Z';
        row[l] = 0.5 * (expectation(state, PauliString::from_label(label)) + 1.0);
        label[static_cast<std::size_t>(l)] = 'I';
    }
    return row;
}

Eigen::MatrixXd harvest_features(std::span<const double> inputs, const Reservoir& reservoir, Mode mode,
                                 RngStream& rng) {
    const NoiseSpec spec = mode == Mode::qtcc ? reservoir.noise : NoiseSpec::noiseless(reservoir.noise.base);
    FloquetSequence sequence(reservoir.schedule, spec, rng);
    const double dt = reservoir.schedule.frame_duration();
    const int n = reservoir.schedule.n_qubits();

    Eigen::MatrixXd v(static_cast<Eigen::Index>(inputs.size()), n);
    Statevector psi = zero_state(n);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto frame = sequence.next();
        const ProjectorTerm in = input_operator(inputs[k]);
        IsingHamiltonian h = *frame.hamiltonian;
        h.add_projector(in.qubit, in.p0, in.p1);
        psi = evolve(psi, h, dt);
        v.row(static_cast<Eigen::Index>(k)) = feature_row(psi);
    }
    return v;
}

Eigen::VectorXd fit_filter(const Eigen::MatrixXd& v, const Eigen::VectorXd& y, double rcond) {
    if (v.rows() != y.size()) throw std::invalid_argument("fit_filter: V rows and y length differ");
    if (!(rcond > 0.0)) throw std::invalid_argument("fit_filter: rcond must be positive");
    if (v.size() == 0) throw DegenerateRankError("fit_filter: empty feature matrix");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = rcond * s[0];
    if (!(s[0] > 0.0)) throw DegenerateRankError("fit_filter: feature matrix has rank 0");

    const Eigen::VectorXd uty = svd.matrixU().adjoint() * y;
    Eigen::VectorXd scaled = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > cutoff) scaled[i] = uty[i] / s[i];
    }
    return svd.matrixV() * scaled;
}

Eigen::VectorXd predict(const Eigen::MatrixXd& v, const Eigen::VectorXd& w) {
    if (v.cols() != w.size()) throw std::invalid_argument("predict: V columns and W length differ");
    return v * w;
}

double qrc_loss(const Eigen::VectorXd& y_tilde, const Eigen::VectorXd& y) {
    if (y_tilde.size() != y.size()) throw std::invalid_argument("qrc_loss: length mismatch");
    return (y_tilde - y).squaredNorm();
}

void EchoConfig::validate() const {
    if (attempts < 1) throw std::invalid_argument("attempts must be at least 1");
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("reservoir_qubits out of range");
    if (echo_delay < 0) throw std::invalid_argument("echo_delay must be non-negative");
    if (period_steps < 2) throw std::invalid_argument("period_steps must be at least 2");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("train_fraction must lie in (0, 1)");
    }
    const int train = static_cast<int>(std::floor(train_fraction * n_steps));
    if (train < 1 || train >= n_steps) throw std::invalid_argument("n_steps too small for the train/test split");
    if (!(noise_scale >= 0.0)) throw std::invalid_argument("noise_scale must be non-negative");
    if (!(rcond > 0.0)) throw std::invalid_argument("rcond must be positive");
    FloquetSchedule{IsingHamiltonian(n_qubits), half_period, frames_per_half_period, d, resample_per_frame}.validate();
}

std::vector<EchoWave> echo_waves(const EchoConfig& config) {
    auto make = [&](WaveKind kind, std::uint64_t seed) {
        return WaveformSpec{kind, config.n_steps, config.period_steps, seed};
    };
    return {
        {"sin", make(WaveKind::sin, 0)},
        {"triangle", make(WaveKind::triangle, 0)},
        {"block", make(WaveKind::block, 0)},
        {"saw", make(WaveKind::saw, 0)},
        {"random1", make(WaveKind::random, derive_seed(config.master_seed, "random_wave", 1))},
        {"random2", make(WaveKind::random, derive_seed(config.master_seed, "random_wave", 2))},
    };
}

std::vector<double> echo_teacher(std::span<const double> inputs, int delay) {
    if (delay < 0) throw std::invalid_argument("echo delay must be non-negative");
    std::vector<double> y(inputs.size(), 0.0);
    for (std::size_t k = static_cast<std::size_t>(delay); k < inputs.size(); ++k) {
        y[k] = inputs[k - static_cast<std::size_t>(delay)];
    }
    return y;
}

EchoRecord run_echo_attempt(const EchoConfig& config, const EchoWave& wave, Mode mode, int attempt) {
    const auto index = static_cast<std::uint64_t>(attempt);
    RngStream reservoir_rng(derive_seed(config.master_seed, "reservoir", index));
    const Reservoir reservoir =
        make_reservoir(config.n_qubits, config.half_period, config.frames_per_half_period, config.d,
                       config.resample_per_frame, config.noise_scale, reservoir_rng, config.noise_sigma);
    RngStream noise_rng(derive_seed(config.master_seed, "reservoir_noise/" + wave.label, index));

    const std::vector<double> inputs = generate_waveform(wave.spec);
    const std::vector<double> teacher = echo_teacher(inputs, config.echo_delay);
    const Eigen::MatrixXd v = harvest_features(inputs, reservoir, mode, noise_rng);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(teacher.data(), static_cast<Eigen::Index>(teacher.size()));

    const auto train = static_cast<Eigen::Index>(std::floor(config.train_fraction * config.n_steps));
    const Eigen::Index test = v.rows() - train;
    const Eigen::VectorXd w = fit_filter(v.topRows(train), y.head(train), config.rcond);
    const Eigen::VectorXd fit = predict(v.topRows(train), w);
    const Eigen::VectorXd pred = predict(v.bottomRows(test), w);

    EchoRecord rec{wave.label, mode, attempt, qrc_loss(fit, y.head(train)), qrc_loss(pred, y.tail(test)), {}};
    rec.prediction.assign(pred.data(), pred.data() + pred.size());
    rec.noise_draws = noise_rng.draws();
    return rec;
}

EchoSuiteResult run_echo_suite(const EchoConfig& config) {
    config.validate();
    EchoSuiteResult result;
    result.waves = echo_waves(config);
    result.test_start = static_cast<int>(std::floor(config.train_fraction * config.n_steps));
    for (const auto& wave : result.waves) {
        const auto inputs = generate_waveform(wave.spec);
        const auto teacher = echo_teacher(inputs, config.echo_delay);
        result.targets.emplace_back(teacher.begin() + result.test_start, teacher.end());
    }
    for (Mode mode : {Mode::noiseless, Mode::qtcc}) {
        for (const auto& wave : result.waves) {
            for (int a = 0; a < config.attempts; ++a) {
                result.records.push_back(run_echo_attempt(config, wave, mode, a));
            }
        }
    }
    return result;
}

}  // namespace qtcc::qrc
