#include "qtcc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtcc {

std::string_view to_string(Mode mode) noexcept { return mode == Mode::qtcc ? "qtcc" : "noiseless"; }

Mode parse_mode(std::string_view text) {
    if (text == "noiseless") return Mode::noiseless;
    if (text == "qtcc") return Mode::qtcc;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected noiseless or qtcc)");
}

NoiseSpec NoiseSpec::for_mode(Mode mode, std::vector<double> base, double scale, double sigma) {
    if (mode == Mode::noiseless) return noiseless(std::move(base));
    return uniform(std::move(base), scale, sigma);
}

NoiseSpec NoiseSpec::noiseless(std::vector<double> base) {
    NoiseSpec s;
    s.amplitudes.assign(base.size(), 0.0);
    s.base = std::move(base);
    return s;
}

NoiseSpec NoiseSpec::uniform(std::vector<double> base, double scale, double sigma) {
    NoiseSpec s;
    s.amplitudes.assign(base.size(), scale);
    s.base = std::move(base);
    s.sigma = sigma;
    return s;
}

bool NoiseSpec::is_noiseless() const noexcept {
    return std::all_of(amplitudes.begin(), amplitudes.end(), [](double a) { return a == 0.0; });
}

void NoiseSpec::validate() const {
    if (base.size() != amplitudes.size()) {
        throw std::invalid_argument("noise spec: base has " + std::to_string(base.size()) +
                                    " entries but amplitudes has " + std::to_string(amplitudes.size()));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise spec: sigma must be positive");
    for (double v : base) {
        if (!std::isfinite(v)) throw std::invalid_argument("noise spec: non-finite base coefficient");
    }
    for (double v : amplitudes) {
        if (!std::isfinite(v)) throw std::invalid_argument("noise spec: non-finite amplitude");
    }
}

void FloquetSchedule::validate() const {
    if (!(half_period > 0.0) || !std::isfinite(half_period)) {
        throw std::invalid_argument("half_period must be positive and finite");
    }
    if (frames_per_half_period < 1) throw std::invalid_argument("frames_per_half_period must be at least 1");
    if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("d must lie in [0, 1)");
}

IsingHamiltonian all_to_all_ising_template(int n_qubits) {
    IsingHamiltonian h(n_qubits);
    for (int q = 0; q < n_qubits; ++q) h.add_one_body(q, Pauli::Z, 0.0);
    for (int q = 0; q < n_qubits; ++q) h.add_one_body(q, Pauli::X, 0.0);
    for (int i = 0; i < n_qubits; ++i) {
        for (int j = i + 1; j < n_qubits; ++j) h.add_two_body(i, j, 0.0);
    }
    return h;
}

IsingHamiltonian drive_hamiltonian(int n_qubits, double d) {
    // d == 1 is accepted here (all-zero drive); schedules restrict d < 1.
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("d must lie in [0, 1]");
    IsingHamiltonian h(n_qubits);
    const double c = 0.5 * (1.0 - d);
    for (int q = 0; q < n_qubits; ++q) h.add_one_body(q, Pauli::X, c);
    return h;
}

IsingHamiltonian sample_noisy_h1(const NoiseSpec& spec, const IsingHamiltonian& h1_template, RngStream& rng) {
    spec.validate();
    if (spec.base.size() != h1_template.term_count()) {
        throw std::invalid_argument("noise spec has " + std::to_string(spec.base.size()) +
                                    " coefficients but template has " + std::to_string(h1_template.term_count()) +
                                    " terms");
    }
    if (spec.is_noiseless()) return h1_template.with_coefficients(spec.base);
    std::normal_distribution<double> err(0.0, spec.sigma);
    std::vector<double> theta(spec.base.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = spec.base[i] + spec.amplitudes[i] * err(rng);
    return h1_template.with_coefficients(theta);
}

FloquetSequence::FloquetSequence(const FloquetSchedule& schedule, const NoiseSpec& spec, RngStream& rng)
    : schedule_(schedule), spec_(spec), rng_(rng), drive_(drive_hamiltonian(schedule.n_qubits(), schedule.d)) {
    schedule_.validate();
    spec_.validate();
}

FloquetSequence::Frame FloquetSequence::next() {
    const auto frames = static_cast<std::size_t>(schedule_.frames_per_half_period);
    const std::size_t index = frame_++;
    const std::size_t half = index / frames;
    const bool first_of_half = index % frames == 0;
    if (half % 2 == 0) return {index, half, Branch::drive, &drive_, first_of_half};

    const bool resample = first_of_half || (schedule_.resample_per_frame && !spec_.is_noiseless());
    if (resample || !h1_) h1_ = sample_noisy_h1(spec_, schedule_.h1_template, rng_);
    return {index, half, Branch::h1, &*h1_, resample};
}

Statevector floquet_propagate(const Statevector& state, const FloquetSchedule& schedule, const NoiseSpec& spec,
                              int n_half_periods, RngStream& rng, const FrameObserver& observer) {
    if (n_half_periods < 1) throw std::invalid_argument("n_half_periods must be at least 1");
    if (state.n_qubits() != schedule.n_qubits()) throw std::invalid_argument("schedule/state qubit mismatch");

    FloquetSequence sequence(schedule, spec, rng);
    const double dt = schedule.frame_duration();
    const std::size_t total =
        static_cast<std::size_t>(n_half_periods) * static_cast<std::size_t>(schedule.frames_per_half_period);

    Statevector psi = state;
    ComplexMatrix step;
    for (std::size_t f = 0; f < total; ++f) {
        const auto frame = sequence.next();
        if (frame.changed || f == 0) step = Propagator(*frame.hamiltonian).unitary(dt);
        psi = Propagator::apply(step, psi);
        if (observer) observer(FrameView{frame.index, frame.half_period, frame.branch, *frame.hamiltonian}, psi);
    }
    return psi;
}

}  // namespace qtcc
