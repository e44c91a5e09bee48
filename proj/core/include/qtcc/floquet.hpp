#pragma once

// Floquet time-crystal substrate: a drive half-period under
// sum_j 0.5 (1 - d) X_j alternating with a half-period under a noisy
// all-to-all Ising Hamiltonian H1.

#include "qtcc/quantum_core.hpp"
#include "qtcc/rng.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace qtcc {

inline constexpr double kDefaultDetuning = 0.001;

/// Noiseless time propagation versus time-crystal computing with H1 noise.
enum class Mode { noiseless, qtcc };

std::string_view to_string(Mode mode) noexcept;
/// Accepts "noiseless" or "qtcc"; throws otherwise.
Mode parse_mode(std::string_view text);

inline constexpr double kNoiseSigma = 1.0 / 3.0;

/// theta_i = base_i + amplitude_i * g,  g ~ Normal(0, sigma).
struct NoiseSpec {
    std::vector<double> base;
    std::vector<double> amplitudes;
    double sigma = kNoiseSigma;

    /// All amplitudes zero.
    static NoiseSpec noiseless(std::vector<double> base);
    /// Every amplitude equal to `scale`.
    static NoiseSpec uniform(std::vector<double> base, double scale, double sigma = kNoiseSigma);
    /// `uniform(base, scale, sigma)` in qtcc mode, `noiseless(base)` otherwise.
    static NoiseSpec for_mode(Mode mode, std::vector<double> base, double scale, double sigma = kNoiseSigma);

    bool is_noiseless() const noexcept;
    void validate() const;
};

struct FloquetSchedule {
    IsingHamiltonian h1_template;
    double half_period = 1.0;
    int frames_per_half_period = 10;
    double d = kDefaultDetuning;
    bool resample_per_frame = false;

    int n_qubits() const noexcept { return h1_template.n_qubits(); }
    double frame_duration() const noexcept { return half_period / frames_per_half_period; }
    void validate() const;
};

/// Z one-body on every qubit, then X one-body on every qubit, then ZZ on every unordered pair
/// (i < j, lexicographic), all coefficients zero.
IsingHamiltonian all_to_all_ising_template(int n_qubits);

IsingHamiltonian drive_hamiltonian(int n_qubits, double d);

/// Draws one noisy realisation of H1. Draws nothing from `rng` when `spec`
/// is noiseless.
IsingHamiltonian sample_noisy_h1(const NoiseSpec& spec, const IsingHamiltonian& h1_template, RngStream& rng);

enum class Branch { drive, h1 };

/// Frame-by-frame view of the alternating schedule. Frame f lies in
/// half-period f / frames; even half-periods are the drive, odd ones H1.
/// H1 noise is drawn when an H1 half-period begins (or every H1 frame when
/// the schedule asks for per-frame resampling).
class FloquetSequence {
public:
    FloquetSequence(const FloquetSchedule& schedule, const NoiseSpec& spec, RngStream& rng);

    struct Frame {
        std::size_t index;
        std::size_t half_period;
        Branch branch;
        const IsingHamiltonian* hamiltonian;
        /// True when `hamiltonian` differs from the previous frame's.
        bool changed;
    };

    Frame next();

private:
    const FloquetSchedule& schedule_;
    const NoiseSpec& spec_;
    RngStream& rng_;
    IsingHamiltonian drive_;
    std::optional<IsingHamiltonian> h1_;
    std::size_t frame_ = 0;
};

struct FrameView {
    std::size_t index;
    std::size_t half_period;
    Branch branch;
    const IsingHamiltonian& hamiltonian;
};

using FrameObserver = std::function<void(const FrameView&, const Statevector&)>;

/// Runs `n_half_periods` half-periods starting with the drive, evolving in
/// frames of duration T / frames and calling `observer` (if set) after each.
Statevector floquet_propagate(const Statevector& state, const FloquetSchedule& schedule, const NoiseSpec& spec,
                              int n_half_periods, RngStream& rng, const FrameObserver& observer = {});

}  // namespace qtcc
