#pragma once

// Dense statevector simulation for small registers.
//
// Bit order: qubit 0 is the least-significant bit of the basis index, so
// basis index 0b0010 on four qubits is |q3 q2 q1 q0> = |0010>, i.e. qubit 1
// is in |1>. All contracts are insensitive to global phase.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qtcc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

class Statevector {
public:
    /// Wraps an amplitude vector. Throws if the length is not a power of two
    /// matching `n_qubits` or if the squared norm differs from 1 by more than 1e-10.
    Statevector(int n_qubits, ComplexVector amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }
    double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }

private:
    friend class Propagator;
    friend Statevector apply_ry(const Statevector&, int, double);
    friend Statevector apply_controlled_ry(const Statevector&, int, int, double);
    struct Unchecked {};
    Statevector(Unchecked, int n_qubits, ComplexVector amplitudes) noexcept
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

    int n_qubits_;
    ComplexVector amplitudes_;
};

/// A weighted tensor product of single-qubit Paulis, one factor per qubit.
struct PauliString {
    std::vector<Pauli> factors;
    double coefficient = 1.0;

    /// `label[i]` is the factor on qubit i, e.g. "ZZII" is Z0 Z1 on four qubits.
    static PauliString from_label(std::string_view label, double coefficient = 1.0);

    int n_qubits() const noexcept { return static_cast<int>(factors.size()); }
};

struct OneBodyTerm {
    int qubit;
    Pauli axis;
    double coefficient;

    bool operator==(const OneBodyTerm&) const = default;
};

/// coefficient * Z_first Z_second
struct TwoBodyTerm {
    int first;
    int second;
    double coefficient;

    bool operator==(const TwoBodyTerm&) const = default;
};

/// p0 |0><0| + p1 |1><1| acting on one qubit.
struct ProjectorTerm {
    int qubit;
    double p0;
    double p1;

    bool operator==(const ProjectorTerm&) const = default;
};

/// All-to-all Ising-type Hamiltonian with real coefficients.
///
/// One-body and two-body terms carry the "coefficients" that noise models
/// perturb (`coefficients()` lists one-body terms first, then two-body terms,
/// in insertion order). Projector terms are additive input operators and are
/// not part of that list.
class IsingHamiltonian {
public:
    explicit IsingHamiltonian(int n_qubits);

    IsingHamiltonian& add_one_body(int qubit, Pauli axis, double coefficient);
    /// Throws if the unordered pair is already present.
    IsingHamiltonian& add_two_body(int first, int second, double coefficient);
    IsingHamiltonian& add_projector(int qubit, double p0, double p1);

    int n_qubits() const noexcept { return n_qubits_; }
    std::span<const OneBodyTerm> one_body() const noexcept { return one_body_; }
    std::span<const TwoBodyTerm> two_body() const noexcept { return two_body_; }
    std::span<const ProjectorTerm> projectors() const noexcept { return projectors_; }

    std::size_t term_count() const noexcept { return one_body_.size() + two_body_.size(); }
    std::vector<double> coefficients() const;
    /// Same term structure with coefficients replaced; size must equal term_count().
    IsingHamiltonian with_coefficients(std::span<const double> coefficients) const;

    bool operator==(const IsingHamiltonian&) const = default;

private:
    int n_qubits_;
    std::vector<OneBodyTerm> one_body_;
    std::vector<TwoBodyTerm> two_body_;
    std::vector<ProjectorTerm> projectors_;
};

Statevector zero_state(int n_qubits);
Statevector basis_state(int n_qubits, std::uint64_t index);

Statevector apply_ry(const Statevector& state, int qubit, double angle);
/// Ry(angle) on `target` conditioned on `control` being |1>.
Statevector apply_controlled_ry(const Statevector& state, int control, int target, double angle);

double expectation(const Statevector& state, const PauliString& observable);
double expectation(const Statevector& state, std::span<const PauliString> observable);
double expectation(const Statevector& state, const IsingHamiltonian& h);

ComplexMatrix to_matrix(const PauliString& p);
ComplexMatrix to_matrix(const IsingHamiltonian& h);

/// Eigendecomposition of a fixed Hamiltonian, reused for repeated
/// exp(-i H t) applications.
class Propagator {
public:
    explicit Propagator(const IsingHamiltonian& h);

    int n_qubits() const noexcept { return n_qubits_; }
    ComplexMatrix unitary(double duration) const;
    Statevector evolve(const Statevector& state, double duration) const;
    /// Applies a unitary previously obtained from `unitary()`.
    static Statevector apply(const ComplexMatrix& u, const Statevector& state);

private:
    int n_qubits_;
    ComplexMatrix eigenvectors_;
    Eigen::VectorXd eigenvalues_;
};

/// exp(-i H duration) |state>, by exact diagonalisation.
Statevector evolve(const Statevector& state, const IsingHamiltonian& h, double duration);

}  // namespace qtcc
