#include "qtcc/quantum_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtcc {
namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

void check_qubit_index(int qubit, int n_qubits) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
}

void check_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument(std::string("unknown Pauli label '") + c + "'");
    }
}

// Adds coefficient * P (single-qubit Pauli on `qubit`) into the dense matrix.
void accumulate_one_body(ComplexMatrix& m, int qubit, Pauli axis, double coefficient) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index mask = Eigen::Index{1} << qubit;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const bool bit = (i & mask) != 0;
        switch (axis) {
            case Pauli::I: m(i, i) += coefficient; break;
            case Pauli::Z: m(i, i) += bit ? -coefficient : coefficient; break;
            case Pauli::X: m(i ^ mask, i) += coefficient; break;
            // Y|0> = i|1>, Y|1> = -i|0>
            case Pauli::Y: m(i ^ mask, i) += Complex(0.0, bit ? -coefficient : coefficient); break;
        }
    }
}

}  // namespace

Statevector::Statevector(int n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amplitudes_.size() != dim_of(n_qubits)) {
        throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                    " does not equal 2^" + std::to_string(n_qubits));
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("statevector is not normalised");
    }
}

PauliString PauliString::from_label(std::string_view label, double coefficient) {
    check_finite(coefficient, "Pauli coefficient");
    PauliString p;
    p.coefficient = coefficient;
    p.factors.reserve(label.size());
    for (char c : label) p.factors.push_back(pauli_from_char(c));
    return p;
}

IsingHamiltonian::IsingHamiltonian(int n_qubits) : n_qubits_(n_qubits) { check_qubit_count(n_qubits); }

IsingHamiltonian& IsingHamiltonian::add_one_body(int qubit, Pauli axis, double coefficient) {
    check_qubit_index(qubit, n_qubits_);
    check_finite(coefficient, "one-body coefficient");
    one_body_.push_back({qubit, axis, coefficient});
    return *this;
}

IsingHamiltonian& IsingHamiltonian::add_two_body(int first, int second, double coefficient) {
    check_qubit_index(first, n_qubits_);
    check_qubit_index(second, n_qubits_);
    check_finite(coefficient, "two-body coefficient");
    if (first == second) throw std::invalid_argument("two-body term needs two distinct qubits");
    if (first > second) std::swap(first, second);
    for (const auto& t : two_body_) {
        if (t.first == first && t.second == second) {
            throw std::invalid_argument("duplicate two-body pair (" + std::to_string(first) + ", " +
                                        std::to_string(second) + ")");
        }
    }
    two_body_.push_back({first, second, coefficient});
    return *this;
}

IsingHamiltonian& IsingHamiltonian::add_projector(int qubit, double p0, double p1) {
    check_qubit_index(qubit, n_qubits_);
    check_finite(p0, "projector weight");
    check_finite(p1, "projector weight");
    projectors_.push_back({qubit, p0, p1});
    return *this;
}

std::vector<double> IsingHamiltonian::coefficients() const {
    std::vector<double> out;
    out.reserve(term_count());
    for (const auto& t : one_body_) out.push_back(t.coefficient);
    for (const auto& t : two_body_) out.push_back(t.coefficient);
    return out;
}

IsingHamiltonian IsingHamiltonian::with_coefficients(std::span<const double> coefficients) const {
    if (coefficients.size() != term_count()) {
        throw std::invalid_argument("expected " + std::to_string(term_count()) + " coefficients, got " +
                                    std::to_string(coefficients.size()));
    }
    IsingHamiltonian out = *this;
    std::size_t i = 0;
    for (auto& t : out.one_body_) {
        check_finite(coefficients[i], "one-body coefficient");
        t.coefficient = coefficients[i++];
    }
    for (auto& t : out.two_body_) {
        check_finite(coefficients[i], "two-body coefficient");
        t.coefficient = coefficients[i++];
    }
    return out;
}

Statevector zero_state(int n_qubits) { return basis_state(n_qubits, 0); }

Statevector basis_state(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    const Eigen::Index dim = dim_of(n_qubits);
    if (index >= static_cast<std::uint64_t>(dim)) throw std::out_of_range("basis index out of range");
    ComplexVector amps = ComplexVector::Zero(dim);
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return Statevector(n_qubits, std::move(amps));
}

Statevector apply_ry(const Statevector& state, int qubit, double angle) {
    check_qubit_index(qubit, state.n_qubits());
    check_finite(angle, "rotation angle");
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    ComplexVector out = state.amplitudes();
    const Eigen::Index mask = Eigen::Index{1} << qubit;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (i & mask) continue;
        const Complex a0 = out[i];
        const Complex a1 = out[i | mask];
        out[i] = c * a0 - s * a1;
        out[i | mask] = s * a0 + c * a1;
    }
    return Statevector(Statevector::Unchecked{}, state.n_qubits(), std::move(out));
}

Statevector apply_controlled_ry(const Statevector& state, int control, int target, double angle) {
    check_qubit_index(control, state.n_qubits());
    check_qubit_index(target, state.n_qubits());
    check_finite(angle, "rotation angle");
    if (control == target) throw std::invalid_argument("control and target must differ");
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    ComplexVector out = state.amplitudes();
    const Eigen::Index cmask = Eigen::Index{1} << control;
    const Eigen::Index tmask = Eigen::Index{1} << target;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (!(i & cmask) || (i & tmask)) continue;
        const Complex a0 = out[i];
        const Complex a1 = out[i | tmask];
        out[i] = c * a0 - s * a1;
        out[i | tmask] = s * a0 + c * a1;
    }
    return Statevector(Statevector::Unchecked{}, state.n_qubits(), std::move(out));
}

double expectation(const Statevector& state, const PauliString& observable) {
    if (observable.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("observable acts on " + std::to_string(observable.n_qubits()) +
                                    " qubits, state has " + std::to_string(state.n_qubits()));
    }
    check_finite(observable.coefficient, "Pauli coefficient");
    std::uint64_t flip = 0;
    std::uint64_t phase_mask = 0;  // qubits contributing (-1)^bit
    int y_count = 0;
    for (int q = 0; q < observable.n_qubits(); ++q) {
        const auto bit = std::uint64_t{1} << q;
        switch (observable.factors[static_cast<std::size_t>(q)]) {
            case Pauli::I: break;
            case Pauli::X: flip |= bit; break;
            case Pauli::Y: flip |= bit; phase_mask |= bit; ++y_count; break;
            case Pauli::Z: phase_mask |= bit; break;
        }
    }
    // P|i> = i^{y_count} (-1)^{popcount(i & phase_mask)} |i ^ flip>
    static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex global = kIPowers[y_count % 4];
    const auto& a = state.amplitudes();
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        const double sign = (std::popcount(ui & phase_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(a[static_cast<Eigen::Index>(ui ^ flip)]) * sign * a[i];
    }
    acc *= global;
    if (std::abs(acc.imag()) > 1e-12) {
        throw std::logic_error("Pauli expectation has non-negligible imaginary part");
    }
    return observable.coefficient * acc.real();
}

double expectation(const Statevector& state, std::span<const PauliString> observable) {
    double total = 0.0;
    for (const auto& p : observable) total += expectation(state, p);
    return total;
}

double expectation(const Statevector& state, const IsingHamiltonian& h) {
    if (h.n_qubits() != state.n_qubits()) throw std::invalid_argument("Hamiltonian/state qubit mismatch");
    const ComplexVector& a = state.amplitudes();
    const Complex value = a.dot(to_matrix(h) * a);  // dot conjugates the first argument
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
        throw std::logic_error("Hamiltonian expectation has non-negligible imaginary part");
    }
    return value.real();
}

ComplexMatrix to_matrix(const PauliString& p) {
    check_qubit_count(p.n_qubits());
    const Eigen::Index dim = dim_of(p.n_qubits());
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim) * p.coefficient;
    for (int q = 0; q < p.n_qubits(); ++q) {
        const Pauli axis = p.factors[static_cast<std::size_t>(q)];
        if (axis == Pauli::I) continue;
        ComplexMatrix single = ComplexMatrix::Zero(dim, dim);
        accumulate_one_body(single, q, axis, 1.0);
        m = single * m;
    }
    return m;
}

ComplexMatrix to_matrix(const IsingHamiltonian& h) {
    const Eigen::Index dim = dim_of(h.n_qubits());
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : h.one_body()) accumulate_one_body(m, t.qubit, t.axis, t.coefficient);
    for (const auto& t : h.two_body()) {
        const Eigen::Index mask = (Eigen::Index{1} << t.first) | (Eigen::Index{1} << t.second);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const bool odd = std::popcount(static_cast<std::uint64_t>(i & mask)) & 1;
            m(i, i) += odd ? -t.coefficient : t.coefficient;
        }
    }
    for (const auto& t : h.projectors()) {
        const Eigen::Index mask = Eigen::Index{1} << t.qubit;
        for (Eigen::Index i = 0; i < dim; ++i) m(i, i) += (i & mask) ? t.p1 : t.p0;
    }
    return m;
}

Propagator::Propagator(const IsingHamiltonian& h) : n_qubits_(h.n_qubits()) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(to_matrix(h));
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hamiltonian diagonalisation failed");
    eigenvectors_ = solver.eigenvectors();
    eigenvalues_ = solver.eigenvalues();
}

ComplexMatrix Propagator::unitary(double duration) const {
    check_finite(duration, "evolution time");
    ComplexVector phases(eigenvalues_.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::polar(1.0, -eigenvalues_[i] * duration);
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Statevector Propagator::evolve(const Statevector& state, double duration) const {
    check_finite(duration, "evolution time");
    if (state.n_qubits() != n_qubits_) throw std::invalid_argument("Hamiltonian/state qubit mismatch");
    ComplexVector coords = eigenvectors_.adjoint() * state.amplitudes();
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        coords[i] *= std::polar(1.0, -eigenvalues_[i] * duration);
    }
    return Statevector(Statevector::Unchecked{}, n_qubits_, eigenvectors_ * coords);
}

Statevector Propagator::apply(const ComplexMatrix& u, const Statevector& state) {
    if (u.rows() != static_cast<Eigen::Index>(state.dimension()) || u.cols() != u.rows()) {
        throw std::invalid_argument("unitary/state dimension mismatch");
    }
    return Statevector(Statevector::Unchecked{}, state.n_qubits(), u * state.amplitudes());
}

Statevector evolve(const Statevector& state, const IsingHamiltonian& h, double duration) {
    check_finite(duration, "evolution time");
    if (state.n_qubits() != h.n_qubits()) throw std::invalid_argument("Hamiltonian/state qubit mismatch");
    if (duration == 0.0) return state;
    return Propagator(h).evolve(state, duration);
}

}  // namespace qtcc
