#pragma once

// Variational models on the Floquet substrate.
//
// QNN: the trainables are the H1 coefficients of each layer. The input is
// prepared by parabolic encoding and also added to the one-body H1
// Z coefficients of the first layer. Each layer is one Floquet period
// (drive half-period, then H1 half-period).
//
// VQKAN: same layers, but after each layer the Z-features of the register
// feed B-spline activations whose outputs are the angles of an entangling
// block (Ry on the diagonal, controlled-Ry for ordered pairs j != k).
//
// Both read out a * <Z0 Z1 + Z2 Z3> + b.

#include "qtcc/floquet.hpp"
#include "qtcc/quantum_core.hpp"
#include "qtcc/rng.hpp"
#include "qtcc/spline.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtcc::qml {

inline constexpr int kFeatureQubits = 4;

using Point = std::array<double, kFeatureQubits>;

/// Model input u in [0, 1]^4 with the mapped coordinates x_i = 2 u_i - 1.
struct EncodedInput {
    Point u{};

    /// Throws unless every u_i lies in [0, 1].
    static EncodedInput from_u(const Point& u);
    Point mapped() const noexcept;
};

/// prod_j Ry_j(2 acos(sqrt(u_j))) |0...0>
Statevector parabolic_encode(std::span<const double> u);

/// (0.5 (<Z_i> + 1))_i on a four-qubit register.
Point feature_readout(const Statevector& state);

/// exp(sin(x0^2 + x1^2) + sin(x2^2 + x3^2)) at x = 2u - 1.
double target_function(const Point& u);

/// x / (exp(-x) + 1)
double fermi_dirac(double x);

/// sum_i acos(clamp(E_f(x_i) + sum_l c_l B_l(x_i), -1, 1)). Each clamped
/// argument increments `clamp_events` when given.
double vqkan_angle(std::span<const double> x, const BSplineBasis& basis, std::span<const double> coefficients,
                   std::size_t* clamp_events = nullptr);

enum class ModelKind { qnn, vqkan };

std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view text);

struct ModelSpec {
    ModelKind kind = ModelKind::qnn;
    int n_layers = 2;
    double half_period = 1.0;
    int frames_per_half_period = 10;
    double d = kDefaultDetuning;
    bool resample_per_frame = false;
    double noise_scale = 0.1;
    double noise_sigma = kNoiseSigma;
    int spline_grid = 5;
    int spline_degree = 3;
    double spline_lo = 0.0;
    double spline_hi = 0.25;

    void validate() const;

    /// H1 coefficients per layer (4 one-body Z, 4 one-body X, 6 ZZ).
    std::size_t h1_terms() const noexcept;
    std::size_t spline_size() const noexcept { return static_cast<std::size_t>(spline_grid + spline_degree); }
    /// Activations per layer: one for every ordered qubit pair (j, k), j == k included.
    static constexpr std::size_t activations_per_layer() noexcept { return kFeatureQubits * kFeatureQubits; }

    /// Layout: [H1 layer 0 .. H1 layer n-1][splines (vqkan only), layer-major,
    /// then j, then k][a, b].
    std::size_t parameter_count() const noexcept;
    std::size_t h1_offset(int layer) const noexcept;
    std::size_t spline_offset(int layer, int j, int k) const noexcept;
    std::size_t readout_offset() const noexcept;

    /// H1 coefficients uniform in [-0.1, 0.1], spline coefficients 0, a = b = 1.
    std::vector<double> initial_parameters(RngStream& rng) const;
    std::vector<std::string> parameter_names() const;
};

/// Immutable compiled form of a ModelSpec (schedule, basis, observable).
class Model {
public:
    explicit Model(ModelSpec spec);

    const ModelSpec& spec() const noexcept { return spec_; }

    /// a * <Z0 Z1 + Z2 Z3> + b for one input. In noiseless mode `rng` is not drawn from.
    double forward(std::span<const double> params, const EncodedInput& input, Mode mode, RngStream& rng,
                   std::size_t* clamp_events = nullptr) const;

    /// <Z0 Z1 + Z2 Z3> of the final state, before the affine readout.
    double observable(std::span<const double> params, const EncodedInput& input, Mode mode, RngStream& rng,
                      std::size_t* clamp_events = nullptr) const;

private:
    Statevector run_layers(std::span<const double> params, const EncodedInput& input, Mode mode, RngStream& rng,
                           std::size_t* clamp_events) const;

    ModelSpec spec_;
    FloquetSchedule schedule_;
    BSplineBasis basis_;
    std::vector<PauliString> observable_;
};

double model_forward(const Model& model, std::span<const double> params, const EncodedInput& input, Mode mode,
                     RngStream& rng);

/// sum over samples of the mean over `repeats` of (prediction - target)^2.
double training_loss(const Model& model, std::span<const double> params, std::span<const EncodedInput> samples,
                     Mode mode, int repeats, RngStream& rng, std::size_t* clamp_events = nullptr);

/// Per-point predictions, each averaged over `repeats` forward passes.
std::vector<double> predict_points(const Model& model, std::span<const double> params,
                                   std::span<const EncodedInput> points, Mode mode, int repeats, RngStream& rng,
                                   std::size_t* clamp_events = nullptr);

/// sum over points of |mean prediction - target|.
double test_metric(const Model& model, std::span<const double> params, std::span<const EncodedInput> points,
                   Mode mode, int repeats, RngStream& rng);

/// Points with every u_i uniform in [lo, hi].
std::vector<EncodedInput> sample_points(std::size_t count, double lo, double hi, RngStream& rng);

}  // namespace qtcc::qml
