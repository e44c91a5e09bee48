#include "qtcc/qml.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtcc::qml {
namespace {

void check_unit_interval(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("input component outside [0, 1]");
}

}  // namespace

EncodedInput EncodedInput::from_u(const Point& u) {
    for (double v : u) check_unit_interval(v);
    return EncodedInput{u};
}

Point EncodedInput::mapped() const noexcept {
    Point x{};
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 2.0 * u[i] - 1.0;
    return x;
}

Statevector parabolic_encode(std::span<const double> u) {
    Statevector psi = zero_state(static_cast<int>(u.size()));
    for (std::size_t j = 0; j < u.size(); ++j) {
        check_unit_interval(u[j]);
        psi = apply_ry(psi, static_cast<int>(j), 2.0 * std::acos(std::sqrt(u[j])));
    }
    return psi;
}

Point feature_readout(const Statevector& state) {
    if (state.n_qubits() != kFeatureQubits) {
        throw std::invalid_argument("feature readout expects a " + std::to_string(kFeatureQubits) + "-qubit register");
    }
    static const std::array<PauliString, kFeatureQubits> z = {
        PauliString::from_label("ZIII"), PauliString::from_label("IZII"),
        PauliString::from_label("IIZI"), PauliString::from_label("IIIZ")};
    Point out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (expectation(state, z[i]) + 1.0);
    return out;
}

double target_function(const Point& u) {
    const Point x = EncodedInput::from_u(u).mapped();
    return std::exp(std::sin(x[0] * x[0] + x[1] * x[1]) + std::sin(x[2] * x[2] + x[3] * x[3]));
}

double fermi_dirac(double x) { return x / (std::exp(-x) + 1.0); }

double vqkan_angle(std::span<const double> x, const BSplineBasis& basis, std::span<const double> coefficients,
                   std::size_t* clamp_events) {
    double angle = 0.0;
    for (double xi : x) {
        const double arg = fermi_dirac(xi) + basis.combine(xi, coefficients);
        const double clamped = std::clamp(arg, -1.0, 1.0);
        if (clamp_events && clamped != arg) ++*clamp_events;
        angle += std::acos(clamped);
    }
    return angle;
}

std::string_view to_string(ModelKind kind) noexcept { return kind == ModelKind::vqkan ? "vqkan" : "qnn"; }

ModelKind parse_model_kind(std::string_view text) {
    if (text == "qnn") return ModelKind::qnn;
    if (text == "vqkan") return ModelKind::vqkan;
    throw std::invalid_argument("unknown model kind '" + std::string(text) + "'");
}

void ModelSpec::validate() const {
    if (n_layers < 1) throw std::invalid_argument("n_layers must be at least 1");
    if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) throw std::invalid_argument("noise_scale must be >= 0");
    FloquetSchedule{IsingHamiltonian(kFeatureQubits), half_period, frames_per_half_period, d, resample_per_frame}
        .validate();
    BSplineBasis(spline_lo, spline_hi, spline_grid, spline_degree);
}

std::size_t ModelSpec::h1_terms() const noexcept {
    return 2 * kFeatureQubits + kFeatureQubits * (kFeatureQubits - 1) / 2;
}

std::size_t ModelSpec::parameter_count() const noexcept { return readout_offset() + 2; }

std::size_t ModelSpec::h1_offset(int layer) const noexcept { return static_cast<std::size_t>(layer) * h1_terms(); }

std::size_t ModelSpec::spline_offset(int layer, int j, int k) const noexcept {
    const std::size_t activation =
        static_cast<std::size_t>(layer) * activations_per_layer() + static_cast<std::size_t>(j * kFeatureQubits + k);
    return h1_offset(n_layers) + activation * spline_size();
}

std::size_t ModelSpec::readout_offset() const noexcept {
    if (kind == ModelKind::qnn) return h1_offset(n_layers);
    return spline_offset(n_layers, 0, 0);
}

std::vector<double> ModelSpec::initial_parameters(RngStream& rng) const {
    std::vector<double> p(parameter_count(), 0.0);
    for (std::size_t i = 0; i < h1_offset(n_layers); ++i) p[i] = rng.uniform(-0.1, 0.1);
    p[readout_offset()] = 1.0;
    p[readout_offset() + 1] = 1.0;
    return p;
}

std::vector<std::string> ModelSpec::parameter_names() const {
    std::vector<std::string> names;
    names.reserve(parameter_count());
    const auto tmpl = all_to_all_ising_template(kFeatureQubits);
    for (int n = 0; n < n_layers; ++n) {
        const std::string prefix = "layer" + std::to_string(n) + ".";
        for (const auto& t : tmpl.one_body()) {
            const char axis = t.axis == Pauli::X ? 'x' : 'z';
            names.push_back(prefix + "h_" + axis + std::to_string(t.qubit));
        }
        for (const auto& t : tmpl.two_body()) {
            names.push_back(prefix + "j_zz" + std::to_string(t.first) + std::to_string(t.second));
        }
    }
    if (kind == ModelKind::vqkan) {
        for (int n = 0; n < n_layers; ++n) {
            for (int j = 0; j < kFeatureQubits; ++j) {
                for (int k = 0; k < kFeatureQubits; ++k) {
                    for (std::size_t l = 0; l < spline_size(); ++l) {
                        names.push_back("layer" + std::to_string(n) + ".phi" + std::to_string(j) + std::to_string(k) +
                                        ".c" + std::to_string(l));
                    }
                }
            }
        }
    }
    names.emplace_back("readout.a");
    names.emplace_back("readout.b");
    return names;
}

Model::Model(ModelSpec spec)
    : spec_(spec),
      schedule_{all_to_all_ising_template(kFeatureQubits), spec.half_period, spec.frames_per_half_period, spec.d,
                spec.resample_per_frame},
      basis_(spec.spline_lo, spec.spline_hi, spec.spline_grid, spec.spline_degree),
      observable_{PauliString::from_label("ZZII"), PauliString::from_label("IIZZ")} {
    spec_.validate();
}

Statevector Model::run_layers(std::span<const double> params, const EncodedInput& input, Mode mode,
                              RngStream& rng, std::size_t* clamp_events) const {
    if (params.size() != spec_.parameter_count()) {
        throw std::invalid_argument("model expects " + std::to_string(spec_.parameter_count()) + " parameters, got " +
                                    std::to_string(params.size()));
    }
    Statevector psi = parabolic_encode(input.u);
    const std::size_t terms = spec_.h1_terms();
    for (int n = 0; n < spec_.n_layers; ++n) {
        const auto layer = params.subspan(spec_.h1_offset(n), terms);
        std::vector<double> coeffs(layer.begin(), layer.end());
        if (n == 0) {
            // one-body Z terms come first in the template
            for (int i = 0; i < kFeatureQubits; ++i) coeffs[static_cast<std::size_t>(i)] += input.u[static_cast<std::size_t>(i)];
        }
        const NoiseSpec noise = NoiseSpec::for_mode(mode, std::move(coeffs), spec_.noise_scale, spec_.noise_sigma);
        psi = floquet_propagate(psi, schedule_, noise, 2, rng);

        if (spec_.kind == ModelKind::vqkan) {
            const Point x = feature_readout(psi);
            for (int j = 0; j < kFeatureQubits; ++j) {
                for (int k = 0; k < kFeatureQubits; ++k) {
                    const auto c = params.subspan(spec_.spline_offset(n, j, k), spec_.spline_size());
                    const double phi = vqkan_angle(x, basis_, c, clamp_events);
                    psi = j == k ? apply_ry(psi, j, phi) : apply_controlled_ry(psi, j, k, phi);
                }
            }
        }
    }
    return psi;
}

double Model::observable(std::span<const double> params, const EncodedInput& input, Mode mode, RngStream& rng,
                         std::size_t* clamp_events) const {
    return expectation(run_layers(params, input, mode, rng, clamp_events), observable_);
}

double Model::forward(std::span<const double> params, const EncodedInput& input, Mode mode, RngStream& rng,
                      std::size_t* clamp_events) const {
    const double a = params[spec_.readout_offset()];
    const double b = params[spec_.readout_offset() + 1];
    return a * observable(params, input, mode, rng, clamp_events) + b;
}

double model_forward(const Model& model, std::span<const double> params, const EncodedInput& input, Mode mode,
                     RngStream& rng) {
    return model.forward(params, input, mode, rng);
}

double training_loss(const Model& model, std::span<const double> params, std::span<const EncodedInput> samples,
                     Mode mode, int repeats, RngStream& rng, std::size_t* clamp_events) {
    if (samples.empty()) throw std::invalid_argument("training_loss needs at least one sample");
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    double loss = 0.0;
    for (const auto& s : samples) {
        const double target = target_function(s.u);
        double acc = 0.0;
        for (int r = 0; r < repeats; ++r) {
            const double e = model.forward(params, s, mode, rng, clamp_events) - target;
            acc += e * e;
        }
        loss += acc / repeats;
    }
    return loss;
}

std::vector<double> predict_points(const Model& model, std::span<const double> params,
                                   std::span<const EncodedInput> points, Mode mode, int repeats, RngStream& rng,
                                   std::size_t* clamp_events) {
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        double acc = 0.0;
        for (int r = 0; r < repeats; ++r) acc += model.forward(params, p, mode, rng, clamp_events);
        out.push_back(acc / repeats);
    }
    return out;
}

double test_metric(const Model& model, std::span<const double> params, std::span<const EncodedInput> points,
                   Mode mode, int repeats, RngStream& rng) {
    const auto pred = predict_points(model, params, points, mode, repeats, rng);
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += std::abs(pred[i] - target_function(points[i].u));
    return total;
}

std::vector<EncodedInput> sample_points(std::size_t count, double lo, double hi, RngStream& rng) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw std::invalid_argument("sampling range must lie in [0, 1]");
    std::vector<EncodedInput> out(count);
    for (auto& p : out) {
        for (double& v : p.u) v = rng.uniform(lo, hi);
    }
    return out;
}

}  // namespace qtcc::qml
