#include "qtcc/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace qtcc {
namespace {

using json = nlohmann::ordered_json;

struct Field {
    const char* key;
    std::function<void(ExperimentConfig&, const json&)> read;
    std::function<json(const ExperimentConfig&)> write;
};

template <typename T>
T expect(const json& value, const char* key) {
    if constexpr (std::is_same_v<T, bool>) {
        if (!value.is_boolean()) throw ConfigError(key, "expected true or false");
        return value.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!value.is_string()) throw ConfigError(key, "expected a string");
        return value.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!value.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
        return value.get<std::uint64_t>();
    } else if constexpr (std::is_integral_v<T>) {
        if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
        const auto v = value.get<std::int64_t>();
        if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max()) {
            throw ConfigError(key, "integer out of range");
        }
        return static_cast<T>(v);
    } else {
        if (!value.is_number()) throw ConfigError(key, "expected a number");
        return value.get<double>();
    }
}

template <typename T>
Field member(const char* key, T ExperimentConfig::*ptr) {
    return {key, [key, ptr](ExperimentConfig& c, const json& v) { c.*ptr = expect<T>(v, key); },
            [ptr](const ExperimentConfig& c) { return json(c.*ptr); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        {"experiment",
         [](ExperimentConfig& c, const json& v) {
             try {
                 c.experiment = parse_experiment_kind(expect<std::string>(v, "experiment"));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError("experiment", e.what());
             }
         },
         [](const ExperimentConfig& c) { return json(std::string(to_string(c.experiment))); }},
        {"mode",
         [](ExperimentConfig& c, const json& v) {
             try {
                 c.mode = parse_mode(expect<std::string>(v, "mode"));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError("mode", e.what());
             }
         },
         [](const ExperimentConfig& c) { return json(std::string(to_string(c.mode))); }},
        member("seed", &ExperimentConfig::seed),
        member("attempts", &ExperimentConfig::attempts),
        member("generations", &ExperimentConfig::generations),
        member("half_period", &ExperimentConfig::half_period),
        member("frames_per_half_period", &ExperimentConfig::frames_per_half_period),
        member("d", &ExperimentConfig::d),
        member("noise_scale", &ExperimentConfig::noise_scale),
        member("noise_sigma", &ExperimentConfig::noise_sigma),
        member("resample_per_frame", &ExperimentConfig::resample_per_frame),
        member("reservoir_qubits", &ExperimentConfig::reservoir_qubits),
        member("echo_delay", &ExperimentConfig::echo_delay),
        member("n_steps", &ExperimentConfig::n_steps),
        member("period_steps", &ExperimentConfig::period_steps),
        member("train_fraction", &ExperimentConfig::train_fraction),
        member("rcond", &ExperimentConfig::rcond),
        member("n_layers", &ExperimentConfig::n_layers),
        member("n_train", &ExperimentConfig::n_train),
        member("n_test", &ExperimentConfig::n_test),
        member("domain_lo", &ExperimentConfig::domain_lo),
        member("domain_hi", &ExperimentConfig::domain_hi),
        member("spline_grid", &ExperimentConfig::spline_grid),
        member("spline_degree", &ExperimentConfig::spline_degree),
        member("noise_repeats", &ExperimentConfig::noise_repeats),
        member("sigma0", &ExperimentConfig::sigma0),
    };
    return table;
}

void require(bool ok, const char* field, const char* message) {
    if (!ok) throw ConfigError(field, message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::qrc_echo: return "qrc_echo";
        case ExperimentKind::fit_qnn: return "fit_qnn";
        case ExperimentKind::fit_vqkan: return "fit_vqkan";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (auto k : {ExperimentKind::qrc_echo, ExperimentKind::fit_qnn, ExperimentKind::fit_vqkan}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown experiment '" + std::string(text) +
                                "' (expected qrc_echo, fit_qnn or fit_vqkan)");
}

void ExperimentConfig::validate() const {
    require(attempts >= 1, "attempts", "must be at least 1");
    require(generations >= 1, "generations", "must be at least 1");
    require(finite_positive(half_period), "half_period", "must be positive");
    require(frames_per_half_period >= 1, "frames_per_half_period", "must be at least 1");
    require(d >= 0.0 && d < 1.0, "d", "must lie in [0, 1)");
    require(std::isfinite(noise_scale) && noise_scale >= 0.0, "noise_scale", "must be non-negative");
    require(finite_positive(noise_sigma), "noise_sigma", "must be positive");
    require(reservoir_qubits >= 1 && reservoir_qubits <= kMaxQubits, "reservoir_qubits", "must lie in [1, 12]");
    require(echo_delay >= 0, "echo_delay", "must be non-negative");
    require(n_steps >= 2, "n_steps", "must be at least 2");
    require(period_steps >= 2, "period_steps", "must be at least 2");
    require(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction", "must lie in (0, 1)");
    const int train = static_cast<int>(std::floor(train_fraction * n_steps));
    require(train >= 1 && train < n_steps, "train_fraction", "leaves an empty train or test segment");
    require(finite_positive(rcond), "rcond", "must be positive");
    require(n_layers >= 1, "n_layers", "must be at least 1");
    require(n_train >= 1, "n_train", "must be at least 1");
    require(n_test >= 1, "n_test", "must be at least 1");
    require(domain_lo >= 0.0 && domain_lo <= 1.0, "domain_lo", "must lie in [0, 1]");
    require(domain_hi >= domain_lo && domain_hi <= 1.0, "domain_hi", "must lie in [domain_lo, 1]");
    require(domain_hi > domain_lo, "domain_hi", "must exceed domain_lo (spline grid spans the domain)");
    require(spline_grid >= 1, "spline_grid", "must be at least 1");
    require(spline_degree >= 0, "spline_degree", "must be non-negative");
    require(noise_repeats >= 1, "noise_repeats", "must be at least 1");
    require(finite_positive(sigma0), "sigma0", "must be positive");
}

qrc::EchoConfig ExperimentConfig::echo_config() const {
    qrc::EchoConfig e;
    e.master_seed = seed;
    e.attempts = attempts;
    e.n_qubits = reservoir_qubits;
    e.half_period = half_period;
    e.frames_per_half_period = frames_per_half_period;
    e.d = d;
    e.resample_per_frame = resample_per_frame;
    e.noise_scale = noise_scale;
    e.noise_sigma = noise_sigma;
    e.echo_delay = echo_delay;
    e.n_steps = n_steps;
    e.period_steps = period_steps;
    e.train_fraction = train_fraction;
    e.rcond = rcond;
    return e;
}

qml::ModelSpec ExperimentConfig::model_spec() const {
    qml::ModelSpec s;
    s.kind = experiment == ExperimentKind::fit_vqkan ? qml::ModelKind::vqkan : qml::ModelKind::qnn;
    s.n_layers = n_layers;
    s.half_period = half_period;
    s.frames_per_half_period = frames_per_half_period;
    s.d = d;
    s.resample_per_frame = resample_per_frame;
    s.noise_scale = noise_scale;
    s.noise_sigma = noise_sigma;
    s.spline_grid = spline_grid;
    s.spline_degree = spline_degree;
    s.spline_lo = domain_lo;
    s.spline_hi = domain_hi;
    return s;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        config.validate();
        return config;
    }
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        // e.what() carries "at line L, column C"
        throw ConfigError("", std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "config document must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
        if (it == table.end()) throw ConfigError(key, "unknown config key");
        it->read(config, value);
    }
    config.validate();
    return config;
}

std::string emit_config(const ExperimentConfig& config) {
    json doc = json::object();
    for (const auto& f : fields()) doc[f.key] = f.write(config);
    return doc.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace qtcc
