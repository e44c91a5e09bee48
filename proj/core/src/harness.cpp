#include "qtcc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtcc {

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<SummaryRow> summarize(const std::vector<AttemptRecord>& attempts, bool pooled_group) {
    std::vector<std::pair<std::string, Mode>> keys;
    for (const auto& a : attempts) {
        const std::pair<std::string, Mode> key{a.group, a.mode};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    if (pooled_group) {
        std::vector<Mode> modes;
        for (const auto& [g, m] : keys) {
            if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
        }
        for (Mode m : modes) keys.emplace_back("all", m);
    }

    std::vector<SummaryRow> rows;
    for (const auto& [group, mode] : keys) {
        std::vector<double> values;
        for (const auto& a : attempts) {
            if (a.mode == mode && (group == "all" && pooled_group ? true : a.group == group)) values.push_back(a.metric);
        }
        // Sum in record order so any reader recomputing the mean gets the same bits.
        double sum = 0.0;
        for (double v : values) sum += v;
        rows.push_back({group, mode, "average", sum / static_cast<double>(values.size())});
        rows.push_back({group, mode, "maximum", *std::max_element(values.begin(), values.end())});
        rows.push_back({group, mode, "minimum", *std::min_element(values.begin(), values.end())});
        rows.push_back({group, mode, "median", median(values)});
    }
    return rows;
}

AttemptSeeds attempt_seeds(std::uint64_t master_seed, int attempt) {
    const auto a = static_cast<std::uint64_t>(attempt);
    return {derive_seed(master_seed, "train_points", a), derive_seed(master_seed, "test_points", a),
            derive_seed(master_seed, "init_params", a),  derive_seed(master_seed, "cmaes", a),
            derive_seed(master_seed, "train_noise", a),  derive_seed(master_seed, "test_noise", a)};
}

FitAttempt run_fit_attempt(const ExperimentConfig& config, int attempt) {
    const qml::ModelSpec spec = config.model_spec();
    const qml::Model model(spec);
    const AttemptSeeds seeds = attempt_seeds(config.seed, attempt);
    const int repeats = config.mode == Mode::qtcc ? config.noise_repeats : 1;

    FitAttempt out;
    {
        RngStream rng(seeds.train_points);
        out.train = qml::sample_points(static_cast<std::size_t>(config.n_train), config.domain_lo, config.domain_hi, rng);
    }
    {
        RngStream rng(seeds.test_points);
        out.test = qml::sample_points(static_cast<std::size_t>(config.n_test), config.domain_lo, config.domain_hi, rng);
    }
    RngStream init_rng(seeds.init_params);
    const std::vector<double> x0 = spec.initial_parameters(init_rng);

    std::uint64_t noise_draws = 0;
    std::size_t clamps = 0;
    const Objective objective = [&](const Eigen::VectorXd& params, const EvalContext& ctx) {
        // One private noise stream per (generation, member) keeps results
        // independent of evaluation order.
        RngStream rng(derive_seed(derive_seed(seeds.train_noise, static_cast<std::uint64_t>(ctx.generation)),
                                  static_cast<std::uint64_t>(ctx.member)));
        const double loss = qml::training_loss(model, std::span<const double>(params.data(), static_cast<std::size_t>(params.size())),
                                               out.train, config.mode, repeats, rng, &clamps);
        noise_draws += rng.draws();
        return loss;
    };
    out.optimization = optimize(objective, Eigen::Map<const Eigen::VectorXd>(x0.data(), static_cast<Eigen::Index>(x0.size())),
                                config.sigma0, config.generations, seeds.cmaes);

    const Eigen::VectorXd& best = out.optimization.best_params;
    const std::span<const double> best_span(best.data(), static_cast<std::size_t>(best.size()));
    RngStream test_rng(seeds.test_noise);
    out.test_predictions = qml::predict_points(model, best_span, out.test, config.mode, repeats, test_rng, &clamps);
    noise_draws += test_rng.draws();

    double metric = 0.0;
    for (std::size_t i = 0; i < out.test.size(); ++i) {
        metric += std::abs(out.test_predictions[i] - qml::target_function(out.test[i].u));
    }
    out.record = AttemptRecord{std::string(qml::to_string(spec.kind)), config.mode, attempt, metric,
                               out.optimization.best_fitness, clamps, noise_draws};
    return out;
}

RunReport run_case(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;

    if (config.experiment == ExperimentKind::qrc_echo) {
        report.echo = qrc::run_echo_suite(config.echo_config());
        for (const auto& r : report.echo.records) {
            report.attempts.push_back({r.wave, r.mode, r.attempt, r.loss, r.train_loss, 0, r.noise_draws});
        }
    } else {
        const auto names = config.model_spec().parameter_names();
        for (int a = 0; a < config.attempts; ++a) {
            FitAttempt fit;
            try {
                fit = run_fit_attempt(config, a);
            } catch (const std::exception& e) {
                throw std::runtime_error("attempt " + std::to_string(a) + ": " + e.what());
            }
            report.attempts.push_back(fit.record);
            for (const auto& g : fit.optimization.history) report.traces.push_back({a, g});
            for (std::size_t i = 0; i < fit.test.size(); ++i) {
                report.predictions.push_back({a, static_cast<int>(i), fit.test[i].u, fit.test_predictions[i],
                                              qml::target_function(fit.test[i].u)});
            }
            const auto& best = fit.optimization.best_params;
            report.parameters.push_back({a, names, std::vector<double>(best.data(), best.data() + best.size())});
        }
    }
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace qtcc
