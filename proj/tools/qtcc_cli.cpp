// qtcc: run, validate and re-aggregate time-crystal computing experiments.
//
//   qtcc run --config cfg.json --out results/ [--seed N] [--mode qtcc] [--attempts N]
//   qtcc validate --config cfg.json
//   qtcc report --out results/

#include "qtcc/config.hpp"
#include "qtcc/harness.hpp"
#include "qtcc/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> attempts;
};

qtcc::ExperimentConfig resolve(const std::string& config_path, const Overrides& o) {
    qtcc::ExperimentConfig config = config_path.empty() ? qtcc::parse_config("") : qtcc::load_config(config_path);
    if (o.seed) config.seed = *o.seed;
    if (o.mode) config.mode = qtcc::parse_mode(*o.mode);
    if (o.attempts) config.attempts = *o.attempts;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet time-crystal computing experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    Overrides overrides;

    auto* run = app.add_subcommand("run", "Run the configured experiment and write its report");
    run->add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--seed", overrides.seed, "Override the master seed");
    run->add_option("--mode", overrides.mode, "Override the mode")->check(CLI::IsMember({"noiseless", "qtcc"}));
    run->add_option("--attempts", overrides.attempts, "Override the attempt count")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "Parse and validate a config, printing the resolved form");
    validate->add_option("--config", config_path, "JSON config file")->required();
    validate->add_option("--seed", overrides.seed, "Override the master seed");
    validate->add_option("--mode", overrides.mode, "Override the mode")->check(CLI::IsMember({"noiseless", "qtcc"}));
    validate->add_option("--attempts", overrides.attempts, "Override the attempt count")->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "Recompute summary.csv from an existing attempts.csv");
    report->add_option("--out", out_dir, "Report directory produced by 'run'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto config = resolve(config_path, overrides);
            const auto result = qtcc::run_case(config);
            qtcc::emit_report(result, out_dir);
            std::cout << qtcc::summary_csv(
                qtcc::summarize(result.attempts, config.experiment == qtcc::ExperimentKind::qrc_echo));
        } else if (*validate) {
            std::cout << qtcc::emit_config(resolve(config_path, overrides));
        } else if (*report) {
            std::cout << qtcc::summary_csv(qtcc::reaggregate(out_dir));
        }
    } catch (const std::exception& e) {
        std::cerr << "qtcc: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
