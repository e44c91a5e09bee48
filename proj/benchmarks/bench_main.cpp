#include "qtcc/cmaes.hpp"
#include "qtcc/floquet.hpp"
#include "qtcc/qml.hpp"
#include "qtcc/qrc.hpp"

#include <benchmark/benchmark.h>

using namespace qtcc;

namespace {

IsingHamiltonian random_h1(int n, std::uint64_t seed) {
    RngStream rng(seed);
    const auto tmpl = all_to_all_ising_template(n);
    std::vector<double> c(tmpl.term_count());
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    return tmpl.with_coefficients(c);
}

void BM_Evolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto h = random_h1(n, 1);
    const Statevector psi = zero_state(n);
    for (auto _ : state) benchmark::DoNotOptimize(evolve(psi, h, 0.1));
}
BENCHMARK(BM_Evolve)->DenseRange(2, 8, 2);

void BM_FloquetPropagate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FloquetSchedule schedule{all_to_all_ising_template(n), 1.0, 10, kDefaultDetuning, false};
    const auto spec = NoiseSpec::uniform(random_h1(n, 2).coefficients(), 0.1);
    RngStream rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(floquet_propagate(zero_state(n), schedule, spec, 10, rng));
}
BENCHMARK(BM_FloquetPropagate)->Arg(4)->Arg(6);

void BM_HarvestEcho(benchmark::State& state) {
    RngStream rng(4);
    const auto reservoir = qrc::make_reservoir(4, 1.0, 10, kDefaultDetuning, false, 0.1, rng);
    const auto inputs = qrc::generate_waveform({qrc::WaveKind::sin, 100, 20, 0});
    for (auto _ : state) benchmark::DoNotOptimize(qrc::harvest_features(inputs, reservoir, Mode::qtcc, rng));
}
BENCHMARK(BM_HarvestEcho);

void BM_ModelForward(benchmark::State& state) {
    qml::ModelSpec spec;
    spec.kind = state.range(0) ? qml::ModelKind::vqkan : qml::ModelKind::qnn;
    const qml::Model model(spec);
    RngStream rng(5);
    const auto params = spec.initial_parameters(rng);
    const auto input = qml::EncodedInput::from_u({0.1, 0.2, 0.05, 0.15});
    for (auto _ : state) benchmark::DoNotOptimize(model.forward(params, input, Mode::qtcc, rng));
}
BENCHMARK(BM_ModelForward)->Arg(0)->Arg(1);

void BM_CmaTell(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    CmaEs es(Eigen::VectorXd::Ones(n), 0.3, 6);
    for (auto _ : state) {
        const auto cands = es.ask();
        std::vector<double> f;
        for (const auto& c : cands) f.push_back(c.squaredNorm());
        es.tell(cands, f);
    }
}
BENCHMARK(BM_CmaTell)->Arg(30)->Arg(286);

}  // namespace

BENCHMARK_MAIN();
