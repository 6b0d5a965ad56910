#include <benchmark/benchmark.h>

#include "anrot/oracle.hpp"
#include "anrot/skew.hpp"
#include "anrot/two_particle.hpp"
#include "anrot/velocity_circle.hpp"

using namespace anrot;

namespace {

const PhysicalParams kP{SystemMode::DoubleRotor, 0.5, 1.0, 2.0};
const Integrals kI{0.0, 1.0, 8.0, {}, {}};

void BaseStep(benchmark::State& state) {
    const VelocityCircle c = build_circle(kP, kI);
    const ArcSet u = compute_U(c, kP, kI);
    BaseState b{0.123, Sheet::O};
    for (auto _ : state) {
        b = base_step(b, c, u);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BaseStep);

void SkewStep(benchmark::State& state) {
    const VelocityCircle c = build_circle(kP, kI);
    const ArcSet u = compute_U(c, kP, kI);
    SkewState st{0.123, 0.0, 0, 0.0};
    for (auto _ : state) {
        st = skew_step(st, c, u, kP, kI);
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(SkewStep);

void OracleEvents(benchmark::State& state) {
    const VelocityCircle c = build_circle(kP, kI);
    CartesianState cs = make_double_rotor_initial(c, kP, kI, 0.37, 0.0);
    for (auto _ : state) {
        cs = run(cs, kP, state.range(0), {});
        benchmark::DoNotOptimize(cs);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(OracleEvents)->Arg(1024);

void ComputeMissSet(benchmark::State& state) {
    const Integrals mix{0.0, 1.0, 3.6, {}, {}};
    const VelocityCircle c = build_circle(kP, mix);
    for (auto _ : state) {
        const ArcSet u = compute_U(c, kP, mix);
        benchmark::DoNotOptimize(u);
    }
}
BENCHMARK(ComputeMissSet);

void TwoStep(benchmark::State& state) {
    const TwoParticleBase b = build_two_particle_base(0.5, 1.0, 0.0, 1.0, 100.0, 100.0);
    TwoParticleState st{0.123, 0.5};
    for (auto _ : state) {
        st = two_step(st, b).first;
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(TwoStep);

void MeanAlphaQuadrature(benchmark::State& state) {
    const VelocityCircle c = build_circle(kP, kI);
    const ArcSet u;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mean_alpha(c, u, kP, kI, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(MeanAlphaQuadrature)->Arg(1 << 12);

}  // namespace

BENCHMARK_MAIN();
