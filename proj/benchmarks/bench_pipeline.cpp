#include <benchmark/benchmark.h>

#include <vector>

#include "cmlearn/compliance.hpp"
#include "cmlearn/direction.hpp"
#include "cmlearn/pipeline.hpp"
#include "cmlearn/trajectory.hpp"

namespace {

using namespace cml;

struct Fixture {
    Environment funnel = make_funnel_environment(true, 0.0, 0.3);
    std::vector<std::vector<MotionSample>> windowed;

    Fixture() {
        const std::vector<SyntheticDemo> demos =
            generate_demo_batch(funnel, "perpendicular", 16, 10.0, 10.0, 99);
        for (const SyntheticDemo& d : demos)
            windowed.push_back(preprocess(d.trajectory, 20, 2.0));
    }
    static const Fixture& get() {
        static Fixture f;
        return f;
    }
};

void BM_GenerateDemonstration(benchmark::State& state) {
    const Fixture& f = Fixture::get();
    DemoConfig cfg;
    cfg.start = {0.05, 0.0, 0.08};
    cfg.approach = {0.15, 0.0, -1.0};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(generate_demonstration(f.funnel, cfg));
    }
}
BENCHMARK(BM_GenerateDemonstration);

void BM_LearnDirection(benchmark::State& state) {
    const Fixture& f = Fixture::get();
    const std::span<const std::vector<MotionSample>> demos(
        f.windowed.data(), static_cast<std::size_t>(state.range(0)));
    const ConstraintSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(learn_direction(demos, spec));
}
BENCHMARK(BM_LearnDirection)->Arg(2)->Arg(8)->Arg(16);

void BM_LearnCompliance(benchmark::State& state) {
    const Fixture& f = Fixture::get();
    const ConstraintSpec spec;
    const DirectionResult dir = learn_direction(f.windowed, spec);
    const ComplianceSpec comp;
    for (auto _ : state)
        benchmark::DoNotOptimize(learn_compliance(f.windowed, dir.desired_direction, comp));
}
BENCHMARK(BM_LearnCompliance);

void BM_Reproduce(benchmark::State& state) {
    const Fixture& f = Fixture::get();
    MotionModel model;
    model.desired_direction = {0, 0, -1};
    model.n_compliant = 2;
    model.compliant_axes = {{1, 0, 0}, {0, 1, 0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(reproduce(model, f.funnel, {{0.04, 0.0, 0.08}}));
}
BENCHMARK(BM_Reproduce);

}  // namespace

BENCHMARK_MAIN();
