#include <benchmark/benchmark.h>

#include <vector>

#include "cmlearn/polygon.hpp"
#include "cmlearn/rng.hpp"
#include "cmlearn/voting.hpp"

namespace {

using namespace cml;

AngularPolygon random_polygon(Rng& rng, int points) {
    std::vector<AngularPoint> pts;
    for (int i = 0; i < points; ++i) {
        const double a = rng.uniform(0.0, 6.28318);
        pts.push_back({0.7 * std::cos(a) + rng.uniform(-0.2, 0.2),
                       0.7 * std::sin(a) + rng.uniform(-0.2, 0.2)});
    }
    try {
        return convex_hull(pts);
    } catch (const Error&) {
        return random_polygon(rng, points);
    }
}

void BM_ConvexHullQuad(benchmark::State& state) {
    Rng rng(1);
    std::array<AngularPoint, 4> pts;
    for (auto _ : state) {
        for (AngularPoint& p : pts) p = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        try {
            benchmark::DoNotOptimize(convex_hull_quad(pts));
        } catch (const Error&) {
        }
    }
}
BENCHMARK(BM_ConvexHullQuad);

void BM_PointInPolygon(benchmark::State& state) {
    Rng rng(2);
    const AngularPolygon poly = random_polygon(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const AngularPoint pt{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        benchmark::DoNotOptimize(point_in_polygon(pt, poly));
    }
}
BENCHMARK(BM_PointInPolygon)->Arg(4)->Arg(8)->Arg(16);

void BM_IntersectConvex(benchmark::State& state) {
    Rng rng(3);
    std::vector<AngularPolygon> polys;
    for (int i = 0; i < state.range(0); ++i) polys.push_back(random_polygon(rng, 8));
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(intersect_convex(polys));
        } catch (const Error&) {
        }
    }
}
BENCHMARK(BM_IntersectConvex)->Arg(2)->Arg(16)->Arg(64);

void BM_ChebyshevCenter(benchmark::State& state) {
    Rng rng(4);
    const AngularPolygon poly = random_polygon(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(chebyshev_center(poly));
}
BENCHMARK(BM_ChebyshevCenter)->Arg(4)->Arg(8)->Arg(16);

void BM_Vote(benchmark::State& state) {
    Rng rng(5);
    std::vector<AngularPolygon> polys;
    for (int i = 0; i < state.range(0); ++i) polys.push_back(random_polygon(rng, 6));
    for (auto _ : state) {
        VotingGrid grid(1.0);
        vote(polys, grid);
        benchmark::DoNotOptimize(grid.max_count());
    }
}
BENCHMARK(BM_Vote)->Arg(8)->Arg(64)->Arg(256);

}  // namespace
