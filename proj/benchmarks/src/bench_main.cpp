#include <benchmark/benchmark.h>

#include <vector>

#include "specgrowth/eigensolver.hpp"
#include "specgrowth/family.hpp"
#include "specgrowth/growth.hpp"
#include "specgrowth/metrics.hpp"
#include "specgrowth/spectral.hpp"

using namespace specgrowth;

namespace {

void bench_spmv(benchmark::State& state) {
  WeightedGraph g = Family::antitree(SphereProfile::poly(2))
                        .truncate(static_cast<std::uint32_t>(state.range(0)), MeasureRule::unit);
  std::vector<Vertex> domain(g.n());
  for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = static_cast<Vertex>(i);
  DirichletOperator op = dirichlet_operator(g, std::move(domain));
  std::vector<double> x(op.matrix.n, 1.0), y(op.matrix.n);
  for (auto _ : state) {
    op.matrix.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(op.matrix.vals.size()));
}
BENCHMARK(bench_spmv)->Arg(20)->Arg(40);

void bench_dirichlet_lowest(benchmark::State& state) {
  Family family = Family::antitree(SphereProfile::poly(2));
  for (auto _ : state) {
    std::vector<ExhaustionRow> rows = lambda0_exhaustion(family, {10}, MeasureRule::unit);
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(bench_dirichlet_lowest)->Unit(benchmark::kMillisecond);

void bench_ball_table(benchmark::State& state) {
  WeightedGraph g = Family::line().truncate(static_cast<std::uint32_t>(state.range(0)),
                                            MeasureRule::unit);
  PseudoMetric metric = natural_distance(g, 0);
  for (auto _ : state) {
    BallTable table = ball_table(g, metric, metric.dist.size() / 2.0, 1.0);
    benchmark::DoNotOptimize(table.rows.data());
  }
}
BENCHMARK(bench_ball_table)->Arg(100000);

void bench_degree_metric(benchmark::State& state) {
  WeightedGraph g = Family::tree(SphereProfile::parse("geo:4,3"))
                        .truncate(static_cast<std::uint32_t>(state.range(0)), MeasureRule::unit);
  EdgeLengths lengths = huang_lengths(g);
  for (auto _ : state) {
    PseudoMetric metric = path_metric(g, lengths, 0);
    benchmark::DoNotOptimize(metric.dist.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(g.n()));
}
BENCHMARK(bench_degree_metric)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
