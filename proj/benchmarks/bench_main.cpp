#include "leglab/gallery.hpp"
#include "leglab/geometry.hpp"
#include "leglab/invariants.hpp"
#include "leglab/lifting.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace leglab;

namespace {

PlaneCurve regular_polygon(int n) {
  std::vector<Vec2> p;
  for (int k = 0; k < n; ++k) p.emplace_back(std::cos(2 * M_PI * k / n), std::sin(2 * M_PI * k / n));
  return PlaneCurve(p, true);
}

SpaceCurve tilted_circle(int n, const Vec3& c, bool vertical) {
  std::vector<Vec3> p;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * M_PI * (k + 0.25) / n;
    p.push_back(vertical ? c + Vec3(std::cos(t), 0, std::sin(t)) : c + Vec3(std::cos(t), std::sin(t), 0));
  }
  return SpaceCurve(p, true);
}

void BM_ChordArc(benchmark::State& state) {
  const PlaneCurve c = regular_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chord_arc_constant(c).constant);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChordArc)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Lift(benchmark::State& state) {
  const PlaneCurve c = project(spiral_leaf(0.5, 1.0, static_cast<int>(state.range(0))));
  const ContactForm f = ContactForm::rot();
  for (auto _ : state) benchmark::DoNotOptimize(lift(f, c, 0.0, 1).closure_defect);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lift)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Linking(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpaceCurve a = tilted_circle(n, Vec3::Zero(), false), b = tilted_circle(n, Vec3(1, 0, 0), true);
  for (auto _ : state) benchmark::DoNotOptimize(linking(a, b).value);
}
BENCHMARK(BM_Linking)->RangeMultiplier(2)->Range(64, 512);

void BM_LanceThomas(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lance_thomas_unknot(n).endpoint_z);
}
BENCHMARK(BM_LanceThomas)->DenseRange(1, 5);

void BM_Tb(benchmark::State& state) {
  const SpaceCurve c = figure_eight_unknot(static_cast<int>(state.range(0)));
  const ContactForm f = ContactForm::xdy();
  for (auto _ : state) benchmark::DoNotOptimize(thurston_bennequin(f, c).tb);
}
BENCHMARK(BM_Tb)->RangeMultiplier(2)->Range(64, 512);

}  // namespace
BENCHMARK_MAIN();
