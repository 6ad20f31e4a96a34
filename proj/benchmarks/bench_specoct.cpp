/* Copyright 2026 The specoct Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <benchmark/benchmark.h>

#include "specoct/experiment.hpp"
#include "specoct/optimizer.hpp"
#include "specoct/spectral.hpp"
#include "specoct/thermal.hpp"
#include "specoct/units.hpp"

namespace {

using namespace specoct;

const MoleculeParams kCO = carbon_monoxide();

// Trial pulse with the endpoints pinned, as the penalty requires.
FieldGrid pinned_gaussian(const TimeGrid& grid, double amplitude, double fwhm_ps) {
  FieldGrid f = gaussian_field(grid, amplitude, units::ps_to_au(fwhm_ps), 0.5 * grid.t_final);
  f.values.front() = 0.0;
  f.values.back() = 0.0;
  return f;
}

void BM_KernelBuild(benchmark::State& state) {
  const RotorBasis basis(static_cast<int>(state.range(0)), 0);
  const BlockGenerator gen(build_operators(basis), kCO);
  double e = 0.004;
  for (auto _ : state) {
    StepKernel k(gen, e, 20.0, state.range(1) != 0);
    benchmark::DoNotOptimize(k);
    e += 1e-9;
  }
}
BENCHMARK(BM_KernelBuild)->ArgsProduct({{14, 20, 40}, {0, 1}});

void BM_KernelApply(benchmark::State& state) {
  const RotorBasis basis(static_cast<int>(state.range(0)), 0);
  const BlockGenerator gen(build_operators(basis), kCO);
  const StepKernel k(gen, 0.004, 20.0, false);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(gen.dim()));
  v[0] = 1.0;
  for (auto _ : state) {
    k.apply(v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_KernelApply)->Arg(14)->Arg(20)->Arg(40);

void BM_PureForward(benchmark::State& state) {
  const PureModel model = PureModel::ground_state(16, kCO, TargetSpec{8, 0});
  const TimeGrid grid{10.0 * rotational_period(kCO), static_cast<std::size_t>(state.range(0))};
  const Optimizer<PureModel> opt(model, OptimizerOptions{});
  const FieldGrid field = pinned_gaussian(grid, 0.005, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(opt.evaluate(field));
}
BENCHMARK(BM_PureForward)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_PureIteration(benchmark::State& state) {
  const PureModel model = PureModel::ground_state(16, kCO, TargetSpec{8, 0});
  const TimeGrid grid{10.0 * rotational_period(kCO), 4096};
  const Optimizer<PureModel> opt(model, OptimizerOptions{});
  const FieldGrid field = pinned_gaussian(grid, 0.005, 3.0);
  for (auto _ : state) {
    const auto bw = opt.backward(field);
    benchmark::DoNotOptimize(opt.sweep(field, bw));
  }
}
BENCHMARK(BM_PureIteration)->Unit(benchmark::kMillisecond);

void BM_ThermalForward(benchmark::State& state) {
  const ThermalModel model(kCO, 20, static_cast<double>(state.range(0)), TargetSpec{8, 0});
  const TimeGrid grid{rotational_period(kCO), 128};
  const Optimizer<ThermalModel> opt(model, OptimizerOptions{});
  const FieldGrid field = pinned_gaussian(grid, units::intensity_to_field_au(37.5e12), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(opt.evaluate(field));
  state.counters["sectors"] = static_cast<double>(model.sectors());
}
BENCHMARK(BM_ThermalForward)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Filter(benchmark::State& state) {
  const double b = kCO.rotational_constant;
  const TimeGrid grid{10.0 * rotational_period(kCO), static_cast<std::size_t>(state.range(0))};
  const SpectralFilter filter(FilterSpec::band_pass({{4.0 * b, 0.5 * b}, {10.0 * b, 0.5 * b}, {26.0 * b, 0.5 * b}}),
                              grid);
  const FieldGrid field = pinned_gaussian(grid, 0.005, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(filter.apply_admissible(field));
}
BENCHMARK(BM_Filter)->Arg(1024)->Arg(4096)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
