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
#include <cmath>
#include <random>

#include "doctest.h"
#include "specoct/errors.hpp"
#include "specoct/optimizer.hpp"
#include "specoct/thermal.hpp"
#include "specoct/units.hpp"
#include "test_support.hpp"

using namespace specoct;
using specoct::testing::random_density;
using specoct::testing::random_field;
using specoct::testing::reference_unitary;

namespace {

const MoleculeParams kCO = carbon_monoxide();

Eigen::VectorXd sorted_spectrum(const Eigen::MatrixXcd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
}

ThermalState random_thermal(std::mt19937& rng, int j_max, int m_max) {
  ThermalState s;
  s.j_max = j_max;
  for (int m = -m_max; m <= m_max; ++m) s.blocks.emplace(m, random_density(rng, j_max - std::abs(m) + 1));
  return s;
}

}  // namespace

TEST_CASE("Boltzmann initial state") {
  SUBCASE("zero temperature is the rotational ground state") {
    const ThermalState s = boltzmann_init(0.0, 10, 8, kCO);
    CHECK(s.trace() == 1.0);
    CHECK(s.blocks.at(0)(0, 0) == 1.0);
    for (const auto& [m, b] : s.blocks) CHECK(b.norm() == (m == 0 ? 1.0 : 0.0));
  }
  SUBCASE("5 K populations against a direct Boltzmann sum") {
    const ThermalState s = boltzmann_init(5.0, 18, 8, kCO);
    CHECK(s.trace() == doctest::Approx(1.0).epsilon(1e-12));
    const double kt = 5.0 * 3.166811563e-6;
    const double b = kCO.rotational_constant;
    double z = 0.0;
    for (int j = 0; j < 400; ++j) z += (2 * j + 1) * std::exp(-b * j * (j + 1) / kt);
    const double p0 = s.blocks.at(0)(0, 0).real();
    const double p2 = s.blocks.at(0)(2, 2).real() + 2 * s.blocks.at(1)(1, 1).real() + 2 * s.blocks.at(2)(0, 0).real();
    CHECK(p2 / p0 == doctest::Approx(5.0 * std::exp(-6.0 * b / kt)).epsilon(1e-12));
    CHECK(p0 == doctest::Approx(1.0 / z).epsilon(1e-9));
    CHECK(s.dropped < 1e-6);
    for (const auto& [m, blk] : s.blocks) {
      CHECK((blk - blk.adjoint()).norm() == 0.0);
      CHECK(sorted_spectrum(blk).minCoeff() >= 0.0);
      CHECK((blk - s.blocks.at(-m)).norm() == 0.0);
    }
  }
  SUBCASE("very high temperature is uniform over the retained states") {
    const ThermalState s = boltzmann_init(1e12, 3, 3, kCO);
    const double uniform = 1.0 / 16.0;
    for (const auto& [m, b] : s.blocks) {
      for (Eigen::Index i = 0; i < b.rows(); ++i) CHECK(b(i, i).real() == doctest::Approx(uniform).epsilon(1e-6));
    }
    CHECK(s.dropped > 0.9);
  }
  CHECK_THROWS_AS(boltzmann_init(-1.0, 10, 8, kCO), ConfigError);
}

TEST_CASE("thermal target") {
  const TargetSpec spec{8, 0};
  SUBCASE("zero temperature reduces to the pure target") {
    const ThermalTarget t = thermal_target(0.0, spec, 14, kCO);
    const Eigen::VectorXcd phi = target_pure(build_operators(RotorBasis(14, 0)), spec);
    CHECK((t.blocks.at(0) - phi * phi.adjoint()).norm() < 1e-13);
    CHECK(t.purity == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("5 K target keeps the Boltzmann spectrum and raises alignment") {
    const ThermalState rho0 = boltzmann_init(5.0, 18, 8, kCO);
    const ThermalTarget t = thermal_target(rho0, spec);
    CHECK_FALSE(t.degenerate);
    double purity0 = 0.0;
    ThermalState opt = rho0;
    for (const auto& [m, blk] : rho0.blocks) {
      const Eigen::MatrixXcd& o = t.blocks.at(m);
      CHECK((sorted_spectrum(o) - sorted_spectrum(blk)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((o - o.adjoint()).norm() < 1e-14);
      for (Eigen::Index j = 9 - std::abs(m); j < o.rows(); ++j) CHECK(o.row(j).norm() == 0.0);
      purity0 += (blk * blk).trace().real();
      opt.blocks[m] = o;
    }
    CHECK(t.purity == doctest::Approx(purity0).epsilon(1e-12));
    CHECK(opt.trace() == doctest::Approx(1.0).epsilon(1e-12));
    const double c_opt = expectation_cos2(opt);
    const double c_0 = expectation_cos2(rho0);
    CHECK(c_opt > c_0);
    // Independent evaluation of Tr(rho cos2) block by block.
    double direct = 0.0;
    for (const auto& [m, o] : t.blocks) {
      direct += (o * build_operators(RotorBasis(18, m)).cos2.cast<std::complex<double>>()).trace().real();
    }
    CHECK(c_opt == doctest::Approx(direct).epsilon(1e-13));
    CHECK(thermal_projection(opt, t) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("thermal projection") {
  const ThermalTarget t = thermal_target(0.0, TargetSpec{8, 0}, 12, kCO);
  const RotorOperators ops = build_operators(RotorBasis(12, 0));
  std::mt19937 rng(31);
  const Eigen::VectorXcd psi = specoct::testing::random_state(rng, 13);
  ThermalState pure = boltzmann_init(0.0, 12, 8, kCO);
  pure.blocks[0] = psi * psi.adjoint();
  const Eigen::VectorXcd phi = target_pure(ops, TargetSpec{8, 0});
  CHECK(thermal_projection(pure, t) == doctest::Approx(std::norm(phi.dot(psi))).epsilon(1e-13));
  ThermalState orth = boltzmann_init(0.0, 12, 8, kCO);
  orth.blocks[0].setZero();
  orth.blocks[0](1, 1) = 1.0;  // odd j, no overlap with an even target
  CHECK(thermal_projection(orth, t) < 1e-25);
}

TEST_CASE("thermal alpha") {
  std::mt19937 rng(12);
  const ThermalState rho = random_thermal(rng, 8, 2);
  const ThermalState chi = random_thermal(rng, 8, 2);
  CHECK(std::abs(thermal_alpha(rho, rho, kCO)) < 1e-14);

  ThermalState diag = rho;
  for (auto& [m, b] : diag.blocks) b = Eigen::MatrixXcd(b.diagonal().asDiagonal());
  ThermalState ident = rho;
  for (auto& [m, b] : ident.blocks) b.setIdentity();
  CHECK(std::abs(thermal_alpha(diag, ident, kCO)) < 1e-14);

  // d/dt sum Tr(chi(t) rho(t)) with chi under E_ref and rho under E.
  const double e_ref = 0.01, e = 0.025, tau = 1e-2;
  auto overlap = [&](double t) {
    double sum = 0.0;
    for (const auto& [m, r] : rho.blocks) {
      const RotorOperators ops = build_operators(RotorBasis(8, m));
      const Eigen::MatrixXcd u = reference_unitary(ops, kCO, e, t);
      const Eigen::MatrixXcd v = reference_unitary(ops, kCO, e_ref, t);
      sum += ((v * chi.blocks.at(m) * v.adjoint()) * (u * r * u.adjoint())).trace().real();
    }
    return sum;
  };
  const double slope = (overlap(tau) - overlap(-tau)) / (2 * tau);
  CHECK(slope == doctest::Approx(thermal_alpha(rho, chi, kCO) * (e_ref * e_ref - e * e)).epsilon(1e-6));
}

TEST_CASE("thermal propagation invariants") {
  const ThermalState rho0 = boltzmann_init(7.0, 16, 8, kCO);
  const TimeGrid g{rotational_period(kCO), 128};
  const FieldGrid field = gaussian_field(g, units::intensity_to_field_au(20e12), units::ps_to_au(1.0), 0.5 * g.t_final);
  const ThermalState rho = propagate_thermal(rho0, field, kCO);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [m, b] : rho.blocks) {
    CHECK((b - b.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sorted_spectrum(b) - sorted_spectrum(rho0.blocks.at(m))).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((b - rho.blocks.at(-m)).cwiseAbs().maxCoeff() < 1e-12);
  }
  const ThermalState still = propagate_thermal(rho0, FieldGrid(g), kCO);
  CHECK(expectation_cos2(still) == doctest::Approx(expectation_cos2(rho0)).epsilon(1e-13));
}

TEST_CASE("thermal model matches the dense density-matrix description") {
  const ThermalModel model(kCO, 14, 10.0);
  CHECK(model.sectors() > 0);
  std::mt19937 rng(6);
  const TimeGrid g{rotational_period(kCO), 64};
  const FieldGrid field = random_field(rng, g, 0.02);

  ThermalModel::State s = model.initial_state();
  for (std::size_t n = 0; n < g.n_steps; ++n) model.advance(model.kernel(field[n], g.dt()), s);
  const ThermalState full = model.assemble(s);
  const ThermalState ref = propagate_thermal(model.initial(), field, kCO);
  for (const auto& [m, b] : ref.blocks) CHECK((full.blocks.at(m) - b).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(model.projection(s) == doctest::Approx(thermal_projection(ref, model.target())).epsilon(1e-12));
  CHECK(model.cos2(s) == doctest::Approx(expectation_cos2(ref)).epsilon(1e-12));
  // The overlap with the final adjoint is the projection.
  CHECK(model.overlap(model.adjoint_final(), s) == doctest::Approx(model.projection(s)).epsilon(1e-12));
}

TEST_CASE("thermal optimization is monotone and keeps the +-m symmetry") {
  const ThermalModel model(kCO, 16, 5.0);
  OptimizerOptions opts;
  opts.filter = FilterSpec::pixelation(32, units::rad_per_ps_to_angular_au(7.28));
  opts.mu_strategy = MuStrategy::polyfit;
  opts.max_iters = 8;
  const Optimizer<ThermalModel> opt(model, opts);
  const TimeGrid g{rotational_period(kCO), 64};
  const FieldGrid trial = gaussian_field(g, units::intensity_to_field_au(20e12), units::ps_to_au(1.0), 0.5 * g.t_final);
  const OptimizationResult res = opt.optimize(trial);
  REQUIRE_FALSE(res.aborted);
  for (std::size_t k = 1; k < res.history.size(); ++k) CHECK(res.history[k].cost >= res.history[k - 1].cost - 1e-10);
  CHECK(res.history.back().projection > res.history.front().projection);
  for (const auto& rec : res.history) {
    CHECK(rec.mu >= 0.0);
    CHECK(rec.mu <= 1.0);
  }
  const ThermalState fin = propagate_thermal(model.initial(), res.field, kCO);
  for (const auto& [m, b] : fin.blocks) {
    CHECK((b - fin.blocks.at(-m)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b - b.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(fin.trace() == doctest::Approx(1.0).epsilon(1e-10));
}
