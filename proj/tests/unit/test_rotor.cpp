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
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include "doctest.h"
#include "specoct/errors.hpp"
#include "specoct/rotor.hpp"
#include "specoct/units.hpp"

using namespace specoct;

namespace {

// 2 pi * integral over x = cos(theta) of Y_j Y_j' x^2 with 64 Gauss-Legendre nodes.
double quadrature_element(int j, int jp, int m) {
  auto integrand = [&](double x) {
    const double theta = std::acos(x);
    return boost::math::spherical_harmonic_r(j, m, theta, 0.0) * boost::math::spherical_harmonic_r(jp, m, theta, 0.0) *
           x * x;
  };
  return 2.0 * std::numbers::pi * boost::math::quadrature::gauss<double, 64>::integrate(integrand, -1.0, 1.0);
}

// Largest eigenvalue by power iteration on the shifted (positive) matrix.
double power_iteration_max(const Eigen::MatrixXd& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd w = (a + Eigen::MatrixXd::Identity(a.rows(), a.cols())) * v;
    const double next = w.norm() - 1.0;
    v = w.normalized();
    if (std::abs(next - lambda) < 1e-15) break;
    lambda = next;
  }
  return v.dot(a * v);
}

}  // namespace

TEST_CASE("quadrature oracle trivial values") {
  CHECK(quadrature_element(0, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(quadrature_element(0, 1, 0)) < 1e-15);
  CHECK(cos2_element(0, 2, 0) == doctest::Approx(quadrature_element(0, 2, 0)).epsilon(1e-12));
}

TEST_CASE("cos2 matrix elements agree with quadrature up to j_max 20") {
  for (int m : {0, 1, 2, 5, 8}) {
    const RotorOperators ops = build_operators(RotorBasis(20, m));
    double worst = 0.0;
    for (std::size_t a = 0; a < ops.dim(); ++a) {
      for (std::size_t b = 0; b < ops.dim(); ++b) {
        const double ref = quadrature_element(ops.basis.j(a), ops.basis.j(b), m);
        worst = std::max(worst, std::abs(ops.cos2(a, b) - ref));
      }
    }
    CAPTURE(m);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("basis and operator structure") {
  CHECK(build_operators(RotorBasis(0, 0)).cos2(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const RotorOperators ops = build_operators(RotorBasis(4, 0));
  for (int j = 0; j <= 4; ++j) CHECK(ops.j_squared(j, j) == j * (j + 1));

  const RotorBasis b(10, -3);
  CHECK(b.dim() == 8);
  CHECK(b.j(0) == 3);
  CHECK(b.index_of(10).value() == 7);
  CHECK_FALSE(b.index_of(2).has_value());
  CHECK(RotorBasis(10, 0, Parity::even).dim() == 6);
  CHECK(RotorBasis(10, 1, Parity::odd).dim() == 5);
  CHECK_THROWS_AS(RotorBasis(2, 3), ConfigError);
}

TEST_CASE("cos2 properties for several truncations") {
  for (int j_max : {1, 2, 7, 14, 20}) {
    for (int m : {0, 1, 3}) {
      if (m > j_max) continue;
      const RotorOperators ops = build_operators(RotorBasis(j_max, m));
      CHECK((ops.cos2 - ops.cos2.transpose()).cwiseAbs().maxCoeff() == 0.0);
      for (std::size_t a = 0; a < ops.dim(); ++a) {
        for (std::size_t b = 0; b < ops.dim(); ++b) {
          const int dj = std::abs(ops.basis.j(a) - ops.basis.j(b));
          if (dj != 0 && dj != 2) CHECK(ops.cos2(a, b) == 0.0);
        }
      }
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ops.cos2).eigenvalues();
      CHECK(ev.minCoeff() > 0.0);
      CHECK(ev.maxCoeff() < 1.0);
    }
  }
}

TEST_CASE("hamiltonian") {
  const MoleculeParams co = carbon_monoxide();
  const RotorOperators ops = build_operators(RotorBasis(10, 0));
  CHECK((hamiltonian(ops, co, 0.0) - co.rotational_constant * ops.j_squared).cwiseAbs().maxCoeff() == 0.0);
  const double e = 0.013;
  CHECK((hamiltonian(ops, co, e) - hamiltonian(ops, co, -e)).cwiseAbs().maxCoeff() == 0.0);
  const double h00 = -(e * e / 4.0) * (co.delta_alpha() / 3.0 + co.alpha_perpendicular);
  CHECK(hamiltonian(ops, co, e)(0, 0) == doctest::Approx(h00).epsilon(1e-14));
  const Eigen::MatrixXd h = hamiltonian(ops, co, e);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("CO parameters and unit conversion") {
  const MoleculeParams co = carbon_monoxide();
  CHECK(co.alpha_parallel == 15.65);
  CHECK(co.alpha_perpendicular == 11.73);
  // 1 hartree = 219474.6313632 cm^-1.
  CHECK(co.rotational_constant * 219474.6313632 == doctest::Approx(1.931).epsilon(1e-12));
  CHECK(rotational_period(co) == doctest::Approx(std::numbers::pi / co.rotational_constant).epsilon(1e-15));
  // Atomic unit of intensity from tables: 3.50944758e16 W/cm^2, E_au = 5.14220674763e9 V/cm.
  CHECK(units::field_au_to_intensity(1.0) == doctest::Approx(3.50944758e16).epsilon(1e-8));
  CHECK(units::intensity_to_field_au(37.5e12) == doctest::Approx(std::sqrt(37.5e12 / 3.50944758e16)).epsilon(1e-14));
  CHECK_THROWS_AS(MoleculeParams::from_wavenumber(-1.0, 15.65, 11.73), ConfigError);
  CHECK_THROWS_AS(MoleculeParams::from_wavenumber(1.931, 11.0, 12.0), ConfigError);
}

TEST_CASE("pure target") {
  const RotorOperators ops = build_operators(RotorBasis(14, 0));
  SUBCASE("j_opt = 0 gives the ground state") {
    const Eigen::VectorXcd t = target_pure(ops, TargetSpec{0, 0});
    CHECK(std::abs(t(0) - 1.0) < 1e-15);
    CHECK(t.tail(t.size() - 1).norm() == 0.0);
  }
  SUBCASE("j_opt = 8 is even, normalized and maximal") {
    const Eigen::VectorXcd t = target_pure(ops, TargetSpec{8, 0});
    CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t a = 0; a < ops.dim(); ++a) {
      if (ops.basis.j(a) % 2 == 1 || ops.basis.j(a) > 8) CHECK(std::abs(t(a)) < 1e-14);
    }
    Eigen::Index imax = 0;
    t.cwiseAbs().maxCoeff(&imax);
    CHECK(t(imax).imag() == 0.0);
    CHECK(t(imax).real() > 0.0);
    const double expect = (t.adjoint() * ops.cos2.cast<std::complex<double>>() * t)(0).real();
    const Eigen::MatrixXd proj = ops.cos2.topLeftCorner(9, 9);
    const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(proj).eigenvalues().maxCoeff();
    CHECK(expect == doctest::Approx(dense).epsilon(1e-13));
    CHECK(expect == doctest::Approx(power_iteration_max(proj)).epsilon(1e-10));
    CHECK(projected_cos2(ops, 8).rows() == 9);
    CHECK(target_subspace_dim(ops.basis, 8) == 9);
  }
  SUBCASE("target beyond the basis is rejected") {
    CHECK_THROWS_AS(target_pure(build_operators(RotorBasis(6, 0)), TargetSpec{8, 0}), IllPosedTarget);
  }
}
