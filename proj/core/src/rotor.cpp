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
#include "specoct/rotor.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "specoct/errors.hpp"
#include "specoct/units.hpp"

namespace specoct {

MoleculeParams MoleculeParams::from_wavenumber(double b_per_cm, double alpha_par, double alpha_perp) {
  MoleculeParams p{units::wavenumber_to_hartree(b_per_cm), alpha_par, alpha_perp};
  validate(p);
  return p;
}

void validate(const MoleculeParams& params) {
  if (!(params.rotational_constant > 0.0) || !std::isfinite(params.rotational_constant)) {
    throw ConfigError("molecule: rotational constant must be positive");
  }
  if (!std::isfinite(params.alpha_parallel) || !std::isfinite(params.alpha_perpendicular)) {
    throw ConfigError("molecule: polarizabilities must be finite");
  }
  if (!(params.alpha_parallel > params.alpha_perpendicular)) {
    throw ConfigError("molecule: alpha_par must exceed alpha_perp");
  }
}

MoleculeParams carbon_monoxide() { return MoleculeParams::from_wavenumber(1.931, 15.65, 11.73); }

double rotational_period(const MoleculeParams& params) { return units::kPi / params.rotational_constant; }

RotorBasis::RotorBasis(int j_max, int m, Parity parity) : j_max_(j_max), m_(m), parity_(parity) {
  const int am = std::abs(m);
  if (j_max < am) {
    throw ConfigError("basis: j_max = " + std::to_string(j_max) + " is below |m| = " + std::to_string(am));
  }
  for (int j = am; j <= j_max; ++j) {
    const bool even = (j % 2) == 0;
    if (parity == Parity::even && !even) continue;
    if (parity == Parity::odd && even) continue;
    j_.push_back(j);
  }
  if (j_.empty()) {
    throw ConfigError("basis: parity restriction leaves no states");
  }
}

std::optional<std::size_t> RotorBasis::index_of(int j) const {
  for (std::size_t i = 0; i < j_.size(); ++i) {
    if (j_[i] == j) return i;
  }
  return std::nullopt;
}

double cos2_element(int j, int j_prime, int m) {
  const int am = std::abs(m);
  if (j < am || j_prime < am) return 0.0;
  const double mm = static_cast<double>(m) * m;
  if (j == j_prime) {
    const double jj = j;
    return 1.0 / 3.0 + (2.0 / 3.0) * (jj * (jj + 1.0) - 3.0 * mm) / ((2.0 * jj - 1.0) * (2.0 * jj + 3.0));
  }
  if (std::abs(j - j_prime) != 2) return 0.0;
  const double lo = std::min(j, j_prime);
  const double num = ((lo + 1.0) * (lo + 1.0) - mm) * ((lo + 2.0) * (lo + 2.0) - mm);
  const double den = (2.0 * lo + 1.0) * (2.0 * lo + 3.0) * (2.0 * lo + 3.0) * (2.0 * lo + 5.0);
  return std::sqrt(num / den);
}

RotorOperators build_operators(const RotorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.dim());
  RotorOperators ops{basis, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index a = 0; a < n; ++a) {
    const int ja = basis.j(static_cast<std::size_t>(a));
    ops.j_squared(a, a) = static_cast<double>(ja) * (ja + 1);
    for (Eigen::Index b = 0; b < n; ++b) {
      ops.cos2(a, b) = cos2_element(ja, basis.j(static_cast<std::size_t>(b)), basis.m());
    }
  }
  return ops;
}

Eigen::MatrixXd hamiltonian(const RotorOperators& ops, const MoleculeParams& params, double e_value) {
  const auto n = static_cast<Eigen::Index>(ops.dim());
  Eigen::MatrixXd h = params.rotational_constant * ops.j_squared;
  if (e_value != 0.0) {
    const double s = 0.25 * e_value * e_value;
    h -= s * (params.delta_alpha() * ops.cos2 + params.alpha_perpendicular * Eigen::MatrixXd::Identity(n, n));
  }
  return h;
}

Eigen::MatrixXd coupling_operator(const RotorOperators& ops, const MoleculeParams& params) {
  const auto n = static_cast<Eigen::Index>(ops.dim());
  return 0.25 * (params.delta_alpha() * ops.cos2 + params.alpha_perpendicular * Eigen::MatrixXd::Identity(n, n));
}

std::size_t target_subspace_dim(const RotorBasis& basis, int j_opt) {
  std::size_t n = 0;
  for (int j : basis.j_values()) {
    if (j <= j_opt) ++n;
  }
  return n;
}

Eigen::MatrixXd projected_cos2(const RotorOperators& ops, int j_opt) {
  const auto d = static_cast<Eigen::Index>(target_subspace_dim(ops.basis, j_opt));
  return ops.cos2.topLeftCorner(d, d);
}

Eigen::VectorXcd target_pure(const RotorOperators& ops, const TargetSpec& spec) {
  if (spec.m != ops.basis.m()) {
    throw IllPosedTarget("target: m of the target does not match the basis");
  }
  if (spec.j_opt > ops.basis.j_max()) {
    throw IllPosedTarget("target: j_opt exceeds the basis j_max");
  }
  const Eigen::MatrixXd proj = projected_cos2(ops, spec.j_opt);
  const Eigen::Index d = proj.rows();
  if (d == 0) {
    throw IllPosedTarget("target: empty target subspace");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(proj);
  // Eigenvalues come out ascending.
  if (d > 1 && eig.eigenvalues()(d - 1) - eig.eigenvalues()(d - 2) < 1e-10) {
    throw IllPosedTarget("target: maximal eigenvalue of projected cos^2 is degenerate");
  }
  Eigen::VectorXd v = eig.eigenvectors().col(d - 1);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
  v.normalize();

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ops.dim()));
  out.head(d) = v.cast<std::complex<double>>();
  return out;
}

}  // namespace specoct
