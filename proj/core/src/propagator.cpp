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
#include "specoct/propagator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "specoct/errors.hpp"
#include "specoct/units.hpp"

namespace specoct {

namespace {

constexpr cplx kI{0.0, 1.0};

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void require_finite(const FieldGrid& field) {
  for (std::size_t n = 0; n < field.values.size(); ++n) {
    if (!std::isfinite(field.values[n])) {
      throw InvalidField("field: non-finite value at sample " + std::to_string(n));
    }
  }
}

}  // namespace

void validate(const TimeGrid& grid) {
  if (grid.n_steps < 2) throw ConfigError("grid: n_steps must be at least 2");
  if (!(grid.t_final > 0.0) || !std::isfinite(grid.t_final)) throw ConfigError("grid: t_f must be positive");
}

std::size_t default_n_steps(double t_final) {
  const double one_fs = units::ps_to_au(1e-3);
  const auto n = static_cast<std::size_t>(std::ceil(t_final / one_fs));
  return std::bit_ceil(std::max<std::size_t>(n, 2));
}

FieldGrid::FieldGrid(const TimeGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw InvalidField("field: " + std::to_string(values.size()) + " samples for a grid of " +
                       std::to_string(grid.size()) + " points");
  }
}

void validate(const FieldGrid& field) {
  if (field.values.size() != field.grid.size()) throw InvalidField("field: length does not match its grid");
  require_finite(field);
}

FieldGrid gaussian_field(const TimeGrid& grid, double amplitude, double fwhm, double center) {
  FieldGrid f(grid);
  const double k = 2.0 * std::log(2.0) / (fwhm * fwhm);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double x = grid.time(n) - center;
    f[n] = amplitude * std::exp(-k * x * x);
  }
  return f;
}

Eigen::VectorXcd step_pure(const Eigen::VectorXcd& state, const Eigen::MatrixXd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::VectorXcd c = v.transpose().cast<cplx>() * state;
  for (Eigen::Index a = 0; a < c.size(); ++a) c(a) *= std::exp(-kI * eig.eigenvalues()(a) * dt);
  return v.cast<cplx>() * c;
}

Eigen::MatrixXcd step_density(const Eigen::MatrixXcd& rho, const Eigen::MatrixXd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<cplx>();
  Eigen::VectorXcd ph(h.rows());
  for (Eigen::Index a = 0; a < ph.size(); ++a) ph(a) = std::exp(-kI * eig.eigenvalues()(a) * dt);
  const Eigen::MatrixXcd u = v * ph.asDiagonal() * v.adjoint();
  return u * rho * u.adjoint();
}

BlockGenerator::BlockGenerator(const RotorOperators& ops, const MoleculeParams& params)
    : ops_(ops), params_(params), dim_(ops.dim()) {
  const Eigen::MatrixXd c = coupling_operator(ops, params);
  for (int parity = 0; parity < 2; ++parity) {
    Sector s;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (ops.basis.j(i) % 2 == parity) s.index.push_back(static_cast<Eigen::Index>(i));
    }
    if (s.index.empty()) continue;
    const auto d = static_cast<Eigen::Index>(s.index.size());
    s.rotor.resize(d);
    s.cos2_diag.resize(d);
    s.cos2_sub.resize(std::max<Eigen::Index>(d - 1, 0));
    s.coupling.resize(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      const Eigen::Index ia = s.index[static_cast<std::size_t>(a)];
      s.rotor(a) = params.rotational_constant * ops.j_squared(ia, ia);
      s.cos2_diag(a) = ops.cos2(ia, ia);
      if (a + 1 < d) s.cos2_sub(a) = ops.cos2(s.index[static_cast<std::size_t>(a + 1)], ia);
      for (Eigen::Index b = 0; b < d; ++b) s.coupling(a, b) = c(ia, s.index[static_cast<std::size_t>(b)]);
    }
    sectors_.push_back(std::move(s));
  }
}

StepKernel::StepKernel(const BlockGenerator& gen, double e_value, double dt, bool with_slope) {
  const auto n = static_cast<Eigen::Index>(gen.dim());
  vectors_ = Eigen::MatrixXd::Zero(n, n);
  phases_.resize(n);
  if (with_slope) slope_core_ = Eigen::MatrixXcd::Zero(n, n);

  const double s = e_value * e_value;
  const double aniso = 0.25 * s * gen.params_.delta_alpha();
  const double shift = 0.25 * s * gen.params_.alpha_perpendicular;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (const auto& sec : gen.sectors_) {
    const auto d = static_cast<Eigen::Index>(sec.index.size());
    Eigen::VectorXd w;
    Eigen::MatrixXd v;
    if (d == 1) {
      w = Eigen::VectorXd::Constant(1, sec.rotor(0) - aniso * sec.cos2_diag(0) - shift);
      v = Eigen::MatrixXd::Ones(1, 1);
    } else {
      Eigen::VectorXd diag = sec.rotor - aniso * sec.cos2_diag - Eigen::VectorXd::Constant(d, shift);
      Eigen::VectorXd sub = -aniso * sec.cos2_sub;
      solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      w = solver.eigenvalues();
      v = solver.eigenvectors();
    }
    for (Eigen::Index a = 0; a < d; ++a) {
      const Eigen::Index ia = sec.index[static_cast<std::size_t>(a)];
      phases_(ia) = std::exp(-kI * w(a) * dt);
      for (Eigen::Index b = 0; b < d; ++b) vectors_(ia, sec.index[static_cast<std::size_t>(b)]) = v(a, b);
    }
    if (!with_slope) continue;
    // dH/ds = -C in the eigenbasis, weighted by divided differences of exp(-i x dt).
    const Eigen::MatrixXd k = -(v.transpose() * sec.coupling * v);
    for (Eigen::Index a = 0; a < d; ++a) {
      const Eigen::Index ia = sec.index[static_cast<std::size_t>(a)];
      for (Eigen::Index b = 0; b < d; ++b) {
        const Eigen::Index ib = sec.index[static_cast<std::size_t>(b)];
        const double mid = 0.5 * (w(a) + w(b));
        const double half = 0.5 * (w(a) - w(b)) * dt;
        const cplx g = std::exp(-kI * mid * dt) * (-kI * dt) * sinc(half);
        slope_core_(ia, ib) = g * k(a, b);
      }
    }
  }
}

void StepKernel::apply(Eigen::VectorXcd& v) const {
  Eigen::VectorXcd c = vectors_.transpose() * v;
  c.array() *= phases_.array();
  v.noalias() = vectors_ * c;
}

void StepKernel::apply_adjoint(Eigen::VectorXcd& v) const {
  Eigen::VectorXcd c = vectors_.transpose() * v;
  c.array() *= phases_.array().conjugate();
  v.noalias() = vectors_ * c;
}

void StepKernel::conjugate(Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd t = vectors_.transpose() * rho * vectors_;
  t = phases_.asDiagonal() * t * phases_.conjugate().asDiagonal();
  rho.noalias() = vectors_ * t * vectors_.transpose();
}

void StepKernel::conjugate_adjoint(Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd t = vectors_.transpose() * rho * vectors_;
  t = phases_.conjugate().asDiagonal() * t * phases_.asDiagonal();
  rho.noalias() = vectors_ * t * vectors_.transpose();
}

cplx StepKernel::amplitude(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const {
  const Eigen::VectorXcd b = vectors_.transpose() * bra;
  const Eigen::VectorXcd k = vectors_.transpose() * ket;
  return (b.conjugate().array() * phases_.array() * k.array()).sum();
}

cplx StepKernel::amplitude_slope(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const {
  const Eigen::VectorXcd b = vectors_.transpose() * bra;
  const Eigen::VectorXcd k = vectors_.transpose() * ket;
  return b.dot(slope_core_ * k);
}

double StepKernel::trace_product(const Eigen::MatrixXcd& chi, const Eigen::MatrixXcd& rho) const {
  const Eigen::MatrixXcd c = vectors_.transpose() * chi * vectors_;
  const Eigen::MatrixXcd r = vectors_.transpose() * rho * vectors_;
  // sum_ab c_ba phi_a r_ab conj(phi_b)
  const Eigen::MatrixXcd pr = phases_.asDiagonal() * r * phases_.conjugate().asDiagonal();
  return (c.transpose().array() * pr.array()).sum().real();
}

double StepKernel::trace_product_slope(const Eigen::MatrixXcd& chi, const Eigen::MatrixXcd& rho) const {
  const Eigen::MatrixXcd c = vectors_.transpose() * chi * vectors_;
  const Eigen::MatrixXcd r = vectors_.transpose() * rho * vectors_;
  const Eigen::MatrixXcd x = slope_core_ * r * phases_.conjugate().asDiagonal();
  return 2.0 * (c.transpose().array() * x.array()).sum().real();
}

Eigen::MatrixXcd StepKernel::unitary() const {
  const Eigen::MatrixXcd v = vectors_.cast<cplx>();
  return v * phases_.asDiagonal() * v.adjoint();
}

PureTrajectory propagate_forward(const Eigen::VectorXcd& psi0, const FieldGrid& field, const RotorOperators& ops,
                                 const MoleculeParams& params) {
  validate(field);
  const BlockGenerator gen(ops, params);
  const double dt = field.grid.dt();
  PureTrajectory traj{field.grid, {}};
  traj.states.reserve(field.size());
  traj.states.push_back(psi0);
  Eigen::VectorXcd psi = psi0;
  for (std::size_t n = 0; n < field.grid.n_steps; ++n) {
    StepKernel(gen, field[n], dt).apply(psi);
    traj.states.push_back(psi);
  }
  return traj;
}

PureTrajectory propagate_backward(const Eigen::VectorXcd& chi_final, const FieldGrid& field,
                                  const RotorOperators& ops, const MoleculeParams& params) {
  validate(field);
  const BlockGenerator gen(ops, params);
  const double dt = field.grid.dt();
  const std::size_t steps = field.grid.n_steps;
  PureTrajectory traj{field.grid, std::vector<Eigen::VectorXcd>(field.size())};
  traj.states[steps] = chi_final;
  Eigen::VectorXcd chi = chi_final;
  for (std::size_t n = steps; n-- > 0;) {
    StepKernel(gen, field[n], dt).apply_adjoint(chi);
    traj.states[n] = chi;
  }
  return traj;
}

DensityTrajectory propagate_density(const Eigen::MatrixXcd& rho0, const FieldGrid& field, const RotorOperators& ops,
                                    const MoleculeParams& params) {
  validate(field);
  const BlockGenerator gen(ops, params);
  const double dt = field.grid.dt();
  DensityTrajectory traj{field.grid, {}};
  traj.states.reserve(field.size());
  traj.states.push_back(rho0);
  Eigen::MatrixXcd rho = rho0;
  for (std::size_t n = 0; n < field.grid.n_steps; ++n) {
    StepKernel(gen, field[n], dt).conjugate(rho);
    traj.states.push_back(rho);
  }
  return traj;
}

double expectation_cos2(const Eigen::VectorXcd& state, const RotorOperators& ops) {
  return state.dot(ops.cos2.cast<cplx>() * state).real();
}

double expectation_cos2(const Eigen::MatrixXcd& rho, const RotorOperators& ops) {
  return (rho * ops.cos2.cast<cplx>()).trace().real();
}

double top_level_population(const Eigen::VectorXcd& psi, const RotorBasis& basis) {
  double sum = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    if (basis.j(i) >= basis.j_max() - 1) sum += std::norm(psi(static_cast<Eigen::Index>(i)));
  }
  return sum;
}

double top_level_population(const Eigen::MatrixXcd& rho, const RotorBasis& basis) {
  double sum = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (basis.j(i) >= basis.j_max() - 1) sum += rho(k, k).real();
  }
  return sum;
}

double top_level_population(const PureTrajectory& traj, const RotorBasis& basis) {
  double worst = 0.0;
  for (const auto& psi : traj.states) worst = std::max(worst, top_level_population(psi, basis));
  return worst;
}

double top_level_population(const DensityTrajectory& traj, const RotorBasis& basis) {
  double worst = 0.0;
  for (const auto& rho : traj.states) worst = std::max(worst, top_level_population(rho, basis));
  return worst;
}

void check_truncation(double top_population, double bound) {
  if (top_population > bound) {
    throw BasisTooSmall("basis too small: population " + std::to_string(top_population) +
                        " in the two highest rotational levels exceeds " + std::to_string(bound) +
                        "; increase j_max");
  }
}

}  // namespace specoct
