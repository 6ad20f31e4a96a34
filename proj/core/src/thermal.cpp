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
#include "specoct/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specoct/errors.hpp"
#include "specoct/units.hpp"

namespace specoct {

namespace {

constexpr cplx kI{0.0, 1.0};

RotorOperators block_operators(int j_max, int m) { return build_operators(RotorBasis(j_max, m)); }

}  // namespace

double ThermalState::trace() const {
  double t = 0.0;
  for (const auto& [m, b] : blocks) t += b.trace().real();
  return t;
}

ThermalState boltzmann_init(double temperature, int j_max, int m_max, const MoleculeParams& params) {
  validate(params);
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ConfigError("temperature must be >= 0");
  if (j_max < 0 || m_max < 0) throw ConfigError("j_max and m_max must be nonnegative");
  m_max = std::min(m_max, j_max);

  ThermalState st;
  st.temperature = temperature;
  st.j_max = j_max;
  for (int m = -m_max; m <= m_max; ++m) {
    const auto dim = static_cast<Eigen::Index>(j_max - std::abs(m) + 1);
    st.blocks.emplace(m, Eigen::MatrixXcd::Zero(dim, dim));
  }
  if (temperature == 0.0) {
    st.blocks.at(0)(0, 0) = 1.0;
    return st;
  }

  const double kt = units::kelvin_to_hartree(temperature);
  const double b = params.rotational_constant;
  auto weight = [&](int j) { return std::exp(-b * j * (j + 1) / kt); };

  // Full partition function, summed until the tail is negligible.
  double z = 0.0;
  for (int j = 0;; ++j) {
    const double term = (2.0 * j + 1.0) * weight(j);
    z += term;
    if (j > j_max && term < 1e-18 * z) break;
    if (j > 100000) break;
  }
  double kept = 0.0;
  for (auto& [m, block] : st.blocks) {
    for (int j = std::abs(m); j <= j_max; ++j) {
      const double w = weight(j);
      block(j - std::abs(m), j - std::abs(m)) = w;
      kept += w;
    }
  }
  for (auto& [m, block] : st.blocks) block /= kept;
  st.dropped = std::max(0.0, 1.0 - kept / z);
  return st;
}

ThermalTarget thermal_target(const ThermalState& initial, const TargetSpec& spec) {
  if (spec.j_opt < 0 || spec.j_opt > initial.j_max) throw ConfigError("target: j_opt must lie in [0, j_max]");
  ThermalTarget target;
  for (const auto& [m, rho] : initial.blocks) {
    const auto dim = rho.rows();
    Eigen::MatrixXcd opt = Eigen::MatrixXcd::Zero(dim, dim);
    const int am = std::abs(m);
    const RotorOperators ops = block_operators(initial.j_max, m);
    // The field never couples even and odd j, so each parity sector is
    // rearranged on its own.
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<Eigen::Index> rows, opt_rows;
      for (int j = am; j <= initial.j_max; ++j) {
        if (j % 2 != parity) continue;
        rows.push_back(j - am);
        if (j <= spec.j_opt) opt_rows.push_back(j - am);
      }
      if (rows.empty() || opt_rows.empty()) continue;
      const auto d = static_cast<Eigen::Index>(rows.size());
      const auto d_opt = static_cast<Eigen::Index>(opt_rows.size());
      Eigen::MatrixXcd sub(d, d);
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) sub(a, b) = rho(rows[a], rows[b]);
      Eigen::MatrixXd c(d_opt, d_opt);
      for (Eigen::Index a = 0; a < d_opt; ++a)
        for (Eigen::Index b = 0; b < d_opt; ++b) c(a, b) = ops.cos2(opt_rows[a], opt_rows[b]);

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
      const Eigen::VectorXd ev = eig.eigenvalues();  // ascending
      for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) {
        if (ev(i + 1) - ev(i) < 1e-10) target.degenerate = true;
      }
      const Eigen::VectorXd p = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sub).eigenvalues();  // ascending
      for (Eigen::Index i = 0; i < d_opt; ++i) {
        const double w = p(d - 1 - i);
        if (w == 0.0) continue;
        const Eigen::VectorXd v = eig.eigenvectors().col(d_opt - 1 - i);
        for (Eigen::Index a = 0; a < d_opt; ++a)
          for (Eigen::Index b = 0; b < d_opt; ++b) opt(opt_rows[a], opt_rows[b]) += w * v(a) * v(b);
      }
    }
    target.purity += (opt * opt).trace().real();
    target.blocks.emplace(m, std::move(opt));
  }
  if (!(target.purity > 0.0)) throw IllPosedTarget("thermal target is empty");
  return target;
}

ThermalTarget thermal_target(double temperature, const TargetSpec& spec, int j_max, const MoleculeParams& params) {
  return thermal_target(boltzmann_init(temperature, j_max, spec.j_opt, params), spec);
}

double thermal_projection(const ThermalState& rho, const ThermalTarget& target) {
  double sum = 0.0;
  for (const auto& [m, block] : rho.blocks) {
    const auto it = target.blocks.find(m);
    if (it == target.blocks.end()) continue;
    sum += (block * it->second).trace().real();
  }
  return sum / target.purity;
}

double thermal_alpha(const ThermalState& rho, const ThermalState& chi, const MoleculeParams& params) {
  double sum = 0.0;
  for (const auto& [m, r] : rho.blocks) {
    const auto it = chi.blocks.find(m);
    if (it == chi.blocks.end()) continue;
    const Eigen::MatrixXcd c = coupling_operator(block_operators(rho.j_max, m), params).cast<cplx>();
    sum += (-kI * (it->second * (c * r - r * c)).trace()).real();
  }
  return sum;
}

double expectation_cos2(const ThermalState& rho) {
  double sum = 0.0;
  for (const auto& [m, block] : rho.blocks) sum += expectation_cos2(block, block_operators(rho.j_max, m));
  return sum;
}

ThermalState propagate_thermal(const ThermalState& rho, const FieldGrid& field, const MoleculeParams& params) {
  validate(field);
  ThermalState out = rho;
  const double dt = field.grid.dt();
  for (auto& [m, block] : out.blocks) {
    const BlockGenerator gen(block_operators(rho.j_max, m), params);
    for (std::size_t n = 0; n < field.grid.n_steps; ++n) StepKernel(gen, field[n], dt, false).conjugate(block);
  }
  return out;
}

ThermalModel::ThermalModel(const MoleculeParams& params, int j_max, double temperature, const TargetSpec& spec)
    : params_(params),
      j_max_(j_max),
      initial_(boltzmann_init(temperature, j_max, spec.j_opt, params)),
      target_(thermal_target(initial_, spec)) {
  double max_pop = 0.0;
  for (const auto& [m, block] : initial_.blocks) {
    if (m < 0) continue;
    for (Parity parity : {Parity::even, Parity::odd}) {
      const RotorBasis basis(j_max, m, parity);
      if (basis.dim() == 0) continue;
      std::vector<Eigen::Index> rows;
      for (int j : basis.j_values()) rows.push_back(j - m);
      const auto d = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd rho0(d, d), opt(d, d);
      const Eigen::MatrixXcd& target_block = target_.blocks.at(m);
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          rho0(a, b) = block(rows[a], rows[b]);
          opt(a, b) = target_block(rows[a], rows[b]);
        }
      }
      if (rho0.norm() == 0.0 && opt.norm() == 0.0) continue;  // stays zero forever
      max_pop = std::max(max_pop, rho0.diagonal().real().maxCoeff());
      sectors_.push_back(Sector{m, m == 0 ? 1.0 : 2.0, std::move(rows), BlockGenerator(build_operators(basis), params),
                                std::move(rho0), opt / target_.purity});
    }
  }
  coupling_bound_ = 0.5 * std::max(params.alpha_parallel, params.alpha_perpendicular) *
                    std::max(max_pop / target_.purity, 1e-300);
}

ThermalModel::State ThermalModel::initial_state() const {
  State s;
  for (const auto& sec : sectors_) s.push_back(sec.rho0);
  return s;
}

ThermalModel::State ThermalModel::adjoint_final() const {
  State s;
  for (const auto& sec : sectors_) s.push_back(sec.chi_final);
  return s;
}

ThermalModel::Kernel ThermalModel::kernel(double e, double dt, bool with_slope) const {
  Kernel k;
  k.reserve(sectors_.size());
  for (const auto& sec : sectors_) k.emplace_back(sec.gen, e, dt, with_slope);
  return k;
}

void ThermalModel::advance(const Kernel& k, State& s) const {
  for (std::size_t i = 0; i < sectors_.size(); ++i) k[i].conjugate(s[i]);
}

void ThermalModel::retreat(const Kernel& k, State& s) const {
  for (std::size_t i = 0; i < sectors_.size(); ++i) k[i].conjugate_adjoint(s[i]);
}

double ThermalModel::overlap(const State& chi, const State& rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < sectors_.size(); ++i) {
    sum += sectors_[i].weight * (chi[i].transpose().array() * rho[i].array()).sum().real();
  }
  return sum;
}

double ThermalModel::overlap_after(const Kernel& k, const State& chi, const State& rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < sectors_.size(); ++i) sum += sectors_[i].weight * k[i].trace_product(chi[i], rho[i]);
  return sum;
}

double ThermalModel::overlap_slope(const Kernel& k, const State& chi, const State& rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < sectors_.size(); ++i) {
    sum += sectors_[i].weight * k[i].trace_product_slope(chi[i], rho[i]);
  }
  return sum;
}

double ThermalModel::projection(const State& rho) const { return overlap(adjoint_final(), rho); }

double ThermalModel::cos2(const State& rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < sectors_.size(); ++i) {
    sum += sectors_[i].weight * expectation_cos2(rho[i], sectors_[i].gen.operators());
  }
  return sum;
}

double ThermalModel::top_population(const State& rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < sectors_.size(); ++i) {
    sum += sectors_[i].weight * top_level_population(rho[i], sectors_[i].gen.operators().basis);
  }
  return sum;
}

ThermalState ThermalModel::assemble(const State& s) const {
  ThermalState out = initial_;
  for (auto& [m, block] : out.blocks) block.setZero();
  for (std::size_t i = 0; i < sectors_.size(); ++i) {
    const auto& sec = sectors_[i];
    for (int sign : {1, -1}) {
      if (sec.m == 0 && sign < 0) continue;
      auto& block = out.blocks.at(sign * sec.m);
      const auto d = static_cast<Eigen::Index>(sec.rows.size());
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) block(sec.rows[a], sec.rows[b]) = s[i](a, b);
      }
    }
  }
  return out;
}

}  // namespace specoct
