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
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "specoct/propagator.hpp"
#include "specoct/rotor.hpp"

namespace specoct {

/// Density matrix split into m-blocks; blocks[m] lives on RotorBasis(j_max, m).
struct ThermalState {
  double temperature = 0.0;  // kelvin
  int j_max = 0;
  std::map<int, Eigen::MatrixXcd> blocks;
  double dropped = 0.0;  // Boltzmann weight outside the retained (j, m) states

  double trace() const;
};

/// Boltzmann populations exp(-B j(j+1) / k T) on every retained |j, m> with
/// |m| <= m_max, normalized over the retained states. T = 0 gives |0,0><0,0|.
ThermalState boltzmann_init(double temperature, int j_max, int m_max, const MoleculeParams& params);

struct ThermalTarget {
  std::map<int, Eigen::MatrixXcd> blocks;  // supported on j <= j_opt
  double purity = 0.0;                     // sum_m Tr(rho_opt,m^2)
  bool degenerate = false;                 // projected cos^2 had coincident eigenvalues
};

/// Per m-block and j-parity, the populations of `initial` in descending order
/// are placed on the eigenvectors of cos^2 projected onto j <= j_opt, by
/// descending eigenvalue.
ThermalTarget thermal_target(const ThermalState& initial, const TargetSpec& spec);
ThermalTarget thermal_target(double temperature, const TargetSpec& spec, int j_max, const MoleculeParams& params);

/// sum_m Tr(rho_m rho_opt,m) / Tr(rho_opt^2).
double thermal_projection(const ThermalState& rho, const ThermalTarget& target);

/// sum_m -i Tr(chi_m [C, rho_m]) with C = (delta_alpha cos^2 + alpha_perp) / 4,
/// so that d/dt sum_m Tr(chi_m rho_m) = alpha (E_ref^2 - E^2).
double thermal_alpha(const ThermalState& rho, const ThermalState& chi, const MoleculeParams& params);

double expectation_cos2(const ThermalState& rho);

/// Propagates every m-block under the same field.
ThermalState propagate_thermal(const ThermalState& rho, const FieldGrid& field, const MoleculeParams& params);

/// Thermal control problem. Internally the state is held on (m >= 0, parity)
/// sectors; the -m blocks equal the +m ones and enter with weight 2.
class ThermalModel {
 public:
  using State = std::vector<Eigen::MatrixXcd>;
  using Kernel = std::vector<StepKernel>;

  ThermalModel(const MoleculeParams& params, int j_max, double temperature, const TargetSpec& spec = {});

  const ThermalState& initial() const { return initial_; }
  const ThermalTarget& target() const { return target_; }
  std::size_t sectors() const { return sectors_.size(); }

  State initial_state() const;
  State adjoint_final() const;
  Kernel kernel(double e, double dt, bool with_slope = false) const;
  void advance(const Kernel& k, State& s) const;
  void retreat(const Kernel& k, State& s) const;

  double overlap(const State& chi, const State& rho) const;
  double overlap_after(const Kernel& k, const State& chi, const State& rho) const;
  double overlap_slope(const Kernel& k, const State& chi, const State& rho) const;
  double projection(const State& rho) const;
  double cos2(const State& rho) const;
  double top_population(const State& rho) const;
  double coupling_bound() const { return coupling_bound_; }

  /// Expands sector blocks into full +-m blocks.
  ThermalState assemble(const State& s) const;

 private:
  struct Sector {
    int m;
    double weight;
    std::vector<Eigen::Index> rows;  // positions inside the full m-block
    BlockGenerator gen;
    Eigen::MatrixXcd rho0;
    Eigen::MatrixXcd chi_final;
  };
  MoleculeParams params_;
  int j_max_;
  ThermalState initial_;
  ThermalTarget target_;
  std::vector<Sector> sectors_;
  double coupling_bound_ = 1.0;
};

}  // namespace specoct
