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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "specoct/rotor.hpp"

namespace specoct {

using cplx = std::complex<double>;

/// Uniform grid t_n = n * dt, n = 0 ... n_steps, over [0, t_f] (atomic units).
struct TimeGrid {
  double t_final = 0.0;
  std::size_t n_steps = 0;

  double dt() const { return t_final / static_cast<double>(n_steps); }
  double time(std::size_t n) const {
    return n == n_steps ? t_final : t_final * static_cast<double>(n) / static_cast<double>(n_steps);
  }
  std::size_t size() const { return n_steps + 1; }
};

void validate(const TimeGrid& grid);

/// Step count giving dt close to 1 fs, rounded up to a power of two.
std::size_t default_n_steps(double t_final);

/// Control envelope sampled on a time grid. Within step n the field is held at
/// values[n] (left endpoint).
struct FieldGrid {
  TimeGrid grid;
  std::vector<double> values;

  FieldGrid() = default;
  explicit FieldGrid(const TimeGrid& g) : grid(g), values(g.size(), 0.0) {}
  FieldGrid(const TimeGrid& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t n) const { return values[n]; }
  double& operator[](std::size_t n) { return values[n]; }
};

/// Throws InvalidField if the field has the wrong length or non-finite samples.
void validate(const FieldGrid& field);

/// Gaussian envelope whose intensity (E^2) profile has the given FWHM.
FieldGrid gaussian_field(const TimeGrid& grid, double amplitude, double fwhm, double center);

/// Snapshots at every grid point; states[n] is the state at t_n.
template <class State>
struct Trajectory {
  TimeGrid grid;
  std::vector<State> states;

  const State& at(std::size_t n) const { return states[n]; }
  const State& back() const { return states.back(); }
};

using PureTrajectory = Trajectory<Eigen::VectorXcd>;
using DensityTrajectory = Trajectory<Eigen::MatrixXcd>;

/// exp(-i H dt) psi through an eigendecomposition of the real symmetric H.
Eigen::VectorXcd step_pure(const Eigen::VectorXcd& state, const Eigen::MatrixXd& h, double dt);

/// U rho U^dagger with U = exp(-i H dt).
Eigen::MatrixXcd step_density(const Eigen::MatrixXcd& rho, const Eigen::MatrixXd& h, double dt);

/// The field-independent pieces of H on one block, split by j-parity so every
/// sector is tridiagonal.
class BlockGenerator {
 public:
  BlockGenerator(const RotorOperators& ops, const MoleculeParams& params);

  std::size_t dim() const { return dim_; }
  const RotorOperators& operators() const { return ops_; }
  const MoleculeParams& params() const { return params_; }

 private:
  friend class StepKernel;
  struct Sector {
    std::vector<Eigen::Index> index;  // positions inside the block
    Eigen::VectorXd rotor;            // B j(j+1)
    Eigen::VectorXd cos2_diag;
    Eigen::VectorXd cos2_sub;         // couples consecutive same-parity states
    Eigen::MatrixXd coupling;         // (delta_alpha cos2 + alpha_perp) / 4 on the sector
  };
  RotorOperators ops_;
  MoleculeParams params_;
  std::size_t dim_;
  std::vector<Sector> sectors_;
};

/// Propagator exp(-i H(e) dt) for one field value, held in eigen-form so that
/// the derivative with respect to s = e^2 is also available.
class StepKernel {
 public:
  /// Without `with_slope` the *_slope methods must not be called.
  StepKernel(const BlockGenerator& gen, double e_value, double dt, bool with_slope = true);

  bool has_slope() const { return slope_core_.size() > 0; }

  void apply(Eigen::VectorXcd& v) const;
  void apply_adjoint(Eigen::VectorXcd& v) const;
  void conjugate(Eigen::MatrixXcd& rho) const;          // rho <- U rho U^dagger
  void conjugate_adjoint(Eigen::MatrixXcd& rho) const;  // rho <- U^dagger rho U

  /// <bra| U |ket>
  cplx amplitude(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const;
  /// d/ds <bra| U(s) |ket>
  cplx amplitude_slope(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const;
  /// Re Tr(chi U rho U^dagger)
  double trace_product(const Eigen::MatrixXcd& chi, const Eigen::MatrixXcd& rho) const;
  /// d/ds Tr(chi U(s) rho U(s)^dagger)
  double trace_product_slope(const Eigen::MatrixXcd& chi, const Eigen::MatrixXcd& rho) const;

  Eigen::MatrixXcd unitary() const;

 private:
  Eigen::MatrixXd vectors_;      // block-structured real eigenvectors
  Eigen::VectorXcd phases_;      // exp(-i w dt)
  Eigen::MatrixXcd slope_core_;  // divided differences times V^T (-C) V
};

PureTrajectory propagate_forward(const Eigen::VectorXcd& psi0, const FieldGrid& field, const RotorOperators& ops,
                                 const MoleculeParams& params);

/// Backward propagation from chi(t_f); states[n] holds chi(t_n).
PureTrajectory propagate_backward(const Eigen::VectorXcd& chi_final, const FieldGrid& field,
                                  const RotorOperators& ops, const MoleculeParams& params);

DensityTrajectory propagate_density(const Eigen::MatrixXcd& rho0, const FieldGrid& field, const RotorOperators& ops,
                                    const MoleculeParams& params);

double expectation_cos2(const Eigen::VectorXcd& state, const RotorOperators& ops);
double expectation_cos2(const Eigen::MatrixXcd& rho, const RotorOperators& ops);

/// Population in the two highest rotational levels (j >= j_max - 1).
double top_level_population(const Eigen::VectorXcd& psi, const RotorBasis& basis);
double top_level_population(const Eigen::MatrixXcd& rho, const RotorBasis& basis);

/// Largest such population along a trajectory.
double top_level_population(const PureTrajectory& traj, const RotorBasis& basis);
double top_level_population(const DensityTrajectory& traj, const RotorBasis& basis);

/// Throws BasisTooSmall when the top-two-level population exceeds the bound.
void check_truncation(double top_population, double bound = 1e-6);

}  // namespace specoct
