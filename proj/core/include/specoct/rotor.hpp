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
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace specoct {

/// Linear rigid rotor: rotational constant and polarizability components, all
/// in atomic units.
struct MoleculeParams {
  double rotational_constant = 0.0;  // B (hartree)
  double alpha_parallel = 0.0;
  double alpha_perpendicular = 0.0;

  double delta_alpha() const { return alpha_parallel - alpha_perpendicular; }

  /// Builds parameters with B given in cm^-1. Throws ConfigError on invalid input.
  static MoleculeParams from_wavenumber(double b_per_cm, double alpha_par, double alpha_perp);
};

void validate(const MoleculeParams& params);

/// CO: B = 1.931 cm^-1, alpha_par = 15.65, alpha_perp = 11.73 (a.u.).
MoleculeParams carbon_monoxide();

/// Rotational period pi / B in atomic time units.
double rotational_period(const MoleculeParams& params);

enum class Parity { all, even, odd };

/// States |j, m> for fixed m, j = |m| ... j_max in ascending order. A parity
/// restriction keeps only even or odd j (cos^2 theta never mixes the two).
class RotorBasis {
 public:
  RotorBasis(int j_max, int m, Parity parity = Parity::all);

  int j_max() const { return j_max_; }
  int m() const { return m_; }
  Parity parity() const { return parity_; }
  std::size_t dim() const { return j_.size(); }
  int j(std::size_t index) const { return j_[index]; }
  const std::vector<int>& j_values() const { return j_; }
  std::optional<std::size_t> index_of(int j) const;

 private:
  int j_max_;
  int m_;
  Parity parity_;
  std::vector<int> j_;
};

struct RotorOperators {
  RotorBasis basis;
  Eigen::MatrixXd j_squared;  // diag j(j+1)
  Eigen::MatrixXd cos2;       // <j,m| cos^2 theta |j',m>

  std::size_t dim() const { return basis.dim(); }
};

struct TargetSpec {
  int j_opt = 8;
  int m = 0;
};

/// Closed-form <j,m| cos^2 theta |j',m>; nonzero only for j' - j in {0, +-2}.
double cos2_element(int j, int j_prime, int m);

RotorOperators build_operators(const RotorBasis& basis);

/// H = B J^2 - (e^2 / 4) (delta_alpha cos^2 theta + alpha_perp).
Eigen::MatrixXd hamiltonian(const RotorOperators& ops, const MoleculeParams& params, double e_value);

/// Interaction operator (delta_alpha cos^2 theta + alpha_perp) / 4, the
/// coefficient of -E^2 in the Hamiltonian.
Eigen::MatrixXd coupling_operator(const RotorOperators& ops, const MoleculeParams& params);

/// Number of basis states of the m-block inside the target subspace H_{j_opt}.
std::size_t target_subspace_dim(const RotorBasis& basis, int j_opt);

/// cos^2 theta restricted to the target subspace of the basis.
Eigen::MatrixXd projected_cos2(const RotorOperators& ops, int j_opt);

/// Unit eigenvector of maximal eigenvalue of cos^2 theta projected onto
/// H_{j_opt}, embedded in the full basis. The largest-magnitude component is
/// made real positive. Throws IllPosedTarget when the top eigenvalue is
/// degenerate.
Eigen::VectorXcd target_pure(const RotorOperators& ops, const TargetSpec& spec);

}  // namespace specoct
