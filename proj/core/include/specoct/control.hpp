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
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specoct/propagator.hpp"
#include "specoct/rotor.hpp"
#include "specoct/spectral.hpp"

namespace specoct {

/// Penalty lambda(t) = lambda0 / sin^2(pi t / t_f) and update step eta.
struct CostParams {
  double lambda0 = 1.0;
  double eta = 1.0;
};

void validate(const CostParams& params);

/// lambda(t_n); infinite at the two endpoints.
double penalty_weight(const TimeGrid& grid, std::size_t n, double lambda0);

/// Trapezoidal integral of lambda(t) E(t)^4 over interior samples. Throws
/// InvalidField when the field does not vanish at the endpoints.
double penalty(const FieldGrid& field, const CostParams& params);

/// J = projection - penalty.
double cost(const FieldGrid& field, double final_projection, const CostParams& params);

/// Trapezoidal integral of (a - b)^2.
double squared_distance(const FieldGrid& a, const FieldGrid& b);

/// Rate alpha = 2 Im[<psi|chi> <chi| (delta_alpha cos^2 + alpha_perp)/4 |psi>]
/// with dP/dt = alpha (E_ref^2 - E^2) for P = |<chi|psi>|^2.
double alpha_coupling(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& chi, const RotorOperators& ops,
                      const MoleculeParams& params);

/// Real roots of a3 x^3 + a2 x^2 + a1 x + a0 (a3 != 0), ascending.
std::vector<double> real_cubic_roots(double a3, double a2, double a1, double a0);

/// Solves E - E_ref = eta [-lambda (E^3 + E^2 E_ref + E E_ref^2 + E_ref^3) - alpha (E + E_ref)]
/// for the real root closest to E_ref.
double update_field_step(double e_ref, double alpha, double lambda_t, double eta);

/// Residual of the defining equation above.
double update_residual(double e_new, double e_ref, double alpha, double lambda_t, double eta);

/// mu E + (1 - mu) F(E), with F the endpoint-pinned projection of the filter.
FieldGrid combine_fields(const FieldGrid& e_new, double mu, const SpectralFilter& filter);
FieldGrid combine_fields(const FieldGrid& e_new, double mu, const FilterSpec& spec);

enum class MuStrategy { dichotomy, polyfit, none };

std::string to_string(MuStrategy s);

struct MuChoice {
  double mu = 1.0;
  double delta_j = 0.0;  // true Delta J at the returned mu
  int evaluations = 0;   // Delta J evaluations spent (excluding mu = 1)
};

using DeltaJFunction = std::function<double(double)>;

/// Bisection on the sign of Delta J(mu). Returns mu = 0 when Delta J(0) > 0,
/// otherwise the positive end of a bracket of width <= tol_mu around the zero.
/// `delta_j_at_one` is the already known Delta J(1).
MuChoice mu_search_dichotomy(const DeltaJFunction& delta_j, double delta_j_at_one, double tol_mu = 0.01,
                             double monotonicity_tol = 1e-10);

struct PolyfitOptions {
  int n_samples = 10;
  double fraction = 0.01;
  int degree = 4;
  double step = 0.01;  // upward step when the fit is optimistic
};

/// Least-squares polynomial fit of Delta J on equally spaced mu samples; the
/// smallest mu where the fit reaches fraction * max(fit) is returned, stepped
/// upward until the true Delta J is positive.
MuChoice mu_search_polyfit(const DeltaJFunction& delta_j, double delta_j_at_one, const PolyfitOptions& options = {},
                           double monotonicity_tol = 1e-10);

/// Evaluates a polynomial with ascending coefficients.
double polyval(const Eigen::VectorXd& coeffs, double x);

/// Ascending least-squares coefficients.
Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

struct IterationRecord {
  int k = 0;
  double cost = 0.0;
  double projection = 0.0;
  double penalty = 0.0;
  double mu = 1.0;
  double out_of_band = 0.0;
};

}  // namespace specoct
