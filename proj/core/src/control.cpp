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
#include "specoct/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specoct/errors.hpp"
#include "specoct/units.hpp"

namespace specoct {

void validate(const CostParams& params) {
  if (!(params.lambda0 > 0.0) || !std::isfinite(params.lambda0)) throw ConfigError("cost: lambda0 must be positive");
  if (!(params.eta > 0.0) || !std::isfinite(params.eta)) throw ConfigError("cost: eta must be positive");
}

double penalty_weight(const TimeGrid& grid, std::size_t n, double lambda0) {
  if (n == 0 || n >= grid.n_steps) return std::numeric_limits<double>::infinity();
  const double s = std::sin(units::kPi * static_cast<double>(n) / static_cast<double>(grid.n_steps));
  return lambda0 / (s * s);
}

double penalty(const FieldGrid& field, const CostParams& params) {
  validate(field);
  const std::size_t last = field.grid.n_steps;
  if (field.values[0] != 0.0 || field.values[last] != 0.0) {
    throw InvalidField("field: nonzero endpoint value where lambda(t) diverges");
  }
  const double dt = field.grid.dt();
  double sum = 0.0;
  for (std::size_t n = 1; n < last; ++n) {
    const double e2 = field.values[n] * field.values[n];
    sum += penalty_weight(field.grid, n, params.lambda0) * e2 * e2;
  }
  return sum * dt;
}

double cost(const FieldGrid& field, double final_projection, const CostParams& params) {
  return final_projection - penalty(field, params);
}

double squared_distance(const FieldGrid& a, const FieldGrid& b) {
  if (a.size() != b.size()) throw InvalidField("fields differ in length");
  const std::size_t last = a.grid.n_steps;
  double sum = 0.0;
  for (std::size_t n = 0; n <= last; ++n) {
    const double d = a.values[n] - b.values[n];
    sum += (n == 0 || n == last ? 0.5 : 1.0) * d * d;
  }
  return sum * a.grid.dt();
}

double alpha_coupling(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& chi, const RotorOperators& ops,
                      const MoleculeParams& params) {
  const Eigen::VectorXcd c_psi = coupling_operator(ops, params).cast<cplx>() * psi;
  const cplx overlap = psi.dot(chi);  // <psi|chi>
  return 2.0 * (overlap * chi.dot(c_psi)).imag();
}

std::vector<double> real_cubic_roots(double a3, double a2, double a1, double a0) {
  if (a3 == 0.0) throw Error("real_cubic_roots: leading coefficient is zero");
  const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  std::vector<double> roots;
  if (disc > 0.0) {
    const double a = -std::copysign(std::cbrt(0.5 * std::abs(q) + std::sqrt(disc)), q);
    const double t = a != 0.0 ? a - p / (3.0 * a) : 0.0;
    roots.push_back(t - b / 3.0);
  } else if (p == 0.0) {
    roots.push_back(-b / 3.0);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * units::kPi * k / 3.0) - b / 3.0);
  }
  // Newton polish on the unnormalized polynomial.
  for (double& x : roots) {
    for (int it = 0; it < 8; ++it) {
      const double f = ((a3 * x + a2) * x + a1) * x + a0;
      const double df = (3.0 * a3 * x + 2.0 * a2) * x + a1;
      if (df == 0.0) break;
      const double dx = f / df;
      const double next = x - dx;
      const double fn = ((a3 * next + a2) * next + a1) * next + a0;
      if (std::abs(fn) >= std::abs(f)) break;
      x = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double update_residual(double e_new, double e_ref, double alpha, double lambda_t, double eta) {
  const double poly = e_new * e_new * e_new + e_new * e_new * e_ref + e_new * e_ref * e_ref + e_ref * e_ref * e_ref;
  return e_new - e_ref - eta * (-lambda_t * poly - alpha * (e_new + e_ref));
}

double update_field_step(double e_ref, double alpha, double lambda_t, double eta) {
  if (!(lambda_t > 0.0) || !(eta > 0.0)) throw Error("update_field_step: lambda and eta must be positive");
  const double el = eta * lambda_t;
  const double a3 = el;
  const double a2 = el * e_ref;
  const double a1 = 1.0 + el * e_ref * e_ref + eta * alpha;
  const double a0 = el * e_ref * e_ref * e_ref + eta * alpha * e_ref - e_ref;
  const auto roots = real_cubic_roots(a3, a2, a1, a0);
  if (roots.empty()) throw Error("update_field_step: no real root");
  double best = roots.front();
  for (double r : roots) {
    if (std::abs(r - e_ref) < std::abs(best - e_ref)) best = r;
  }
  return best;
}

FieldGrid combine_fields(const FieldGrid& e_new, double mu, const SpectralFilter& filter) {
  if (mu < 0.0 || mu > 1.0) throw Error("combine_fields: mu outside [0, 1]");
  if (filter.is_identity() || mu == 1.0) return e_new;
  const FieldGrid f = filter.apply_admissible(e_new);
  if (mu == 0.0) return f;
  FieldGrid out = e_new;
  for (std::size_t n = 0; n < out.size(); ++n) out.values[n] = mu * e_new.values[n] + (1.0 - mu) * f.values[n];
  return out;
}

FieldGrid combine_fields(const FieldGrid& e_new, double mu, const FilterSpec& spec) {
  return combine_fields(e_new, mu, SpectralFilter(spec, e_new.grid));
}

std::string to_string(MuStrategy s) {
  switch (s) {
    case MuStrategy::dichotomy: return "dichotomy";
    case MuStrategy::polyfit: return "polyfit";
    case MuStrategy::none: return "none";
  }
  return "?";
}

namespace {

void check_monotone(double delta_j_at_one, double tol) {
  if (delta_j_at_one < -tol) {
    throw MonotonicityViolation("monotonicity violated: Delta J(1) = " + std::to_string(delta_j_at_one));
  }
}

}  // namespace

MuChoice mu_search_dichotomy(const DeltaJFunction& delta_j, double delta_j_at_one, double tol_mu,
                             double monotonicity_tol) {
  check_monotone(delta_j_at_one, monotonicity_tol);
  MuChoice out;
  const double d0 = delta_j(0.0);
  out.evaluations = 1;
  if (d0 > 0.0) {
    out.mu = 0.0;
    out.delta_j = d0;
    return out;
  }
  out.mu = 1.0;
  out.delta_j = delta_j_at_one;
  if (!(delta_j_at_one > 0.0)) return out;

  double lo = 0.0, hi = 1.0, d_hi = delta_j_at_one;
  while (hi - lo > tol_mu) {
    const double mid = 0.5 * (lo + hi);
    const double d = delta_j(mid);
    ++out.evaluations;
    if (d > 0.0) {
      hi = mid;
      d_hi = d;
    } else {
      lo = mid;
    }
  }
  out.mu = hi;
  out.delta_j = d_hi;
  return out;
}

double polyval(const Eigen::VectorXd& coeffs, double x) {
  double v = 0.0;
  for (Eigen::Index i = coeffs.size(); i-- > 0;) v = v * x + coeffs(i);
  return v;
}

Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      a(i, j) = p;
      p *= x[static_cast<std::size_t>(i)];
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  return a.colPivHouseholderQr().solve(b);
}

MuChoice mu_search_polyfit(const DeltaJFunction& delta_j, double delta_j_at_one, const PolyfitOptions& options,
                           double monotonicity_tol) {
  check_monotone(delta_j_at_one, monotonicity_tol);
  const int ns = std::max(options.n_samples, 2);
  std::vector<double> mus(static_cast<std::size_t>(ns)), vals(static_cast<std::size_t>(ns));
  MuChoice out;
  for (int i = 0; i < ns; ++i) {
    const double mu = static_cast<double>(i) / static_cast<double>(ns - 1);
    mus[static_cast<std::size_t>(i)] = mu;
    if (i == ns - 1) {
      vals[static_cast<std::size_t>(i)] = delta_j_at_one;
    } else {
      vals[static_cast<std::size_t>(i)] = delta_j(mu);
      ++out.evaluations;
    }
  }
  const int degree = std::min(options.degree, ns - 1);
  const Eigen::VectorXd coeffs = polyfit(mus, vals, degree);

  constexpr int kScan = 4000;
  double fit_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) fit_max = std::max(fit_max, polyval(coeffs, static_cast<double>(i) / kScan));

  double mu = 1.0;
  if (fit_max > 0.0) {
    const double target = options.fraction * fit_max;
    if (polyval(coeffs, 0.0) >= target) {
      mu = 0.0;
    } else {
      for (int i = 0; i < kScan; ++i) {
        double lo = static_cast<double>(i) / kScan;
        double hi = static_cast<double>(i + 1) / kScan;
        if (polyval(coeffs, hi) < target) continue;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (polyval(coeffs, mid) < target ? lo : hi) = mid;
        }
        mu = hi;
        break;
      }
    }
  }

  auto true_delta = [&](double m) {
    for (std::size_t i = 0; i < mus.size(); ++i) {
      if (mus[i] == m) return vals[i];
    }
    ++out.evaluations;
    return delta_j(m);
  };
  double d = true_delta(mu);
  while (!(d > 0.0) && mu < 1.0) {
    mu = std::min(mu + options.step, 1.0);
    d = true_delta(mu);
  }
  out.mu = mu;
  out.delta_j = d;
  return out;
}

}  // namespace specoct
