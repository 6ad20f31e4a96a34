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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specoct/control.hpp"
#include "specoct/errors.hpp"
#include "specoct/propagator.hpp"
#include "specoct/rotor.hpp"
#include "specoct/spectral.hpp"

namespace specoct {

/// What the optimizer needs from a quantum system. The "overlap" P(chi, psi)
/// is the quantity whose value at t_f is the projection on the target and
/// which is conserved when chi and psi evolve under the same field.
template <class M>
concept ControlModel = requires(const M& m, const typename M::State& s, typename M::State& ms,
                                const typename M::Kernel& k, double x) {
  { m.initial_state() } -> std::convertible_to<typename M::State>;
  { m.adjoint_final() } -> std::convertible_to<typename M::State>;
  { m.kernel(x, x, true) } -> std::convertible_to<typename M::Kernel>;  // true: slopes available
  m.advance(k, ms);
  m.retreat(k, ms);
  { m.overlap(s, s) } -> std::convertible_to<double>;
  { m.overlap_after(k, s, s) } -> std::convertible_to<double>;  // P(chi, U psi)
  { m.overlap_slope(k, s, s) } -> std::convertible_to<double>;  // d/d(e^2) P(chi, U psi)
  { m.projection(s) } -> std::convertible_to<double>;
  { m.cos2(s) } -> std::convertible_to<double>;
  { m.top_population(s) } -> std::convertible_to<double>;
  { m.coupling_bound() } -> std::convertible_to<double>;  // bound on |dP/d(e^2)| per unit time
};

/// Pure state in one m-block, P = |<chi|psi>|^2.
class PureModel {
 public:
  using State = Eigen::VectorXcd;
  using Kernel = StepKernel;

  PureModel(const RotorOperators& ops, const MoleculeParams& params, Eigen::VectorXcd initial,
            Eigen::VectorXcd target)
      : gen_(ops, params), initial_(std::move(initial)), target_(std::move(target)) {
    if (static_cast<std::size_t>(initial_.size()) != ops.dim() ||
        static_cast<std::size_t>(target_.size()) != ops.dim()) {
      throw ConfigError("pure model: state dimension does not match the basis");
    }
  }

  /// |j=0, m=0> towards target_pure(spec) on the even-j, m = 0 basis.
  static PureModel ground_state(int j_max, const MoleculeParams& params, const TargetSpec& spec = {}) {
    const RotorOperators ops = build_operators(RotorBasis(j_max, spec.m, Parity::even));
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ops.dim()));
    psi0(0) = 1.0;
    return PureModel(ops, params, psi0, target_pure(ops, spec));
  }

  const RotorOperators& operators() const { return gen_.operators(); }
  const MoleculeParams& params() const { return gen_.params(); }
  const Eigen::VectorXcd& target() const { return target_; }

  State initial_state() const { return initial_; }
  State adjoint_final() const { return target_; }
  Kernel kernel(double e, double dt, bool with_slope = false) const { return StepKernel(gen_, e, dt, with_slope); }
  void advance(const Kernel& k, State& s) const { k.apply(s); }
  void retreat(const Kernel& k, State& s) const { k.apply_adjoint(s); }

  double overlap(const State& chi, const State& psi) const { return std::norm(chi.dot(psi)); }
  double overlap_after(const Kernel& k, const State& chi, const State& psi) const {
    return std::norm(k.amplitude(chi, psi));
  }
  double overlap_slope(const Kernel& k, const State& chi, const State& psi) const {
    return 2.0 * (std::conj(k.amplitude(chi, psi)) * k.amplitude_slope(chi, psi)).real();
  }
  double projection(const State& psi) const { return std::norm(target_.dot(psi)); }
  double cos2(const State& psi) const { return expectation_cos2(psi, gen_.operators()); }
  double top_population(const State& psi) const { return top_level_population(psi, gen_.operators().basis); }
  double coupling_bound() const { return 0.5 * std::max(params().alpha_parallel, params().alpha_perpendicular); }

 private:
  BlockGenerator gen_;
  Eigen::VectorXcd initial_;
  Eigen::VectorXcd target_;
};

struct OptimizerOptions {
  CostParams cost;
  FilterSpec filter;
  MuStrategy mu_strategy = MuStrategy::dichotomy;
  double mu_tolerance = 0.01;
  PolyfitOptions polyfit;
  int max_iters = 100;
  double stop_delta = 1e-10;  // convergence when Delta J < stop_delta ...
  int stop_count = 10;        // ... this many times in a row
  double truncation_bound = 1e-6;
  double monotonicity_tol = 1e-10;
};

void validate(const OptimizerOptions& options);

/// One unfiltered monotonic update E_{k+1} computed against a reference field.
struct SweepResult {
  FieldGrid field;
  double projection = 0.0;
  double penalty = 0.0;
  double cost = 0.0;
  double predicted_gain = 0.0;  // (1/eta) * sum dt (E_{k+1} - E_ref)^2
  double max_cubic_residual = 0.0;
  double top_population = 0.0;
  std::size_t fallbacks = 0;    // steps where E_{k+1} = E_ref was kept
};

/// Cost of one field, from a forward propagation.
struct Evaluation {
  double projection = 0.0;
  double penalty = 0.0;
  double cost = 0.0;
  double top_population = 0.0;
};

struct OptimizationResult {
  std::vector<IterationRecord> history;  // record 0 is the trial field
  FieldGrid field;                       // last accepted (filtered) field
  FieldGrid unfiltered;                  // last E_{k+1} before combination
  bool converged = false;
  bool aborted = false;
  std::string diagnostic;
  double max_cubic_residual = 0.0;
  double max_identity_residual = 0.0;  // |Delta J(1) - predicted gain| over iterations
  double top_population = 0.0;
  std::size_t fallbacks = 0;
};

template <ControlModel Model>
class Optimizer {
 public:
  using State = typename Model::State;
  using Kernel = typename Model::Kernel;

  struct Backward {
    std::vector<State> states;    // chi(t_n)
    std::vector<Kernel> kernels;  // step n under the reference field
  };

  Optimizer(Model model, OptimizerOptions options) : model_(std::move(model)), options_(std::move(options)) {
    validate(options_);
  }

  const Model& model() const { return model_; }
  const OptimizerOptions& options() const { return options_; }

  Evaluation evaluate(const FieldGrid& field) const {
    const double dt = field.grid.dt();
    State psi = model_.initial_state();
    Evaluation ev;
    ev.top_population = model_.top_population(psi);
    for (std::size_t n = 0; n < field.grid.n_steps; ++n) {
      model_.advance(model_.kernel(field[n], dt), psi);
      ev.top_population = std::max(ev.top_population, model_.top_population(psi));
    }
    ev.projection = model_.projection(psi);
    ev.penalty = penalty(field, options_.cost);
    ev.cost = ev.projection - ev.penalty;
    return ev;
  }

  Trajectory<State> forward(const FieldGrid& field) const {
    const double dt = field.grid.dt();
    Trajectory<State> traj{field.grid, {}};
    traj.states.reserve(field.size());
    State psi = model_.initial_state();
    traj.states.push_back(psi);
    for (std::size_t n = 0; n < field.grid.n_steps; ++n) {
      model_.advance(model_.kernel(field[n], dt), psi);
      traj.states.push_back(psi);
    }
    return traj;
  }

  Backward backward(const FieldGrid& field) const {
    const std::size_t steps = field.grid.n_steps;
    const double dt = field.grid.dt();
    Backward bw;
    bw.states.resize(field.size());
    bw.kernels.reserve(steps);
    for (std::size_t n = 0; n < steps; ++n) bw.kernels.push_back(model_.kernel(field[n], dt, true));
    State chi = model_.adjoint_final();
    bw.states[steps] = chi;
    for (std::size_t n = steps; n-- > 0;) {
      model_.retreat(bw.kernels[n], chi);
      bw.states[n] = chi;
    }
    return bw;
  }

  /// Forward sweep producing E_{k+1} from the reference field and its adjoint.
  /// At every interior step the coupling is the exact per-step rate
  /// alpha = -(P(chi_{n+1}, U(E) psi_n) - P(chi_n, psi_n)) / (dt (E^2 - E_ref^2)),
  /// solved self-consistently with the cubic, so that the gain of each step is
  /// exactly dt (E - E_ref)^2 / eta.
  SweepResult sweep(const FieldGrid& reference, const Backward& bw) const {
    const TimeGrid& grid = reference.grid;
    const std::size_t steps = grid.n_steps;
    const double dt = grid.dt();
    const double eta = options_.cost.eta;
    SweepResult out;
    out.field = FieldGrid(grid);
    State psi = model_.initial_state();
    out.top_population = model_.top_population(psi);
    double gain = 0.0;

    for (std::size_t n = 0; n < steps; ++n) {
      const double e_ref = reference[n];
      double e = 0.0;
      std::optional<Kernel> local;
      if (n > 0) {
        const double lam = penalty_weight(grid, n, options_.cost.lambda0);
        const double s_ref = e_ref * e_ref;
        const double p_n = model_.overlap(bw.states[n], psi);
        const double alpha_ref = -model_.overlap_slope(bw.kernels[n], bw.states[n + 1], psi) / dt;
        StepSolution sol = solve_step(e_ref, alpha_ref, lam, dt, p_n, bw.states[n + 1], psi);
        e = sol.e;
        if (e != e_ref) {
          if (!sol.kernel) sol.kernel.emplace(model_.kernel(e, dt));
          const double p_after = model_.overlap_after(*sol.kernel, bw.states[n + 1], psi);
          const double e4 = e * e * e * e, r4 = s_ref * s_ref;
          const double step_gain = (p_after - p_n) - dt * lam * (e4 - r4);
          if (step_gain < -kStepGainFloor) {
            e = e_ref;
            ++out.fallbacks;
          } else {
            local = std::move(sol.kernel);
            out.max_cubic_residual = std::max(out.max_cubic_residual, std::abs(sol.residual));
            gain += dt * (e - e_ref) * (e - e_ref) / eta;
          }
        }
      }
      out.field[n] = e;
      if (local) {
        model_.advance(*local, psi);
      } else if (e == e_ref) {
        model_.advance(bw.kernels[n], psi);
      } else {
        model_.advance(model_.kernel(e, dt), psi);
      }
      out.top_population = std::max(out.top_population, model_.top_population(psi));
    }
    out.field[steps] = 0.0;
    out.projection = model_.projection(psi);
    out.penalty = penalty(out.field, options_.cost);
    out.cost = out.projection - out.penalty;
    out.predicted_gain = gain;
    return out;
  }

  /// Normalized residual of the stationarity condition 4 lambda E^3 + 2 alpha E = 0,
  /// with alpha the discrete rate -dP/d(E^2)/dt under the field itself.
  double stationarity_residual(const FieldGrid& field) const {
    const auto fw = forward(field);
    const auto bw = backward(field);
    const double dt = field.grid.dt();
    double num = 0.0, pen = 0.0, cpl = 0.0;
    for (std::size_t n = 1; n < field.grid.n_steps; ++n) {
      const double e = field[n];
      const double lam = penalty_weight(field.grid, n, options_.cost.lambda0);
      const double alpha = -model_.overlap_slope(bw.kernels[n], bw.states[n + 1], fw.states[n]) / dt;
      const double a = 4.0 * lam * e * e * e;
      const double b = 2.0 * alpha * e;
      num = std::max(num, std::abs(a + b));
      pen = std::max(pen, std::abs(a));
      cpl = std::max(cpl, std::abs(b));
    }
    const double den = std::max(pen, cpl);
    return den > 0.0 ? num / den : 0.0;
  }

  /// Runs the loop backward -> sweep -> mu search -> record. The trial field is
  /// pinned to zero at both endpoints.
  OptimizationResult optimize(const FieldGrid& trial) const {
    validate(trial);
    validate(trial.grid);
    const SpectralFilter filter(options_.filter, trial.grid);
    const bool unfiltered = filter.is_identity() || options_.mu_strategy == MuStrategy::none;

    OptimizationResult res;
    FieldGrid current = trial;
    current[0] = 0.0;
    current[current.grid.n_steps] = 0.0;
    res.field = current;
    res.unfiltered = current;

    Evaluation ev = evaluate(current);
    res.top_population = ev.top_population;
    res.history.push_back({0, ev.cost, ev.projection, ev.penalty, 1.0, out_of_band(filter, current)});
    try {
      check_truncation(ev.top_population, options_.truncation_bound);
    } catch (const Error& err) {
      res.aborted = true;
      res.diagnostic = err.what();
      return res;
    }

    int quiet = 0;
    for (int k = 1; k <= options_.max_iters; ++k) {
      try {
        const double j_prev = res.history.back().cost;
        const Backward bw = backward(current);
        SweepResult sw = sweep(current, bw);
        res.max_cubic_residual = std::max(res.max_cubic_residual, sw.max_cubic_residual);
        res.fallbacks += sw.fallbacks;
        const double dj_one = sw.cost - j_prev;
        res.max_identity_residual = std::max(res.max_identity_residual, std::abs(dj_one - sw.predicted_gain));
        check_truncation(sw.top_population, options_.truncation_bound);

        IterationRecord rec;
        rec.k = k;
        FieldGrid next;
        if (unfiltered) {
          if (dj_one < -options_.monotonicity_tol) {
            throw MonotonicityViolation("monotonicity violated: Delta J = " + std::to_string(dj_one));
          }
          next = sw.field;
          rec.mu = filter.is_identity() && options_.mu_strategy != MuStrategy::none ? 0.0 : 1.0;
          rec.cost = sw.cost;
          rec.projection = sw.projection;
          rec.penalty = sw.penalty;
          res.top_population = std::max(res.top_population, sw.top_population);
        } else {
          std::map<double, std::pair<FieldGrid, Evaluation>> cache;
          cache.emplace(1.0, std::make_pair(sw.field, Evaluation{sw.projection, sw.penalty, sw.cost,
                                                                 sw.top_population}));
          auto delta = [&](double mu) {
            auto it = cache.find(mu);
            if (it == cache.end()) {
              FieldGrid f = combine_fields(sw.field, mu, filter);
              const Evaluation e = evaluate(f);
              it = cache.emplace(mu, std::make_pair(std::move(f), e)).first;
            }
            return it->second.second.cost - j_prev;
          };
          const MuChoice choice =
              options_.mu_strategy == MuStrategy::polyfit
                  ? mu_search_polyfit(delta, dj_one, options_.polyfit, options_.monotonicity_tol)
                  : mu_search_dichotomy(delta, dj_one, options_.mu_tolerance, options_.monotonicity_tol);
          delta(choice.mu);
          const auto& [f, e] = cache.at(choice.mu);
          check_truncation(e.top_population, options_.truncation_bound);
          next = f;
          rec.mu = choice.mu;
          rec.cost = e.cost;
          rec.projection = e.projection;
          rec.penalty = e.penalty;
          res.top_population = std::max(res.top_population, e.top_population);
        }
        rec.out_of_band = out_of_band(filter, next);
        const double gained = rec.cost - j_prev;
        res.unfiltered = std::move(sw.field);
        current = std::move(next);
        res.field = current;
        res.history.push_back(rec);

        quiet = gained < options_.stop_delta ? quiet + 1 : 0;
        if (quiet >= options_.stop_count) {
          res.converged = true;
          break;
        }
      } catch (const Error& err) {
        res.aborted = true;
        res.diagnostic = err.what();
        break;
      }
    }
    return res;
  }

 private:
  static constexpr int kMaxFixedPoint = 30;

  struct StepSolution {
    double e = 0.0;
    double alpha = 0.0;
    double residual = 0.0;
    std::optional<Kernel> kernel;  // step kernel at e, when already built
  };

  /// Finds E with E = update_field_step(E_ref, alpha(E)), where alpha(E) is the
  /// realized rate of the step, by a secant iteration seeded with the
  /// derivative rate. The self-consistency makes the step gain equal
  /// dt (E - E_ref)^2 / eta.
  StepSolution solve_step(double e_ref, double alpha_ref, double lam, double dt, double p_n, const State& chi_next,
                          const State& psi) const {
    const double eta = options_.cost.eta;
    const double s_ref = e_ref * e_ref;
    // Below this the secant quotient is dominated by rounding, while the
    // derivative is accurate to O(ds^2).
    const double tiny_ds = 1e-10 / (dt * model_.coupling_bound());

    auto probe = [&](double x) {
      StepSolution p;
      p.e = x;
      const double ds = x * x - s_ref;
      if (std::abs(ds) <= tiny_ds) {
        p.alpha = alpha_ref;
      } else {
        p.kernel.emplace(model_.kernel(x, dt));
        p.alpha = -(model_.overlap_after(*p.kernel, chi_next, psi) - p_n) / (dt * ds);
      }
      p.residual = update_residual(x, e_ref, p.alpha, lam, eta);
      return p;
    };
    auto converged = [&](const StepSolution& p) {
      return std::abs(p.residual) <= 1e-14 * std::max({std::abs(p.e), std::abs(e_ref), 1e-300});
    };

    StepSolution prev = probe(update_field_step(e_ref, alpha_ref, lam, eta));
    if (converged(prev)) return prev;
    StepSolution cur = probe(update_field_step(e_ref, prev.alpha, lam, eta));
    for (int it = 0; it < kMaxFixedPoint && !converged(cur); ++it) {
      const double denom = cur.residual - prev.residual;
      double x = denom != 0.0 ? cur.e - cur.residual * (cur.e - prev.e) / denom
                              : std::numeric_limits<double>::quiet_NaN();
      if (!std::isfinite(x)) x = update_field_step(e_ref, cur.alpha, lam, eta);
      if (x == cur.e) break;
      StepSolution next = probe(x);
      const bool stalled = it > 0 && std::abs(next.residual) >= std::abs(cur.residual);
      prev = std::move(cur);
      cur = std::move(next);
      if (stalled) break;  // rounding floor of the rate
    }
    StepSolution& best = std::abs(prev.residual) < std::abs(cur.residual) ? prev : cur;
    // Accept the exact root of the cubic for the best rate. Where the rate is
    // limited by rounding this moves E by at most the remaining residual.
    const double e = update_field_step(e_ref, best.alpha, lam, eta);
    if (e != best.e) best.kernel.reset();
    best.e = e;
    best.residual = update_residual(e, e_ref, best.alpha, lam, eta);
    return std::move(best);
  }
  static constexpr double kStepGainFloor = 1e-14;

  static double out_of_band(const SpectralFilter& filter, const FieldGrid& field) {
    return filter.is_identity() ? 0.0 : filter.out_of_band_energy(field);
  }

  Model model_;
  OptimizerOptions options_;
};

inline void validate(const OptimizerOptions& options) {
  validate(options.cost);
  validate(options.filter);
  if (options.max_iters < 0) throw ConfigError("optimizer: max_iters must be nonnegative");
  if (options.mu_strategy == MuStrategy::none && options.filter.kind != FilterKind::identity) {
    throw ConfigError("optimizer: mu_strategy = none requires the identity filter");
  }
  if (!(options.mu_tolerance > 0.0)) throw ConfigError("optimizer: mu tolerance must be positive");
  if (options.stop_count < 1) throw ConfigError("optimizer: stop_count must be at least 1");
}

}  // namespace specoct
