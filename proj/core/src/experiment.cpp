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
#include "specoct/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "specoct/errors.hpp"
#include "specoct/field_io.hpp"
#include "specoct/thermal.hpp"
#include "specoct/units.hpp"

namespace specoct {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"name"}},
      {"molecule", {"name", "B", "alpha_par", "alpha_perp"}},
      {"basis", {"j_max", "j_opt"}},
      {"grid", {"t_final", "n_steps"}},
      {"trial", {"amplitude", "intensity", "fwhm", "center"}},
      {"filter", {"kind", "bands", "pixels", "bandwidth"}},
      {"cost", {"lambda0", "eta"}},
      {"optimizer",
       {"mu_strategy", "mu_tolerance", "max_iters", "stop_delta", "stop_count", "polyfit_samples", "polyfit_degree",
        "polyfit_fraction", "polyfit_step"}},
      {"thermal", {"temperature"}},
  };
  return keys;
}

template <class T>
T parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (trim(text.substr(used)).empty()) return static_cast<T>(v);
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + text + "'");
}

MuStrategy parse_strategy(const std::string& key, const std::string& text) {
  const std::string v = lower(text);
  if (v == "dichotomy") return MuStrategy::dichotomy;
  if (v == "polyfit") return MuStrategy::polyfit;
  if (v == "none") return MuStrategy::none;
  throw ConfigError(key + ": unknown strategy '" + text + "' (dichotomy, polyfit, none)");
}

FilterKind parse_kind(const std::string& key, const std::string& text) {
  const std::string v = lower(text);
  if (v == "identity") return FilterKind::identity;
  if (v == "band_pass" || v == "bandpass") return FilterKind::band_pass;
  if (v == "pixelation") return FilterKind::pixelation;
  throw ConfigError(key + ": unknown filter kind '" + text + "' (identity, band_pass, pixelation)");
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

double parse_quantity(const std::string& text, QuantityKind kind, const MoleculeParams& molecule, double t_final) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + text + "'");
  }
  if (!std::isfinite(value)) throw ConfigError("non-finite value '" + text + "'");
  const std::string unit = trim(s.substr(used));
  const std::string u = lower(unit);
  auto bad_unit = [&]() { return ConfigError("unit '" + unit + "' not valid here"); };

  switch (kind) {
    case QuantityKind::plain:
      if (!u.empty()) throw bad_unit();
      return value;
    case QuantityKind::time:
      if (u.empty() || u == "au") return value;
      if (u == "ps") return units::ps_to_au(value);
      if (u == "fs") return units::ps_to_au(value * 1e-3);
      if (u == "t_per") return value * rotational_period(molecule);
      if (u == "t_f") {
        if (!(t_final > 0.0)) throw ConfigError("'t_f' used before the final time is known");
        return value * t_final;
      }
      throw bad_unit();
    case QuantityKind::frequency:
      if (u.empty() || u == "au") return value;
      if (unit == "B") return value * molecule.rotational_constant;
      if (u == "cm-1") return units::wavenumber_to_hartree(value);
      if (u == "rad/ps") return units::rad_per_ps_to_angular_au(value);
      if (u == "thz") return units::thz_to_angular_au(value);
      throw bad_unit();
    case QuantityKind::intensity:
      if (u.empty() || u == "w/cm2") return units::intensity_to_field_au(value);
      if (u == "tw/cm2") return units::intensity_to_field_au(value * 1e12);
      throw bad_unit();
    case QuantityKind::energy:
      if (u.empty() || u == "au" || u == "hartree") return value;
      if (u == "cm-1") return units::wavenumber_to_hartree(value);
      throw bad_unit();
    case QuantityKind::temperature:
      if (u.empty() || u == "k") return value;
      throw bad_unit();
  }
  throw bad_unit();
}

TimeGrid ExperimentConfig::grid() const {
  return TimeGrid{t_final, n_steps == 0 ? default_n_steps(t_final) : n_steps};
}

FieldGrid ExperimentConfig::trial_field() const {
  const TimeGrid g = grid();
  return gaussian_field(g, trial_amplitude, trial_fwhm, trial_center < 0.0 ? 0.5 * t_final : trial_center);
}

OptimizerOptions ExperimentConfig::optimizer_options() const {
  OptimizerOptions o;
  o.cost = cost;
  o.filter = filter;
  o.mu_strategy = mu_strategy;
  o.mu_tolerance = mu_tolerance;
  o.polyfit = polyfit;
  o.max_iters = max_iters;
  o.stop_delta = stop_delta;
  o.stop_count = stop_count;
  return o;
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  try {
    validate(c.molecule);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("molecule: ") + e.what());
  }
  require(c.j_opt >= 0, "basis.j_opt: must be nonnegative");
  require(c.j_max >= c.j_opt, "basis.j_max: must be at least j_opt");
  require(c.t_final > 0.0 && std::isfinite(c.t_final), "grid.t_final: must be positive");
  require(c.n_steps == 0 || c.n_steps >= 2, "grid.n_steps: must be at least 2");
  require(c.trial_amplitude >= 0.0 && std::isfinite(c.trial_amplitude), "trial.amplitude: must be nonnegative");
  require(c.trial_fwhm > 0.0, "trial.fwhm: must be positive");
  require(c.trial_center < 0.0 || c.trial_center <= c.t_final, "trial.center: must lie inside [0, t_final]");
  require(c.cost.lambda0 > 0.0 && std::isfinite(c.cost.lambda0), "cost.lambda0: must be positive");
  require(c.cost.eta > 0.0 && std::isfinite(c.cost.eta), "cost.eta: must be positive");
  require(c.max_iters >= 0, "optimizer.max_iters: must be nonnegative");
  require(c.mu_tolerance > 0.0 && c.mu_tolerance < 1.0, "optimizer.mu_tolerance: must lie in (0, 1)");
  require(c.stop_count >= 1, "optimizer.stop_count: must be at least 1");
  require(c.polyfit.n_samples >= 2, "optimizer.polyfit_samples: must be at least 2");
  require(c.polyfit.degree >= 1, "optimizer.polyfit_degree: must be at least 1");
  require(c.polyfit.fraction > 0.0 && c.polyfit.fraction < 1.0, "optimizer.polyfit_fraction: must lie in (0, 1)");
  require(c.polyfit.step > 0.0, "optimizer.polyfit_step: must be positive");
  require(c.temperature >= 0.0 && std::isfinite(c.temperature), "thermal.temperature: must be nonnegative");
  require(c.mu_strategy != MuStrategy::none || c.filter.kind == FilterKind::identity,
          "optimizer.mu_strategy: 'none' requires filter.kind = identity");
  try {
    validate(c.filter);
    SpectralFilter(c.filter, c.grid());
  } catch (const Error& e) {
    throw ConfigError(std::string("filter: ") + e.what());
  }
}

ExperimentConfig parse_config(std::istream& in, const ExperimentConfig& base) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ConfigError("unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError("unknown key " + section + "." + key);
    }
  }

  ExperimentConfig c = base;
  auto get = [&](const std::string& key) { return tree.get_optional<std::string>(pt::ptree::path_type(key, '.')); };
  auto with_key = [](const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };

  if (auto v = get("experiment.name")) c.name = *v;
  if (auto v = get("molecule.name")) {
    if (lower(*v) != "co") throw ConfigError("molecule.name: only 'CO' is built in; give B, alpha_par, alpha_perp");
    c.molecule = carbon_monoxide();
  }
  if (auto v = get("molecule.B")) {
    c.molecule.rotational_constant =
        with_key("molecule.B", [&] { return parse_quantity(*v, QuantityKind::energy, c.molecule); });
  }
  if (auto v = get("molecule.alpha_par")) {
    c.molecule.alpha_parallel =
        with_key("molecule.alpha_par", [&] { return parse_quantity(*v, QuantityKind::plain, c.molecule); });
  }
  if (auto v = get("molecule.alpha_perp")) {
    c.molecule.alpha_perpendicular =
        with_key("molecule.alpha_perp", [&] { return parse_quantity(*v, QuantityKind::plain, c.molecule); });
  }
  if (auto v = get("basis.j_max")) c.j_max = parse_integer<int>("basis.j_max", *v);
  if (auto v = get("basis.j_opt")) c.j_opt = parse_integer<int>("basis.j_opt", *v);
  if (auto v = get("grid.t_final")) {
    c.t_final = with_key("grid.t_final", [&] { return parse_quantity(*v, QuantityKind::time, c.molecule); });
  }
  if (auto v = get("grid.n_steps")) {
    c.n_steps = lower(*v) == "auto" ? 0 : parse_integer<std::size_t>("grid.n_steps", *v);
  }
  if (auto v = get("trial.amplitude")) {
    c.trial_amplitude =
        with_key("trial.amplitude", [&] { return parse_quantity(*v, QuantityKind::plain, c.molecule); });
  }
  if (auto v = get("trial.intensity")) {
    if (get("trial.amplitude")) throw ConfigError("trial: give either amplitude or intensity, not both");
    c.trial_amplitude =
        with_key("trial.intensity", [&] { return parse_quantity(*v, QuantityKind::intensity, c.molecule); });
  }
  if (auto v = get("trial.fwhm")) {
    c.trial_fwhm = with_key("trial.fwhm", [&] { return parse_quantity(*v, QuantityKind::time, c.molecule); });
  }
  if (auto v = get("trial.center")) {
    c.trial_center = with_key("trial.center",
                              [&] { return parse_quantity(*v, QuantityKind::time, c.molecule, c.t_final); });
  }
  if (auto v = get("filter.kind")) {
    const FilterKind kind = parse_kind("filter.kind", *v);
    if (kind != c.filter.kind) c.filter = FilterSpec{kind, {}, 0, 0.0};
  }
  if (auto v = get("filter.bands")) {
    c.filter.bands.clear();
    for (const auto& item : split(*v, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw ConfigError("filter.bands: expected 'center : width', got '" + item + "'");
      Band b;
      b.center = with_key("filter.bands", [&] { return parse_quantity(parts[0], QuantityKind::frequency, c.molecule); });
      b.width = with_key("filter.bands", [&] { return parse_quantity(parts[1], QuantityKind::frequency, c.molecule); });
      c.filter.bands.push_back(b);
    }
  }
  if (auto v = get("filter.pixels")) c.filter.n_pixels = parse_integer<std::size_t>("filter.pixels", *v);
  if (auto v = get("filter.bandwidth")) {
    c.filter.bandwidth =
        with_key("filter.bandwidth", [&] { return parse_quantity(*v, QuantityKind::frequency, c.molecule); });
  }
  auto number = [&](const std::string& key, double& target) {
    if (auto v = get(key)) target = with_key(key, [&] { return parse_quantity(*v, QuantityKind::plain, c.molecule); });
  };
  number("cost.lambda0", c.cost.lambda0);
  number("cost.eta", c.cost.eta);
  if (auto v = get("optimizer.mu_strategy")) c.mu_strategy = parse_strategy("optimizer.mu_strategy", *v);
  number("optimizer.mu_tolerance", c.mu_tolerance);
  if (auto v = get("optimizer.max_iters")) c.max_iters = parse_integer<int>("optimizer.max_iters", *v);
  number("optimizer.stop_delta", c.stop_delta);
  if (auto v = get("optimizer.stop_count")) c.stop_count = parse_integer<int>("optimizer.stop_count", *v);
  if (auto v = get("optimizer.polyfit_samples")) c.polyfit.n_samples = parse_integer<int>("optimizer.polyfit_samples", *v);
  if (auto v = get("optimizer.polyfit_degree")) c.polyfit.degree = parse_integer<int>("optimizer.polyfit_degree", *v);
  number("optimizer.polyfit_fraction", c.polyfit.fraction);
  number("optimizer.polyfit_step", c.polyfit.step);
  if (auto v = get("thermal.temperature")) {
    c.temperature =
        with_key("thermal.temperature", [&] { return parse_quantity(*v, QuantityKind::temperature, c.molecule); });
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  const auto d = format_double;
  out << "[experiment]\nname = " << c.name << "\n\n";
  out << "[molecule]\nB = " << d(c.molecule.rotational_constant) << "\nalpha_par = " << d(c.molecule.alpha_parallel)
      << "\nalpha_perp = " << d(c.molecule.alpha_perpendicular) << "\n\n";
  out << "[basis]\nj_max = " << c.j_max << "\nj_opt = " << c.j_opt << "\n\n";
  out << "[grid]\nt_final = " << d(c.t_final) << "\nn_steps = " << c.n_steps << "\n\n";
  out << "[trial]\namplitude = " << d(c.trial_amplitude) << "\nfwhm = " << d(c.trial_fwhm) << "\n";
  if (c.trial_center >= 0.0) out << "center = " << d(c.trial_center) << "\n";
  out << "\n[filter]\nkind = " << to_string(c.filter.kind) << "\n";
  if (c.filter.kind == FilterKind::band_pass) {
    out << "bands = ";
    for (std::size_t i = 0; i < c.filter.bands.size(); ++i) {
      out << (i ? ", " : "") << d(c.filter.bands[i].center) << " : " << d(c.filter.bands[i].width);
    }
    out << "\n";
  } else if (c.filter.kind == FilterKind::pixelation) {
    out << "pixels = " << c.filter.n_pixels << "\nbandwidth = " << d(c.filter.bandwidth) << "\n";
  }
  out << "\n[cost]\nlambda0 = " << d(c.cost.lambda0) << "\neta = " << d(c.cost.eta) << "\n\n";
  out << "[optimizer]\nmu_strategy = " << to_string(c.mu_strategy) << "\nmu_tolerance = " << d(c.mu_tolerance)
      << "\nmax_iters = " << c.max_iters << "\nstop_delta = " << d(c.stop_delta) << "\nstop_count = " << c.stop_count
      << "\npolyfit_samples = " << c.polyfit.n_samples << "\npolyfit_degree = " << c.polyfit.degree
      << "\npolyfit_fraction = " << d(c.polyfit.fraction) << "\npolyfit_step = " << d(c.polyfit.step) << "\n\n";
  out << "[thermal]\ntemperature = " << d(c.temperature) << "\n";
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names{"paper-3.1"};
  for (int t : {5, 7, 10}) {
    for (int n : {64, 128, 256}) names.push_back("paper-3.2-" + std::to_string(t) + "K-" + std::to_string(n) + "px");
  }
  return names;
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.molecule = carbon_monoxide();
  const double b = c.molecule.rotational_constant;
  const double t_per = rotational_period(c.molecule);
  c.cost = CostParams{1.0, 1.0};
  c.j_opt = 8;

  if (name == "paper-3.1") {
    c.j_max = 16;
    c.t_final = 10.0 * t_per;
    c.n_steps = 4096;
    c.trial_amplitude = 0.005;
    c.trial_fwhm = units::ps_to_au(3.0);
    c.filter = FilterSpec::band_pass({{4.0 * b, 0.5 * b}, {10.0 * b, 0.5 * b}, {26.0 * b, 0.5 * b}});
    c.mu_strategy = MuStrategy::dichotomy;
    c.max_iters = 400;
    c.temperature = 0.0;
    validate(c);
    return c;
  }

  int kelvin = 0;
  std::size_t pixels = 0;
  char k = 0;
  char tail[8] = {};
  if (std::sscanf(name.c_str(), "paper-3.2-%d%c-%zu%7s", &kelvin, &k, &pixels, tail) == 4 && k == 'K' &&
      std::string(tail) == "px" && (kelvin == 5 || kelvin == 7 || kelvin == 10) &&
      (pixels == 64 || pixels == 128 || pixels == 256)) {
    c.j_max = 20;
    c.t_final = t_per;
    c.n_steps = 128;
    c.trial_amplitude = units::intensity_to_field_au(37.5e12);
    c.trial_fwhm = units::ps_to_au(1.0);
    c.filter = FilterSpec::pixelation(pixels, units::rad_per_ps_to_angular_au(7.28));
    c.mu_strategy = MuStrategy::polyfit;
    c.max_iters = 500;
    c.temperature = kelvin;
    validate(c);
    return c;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + name + "'; known presets: " + known);
}

std::string RunSummary::line() const {
  std::ostringstream out;
  out << std::setprecision(6) << "iterations=" << iterations << " J=" << cost << " projection=" << projection
      << " filtered_projection=" << filtered_projection << " out_of_band=" << out_of_band << " mu[first=" << mu_first
      << " last=" << mu_last << " mean=" << mu_mean << " zeros=" << mu_zero_count << "]"
      << " converged=" << (converged ? "yes" : "no");
  if (aborted) out << " aborted: " << diagnostic;
  return out.str();
}

namespace {

template <ControlModel Model>
RunOutput run_model(const Model& model, const ExperimentConfig& config) {
  const Optimizer<Model> opt(model, config.optimizer_options());
  OptimizationResult res = opt.optimize(config.trial_field());

  RunOutput out;
  out.history = res.history;
  out.field = res.field;
  out.unfiltered = res.unfiltered;
  const SpectralFilter filter(config.filter, out.field.grid);
  out.filtered = filter.is_identity() ? out.field : filter.apply_admissible(out.field);

  RunSummary& s = out.summary;
  const IterationRecord& last = res.history.back();
  s.iterations = res.history.size() - 1;
  s.cost = last.cost;
  s.projection = last.projection;
  s.out_of_band = last.out_of_band;
  s.filtered_projection = opt.evaluate(out.filtered).projection;
  s.top_population = res.top_population;
  s.converged = res.converged;
  s.aborted = res.aborted;
  s.diagnostic = res.diagnostic;
  if (res.history.size() > 1) {
    s.mu_first = res.history[1].mu;
    s.mu_last = last.mu;
    double sum = 0.0;
    for (std::size_t i = 1; i < res.history.size(); ++i) {
      sum += res.history[i].mu;
      if (res.history[i].mu == 0.0) ++s.mu_zero_count;
    }
    s.mu_mean = sum / static_cast<double>(res.history.size() - 1);
  }
  const auto traj = opt.forward(out.field);
  out.cos2.reserve(traj.states.size());
  for (const auto& st : traj.states) out.cos2.push_back(model.cos2(st));
  return out;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& config) {
  validate(config);
  const TargetSpec spec{config.j_opt, 0};
  if (config.temperature == 0.0) {
    return run_model(PureModel::ground_state(config.j_max, config.molecule, spec), config);
  }
  const ThermalModel model(config.molecule, config.j_max, config.temperature, spec);
  RunOutput out = run_model(model, config);
  out.summary.dropped_population = model.initial().dropped;
  return out;
}

RunSummary run_to_directory(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RunOutput out = run_experiment(config);
  auto open = [&](const char* file) {
    std::ofstream f(out_dir / file);
    if (!f) throw Error("cannot write " + (out_dir / file).string());
    return f;
  };
  {
    auto f = open("config.ini");
    write_config(f, config);
  }
  {
    auto f = open("history.csv");
    write_history(f, out.history);
  }
  {
    auto f = open("field.csv");
    write_field(f, out.field);
  }
  {
    auto f = open("field_unfiltered.csv");
    write_field(f, out.unfiltered);
  }
  {
    auto f = open("field_filtered.csv");
    write_field(f, out.filtered);
  }
  {
    auto f = open("cos2.csv");
    write_series(f, out.field.grid, out.cos2, "cos2");
  }
  {
    auto f = open("spectrum.csv");
    write_spectrum(f, spectrum_of(out.field), FrequencyUnit::wavenumber);
  }
  {
    auto f = open("summary.txt");
    f << out.summary.line() << '\n';
  }
  return out.summary;
}

FilterReport filter_field(const FieldGrid& field, const FilterSpec& spec) {
  validate(field);
  const SpectralFilter filter(spec, field.grid);
  FilterReport r;
  r.filtered = filter.apply(field);
  r.out_of_band_before = filter.out_of_band_energy(field);
  r.out_of_band_after = filter.out_of_band_energy(r.filtered);
  r.energy_before = periodic_energy(field);
  r.energy_after = periodic_energy(r.filtered);
  return r;
}

DerivedConstants derived_constants(const MoleculeParams& params, int j_max) {
  validate(params);
  DerivedConstants c;
  c.rotational_period_au = rotational_period(params);
  c.rotational_period_ps = units::au_to_ps(c.rotational_period_au);
  // pi hbar / (h c B~) = 1 / (2 c B~), with B~ in cm^-1.
  const double b_per_cm = units::hartree_to_wavenumber(params.rotational_constant);
  c.rotational_period_ps_check = 1.0 / (2.0 * units::kSpeedOfLightCmPerSecond * b_per_cm) * 1e12;
  for (int j = 0; j + 2 <= j_max; ++j) c.raman_frequencies.push_back(params.rotational_constant * (4.0 * j + 6.0));
  for (double k : {4.0, 10.0, 26.0}) c.band_centers.push_back(k * params.rotational_constant);
  return c;
}

void write_constants(std::ostream& out, const DerivedConstants& c) {
  auto row = [&](const std::string& label, double w) {
    out << std::left << std::setw(14) << label << std::right << std::setprecision(8) << std::setw(16) << w
        << std::setw(16) << units::hartree_to_wavenumber(w) << std::setw(16) << units::angular_au_to_thz(w)
        << std::setw(16) << units::angular_au_to_rad_per_ps(w) << '\n';
  };
  out << std::setprecision(10) << "t_per = " << c.rotational_period_au << " au = " << c.rotational_period_ps
      << " ps (via c and B in cm^-1: " << c.rotational_period_ps_check << " ps)\n\n";
  out << std::left << std::setw(14) << "frequency" << std::right << std::setw(16) << "au" << std::setw(16) << "cm^-1"
      << std::setw(16) << "THz" << std::setw(16) << "rad/ps" << '\n';
  for (std::size_t j = 0; j < c.raman_frequencies.size(); ++j) {
    row("w(" + std::to_string(j) + "," + std::to_string(j + 2) + ")", c.raman_frequencies[j]);
  }
  const char* names[] = {"band 4B", "band 10B", "band 26B"};
  for (std::size_t i = 0; i < c.band_centers.size(); ++i) row(names[i], c.band_centers[i]);
}

}  // namespace specoct
