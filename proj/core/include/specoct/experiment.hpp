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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "specoct/control.hpp"
#include "specoct/optimizer.hpp"
#include "specoct/propagator.hpp"
#include "specoct/rotor.hpp"
#include "specoct/spectral.hpp"

namespace specoct {

/// Everything needed to reproduce one optimization run. All values are in
/// atomic units; the parser converts laboratory units.
struct ExperimentConfig {
  std::string name = "custom";
  MoleculeParams molecule = carbon_monoxide();
  int j_max = 14;
  int j_opt = 8;
  double t_final = 0.0;
  std::size_t n_steps = 0;  // 0: default_n_steps(t_final)
  double trial_amplitude = 0.0;
  double trial_fwhm = 0.0;
  double trial_center = -1.0;  // negative: t_final / 2
  FilterSpec filter;
  CostParams cost;
  MuStrategy mu_strategy = MuStrategy::dichotomy;
  double mu_tolerance = 0.01;
  PolyfitOptions polyfit;
  int max_iters = 100;
  double stop_delta = 1e-10;
  int stop_count = 10;
  double temperature = 0.0;  // kelvin

  TimeGrid grid() const;
  FieldGrid trial_field() const;
  OptimizerOptions optimizer_options() const;
};

/// Throws ConfigError naming the offending key.
void validate(const ExperimentConfig& config);

/// Parses the INI-style configuration. Quantities may carry units, e.g.
/// "10 t_per", "3 ps", "4 B", "7.28 rad/ps", "1.931 cm-1", "37.5 TW/cm2".
/// Keys not set keep their defaults; `base` supplies those defaults.
ExperimentConfig parse_config(std::istream& in, const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Writes a configuration that parse_config reads back unchanged.
void write_config(std::ostream& out, const ExperimentConfig& config);

/// "paper-3.1" and "paper-3.2-<T>K-<N>px" for T in {5, 7, 10}, N in {64, 128, 256}.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct RunSummary {
  std::size_t iterations = 0;
  double cost = 0.0;
  double projection = 0.0;
  double filtered_projection = 0.0;  // after one final mu = 0 filtering
  double out_of_band = 0.0;          // of the last accepted field
  double mu_first = 0.0, mu_last = 0.0, mu_mean = 0.0;
  std::size_t mu_zero_count = 0;
  double top_population = 0.0;
  double dropped_population = 0.0;  // Boltzmann weight outside the basis
  bool converged = false;
  bool aborted = false;
  std::string diagnostic;

  std::string line() const;
};

struct RunOutput {
  RunSummary summary;
  std::vector<IterationRecord> history;
  FieldGrid field;           // last accepted field
  FieldGrid unfiltered;      // last unconstrained update
  FieldGrid filtered;        // field after the final filtering
  std::vector<double> cos2;  // <cos^2 theta>(t_n) under `field`
};

/// Runs the optimization in memory.
RunOutput run_experiment(const ExperimentConfig& config);

/// Runs and writes history.csv, field.csv, field_unfiltered.csv,
/// field_filtered.csv, cos2.csv and spectrum.csv into `out_dir`. The partial
/// history is written even when the run aborts.
RunSummary run_to_directory(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Filters a field once and reports out-of-band energy before and after.
struct FilterReport {
  FieldGrid filtered;
  double out_of_band_before = 0.0;
  double out_of_band_after = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
};
FilterReport filter_field(const FieldGrid& field, const FilterSpec& spec);

/// Rotational period, Raman frequencies and the band positions used by the
/// band-pass preset, as a text report.
struct DerivedConstants {
  double rotational_period_au = 0.0;
  double rotational_period_ps = 0.0;
  double rotational_period_ps_check = 0.0;  // via B in cm^-1 and c
  std::vector<double> raman_frequencies;    // omega_{j,j+2}, atomic units
  std::vector<double> band_centers;         // 4B, 10B, 26B
};
DerivedConstants derived_constants(const MoleculeParams& params, int j_max = 8);
void write_constants(std::ostream& out, const DerivedConstants& c);

/// Parses a quantity with optional unit into atomic units of the given kind.
enum class QuantityKind { time, frequency, intensity, energy, temperature, plain };
double parse_quantity(const std::string& text, QuantityKind kind, const MoleculeParams& molecule,
                      double t_final = 0.0);

}  // namespace specoct
