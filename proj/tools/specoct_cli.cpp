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
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "specoct/errors.hpp"
#include "specoct/experiment.hpp"
#include "specoct/field_io.hpp"
#include "specoct/spectral.hpp"

namespace {

using namespace specoct;

ExperimentConfig resolve_config(const std::string& preset_name, const std::string& config_path) {
  ExperimentConfig config = preset_name.empty() ? ExperimentConfig{} : preset(preset_name);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config " + config_path);
    config = parse_config(in, config);
  }
  return config;
}

FrequencyUnit parse_unit(const std::string& unit) {
  if (unit == "cm-1") return FrequencyUnit::wavenumber;
  if (unit == "THz") return FrequencyUnit::thz;
  throw ConfigError("--units: expected cm-1 or THz");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrally filtered monotonic optimal control of molecular alignment"};
  app.require_subcommand(1);

  std::string preset_name;
  std::string config_path;
  std::string out_dir = "specoct_out";
  std::optional<int> max_iters;
  auto* run = app.add_subcommand("run", "Optimize a field and write logs, fields, spectra and traces");
  run->add_option("--preset", preset_name, "Built-in scenario used as the base configuration");
  run->add_option("--config", config_path, "INI file; its keys override the preset")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--max-iters", max_iters, "Override the iteration cap")->check(CLI::NonNegativeNumber);

  auto* list = app.add_subcommand("presets", "List built-in presets");
  std::string show_preset;
  auto* show = app.add_subcommand("show-config", "Print a preset as an INI file");
  show->add_option("preset", show_preset)->required();

  std::string field_in;
  std::string field_out = "field_filtered.csv";
  std::string filter_preset;
  std::string filter_config;
  auto* filt = app.add_subcommand("filter-field", "Apply a spectral filter once to a stored field");
  filt->add_option("--field", field_in, "Input field CSV (t_au,E_au)")->required()->check(CLI::ExistingFile);
  filt->add_option("--out", field_out, "Output field CSV");
  filt->add_option("--preset", filter_preset, "Take the filter from this preset");
  filt->add_option("--config", filter_config, "Take the filter from this INI file")->check(CLI::ExistingFile);

  auto* consts = app.add_subcommand("constants", "Print the rotational period and Raman frequencies");
  std::string const_config;
  consts->add_option("--config", const_config, "INI file with a [molecule] section")->check(CLI::ExistingFile);

  std::string spec_field;
  std::string units = "cm-1";
  auto* spec = app.add_subcommand("spectrum", "Write |A(w)|^2 of a stored field");
  spec->add_option("--field", spec_field, "Input field CSV")->required()->check(CLI::ExistingFile);
  spec->add_option("--units", units, "Frequency unit")->check(CLI::IsMember({"cm-1", "THz"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (preset_name.empty() && config_path.empty()) throw ConfigError("run: give --preset or --config");
      ExperimentConfig config = resolve_config(preset_name, config_path);
      if (max_iters) config.max_iters = *max_iters;
      const RunSummary summary = run_to_directory(config, out_dir);
      std::cout << summary.line() << '\n';
      if (summary.dropped_population > 0.0) {
        std::cout << "dropped thermal population " << summary.dropped_population << '\n';
      }
      return summary.aborted ? 2 : 0;
    }
    if (*list) {
      for (const auto& name : preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (*show) {
      write_config(std::cout, preset(show_preset));
      return 0;
    }
    if (*filt) {
      if (filter_preset.empty() && filter_config.empty()) throw ConfigError("filter-field: give --preset or --config");
      const ExperimentConfig config = resolve_config(filter_preset, filter_config);
      const FieldGrid field = load_field(field_in);
      const FilterReport report = filter_field(field, config.filter);
      save_field(field_out, report.filtered);
      std::cout << "out_of_band before=" << report.out_of_band_before << " after=" << report.out_of_band_after
                << " energy before=" << report.energy_before << " after=" << report.energy_after << '\n';
      return 0;
    }
    if (*consts) {
      const ExperimentConfig config = resolve_config("paper-3.1", const_config);
      write_constants(std::cout, derived_constants(config.molecule));
      return 0;
    }
    if (*spec) {
      write_spectrum(std::cout, spectrum_of(load_field(spec_field)), parse_unit(units));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
