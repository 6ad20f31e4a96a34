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
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "specoct/errors.hpp"
#include "specoct/experiment.hpp"
#include "specoct/field_io.hpp"
#include "specoct/units.hpp"

using namespace specoct;
namespace fs = std::filesystem;

namespace {

const MoleculeParams kCO = carbon_monoxide();

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("SPECOCT_TMP");
  const fs::path base = env ? fs::path(env) : fs::temp_directory_path() / "specoct_tests";
  const fs::path dir = base / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig parse(const std::string& text, const ExperimentConfig& base = {}) {
  std::istringstream in(text);
  return parse_config(in, base);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmall = R"(
[experiment]
name = small
[basis]
j_max = 10
j_opt = 6
[grid]
t_final = 1 t_per
n_steps = 128
[trial]
amplitude = 0.01
fwhm = 1 ps
[filter]
kind = band_pass
bands = 4 B : 2 B, 10 B : 2 B
[optimizer]
mu_strategy = dichotomy
max_iters = 3
)";

}  // namespace

TEST_CASE("quantities with units") {
  const double tper = rotational_period(kCO);
  CHECK(parse_quantity("2 t_per", QuantityKind::time, kCO) == doctest::Approx(2 * tper));
  CHECK(parse_quantity("3 ps", QuantityKind::time, kCO) == doctest::Approx(units::ps_to_au(3.0)));
  CHECK(parse_quantity("500fs", QuantityKind::time, kCO) == doctest::Approx(units::ps_to_au(0.5)));
  CHECK(parse_quantity("0.25 t_f", QuantityKind::time, kCO, 400.0) == 100.0);
  CHECK_THROWS_AS(parse_quantity("0.25 t_f", QuantityKind::time, kCO), ConfigError);
  CHECK(parse_quantity("4 B", QuantityKind::frequency, kCO) == 4 * kCO.rotational_constant);
  CHECK(parse_quantity("7.724 cm-1", QuantityKind::frequency, kCO) ==
        doctest::Approx(4 * kCO.rotational_constant).epsilon(1e-12));
  CHECK(parse_quantity("7.28 rad/ps", QuantityKind::frequency, kCO) ==
        doctest::Approx(7.28 * 2.4188843265857e-5).epsilon(1e-12));
  CHECK(parse_quantity("1 THz", QuantityKind::frequency, kCO) ==
        doctest::Approx(2 * units::kPi * 2.4188843265857e-5).epsilon(1e-12));
  CHECK(parse_quantity("37.5 TW/cm2", QuantityKind::intensity, kCO) ==
        doctest::Approx(std::sqrt(37.5e12 / 3.50944758e16)).epsilon(1e-12));
  CHECK(parse_quantity("5 K", QuantityKind::temperature, kCO) == 5.0);
  CHECK_THROWS_AS(parse_quantity("5 furlongs", QuantityKind::time, kCO), ConfigError);
  CHECK_THROWS_AS(parse_quantity("abc", QuantityKind::plain, kCO), ConfigError);
  CHECK_THROWS_AS(parse_quantity("3 ps", QuantityKind::plain, kCO), ConfigError);
}

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse(kSmall);
  CHECK(c.name == "small");
  CHECK(c.j_max == 10);
  CHECK(c.t_final == doctest::Approx(rotational_period(kCO)));
  CHECK(c.grid().n_steps == 128);
  CHECK(c.filter.kind == FilterKind::band_pass);
  REQUIRE(c.filter.bands.size() == 2);
  CHECK(c.filter.bands[1].center == 10 * kCO.rotational_constant);
  CHECK(c.filter.bands[1].width == 2 * kCO.rotational_constant);
  CHECK(c.max_iters == 3);

  SUBCASE("errors name the key or line") {
    CHECK(error_of(std::string(kSmall) + "[cost]\nlambda0 = -1\n").find("cost.lambda0") != std::string::npos);
    CHECK(error_of(std::string(kSmall) + "[cost]\neta = 0\n").find("cost.eta") != std::string::npos);
    CHECK(error_of(std::string(kSmall) + "[grid]\n").find("line") != std::string::npos);
    CHECK(error_of(std::string(kSmall) + "[thermal]\ntemprature = 5 K\n").find("thermal.temprature") !=
          std::string::npos);
    CHECK(error_of(std::string(kSmall) + "[bogus]\nx = 1\n").find("bogus") != std::string::npos);
    CHECK(error_of("[grid]\nt_final = 3 parsecs\n").find("grid.t_final") != std::string::npos);
    CHECK(error_of("[basis]\nj_max = ten\n").find("basis.j_max") != std::string::npos);
    std::string none = kSmall;
    none.replace(none.find("dichotomy"), 9, "none");
    CHECK(error_of(none).find("optimizer.mu_strategy") != std::string::npos);
    CHECK(error_of("[filter]\nkind = band_pass\nbands = 4 B\n").find("filter.bands") != std::string::npos);
    CHECK(error_of("[molecule]\nname = N2\n").find("molecule.name") != std::string::npos);
  }
  SUBCASE("a preset is the base and keys override it") {
    const ExperimentConfig over = parse("[optimizer]\nmax_iters = 7\n", preset("paper-3.1"));
    CHECK(over.max_iters == 7);
    CHECK(over.filter.bands.size() == 3);
  }
  SUBCASE("written configs read back unchanged") {
    for (const auto& name : preset_names()) {
      const ExperimentConfig a = preset(name);
      std::ostringstream out;
      write_config(out, a);
      const ExperimentConfig b = parse(out.str());
      CAPTURE(name);
      CHECK(b.name == a.name);
      CHECK(b.t_final == a.t_final);
      CHECK(b.n_steps == a.n_steps);
      CHECK(b.trial_amplitude == a.trial_amplitude);
      CHECK(b.trial_fwhm == a.trial_fwhm);
      CHECK(b.filter.n_pixels == a.filter.n_pixels);
      CHECK(b.filter.bandwidth == a.filter.bandwidth);
      CHECK(b.filter.bands.size() == a.filter.bands.size());
      CHECK(b.temperature == a.temperature);
      CHECK(b.mu_strategy == a.mu_strategy);
      CHECK(b.molecule.rotational_constant == a.molecule.rotational_constant);
    }
  }
}

TEST_CASE("presets") {
  const ExperimentConfig a = preset("paper-3.1");
  CHECK(a.t_final == doctest::Approx(10 * rotational_period(kCO)));
  CHECK(a.cost.lambda0 == 1.0);
  CHECK(a.cost.eta == 1.0);
  CHECK(a.trial_fwhm == doctest::Approx(units::ps_to_au(3.0)));
  CHECK(a.temperature == 0.0);
  REQUIRE(a.filter.bands.size() == 3);
  CHECK(a.filter.bands[0].center == doctest::Approx(4 * kCO.rotational_constant));
  CHECK(a.filter.bands[2].width == doctest::Approx(0.5 * kCO.rotational_constant));
  CHECK(a.mu_strategy == MuStrategy::dichotomy);

  const ExperimentConfig t = preset("paper-3.2-5K-128px");
  CHECK(t.temperature == 5.0);
  CHECK(t.filter.n_pixels == 128);
  CHECK(t.t_final == doctest::Approx(rotational_period(kCO)));
  CHECK(units::field_au_to_intensity(t.trial_amplitude) == doctest::Approx(37.5e12));
  CHECK(t.mu_strategy == MuStrategy::polyfit);
  CHECK_THROWS_AS(preset("paper-3.2-6K-128px"), ConfigError);
  CHECK_THROWS_AS(preset("nope"), ConfigError);
  for (const auto& name : preset_names()) CHECK_NOTHROW(validate(preset(name)));
}

TEST_CASE("derived constants") {
  const DerivedConstants c = derived_constants(kCO);
  CHECK(c.rotational_period_ps == doctest::Approx(c.rotational_period_ps_check).epsilon(1e-6));
  CHECK(c.rotational_period_ps == doctest::Approx(8.637).epsilon(1e-3));
  CHECK(c.raman_frequencies[0] == doctest::Approx(c.band_centers[1] - c.band_centers[0]).epsilon(1e-14));
  CHECK(c.raman_frequencies[2] == doctest::Approx(c.band_centers[1] + c.band_centers[0]).epsilon(1e-14));
  MoleculeParams twice = kCO;
  twice.rotational_constant *= 2;
  CHECK(derived_constants(twice).rotational_period_au == doctest::Approx(0.5 * c.rotational_period_au));
  std::ostringstream out;
  write_constants(out, c);
  CHECK(out.str().find("t_per") != std::string::npos);
  CHECK(out.str().find("band 26B") != std::string::npos);
}

TEST_CASE("field files") {
  const TimeGrid g{1000.0, 16};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  FieldGrid f(g);
  for (double& v : f.values) v = u(rng) * 1e-3;
  std::stringstream io;
  write_field(io, f);
  const FieldGrid back = read_field(io);
  CHECK(back.grid.n_steps == 16);
  CHECK(back.grid.t_final == doctest::Approx(1000.0).epsilon(1e-15));
  CHECK(back.values == f.values);

  auto fails_at = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_field(in);
    } catch (const InvalidField& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_at("t_au,E_au\n0,0\n1,0.5\n2,x\n", "line 4"));
  CHECK(fails_at("t_au,E_au\n0,0\n1,0.5\n3,0\n", "line 3"));
  CHECK(fails_at("t_au,E_au\n1,0\n2,0.5\n3,0\n", "line 2"));
  CHECK(fails_at("t_au,E_au\n0,0\n1,0\n", "samples"));
}

TEST_CASE("filter_field reports") {
  const ExperimentConfig c = preset("paper-3.1");
  const TimeGrid g = c.grid();
  const double w = c.filter.bands[1].center;
  FieldGrid in_band(g);
  for (std::size_t n = 0; n < g.size(); ++n) in_band[n] = 1e-3 * std::sin(w * g.time(n));
  const FilterReport r = filter_field(in_band, c.filter);
  CHECK(r.out_of_band_before < 1e-20);
  CHECK(r.out_of_band_after < 1e-20);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(r.filtered[n] == doctest::Approx(in_band[n]).scale(1e-3).epsilon(1e-12));

  std::mt19937 rng(9);
  std::normal_distribution<double> gauss;
  const TimeGrid tg = preset("paper-3.2-5K-64px").grid();
  FieldGrid noise(tg);
  for (double& v : noise.values) v = gauss(rng);
  const FilterReport rn = filter_field(noise, preset("paper-3.2-5K-64px").filter);
  CHECK(rn.energy_after < rn.energy_before);
  CHECK(rn.out_of_band_before > 0.5);
  CHECK(rn.out_of_band_after < 1e-20);
}

TEST_CASE("runs write their artifacts deterministically") {
  const ExperimentConfig c = parse(kSmall);
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const RunSummary s = run_to_directory(c, a);
  run_to_directory(c, b);
  for (const char* file : {"config.ini", "history.csv", "field.csv", "field_unfiltered.csv", "field_filtered.csv",
                           "cos2.csv", "spectrum.csv", "summary.txt"}) {
    CAPTURE(file);
    REQUIRE(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }
  CHECK(s.iterations == 3);
  CHECK(s.filtered_projection <= s.projection + 1e-12);
  CHECK(s.line().find("projection=") != std::string::npos);
  const FieldGrid filtered = load_field(a / "field_filtered.csv");
  CHECK(filtered[0] == 0.0);
  // History rows: header plus one per record.
  std::istringstream hist(slurp(a / "history.csv"));
  int rows = 0;
  for (std::string line; std::getline(hist, line);) ++rows;
  CHECK(rows == 5);
  // The stored config reproduces the run.
  const ExperimentConfig again = load_config(a / "config.ini");
  CHECK(run_experiment(again).summary.cost == s.cost);
}

TEST_CASE("thermal runs report the dropped population") {
  ExperimentConfig c = parse(kSmall);
  c.temperature = 5.0;
  c.j_max = 14;
  c.max_iters = 2;
  const RunOutput out = run_experiment(c);
  CHECK_FALSE(out.summary.aborted);
  CHECK(out.summary.dropped_population < 1e-6);
  CHECK(out.cos2.size() == c.grid().size());
  CHECK(out.cos2.front() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}
