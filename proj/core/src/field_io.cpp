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
#include "specoct/field_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "specoct/errors.hpp"

namespace specoct {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidField("line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

}  // namespace

void write_field(std::ostream& out, const FieldGrid& field) {
  out << "t_au,E_au\n" << std::setprecision(17);
  for (std::size_t n = 0; n < field.size(); ++n) out << field.grid.time(n) << ',' << field[n] << '\n';
}

FieldGrid read_field(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> t, e;
  std::vector<std::size_t> lines;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (row.find_first_not_of("0123456789+-.eE, \t") != std::string_view::npos) continue;  // header row
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw InvalidField("line " + std::to_string(line_no) + ": expected two comma-separated columns");
    }
    t.push_back(parse_number(row.substr(0, comma), line_no));
    e.push_back(parse_number(row.substr(comma + 1), line_no));
    lines.push_back(line_no);
  }
  if (t.size() < 3) throw InvalidField("field file: need at least 3 samples, found " + std::to_string(t.size()));
  if (t.front() != 0.0) throw InvalidField("line " + std::to_string(lines.front()) + ": first time must be 0");
  const TimeGrid grid{t.back(), t.size() - 1};
  validate(grid);
  const double dt = grid.dt();
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (std::abs(t[n] - grid.time(n)) > 1e-9 * dt) {
      throw InvalidField("line " + std::to_string(lines[n]) + ": time is off the uniform grid");
    }
  }
  return FieldGrid(grid, std::move(e));
}

void save_field(const std::filesystem::path& path, const FieldGrid& field) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_field(out, field);
}

FieldGrid load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return read_field(in);
}

void write_history(std::ostream& out, const std::vector<IterationRecord>& history) {
  out << "k,J,projection,penalty,mu,out_of_band\n" << std::setprecision(6);
  for (const auto& r : history) {
    out << r.k << ',' << r.cost << ',' << r.projection << ',' << r.penalty << ',' << r.mu << ',' << r.out_of_band
        << '\n';
  }
}

void write_series(std::ostream& out, const TimeGrid& grid, const std::vector<double>& values, const char* name) {
  out << "t_au," << name << '\n' << std::setprecision(17);
  for (std::size_t n = 0; n < values.size(); ++n) out << grid.time(n) << ',' << values[n] << '\n';
}

}  // namespace specoct
