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

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "specoct/control.hpp"
#include "specoct/propagator.hpp"

namespace specoct {

// Comma-separated tables with one header row. Fields use 17 significant
// digits so that a written field reads back bit for bit.

void write_field(std::ostream& out, const FieldGrid& field);

/// Reads a "t_au,E_au" table. The times must start at 0 and be uniform;
/// errors carry the 1-based line number.
FieldGrid read_field(std::istream& in);

void save_field(const std::filesystem::path& path, const FieldGrid& field);
FieldGrid load_field(const std::filesystem::path& path);

/// k,J,projection,penalty,mu,out_of_band with 6 significant digits.
void write_history(std::ostream& out, const std::vector<IterationRecord>& history);

/// Two-column time series "t_au,<name>".
void write_series(std::ostream& out, const TimeGrid& grid, const std::vector<double>& values, const char* name);

}  // namespace specoct
