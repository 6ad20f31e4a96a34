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
#include <iosfwd>
#include <string>
#include <vector>

#include "specoct/propagator.hpp"

namespace specoct {

// Frequencies are angular frequencies in atomic units (rad per atomic time
// unit, numerically equal to an energy in hartree).

enum class FilterKind { identity, band_pass, pixelation };

struct Band {
  double center = 0.0;
  double width = 0.0;
};

/// Declarative description of a spectral filter.
struct FilterSpec {
  FilterKind kind = FilterKind::identity;
  std::vector<Band> bands;     // band_pass only
  std::size_t n_pixels = 0;    // pixelation only
  double bandwidth = 0.0;      // pixelation only: pixels tile [0, bandwidth]

  static FilterSpec identity() { return {}; }
  static FilterSpec band_pass(std::vector<Band> bands);
  static FilterSpec pixelation(std::size_t n_pixels, double bandwidth);
};

/// Throws FilterError on inconsistent specs.
void validate(const FilterSpec& spec);
std::string to_string(FilterKind kind);

/// Discrete Fourier transform of a field. The grid is treated as periodic:
/// the n_steps samples t_0 ... t_{n-1} are transformed and the sample at t_f
/// is the periodic image of t_0. Forward transform unnormalized, 1/n on the
/// inverse.
struct Spectrum {
  double t_final = 0.0;
  std::vector<double> frequencies;  // FFT order: 0, 1, ..., -1 times 2 pi / t_f
  std::vector<cplx> amplitudes;
};

Spectrum spectrum_of(const FieldGrid& field);

/// Inverse transform onto the grid; throws FilterError if the result has an
/// imaginary part above 1e-12 (relative to the field scale).
FieldGrid field_from_spectrum(const Spectrum& spectrum, const TimeGrid& grid);

/// Linear spectral projection built once per (spec, grid).
class SpectralFilter {
 public:
  SpectralFilter(FilterSpec spec, const TimeGrid& grid);

  const FilterSpec& spec() const { return spec_; }
  const TimeGrid& grid() const { return grid_; }
  bool is_identity() const { return spec_.kind == FilterKind::identity; }

  /// F(E).
  FieldGrid apply(const FieldGrid& field) const;

  /// Orthogonal projection onto {F(E)} intersected with {E(0) = E(t_f) = 0}.
  /// Agrees with apply() on in-range fields that vanish at the endpoints.
  FieldGrid apply_admissible(const FieldGrid& field) const;

  /// ||E - F(E)||^2 / ||E||^2, zero for a zero field.
  double out_of_band_energy(const FieldGrid& field) const;

  /// Positive-frequency bins kept by the filter (for reporting).
  std::size_t kept_bins() const;

 private:
  void project_spectrum(std::vector<cplx>& x) const;

  FilterSpec spec_;
  TimeGrid grid_;
  std::vector<char> mask_;                      // band_pass: bins kept
  std::vector<std::vector<std::size_t>> pixels_;  // pixelation: nonnegative bins per pixel
  std::vector<double> impulse_;                 // F(e_0), periodic samples
};

FieldGrid apply_bandpass(const FieldGrid& field, const FilterSpec& spec);
FieldGrid apply_pixelation(const FieldGrid& field, const FilterSpec& spec);
FieldGrid apply_filter(const FieldGrid& field, const FilterSpec& spec);
double out_of_band_energy(const FieldGrid& field, const FilterSpec& spec);

/// Squared norm over the periodic samples t_0 ... t_{n-1}.
double periodic_energy(const FieldGrid& field);

enum class FrequencyUnit { wavenumber, thz };

/// Two columns, nonnegative frequencies only: frequency, |A|^2 / max |A|^2.
void write_spectrum(std::ostream& out, const Spectrum& spectrum, FrequencyUnit unit);

}  // namespace specoct
