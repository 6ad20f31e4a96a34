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
#include "specoct/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <utility>

#include <fftw3.h>

#include "specoct/errors.hpp"
#include "specoct/units.hpp"

namespace specoct {

namespace {

// fftw planning is not thread safe; execution with the new-array interface is.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

  ~FftPlans() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<cplx> dft(std::vector<cplx> in, int sign) {
  std::vector<cplx> out(in.size());
  fftw_plan p = FftPlans::instance().get(in.size(), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<cplx> forward(const FieldGrid& field) {
  const std::size_t n = field.grid.n_steps;
  std::vector<cplx> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = field.values[k];
  return dft(std::move(x), FFTW_FORWARD);
}

FieldGrid backward(std::vector<cplx> x, const TimeGrid& grid) {
  const std::size_t n = grid.n_steps;
  auto y = dft(std::move(x), FFTW_BACKWARD);
  FieldGrid out(grid);
  double scale = 0.0, residue = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    y[k] /= static_cast<double>(n);
    scale = std::max(scale, std::abs(y[k].real()));
    residue = std::max(residue, std::abs(y[k].imag()));
  }
  if (residue > 1e-12 * std::max(scale, 1.0)) {
    throw FilterError("inverse transform left an imaginary residue of " + std::to_string(residue));
  }
  for (std::size_t k = 0; k < n; ++k) out.values[k] = y[k].real();
  out.values[n] = out.values[0];
  return out;
}

double bin_frequency(std::size_t k, const TimeGrid& grid) {
  const auto n = static_cast<long long>(grid.n_steps);
  auto kk = static_cast<long long>(k);
  if (kk > n / 2) kk -= n;
  return 2.0 * units::kPi * static_cast<double>(kk) / grid.t_final;
}

}  // namespace

FilterSpec FilterSpec::band_pass(std::vector<Band> bands) {
  FilterSpec s;
  s.kind = FilterKind::band_pass;
  s.bands = std::move(bands);
  validate(s);
  return s;
}

FilterSpec FilterSpec::pixelation(std::size_t n_pixels, double bandwidth) {
  FilterSpec s;
  s.kind = FilterKind::pixelation;
  s.n_pixels = n_pixels;
  s.bandwidth = bandwidth;
  validate(s);
  return s;
}

void validate(const FilterSpec& spec) {
  switch (spec.kind) {
    case FilterKind::identity:
      if (!spec.bands.empty() || spec.n_pixels != 0) throw FilterError("filter: identity takes no parameters");
      break;
    case FilterKind::band_pass:
      if (spec.bands.empty()) throw FilterError("filter: band_pass needs at least one band");
      if (spec.n_pixels != 0 || spec.bandwidth != 0.0) throw FilterError("filter: pixel settings given for band_pass");
      for (const auto& b : spec.bands) {
        if (!(b.center > 0.0) || !(b.width > 0.0)) throw FilterError("filter: band centers and widths must be positive");
      }
      break;
    case FilterKind::pixelation:
      if (!spec.bands.empty()) throw FilterError("filter: bands given for pixelation");
      if (spec.n_pixels < 1) throw FilterError("filter: pixelation needs at least one pixel");
      if (!(spec.bandwidth > 0.0)) throw FilterError("filter: pixelation bandwidth must be positive");
      break;
  }
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::identity: return "identity";
    case FilterKind::band_pass: return "band_pass";
    case FilterKind::pixelation: return "pixelation";
  }
  return "?";
}

Spectrum spectrum_of(const FieldGrid& field) {
  validate(field);
  Spectrum s;
  s.t_final = field.grid.t_final;
  s.amplitudes = forward(field);
  s.frequencies.resize(field.grid.n_steps);
  for (std::size_t k = 0; k < field.grid.n_steps; ++k) s.frequencies[k] = bin_frequency(k, field.grid);
  return s;
}

FieldGrid field_from_spectrum(const Spectrum& spectrum, const TimeGrid& grid) {
  if (spectrum.amplitudes.size() != grid.n_steps) throw FilterError("spectrum length does not match grid");
  return backward(spectrum.amplitudes, grid);
}

SpectralFilter::SpectralFilter(FilterSpec spec, const TimeGrid& grid) : spec_(std::move(spec)), grid_(grid) {
  validate(spec_);
  validate(grid_);
  const std::size_t n = grid_.n_steps;
  const double resolution = 2.0 * units::kPi / grid_.t_final;
  const double nyquist = resolution * static_cast<double>(n / 2);
  const double tol = 1e-9 * resolution;

  if (spec_.kind == FilterKind::band_pass) {
    mask_.assign(n, 0);
    for (const auto& b : spec_.bands) {
      const double lo = b.center - 0.5 * b.width;
      const double hi = b.center + 0.5 * b.width;
      if (lo > nyquist + tol) {
        throw FilterError("filter: band at " + std::to_string(b.center) + " lies above the Nyquist frequency");
      }
      bool any = false;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = std::abs(bin_frequency(k, grid_));
        if (w >= lo - tol && w <= hi + tol) {
          mask_[k] = 1;
          any = true;
        }
      }
      if (!any) {
        throw FilterError("filter: band at " + std::to_string(b.center) + " is narrower than the frequency resolution");
      }
    }
  } else if (spec_.kind == FilterKind::pixelation) {
    if (spec_.bandwidth > nyquist + tol) throw FilterError("filter: pixelation bandwidth exceeds the Nyquist frequency");
    pixels_.assign(spec_.n_pixels, {});
    const double width = spec_.bandwidth / static_cast<double>(spec_.n_pixels);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double w = bin_frequency(k, grid_);
      const double wabs = std::abs(w);
      if (wabs > spec_.bandwidth + tol) continue;
      auto p = static_cast<std::size_t>(std::floor(wabs / width + 1e-9));
      p = std::min(p, spec_.n_pixels - 1);
      pixels_[p].push_back(k);
    }
  }

  FieldGrid e0(grid_);
  e0.values[0] = 1.0;
  e0.values[n] = 1.0;
  impulse_ = apply(e0).values;
}

void SpectralFilter::project_spectrum(std::vector<cplx>& x) const {
  const std::size_t n = x.size();
  if (spec_.kind == FilterKind::band_pass) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!mask_[k]) x[k] = 0.0;
    }
    return;
  }
  // Pixelation: replace every pixel by its mean; bins outside all pixels vanish.
  std::vector<cplx> y(n, cplx{0.0, 0.0});
  const bool even = n % 2 == 0;
  for (const auto& bins : pixels_) {
    if (bins.empty()) continue;
    bool self_conjugate = false;
    for (std::size_t k : bins) {
      if (k == 0 || (even && k == n / 2)) self_conjugate = true;
    }
    cplx value{0.0, 0.0};
    if (self_conjugate) {
      // The DC / Nyquist bins are real, so the pixel value must be real too;
      // other bins count twice because they appear at +-f.
      double num = 0.0, den = 0.0;
      for (std::size_t k : bins) {
        const double w = (k == 0 || (even && k == n / 2)) ? 1.0 : 2.0;
        num += w * x[k].real();
        den += w;
      }
      value = num / den;
    } else {
      for (std::size_t k : bins) value += x[k];
      value /= static_cast<double>(bins.size());
    }
    for (std::size_t k : bins) {
      y[k] = value;
      if (k != 0 && !(even && k == n / 2)) y[n - k] = std::conj(value);
    }
  }
  x = std::move(y);
}

FieldGrid SpectralFilter::apply(const FieldGrid& field) const {
  if (field.grid.n_steps != grid_.n_steps || field.grid.t_final != grid_.t_final) {
    throw FilterError("filter: field grid differs from the filter grid");
  }
  validate(field);
  if (is_identity()) {
    FieldGrid out = field;
    out.values[grid_.n_steps] = out.values[0];
    return out;
  }
  auto x = forward(field);
  project_spectrum(x);
  return backward(std::move(x), grid_);
}

FieldGrid SpectralFilter::apply_admissible(const FieldGrid& field) const {
  FieldGrid out = apply(field);
  const double g0 = impulse_[0];
  if (g0 > 1e-300) {
    const double c = out.values[0] / g0;
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] -= c * impulse_[k];
  }
  out.values[0] = 0.0;
  out.values[grid_.n_steps] = 0.0;
  return out;
}

double SpectralFilter::out_of_band_energy(const FieldGrid& field) const {
  const double total = periodic_energy(field);
  if (total == 0.0) return 0.0;
  const FieldGrid f = apply(field);
  double resid = 0.0;
  for (std::size_t k = 0; k < grid_.n_steps; ++k) {
    const double d = field.values[k] - f.values[k];
    resid += d * d;
  }
  return resid / total;
}

std::size_t SpectralFilter::kept_bins() const {
  std::size_t count = 0;
  if (spec_.kind == FilterKind::band_pass) {
    for (std::size_t k = 0; k <= grid_.n_steps / 2; ++k) count += mask_[k] ? 1 : 0;
  } else if (spec_.kind == FilterKind::pixelation) {
    for (const auto& p : pixels_) count += p.size();
  } else {
    count = grid_.n_steps / 2 + 1;
  }
  return count;
}

FieldGrid apply_bandpass(const FieldGrid& field, const FilterSpec& spec) {
  if (spec.kind != FilterKind::band_pass) throw FilterError("apply_bandpass: spec is not a band_pass filter");
  return SpectralFilter(spec, field.grid).apply(field);
}

FieldGrid apply_pixelation(const FieldGrid& field, const FilterSpec& spec) {
  if (spec.kind != FilterKind::pixelation) throw FilterError("apply_pixelation: spec is not a pixelation filter");
  return SpectralFilter(spec, field.grid).apply(field);
}

FieldGrid apply_filter(const FieldGrid& field, const FilterSpec& spec) {
  return SpectralFilter(spec, field.grid).apply(field);
}

double out_of_band_energy(const FieldGrid& field, const FilterSpec& spec) {
  return SpectralFilter(spec, field.grid).out_of_band_energy(field);
}

double periodic_energy(const FieldGrid& field) {
  double e = 0.0;
  for (std::size_t k = 0; k < field.grid.n_steps; ++k) e += field.values[k] * field.values[k];
  return e;
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, FrequencyUnit unit) {
  const std::size_t n = spectrum.amplitudes.size();
  double peak = 0.0;
  for (std::size_t k = 0; k <= n / 2; ++k) peak = std::max(peak, std::norm(spectrum.amplitudes[k]));
  out << (unit == FrequencyUnit::wavenumber ? "frequency_cm-1" : "frequency_THz") << ",normalized_power\n";
  out << std::setprecision(10);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double w = spectrum.frequencies[k];
    const double f = unit == FrequencyUnit::wavenumber ? units::hartree_to_wavenumber(w) : units::angular_au_to_thz(w);
    const double p = peak > 0.0 ? std::norm(spectrum.amplitudes[k]) / peak : 0.0;
    out << f << ',' << p << '\n';
  }
}

}  // namespace specoct
