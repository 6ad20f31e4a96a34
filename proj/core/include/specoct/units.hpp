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

#include <cmath>
#include <numbers>

// Conversions between laboratory units and atomic units (hbar = e = m_e = 1).
// Everything inside the library is in atomic units; these are only used at the
// configuration / reporting boundary.
namespace specoct::units {

inline constexpr double kPi = std::numbers::pi;

// CODATA 2018.
inline constexpr double kHartreePerWavenumber = 1.0 / 219474.6313632;  // cm^-1 -> Eh
inline constexpr double kAtomicTimeSeconds = 2.4188843265857e-17;     // s
inline constexpr double kBoltzmannHartreePerKelvin = 3.166811563e-6;  // Eh / K
inline constexpr double kSpeedOfLightCmPerSecond = 2.99792458e10;
// Atomic unit of intensity, eps0 * c * E_au^2 / 2, in W/cm^2.
inline constexpr double kAtomicIntensityWPerCm2 = 3.50944758e16;

inline constexpr double wavenumber_to_hartree(double cm) { return cm * kHartreePerWavenumber; }
inline constexpr double hartree_to_wavenumber(double eh) { return eh / kHartreePerWavenumber; }

inline constexpr double ps_to_au(double ps) { return ps * 1e-12 / kAtomicTimeSeconds; }
inline constexpr double au_to_ps(double t) { return t * kAtomicTimeSeconds * 1e12; }

// Angular frequency in atomic units (rad per atomic time unit) <-> ordinary
// frequency in THz (cycles per ps).
inline constexpr double angular_au_to_thz(double w) { return w / (2.0 * kPi) / kAtomicTimeSeconds * 1e-12; }
inline constexpr double thz_to_angular_au(double f) { return f * 2.0 * kPi * kAtomicTimeSeconds * 1e12; }

// Angular frequency in rad/ps.
inline constexpr double angular_au_to_rad_per_ps(double w) { return w / kAtomicTimeSeconds * 1e-12; }
inline constexpr double rad_per_ps_to_angular_au(double w) { return w * kAtomicTimeSeconds * 1e12; }

// Peak intensity (W/cm^2) -> envelope amplitude, E_au = sqrt(I / I_au).
inline double intensity_to_field_au(double w_per_cm2) { return std::sqrt(w_per_cm2 / kAtomicIntensityWPerCm2); }
inline double field_au_to_intensity(double e_au) { return e_au * e_au * kAtomicIntensityWPerCm2; }

inline constexpr double kelvin_to_hartree(double kelvin) { return kelvin * kBoltzmannHartreePerKelvin; }

}  // namespace specoct::units
