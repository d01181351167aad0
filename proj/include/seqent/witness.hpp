// Copyright 2026 The seqent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "seqent/criteria.hpp"
#include "seqent/errors.hpp"
#include "seqent/linalg.hpp"
#include "seqent/quantum.hpp"
#include "seqent/scenario.hpp"

namespace seqent {

inline constexpr double kNegativityThreshold = -1e-10;

struct PptReport {
  std::array<double, 4> eigenvalues{};  // ascending
  double min_eig = 0.0;
  bool entangled = false;
  double mixedness = 1.0;  // Tr[rho^2]
};

/// Spectrum of the partial transpose on the second qubit.
inline PptReport ppt_report(const CMatrix& rho) {
  const auto eig = hermitian_eigenvalues(partial_transpose(rho, Subsystem::Second));
  PptReport r;
  std::copy(eig.begin(), eig.end(), r.eigenvalues.begin());
  r.min_eig = r.eigenvalues[0];
  r.entangled = r.min_eig < kNegativityThreshold;
  r.mixedness = trace(rho * rho).real();
  return r;
}

inline PptReport ppt_report(const DensityMatrix& rho) { return ppt_report(rho.matrix()); }

/*******************************************************************************
 *
 * Closed-form partial-transpose spectra of the pair-2 state
 *
 ******************************************************************************/

enum class AppendixFamily {
  UnilateralWeak,
  UnilateralPPM,
  BilateralWeakSymmetric,
  BilateralWeakAsym,  // theta = pi/4, G1 = G3 = 1
  BilateralPPMSymmetric,
  BilateralPPMAsym,  // theta = pi/4, G1 = G3 = 1
};

inline const char* to_string(AppendixFamily f) {
  switch (f) {
    case AppendixFamily::UnilateralWeak: return "unilateral-weak";
    case AppendixFamily::UnilateralPPM: return "unilateral-ppm";
    case AppendixFamily::BilateralWeakSymmetric: return "bilateral-weak-symmetric";
    case AppendixFamily::BilateralWeakAsym: return "bilateral-weak-asym";
    case AppendixFamily::BilateralPPMSymmetric: return "bilateral-ppm-symmetric";
    case AppendixFamily::BilateralPPMAsym: return "bilateral-ppm-asym";
  }
  return "?";
}

inline constexpr std::array<AppendixFamily, 6> kAppendixFamilies{
    AppendixFamily::UnilateralWeak,         AppendixFamily::UnilateralPPM,
    AppendixFamily::BilateralWeakSymmetric, AppendixFamily::BilateralWeakAsym,
    AppendixFamily::BilateralPPMSymmetric,  AppendixFamily::BilateralPPMAsym};

namespace detail {

// Square root that tolerates round-off just below zero.
inline double root(double v) {
  if (v < 0.0 && v > -1e-13) return 0.0;
  return std::sqrt(v);
}

inline void require_gain(double g) {
  if (!(g > 0.0 && g <= 1.0)) throw DomainError("appendix_eigs: gain outside (0, 1]");
}

inline void require_asym_point(const Params& p) {
  if (std::abs(p.theta - std::numbers::pi / 4) > 1e-12 || std::abs(p.g[0] - 1.0) > 1e-12 ||
      std::abs(p.g[2] - 1.0) > 1e-12)
    throw DomainError("appendix_eigs: asymmetric families require theta = pi/4 and G1 = G3 = 1");
}

// Eigenvalues f1..f4 of the asymmetric bilateral point, in terms of F2, F4.
inline std::array<double, 4> bilateral_asym_f(double F2, double F4) {
  return {(4 + F4 + F2 * (1 + 2 * F4)) / 16, (6 + F2 + F4) / 16,
          (2 - F4 - F2 * (1 + 2 * F4)) / 16, (4 - F2 - F4) / 16};
}

}  // namespace detail

/// Closed-form partial-transpose eigenvalues (e1..e4, f1..f4 or u1..u4, in
/// that order) of the state reaching pair 2.
///
/// Symmetric families read their single gain from p.g[0]. The asymmetric
/// families require theta = pi/4 and G1 = G3 = 1 and read G2, G4.
inline std::array<double, 4> appendix_eigs(AppendixFamily fam, const Params& p) {
  using detail::root;
  using closed::t;
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2))
    throw DomainError("appendix_eigs: theta outside [0, pi/2]");
  const double th = p.theta;
  const double s2 = std::sin(2 * th);
  const double sq = s2 * s2;

  switch (fam) {
    case AppendixFamily::UnilateralWeak: {
      detail::require_gain(p.g[0]);
      detail::require_gain(p.g[1]);
      const double G1 = p.g[0];
      const double F1 = disturbance_factor(StrategyKind::Weak, p.g[0]);
      const double F2 = disturbance_factor(StrategyKind::Weak, p.g[1]);
      const double r1 = root(1 - 8 * t(F2) * sq / ((3 + F2) * (3 + F2)));
      const double r2 = root(1 + 4 * (-G1 * G1 + t(F1) * t(F2)) * sq / ((1 - F2) * (1 - F2)));
      return {(3 + F2) * (1 - r1) / 8, (3 + F2) * (1 + r1) / 8, (1 - F2) * (1 - r2) / 8,
              (1 - F2) * (1 + r2) / 8};
    }
    case AppendixFamily::UnilateralPPM: {
      detail::require_gain(p.g[0]);
      detail::require_gain(p.g[1]);
      const double G1 = p.g[0], G2 = p.g[1];
      const double r1 = root(1 - 8 * (2 - G2) * sq / ((4 - G2) * (4 - G2)));
      const double r2 = root(1 + 4 * (2 - G1) * (2 - G1 - G2) * sq / (G2 * G2));
      return {(4 - G2) * (1 - r1) / 8, (4 - G2) * (1 + r1) / 8, G2 * (1 - r2) / 8,
              G2 * (1 + r2) / 8};
    }
    case AppendixFamily::BilateralWeakSymmetric: {
      detail::require_gain(p.g[0]);
      const double G = p.g[0];
      const double F = disturbance_factor(StrategyKind::Weak, G);
      const double G2 = G * G, G4 = G2 * G2;
      const double outer = root(20 + 12 * F + 2 * G2 * (-8 + 3 * F) +
                                (12 + 20 * F - 6 * G2 * F) * std::cos(4 * th) + 9 * G4 * sq);
      // The radical spans the sin^2(2 theta) factor.
      const double inner = root((25 * G4 + 8 * (5 + 3 * F) - 4 * G2 * (16 + 5 * F)) * sq);
      return {(6 - G2 + 2 * F - outer) / 16, (6 - G2 + 2 * F + outer) / 16,
              (2 + G2 - 2 * F - inner) / 16, (2 + G2 - 2 * F + inner) / 16};
    }
    case AppendixFamily::BilateralWeakAsym:
      detail::require_asym_point(p);
      detail::require_gain(p.g[1]);
      detail::require_gain(p.g[3]);
      return detail::bilateral_asym_f(disturbance_factor(StrategyKind::Weak, p.g[1]),
                                      disturbance_factor(StrategyKind::Weak, p.g[3]));
    case AppendixFamily::BilateralPPMSymmetric: {
      detail::require_gain(p.g[0]);
      const double G = p.g[0];
      const double outer =
          root(64 + G * (-64 + G * (32 + 3 * G * (-8 + 3 * G))) +
               (64 - 64 * G + 24 * G * G * G - 9 * G * G * G * G) * std::cos(4 * th));
      const double inner = root((8 + G * (-12 + 5 * G)) * (8 + G * (-12 + 5 * G)) * sq);
      const double base = 16 + 2 * (-4 + G) * G;
      return {(base - std::numbers::sqrt2 * outer) / 32, (base + std::numbers::sqrt2 * outer) / 32,
              ((4 - G) * G - inner) / 16, ((4 - G) * G + inner) / 16};
    }
    case AppendixFamily::BilateralPPMAsym:
      detail::require_asym_point(p);
      detail::require_gain(p.g[1]);
      detail::require_gain(p.g[3]);
      return detail::bilateral_asym_f(disturbance_factor(StrategyKind::PPM, p.g[1]),
                                      disturbance_factor(StrategyKind::PPM, p.g[3]));
  }
  throw DomainError("appendix_eigs: unknown family");
}

/// Scenario whose pair-2 state the family's eigenvalues describe (symmetric
/// families broadcast p.g[0] to all four gains).
inline ScenarioConfig appendix_scenario(AppendixFamily fam, const Params& p) {
  const double g = p.g[0];
  switch (fam) {
    case AppendixFamily::UnilateralWeak:
      return ScenarioConfig::unilateral(StrategyKind::Weak, p.theta, p.g[0], p.g[1]);
    case AppendixFamily::UnilateralPPM:
      return ScenarioConfig::unilateral(StrategyKind::PPM, p.theta, p.g[0], p.g[1]);
    case AppendixFamily::BilateralWeakSymmetric:
      return ScenarioConfig::bilateral(StrategyKind::Weak, p.theta, g, g, g, g);
    case AppendixFamily::BilateralWeakAsym:
      return ScenarioConfig::bilateral(StrategyKind::Weak, p.theta, 1.0, p.g[1], 1.0, p.g[3]);
    case AppendixFamily::BilateralPPMSymmetric:
      return ScenarioConfig::bilateral(StrategyKind::PPM, p.theta, g, g, g, g);
    case AppendixFamily::BilateralPPMAsym:
      return ScenarioConfig::bilateral(StrategyKind::PPM, p.theta, 1.0, p.g[1], 1.0, p.g[3]);
  }
  throw DomainError("appendix_scenario: unknown family");
}

/*******************************************************************************
 *
 * Mixedness of the unilateral pair-2 state
 *
 ******************************************************************************/

enum class MixednessFamily { UnilateralWeak, UnilateralPPM };

inline const char* to_string(MixednessFamily f) {
  return f == MixednessFamily::UnilateralWeak ? "unilateral-weak" : "unilateral-ppm";
}

/// Closed-form Tr[rho'^2]. The weak-strategy expression carries no theta and
/// coincides with the purity of the pair-2 state at theta = pi/4.
inline double mixedness_closed_form(MixednessFamily fam, const Params& p) {
  using closed::t;
  detail::require_gain(p.g[0]);
  detail::require_gain(p.g[1]);
  if (fam == MixednessFamily::UnilateralWeak) {
    const double F1 = disturbance_factor(StrategyKind::Weak, p.g[0]);
    const double F2 = disturbance_factor(StrategyKind::Weak, p.g[1]);
    return (2 + F1 * F1 + F2 * F2 + t(F1) * t(F2)) / 8;
  }
  const double F1 = disturbance_factor(StrategyKind::PPM, p.g[0]);
  const double F2 = disturbance_factor(StrategyKind::PPM, p.g[1]);
  return (8 + F1 * t(F1) + (t(F1) + 2 * t(F2)) * F2 +
          (1 - F1) * (t(F1) + t(F2)) * std::cos(4 * p.theta)) /
         16;
}

}  // namespace seqent
