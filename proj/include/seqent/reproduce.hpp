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
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "seqent/explore.hpp"
#include "seqent/witness.hpp"

namespace seqent {

/// One headline number: the engine's value next to the published one.
struct GoldenRow {
  int criterion = 0;  // acceptance criterion this row belongs to
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;

  double deviation() const { return std::abs(computed - expected); }
  bool pass() const { return deviation() <= tolerance; }  // false for NaN
};

namespace detail {

template <typename... Args>
std::string sprintf_string(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kQuarterPi = std::numbers::pi / 4;

inline MaximinSpec maximin_spec(ScenarioTag tag, StrategyKind kind, CriterionKind objective,
                                std::vector<Param> free, std::vector<double> lo, std::vector<double> hi,
                                std::map<Param, double> fixed, std::vector<Tie> ties, int workers) {
  MaximinSpec s;
  s.binding = Binding{tag, kind, std::move(free), std::move(fixed), std::move(ties)};
  s.objective = objective;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  s.options.workers = workers;
  return s;
}

inline std::vector<Tie> all_tied() { return {{Param::G2, Param::G1}, {Param::G3, Param::G1}, {Param::G4, Param::G1}}; }

// Single root of g on [lo, hi], NaN unless exactly one exists.
inline double sole_root(const std::function<double(double)>& g, double lo, double hi) {
  const auto r = find_roots(g, lo, hi);
  return r.size() == 1 ? r[0] : kNaN;
}

// Largest |root - curve(sweep)| over a sweep; NaN if any sweep value has no
// single root.
inline double curve_deviation(const std::vector<BoundaryPoint>& trace,
                              const std::function<double(double)>& curve) {
  double worst = 0.0;
  for (const auto& bp : trace) {
    if (bp.roots.size() != 1) return kNaN;
    worst = std::max(worst, std::abs(bp.roots[0] - curve(bp.sweep)));
  }
  return worst;
}

inline std::vector<double> sweep_values(double lo, double hi, int n) { return Axis{Param::Theta, lo, hi, n}.values(); }

}  // namespace detail

/// Every headline number of the unilateral and bilateral studies, computed
/// on the density-matrix engine. Argmax coordinates get their own rows.
inline std::vector<GoldenRow> golden_rows(int workers = 1) {
  using namespace detail;
  using CK = CriterionKind;
  using SK = StrategyKind;
  using ST = ScenarioTag;
  const double pi4 = kQuarterPi;
  const double g_lo = 0.01;
  std::vector<GoldenRow> rows;
  const auto add = [&](int crit, std::string name, double computed, double expected, double tol,
                       std::string detail = "") {
    rows.push_back({crit, std::move(name), computed, expected, tol, std::move(detail)});
  };
  const auto at = [](const OptimumReport& r) {
    std::string s = "argmax";
    for (const auto& [p, v] : r.argmax) s += sprintf_string(" %s=%.6f", to_string(p), v);
    return s + sprintf_string(" evals=%ld converged=%s", r.evaluations, r.converged ? "yes" : "no");
  };

  // Unilateral weak, mutual information.
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::Weak, CK::MutualInfo, {Param::G1, Param::G2},
                                        {g_lo, g_lo}, {1, 1}, {{Param::Theta, pi4}}, {}, workers));
    add(2, "unilateral-weak maximin I", r.value, 1.089, 0.005, at(r));
    add(2, "unilateral-weak maximin I argmax G1", r.at(Param::G1), 0.994, 0.02);
    add(2, "unilateral-weak maximin I argmax G2", r.at(Param::G2), 0.397, 0.02);
  }
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::Weak, CK::MutualInfo, {Param::G2}, {g_lo}, {1},
                                        {{Param::Theta, pi4}, {Param::G1, 1.0}}, {}, workers));
    add(3, "unilateral-weak asymmetric I (G1 = 1)", r.value, 1.081, 0.005, at(r));
    add(3, "unilateral-weak asymmetric I argmax G2", r.at(Param::G2), 0.332, 0.01);
  }
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::Weak, CK::MutualInfo, {Param::G1}, {g_lo}, {1},
                                        {{Param::Theta, pi4}}, {{Param::G2, Param::G1}}, workers));
    add(3, "unilateral-weak symmetric I", r.value, 1.06, 0.005, at(r));
    add(3, "unilateral-weak symmetric I argmax G", r.at(Param::G1), 0.80, 0.01);
  }

  // Unilateral weak, conditional probability sum.
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::Weak, CK::CondProbSum, {Param::G1, Param::G2},
                                        {g_lo, g_lo}, {1, 1}, {{Param::Theta, pi4}}, {}, workers));
    add(4, "unilateral-weak maximin S", r.value, 18.0 / 5, 1e-3, at(r));
    add(4, "unilateral-weak maximin S argmax G1", r.at(Param::G1), 0.8, 1e-2);
    add(4, "unilateral-weak maximin S argmax G2", r.at(Param::G2), 0.8, 1e-2);
    const auto trace = boundary_trace(
        [&](double g2, double g1) {
          Params p{pi4, {g1, g2, 1, 1}};
          return observe(ST::Unilateral, SK::Weak, Observable::S1, p) - 3.0;
        },
        sweep_values(0.05, 0.95, 19), g_lo, 1.0);
    add(4, "unilateral-weak S1 = 3 boundary vs G1 = 1 - G2", curve_deviation(trace, [](double g2) { return 1 - g2; }),
        0.0, 1e-6, "19 sweep points G2 in [0.05, 0.95]");
  }

  // Unilateral weak, I2 = 1 critical points.
  {
    const auto i2 = [&](double g1, double g2) {
      return observe(ST::Unilateral, SK::Weak, Observable::I2, Params{pi4, {g1, g2, 1, 1}}) - 1.0;
    };
    add(5, "unilateral-weak I2 = 1 at G1 = 1, root G2", sole_root([&](double g2) { return i2(1.0, g2); }, g_lo, 1.0),
        0.46, 0.005);
    add(5, "unilateral-weak I2 = 1 at G2 = 1, root G1", sole_root([&](double g1) { return i2(g1, 1.0); }, g_lo, 1.0),
        0.46, 0.005);
  }

  // Unilateral PPM.
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::PPM, CK::MutualInfo, {Param::G1, Param::G2},
                                        {g_lo, g_lo}, {1, 1}, {{Param::Theta, pi4}}, {}, workers));
    add(6, "unilateral-ppm maximin I", r.value, 1.05, 0.005, at(r));
    add(6, "unilateral-ppm maximin I argmax G1", r.at(Param::G1), 0.125, 0.02);
    add(6, "unilateral-ppm maximin I argmax G2", r.at(Param::G2), 0.857, 0.02);
  }
  {
    const auto r = maximin(maximin_spec(ST::Unilateral, SK::PPM, CK::MutualInfo, {Param::G1}, {g_lo}, {1},
                                        {{Param::Theta, pi4}, {Param::G2, 1.0}}, {}, workers));
    add(6, "unilateral-ppm asymmetric I (G2 = 1)", r.value, 1.043, 0.005, at(r));
    add(6, "unilateral-ppm asymmetric I argmax G1", r.at(Param::G1), 0.083, 0.01);
  }
  {
    const auto spec = maximin_spec(ST::Unilateral, SK::PPM, CK::CondProbSum, {Param::G1, Param::G2}, {g_lo, g_lo},
                                   {1, 1}, {{Param::Theta, pi4}}, {}, workers);
    const auto r = maximin(spec);
    const double g1 = r.at(Param::G1), g2 = r.at(Param::G2);
    const Objective f = [&](std::span<const double> x) {
      return maximin_objective(ST::Unilateral, SK::PPM, CK::CondProbSum, spec.binding.resolve(x));
    };
    const std::vector<double> x{g1, g2}, dir{1.0, -1.0}, lo{g_lo, g_lo}, hi{1, 1};
    const auto [a, b] = optimal_segment(f, x, dir, lo, hi);
    add(6, "unilateral-ppm maximin S", r.value, 10.0 / 3, 1e-3,
        at(r) + sprintf_string("; optimal segment (%.6f, %.6f) to (%.6f, %.6f)", a[0], a[1], b[0], b[1]));
    add(6, "unilateral-ppm maximin S argmax |G1 + G2 - 4/3|", std::abs(g1 + g2 - 4.0 / 3), 0.0, 1e-3);
  }

  // Bilateral weak, conditional probability sum.
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::Weak, CK::CondProbSum, {Param::G1}, {g_lo}, {1},
                                        {{Param::Theta, pi4}}, all_tied(), workers));
    add(7, "bilateral-weak symmetric maximin S", r.value, 82.0 / 25, 1e-3, at(r));
    add(7, "bilateral-weak symmetric maximin S argmax G", r.at(Param::G1), 0.8, 1e-2);
    const auto roots = find_roots(
        [&](double g) {
          const auto v = maximin_objective(ST::Bilateral, SK::Weak, CK::CondProbSum, Params{pi4, {g, g, g, g}});
          return v ? *v - 3.0 : kNaN;
        },
        g_lo, 1.0);
    const bool two = roots.size() == 2;
    add(7, "bilateral-weak symmetric S window lower", two ? roots[0] : kNaN, 1 / std::numbers::sqrt2, 1e-4,
        sprintf_string("%zu roots", roots.size()));
    add(7, "bilateral-weak symmetric S window upper", two ? roots[1] : kNaN,
        std::sqrt(2 * (std::numbers::sqrt2 - 1)), 1e-4);
  }
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::Weak, CK::CondProbSum, {Param::G2}, {g_lo}, {1},
                                        {{Param::Theta, pi4}, {Param::G1, 1.0}, {Param::G3, 1.0}},
                                        {{Param::G4, Param::G2}}, workers));
    const double s31 = std::sqrt(31.0);
    add(7, "bilateral-weak asymmetric maximin S (G1 = G3 = 1)", r.value, 2 * (34 + s31) / 25, 1e-3, at(r));
    add(7, "bilateral-weak asymmetric maximin S argmax G2 = G4", r.at(Param::G2), std::sqrt((2 * s31 - 7) / 25),
        1e-3);
  }

  // Bilateral weak, mutual information ceiling.
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::Weak, CK::MutualInfo, {Param::G1}, {g_lo}, {1},
                                        {{Param::Theta, pi4}}, all_tied(), workers));
    add(8, "bilateral-weak symmetric I ceiling", r.value, 0.64, 0.01, at(r) + " (below 1: no sharing)");
    add(8, "bilateral-weak symmetric I ceiling argmax G", r.at(Param::G1), 0.8, 0.01);
  }

  // Bilateral PPM.
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::PPM, CK::CondProbSum, {Param::G1, Param::Theta},
                                        {g_lo, 0.01}, {1, pi4}, {}, all_tied(), workers));
    add(9, "bilateral-ppm symmetric maximin S", r.value, 2.937, 0.005, at(r));
    add(9, "bilateral-ppm symmetric maximin S argmax G", r.at(Param::G1), 0.627, 0.01);
    add(9, "bilateral-ppm symmetric maximin S argmax theta", r.at(Param::Theta), 0.729, 0.01);
  }
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::PPM, CK::CondProbSum, {Param::G2, Param::G4},
                                        {1e-6, 1e-6}, {1, 1},
                                        {{Param::Theta, pi4}, {Param::G1, 1.0}, {Param::G3, 1.0}}, {}, workers));
    add(9, "bilateral-ppm asymmetric maximin S (G1 = G3 = 1)", r.value, 3.125, 0.005, at(r));
  }
  {
    const auto s2 = [&](double g2, double g4) {
      return observe(ST::Bilateral, SK::PPM, Observable::S2, Params{pi4, {1, g2, 1, g4}}) - 3.0;
    };
    const auto trace = boundary_trace([&](double g4, double g2) { return s2(g2, g4); },
                                      sweep_values(0.025, 0.475, 19), 1e-6, 1.0);
    add(9, "bilateral-ppm S2 = 3 boundary vs G2 = (1 - 2 G4)/(2 - G4)",
        curve_deviation(trace, [](double g4) { return (1 - 2 * g4) / (2 - g4); }), 0.0, 1e-6,
        "19 sweep points G4 in [0.025, 0.475]");
    add(9, "bilateral-ppm S2 = 3 endpoint G2 at G4 -> 0",
        sole_root([&](double g2) { return s2(g2, 1e-9); }, 1e-6, 1.0), 0.5, 1e-6);
    add(9, "bilateral-ppm S2 = 3 endpoint G4 at G2 -> 0",
        sole_root([&](double g4) { return s2(1e-9, g4); }, 1e-6, 1.0), 0.5, 1e-6);
  }
  {
    const auto r = maximin(maximin_spec(ST::Bilateral, SK::PPM, CK::MutualInfo, {Param::G1}, {g_lo}, {1},
                                        {{Param::Theta, pi4}}, all_tied(), workers));
    add(9, "bilateral-ppm symmetric I example", r.value, 0.32, 0.01, at(r));
  }

  // Pearson windows, symmetric gains at theta = pi/4.
  for (const SK kind : {SK::Weak, SK::PPM}) {
    const auto roots = find_roots(
        [&](double g) {
          const auto v = maximin_objective(ST::Bilateral, kind, CK::Pearson, Params{pi4, {g, g, g, g}});
          return v ? *v - 1.0 : kNaN;
        },
        g_lo, 1.0);
    const double expected = kind == SK::Weak ? std::sqrt(2 * (std::numbers::sqrt2 - 1)) : 2 - std::numbers::sqrt2;
    add(10, std::string("bilateral-") + to_string(kind) + " symmetric C window upper",
        roots.size() == 1 ? roots[0] : kNaN, expected, 1e-4, sprintf_string("%zu roots on [0.01, 1]", roots.size()));
  }

  // Separability boundary of the asymmetric bilateral weak point.
  {
    const auto eig = [&](double f4, double f2) {
      const double g2 = std::sqrt(1 - f2 * f2), g4 = std::sqrt(1 - f4 * f4);
      return observe(ST::Bilateral, SK::Weak, Observable::PptMinEig, Params{pi4, {1, g2, 1, g4}});
    };
    const auto trace = boundary_trace(eig, sweep_values(0.4, 0.99, 19), 0.0, 1 - 1e-9);
    add(11, "bilateral-weak asymmetric PPT boundary vs F2 = (2 - F4)/(1 + 2 F4)",
        curve_deviation(trace, [](double f4) { return (2 - f4) / (1 + 2 * f4); }), 0.0, 1e-6,
        "19 sweep points F4 in [0.4, 0.99]");
  }
  return rows;
}

/// "[c] name | computed | expected | deviation <= tol | PASS/FAIL", with the
/// detail on an indented second line when present.
inline std::string format_golden(const std::vector<GoldenRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += detail::sprintf_string("[%2d] %-66s computed %.10g  expected %.10g  dev %.3e (tol %.1e)  %s\n",
                                  r.criterion, r.name.c_str(), r.computed, r.expected, r.deviation(),
                                  r.tolerance, r.pass() ? "PASS" : "FAIL");
    if (!r.detail.empty()) out += "     " + r.detail + "\n";
  }
  return out;
}

}  // namespace seqent
