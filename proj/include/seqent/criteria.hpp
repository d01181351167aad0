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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "seqent/errors.hpp"
#include "seqent/quantum.hpp"
#include "seqent/scenario.hpp"

namespace seqent {

enum class CriterionKind { MutualInfo, CondProbSum, Pearson };

inline const char* to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::MutualInfo: return "I";
    case CriterionKind::CondProbSum: return "S";
    case CriterionKind::Pearson: return "C";
  }
  return "?";
}

/// Entanglement threshold test for a criterion total (d = 2).
inline bool exceeds_threshold(CriterionKind k, double total) {
  switch (k) {
    case CriterionKind::MutualInfo: return total > 1.0;
    case CriterionKind::CondProbSum: return total > 3.0 || total < 1.0;
    case CriterionKind::Pearson: return total > 1.0;
  }
  return false;
}

struct CriterionValue {
  CriterionKind kind;
  int pair;
  double z_term;
  double x_term;
  double total;
};

/*******************************************************************************
 *
 * Helper functions shared by the closed forms
 *
 ******************************************************************************/

namespace closed {

/// v ln v with 0 ln 0 = 0.
inline double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

/// X(a) = a ln a + (2 - a) ln(2 - a).
inline double x1(double a) { return xlogx(a) + xlogx(2.0 - a); }

/// X(a, b) = a ln a + (b - a) ln(b - a).
inline double x2(double a, double b) { return xlogx(a) + xlogx(b - a); }

inline double t(double F) { return 1.0 + F; }

inline double f(double F, double theta) {
  const double c = std::cos(2.0 * theta);
  return 4.0 - t(F) * t(F) * c * c;
}

}  // namespace closed

/*******************************************************************************
 *
 * Criteria on outcome statistics
 *
 ******************************************************************************/

namespace detail {

inline double entropy_bits(std::initializer_list<double> ps) {
  double h = 0.0;
  for (double p : ps)
    if (p >= 1e-15) h -= p * std::log(p);
  return h / std::numbers::ln2;
}

}  // namespace detail

/// H(A) - H(A|B) in bits.
inline double mutual_information(const OutcomeDistribution& d) {
  const double ha = detail::entropy_bits({d.marginal_a(+1), d.marginal_a(-1)});
  const double hb = detail::entropy_bits({d.marginal_b(+1), d.marginal_b(-1)});
  const double hab = detail::entropy_bits({d.p[0][0], d.p[0][1], d.p[1][0], d.p[1][1]});
  const double value = ha - (hab - hb);
  return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

/// P(a=+1 | b=+1) + P(a=-1 | b=-1).
inline double matched_conditional_sum(const OutcomeDistribution& d) {
  double s = 0.0;
  for (int o : {+1, -1}) {
    const double pb = d.marginal_b(o);
    if (!(pb > 1e-15)) {
      std::ostringstream msg;
      msg << "matched_conditional_sum: P(b=" << (o > 0 ? "+1" : "-1")
          << ") is zero, conditional undefined";
      throw UndefinedConditionalError(msg.str());
    }
    s += d(o, o) / pb;
  }
  return s;
}

inline constexpr double kVarianceFloor = 1e-12;

/// (corr - meanA meanB) / sqrt((1 - meanA^2)(1 - meanB^2)) for +-1 valued
/// observables.
inline double pearson(const PauliMoments& m) {
  const double va = 1.0 - m.mean_a * m.mean_a;
  const double vb = 1.0 - m.mean_b * m.mean_b;
  if (va < kVarianceFloor || vb < kVarianceFloor) {
    std::ostringstream msg;
    msg << "pearson: singular variance (var_A = " << va << ", var_B = " << vb << ")";
    throw SingularVarianceError(msg.str());
  }
  return (m.corr - m.mean_a * m.mean_b) / std::sqrt(va * vb);
}

/// Operator-moment Pearson coefficient for arbitrary single-qubit
/// observables: (<A B> - <A><B>) / sqrt(Var A Var B).
inline double pearson_operators(const CMatrix& rho, const CMatrix& op_a, const CMatrix& op_b) {
  const CMatrix id = CMatrix::identity(2);
  const double ab = trace(kron(op_a, op_b) * rho).real();
  const double a = trace(kron(op_a, id) * rho).real();
  const double b = trace(kron(id, op_b) * rho).real();
  const double aa = trace(kron(op_a * op_a, id) * rho).real();
  const double bb = trace(kron(id, op_b * op_b) * rho).real();
  const double va = aa - a * a;
  const double vb = bb - b * b;
  if (va < kVarianceFloor || vb < kVarianceFloor)
    throw SingularVarianceError("pearson_operators: singular variance");
  return (ab - a * b) / std::sqrt(va * vb);
}

/// Criterion of pair k: MutualInfo and CondProbSum sum the Z (m=1) and X
/// (m=2) pair marginals; Pearson adds |C_zz| + |C_xx| from the Pauli
/// moments of the state reaching pair k.
inline CriterionValue criterion(const ScenarioConfig& cfg, CriterionKind kind, int k) {
  CriterionValue v{kind, k, 0.0, 0.0, 0.0};
  if (kind == CriterionKind::Pearson) {
    const CMatrix rho = detail::pair_state_matrix(cfg, k);
    v.z_term = pearson(pauli_moments(rho, Basis::Z));
    v.x_term = pearson(pauli_moments(rho, Basis::X));
    v.total = std::abs(v.z_term) + std::abs(v.x_term);
    return v;
  }
  const CMatrix rho = detail::pair_state_matrix(cfg, k);
  const OutcomeDistribution dz = detail::pair_table(cfg, rho, k, 1);
  const OutcomeDistribution dx = detail::pair_table(cfg, rho, k, 2);
  if (kind == CriterionKind::MutualInfo) {
    v.z_term = mutual_information(dz);
    v.x_term = mutual_information(dx);
  } else {
    v.z_term = matched_conditional_sum(dz);
    v.x_term = matched_conditional_sum(dx);
  }
  v.total = v.z_term + v.x_term;
  return v;
}

/// All three criteria for both pairs of a two-pair scenario. Failing
/// evaluations (singular Pearson variance, undefined conditional) leave the
/// value empty.
struct CriteriaTable {
  std::array<std::optional<double>, 2> mi;
  std::array<std::optional<double>, 2> cps;
  std::array<std::optional<double>, 2> pearson;

  const std::array<std::optional<double>, 2>& of(CriterionKind k) const {
    switch (k) {
      case CriterionKind::MutualInfo: return mi;
      case CriterionKind::CondProbSum: return cps;
      case CriterionKind::Pearson: return pearson;
    }
    return mi;
  }

  /// min over the two pairs; empty if either is missing.
  std::optional<double> min_of(CriterionKind k) const {
    const auto& v = of(k);
    if (!v[0] || !v[1]) return std::nullopt;
    return std::min(*v[0], *v[1]);
  }

  /// Both pairs past the entanglement threshold. S needs both above 3 or
  /// both below 1.
  bool double_violation(CriterionKind k) const {
    const auto& v = of(k);
    if (!v[0] || !v[1]) return false;
    if (k == CriterionKind::CondProbSum)
      return (*v[0] > 3.0 && *v[1] > 3.0) || (*v[0] < 1.0 && *v[1] < 1.0);
    return exceeds_threshold(k, *v[0]) && exceeds_threshold(k, *v[1]);
  }
};

inline CriteriaTable evaluate_criteria(const ScenarioConfig& cfg) {
  CriteriaTable out;
  for (int k = 1; k <= 2; ++k) {
    const auto slot = static_cast<std::size_t>(k - 1);
    const CMatrix rho = detail::pair_state_matrix(cfg, k);
    const OutcomeDistribution dz = detail::pair_table(cfg, rho, k, 1);
    const OutcomeDistribution dx = detail::pair_table(cfg, rho, k, 2);
    out.mi[slot] = mutual_information(dz) + mutual_information(dx);
    try {
      out.cps[slot] = matched_conditional_sum(dz) + matched_conditional_sum(dx);
    } catch (const UndefinedConditionalError&) {
    }
    try {
      out.pearson[slot] = std::abs(pearson(pauli_moments(rho, Basis::Z))) +
                          std::abs(pearson(pauli_moments(rho, Basis::X)));
    } catch (const SingularVarianceError&) {
    }
  }
  return out;
}

/*******************************************************************************
 *
 * Closed-form reference expressions
 *
 ******************************************************************************/

struct ClosedFormFamily {
  CriterionKind criterion;
  ScenarioTag scenario;  // Unilateral or Bilateral
  StrategyKind strategy;  // Weak or PPM
  int pair;               // 1 or 2

  std::string name() const {
    std::ostringstream s;
    s << to_string(scenario) << "-" << to_string(strategy) << "-" << to_string(criterion) << pair;
    return s.str();
  }
};

namespace closed {

inline void check_domain(ScenarioTag scenario, StrategyKind strategy, const Params& p) {
  if (scenario != ScenarioTag::Unilateral && scenario != ScenarioTag::Bilateral)
    throw DomainError("closed_form: scenario must be unilateral or bilateral");
  if (strategy != StrategyKind::Weak && strategy != StrategyKind::PPM)
    throw DomainError("closed_form: strategy must be weak or ppm");
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2))
    throw DomainError("closed_form: theta outside [0, pi/2]");
  const int n = scenario == ScenarioTag::Unilateral ? 2 : 4;
  for (int i = 0; i < n; ++i)
    if (!(p.g[static_cast<std::size_t>(i)] > 0.0 && p.g[static_cast<std::size_t>(i)] <= 1.0))
      throw DomainError("closed_form: gain outside (0, 1]");
}

// Shared by the unilateral weak and PPM strategies.
inline double unilateral_mi_pair2(double th, double F1, double F2) {
  const double s = std::sin(2 * th), c = std::cos(2 * th);
  return (x1((1 - F2) / 2) + x1(1 - (1 + F1) * s / 2) - x1(1 - (1 + F2) * c / 2)) /
         (2 * std::numbers::ln2);
}

// Shared by the bilateral weak and PPM strategies.
inline double bilateral_mi_pair2(double th, double F1, double F2, double F3, double F4) {
  const double s = std::sin(2 * th), c = std::cos(2 * th);
  const double inner =
      x1(1 + (1 + F1) * (1 + F3) * s / 4) - x1(1 - (1 + F2) * c / 2) - x1(1 + (1 + F4) * c / 2) +
      (x2(4 - (F2 + 1) * (F4 + 1) - 2 * (F2 - F4) * c, 8 - 4 * (1 + F2) * c) +
       x2(4 - (F2 + 1) * (F4 + 1) + 2 * (F2 - F4) * c, 8 + 4 * (1 + F2) * c)) /
          8;
  return -2 + inner / (2 * std::numbers::ln2);
}

}  // namespace closed

/// Bilateral PPM, pair 1 mutual information taken literally, including the
/// term G3 sin^2(theta) X(a, 1) whose argument `a` is never defined. Not
/// used for verification.
inline double bilateral_ppm_mi_pair1_literal(const Params& p, double a) {
  using namespace closed;
  const double th = p.theta;
  const double G1 = p.g[0], G2 = p.g[1], G3 = p.g[2], G4 = p.g[3];
  const double s2 = std::sin(2 * th), c2 = std::cos(2 * th);
  const double sn = std::sin(th), cs = std::cos(th);
  const double r = 1 - G3 * sn * sn;
  const double quarter = G4 * x1(G2 * (cs + sn * sn)) + x2(G2 * (2 - G4 - G4 * s2), 4 - 2 * G4) -
                         2 * (2 - G4) * std::log(2 - G4) - 2 * x1(G2) - 2 * x1(G1 * (1 - c2));
  const double whole = G3 * sn * sn * x2(a, 1) + x2(G1 * (1 - G3) * sn * sn, r) - r * std::log(r);
  return 1 + quarter / (4 * std::numbers::ln2) + whole / std::numbers::ln2;
}

/// Closed-form criterion value for one family. Gains map to disturbance via
/// F = sqrt(1 - G^2) (weak) or F = 1 - G (PPM). The bilateral PPM pair-1
/// mutual information is rejected (see bilateral_ppm_mi_pair1_literal).
inline double closed_form(const ClosedFormFamily& fam, const Params& p) {
  using namespace closed;
  check_domain(fam.scenario, fam.strategy, p);
  if (fam.pair != 1 && fam.pair != 2) throw DomainError("closed_form: pair must be 1 or 2");

  const double th = p.theta;
  const double s = std::sin(2 * th), c = std::cos(2 * th);
  const double G1 = p.g[0], G2 = p.g[1], G3 = p.g[2], G4 = p.g[3];
  const double F1 = disturbance_factor(fam.strategy, G1);
  const double F2 = disturbance_factor(fam.strategy, G2);
  const double F3 = disturbance_factor(fam.strategy, G3);
  const double F4 = disturbance_factor(fam.strategy, G4);
  const bool weak = fam.strategy == StrategyKind::Weak;
  const double ln2 = std::numbers::ln2;

  double v = 0.0;
  if (fam.scenario == ScenarioTag::Unilateral) {
    switch (fam.criterion) {
      case CriterionKind::MutualInfo:
        if (fam.pair == 2) {
          v = unilateral_mi_pair2(th, F1, F2);
        } else if (weak) {
          v = (x1(1 - G1) + x1(1 - G2 * s) - x1(1 - G1 * c)) / (2 * ln2);
        } else {
          const double sn2 = std::sin(th) * std::sin(th);
          v = 1 - sn2 + (x1(G2 * (1 - s)) + x1(G2 * (1 + s))) / (4 * ln2) -
              (x1(G1 * (1 - c)) + x1(G2) - x1(2 * G1) * sn2) / (2 * ln2);
        }
        break;
      case CriterionKind::CondProbSum:
        v = fam.pair == 1 ? 2 + G1 + G2 * s : 2 + 0.5 * (t(F2) + t(F1) * s);
        break;
      case CriterionKind::Pearson:
        v = fam.pair == 1 ? 1 + s : t(F1) * s / 2 + t(F2) * s / std::sqrt(f(F2, th));
        break;
    }
  } else {
    switch (fam.criterion) {
      case CriterionKind::MutualInfo:
        if (fam.pair == 2) {
          v = bilateral_mi_pair2(th, F1, F2, F3, F4);
        } else if (weak) {
          v = (2 * x1(1 - G2 * G4 * s) + x2(1 - G1 * G3 + (-G1 + G3) * c, 2 * (1 - G1 * G3)) -
               2 * x1(1 + G3 * c) + x2(1 + G1 * G3 + (G1 + G3) * c, 2 * (1 + G1 * G3)) -
               2 * x1(1 - G1 * c)) /
              (4 * ln2);
        } else {
          throw DomainError(
              "closed_form: bilateral-ppm-I1 contains an undefined symbol and has no usable "
              "closed form");
        }
        break;
      case CriterionKind::CondProbSum:
        if (fam.pair == 2) {
          v = 2 + t(F1) * t(F3) * s / 4 + t(F2) * t(F4) * s * s / f(F4, th);
        } else if (weak) {
          v = 2 + G2 * G4 * s + G1 * G3 * s * s / (1 - G3 * G3 * c * c);
        } else {
          const double sn2 = std::sin(th) * std::sin(th);
          const double cs2 = std::cos(th) * std::cos(th);
          v = 2 + G2 * s / (2 - G4) + G1 * cs2 / (1 - G3 * sn2);
        }
        break;
      case CriterionKind::Pearson:
        v = fam.pair == 1
                ? 1 + s
                : t(F1) * t(F3) * s / 4 + t(F2) * t(F4) * s * s / std::sqrt(f(F2, th) * f(F4, th));
        break;
    }
  }
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "closed_form: " << fam.name() << " is not finite at theta = " << th;
    throw DomainError(msg.str());
  }
  return v;
}

}  // namespace seqent
