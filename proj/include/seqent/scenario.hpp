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
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "seqent/errors.hpp"
#include "seqent/linalg.hpp"
#include "seqent/quantum.hpp"

namespace seqent {

/*******************************************************************************
 *
 * Observer chains
 *
 ******************************************************************************/

enum class ObserverRole { Intermediate, Final };

/// One observer in a side's chain. settings[0] is setting m=1 (Z basis),
/// settings[1] is m=2 (X basis).
struct ObserverSpec {
  Side side = Side::A;
  int index = 1;
  ObserverRole role = ObserverRole::Final;
  std::array<MeasurementStrategy, 2> settings{MeasurementStrategy::projective(Basis::Z),
                                              MeasurementStrategy::projective(Basis::X)};

  const MeasurementStrategy& setting(int m) const { return settings.at(static_cast<std::size_t>(m - 1)); }

  static ObserverSpec final_observer(Side side, int index) {
    return {side, index, ObserverRole::Final,
            {MeasurementStrategy::projective(Basis::Z), MeasurementStrategy::projective(Basis::X)}};
  }
  static ObserverSpec intermediate(Side side, int index, StrategyKind kind, double gain_z,
                                   double gain_x) {
    return {side, index, ObserverRole::Intermediate,
            {MeasurementStrategy{kind, Basis::Z, gain_z}, MeasurementStrategy{kind, Basis::X, gain_x}}};
  }
};

enum class ScenarioTag { Unilateral, Bilateral, General };

inline const char* to_string(ScenarioTag t) {
  switch (t) {
    case ScenarioTag::Unilateral: return "unilateral";
    case ScenarioTag::Bilateral: return "bilateral";
    case ScenarioTag::General: return "general";
  }
  return "?";
}

/// Family parameter point: the initial angle and up to four
/// information gains (unilateral uses g[0], g[1]).
struct Params {
  double theta = 0.0;
  std::array<double, 4> g{1.0, 1.0, 1.0, 1.0};
};

/// Immutable description of a sequential measurement scenario.
class ScenarioConfig {
 public:
  ScenarioConfig(double theta, std::vector<ObserverSpec> chain_a, std::vector<ObserverSpec> chain_b,
                 ScenarioTag tag)
      : theta_(theta), chain_a_(std::move(chain_a)), chain_b_(std::move(chain_b)), tag_(tag) {
    validate();
  }

  /// Alice_1 (intermediate, gains G1 for Z and G2 for X) then Alice_2; one
  /// final Bob.
  static ScenarioConfig unilateral(StrategyKind kind, double theta, double g1, double g2) {
    return ScenarioConfig(theta,
                          {ObserverSpec::intermediate(Side::A, 1, kind, g1, g2),
                           ObserverSpec::final_observer(Side::A, 2)},
                          {ObserverSpec::final_observer(Side::B, 1)}, ScenarioTag::Unilateral);
  }

  /// Alice_1 (G1, G2) and Bob_1 (G3, G4) intermediate, then Alice_2, Bob_2.
  static ScenarioConfig bilateral(StrategyKind kind, double theta, double g1, double g2, double g3,
                                  double g4) {
    return ScenarioConfig(theta,
                          {ObserverSpec::intermediate(Side::A, 1, kind, g1, g2),
                           ObserverSpec::final_observer(Side::A, 2)},
                          {ObserverSpec::intermediate(Side::B, 1, kind, g3, g4),
                           ObserverSpec::final_observer(Side::B, 2)},
                          ScenarioTag::Bilateral);
  }

  static ScenarioConfig from_params(ScenarioTag tag, StrategyKind kind, const Params& p) {
    switch (tag) {
      case ScenarioTag::Unilateral: return unilateral(kind, p.theta, p.g[0], p.g[1]);
      case ScenarioTag::Bilateral: return bilateral(kind, p.theta, p.g[0], p.g[1], p.g[2], p.g[3]);
      case ScenarioTag::General: break;
    }
    throw ConfigError("from_params: only unilateral and bilateral have a parameter vector");
  }

  double theta() const { return theta_; }
  ScenarioTag tag() const { return tag_; }
  const std::vector<ObserverSpec>& chain(Side s) const { return s == Side::A ? chain_a_ : chain_b_; }

  /// Number of observer pairs: the longer chain's length.
  int pair_count() const { return static_cast<int>(std::max(chain_a_.size(), chain_b_.size())); }

  /// Pair k's observer on a side; a shorter chain reuses its last observer.
  const ObserverSpec& pair_observer(int k, Side s) const {
    require_pair(k);
    const auto& c = chain(s);
    return c[static_cast<std::size_t>(std::min<int>(k, static_cast<int>(c.size())) - 1)];
  }

  /// Gain vector (G1, G2[, G3, G4]) in family order.
  std::vector<double> gains() const {
    std::vector<double> g;
    for (const auto* c : {&chain_a_, &chain_b_})
      for (const auto& o : *c)
        if (o.role == ObserverRole::Intermediate) {
          g.push_back(o.settings[0].gain);
          g.push_back(o.settings[1].gain);
        }
    return g;
  }

  void require_pair(int k) const {
    if (k < 1 || k > pair_count()) {
      std::ostringstream msg;
      msg << "pair index " << k << " outside [1, " << pair_count() << "]";
      throw DomainError(msg.str());
    }
  }

 private:
  void validate() const {
    if (!(theta_ >= 0.0 && theta_ <= std::numbers::pi / 2)) {
      std::ostringstream msg;
      msg << "ScenarioConfig: theta = " << theta_ << " outside [0, pi/2]";
      throw DomainError(msg.str());
    }
    validate_chain(chain_a_, Side::A);
    validate_chain(chain_b_, Side::B);
    const auto n_int = [](const std::vector<ObserverSpec>& c) {
      return std::count_if(c.begin(), c.end(),
                           [](const ObserverSpec& o) { return o.role == ObserverRole::Intermediate; });
    };
    if (tag_ == ScenarioTag::Unilateral &&
        !(chain_a_.size() == 2 && chain_b_.size() == 1 && n_int(chain_a_) == 1))
      throw ConfigError("unilateral scenario needs A = [intermediate, final], B = [final]");
    if (tag_ == ScenarioTag::Bilateral &&
        !(chain_a_.size() == 2 && chain_b_.size() == 2 && n_int(chain_a_) == 1 && n_int(chain_b_) == 1))
      throw ConfigError("bilateral scenario needs A = B = [intermediate, final]");
  }

  static void validate_chain(const std::vector<ObserverSpec>& c, Side side) {
    if (c.empty()) throw ConfigError(std::string("empty observer chain on side ") + to_string(side));
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& o = c[i];
      std::ostringstream who;
      who << to_string(side) << (i + 1);
      if (o.side != side || o.index != static_cast<int>(i + 1))
        throw ConfigError("observer " + who.str() + ": side/index out of order");
      if (o.settings[0].basis != Basis::Z || o.settings[1].basis != Basis::X)
        throw ConfigError("observer " + who.str() + ": setting 1 must be Z and setting 2 must be X");
      const bool last = i + 1 == c.size();
      if (last != (o.role == ObserverRole::Final))
        throw ConfigError("observer " + who.str() + ": only the last observer of a chain is final");
      for (const auto& s : o.settings) {
        s.validate();
        if (o.role == ObserverRole::Final && s.kind != StrategyKind::Projective)
          throw ConfigError("observer " + who.str() + ": final observers measure projectively");
        if (o.role == ObserverRole::Intermediate && s.kind == StrategyKind::Projective)
          throw ConfigError("observer " + who.str() + ": intermediate observers use weak or ppm");
      }
      if (o.settings[0].kind != o.settings[1].kind)
        throw ConfigError("observer " + who.str() + ": both settings must use the same strategy kind");
    }
  }

  double theta_;
  std::vector<ObserverSpec> chain_a_;
  std::vector<ObserverSpec> chain_b_;
  ScenarioTag tag_;
};

/*******************************************************************************
 *
 * Joint distributions over full outcome strings
 *
 ******************************************************************************/

/// Setting (1 or 2) chosen by every observer, in chain order.
struct SettingChoice {
  std::vector<int> a;
  std::vector<int> b;
};

struct JointEntry {
  std::vector<int> a;  // outcomes of Alice_1..Alice_n
  std::vector<int> b;  // outcomes of Bob_1..Bob_n
  double probability;
};

struct JointDistribution {
  std::vector<JointEntry> entries;

  double total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.probability;
    return s;
  }
  double probability(const std::vector<int>& a, const std::vector<int>& b) const {
    for (const auto& e : entries)
      if (e.a == a && e.b == b) return e.probability;
    throw DomainError("JointDistribution: no such outcome string");
  }
};

namespace detail {

struct Step {
  Side side;
  KrausSet kraus;
};

inline void branch_all(const std::vector<Step>& steps, std::size_t at, const CMatrix& rho,
                       std::vector<int>& a, std::vector<int>& b, JointDistribution& out) {
  if (at == steps.size()) {
    out.entries.push_back({a, b, trace(rho).real()});
    return;
  }
  const Step& s = steps[at];
  auto& record = s.side == Side::A ? a : b;
  for (int label : {+1, -1}) {
    const Branch br = apply_outcome(rho, s.kraus, label, s.side);
    record.push_back(label);
    branch_all(steps, at + 1, br.state, a, b, out);
    record.pop_back();
  }
}

}  // namespace detail

/// Probabilities Tr[rho_n] of every outcome string, pair by pair (A side then
/// B side within a pair).
inline JointDistribution joint_distribution(const ScenarioConfig& cfg, const SettingChoice& settings) {
  const auto& ca = cfg.chain(Side::A);
  const auto& cb = cfg.chain(Side::B);
  if (settings.a.size() != ca.size() || settings.b.size() != cb.size())
    throw ConfigError("joint_distribution: setting map must name one setting per observer");
  for (const auto* v : {&settings.a, &settings.b})
    for (int m : *v)
      if (m != 1 && m != 2) throw ConfigError("joint_distribution: settings must be 1 or 2");

  std::vector<detail::Step> steps;
  for (int j = 1; j <= cfg.pair_count(); ++j) {
    const auto idx = static_cast<std::size_t>(j - 1);
    if (idx < ca.size()) steps.push_back({Side::A, kraus_for(ca[idx].setting(settings.a[idx]))});
    if (idx < cb.size()) steps.push_back({Side::B, kraus_for(cb[idx].setting(settings.b[idx]))});
  }
  JointDistribution out;
  std::vector<int> a, b;
  detail::branch_all(steps, 0, state_from_theta(cfg.theta()).matrix(), a, b, out);
  return out;
}

/*******************************************************************************
 *
 * Pair marginals
 *
 ******************************************************************************/

/// Normalized table P(a, b) for one observer pair and one setting pair.
/// Index 0 is outcome +1, index 1 is outcome -1.
struct OutcomeDistribution {
  std::array<std::array<double, 2>, 2> p{};
  int pair = 1;
  int setting_a = 1;
  int setting_b = 1;

  static constexpr std::size_t slot(int outcome) { return outcome > 0 ? 0 : 1; }
  double operator()(int a, int b) const { return p[slot(a)][slot(b)]; }
  double marginal_a(int a) const { return p[slot(a)][0] + p[slot(a)][1]; }
  double marginal_b(int b) const { return p[0][slot(b)] + p[1][slot(b)]; }
  double total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

  /// Clamps round-off negatives (>= -1e-12) to zero and renormalizes.
  void normalize() {
    double s = 0.0;
    for (auto& row : p)
      for (auto& v : row) {
        if (v < -1e-12) {
          std::ostringstream msg;
          msg << "OutcomeDistribution: negative probability " << v;
          throw DomainError(msg.str());
        }
        v = std::max(v, 0.0);
        s += v;
      }
    if (!(s > 0.0)) throw DomainError("OutcomeDistribution: zero total probability");
    for (auto& row : p)
      for (auto& v : row) v /= s;
  }
};

namespace detail {

// Mixture (1/2) U_Z + (1/2) U_X of an intermediate observer's two settings,
// outcomes unread.
inline CMatrix setting_averaged(const CMatrix& rho, const ObserverSpec& o) {
  CMatrix out = unread_channel(rho, kraus_for(o.settings[0]), o.side);
  out += unread_channel(rho, kraus_for(o.settings[1]), o.side);
  out *= 0.5;
  return out;
}

inline CMatrix pair_state_matrix(const ScenarioConfig& cfg, int k) {
  cfg.require_pair(k);
  CMatrix rho = state_from_theta(cfg.theta()).matrix();
  for (Side side : {Side::A, Side::B}) {
    const auto& c = cfg.chain(side);
    const int upto = cfg.pair_observer(k, side).index;
    for (int j = 1; j < upto; ++j) rho = setting_averaged(rho, c[static_cast<std::size_t>(j - 1)]);
  }
  return hermitize(rho);
}

inline OutcomeDistribution pair_table(const ScenarioConfig& cfg, const CMatrix& rho, int k, int m) {
  const KrausSet ka = kraus_for(cfg.pair_observer(k, Side::A).setting(m));
  const KrausSet kb = kraus_for(cfg.pair_observer(k, Side::B).setting(m));
  OutcomeDistribution d;
  d.pair = k;
  d.setting_a = d.setting_b = m;
  for (int a : {+1, -1}) {
    const Branch ba = apply_outcome(rho, ka, a, Side::A);
    for (int b : {+1, -1})
      d.p[OutcomeDistribution::slot(a)][OutcomeDistribution::slot(b)] =
          apply_outcome(ba.state, kb, b, Side::B).probability;
  }
  d.normalize();
  return d;
}

}  // namespace detail

/// State reaching pair k: the initial state with every upstream intermediate
/// observer's setting-averaged, unread channel applied.
inline DensityMatrix pair_state(const ScenarioConfig& cfg, int k) {
  return DensityMatrix(detail::pair_state_matrix(cfg, k));
}

/// Outcome table of pair k when both of its observers use setting m.
/// Upstream intermediate observers pick each setting with probability 1/2 and
/// their outcomes are summed out; downstream observers play no role.
inline OutcomeDistribution marginal_pair(const ScenarioConfig& cfg, int k, int m) {
  if (m != 1 && m != 2) throw DomainError("marginal_pair: setting must be 1 or 2");
  return detail::pair_table(cfg, detail::pair_state_matrix(cfg, k), k, m);
}

/*******************************************************************************
 *
 * Pauli moments
 *
 ******************************************************************************/

struct PauliMoments {
  double corr = 0.0;    // Tr[(s (x) s) rho]
  double mean_a = 0.0;  // Tr[(s (x) I) rho]
  double mean_b = 0.0;  // Tr[(I (x) s) rho]
};

inline PauliMoments pauli_moments(const CMatrix& rho, Basis basis) {
  const CMatrix s = pauli(basis);
  const CMatrix id = CMatrix::identity(2);
  return {trace(kron(s, s) * rho).real(), trace(kron(s, id) * rho).real(),
          trace(kron(id, s) * rho).real()};
}

inline PauliMoments pauli_moments(const DensityMatrix& rho, Basis basis) {
  return pauli_moments(rho.matrix(), basis);
}

}  // namespace seqent
