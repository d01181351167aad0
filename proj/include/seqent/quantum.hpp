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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqent/errors.hpp"
#include "seqent/linalg.hpp"

namespace seqent {

/*******************************************************************************
 *
 * Two-qubit density matrices
 *
 ******************************************************************************/

struct StateTolerance {
  static constexpr double hermitian = 1e-12;
  static constexpr double trace = 1e-12;
  static constexpr double min_eigenvalue = -1e-10;
};

/// A validated 4x4 two-qubit density matrix (Hermitian, unit trace, PSD).
class DensityMatrix {
 public:
  /// Validates and stores `m`; the stored matrix is re-Hermitized.
  explicit DensityMatrix(const CMatrix& m) : mat_(validate(m)) {}

  const CMatrix& matrix() const { return mat_; }
  Complex operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  /// Normalizes an unnormalized positive operator (e.g. a Kraus branch).
  static DensityMatrix normalized(const CMatrix& m) {
    const double tr = trace(m).real();
    if (!(tr > 0.0)) throw DomainError("DensityMatrix::normalized: zero-trace operator");
    CMatrix scaled = m;
    scaled *= 1.0 / tr;
    return DensityMatrix(scaled);
  }

 private:
  static CMatrix validate(const CMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4)
      throw DimensionError("DensityMatrix: expected a 4x4 matrix");
    if (!m.is_finite()) throw DomainError("DensityMatrix: non-finite entry");
    const double herm = hermiticity_defect(m);
    if (herm > StateTolerance::hermitian) {
      std::ostringstream msg;
      msg << "DensityMatrix: not Hermitian (defect " << herm << ")";
      throw NotHermitianError(msg.str());
    }
    const double tr = trace(m).real();
    if (std::abs(tr - 1.0) > StateTolerance::trace) {
      std::ostringstream msg;
      msg << "DensityMatrix: trace " << tr << " differs from 1";
      throw DomainError(msg.str());
    }
    CMatrix h = hermitize(m);
    const double min_eig = hermitian_eigenvalues(h).front();
    if (min_eig < StateTolerance::min_eigenvalue) {
      std::ostringstream msg;
      msg << "DensityMatrix: negative eigenvalue " << min_eig;
      throw DomainError(msg.str());
    }
    return h;
  }

  CMatrix mat_;
};

/// |psi> = cos(theta)|00> + sin(theta)|11>, theta in [0, pi/2].
inline DensityMatrix state_from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << "state_from_theta: theta = " << theta << " outside [0, pi/2]";
    throw DomainError(msg.str());
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMatrix m(4, 4);
  m(0, 0) = c * c;
  m(0, 3) = c * s;
  m(3, 0) = c * s;
  m(3, 3) = s * s;
  return DensityMatrix(m);
}

/// Tr[rho^2].
inline double purity(const DensityMatrix& rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

/*******************************************************************************
 *
 * Single-qubit measurement strategies
 *
 ******************************************************************************/

/// Z: computational basis {|0>,|1>}; X: Fourier basis {|+>,|->}.
enum class Basis { Z, X };

enum class StrategyKind { Projective, Weak, PPM };

inline const char* to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

inline const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Projective: return "projective";
    case StrategyKind::Weak: return "weak";
    case StrategyKind::PPM: return "ppm";
  }
  return "?";
}

/// Rank-1 projector onto the +1 (sign > 0) or -1 eigenvector of the basis.
inline CMatrix basis_projector(Basis b, int sign) {
  if (b == Basis::Z) return sign > 0 ? CMatrix::diagonal({1, 0}) : CMatrix::diagonal({0, 1});
  const double h = 0.5;
  const double off = sign > 0 ? h : -h;
  return CMatrix{{h, off}, {off, h}};
}

/// Pauli operator whose eigenbasis is `b`.
inline CMatrix pauli(Basis b) {
  return b == Basis::Z ? CMatrix::diagonal({1, -1}) : CMatrix{{0, 1}, {1, 0}};
}

/// Measurement kind, basis and information gain G (eta for weak, alpha for
/// PPM). Projective strategies always carry gain 1.
struct MeasurementStrategy {
  StrategyKind kind = StrategyKind::Projective;
  Basis basis = Basis::Z;
  double gain = 1.0;

  static MeasurementStrategy projective(Basis b) { return {StrategyKind::Projective, b, 1.0}; }
  static MeasurementStrategy weak(Basis b, double eta) { return {StrategyKind::Weak, b, eta}; }
  static MeasurementStrategy ppm(Basis b, double alpha) { return {StrategyKind::PPM, b, alpha}; }

  void validate() const {
    if (!(gain > 0.0 && gain <= 1.0)) {
      std::ostringstream msg;
      msg << "MeasurementStrategy: gain " << gain << " outside (0, 1]";
      throw DomainError(msg.str());
    }
  }
};

/// Disturbance factor F: sqrt(1 - G^2) for weak, 1 - G for PPM, 0 for
/// projective.
inline double disturbance_factor(StrategyKind kind, double gain) {
  switch (kind) {
    case StrategyKind::Projective: return 0.0;
    case StrategyKind::Weak: return std::sqrt(std::max(0.0, 1.0 - gain * gain));
    case StrategyKind::PPM: return 1.0 - gain;
  }
  return 0.0;
}

inline double disturbance_factor(const MeasurementStrategy& s) {
  return disturbance_factor(s.kind, s.gain);
}

struct LabeledKraus {
  CMatrix op;
  int label;  // +1 or -1
};

/// Kraus operators of a two-outcome instrument, each tagged with the outcome
/// it reports.
struct KrausSet {
  std::vector<LabeledKraus> operators;

  /// max |sum K^dagger K - I| entrywise.
  double completeness_defect() const {
    CMatrix sum(2, 2);
    for (const auto& k : operators) sum += dagger(k.op) * k.op;
    return max_abs_diff(sum, CMatrix::identity(2));
  }
  bool complete(double tol = 1e-12) const { return completeness_defect() <= tol; }
};

/// Weak: two operators sqrt((1 +- eta)/2) weights on the basis projectors.
/// PPM: sqrt(alpha) P+, sqrt(alpha) P-, and sqrt(1 - alpha) I; the identity
/// branch reports +1. Projective: the two basis projectors.
inline KrausSet kraus_for(const MeasurementStrategy& s) {
  s.validate();
  const CMatrix plus = basis_projector(s.basis, +1);
  const CMatrix minus = basis_projector(s.basis, -1);
  KrausSet set;
  switch (s.kind) {
    case StrategyKind::Projective:
      set.operators = {{plus, +1}, {minus, -1}};
      break;
    case StrategyKind::Weak: {
      const double hi = std::sqrt((1.0 + s.gain) / 2.0);
      const double lo = std::sqrt((1.0 - s.gain) / 2.0);
      set.operators = {{hi * plus + lo * minus, +1}, {lo * plus + hi * minus, -1}};
      break;
    }
    case StrategyKind::PPM: {
      const double a = std::sqrt(s.gain);
      set.operators = {{a * plus, +1},
                       {a * minus, -1},
                       {std::sqrt(1.0 - s.gain) * CMatrix::identity(2), +1}};
      break;
    }
  }
  return set;
}

struct EffectPair {
  CMatrix plus;
  CMatrix minus;
};

/// Pools K^dagger K by outcome label.
inline EffectPair effects_of(const KrausSet& k) {
  EffectPair e{CMatrix(2, 2), CMatrix(2, 2)};
  for (const auto& op : k.operators) (op.label > 0 ? e.plus : e.minus) += dagger(op.op) * op.op;
  return e;
}

/*******************************************************************************
 *
 * Channels on one side of a two-qubit state
 *
 ******************************************************************************/

enum class Side { A, B };

inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

/// K (x) I for side A, I (x) K for side B.
inline CMatrix lift(const CMatrix& k, Side side) {
  return side == Side::A ? kron(k, CMatrix::identity(2)) : kron(CMatrix::identity(2), k);
}

struct Branch {
  CMatrix state;       // unnormalized post-measurement operator
  double probability;  // its trace
};

/// Sum over Kraus operators carrying `label` of (K)rho(K)^dagger on the given
/// side; works on unnormalized operators too.
inline Branch apply_outcome(const CMatrix& rho, const KrausSet& k, int label, Side side) {
  CMatrix out(4, 4);
  for (const auto& op : k.operators) {
    if (op.label != label) continue;
    const CMatrix lifted = lift(op.op, side);
    out += lifted * rho * dagger(lifted);
  }
  out = hermitize(out);
  return {out, trace(out).real()};
}

inline Branch apply_outcome(const DensityMatrix& rho, const KrausSet& k, int label, Side side) {
  return apply_outcome(rho.matrix(), k, label, side);
}

/// Outcome-averaged (non-selective) update: sum over all Kraus operators.
inline CMatrix unread_channel(const CMatrix& rho, const KrausSet& k, Side side) {
  CMatrix out(4, 4);
  for (const auto& op : k.operators) {
    const CMatrix lifted = lift(op.op, side);
    out += lifted * rho * dagger(lifted);
  }
  return hermitize(out);
}

inline DensityMatrix unread_channel(const DensityMatrix& rho, const KrausSet& k, Side side) {
  return DensityMatrix(unread_channel(rho.matrix(), k, side));
}

}  // namespace seqent
