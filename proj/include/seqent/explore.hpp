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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "seqent/criteria.hpp"
#include "seqent/errors.hpp"
#include "seqent/scenario.hpp"
#include "seqent/witness.hpp"

namespace seqent {

/*******************************************************************************
 *
 * Parameter names and resolution
 *
 ******************************************************************************/

enum class Param { Theta, G1, G2, G3, G4 };

inline const char* to_string(Param p) {
  switch (p) {
    case Param::Theta: return "theta";
    case Param::G1: return "G1";
    case Param::G2: return "G2";
    case Param::G3: return "G3";
    case Param::G4: return "G4";
  }
  return "?";
}

inline Param parse_param(const std::string& s) {
  if (s == "theta") return Param::Theta;
  if (s == "G1" || s == "g1") return Param::G1;
  if (s == "G2" || s == "g2") return Param::G2;
  if (s == "G3" || s == "g3") return Param::G3;
  if (s == "G4" || s == "g4") return Param::G4;
  throw ConfigError("unknown parameter '" + s + "' (expected theta, G1, G2, G3 or G4)");
}

/// Parameters a scenario family depends on, in canonical order.
inline std::vector<Param> family_params(ScenarioTag tag) {
  if (tag == ScenarioTag::Unilateral) return {Param::Theta, Param::G1, Param::G2};
  if (tag == ScenarioTag::Bilateral) return {Param::Theta, Param::G1, Param::G2, Param::G3, Param::G4};
  throw ConfigError("parameter families exist only for unilateral and bilateral scenarios");
}

inline double& slot(Params& p, Param which) {
  return which == Param::Theta ? p.theta : p.g[static_cast<std::size_t>(which) - 1];
}
inline double slot(const Params& p, Param which) {
  return which == Param::Theta ? p.theta : p.g[static_cast<std::size_t>(which) - 1];
}

/// follower := leader, e.g. G2 = G1 for a symmetric strategy.
struct Tie {
  Param follower;
  Param leader;
};

/// Fixed values plus ties for every parameter a family needs besides the
/// free ones.
struct Binding {
  ScenarioTag scenario = ScenarioTag::Unilateral;
  StrategyKind strategy = StrategyKind::Weak;
  std::vector<Param> free;
  std::map<Param, double> fixed;
  std::vector<Tie> ties;

  void validate() const {
    if (strategy != StrategyKind::Weak && strategy != StrategyKind::PPM)
      throw ConfigError("strategy must be weak or ppm");
    const auto needed = family_params(scenario);
    std::map<Param, int> seen;
    for (Param p : free) ++seen[p];
    for (const auto& [p, v] : fixed) {
      ++seen[p];
      check_value(p, v);
    }
    for (const auto& t : ties) {
      ++seen[t.follower];
      const bool leader_ok = std::count(free.begin(), free.end(), t.leader) > 0 || fixed.count(t.leader) > 0;
      if (!leader_ok)
        throw ConfigError(std::string("tie leader ") + to_string(t.leader) + " is neither free nor fixed");
    }
    for (const auto& [p, n] : seen) {
      if (std::find(needed.begin(), needed.end(), p) == needed.end())
        throw ConfigError(std::string("parameter ") + to_string(p) + " does not belong to a " +
                          to_string(scenario) + " scenario");
      if (n > 1) throw ConfigError(std::string("parameter ") + to_string(p) + " is bound more than once");
    }
    for (Param p : needed)
      if (!seen.count(p))
        throw ConfigError(std::string("parameter ") + to_string(p) + " is neither free, fixed nor tied");
  }

  static void check_value(Param p, double v) {
    const bool ok = p == Param::Theta ? (v >= 0.0 && v <= std::numbers::pi / 2) : (v > 0.0 && v <= 1.0);
    if (!ok) {
      std::ostringstream msg;
      msg << to_string(p) << " = " << v << " outside its domain";
      throw ConfigError(msg.str());
    }
  }

  Params resolve(std::span<const double> free_values) const {
    Params p;
    for (const auto& [k, v] : fixed) slot(p, k) = v;
    for (std::size_t i = 0; i < free.size(); ++i) slot(p, free[i]) = free_values[i];
    for (const auto& t : ties) slot(p, t.follower) = slot(p, t.leader);
    return p;
  }
};

/*******************************************************************************
 *
 * Point evaluation
 *
 ******************************************************************************/

struct PointResult {
  Params params;
  CriteriaTable criteria;
  double ppt_min_eig = 0.0;
  double purity = 1.0;

  std::string status() const {
    const bool sp = !criteria.pearson[0] || !criteria.pearson[1];
    const bool uc = !criteria.cps[0] || !criteria.cps[1];
    if (sp && uc) return "singular_pearson+undefined_conditional";
    if (sp) return "singular_pearson";
    if (uc) return "undefined_conditional";
    return "ok";
  }
};

/// Criteria for both pairs plus the PPT minimum eigenvalue and purity of the
/// state reaching pair 2.
inline PointResult evaluate_point(ScenarioTag tag, StrategyKind strategy, const Params& p) {
  const ScenarioConfig cfg = ScenarioConfig::from_params(tag, strategy, p);
  PointResult r;
  r.params = p;
  r.criteria = evaluate_criteria(cfg);
  const PptReport ppt = ppt_report(detail::pair_state_matrix(cfg, 2));
  r.ppt_min_eig = ppt.min_eig;
  r.purity = ppt.mixedness;
  return r;
}

/// min(criterion pair 1, criterion pair 2); empty when either is undefined.
inline std::optional<double> maximin_objective(ScenarioTag tag, StrategyKind strategy, CriterionKind kind,
                                               const Params& p) {
  const ScenarioConfig cfg = ScenarioConfig::from_params(tag, strategy, p);
  try {
    return std::min(criterion(cfg, kind, 1).total, criterion(cfg, kind, 2).total);
  } catch (const SingularVarianceError&) {
    return std::nullopt;
  } catch (const UndefinedConditionalError&) {
    return std::nullopt;
  }
}

/*******************************************************************************
 *
 * Grid scans
 *
 ******************************************************************************/

struct Axis {
  Param param;
  double lo;
  double hi;
  int steps;

  /// Inclusive, evenly spaced; the last value is exactly hi.
  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
      v[static_cast<std::size_t>(i)] = i + 1 == steps ? hi : lo + (hi - lo) * i / (steps - 1);
    return v;
  }
};

struct ScanSpec {
  ScenarioTag scenario = ScenarioTag::Unilateral;
  StrategyKind strategy = StrategyKind::Weak;
  std::vector<Axis> axes;
  std::map<Param, double> fixed;
  std::vector<Tie> ties;

  Binding binding() const {
    Binding b{scenario, strategy, {}, fixed, ties};
    for (const auto& a : axes) b.free.push_back(a.param);
    return b;
  }

  void validate() const {
    if (axes.empty()) throw ConfigError("scan needs at least one axis");
    for (const auto& a : axes) {
      if (!(a.lo < a.hi)) throw ConfigError(std::string("axis ") + to_string(a.param) + ": lo must be < hi");
      if (a.steps < 2) throw ConfigError(std::string("axis ") + to_string(a.param) + ": steps must be >= 2");
      Binding::check_value(a.param, a.lo);
      Binding::check_value(a.param, a.hi);
    }
    binding().validate();
  }

  std::size_t cell_count() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.steps);
    return n;
  }
};

struct ScanRow {
  std::vector<double> axis_values;
  PointResult point;
};

struct ScanTable {
  ScanSpec spec;
  std::vector<ScanRow> rows;
};

/// Runs `task(i)` for i in [0, n) on up to `workers` threads. Each index is
/// handled exactly once; callers write into preallocated slots.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task) {
  const auto w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::size_t t = 0; t < std::min(w, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Evaluates every cell of the axis product. Rows are ordered
/// lexicographically over the axes (first axis varies slowest) regardless of
/// the worker count.
inline ScanTable grid_scan(const ScanSpec& spec, int workers = 1) {
  spec.validate();
  const Binding binding = spec.binding();
  std::vector<std::vector<double>> axis_values;
  for (const auto& a : spec.axes) axis_values.push_back(a.values());

  ScanTable table{spec, std::vector<ScanRow>(spec.cell_count())};
  parallel_for(table.rows.size(), workers, [&](std::size_t cell) {
    std::vector<double> x(spec.axes.size());
    std::size_t rem = cell;
    for (std::size_t d = spec.axes.size(); d-- > 0;) {
      const std::size_t n = axis_values[d].size();
      x[d] = axis_values[d][rem % n];
      rem /= n;
    }
    table.rows[cell] = {x, evaluate_point(spec.scenario, spec.strategy, binding.resolve(x))};
  });
  return table;
}

/*******************************************************************************
 *
 * Maximin search: coarse grid + Nelder-Mead refinement
 *
 ******************************************************************************/

using Objective = std::function<std::optional<double>(std::span<const double>)>;

struct MaximizeOptions {
  int coarse_per_axis = 41;
  int seeds = 5;
  double diameter_tol = 1e-6;
  int max_iterations = 20000;
  int dense_per_axis = 201;  // final local verification grid
  long dense_budget = 100000;
  int workers = 1;
};

struct MaximizeResult {
  std::vector<double> argmax;
  double value = -std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
  double coarse_best = -std::numeric_limits<double>::infinity();
};

namespace detail {

class BoxObjective {
 public:
  BoxObjective(const Objective& f, std::span<const double> lo, std::span<const double> hi)
      : f_(f), lo_(lo.begin(), lo.end()), hi_(hi.begin(), hi.end()) {}

  std::vector<double> clamp(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo_[i], hi_[i]);
    return x;
  }

  // Undefined points rank below everything.
  double operator()(const std::vector<double>& x) {
    ++evaluations;
    const auto v = f_(x);
    return v ? *v : -std::numeric_limits<double>::infinity();
  }

  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  long evaluations = 0;

 private:
  const Objective& f_;
  std::vector<double> lo_, hi_;
};

inline double simplex_diameter(const std::vector<std::vector<double>>& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s[i].size(); ++k) acc += (s[i][k] - s[j][k]) * (s[i][k] - s[j][k]);
      d = std::max(d, std::sqrt(acc));
    }
  return d;
}

struct SimplexOutcome {
  std::vector<double> x;
  double value;
  bool converged;
};

// Nelder-Mead on -f with every trial point projected into the box. The best
// vertex never gets worse, so the result is at least f(start).
inline SimplexOutcome refine(BoxObjective& f, const std::vector<double>& start,
                             const std::vector<double>& step, const MaximizeOptions& opt) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> v{f.clamp(start)};
  for (std::size_t i = 0; i < n; ++i) {
    auto x = v[0];
    x[i] = x[i] + step[i] <= f.hi()[i] ? x[i] + step[i] : x[i] - step[i];
    v.push_back(f.clamp(x));
  }
  std::vector<double> val(n + 1);
  for (std::size_t i = 0; i <= n; ++i) val[i] = f(v[i]);

  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  for (int it = 0; it < opt.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    {
      std::vector<std::vector<double>> v2;
      std::vector<double> val2;
      for (auto i : order) {
        v2.push_back(v[i]);
        val2.push_back(val[i]);
      }
      v.swap(v2);
      val.swap(val2);
    }
    if (simplex_diameter(v) < opt.diameter_tol) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += v[i][k] / static_cast<double>(n);
    const auto toward = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + coef * (v[n][k] - centroid[k]);
      return f.clamp(x);
    };
    const auto xr = toward(-1.0);
    const double fr = f(xr);
    if (fr > val[0]) {
      const auto xe = toward(-2.0);
      const double fe = f(xe);
      if (fe > fr) {
        v[n] = xe;
        val[n] = fe;
      } else {
        v[n] = xr;
        val[n] = fr;
      }
      continue;
    }
    if (fr > val[n - 1]) {
      v[n] = xr;
      val[n] = fr;
      continue;
    }
    const bool outside = fr > val[n];
    const auto xc = toward(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc > (outside ? fr : val[n])) {
      v[n] = xc;
      val[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) v[i][k] = v[0][k] + 0.5 * (v[i][k] - v[0][k]);
      v[i] = f.clamp(v[i]);
      val[i] = f(v[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::max_element(val.begin(), val.end()) - val.begin());
  return {v[best], val[best], converged};
}

inline std::vector<std::vector<double>> lattice(const std::vector<double>& lo, const std::vector<double>& hi,
                                                int per_axis) {
  std::vector<std::vector<double>> pts{{}};
  for (std::size_t d = 0; d < lo.size(); ++d) {
    const Axis axis{Param::Theta, lo[d], hi[d], per_axis};
    const auto vals = lo[d] < hi[d] ? axis.values() : std::vector<double>{lo[d]};
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : vals) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts.swap(next);
  }
  return pts;
}

}  // namespace detail

/// Maximizes `f` over the box [lo, hi]: a coarse lattice pass, Nelder-Mead
/// refinement from the best `seeds` cells, then a dense local lattice around
/// the winner (re-refined if the lattice finds something better). Points
/// where `f` is empty are never selected.
inline MaximizeResult maximize(const Objective& f, std::span<const double> lo, std::span<const double> hi,
                               const MaximizeOptions& opt = {}) {
  const std::size_t n = lo.size();
  if (n == 0 || hi.size() != n) throw DomainError("maximize: empty or mismatched domain");
  for (std::size_t i = 0; i < n; ++i)
    if (!(lo[i] <= hi[i])) throw DomainError("maximize: lo > hi");

  detail::BoxObjective box(f, lo, hi);
  const auto coarse = detail::lattice(box.lo(), box.hi(), opt.coarse_per_axis);
  std::vector<double> coarse_val(coarse.size());
  std::vector<std::optional<double>> raw(coarse.size());
  parallel_for(coarse.size(), opt.workers, [&](std::size_t i) { raw[i] = f(coarse[i]); });
  box.evaluations += static_cast<long>(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i)
    coarse_val[i] = raw[i] ? *raw[i] : -std::numeric_limits<double>::infinity();

  std::vector<std::size_t> idx(coarse.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return coarse_val[a] > coarse_val[b]; });
  if (!std::isfinite(coarse_val[idx[0]]))
    throw DomainError("maximize: objective undefined on the whole coarse grid");

  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = (box.hi()[i] - box.lo()[i]) / (opt.coarse_per_axis - 1);

  MaximizeResult res;
  res.coarse_best = coarse_val[idx[0]];
  const auto seeds = std::min<std::size_t>(static_cast<std::size_t>(opt.seeds), idx.size());
  for (std::size_t s = 0; s < seeds; ++s) {
    if (!std::isfinite(coarse_val[idx[s]])) break;
    const auto out = detail::refine(box, coarse[idx[s]], step, opt);
    if (out.value > res.value) {
      res.value = out.value;
      res.argmax = out.x;
      res.converged = out.converged;
    }
  }

  // Dense local verification lattice, one coarse step either side.
  int per_axis = opt.dense_per_axis;
  while (per_axis > 3 && std::pow(static_cast<double>(per_axis), static_cast<double>(n)) >
                             static_cast<double>(opt.dense_budget))
    per_axis = (per_axis - 1) / 2 + 1;
  std::vector<double> dlo(n), dhi(n);
  for (std::size_t i = 0; i < n; ++i) {
    dlo[i] = std::max(box.lo()[i], res.argmax[i] - step[i]);
    dhi[i] = std::min(box.hi()[i], res.argmax[i] + step[i]);
  }
  const auto dense = detail::lattice(dlo, dhi, per_axis);
  std::vector<std::optional<double>> dense_raw(dense.size());
  parallel_for(dense.size(), opt.workers, [&](std::size_t i) { dense_raw[i] = f(dense[i]); });
  box.evaluations += static_cast<long>(dense.size());
  std::size_t dense_best = dense.size();
  double dense_val = res.value;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense_raw[i] && *dense_raw[i] > dense_val) {
      dense_val = *dense_raw[i];
      dense_best = i;
    }
  if (dense_best < dense.size()) {
    std::vector<double> fine(n);
    for (std::size_t i = 0; i < n; ++i) fine[i] = (dhi[i] - dlo[i]) / (per_axis - 1);
    const auto out = detail::refine(box, dense[dense_best], fine, opt);
    res.value = out.value;
    res.argmax = out.x;
    res.converged = out.converged;
  }

  // Report the objective re-evaluated at the argmax.
  const auto again = f(res.argmax);
  ++box.evaluations;
  if (again) res.value = *again;
  res.evaluations = box.evaluations;
  return res;
}

struct MaximinSpec {
  Binding binding;  // binding.free lists the optimized parameters
  CriterionKind objective = CriterionKind::MutualInfo;
  std::vector<double> lo;
  std::vector<double> hi;
  MaximizeOptions options;
};

struct OptimumReport {
  double value = 0.0;
  std::vector<std::pair<Param, double>> argmax;  // free parameters, in the order given
  Params params;                                 // full resolved point
  long evaluations = 0;
  bool converged = false;
  double coarse_best = 0.0;

  double at(Param p) const {
    for (const auto& [k, v] : argmax)
      if (k == p) return v;
    return slot(params, p);
  }
};

/// max over the free parameters of min(criterion_1, criterion_2), evaluated
/// on the density-matrix engine. Singular cells are excluded.
inline OptimumReport maximin(const MaximinSpec& spec) {
  spec.binding.validate();
  if (spec.lo.size() != spec.binding.free.size() || spec.hi.size() != spec.binding.free.size())
    throw ConfigError("maximin: one [lo, hi] range per free parameter required");
  for (std::size_t i = 0; i < spec.lo.size(); ++i) {
    Binding::check_value(spec.binding.free[i], spec.lo[i]);
    Binding::check_value(spec.binding.free[i], spec.hi[i]);
  }
  const Binding& b = spec.binding;
  const Objective f = [&](std::span<const double> x) {
    return maximin_objective(b.scenario, b.strategy, spec.objective, b.resolve(x));
  };
  const auto res = maximize(f, spec.lo, spec.hi, spec.options);
  OptimumReport rep;
  rep.value = res.value;
  rep.params = b.resolve(res.argmax);
  for (std::size_t i = 0; i < b.free.size(); ++i) rep.argmax.emplace_back(b.free[i], res.argmax[i]);
  rep.evaluations = res.evaluations;
  rep.converged = res.converged;
  rep.coarse_best = res.coarse_best;
  return rep;
}

/// Extent of a flat optimum along `direction` through `x`: the two farthest
/// points (within the box) whose objective stays within `tol` of f(x).
/// Assumes the near-optimal set is connected along that line.
inline std::pair<std::vector<double>, std::vector<double>> optimal_segment(
    const Objective& f, std::span<const double> x, std::span<const double> direction,
    std::span<const double> lo, std::span<const double> hi, double tol = 1e-9) {
  const auto v0 = f(x);
  if (!v0) throw DomainError("optimal_segment: objective undefined at the optimum");
  const auto point = [&](double t) {
    std::vector<double> p(x.begin(), x.end());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * direction[i];
    return p;
  };
  const auto on_plateau = [&](double t) {
    const auto v = f(point(t));
    return v && *v >= *v0 - tol;
  };
  const auto reach = [&](double sign) {
    double tmax = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = sign * direction[i];
      if (d > 0) tmax = std::min(tmax, (hi[i] - x[i]) / d);
      if (d < 0) tmax = std::min(tmax, (lo[i] - x[i]) / d);
    }
    if (!std::isfinite(tmax)) throw DomainError("optimal_segment: zero direction");
    if (on_plateau(sign * tmax)) return sign * tmax;
    double in = 0.0, out = tmax;
    for (int i = 0; i < 200 && out - in > 1e-13; ++i) {
      const double mid = 0.5 * (in + out);
      (on_plateau(sign * mid) ? in : out) = mid;
    }
    return sign * in;
  };
  return {point(reach(-1.0)), point(reach(+1.0))};
}

/*******************************************************************************
 *
 * Root finding and implicit boundaries
 *
 ******************************************************************************/

/// Every root of g on [lo, hi] bracketed by a sign change between
/// consecutive samples, refined by bisection until the bracket is narrower
/// than `tol`. Samples where g is NaN never bracket a root.
inline std::vector<double> find_roots(const std::function<double(double)>& g, double lo, double hi,
                                      int samples = 200, double tol = 1e-8) {
  std::vector<double> roots;
  double x0 = lo, g0 = g(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = i == samples ? hi : lo + (hi - lo) * i / samples;
    const double g1 = g(x1);
    if (g0 == 0.0) {
      roots.push_back(x0);
    } else if (std::isfinite(g0) && std::isfinite(g1) && (g0 < 0) != (g1 < 0) && g1 != 0.0) {
      double a = x0, b = x1, ga = g0;
      for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if (gm == 0.0) {
          a = b = m;
          break;
        }
        if ((gm < 0) == (ga < 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    g0 = g1;
  }
  if (g0 == 0.0) roots.push_back(x0);
  return roots;
}

struct BoundaryPoint {
  double sweep;
  std::vector<double> roots;  // empty when no sign change was found
};

/// For each sweep value s, the roots in `solve` of g(s, solve) = 0 on
/// [solve_lo, solve_hi]. Absence of a root is reported, not an error.
inline std::vector<BoundaryPoint> boundary_trace(const std::function<double(double, double)>& g,
                                                 const std::vector<double>& sweep, double solve_lo,
                                                 double solve_hi, int samples = 200, double tol = 1e-8) {
  std::vector<BoundaryPoint> out;
  for (double s : sweep)
    out.push_back({s, find_roots([&](double y) { return g(s, y); }, solve_lo, solve_hi, samples, tol)});
  return out;
}

/// Quantities a boundary can be traced on.
enum class Observable { I1, I2, S1, S2, C1, C2, PptMinEig };

inline Observable parse_observable(const std::string& s) {
  static const std::map<std::string, Observable> names{
      {"I1", Observable::I1}, {"I2", Observable::I2}, {"S1", Observable::S1},
      {"S2", Observable::S2}, {"C1", Observable::C1}, {"C2", Observable::C2},
      {"ppt", Observable::PptMinEig}};
  const auto it = names.find(s);
  if (it == names.end()) throw ConfigError("unknown observable '" + s + "'");
  return it->second;
}

/// Engine value of an observable; NaN where it is undefined.
inline double observe(ScenarioTag tag, StrategyKind strategy, Observable o, const Params& p) {
  const ScenarioConfig cfg = ScenarioConfig::from_params(tag, strategy, p);
  if (o == Observable::PptMinEig) return ppt_report(detail::pair_state_matrix(cfg, 2)).min_eig;
  const int idx = static_cast<int>(o);
  const CriterionKind kind = idx < 2 ? CriterionKind::MutualInfo
                             : idx < 4 ? CriterionKind::CondProbSum
                                       : CriterionKind::Pearson;
  try {
    return criterion(cfg, kind, idx % 2 + 1).total;
  } catch (const SingularVarianceError&) {
  } catch (const UndefinedConditionalError&) {
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace seqent
