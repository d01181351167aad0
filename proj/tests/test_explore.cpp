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

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "seqent/explore.hpp"

namespace seqent {
namespace {

constexpr double kPi = std::numbers::pi;

ScanSpec unilateral_scan(int steps) {
  ScanSpec s;
  s.scenario = ScenarioTag::Unilateral;
  s.strategy = StrategyKind::Weak;
  s.axes = {{Param::G1, 0.2, 1.0, steps}, {Param::G2, 0.2, 1.0, steps}};
  s.fixed = {{Param::Theta, kPi / 4}};
  return s;
}

const ScanRow& row_at(const ScanTable& t, double g1, double g2) {
  for (const auto& r : t.rows)
    if (std::abs(r.axis_values[0] - g1) < 1e-12 && std::abs(r.axis_values[1] - g2) < 1e-12) return r;
  throw std::runtime_error("cell not found");
}

TEST(Axis, InclusiveEndpoints) {
  const auto v = Axis{Param::G1, 0.1, 1.0, 4}.values();
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v.front(), 0.1);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_NEAR(v[1], 0.4, 1e-15);
}

TEST(GridScan, KnownCells) {
  const auto t = grid_scan(unilateral_scan(5));
  ASSERT_EQ(t.rows.size(), 25u);
  const auto& full = row_at(t, 1.0, 1.0).point.criteria;
  EXPECT_NEAR(*full.cps[0], 4.0, 1e-13);
  EXPECT_NEAR(*full.min_of(CriterionKind::CondProbSum), 3.0, 1e-13);
  const auto& mid = row_at(t, 0.8, 0.8).point.criteria;
  EXPECT_NEAR(*mid.min_of(CriterionKind::CondProbSum), 18.0 / 5.0, 1e-13);
}

TEST(GridScan, RowsAreLexicographicFirstAxisSlowest) {
  const auto t = grid_scan(unilateral_scan(3));
  const std::vector<double> v{0.2, 0.6, 1.0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(t.rows[i * 3 + j].axis_values[0], v[i], 1e-15);
      EXPECT_NEAR(t.rows[i * 3 + j].axis_values[1], v[j], 1e-15);
    }
}

TEST(GridScan, DoubleViolationIsDefinitional) {
  const auto t = grid_scan(unilateral_scan(9));
  for (const auto& r : t.rows) {
    const auto& c = r.point.criteria;
    for (CriterionKind k : {CriterionKind::MutualInfo, CriterionKind::Pearson}) {
      const auto& v = c.of(k);
      EXPECT_EQ(c.double_violation(k), v[0] && v[1] && *v[0] > 1.0 && *v[1] > 1.0);
    }
    const auto& s = c.cps;
    EXPECT_EQ(c.double_violation(CriterionKind::CondProbSum),
              s[0] && s[1] && ((*s[0] > 3 && *s[1] > 3) || (*s[0] < 1 && *s[1] < 1)));
  }
}

TEST(GridScan, SingularCellsAreRecordedNotDropped) {
  ScanSpec s;
  s.axes = {{Param::Theta, 0.0, kPi / 4, 3}};
  s.fixed = {{Param::G1, 0.5}, {Param::G2, 0.5}};
  const auto t = grid_scan(s);
  ASSERT_EQ(t.rows.size(), 3u);
  // theta = 0: Bob never sees -1 and both Pearson variances vanish.
  EXPECT_EQ(t.rows[0].point.status(), "singular_pearson+undefined_conditional");
  EXPECT_EQ(t.rows[2].point.status(), "ok");
}

TEST(GridScan, IdenticalAcrossWorkerCounts) {
  ScanSpec s;
  s.scenario = ScenarioTag::Bilateral;
  s.strategy = StrategyKind::PPM;
  s.axes = {{Param::Theta, 0.05, kPi / 2, 7}, {Param::G1, 0.1, 1, 5}, {Param::G4, 0.1, 1, 4}};
  s.fixed = {{Param::G2, 0.3}, {Param::G3, 0.9}};
  const auto a = grid_scan(s, 1);
  for (int w : {2, 4, 7}) {
    const auto b = grid_scan(s, w);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      EXPECT_EQ(a.rows[i].axis_values, b.rows[i].axis_values);
      EXPECT_EQ(a.rows[i].point.criteria.mi, b.rows[i].point.criteria.mi);
      EXPECT_EQ(a.rows[i].point.criteria.cps, b.rows[i].point.criteria.cps);
      EXPECT_EQ(a.rows[i].point.criteria.pearson, b.rows[i].point.criteria.pearson);
      EXPECT_EQ(a.rows[i].point.ppt_min_eig, b.rows[i].point.ppt_min_eig);
    }
  }
}

TEST(GridScan, SymmetricTieEqualsDiagonalOfFullScan) {
  ScanSpec tied;
  tied.scenario = ScenarioTag::Bilateral;
  tied.axes = {{Param::G1, 0.1, 1.0, 10}};
  tied.fixed = {{Param::Theta, 0.6}};
  tied.ties = {{Param::G2, Param::G1}, {Param::G3, Param::G1}, {Param::G4, Param::G1}};
  const auto diag = grid_scan(tied);
  for (const auto& r : diag.rows) {
    const double g = r.axis_values[0];
    const auto ref = evaluate_criteria(ScenarioConfig::bilateral(StrategyKind::Weak, 0.6, g, g, g, g));
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(*r.point.criteria.mi[k], *ref.mi[k], 1e-12);
      EXPECT_NEAR(*r.point.criteria.cps[k], *ref.cps[k], 1e-12);
      EXPECT_NEAR(*r.point.criteria.pearson[k], *ref.pearson[k], 1e-12);
    }
  }
}

TEST(ScanSpec, ValidationErrors) {
  auto missing = unilateral_scan(3);
  missing.fixed.clear();
  EXPECT_THROW(missing.validate(), ConfigError);
  auto twice = unilateral_scan(3);
  twice.fixed[Param::G1] = 0.5;
  EXPECT_THROW(twice.validate(), ConfigError);
  auto foreign = unilateral_scan(3);
  foreign.fixed[Param::G3] = 0.5;
  EXPECT_THROW(foreign.validate(), ConfigError);
  auto reversed = unilateral_scan(3);
  reversed.axes[0] = {Param::G1, 1.0, 0.2, 3};
  EXPECT_THROW(reversed.validate(), ConfigError);
  auto outside = unilateral_scan(3);
  outside.axes[0] = {Param::G1, 0.0, 1.0, 3};
  EXPECT_THROW(outside.validate(), ConfigError);
  auto dangling = unilateral_scan(3);
  dangling.scenario = ScenarioTag::Bilateral;
  dangling.ties = {{Param::G3, Param::G4}};
  EXPECT_THROW(dangling.validate(), ConfigError);
}

TEST(ParallelFor, VisitsEachIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw DomainError("boom");
                            }),
               DomainError);
}

MaximizeOptions quick_options() {
  MaximizeOptions o;
  o.coarse_per_axis = 21;
  o.dense_per_axis = 41;
  o.dense_budget = 5000;
  return o;
}

TEST(Maximize, ConcaveQuadraticInsideBox) {
  const Objective f = [](std::span<const double> x) -> std::optional<double> {
    return -(x[0] - 0.3) * (x[0] - 0.3) - 2 * (x[1] + 0.2) * (x[1] + 0.2);
  };
  const std::vector<double> lo{-1, -1}, hi{1, 1};
  const auto r = maximize(f, lo, hi, quick_options());
  EXPECT_NEAR(r.argmax[0], 0.3, 1e-5);
  EXPECT_NEAR(r.argmax[1], -0.2, 1e-5);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
  EXPECT_GE(r.value, r.coarse_best);
}

TEST(Maximize, OptimumOnBoundaryIsProjected) {
  const Objective f = [](std::span<const double> x) -> std::optional<double> { return x[0] + 0.5 * x[1]; };
  const std::vector<double> lo{0, 0}, hi{1, 2};
  const auto r = maximize(f, lo, hi, quick_options());
  EXPECT_NEAR(r.argmax[0], 1.0, 1e-9);
  EXPECT_NEAR(r.argmax[1], 2.0, 1e-9);
}

TEST(Maximize, SkipsUndefinedCellsAndFailsWhenAllUndefined) {
  const Objective holes = [](std::span<const double> x) -> std::optional<double> {
    if (x[0] > 0.8) return std::nullopt;
    return x[0];
  };
  const std::vector<double> lo{0}, hi{1};
  const auto r = maximize(holes, lo, hi, quick_options());
  EXPECT_NEAR(r.value, 0.8, 1e-6);
  const Objective none = [](std::span<const double>) -> std::optional<double> { return std::nullopt; };
  EXPECT_THROW(maximize(none, lo, hi, quick_options()), DomainError);
}

TEST(Maximin, ReportedValueIsReevaluatedAtArgmax) {
  MaximinSpec spec;
  spec.binding = Binding{ScenarioTag::Unilateral, StrategyKind::Weak, {Param::G1, Param::G2}, {{Param::Theta, kPi / 4}}, {}};
  spec.objective = CriterionKind::MutualInfo;
  spec.lo = {0.01, 0.01};
  spec.hi = {1.0, 1.0};
  spec.options = quick_options();
  const auto r = maximin(spec);
  EXPECT_GE(r.value, r.coarse_best);
  const auto again = maximin_objective(ScenarioTag::Unilateral, StrategyKind::Weak, CriterionKind::MutualInfo, r.params);
  ASSERT_TRUE(again);
  EXPECT_NEAR(r.value, *again, 1e-12);
  EXPECT_EQ(r.at(Param::Theta), kPi / 4);
  EXPECT_GT(r.value, 1.0);
}

TEST(Maximin, SingularEverywhereIsAnError) {
  MaximinSpec spec;
  spec.binding = Binding{ScenarioTag::Unilateral, StrategyKind::Weak, {Param::G1}, {{Param::Theta, 0.0}}, {{Param::G2, Param::G1}}};
  spec.objective = CriterionKind::Pearson;
  spec.lo = {0.1};
  spec.hi = {1.0};
  spec.options = quick_options();
  EXPECT_THROW(maximin(spec), DomainError);
}

TEST(OptimalSegment, FlatRidge) {
  // Plateau value 1 on x in [0.2, 0.7], y = 0.5.
  const Objective f = [](std::span<const double> x) -> std::optional<double> {
    const double ridge = std::min(1.0, std::min(x[0] - 0.2, 0.7 - x[0]) * 10 + 1.0);
    return ridge - std::abs(x[1] - 0.5);
  };
  const std::vector<double> x{0.4, 0.5}, dir{1.0, 0.0}, lo{0, 0}, hi{1, 1};
  const auto [a, b] = optimal_segment(f, x, dir, lo, hi);
  EXPECT_NEAR(a[0], 0.2, 1e-9);
  EXPECT_NEAR(b[0], 0.7, 1e-9);
  EXPECT_EQ(a[1], 0.5);
}

TEST(FindRoots, BracketsEverySignChange) {
  const auto r = find_roots([](double x) { return std::sin(x); }, 0.5, 10.0);
  ASSERT_EQ(r.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r[i], kPi * static_cast<double>(i + 1), 1e-8);
  EXPECT_TRUE(find_roots([](double x) { return x * x + 1; }, -1, 1).empty());
}

TEST(BoundaryTrace, RootsLieOnTheLevelSet) {
  const double threshold = 1.0;
  const auto g = [&](double g1, double g2) {
    return observe(ScenarioTag::Unilateral, StrategyKind::Weak, Observable::I2, {kPi / 4, {g1, g2, 0, 0}}) - threshold;
  };
  const auto trace = boundary_trace(g, {0.5, 0.75, 1.0}, 0.01, 1.0);
  ASSERT_EQ(trace.size(), 3u);
  for (const auto& bp : trace)
    for (double r : bp.roots) EXPECT_LE(std::abs(g(bp.sweep, r)), 1e-7);
  EXPECT_FALSE(trace.back().roots.empty());
  // Pair 2 at theta = 0 carries at most one bit, so no crossing exists.
  const auto none = boundary_trace(
      [](double g1, double g2) {
        return observe(ScenarioTag::Unilateral, StrategyKind::Weak, Observable::I2, {0.0, {g1, g2, 0, 0}}) - 1.5;
      },
      {0.5}, 0.01, 1.0);
  EXPECT_TRUE(none[0].roots.empty());
}

TEST(Observe, NaNWhereUndefined) {
  EXPECT_TRUE(std::isnan(observe(ScenarioTag::Unilateral, StrategyKind::Weak, Observable::C1, {0.0, {0.5, 0.5, 0, 0}})));
  EXPECT_NEAR(observe(ScenarioTag::Unilateral, StrategyKind::Weak, Observable::S1, {kPi / 4, {0.8, 0.8, 0, 0}}), 3.6,
              1e-13);
  EXPECT_THROW(parse_observable("Q1"), ConfigError);
  EXPECT_EQ(parse_observable("ppt"), Observable::PptMinEig);
}

}  // namespace
}  // namespace seqent
