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

// Evaluates one unilateral weak point, then searches for the gains that let
// both pairs certify entanglement through mutual information.

#include <cstdio>
#include <numbers>

#include "seqent/criteria.hpp"
#include "seqent/explore.hpp"
#include "seqent/witness.hpp"

int main() {
  using namespace seqent;
  const double theta = std::numbers::pi / 4;

  const auto cfg = ScenarioConfig::unilateral(StrategyKind::Weak, theta, 0.8, 0.8);
  const CriteriaTable table = evaluate_criteria(cfg);
  std::printf("S1 = %.6f  S2 = %.6f  double violation: %s\n", *table.cps[0], *table.cps[1],
              table.double_violation(CriterionKind::CondProbSum) ? "yes" : "no");

  const PptReport ppt = ppt_report(pair_state(cfg, 2));
  std::printf("pair-2 state: min PT eigenvalue %.6f, purity %.6f\n", ppt.min_eig, ppt.mixedness);

  MaximinSpec spec;
  spec.binding = Binding{ScenarioTag::Unilateral, StrategyKind::Weak, {Param::G1, Param::G2}, {{Param::Theta, theta}}, {}};
  spec.objective = CriterionKind::MutualInfo;
  spec.lo = {0.01, 0.01};
  spec.hi = {1.0, 1.0};
  const OptimumReport best = maximin(spec);
  std::printf("max min(I1, I2) = %.6f at G1 = %.4f, G2 = %.4f\n", best.value, best.at(Param::G1),
              best.at(Param::G2));
  return 0;
}
