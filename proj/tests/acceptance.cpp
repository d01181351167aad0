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

// Acceptance run: one PASS/FAIL line per criterion, evidence indented below
// it. Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "seqent/io.hpp"
#include "seqent/reproduce.hpp"
#include "seqent/verify.hpp"

namespace {

using namespace seqent;

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 7;

// Tolerances pinned here; golden rows carry their own.
constexpr double kClosedFormTol = 1e-9;
constexpr double kClosedFormSeconds = 60.0;
constexpr double kAppendixTol = 1e-9;
constexpr double kMixednessTol = 1e-10;
constexpr double kNormalizationTol = 1e-12;
constexpr double kNoSignallingTol = 1e-12;
constexpr double kCompletenessTol = 1e-12;
constexpr double kAffineTol = 1e-12;
constexpr double kTraceTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> evidence;
};

void report(int n, const Outcome& o, bool& all) {
  std::printf("criterion %2d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.summary.c_str());
  for (const auto& e : o.evidence) std::printf("    %s\n", e.c_str());
  std::fflush(stdout);
  all = all && o.pass;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Outcome from_report(const VerifyReport& rep, const std::string& what) {
  Outcome o;
  o.pass = rep.ok();
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& c : rep.checks)
    if (c.status != CheckStatus::Skipped) {
      worst = std::max(worst, c.max_deviation);
      ++checked;
    }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %zu families, max deviation %.3e", what.c_str(), checked, worst);
  o.summary = buf;
  o.evidence = lines_of(format_report(rep));
  return o;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto rep = verify_closed_forms(kSeed, 1000, kClosedFormTol);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o = from_report(rep, "closed forms vs engine, 1000 tuples each");
  bool skipped_only_open = true;
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::Skipped) skipped_only_open = skipped_only_open && c.family == "bilateral-ppm-I1";
  o.pass = o.pass && skipped_only_open && secs < kClosedFormSeconds;
  char buf[80];
  std::snprintf(buf, sizeof buf, ", %.2f s", secs);
  o.summary += buf;
  return o;
}

Outcome golden(const std::vector<GoldenRow>& rows, int criterion) {
  Outcome o;
  std::vector<GoldenRow> mine;
  for (const auto& r : rows)
    if (r.criterion == criterion) mine.push_back(r);
  int failed = 0;
  for (const auto& r : mine) failed += !r.pass();
  o.pass = !mine.empty() && failed == 0;
  o.summary = std::to_string(mine.size() - static_cast<std::size_t>(failed)) + " of " + std::to_string(mine.size()) +
              " reference values within tolerance";
  o.evidence = lines_of(format_golden(mine));
  return o;
}

// e3 < 0 and e1, e2, e4 > 0 for both unilateral families on a 21^3 midpoint
// grid of theta in (0, pi/2) and gains in (0, 1).
Outcome unilateral_sign_pattern() {
  Outcome o;
  int violations = 0, cells = 0;
  for (AppendixFamily fam : {AppendixFamily::UnilateralWeak, AppendixFamily::UnilateralPPM})
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j)
        for (int l = 0; l < 21; ++l) {
          const Params p{kPi / 2 * (i + 0.5) / 21, {(j + 0.5) / 21, (l + 0.5) / 21, 0, 0}};
          const auto e = appendix_eigs(fam, p);
          const auto engine = ppt_report(pair_state(appendix_scenario(fam, p), 2));
          const bool ok = e[0] > 0 && e[1] > 0 && e[3] > 0 && e[2] < 0 && engine.entangled &&
                          std::abs(engine.min_eig - e[2]) <= kAppendixTol;
          violations += !ok;
          ++cells;
        }
  o.pass = violations == 0;
  o.summary = "unilateral sign pattern on 21^3 grid: " + std::to_string(cells - violations) + " of " +
              std::to_string(cells) + " cells";
  return o;
}

Outcome criterion11(const std::vector<GoldenRow>& rows) {
  Outcome spectra = from_report(verify_appendix(kSeed, 500, kAppendixTol), "spectra, 500 tuples each");
  Outcome signs = unilateral_sign_pattern();
  Outcome boundary = golden(rows, 11);
  Outcome o;
  o.pass = spectra.pass && signs.pass && boundary.pass;
  o.summary = spectra.summary + "; " + signs.summary + "; " + boundary.summary;
  o.evidence = spectra.evidence;
  o.evidence.insert(o.evidence.end(), boundary.evidence.begin(), boundary.evidence.end());
  return o;
}

/*******************************************************************************
 *
 * Property suite
 *
 ******************************************************************************/

struct Property {
  std::string name;
  double worst;
  double tol;
  bool pass() const { return worst <= tol; }
};

std::string property_line(const Property& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-34s worst %.3e (tol %.1e)  %s", p.name.c_str(), p.worst, p.tol,
                p.pass() ? "PASS" : "FAIL");
  return buf;
}

ScenarioConfig random_config(SplitMix64& rng, int i) {
  Params p = draw_tuple(rng);
  p.theta = rng.uniform(0.0, kPi / 2);
  return ScenarioConfig::from_params(i % 2 ? ScenarioTag::Unilateral : ScenarioTag::Bilateral,
                                     i % 3 ? StrategyKind::Weak : StrategyKind::PPM, p);
}

Property normalization() {
  SplitMix64 rng = SplitMix64::stream(kSeed, 100);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto cfg = random_config(rng, i);
    const std::size_t na = cfg.chain(Side::A).size(), nb = cfg.chain(Side::B).size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << (na + nb)); ++mask) {
      SettingChoice s;
      for (std::size_t b = 0; b < na + nb; ++b) (b < na ? s.a : s.b).push_back((mask >> b) & 1 ? 2 : 1);
      worst = std::max(worst, std::abs(joint_distribution(cfg, s).total() - 1.0));
    }
    for (int k = 1; k <= 2; ++k)
      for (int m = 1; m <= 2; ++m) worst = std::max(worst, std::abs(marginal_pair(cfg, k, m).total() - 1.0));
  }
  return {"normalization", worst, kNormalizationTol};
}

// Outcome marginals of one side are independent of the other side's settings.
Property no_signalling() {
  SplitMix64 rng = SplitMix64::stream(kSeed, 101);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Params p = draw_tuple(rng);
    const auto cfg = ScenarioConfig::bilateral(i % 2 ? StrategyKind::Weak : StrategyKind::PPM, p.theta, p.g[0],
                                               p.g[1], p.g[2], p.g[3]);
    const std::vector<int> mine{1 + i % 2, 1 + (i / 2) % 2};
    for (Side side : {Side::A, Side::B}) {
      std::map<std::vector<int>, double> ref;
      for (int combo = 0; combo < 4; ++combo) {
        const std::vector<int> other{1 + combo % 2, 1 + combo / 2};
        const SettingChoice s = side == Side::A ? SettingChoice{mine, other} : SettingChoice{other, mine};
        std::map<std::vector<int>, double> marg;
        for (const auto& e : joint_distribution(cfg, s).entries) marg[side == Side::A ? e.a : e.b] += e.probability;
        if (combo == 0) ref = marg;
        for (const auto& [k, v] : marg) worst = std::max(worst, std::abs(v - ref[k]));
      }
    }
  }
  return {"no-signalling", worst, kNoSignallingTol};
}

Property kraus_completeness() {
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double g = i / 100.0;  // gains live in (0, 1]
    for (StrategyKind kind : {StrategyKind::Weak, StrategyKind::PPM})
      for (Basis b : {Basis::Z, Basis::X}) {
        const auto k = kraus_for({kind, b, g});
        worst = std::max(worst, k.completeness_defect());
      }
  }
  return {"Kraus completeness", worst, kCompletenessTol};
}

Property pearson_affine() {
  SplitMix64 rng = SplitMix64::stream(kSeed, 102);
  const CMatrix id = CMatrix::identity(2);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto cfg = random_config(rng, i);
    const CMatrix rho = pair_state(cfg, 2).matrix();
    for (Basis b : {Basis::Z, Basis::X}) {
      const CMatrix p = pauli(b);
      const double base = pearson_operators(rho, p, p);
      const Complex a1(rng.uniform(0.1, 3)), a2(rng.uniform(0.1, 3)), c1(rng.uniform(-2, 2)), c2(rng.uniform(-2, 2));
      worst = std::max(worst, std::abs(pearson_operators(rho, a1 * p + c1 * id, a2 * p + c2 * id) - base));
    }
  }
  return {"Pearson affine invariance", worst, kAffineTol};
}

Property eigen_trace() {
  SplitMix64 rng = SplitMix64::stream(kSeed, 103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    CMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        const double re = rng.uniform(-1, 1);
        m(r, c) = Complex(re, rng.uniform(-1, 1));
      }
    const CMatrix h = m + dagger(m);
    double sum = 0.0;
    for (double v : hermitian_eigenvalues(h)) sum += v;
    worst = std::max(worst, std::abs(sum - trace(h).real()));
  }
  return {"eigensolver trace identity", worst, kTraceTol};
}

std::string scan_csv(int workers) {
  ScanSpec s;
  s.scenario = ScenarioTag::Bilateral;
  s.strategy = StrategyKind::Weak;
  s.axes = {{Param::Theta, 0.0, kPi / 2, 9}, {Param::G1, 0.1, 1.0, 6}, {Param::G2, 0.1, 1.0, 6}};
  s.fixed = {{Param::G3, 0.7}};
  s.ties = {{Param::G4, Param::G2}};
  std::ostringstream os;
  write_csv(os, scan_to_table(grid_scan(s, workers)));
  return os.str();
}

Outcome criterion13() {
  Outcome o;
  const std::vector<Property> props{normalization(), no_signalling(), kraus_completeness(), pearson_affine(),
                                    eigen_trace()};
  int passed = 0;
  for (const auto& p : props) {
    o.evidence.push_back(property_line(p));
    passed += p.pass();
  }
  const std::string one = scan_csv(1);
  const bool identical = one == scan_csv(4) && one == scan_csv(7);
  o.evidence.push_back(std::string("scan CSV byte-identical for 1, 4, 7 workers: ") + (identical ? "PASS" : "FAIL"));
  o.pass = passed == static_cast<int>(props.size()) && identical;
  o.summary = std::to_string(passed + identical) + " of " + std::to_string(props.size() + 1) + " properties hold";
  return o;
}

}  // namespace

int main() {
  bool all = true;
  const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  report(1, criterion1(), all);
  const auto rows = golden_rows(workers);
  for (int c = 2; c <= 10; ++c) report(c, golden(rows, c), all);
  report(11, criterion11(rows), all);
  report(12, from_report(verify_mixedness(kSeed, 200, kMixednessTol), "mixedness, 200 tuples each"), all);
  report(13, criterion13(), all);
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
