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

// Command-line front end: eval, scan, optimize, boundary, verify, reproduce.
// Exit codes: 0 success, 1 tolerance failure, 2 usage or configuration error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqent/config.hpp"
#include "seqent/criteria.hpp"
#include "seqent/explore.hpp"
#include "seqent/io.hpp"
#include "seqent/reproduce.hpp"
#include "seqent/verify.hpp"
#include "seqent/witness.hpp"

namespace {

using namespace seqent;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string out;
  int workers = 1;
};

struct PointArgs {
  std::string config;
  std::string scenario = "unilateral";
  std::string strategy = "weak";
  std::string theta = "pi/4";
  std::optional<double> g;
  std::optional<double> g1, g2, g3, g4;
};

struct SpaceArgs {
  std::string scenario = "unilateral";
  std::string strategy = "weak";
  std::vector<std::string> fix;
  std::vector<std::string> tie;
  bool symmetric = false;
};

int default_workers() {
  const char* env = std::getenv("ES_WORKERS");
  if (!env || !*env) return 1;
  const int n = static_cast<int>(parse_real(env, "ES_WORKERS"));
  if (n < 1 || std::to_string(n) != env) throw ConfigError("ES_WORKERS must be a positive integer");
  return n;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_coordinate(Param p, const std::string& token) {
  return p == Param::Theta ? parse_angle(token) : parse_real(token, to_string(p));
}

// name:lo:hi:steps
Axis parse_axis(const std::string& s) {
  const auto f = split(s, ':');
  if (f.size() != 4) throw ConfigError("axis '" + s + "' must look like NAME:LO:HI:STEPS");
  const Param p = parse_param(f[0]);
  const double steps = parse_real(f[3], "axis steps");
  if (steps != std::floor(steps) || steps < 2 || steps > 1e7) throw ConfigError("axis steps must be an integer >= 2");
  return {p, parse_coordinate(p, f[1]), parse_coordinate(p, f[2]), static_cast<int>(steps)};
}

// name:lo:hi
struct Range {
  Param param;
  double lo, hi;
};

Range parse_range(const std::string& s) {
  const auto f = split(s, ':');
  if (f.size() != 3) throw ConfigError("range '" + s + "' must look like NAME:LO:HI");
  const Param p = parse_param(f[0]);
  Range r{p, parse_coordinate(p, f[1]), parse_coordinate(p, f[2])};
  if (!(r.lo < r.hi)) throw ConfigError("range '" + s + "': LO must be < HI");
  Binding::check_value(p, r.lo);
  Binding::check_value(p, r.hi);
  return r;
}

Binding parse_space(const SpaceArgs& a, std::vector<Param> free) {
  Binding b{parse_scenario(a.scenario), parse_strategy(a.strategy), std::move(free), {}, {}};
  if (b.scenario == ScenarioTag::General) throw ConfigError("parameter sweeps need a unilateral or bilateral scenario");
  for (const auto& s : a.fix) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--fix expects NAME=VALUE, got '" + s + "'");
    const Param p = parse_param(s.substr(0, eq));
    if (!b.fixed.emplace(p, parse_coordinate(p, s.substr(eq + 1))).second)
      throw ConfigError(std::string("parameter ") + to_string(p) + " fixed twice");
  }
  for (const auto& s : a.tie) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--tie expects FOLLOWER=LEADER, got '" + s + "'");
    b.ties.push_back({parse_param(s.substr(0, eq)), parse_param(s.substr(eq + 1))});
  }
  if (a.symmetric) {
    for (Param p : family_params(b.scenario))
      if (p != Param::Theta && p != Param::G1) b.ties.push_back({p, Param::G1});
  }
  b.validate();
  return b;
}

void add_space_options(CLI::App* cmd, SpaceArgs& a) {
  cmd->add_option("--scenario", a.scenario, "unilateral | bilateral")->capture_default_str();
  cmd->add_option("--strategy", a.strategy, "weak | ppm")->capture_default_str();
  cmd->add_option("--fix", a.fix, "Pinned parameter NAME=VALUE (repeatable)");
  cmd->add_option("--tie", a.tie, "Tie FOLLOWER=LEADER, e.g. G2=G1 (repeatable)");
  cmd->add_flag("--symmetric", a.symmetric, "Tie every gain to G1");
}

// Writes to --out or stdout after all computation is done.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + c.out + "'");
  f << text;
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    write_csv(os, t);
  } else if (format == "json") {
    write_json(os, t);
  } else {
    // Aligned plain text.
    std::vector<std::size_t> w(t.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < t.columns.size(); ++i) w[i] = t.columns[i].size();
    for (const auto& r : t.rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::string s = cell_text(r[i]);
        if (const auto* d = std::get_if<double>(&r[i]); d && std::isfinite(*d)) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.12g", *d);
          s = buf;
        }
        w[i] = std::max(w[i], s.size());
        line.push_back(std::move(s));
      }
      cells.push_back(std::move(line));
    }
    const auto row = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << r[i] << std::string(i + 1 < r.size() ? w[i] - r[i].size() + 2 : 0, ' ');
      os << '\n';
    };
    row(t.columns);
    for (const auto& r : cells) row(r);
  }
  return os.str();
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw ConfigError("unsupported --format '" + f + "'");
}

/*******************************************************************************
 * eval
 ******************************************************************************/

ScenarioConfig build_point(const PointArgs& a) {
  if (!a.config.empty()) return load_scenario_file(a.config).config;
  const ScenarioTag tag = parse_scenario(a.scenario);
  if (tag == ScenarioTag::General) throw ConfigError("a general scenario needs --config");
  Params p;
  p.theta = parse_angle(a.theta);
  const int n = tag == ScenarioTag::Unilateral ? 2 : 4;
  const std::optional<double> gi[] = {a.g1, a.g2, a.g3, a.g4};
  for (int i = 0; i < 4; ++i) {
    const auto& v = gi[i];
    if (v && i >= n) throw ConfigError("--g" + std::to_string(i + 1) + " does not apply to a unilateral scenario");
    if (v && a.g) throw ConfigError("--g cannot be combined with individual gains");
    if (i >= n) continue;
    if (!v && !a.g) throw ConfigError("missing --g" + std::to_string(i + 1) + " (or --g)");
    p.g[static_cast<std::size_t>(i)] = v ? *v : *a.g;
  }
  return ScenarioConfig::from_params(tag, parse_strategy(a.strategy), p);
}

Table eval_table(const ScenarioConfig& cfg) {
  Table t{{"quantity", "pair", "value", "verdict"}, {}};
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const CriterionKind kinds[] = {CriterionKind::MutualInfo, CriterionKind::CondProbSum, CriterionKind::Pearson};
  for (CriterionKind kind : kinds) {
    std::vector<std::optional<double>> vals;
    for (int k = 1; k <= cfg.pair_count(); ++k) {
      std::optional<double> v;
      std::string verdict;
      try {
        v = criterion(cfg, kind, k).total;
        verdict = exceeds_threshold(kind, *v) ? "ENTANGLED" : "-";
      } catch (const SingularVarianceError&) {
        verdict = "SINGULAR";
      } catch (const UndefinedConditionalError&) {
        verdict = "UNDEFINED";
      }
      vals.push_back(v);
      t.rows.push_back({to_string(kind), static_cast<long long>(k), v ? *v : nan, verdict});
    }
  }
  for (int k = 1; k <= cfg.pair_count(); ++k) {
    const PptReport r = ppt_report(detail::pair_state_matrix(cfg, k));
    t.rows.push_back({std::string("ppt_min_eig"), static_cast<long long>(k), r.min_eig,
                      std::string(r.entangled ? "ENTANGLED" : "PPT")});
    t.rows.push_back({std::string("purity"), static_cast<long long>(k), r.mixedness, std::string("-")});
  }
  if (cfg.pair_count() == 2) {
    const CriteriaTable ct = evaluate_criteria(cfg);
    for (CriterionKind kind : kinds) {
      const auto m = ct.min_of(kind);
      t.rows.push_back({std::string("min") + to_string(kind), std::string("1,2"), m ? *m : nan,
                        std::string(!m ? "SINGULAR" : ct.double_violation(kind) ? "DOUBLE" : "-")});
    }
  }
  return t;
}

/*******************************************************************************
 * optimize
 ******************************************************************************/

Table optimum_table(const OptimumReport& r, CriterionKind objective) {
  Table t{{"objective", "value"}, {}};
  std::vector<Cell> row{std::string("min") + to_string(objective), r.value};
  for (const auto& [p, v] : r.argmax) {
    t.columns.emplace_back(to_string(p));
    row.emplace_back(v);
  }
  t.columns.insert(t.columns.end(), {"evaluations", "converged"});
  row.emplace_back(static_cast<long long>(r.evaluations));
  row.emplace_back(static_cast<long long>(r.converged));
  t.rows.push_back(std::move(row));
  return t;
}

CriterionKind parse_objective(const std::string& s) {
  if (s == "I") return CriterionKind::MutualInfo;
  if (s == "S") return CriterionKind::CondProbSum;
  if (s == "C") return CriterionKind::Pearson;
  throw ConfigError("unknown objective '" + s + "' (expected I, S or C)");
}

/*******************************************************************************
 * reproduce
 ******************************************************************************/

Table golden_table(const std::vector<GoldenRow>& rows) {
  Table t{{"criterion", "name", "computed", "expected", "deviation", "tolerance", "status", "detail"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<long long>(r.criterion), r.name, r.computed, r.expected, r.deviation(), r.tolerance,
                      std::string(r.pass() ? "PASS" : "FAIL"), r.detail});
  return t;
}

int run(int argc, char** argv) {
  CLI::App app{"Sequential entanglement sharing: criteria, scans, optima and verification"};
  app.require_subcommand(1);
  Common common;
  common.workers = default_workers();
  app.add_option("--workers", common.workers, "Worker threads (default: ES_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", common.out, "Write output to PATH instead of stdout");

  // eval
  PointArgs point;
  auto* eval = app.add_subcommand("eval", "Evaluate every criterion at one point");
  eval->add_option("--config", point.config, "Scenario file (key = value with [A1] ... sections)");
  eval->add_option("--scenario", point.scenario, "unilateral | bilateral")->capture_default_str();
  eval->add_option("--strategy", point.strategy, "weak | ppm")->capture_default_str();
  eval->add_option("--theta", point.theta, "Angle in radians or pi/4, pi/6, pi/12")->capture_default_str();
  eval->add_option("--g", point.g, "Common gain for every intermediate setting");
  eval->add_option("--g1", point.g1, "Gain G1");
  eval->add_option("--g2", point.g2, "Gain G2");
  eval->add_option("--g3", point.g3, "Gain G3 (bilateral)");
  eval->add_option("--g4", point.g4, "Gain G4 (bilateral)");
  std::string eval_format = "text";
  eval->add_option("--format", eval_format, "text | csv | json")->capture_default_str();

  // scan
  SpaceArgs scan_space;
  std::vector<std::string> scan_axes;
  std::string scan_format = "csv";
  auto* scan = app.add_subcommand("scan", "Grid scan over parameter axes");
  add_space_options(scan, scan_space);
  scan->add_option("--axis", scan_axes, "Axis NAME:LO:HI:STEPS (repeatable, first varies slowest)")->required();
  scan->add_option("--format", scan_format, "csv | json")->capture_default_str();

  // optimize
  SpaceArgs opt_space;
  std::vector<std::string> opt_free;
  std::string opt_objective = "I";
  std::string opt_format = "text";
  auto* optimize = app.add_subcommand("optimize", "Maximize min(criterion pair 1, criterion pair 2)");
  add_space_options(optimize, opt_space);
  optimize->add_option("--objective", opt_objective, "I | S | C")->capture_default_str();
  optimize->add_option("--free", opt_free, "Free parameter NAME:LO:HI (repeatable)")->required();
  optimize->add_option("--format", opt_format, "text | csv | json")->capture_default_str();

  // boundary
  SpaceArgs bnd_space;
  std::string bnd_observable = "I2", bnd_sweep, bnd_solve, bnd_format = "csv";
  double bnd_threshold = 1.0;
  int bnd_samples = 200;
  auto* boundary = app.add_subcommand("boundary", "Trace observable = threshold along a sweep");
  add_space_options(boundary, bnd_space);
  boundary->add_option("--observable", bnd_observable, "I1 I2 S1 S2 C1 C2 or ppt")->capture_default_str();
  boundary->add_option("--threshold", bnd_threshold, "Level to solve for")->capture_default_str();
  boundary->add_option("--sweep", bnd_sweep, "Sweep axis NAME:LO:HI:STEPS")->required();
  boundary->add_option("--solve", bnd_solve, "Solve range NAME:LO:HI")->required();
  boundary->add_option("--samples", bnd_samples, "Bracketing samples per sweep value")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  boundary->add_option("--format", bnd_format, "csv | json")->capture_default_str();

  // verify
  std::uint64_t seed = 7;
  std::size_t count = 1000;
  auto* verify = app.add_subcommand("verify", "Seeded engine vs closed-form equivalence suites");
  verify->add_option("--seed", seed, "Master seed")->capture_default_str();
  verify->add_option("--count", count, "Tuples per family")->check(CLI::PositiveNumber)->capture_default_str();

  // reproduce
  std::string rep_format = "text";
  auto* reproduce = app.add_subcommand("reproduce", "Recompute every headline number");
  reproduce->add_option("--format", rep_format, "text | csv | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*eval) {
    require_format(eval_format, {"text", "csv", "json"});
    emit(common, render(eval_table(build_point(point)), eval_format));
    return kExitOk;
  }
  if (*scan) {
    require_format(scan_format, {"csv", "json"});
    ScanSpec spec;
    std::vector<Param> free;
    for (const auto& s : scan_axes) {
      spec.axes.push_back(parse_axis(s));
      free.push_back(spec.axes.back().param);
    }
    const Binding b = parse_space(scan_space, free);
    spec.scenario = b.scenario;
    spec.strategy = b.strategy;
    spec.fixed = b.fixed;
    spec.ties = b.ties;
    emit(common, render(scan_to_table(grid_scan(spec, common.workers)), scan_format));
    return kExitOk;
  }
  if (*optimize) {
    require_format(opt_format, {"text", "csv", "json"});
    MaximinSpec spec;
    std::vector<Param> free;
    for (const auto& s : opt_free) {
      const Range r = parse_range(s);
      free.push_back(r.param);
      spec.lo.push_back(r.lo);
      spec.hi.push_back(r.hi);
    }
    spec.binding = parse_space(opt_space, free);
    spec.objective = parse_objective(opt_objective);
    spec.options.workers = common.workers;
    emit(common, render(optimum_table(maximin(spec), spec.objective), opt_format));
    return kExitOk;
  }
  if (*boundary) {
    require_format(bnd_format, {"csv", "json"});
    const Axis sweep = parse_axis(bnd_sweep);
    const Range solve = parse_range(bnd_solve);
    if (sweep.param == solve.param) throw ConfigError("sweep and solve parameters must differ");
    const Binding b = parse_space(bnd_space, {sweep.param, solve.param});
    Binding::check_value(sweep.param, sweep.lo);
    Binding::check_value(sweep.param, sweep.hi);
    const Observable obs = parse_observable(bnd_observable);
    const auto trace = boundary_trace(
        [&](double s, double y) {
          const double x[] = {s, y};
          return observe(b.scenario, b.strategy, obs, b.resolve(x)) - bnd_threshold;
        },
        sweep.values(), solve.lo, solve.hi, bnd_samples);
    Table t{{to_string(sweep.param), to_string(solve.param), "status"}, {}};
    for (const auto& bp : trace) {
      if (bp.roots.empty()) t.rows.push_back({bp.sweep, std::numeric_limits<double>::quiet_NaN(), std::string("no_root")});
      for (double r : bp.roots) t.rows.push_back({bp.sweep, r, std::string("root")});
    }
    emit(common, render(t, bnd_format));
    return kExitOk;
  }
  if (*verify) {
    const VerifyReport rep = verify_all(seed, count);
    emit(common, format_report(rep) + (rep.ok() ? "verify: PASS\n" : "verify: FAIL\n"));
    return rep.ok() ? kExitOk : kExitTolerance;
  }
  if (*reproduce) {
    require_format(rep_format, {"text", "csv", "json"});
    const auto rows = golden_rows(common.workers);
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const GoldenRow& r) { return r.pass(); });
    emit(common, rep_format == "text" ? format_golden(rows) : render(golden_table(rows), rep_format));
    return ok ? kExitOk : kExitTolerance;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
