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
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqent/errors.hpp"
#include "seqent/quantum.hpp"
#include "seqent/scenario.hpp"

namespace seqent {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Strict decimal parse: the whole token must be consumed and finite.
inline double parse_real(const std::string& token, const std::string& what) {
  const std::string s = detail::trim(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + token + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(what + ": '" + token + "' is not a finite number");
  return v;
}

/// Radians, or exactly one of the tokens pi/4, pi/6, pi/12.
inline double parse_angle(const std::string& token) {
  const std::string s = detail::trim(token);
  if (s == "pi/4") return std::numbers::pi / 4;
  if (s == "pi/6") return std::numbers::pi / 6;
  if (s == "pi/12") return std::numbers::pi / 12;
  return parse_real(s, "angle");
}

inline StrategyKind parse_strategy(const std::string& s) {
  if (s == "weak") return StrategyKind::Weak;
  if (s == "ppm") return StrategyKind::PPM;
  throw ConfigError("unknown strategy '" + s + "' (expected weak or ppm)");
}

inline ScenarioTag parse_scenario(const std::string& s) {
  if (s == "unilateral") return ScenarioTag::Unilateral;
  if (s == "bilateral") return ScenarioTag::Bilateral;
  if (s == "general") return ScenarioTag::General;
  throw ConfigError("unknown scenario '" + s + "' (expected unilateral, bilateral or general)");
}

/*******************************************************************************
 *
 * Scenario files
 *
 * Flat key = value lines; '#' starts a comment. Global keys: scenario,
 * theta. Each observer is a section named by side and position, e.g. [A1],
 * with keys kind (weak, ppm or final), gain_z and gain_x. Intermediate
 * observers need both gains; final observers take none. Every side's chain
 * runs A1, A2, ... without gaps and ends in a final observer.
 *
 ******************************************************************************/

struct ScenarioFile {
  ScenarioConfig config;
  std::optional<StrategyKind> strategy;  // set when all intermediates share one kind
  std::optional<Params> params;          // set for unilateral and bilateral files
};

namespace detail {

struct ObserverSection {
  std::map<std::string, std::string> keys;
  int line = 0;
};

inline ObserverSpec build_observer(Side side, int index, const ObserverSection& sec) {
  const auto where = std::string("[") + to_string(side) + std::to_string(index) + "]";
  const auto kind_it = sec.keys.find("kind");
  if (kind_it == sec.keys.end()) throw ConfigError(where + ": missing key 'kind'");
  if (kind_it->second == "final") {
    if (sec.keys.size() != 1) throw ConfigError(where + ": a final observer takes no gains");
    return ObserverSpec::final_observer(side, index);
  }
  const StrategyKind kind = parse_strategy(kind_it->second);
  for (const char* k : {"gain_z", "gain_x"})
    if (!sec.keys.count(k)) throw ConfigError(where + ": missing key '" + k + "'");
  const double gz = parse_real(sec.keys.at("gain_z"), where + " gain_z");
  const double gx = parse_real(sec.keys.at("gain_x"), where + " gain_x");
  return ObserverSpec::intermediate(side, index, kind, gz, gx);
}

}  // namespace detail

inline ScenarioFile parse_scenario_file(std::istream& in) {
  std::map<std::string, std::string> globals;
  std::map<std::pair<Side, int>, detail::ObserverSection> sections;
  detail::ObserverSection* current = nullptr;
  std::string raw;
  int line_no = 0;
  const auto fail = [&](const std::string& msg) {
    throw ConfigError("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 4) fail("malformed section header '" + line + "'");
      const std::string name = line.substr(1, line.size() - 2);
      if (name[0] != 'A' && name[0] != 'B') fail("unknown section '" + name + "'");
      const std::string digits = name.substr(1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits[0] == '0')
        fail("unknown section '" + name + "'");
      const std::pair<Side, int> key{name[0] == 'A' ? Side::A : Side::B, std::stoi(digits)};
      if (sections.count(key)) fail("duplicate section '" + name + "'");
      current = &sections[key];
      current->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail("empty key or value");
    if (current) {
      if (key != "kind" && key != "gain_z" && key != "gain_x") fail("unknown observer key '" + key + "'");
      if (!current->keys.emplace(key, value).second) fail("duplicate key '" + key + "'");
    } else {
      if (key != "scenario" && key != "theta") fail("unknown key '" + key + "'");
      if (!globals.emplace(key, value).second) fail("duplicate key '" + key + "'");
    }
  }

  for (const char* k : {"scenario", "theta"})
    if (!globals.count(k)) throw ConfigError(std::string("missing global key '") + k + "'");
  const ScenarioTag tag = parse_scenario(globals["scenario"]);
  const double theta = parse_angle(globals["theta"]);

  std::vector<ObserverSpec> chains[2];
  for (const auto& [key, sec] : sections) {
    auto& chain = chains[key.first == Side::A ? 0 : 1];
    if (key.second != static_cast<int>(chain.size()) + 1)
      throw ConfigError(std::string("observer chain for side ") + to_string(key.first) + " has a gap before position " +
                        std::to_string(key.second));
    chain.push_back(detail::build_observer(key.first, key.second, sec));
  }

  ScenarioFile out{ScenarioConfig(theta, chains[0], chains[1], tag), std::nullopt, std::nullopt};
  std::optional<StrategyKind> shared;
  bool mixed = false;
  for (const auto& chain : chains)
    for (const auto& o : chain)
      if (o.role == ObserverRole::Intermediate) {
        if (shared && *shared != o.settings[0].kind) mixed = true;
        shared = o.settings[0].kind;
      }
  if (!mixed) out.strategy = shared;
  if (tag != ScenarioTag::General) {
    Params p;
    p.theta = theta;
    const auto& a1 = chains[0][0];
    p.g[0] = a1.settings[0].gain;
    p.g[1] = a1.settings[1].gain;
    if (tag == ScenarioTag::Bilateral) {
      const auto& b1 = chains[1][0];
      p.g[2] = b1.settings[0].gain;
      p.g[3] = b1.settings[1].gain;
    }
    out.params = p;
  }
  return out;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  return parse_scenario_file(in);
}

}  // namespace seqent
