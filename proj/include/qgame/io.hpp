// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Game-definition files (JSON) and sweep records (CSV), both round-trip
// safe. CSV fields are quoted per RFC 4180 only when they need to be.

#ifndef QGAME_IO_HPP_
#define QGAME_IO_HPP_

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgame/errors.hpp"
#include "qgame/game.hpp"
#include "qgame/sweep.hpp"

namespace qgame {

// JSON schema:
//   {"players": 2, "gamma": 1.5707963,
//    "payoffs": {"CC": [3,3], "CD": [0,5], "DC": [5,0], "DD": [1,1]}}
// "gamma" is optional (defaults to 0); "payoffs" must list every outcome
// string over {C,D} with one number per player.
inline GameDefinition parse_game_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in " + origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  if (!doc.contains("players") || !doc["players"].is_number_integer())
    throw ParseError(origin + ": \"players\" must be an integer");
  const int players = doc["players"].get<int>();
  if (players != 2 && players != 3) throw ParseError(origin + ": \"players\" must be 2 or 3");

  double gamma = 0.0;
  if (doc.contains("gamma")) {
    if (!doc["gamma"].is_number()) throw ParseError(origin + ": \"gamma\" must be a number");
    gamma = doc["gamma"].get<double>();
    if (!(gamma >= 0.0 && gamma <= kPi / 2))
      throw ParseError(origin + ": \"gamma\" must lie in [0, pi/2]");
  }

  if (!doc.contains("payoffs") || !doc["payoffs"].is_object())
    throw ParseError(origin + ": \"payoffs\" must be an object");
  const nlohmann::json& table = doc["payoffs"];
  std::map<std::string, std::vector<double>> rows;
  for (int b = 0; b < (1 << players); ++b) {
    const std::string key = outcome_name(b, players);
    if (!table.contains(key)) throw ParseError(origin + ": \"payoffs\" is missing outcome \"" + key + "\"");
    const nlohmann::json& row = table[key];
    if (!row.is_array() || static_cast<int>(row.size()) != players)
      throw ParseError(origin + ": payoff tuple \"" + key + "\" must be an array of " +
                       std::to_string(players) + " numbers");
    std::vector<double> vals;
    for (const auto& x : row) {
      if (!x.is_number())
        throw ParseError(origin + ": payoff tuple \"" + key + "\" must contain only numbers");
      vals.push_back(x.get<double>());
    }
    rows[key] = vals;
  }
  for (const auto& [key, unused] : table.items()) {
    (void)unused;
    if (rows.find(key) == rows.end())
      throw ParseError(origin + ": \"payoffs\" has unknown outcome \"" + key + "\"");
  }
  return GameDefinition(players, gamma, rows);
}

inline GameDefinition parse_game_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_json(buf.str(), path);
}

// Accepts the named defaults "pd2" / "pd3" or a file path.
inline GameDefinition load_game(const std::string& spec) {
  if (spec == "pd2") return GameDefinition::pd2();
  if (spec == "pd3") return GameDefinition::pd3();
  return parse_game_config(spec);
}

namespace detail {

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string format_fixed12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12f", x);
  return buf;
}

inline std::string format_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted)
    throw ParseError("csv line " + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(cur);
  return fields;
}

}  // namespace detail

// Header: gamma,entropy,regime,equilibrium,payoff_1,...,payoff_n,a,b.
// gamma and entropy use 12 fixed decimals, payoffs and family parameters 12
// significant digits; none-rows leave payoff and family cells empty.
inline void emit_csv(const std::vector<GammaSweepRecord>& records, std::ostream& os) {
  if (records.empty()) throw std::domain_error("cannot emit an empty sweep record set");
  int n = 0;
  for (const GammaSweepRecord& r : records) n = std::max(n, r.players);
  if (n <= 0) throw std::domain_error("sweep records carry no player count");

  os << "gamma,entropy,regime,equilibrium";
  for (int p = 1; p <= n; ++p) os << ",payoff_" << p;
  os << ",a,b\n";
  for (const GammaSweepRecord& r : records) {
    os << detail::format_fixed12(r.gamma) << ',' << detail::format_fixed12(r.entropy) << ','
       << detail::csv_quote(r.regime) << ',' << detail::csv_quote(r.equilibrium);
    for (int p = 0; p < n; ++p) {
      os << ',';
      if (p < static_cast<int>(r.payoffs.size()))
        os << detail::format_sig12(r.payoffs[static_cast<size_t>(p)]);
    }
    os << ',';
    if (r.has_family) os << detail::format_sig12(r.a);
    os << ',';
    if (r.has_family) os << detail::format_sig12(r.b);
    os << '\n';
  }
}

inline void emit_csv(const std::vector<GammaSweepRecord>& records, const std::string& path) {
  if (records.empty()) throw std::domain_error("cannot emit an empty sweep record set");
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw ParseError("cannot open output file: " + path);
  emit_csv(records, out);
  if (!out) throw ParseError("failed writing output file: " + path);
}

inline std::vector<GammaSweepRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> head = detail::split_csv_line(line, 1);
  if (head.size() < 7 || head[0] != "gamma" || head[1] != "entropy" || head[2] != "regime" ||
      head[3] != "equilibrium" || head[head.size() - 2] != "a" || head.back() != "b")
    throw ParseError("csv: unexpected header layout");
  const int n = static_cast<int>(head.size()) - 6;

  std::vector<GammaSweepRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line, line_no);
    if (f.size() != head.size())
      throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(head.size()) + " fields, got " + std::to_string(f.size()));
    GammaSweepRecord r;
    try {
      r.gamma = std::stod(f[0]);
      r.entropy = std::stod(f[1]);
      r.regime = f[2];
      r.equilibrium = f[3];
      r.players = n;
      for (int p = 0; p < n; ++p)
        if (!f[static_cast<size_t>(4 + p)].empty())
          r.payoffs.push_back(std::stod(f[static_cast<size_t>(4 + p)]));
      const std::string& fa = f[f.size() - 2];
      const std::string& fb = f.back();
      if (!fa.empty() && !fb.empty()) {
        r.has_family = true;
        r.a = std::stod(fa);
        r.b = std::stod(fb);
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("csv line " + std::to_string(line_no) + ": malformed number");
    }
    records.push_back(std::move(r));
  }
  return records;
}

inline std::vector<GammaSweepRecord> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open csv file: " + path);
  return parse_csv(in);
}

}  // namespace qgame

#endif  // QGAME_IO_HPP_
