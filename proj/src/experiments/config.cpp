// Copyright 2026 The nrq Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "nrq/constants.hpp"
#include "nrq/experiments.hpp"

namespace nrq::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double plain_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + whole + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + whole + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>) {
      out += format_number(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace

double parse_number(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.empty()) throw ConfigError("empty number");
  const auto p = s.find("pi");
  if (p == std::string::npos) {
    const double v = plain_number(s, text);
    if (!std::isfinite(v)) throw ConfigError("number is not finite: '" + text + "'");
    return v;
  }
  std::string coef = s.substr(0, p);
  const std::string rest = s.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (!coef.empty() && coef != "+") {
    c = plain_number(coef, text);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw ConfigError("not a number: '" + text + "'");
    den = plain_number(rest.substr(1), text);
    if (den == 0.0) throw ConfigError("division by zero in '" + text + "'");
  }
  return c * kPi / den;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (c.has(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    c.values_[key] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

const std::string* Config::lookup(const std::string& key) {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

double Config::number(const std::string& key, double fallback) {
  const std::string* s = lookup(key);
  double v = fallback;
  if (s) {
    try {
      v = parse_number(*s);
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
  resolved_[key] = format_number(v);
  return v;
}

int Config::integer(const std::string& key, int fallback) {
  const std::string* s = lookup(key);
  int v = fallback;
  if (s) {
    std::size_t used = 0;
    try {
      v = std::stoi(*s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s->size()) throw ConfigError(key + ": not an integer: '" + *s + "'");
  }
  resolved_[key] = std::to_string(v);
  return v;
}

bool Config::flag(const std::string& key, bool fallback) {
  const std::string* s = lookup(key);
  bool v = fallback;
  if (s) {
    if (*s == "true" || *s == "1" || *s == "yes") {
      v = true;
    } else if (*s == "false" || *s == "0" || *s == "no") {
      v = false;
    } else {
      throw ConfigError(key + ": not a boolean: '" + *s + "'");
    }
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::string Config::text(const std::string& key, const std::string& fallback) {
  const std::string* s = lookup(key);
  const std::string v = s ? *s : fallback;
  resolved_[key] = v;
  return v;
}

std::vector<double> Config::numbers(const std::string& key, const std::vector<double>& fallback) {
  const std::string* s = lookup(key);
  std::vector<double> v = fallback;
  if (s) {
    v.clear();
    for (const auto& item : split_list(*s)) {
      try {
        v.push_back(parse_number(item));
      } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
      }
    }
  }
  if (v.empty()) throw ConfigError(key + ": list is empty");
  resolved_[key] = join(v);
  return v;
}

std::vector<int> Config::integers(const std::string& key, const std::vector<int>& fallback) {
  const std::string* s = lookup(key);
  std::vector<int> v = fallback;
  if (s) {
    v.clear();
    for (const auto& item : split_list(*s)) {
      std::size_t used = 0;
      int x = 0;
      try {
        x = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw ConfigError(key + ": not an integer: '" + item + "'");
      v.push_back(x);
    }
  }
  if (v.empty()) throw ConfigError(key + ": list is empty");
  resolved_[key] = join(v);
  return v;
}

void Config::reject_unused() const {
  std::string unknown;
  for (const auto& [k, v] : values_) {
    if (!resolved_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  }
  if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add_row: wrong number of cells");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace nrq::experiments
