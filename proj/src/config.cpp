// Copyright 2026 The gmud Authors.
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

#include "gmud/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gmud {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_list(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ", ";
    out += fmt(v);
  }
  return out;
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::single_bs:
      return "single_bs";
    case ScenarioKind::two_bs:
      return "two_bs";
    case ScenarioKind::custom:
      return "custom";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view source) : source_(source) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find('\n', start), text.size());
      ++line_no;
      const std::string_view line = trim(text.substr(start, end - start));
      start = end + 1;
      if (line.empty() || line.front() == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(source_, line_no, std::string(line),
                          "expected 'key = value'");
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) {
        throw ConfigError(source_, line_no, "", "empty key");
      }
      if (value.empty()) {
        throw ConfigError(source_, line_no, key, "empty value");
      }
      auto [it, inserted] = entries_.try_emplace(key, Entry{value, line_no});
      if (!inserted) {
        throw ConfigError(source_, line_no, key,
                          "duplicate key (first set on line " +
                              std::to_string(it->second.line) + ")");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto it = entries_.find(key);
    throw ConfigError(source_, it == entries_.end() ? 0 : it->second.line, key,
                      msg);
  }

  bool has(const std::string& key) const { return entries_.contains(key); }

  std::optional<std::string> text(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  double to_number(const std::string& key, std::string_view s) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "'" + std::string(s) + "' is not a finite number");
    }
    return v;
  }

  std::optional<double> number(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    return to_number(key, *t);
  }

  std::optional<std::uint64_t> unsigned_int(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
    if (ec != std::errc{} || ptr != t->data() + t->size()) {
      fail(key, "'" + *t + "' is not a non-negative integer");
    }
    return v;
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    std::vector<double> out;
    for (std::string_view item : split(*t, ',')) {
      out.push_back(to_number(key, item));
    }
    return out;
  }

  std::optional<bool> boolean(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    if (*t == "true" || *t == "1") return true;
    if (*t == "false" || *t == "0") return false;
    fail(key, "expected true or false, got '" + *t + "'");
  }

  /// Keys "<prefix><suffix>" with their suffixes.
  std::vector<std::string> keys_with_prefix(std::string_view prefix) const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_) {
      if (key.starts_with(prefix)) out.push_back(key);
    }
    return out;
  }

  void reject_unused() const {
    const std::pair<const std::string, Entry>* first = nullptr;
    for (const auto& kv : entries_) {
      if (!kv.second.used && (!first || kv.second.line < first->second.line)) {
        first = &kv;
      }
    }
    if (first) fail(first->first, "unknown or inapplicable key");
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

void parse_custom(Parser& p, Config& c) {
  for (const std::string& key : p.keys_with_prefix("station.")) {
    const std::string id_text = key.substr(8);
    const double id = p.to_number(key, id_text);
    if (id != std::floor(id)) p.fail(key, "station id must be an integer");
    const std::vector<double> xy = *p.numbers(key);
    if (xy.size() != 2) p.fail(key, "expected 'x, y'");
    c.custom_stations.push_back(
        Station{static_cast<int>(id), Position{xy[0], xy[1]}});
  }
  std::vector<std::pair<double, MobileUser>> users;
  for (const std::string& key : p.keys_with_prefix("user.")) {
    const double order = p.to_number(key, key.substr(5));
    const std::vector<double> v = *p.numbers(key);
    if (v.size() != 3 || v[2] != std::floor(v[2])) {
      p.fail(key, "expected 'x, y, station_id'");
    }
    users.emplace_back(order,
                       MobileUser{static_cast<int>(v[2]), Position{v[0], v[1]}});
  }
  std::stable_sort(users.begin(), users.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [order, user] : users) c.custom_users.push_back(user);
  if (c.custom_stations.empty()) p.fail("scenario", "custom scenario needs station.<id> entries");
}

void parse_sweep(Parser& p, Config& c) {
  const auto variable = p.text("sweep.variable");
  const bool has_values = p.has("sweep.values");
  const bool has_range =
      p.has("sweep.start") || p.has("sweep.stop") || p.has("sweep.step");
  if (!variable) {
    if (has_values || has_range) {
      p.fail(has_values ? "sweep.values" : "sweep.start",
             "sweep.variable is required");
    }
    return;
  }
  SweepSpec spec;
  try {
    spec.variable = parse_sweep_variable(*variable);
  } catch (const std::invalid_argument& e) {
    p.fail("sweep.variable", e.what());
  }
  if (has_values && has_range) {
    p.fail("sweep.values", "give either sweep.values or sweep.start/stop/step");
  }
  std::string key = "sweep.values";
  if (has_values) {
    spec.values = *p.numbers(key);
  } else if (has_range) {
    key = "sweep.start";
    const auto start = p.number("sweep.start");
    const auto stop = p.number("sweep.stop");
    const auto step = p.number("sweep.step");
    if (!start || !stop || !step) {
      p.fail(key, "sweep.start, sweep.stop and sweep.step must all be set");
    }
    try {
      spec = SweepSpec::range(spec.variable, *start, *stop, *step);
    } catch (const std::invalid_argument& e) {
      p.fail("sweep.step", e.what());
    }
  } else {
    p.fail("sweep.variable", "sweep.values or sweep.start/stop/step required");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    p.fail(key, e.what());
  }
  if (spec.variable != SweepVariable::snr_db) {
    for (double v : spec.values) {
      if (v < 0.0) p.fail(key, std::string(to_string(spec.variable)) + " values must be >= 0");
    }
  }
  c.sweep = std::move(spec);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line,
                         const std::string& key, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                         (key.empty() ? "" : key + ": ") + message),
      key_(key),
      line_(line) {}

Config parse_config(std::string_view text, std::string_view source) {
  Parser p(text, source);
  Config c;

  if (auto s = p.text("scenario")) {
    if (*s == "single_bs") {
      c.scenario = ScenarioKind::single_bs;
    } else if (*s == "two_bs") {
      c.scenario = ScenarioKind::two_bs;
    } else if (*s == "custom") {
      c.scenario = ScenarioKind::custom;
    } else {
      p.fail("scenario", "expected single_bs, two_bs or custom, got '" + *s + "'");
    }
  }
  if (auto v = p.unsigned_int("seed")) c.seed = *v;
  if (auto v = p.unsigned_int("mc_runs")) {
    if (*v == 0) p.fail("mc_runs", "mc_runs must be positive");
    c.mc_runs = static_cast<std::size_t>(*v);
  }

  if (auto v = p.number("system.rho")) c.rho = *v;
  if (!(c.rho >= 0.0 && c.rho < 1.0)) p.fail("system.rho", "rho must be in [0,1)");
  if (auto v = p.number("system.snr_db")) c.snr_db = *v;

  if (auto v = p.number("fading.k_db")) c.fading.k_db = *v;
  if (auto v = p.number("fading.mu")) {
    if (*v < 0.0) p.fail("fading.mu", "mu must be >= 0");
    c.fading.mu = *v;
  }
  if (auto v = p.number("fading.sigma_s_db")) {
    if (*v < 0.0) p.fail("fading.sigma_s_db", "sigma_s_db must be >= 0");
    c.fading.sigma_s_db = *v;
  }

  if (c.scenario == ScenarioKind::custom) {
    parse_custom(p, c);
  } else {
    if (auto d = p.numbers("geometry.distances")) {
      for (double x : *d) {
        if (!(x > 0.0)) p.fail("geometry.distances", "distances must be positive");
      }
      if (d->size() > kMaxPlayers) {
        p.fail("geometry.distances",
               "at most " + std::to_string(kMaxPlayers) + " users per station");
      }
      c.distances = std::move(*d);
    }
    if (c.scenario == ScenarioKind::two_bs) {
      if (auto v = p.number("geometry.bs_separation")) {
        if (!(*v > 0.0)) p.fail("geometry.bs_separation", "separation must be positive");
        c.bs_separation = *v;
      }
    }
  }

  parse_sweep(p, c);
  if (auto s = p.text("sweep.structures")) {
    for (std::string_view label : split(*s, ';')) {
      if (label.empty()) p.fail("sweep.structures", "empty structure label");
      c.structure_labels.emplace_back(label);
    }
  }
  if (auto s = p.text("output.path")) c.output_path = *s;
  if (auto v = p.boolean("output.display_offset")) c.display_offset = *v;

  p.reject_unused();

  // Cross-key checks that need the assembled scenario.
  try {
    build_scenario(c);
  } catch (const std::invalid_argument& e) {
    p.fail(c.scenario == ScenarioKind::custom ? "scenario" : "geometry.distances",
           e.what());
  }
  if (!c.structure_labels.empty()) {
    try {
      structure_filter(c);
    } catch (const std::invalid_argument& e) {
      p.fail("sweep.structures", e.what());
    }
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string(), 0, "", "cannot open config file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

Scenario build_scenario(const Config& config) {
  switch (config.scenario) {
    case ScenarioKind::single_bs: {
      SingleBsOptions o;
      if (config.distances) o.distances = *config.distances;
      o.fading = config.fading;
      o.rho = config.rho;
      o.snr_db = config.snr_db;
      o.mc_runs = config.mc_runs;
      o.seed = config.seed;
      return build_single_bs_scenario(o);
    }
    case ScenarioKind::two_bs: {
      TwoBsOptions o;
      if (config.distances) o.distances = *config.distances;
      o.separation = config.bs_separation;
      o.fading = config.fading;
      o.rho = config.rho;
      o.snr_db = config.snr_db;
      o.mc_runs = config.mc_runs;
      o.seed = config.seed;
      return build_two_bs_scenario(o);
    }
    case ScenarioKind::custom: {
      Scenario sc;
      sc.stations = config.custom_stations;
      sc.users = config.custom_users;
      sc.fading = config.fading;
      sc.system = SystemParams::from_snr_db(config.rho, config.snr_db);
      sc.mc_runs = config.mc_runs;
      sc.seed = config.seed;
      sc.validate();
      return sc;
    }
  }
  throw std::invalid_argument("unknown scenario kind");
}

std::vector<CoalitionStructure> structure_filter(const Config& config) {
  std::vector<CoalitionStructure> out;
  if (config.structure_labels.empty()) return out;
  const Scenario sc = build_scenario(config);
  const std::size_t players = sc.users_of(sc.stations.front().id).size();
  for (const std::string& label : config.structure_labels) {
    out.push_back(parse_structure(label, players));
  }
  return out;
}

std::string Config::echo() const {
  std::ostringstream o;
  o << "scenario = " << to_string(scenario) << '\n'
    << "seed = " << seed << '\n'
    << "mc_runs = " << mc_runs << '\n'
    << "system.rho = " << fmt(rho) << '\n'
    << "system.snr_db = " << fmt(snr_db) << '\n'
    << "fading.k_db = " << fmt(fading.k_db) << '\n'
    << "fading.mu = " << fmt(fading.mu) << '\n'
    << "fading.sigma_s_db = " << fmt(fading.sigma_s_db) << '\n';
  switch (scenario) {
    case ScenarioKind::single_bs:
      o << "geometry.distances = "
        << fmt_list(distances.value_or(SingleBsOptions{}.distances)) << '\n';
      break;
    case ScenarioKind::two_bs:
      o << "geometry.distances = "
        << fmt_list(distances.value_or(TwoBsOptions{}.distances)) << '\n'
        << "geometry.bs_separation = " << fmt(bs_separation) << '\n';
      break;
    case ScenarioKind::custom:
      for (const Station& s : custom_stations) {
        o << "station." << s.id << " = " << fmt(s.position.x) << ", "
          << fmt(s.position.y) << '\n';
      }
      for (std::size_t i = 0; i < custom_users.size(); ++i) {
        const MobileUser& u = custom_users[i];
        o << "user." << (i + 1) << " = " << fmt(u.position.x) << ", "
          << fmt(u.position.y) << ", " << u.home_station << '\n';
      }
      break;
  }
  if (sweep) {
    o << "sweep.variable = " << to_string(sweep->variable) << '\n'
      << "sweep.values = " << fmt_list(sweep->values) << '\n';
  }
  if (!structure_labels.empty()) {
    o << "sweep.structures = ";
    for (std::size_t i = 0; i < structure_labels.size(); ++i) {
      o << (i ? "; " : "") << structure_labels[i];
    }
    o << '\n';
  }
  o << "output.display_offset = " << (display_offset ? "true" : "false") << '\n';
  return o.str();
}

namespace {

// Single-BS layouts: near users at 10 m and 12 m, far user at 40 m. Two-BS
// layouts: two near (10 m, 12 m) and two far (40 m, 45 m) users per cell,
// stations 300 m apart.
constexpr std::string_view kFig1 = R"(# Per-user payoffs of every structure, single BS, SNR 27 dB
scenario = single_bs
system.rho = 0.4
system.snr_db = 27
fading.k_db = 110
fading.mu = 3
fading.sigma_s_db = 0
mc_runs = 1
seed = 1
sweep.variable = snr_db
sweep.values = 27
)";

constexpr std::string_view kFig2 = R"(# Group payoff of every structure versus SNR, single BS
scenario = single_bs
system.rho = 0.4
fading.k_db = 110
fading.mu = 3
fading.sigma_s_db = 0
mc_runs = 1
seed = 1
sweep.variable = snr_db
sweep.start = -40
sweep.stop = 40
sweep.step = 2
)";

constexpr std::string_view kFig3 = R"(# Group payoff versus shadowing standard deviation, single BS
scenario = single_bs
system.rho = 0.4
system.snr_db = 27
fading.k_db = 110
fading.mu = 3
mc_runs = 10
seed = 1
sweep.variable = sigma_s_db
sweep.start = 0
sweep.stop = 12
sweep.step = 1
)";

constexpr std::string_view kFig4 = R"(# Group payoff versus path-loss exponent, single BS
scenario = single_bs
system.rho = 0.4
system.snr_db = -45
fading.k_db = 110
fading.sigma_s_db = 0
mc_runs = 1
seed = 1
sweep.variable = mu
sweep.start = 0.5
sweep.stop = 8
sweep.step = 0.25
)";

constexpr std::string_view kFig5 = R"(# Two base stations, four users each, selected structures versus SNR
scenario = two_bs
system.rho = 0.4
fading.k_db = 110
fading.mu = 3
fading.sigma_s_db = 0
geometry.distances = 10, 12, 40, 45
geometry.bs_separation = 300
mc_runs = 1
seed = 1
sweep.variable = snr_db
sweep.start = -60
sweep.stop = 20
sweep.step = 2
sweep.structures = 1234; 12|3|4; 12|34; 1|2|3|4
output.display_offset = true
)";

}  // namespace

std::vector<std::string_view> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5"};
}

std::string_view preset_text(std::string_view name) {
  if (name == "fig1") return kFig1;
  if (name == "fig2") return kFig2;
  if (name == "fig3") return kFig3;
  if (name == "fig4") return kFig4;
  if (name == "fig5") return kFig5;
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected fig1..fig5)");
}

}  // namespace gmud
