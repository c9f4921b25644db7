#include "wavelab/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wavelab/errors.hpp"
#include "wavelab/scaling.hpp"

namespace wavelab::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Location {
  const std::string* origin;
  int line;
  int column;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(*origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
  }
};

double to_number(const std::string& v, const Location& at) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) at.fail("expected a decimal number, got '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& v, const Location& at) {
  std::size_t out = 0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) at.fail("expected a nonnegative integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, const Location& at) {
  if (v == "true") return true;
  if (v == "false") return false;
  at.fail("expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, const Location& at) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_number(trim(item), at));
  return out;
}

std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out;
}

const char* flag(bool b) { return b ? "true" : "false"; }

struct Key {
  std::function<void(RunConfig&, const std::string&, const Location&)> set;
  std::function<std::string(const RunConfig&)> get;
};

using Table = std::vector<std::pair<std::string, std::vector<std::pair<std::string, Key>>>>;

#define NUM(expr)                                                                          \
  Key {                                                                                    \
    [](RunConfig& c, const std::string& v, const Location& at) { c.expr = to_number(v, at); }, \
        [](const RunConfig& c) { return num(c.expr); }                                     \
  }
#define COUNT(expr)                                                                       \
  Key {                                                                                   \
    [](RunConfig& c, const std::string& v, const Location& at) {                          \
      c.expr = static_cast<decltype(c.expr)>(to_count(v, at));                            \
    },                                                                                    \
        [](const RunConfig& c) { return std::to_string(c.expr); }                         \
  }
#define FLAG(expr)                                                                       \
  Key {                                                                                  \
    [](RunConfig& c, const std::string& v, const Location& at) { c.expr = to_bool(v, at); }, \
        [](const RunConfig& c) { return std::string(flag(c.expr)); }                     \
  }
#define LIST(expr)                                                                       \
  Key {                                                                                  \
    [](RunConfig& c, const std::string& v, const Location& at) { c.expr = to_list(v, at); }, \
        [](const RunConfig& c) { return list(c.expr); }                                  \
  }

const Table& keys() {
  static const Table table = {
      {"symbol",
       {{"name",
         {[](RunConfig& c, const std::string& v, const Location& at) {
            if (v != "whitham" && v != "fractional" && v != "log" && v != "table")
              at.fail("unknown symbol '" + v + "' (whitham, fractional, log, table)");
            c.solve.symbol = v;
          },
          [](const RunConfig& c) { return c.solve.symbol; }}},
        {"order", NUM(solve.symbol_params.order)},
        {"log_exponent", NUM(solve.symbol_params.log_exponent)},
        {"table",
         {[](RunConfig& c, const std::string& v, const Location&) { c.solve.symbol_params.table = v; },
          [](const RunConfig& c) { return c.solve.symbol_params.table.string(); }}}}},
      {"nonlinearity",
       {{"q", NUM(solve.q)},
        {"gamma", NUM(solve.gamma)},
        {"form",
         {[](RunConfig& c, const std::string& v, const Location& at) {
            if (v == "absolute") c.solve.form = LeadingForm::absolute;
            else if (v == "signed") c.solve.form = LeadingForm::signed_power;
            else at.fail("form must be absolute or signed");
          },
          [](const RunConfig& c) {
            return std::string(c.solve.form == LeadingForm::absolute ? "absolute" : "signed");
          }}},
        {"cutoff", FLAG(solve.cutoff.enabled)},
        {"theta", NUM(solve.cutoff.theta)},
        {"cutoff_scale", NUM(solve.cutoff.scale)}}},
      {"grid", {{"period", NUM(solve.period)}, {"points", COUNT(solve.points)}, {"seed_period", NUM(solve.seed_period)}}},
      {"solver",
       {{"mu", NUM(solve.mu)},
        {"sobolev_index", NUM(solve.sobolev_index)},
        {"penalizer", FLAG(solve.penalizer)},
        {"penalizer_radius",
         {[](RunConfig& c, const std::string& v, const Location& at) {
            if (v == "auto") c.solve.penalizer_radius.reset();
            else c.solve.penalizer_radius = to_number(v, at);
          },
          [](const RunConfig& c) {
            return c.solve.penalizer_radius ? num(*c.solve.penalizer_radius) : std::string("auto");
          }}},
        {"pg_max_iter", COUNT(solve.pg.max_iter)},
        {"pg_tol", NUM(solve.pg.tol)},
        {"newton_max_iter", COUNT(solve.newton.max_iter)},
        {"newton_tol", NUM(solve.newton.tol)},
        {"newton_step_tol", NUM(solve.newton.step_tol)},
        {"linear_tol", NUM(solve.newton.linear_tol)},
        {"continuation", FLAG(solve.continuation.enabled)}}},
      {"sweep",
       {{"mu_max", NUM(sweep.mu_max)},
        {"mu_min", NUM(sweep.mu_min)},
        {"mu_ladder", LIST(sweep.mu_ladder)},
        {"periods", LIST(sweep.periods)},
        {"tol_speed", NUM(sweep.tol_speed)},
        {"tol_sup", NUM(sweep.tol_sup)},
        {"tol_hs", NUM(sweep.tol_hs)}}},
      {"output",
       {{"dir",
         {[](RunConfig& c, const std::string& v, const Location&) { c.output.dir = v; },
          [](const RunConfig& c) { return c.output.dir.string(); }}},
        {"prefix",
         {[](RunConfig& c, const std::string& v, const Location& at) {
            if (v.empty() || v.find_first_of("/\\") != std::string::npos) at.fail("prefix must be a plain file stem");
            c.output.prefix = v;
          },
          [](const RunConfig& c) { return c.output.prefix; }}},
        {"plots", FLAG(output.plots)}}},
  };
  return table;
}

#undef NUM
#undef COUNT
#undef FLAG
#undef LIST

}  // namespace

std::vector<double> SweepSettings::ladder() const {
  if (!mu_ladder.empty()) return mu_ladder;
  return half_decade_ladder(mu_max, mu_min);
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  const auto& table = keys();
  const std::vector<std::pair<std::string, Key>>* section = nullptr;
  std::string section_name;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const Location at{&origin, lineno, static_cast<int>(first) + 1};

    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos || !trim(line.substr(close + 1)).empty()) at.fail("malformed section header");
      section_name = trim(line.substr(first + 1, close - first - 1));
      section = nullptr;
      for (const auto& [name, entries] : table)
        if (name == section_name) section = &entries;
      if (!section) at.fail("unknown section [" + section_name + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected key = value");
    if (!section) at.fail("key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Key* handler = nullptr;
    for (const auto& [name, k] : *section)
      if (name == key) handler = &k;
    if (!handler) at.fail("unknown key '" + key + "' in [" + section_name + "]");
    if (!seen.insert(section_name + "." + key).second) at.fail("duplicate key '" + key + "'");
    const auto vcol = line.find_first_not_of(" \t", eq + 1);
    const Location vat{&origin, lineno, static_cast<int>(vcol == std::string::npos ? eq + 1 : vcol) + 1};
    handler->set(cfg, value, vat);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse(ss.str(), path.string());
  auto& table = cfg.solve.symbol_params.table;
  if (!table.empty() && table.is_relative()) table = path.parent_path() / table;
  return cfg;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [name, entries] : keys()) {
    out += "[" + name + "]\n";
    for (const auto& [key, k] : entries) out += key + " = " + k.get(*this) + "\n";
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string RunConfig::hash() const {
  // Where results land does not change what they are.
  std::string text = canonical();
  text.erase(text.find("[output]"));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

}  // namespace wavelab::cli
