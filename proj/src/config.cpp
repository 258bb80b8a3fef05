#include "cats/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cats/error.hpp"
#include "cats/output.hpp"

namespace cats {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view token,
                            std::string_view why) {
  std::ostringstream os;
  os << "bad value for '" << key << "': '" << token << "' (" << why << ")";
  throw Error(ErrorCode::BadValue, os.str());
}

double number(std::string_view key, std::string_view token) {
  double x = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    bad_value(key, token, "not a finite number");
  }
  return x;
}

double positive(std::string_view key, std::string_view token) {
  const double x = number(key, token);
  if (!(x > 0.0)) bad_value(key, token, "must be positive");
  return x;
}

std::size_t count(std::string_view key, std::string_view token) {
  std::size_t n = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, n);
  if (ec != std::errc() || ptr != end) bad_value(key, token, "not an integer");
  return n;
}

struct ParamSlot {
  const char* key;
  double Params::*member;
};

constexpr ParamSlot kParamSlots[] = {
    {"d1", &Params::d1},       {"d2", &Params::d2},     {"d3", &Params::d3},
    {"d4", &Params::d4},       {"chi1", &Params::chi1}, {"chi2", &Params::chi2},
    {"xi", &Params::xi},       {"mu1", &Params::mu1},   {"mu2", &Params::mu2},
    {"mu3", &Params::mu3},     {"a1", &Params::a1},     {"a2", &Params::a2},
    {"a3", &Params::a3},       {"a4", &Params::a4},     {"a5", &Params::a5},
    {"a6", &Params::a6},       {"alpha", &Params::alpha},
    {"beta", &Params::beta},   {"gamma", &Params::gamma},
};

constexpr const char* kRequiredRunKeys[] = {"ndim", "nodes", "lo", "hi", "t_end"};
constexpr const char* kOptionalKeys[] = {"dt", "record_every", "target", "stop_tol"};

bool is_known(std::string_view key) {
  for (const auto& s : kParamSlots) if (key == s.key) return true;
  for (const char* k : kRequiredRunKeys) if (key == k) return true;
  for (const char* k : kOptionalKeys) if (key == k) return true;
  return false;
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'key = value', got '" << line << "'";
      throw Error(ErrorCode::BadValue, os.str());
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!is_known(key)) {
      throw Error(ErrorCode::UnknownKey, "unknown key '" + std::string(key) + "'");
    }
    if (value.empty()) bad_value(key, value, "empty");
    if (!entries.emplace(std::string(key), std::string(value)).second) {
      bad_value(key, value, "key given twice");
    }
  }

  const auto required = [&](const char* key) -> std::string_view {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw Error(ErrorCode::MissingKey, "missing key '" + std::string(key) + "'");
    }
    return it->second;
  };
  const auto optional = [&](const char* key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  SimConfig cfg;
  for (const auto& slot : kParamSlots) {
    cfg.params.*slot.member = positive(slot.key, required(slot.key));
  }

  const auto ndim_tok = required("ndim");
  const auto ndim = count("ndim", ndim_tok);
  if (ndim < 1 || ndim > 3) bad_value("ndim", ndim_tok, "must be 1, 2 or 3");
  cfg.grid.ndim = static_cast<int>(ndim);
  const auto nodes_tok = required("nodes");
  cfg.grid.nodes = count("nodes", nodes_tok);
  if (cfg.grid.nodes < 3) bad_value("nodes", nodes_tok, "need at least 3");
  cfg.grid.lo = number("lo", required("lo"));
  const auto hi_tok = required("hi");
  cfg.grid.hi = number("hi", hi_tok);
  if (!(cfg.grid.hi > cfg.grid.lo)) bad_value("hi", hi_tok, "must exceed lo");
  cfg.t_end = positive("t_end", required("t_end"));

  if (const auto* dt = optional("dt"); dt && *dt != "auto") {
    cfg.dt = number("dt", *dt);
    if (cfg.dt < 0.0) bad_value("dt", *dt, "must be >= 0 (0 or auto: stability limit)");
  }
  if (const auto* r = optional("record_every")) {
    cfg.record_every = positive("record_every", *r);
  }
  if (const auto* t = optional("target"); t && *t != "none") {
    cfg.target = parse_equilibrium_kind(*t);
    if (!cfg.target) bad_value("target", *t, "unknown steady state");
  }
  if (const auto* s = optional("stop_tol"); s && *s != "none") {
    cfg.stop_tol = positive("stop_tol", *s);
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open config '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SimConfig& cfg) {
  std::ostringstream os;
  for (const auto& slot : kParamSlots) {
    os << slot.key << " = " << format_double(cfg.params.*slot.member) << '\n';
  }
  os << "ndim = " << cfg.grid.ndim << '\n'
     << "nodes = " << cfg.grid.nodes << '\n'
     << "lo = " << format_double(cfg.grid.lo) << '\n'
     << "hi = " << format_double(cfg.grid.hi) << '\n'
     << "t_end = " << format_double(cfg.t_end) << '\n'
     << "dt = " << (cfg.dt == 0.0 ? std::string("auto") : format_double(cfg.dt)) << '\n'
     << "record_every = " << format_double(cfg.record_every) << '\n'
     << "target = " << (cfg.target ? to_string(*cfg.target) : "none") << '\n'
     << "stop_tol = " << (cfg.stop_tol ? format_double(*cfg.stop_tol) : "none") << '\n';
  return os.str();
}

}  // namespace cats
