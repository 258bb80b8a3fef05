#include "cats/output.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "cats/config.hpp"
#include "cats/error.hpp"
#include "cats/lyapunov.hpp"

namespace cats {

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "unformattable number");
  return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
  double x = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, x);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw Error(ErrorCode::BadValue, "not a number: '" + std::string(token) + "'");
  }
  return x;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_timeseries(const Trajectory& traj) {
  std::string out(kTimeseriesHeader);
  out += '\n';
  for (const auto& s : traj.samples) {
    out += format_double(s.t);
    for (int f = 0; f < 4; ++f) {
      out += ',';
      if (s.distance) out += format_double((*s.distance)[f]);
    }
    out += ',';
    if (s.energy) out += format_double(*s.energy);
    for (double m : s.mass) {
      out += ',';
      out += format_double(m);
    }
    out += ',';
    out += format_double(s.sup_v);
    out += ',';
    out += format_double(s.sup_w);
    out += '\n';
  }
  return out;
}

void write_timeseries(const Trajectory& traj, const std::filesystem::path& path) {
  if (traj.samples.empty()) {
    throw Error(ErrorCode::InvalidArgument, "trajectory has no samples");
  }
  write_text(path, format_timeseries(traj));
}

std::vector<Sample> parse_timeseries(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines.front() != kTimeseriesHeader) {
    throw Error(ErrorCode::BadValue, "time series header mismatch");
  }
  std::vector<Sample> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 11) {
      throw Error(ErrorCode::BadValue, "time series row with " +
                                           std::to_string(cells.size()) + " columns");
    }
    Sample s;
    s.t = parse_double(cells[0]);
    if (!cells[1].empty()) {
      s.distance = std::array<double, 4>{parse_double(cells[1]), parse_double(cells[2]),
                                         parse_double(cells[3]), parse_double(cells[4])};
    }
    if (!cells[5].empty()) s.energy = parse_double(cells[5]);
    s.mass = {parse_double(cells[6]), parse_double(cells[7]), parse_double(cells[8])};
    s.sup_v = parse_double(cells[9]);
    s.sup_w = parse_double(cells[10]);
    out.push_back(s);
  }
  return out;
}

Field Snapshot::to_field(double origin) const {
  Grid g;
  g.ndim = ndim;
  g.h = h;
  for (int a = 0; a < ndim; ++a) {
    g.dims[a] = dims[a];
    g.origin[a] = origin;
  }
  return Field(g, values);
}

Snapshot make_snapshot(const State& state, FieldName name) {
  const Field& f = field(state, name);
  const Grid& g = f.grid();
  Snapshot s;
  s.ndim = g.ndim;
  s.dims.assign(g.dims.begin(), g.dims.begin() + g.ndim);
  s.h = g.h;
  s.t = state.t;
  s.field = to_char(name);
  s.values.assign(f.values().begin(), f.values().end());
  return s;
}

std::string format_snapshot(const Snapshot& snap) {
  std::string out = "CATS1 " + std::to_string(snap.ndim);
  for (auto d : snap.dims) out += ' ' + std::to_string(d);
  out += ' ' + format_double(snap.h) + ' ' + format_double(snap.t) + ' ' + snap.field + '\n';
  const std::size_t row = snap.dims.empty() ? snap.values.size() : snap.dims.back();
  for (std::size_t i = 0; i < snap.values.size(); ++i) {
    out += format_double(snap.values[i]);
    out += (i + 1) % row == 0 ? '\n' : ' ';
  }
  return out;
}

Snapshot parse_snapshot(std::string_view text) {
  const auto nl = text.find('\n');
  const auto head = tokens(text.substr(0, nl));
  if (head.size() < 5 || head[0] != "CATS1") {
    throw Error(ErrorCode::BadValue, "not a CATS1 snapshot");
  }
  Snapshot s;
  s.ndim = std::stoi(std::string(head[1]));
  if (s.ndim < 1 || s.ndim > 3 || head.size() != static_cast<std::size_t>(5 + s.ndim)) {
    throw Error(ErrorCode::BadValue, "malformed CATS1 header");
  }
  std::size_t count = 1;
  for (int a = 0; a < s.ndim; ++a) {
    s.dims.push_back(std::stoul(std::string(head[2 + a])));
    count *= s.dims.back();
  }
  s.h = parse_double(head[2 + s.ndim]);
  s.t = parse_double(head[3 + s.ndim]);
  if (head[4 + s.ndim].size() != 1) throw Error(ErrorCode::BadValue, "bad field name");
  s.field = head[4 + s.ndim][0];
  const auto body = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  for (auto tok : tokens(body)) s.values.push_back(parse_double(tok));
  if (s.values.size() != count) {
    throw Error(ErrorCode::BadValue, "snapshot holds " + std::to_string(s.values.size()) +
                                         " values, header promises " + std::to_string(count));
  }
  return s;
}

void write_snapshot(const State& state, FieldName name, const std::filesystem::path& path) {
  write_text(path, format_snapshot(make_snapshot(state, name)));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  return parse_snapshot(read_text(path));
}

std::string_view tool_version() noexcept { return CATS_VERSION; }

std::string format_manifest(const SimConfig& cfg, const Trajectory& traj,
                            const std::vector<ManifestEntry>& outputs) {
  using nlohmann::ordered_json;
  // Config keys in file order; numeric values as JSON numbers.
  std::istringstream lines(format_config(cfg));
  ordered_json config = ordered_json::object();
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 3);
    const char* first = value.data();
    const char* last = first + value.size();
    long long n = 0;
    double x = 0.0;
    if (key == "ndim" || key == "nodes") {
      std::from_chars(first, last, n);
      config[key] = n;
    } else if (auto [ptr, ec] = std::from_chars(first, last, x);
               ec == std::errc() && ptr == last) {
      config[key] = x;
    } else {
      config[key] = value;
    }
  }
  ordered_json doc;
  doc["tool"] = "cats";
  doc["tool_version"] = std::string(tool_version());
  doc["config"] = config;
  doc["energy"] = traj.energy ? ordered_json(std::string(to_string(*traj.energy))) : ordered_json();
  doc["dt_first"] = traj.dt_first;
  doc["dt_min"] = traj.dt_min;
  doc["dt_max"] = traj.dt_max;
  doc["steps"] = traj.steps;
  doc["final_t"] = traj.final_state.t;
  doc["clamp_count"] = traj.clamp_count;
  doc["node_updates"] = traj.node_updates;
  doc["status"] = std::string(to_string(traj.status));
  if (traj.abort) {
    doc["abort"] = {{"code", std::string(to_string(traj.abort->code))},
                    {"t", traj.abort->t},
                    {"message", traj.abort->message}};
  }
  ordered_json files = ordered_json::array();
  for (const auto& e : outputs) files.push_back({{"path", e.path}, {"kind", e.kind}});
  doc["outputs"] = files;
  return doc.dump(2) + "\n";
}

void write_manifest(const SimConfig& cfg, const Trajectory& traj,
                    const std::vector<ManifestEntry>& outputs,
                    const std::filesystem::path& path) {
  write_text(path, format_manifest(cfg, traj, outputs));
}

std::vector<ManifestEntry> write_run_outputs(const SimConfig& cfg, const Trajectory& traj,
                                             const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create '" + dir.string() + "': " + ec.message());

  std::vector<ManifestEntry> entries;
  write_timeseries(traj, dir / "timeseries.csv");
  entries.push_back({"timeseries.csv", "timeseries"});
  for (auto name : {FieldName::u, FieldName::v, FieldName::w, FieldName::z}) {
    const std::string file = std::string(1, to_char(name)) + ".cats1";
    write_snapshot(traj.final_state, name, dir / file);
    entries.push_back({file, "snapshot"});
  }
  write_manifest(cfg, traj, entries, dir / "manifest.json");
  return entries;
}

}  // namespace cats
