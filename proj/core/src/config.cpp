#include "gsol/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gsol/errors.hpp"

namespace gsol {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("config line " + std::to_string(line) + ": " + msg);
}

std::string unquote(std::string_view v, int line) {
  if (!v.empty() && v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

double to_double(std::string_view v, int line) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) fail(line, "expected a number, got '" + std::string(v) + "'");
  return x;
}

long long to_int(std::string_view v, int line) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) fail(line, "expected an integer, got '" + std::string(v) + "'");
  return x;
}

double positive(std::string_view v, int line) {
  const double x = to_double(v, line);
  if (!(x > 0.0)) fail(line, "value must be positive");
  return x;
}

int count(std::string_view v, int line, int min) {
  const long long x = to_int(v, line);
  if (x < min || x > 1000000) fail(line, "count out of range");
  return static_cast<int>(x);
}

Fraction fraction(std::string_view v, int line) {
  try {
    return Fraction::parse(v);
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  bool have_n = false;
  RodSpec* rod = nullptr;
  using Setter = std::function<void(std::string_view, int)>;
  const std::map<std::string, Setter, std::less<>> top = {
      {"n",
       [&](std::string_view v, int l) {
         cfg.n = static_cast<std::size_t>(count(v, l, 1));
         have_n = true;
       }},
      {"period", [&](std::string_view v, int l) { cfg.period = positive(v, l); }},
      {"truncation", [&](std::string_view v, int l) { cfg.truncation = count(v, l, 1); }},
      {"tolerance.sum", [&](std::string_view v, int l) { cfg.tol.sum = positive(v, l); }},
      {"tolerance.harmonic", [&](std::string_view v, int l) { cfg.tol.harmonic = positive(v, l); }},
      {"tolerance.quadrature", [&](std::string_view v, int l) { cfg.tol.quadrature = positive(v, l); }},
      {"tolerance.integrability", [&](std::string_view v, int l) { cfg.tol.integrability = positive(v, l); }},
      {"tolerance.defect", [&](std::string_view v, int l) { cfg.tol.defect = positive(v, l); }},
      {"tolerance.ricci", [&](std::string_view v, int l) { cfg.tol.ricci = positive(v, l); }},
      {"tolerance.rank", [&](std::string_view v, int l) { cfg.tol.rank = positive(v, l); }},
      {"tolerance.flux", [&](std::string_view v, int l) { cfg.tol.flux = positive(v, l); }},
      {"tolerance.lapse", [&](std::string_view v, int l) { cfg.tol.lapse = positive(v, l); }},
      {"far_field.min", [&](std::string_view v, int l) { cfg.far_min = positive(v, l); }},
      {"far_field.max", [&](std::string_view v, int l) { cfg.far_max = positive(v, l); }},
      {"far_field.samples", [&](std::string_view v, int l) { cfg.far_samples = count(v, l, 2); }},
      {"grid.rho_min", [&](std::string_view v, int l) { cfg.grid.rho_min = positive(v, l); }},
      {"grid.rho_max", [&](std::string_view v, int l) { cfg.grid.rho_max = positive(v, l); }},
      {"grid.rho_count", [&](std::string_view v, int l) { cfg.grid.rho_count = count(v, l, 1); }},
      {"grid.z_min", [&](std::string_view v, int l) { cfg.grid.z_min = to_double(v, l); }},
      {"grid.z_max", [&](std::string_view v, int l) { cfg.grid.z_max = to_double(v, l); }},
      {"grid.z_count", [&](std::string_view v, int l) { cfg.grid.z_count = count(v, l, 1); }},
      {"output.sample", [&](std::string_view v, int l) { cfg.sample_path = unquote(v, l); }},
      {"output.report", [&](std::string_view v, int l) { cfg.report_path = unquote(v, l); }},
  };
  const std::map<std::string, Setter, std::less<>> rod_keys = {
      {"family", [&](std::string_view v, int l) { rod->family = static_cast<std::size_t>(count(v, l, 1)); }},
      {"fraction", [&](std::string_view v, int l) { rod->fraction = fraction(v, l); }},
      {"start", [&](std::string_view v, int l) { rod->start = fraction(v, l); }},
      {"end", [&](std::string_view v, int l) { rod->end = fraction(v, l); }},
      {"kind",
       [&](std::string_view v, int l) {
         const std::string k = unquote(v, l);
         if (k == "axis") rod->kind = RodKind::axis;
         else if (k == "horizon") rod->kind = RodKind::horizon;
         else fail(l, "rod kind must be 'axis' or 'horizon'");
       }},
      {"structure",
       [&](std::string_view v, int l) {
         std::istringstream in(unquote(v, l));
         std::vector<std::int64_t> e;
         std::string tok;
         while (in >> tok) e.push_back(to_int(tok, l));
         if (e.empty()) fail(l, "empty rod structure");
         rod->structure = std::move(e);
       }},
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[rod]") fail(line_no, "unknown section " + std::string(line));
      cfg.rods.emplace_back();
      rod = &cfg.rods.back();
      rod->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");
    const auto& table = rod ? rod_keys : top;
    const auto it = table.find(key);
    if (it == table.end()) {
      fail(line_no, "unknown key '" + std::string(key) + "'" + (rod ? " in [rod] section" : ""));
    }
    it->second(value, line_no);
  }
  if (!have_n) throw InputError("config: missing required key 'n'");
  if (cfg.rods.empty()) throw InputError("config: no [rod] sections");
  if (cfg.far_max <= cfg.far_min) throw InputError("config: far_field.max must exceed far_field.min");
  if (cfg.grid.rho_max < cfg.grid.rho_min) throw InputError("config: grid.rho_max below grid.rho_min");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RodDiagram RunConfig::diagram() const {
  RodDiagram d;
  d.n = n;
  d.period = period;
  bool explicit_ends = false, fractions = false;
  for (const auto& r : rods) {
    if (r.start || r.end) explicit_ends = true;
    if (r.fraction) fractions = true;
  }
  if (explicit_ends && fractions) throw InputError("config: rods mix 'fraction' with 'start'/'end'");
  Fraction at(0);
  for (const auto& spec : rods) {
    const std::string where = "config line " + std::to_string(spec.line) + ": ";
    Rod r;
    r.kind = spec.kind;
    if (explicit_ends) {
      if (!spec.start || !spec.end) throw InputError(where + "rod needs both 'start' and 'end'");
      r.start = *spec.start;
      r.end = *spec.end;
    } else {
      if (!spec.fraction) throw InputError(where + "rod needs 'fraction' (or 'start' and 'end')");
      r.start = at;
      at += *spec.fraction;
      r.end = at;
    }
    if (spec.structure) {
      r.structure = RodStructure(*spec.structure);
    } else if (spec.kind == RodKind::horizon) {
      r.structure = RodStructure::zero(n);
    } else {
      if (!spec.family) throw InputError(where + "axis rod needs 'family' or 'structure'");
      if (*spec.family > n) throw InputError(where + "family exceeds n");
      r.structure = RodStructure::basis(n, *spec.family - 1);
    }
    d.rods.push_back(std::move(r));
  }
  return d;
}

}  // namespace gsol
