#include "gsol/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "gsol/asymptotics.hpp"
#include "gsol/balance.hpp"
#include "gsol/curvature.hpp"
#include "gsol/report.hpp"

namespace gsol {

namespace {

constexpr std::array<std::pair<Command, const char*>, 9> kCommands = {{
    {Command::validate, "validate"},
    {Command::classify, "classify"},
    {Command::build, "build"},
    {Command::balance, "balance"},
    {Command::verify, "verify"},
    {Command::kasner, "kasner"},
    {Command::holonomy, "holonomy"},
    {Command::wick, "wick"},
    {Command::sample, "sample"},
}};

// Fixed off-axis probe points, in units of L.
constexpr std::array<std::pair<double, double>, 5> kProbes = {{
    {0.3, 0.17}, {0.75, 0.41}, {1.5, 0.2}, {0.45, 0.83}, {1.1, 0.62},
}};

// Runs f(0..count-1) on up to `threads` workers. Results must be written by
// index; the exception of the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string structure_text(const Rod& r) {
  return r.kind == RodKind::horizon ? std::string("horizon") : r.structure.str();
}

void describe_diagram(Report& rep, const RodDiagram& d) {
  rep.section("diagram");
  rep.field("n", d.n);
  rep.field("period", d.period);
  rep.field("rods", d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Rod& r = d.rods[k];
    rep.field("rod." + std::to_string(k + 1), r.start.str() + " " + r.end.str() + " " + structure_text(r));
  }
}

void require_valid(const RodDiagram& d) {
  const ValidationReport v = validate(d);
  if (v.valid()) return;
  std::string msg = "invalid rod diagram:";
  for (const auto& x : v.violations) msg += " [" + x.code + "] " + x.message + ";";
  throw InputError(msg);
}

SolitonSolution make_solution(const RunConfig& c) {
  RodDiagram d = c.diagram();
  require_valid(d);
  PotentialOptions po;
  po.truncation = c.truncation;
  AlphaOptions ao;
  ao.tolerance = c.tol.quadrature;
  return SolitonSolution(std::move(d), po, ao);
}

SolitonSolution make_balanced(const RunConfig& c, BalanceResult* result = nullptr) {
  const SolitonSolution raw = make_solution(c);
  BalanceOptions bo;
  bo.spread_tolerance = c.tol.defect;
  bo.periodicity_tolerance = c.tol.integrability;
  BalanceResult r = balance_constants(raw, bo);
  SolitonSolution s = raw.with_constants(r.kappa, r.alpha0);
  if (result) *result = std::move(r);
  return s;
}

void describe_constants(Report& rep, const SolitonSolution& s) {
  rep.section("constants");
  for (std::size_t i = 0; i < s.n(); ++i) rep.field("kappa." + std::to_string(i + 1), s.potentials().kappa()[i]);
  rep.field("alpha0", s.alpha().alpha0());
  rep.field("lapse_constant", s.lapse_constant());
}

void describe_defects(Report& rep, const std::string& section, const DefectReport& d) {
  rep.section(section);
  for (const auto& r : d.rods) {
    const std::string k = "rod." + std::to_string(r.rod + 1);
    rep.field(k + ".family", r.family + 1);
    rep.field(k + ".defect", r.value);
    rep.field(k + ".spread", r.spread);
  }
  rep.field("periodicity_defect", d.periodicity_defect);
}

double sum_identity_max(const RunConfig& c, const SolitonSolution& s, int threads) {
  const double L = s.period();
  const GridSpec& g = c.grid;
  const std::size_t nr = static_cast<std::size_t>(g.rho_count), nz = static_cast<std::size_t>(g.z_count);
  std::vector<double> err(nr * nz, 0.0);
  parallel_for(nr * nz, threads, [&](std::size_t k) {
    const double rho = L * (nr == 1 ? g.rho_min : g.rho_min + (g.rho_max - g.rho_min) * (k / nz) / (nr - 1.0));
    const double z = L * (nz == 1 ? g.z_min : g.z_min + (g.z_max - g.z_min) * (k % nz) / (nz - 1.0));
    double sum = 0.0;
    for (const auto& j : s.potentials().jets(rho, z)) sum += j.full_value(rho);
    err[k] = std::abs(sum - 2.0 * std::log(rho) - s.lapse_constant());
  });
  return *std::max_element(err.begin(), err.end());
}

PipelineResult finish(Report& rep) {
  PipelineResult r;
  r.report = rep.str();
  r.exit = rep.all_passed() ? ExitCode::success : ExitCode::check_failure;
  return r;
}

PipelineResult cmd_validate(const RunConfig& c) {
  Report rep;
  const RodDiagram d = c.diagram();
  describe_diagram(rep, d);
  const ValidationReport v = validate(d);
  rep.section("validation");
  rep.field("valid", v.valid());
  rep.field("violations", v.violations.size());
  for (std::size_t k = 0; k < v.violations.size(); ++k) {
    rep.field("violation." + std::to_string(k + 1), v.violations[k].code + ": " + v.violations[k].message);
  }
  PipelineResult r;
  r.report = rep.str();
  r.exit = v.valid() ? ExitCode::success : ExitCode::check_failure;
  return r;
}

PipelineResult cmd_classify(const RunConfig& c) {
  Report rep;
  const RodDiagram d = c.diagram();
  require_valid(d);
  describe_diagram(rep, d);
  const auto result = classify_slice_topology(d.structures(), d.n);
  rep.section("classification");
  std::vector<std::string> seen;
  std::string families;
  for (const auto& x : result) {
    if (std::find(seen.begin(), seen.end(), x.family) != seen.end()) continue;
    families += (seen.empty() ? "" : ",") + x.family;
    seen.push_back(x.family);
  }
  rep.field("families", families.empty() ? std::string("none") : families);
  rep.field("label", render_classification(result));
  return finish(rep);
}

PipelineResult cmd_build(const RunConfig& c, const PipelineOptions& o) {
  Report rep;
  const SolitonSolution s = make_solution(c);
  describe_diagram(rep, s.diagram());
  rep.section("potentials");
  rep.field("truncation", c.truncation);
  rep.field("lapse_constant", s.lapse_constant());
  for (std::size_t i = 0; i < s.n(); ++i) {
    const std::string k = std::to_string(i + 1);
    rep.field("amplitude." + k, s.potentials().amplitude(i));
    rep.field("far_constant." + k, s.potentials().far_constant(i));
  }
  rep.section("symmetry");
  const auto sym = detect_reflection_symmetry(s.diagram());
  rep.field("detected", sym.has_value());
  if (sym) {
    rep.field("center", sym->center.str());
    std::string perm;
    for (std::size_t i = 0; i < sym->permutation.size(); ++i) {
      perm += (i ? " " : "") + std::to_string(sym->permutation[i] + 1);
    }
    rep.field("permutation", perm);
  }
  rep.section("checks");
  rep.check("sum_identity", sum_identity_max(c, s, o.threads), c.tol.sum);
  return finish(rep);
}

PipelineResult cmd_balance(const RunConfig& c) {
  Report rep;
  BalanceResult b;
  const SolitonSolution s = make_balanced(c, &b);
  describe_diagram(rep, s.diagram());
  describe_defects(rep, "defects.before", b.before);
  describe_constants(rep, s);
  const DefectReport after = defect_report(s, c.tol.defect);
  describe_defects(rep, "defects.after", after);
  double worst = 0.0, spread = 0.0;
  for (const auto& r : after.rods) {
    worst = std::max(worst, std::abs(r.value));
    spread = std::max(spread, r.spread);
  }
  rep.section("checks");
  rep.check("max_defect", worst, c.tol.defect);
  rep.check("max_spread", spread, c.tol.defect);
  return finish(rep);
}

void flux_checks(Report& rep, const SolitonSolution& s, const RunConfig& c) {
  const RodDiagram& d = s.diagram();
  if (d.size() < 2) {
    rep.field("flux.skipped", "single-rod diagram has no contour avoiding its own family");
    return;
  }
  const double L = s.period();
  double enclosed = 0.0, cross = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double f = homology_flux(s, k, k, L, ContourKind::enclosing);
    enclosed = std::max(enclosed, std::abs(f - expected_flux(s, k)));
    const std::size_t other = (k + 1) % d.size();
    cross = std::max(cross, std::abs(homology_flux(s, k, other, L, ContourKind::inset)));
  }
  rep.check("flux_enclosed", enclosed, c.tol.flux);
  rep.check("flux_cross", cross, c.tol.flux);
}

PipelineResult cmd_verify(const RunConfig& c, const PipelineOptions& o) {
  Report rep;
  BalanceResult b;
  const SolitonSolution s = make_balanced(c, &b);
  const double L = s.period();
  const std::size_t n = s.n();
  describe_diagram(rep, s.diagram());
  describe_constants(rep, s);

  // Stencil residuals behave like (h / l)^2 / l^2 with l the shortest rod, so
  // the default step 1e-3 shrinks like l^2 once rods are shorter than 1.
  double shortest = INFINITY;
  for (std::size_t k = 0; k < s.diagram().size(); ++k) shortest = std::min(shortest, s.diagram().length(k));
  const double h = 1e-3 * std::min(1.0, shortest * shortest);
  rep.section("finite_differences");
  rep.field("step", h);

  const std::size_t P = kProbes.size();
  std::vector<double> harm(P), integ(P), gap(P), lapse(P), ricci(P);
  parallel_for(P, o.threads, [&](std::size_t k) {
    const double rho = kProbes[k].first * L, z = kProbes[k].second * L;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(laplacian_residual(s.potentials(), i, rho, z, h)));
    }
    harm[k] = worst;
    integ[k] = integrability_residual(s.alpha(), rho, z, h);
    gap[k] = std::abs(s.alpha().at(rho, z, PathKind::axial_first) - s.alpha().at(rho, z, PathKind::radial_first));
    lapse[k] = metric_at(s, rho, z).lapse_residual;
    ricci[k] = ricci_residual(s, rho, z, h);
  });
  std::array<double, 3> shift{};
  const std::array<double, 3> levels = {0.1, 1.0, 10.0};
  parallel_for(levels.size(), o.threads, [&](std::size_t k) {
    const double rho = levels[k] * L, z = 0.37 * L;
    shift[k] = std::abs(s.alpha().at(rho, z + L, PathKind::radial_first) - s.alpha().at(rho, z, PathKind::radial_first));
  });
  const DefectReport after = defect_report(s, c.tol.defect);
  double worst = 0.0, spread = 0.0;
  for (const auto& r : after.rods) {
    worst = std::max(worst, std::abs(r.value));
    spread = std::max(spread, r.spread);
  }
  auto max_of = [](const auto& v) { return *std::max_element(v.begin(), v.end()); };

  rep.section("checks");
  rep.check("sum_identity", sum_identity_max(c, s, o.threads), c.tol.sum);
  rep.check("harmonicity", max_of(harm), c.tol.harmonic);
  rep.check("integrability", max_of(integ), c.tol.harmonic);
  rep.check("path_gap", max_of(gap), c.tol.integrability);
  rep.check("alpha_period_shift", max_of(shift), c.tol.integrability);
  rep.check("alpha_period_defect", after.periodicity_defect, c.tol.integrability);
  rep.check("max_defect", worst, c.tol.defect);
  rep.check("max_spread", spread, c.tol.defect);
  rep.check("lapse", max_of(lapse), c.tol.lapse);
  rep.check("ricci", max_of(ricci), c.tol.ricci);
  flux_checks(rep, s, c);
  const long long expected_rank = n >= 2 ? static_cast<long long>((n + 2) * (n + 1) / 2) : 0;
  rep.check_equal("holonomy_rank", holonomy_rank(s, 20.0 * L, 0.3 * L, c.tol.rank).rank, expected_rank);
  return finish(rep);
}

PipelineResult cmd_kasner(const RunConfig& c) {
  Report rep;
  const SolitonSolution s = make_balanced(c);
  describe_diagram(rep, s.diagram());
  const KasnerFit fit = verify_kasner(s, c.far_min, c.far_max, c.far_samples);
  const KasnerData& k = fit.data;
  rep.section("kasner");
  rep.field("window", format_number(c.far_min * s.period()) + " " + format_number(c.far_max * s.period()));
  double amp_gap = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const std::string key = std::to_string(i + 1);
    rep.field("amplitude." + key, k.amplitudes[i]);
    rep.field("far_constant." + key, fit.u[i].constant);
    amp_gap = std::max(amp_gap, std::abs(k.amplitudes[i] - s.potentials().amplitude(i)));
  }
  rep.field("C.fit", fit.alpha.amplitude);
  rep.field("C.predicted", k.C);
  rep.field("alpha_constant", fit.alpha.constant);
  rep.field("p.z", k.p_z);
  for (std::size_t i = 0; i < s.n(); ++i) rep.field("p." + std::to_string(i + 1), k.p[i]);
  rep.field("q0", *k.q0);
  rep.field("q1", *k.q1);
  rep.section("checks");
  rep.check("kasner_sum", k.sum_residual, 1e-6);
  rep.check("kasner_square", k.square_residual, 1e-6);
  rep.check("C_gap", fit.c_gap, 1e-4);
  rep.check("amplitude_gap", amp_gap, 1e-4);
  return finish(rep);
}

PipelineResult cmd_holonomy(const RunConfig& c) {
  Report rep;
  const SolitonSolution s = make_balanced(c);
  const double L = s.period();
  const double rho = 20.0 * L, z = 0.3 * L;
  const CurvatureFrame f = curvature_components(s, rho, z);
  const HolonomyRank h = holonomy_rank(curvature_endomorphisms(f), f.metric_diagonal, c.tol.rank);
  describe_diagram(rep, s.diagram());
  rep.section("holonomy");
  rep.field("rho", rho);
  rep.field("z", z);
  rep.field("matrices", curvature_endomorphisms(f).size());
  rep.field("laplace_alpha", f.laplace_alpha);
  for (std::size_t i = 0; i < f.n; ++i) rep.field("determinant." + std::to_string(i + 1), f.determinant(i));
  for (std::size_t i = 0; i < f.n; ++i)
    for (std::size_t j = i + 1; j < f.n; ++j) rep.field("G." + std::to_string(i + 1) + "." + std::to_string(j + 1), f.g[i][j]);
  for (std::size_t k = 0; k < h.singular_values.size(); ++k) rep.field("sv." + std::to_string(k + 1), h.singular_values[k]);
  rep.field("rank", h.rank);
  rep.field("dimension", h.dimension);
  rep.section("checks");
  const long long expected = s.n() >= 2 ? h.dimension : 0;
  rep.check_equal("holonomy_rank", h.rank, expected);
  return finish(rep);
}

PipelineResult cmd_wick(const RunConfig& c, const PipelineOptions& o) {
  Report rep;
  const SolitonSolution s = make_balanced(c);
  if (o.wick_family < 1 || o.wick_family > s.n()) throw InputError("wick: --family must be between 1 and n");
  const BlackHoleSolution bh = wick_rotate(s, o.wick_family - 1);
  const double L = s.period();
  describe_diagram(rep, s.diagram());
  rep.section("wick");
  rep.field("family", o.wick_family);
  rep.field("torus_rank", bh.torus_rank);
  rep.field("horizons", bh.horizons.size());
  double on_rod = 0.0;
  for (std::size_t k = 0; k < bh.horizons.size(); ++k) {
    const HorizonRod& hz = bh.horizons[k];
    const std::string key = "horizon." + std::to_string(k + 1);
    rep.field(key + ".rod", hz.rod + 1);
    rep.field(key + ".neighbours", std::to_string(hz.left_family + 1) + " " + std::to_string(hz.right_family + 1));
    rep.field(key + ".topology", render(hz.topology));
    const double rho = 1e-3;
    const double ratio = bh.lapse_squared(rho, s.diagram().midpoint(hz.rod)) / (rho * rho);
    rep.field(key + ".lapse_squared_over_rho2", ratio);
    on_rod = std::max(on_rod, ratio);
  }
  std::vector<double> ricci(kProbes.size()), ident(kProbes.size());
  parallel_for(kProbes.size(), o.threads, [&](std::size_t k) {
    const double rho = kProbes[k].first * L, z = kProbes[k].second * L;
    ricci[k] = wick_ricci_check(bh, rho, z, 1e-3);
    const double a = bh.lapse_squared(rho, z), b = bh.lapse_squared_identity(rho, z);
    ident[k] = std::abs(a - b) / a;
  });
  rep.section("checks");
  rep.check("ricci", *std::max_element(ricci.begin(), ricci.end()), c.tol.ricci);
  rep.check("lapse_identity", *std::max_element(ident.begin(), ident.end()), c.tol.sum);
  return finish(rep);
}

PipelineResult cmd_sample(const RunConfig& c, const PipelineOptions& o) {
  const SolitonSolution s = make_balanced(c);
  const double L = s.period();
  const GridSpec& g = c.grid;
  const std::size_t nr = static_cast<std::size_t>(g.rho_count), nz = static_cast<std::size_t>(g.z_count);
  std::vector<std::string> rows(nr * nz);
  parallel_for(nr * nz, o.threads, [&](std::size_t k) {
    const double rho = L * (nr == 1 ? g.rho_min : g.rho_min + (g.rho_max - g.rho_min) * (k / nz) / (nr - 1.0));
    const double z = L * (nz == 1 ? g.z_min : g.z_min + (g.z_max - g.z_min) * (k % nz) / (nz - 1.0));
    const MetricFrame m = metric_at(s, rho, z);
    std::string row = format_number(rho) + "," + format_number(z);
    for (double e : m.torus) row += "," + format_number(std::log(e));
    row += "," + format_number(m.alpha) + "," + format_number(m.lapse);
    rows[k] = std::move(row);
  });
  PipelineResult r;
  r.csv = "rho,z";
  for (std::size_t i = 0; i < s.n(); ++i) r.csv += ",u" + std::to_string(i + 1);
  r.csv += ",alpha,lapse\n";
  for (const auto& row : rows) r.csv += row + "\n";
  Report rep;
  rep.section("sample");
  rep.field("rows", rows.size());
  rep.field("columns", s.n() + 4);
  rep.field("path", c.sample_path.empty() ? std::string("-") : c.sample_path);
  r.report = rep.str();
  return r;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (name == n) return c;
  }
  return std::nullopt;
}

std::string command_name(Command c) {
  for (const auto& [cc, n] : kCommands) {
    if (cc == c) return n;
  }
  return "?";
}

PipelineResult run_pipeline(const RunConfig& config, Command command, const PipelineOptions& options) {
  switch (command) {
    case Command::validate: return cmd_validate(config);
    case Command::classify: return cmd_classify(config);
    case Command::build: return cmd_build(config, options);
    case Command::balance: return cmd_balance(config);
    case Command::verify: return cmd_verify(config, options);
    case Command::kasner: return cmd_kasner(config);
    case Command::holonomy: return cmd_holonomy(config);
    case Command::wick: return cmd_wick(config, options);
    case Command::sample: return cmd_sample(config, options);
  }
  throw InputError("unknown command");
}

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const AccuracyError*>(&e)) return ExitCode::accuracy_failure;
  if (dynamic_cast<const UnbalanceableError*>(&e)) return ExitCode::check_failure;
  return ExitCode::input_error;
}

}  // namespace gsol
