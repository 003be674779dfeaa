#include "qcurve/cli.hpp"

#include "qcurve/as3.hpp"
#include "qcurve/error.hpp"
#include "qcurve/inequality.hpp"
#include "qcurve/parallel.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/quartic.hpp"
#include "qcurve/report.hpp"
#include "qcurve/spectral.hpp"
#include "qcurve/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <type_traits>

#ifndef QCURVE_VERSION
#define QCURVE_VERSION "unknown"
#endif

namespace qcurve::cli {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json big(const BigInt& v) {
  if (abs(v) < (BigInt(1) << 53)) return json(v.convert_to<long long>());
  return json(v.str());
}

struct Common {
  std::string format = "json";
  int jobs = 1;
  std::optional<double> tol;
  std::uint64_t seed = 0;
};

struct DimsArgs {
  int n = 0, k = 0, nMax = 0;
};

ReportDocument new_doc(const std::string& command, const Common& c) {
  ReportDocument d;
  d.toolVersion = QCURVE_VERSION;
  d.timestamp = utc_timestamp();
  d.command = command;
  d.range["jobs"] = c.jobs;
  d.range["seed"] = c.seed;
  if (c.tol) d.range["tol"] = *c.tol;
  return d;
}

std::vector<Dims> dims_of(const DimsArgs& a, ReportDocument& doc) {
  if (a.nMax > 0) {
    doc.range["nMax"] = a.nMax;
    std::vector<Dims> out;
    for (int n = 3; n <= a.nMax; ++n)
      for (int k = 1; 2 * k < n; ++k) out.emplace_back(n, k);
    return out;
  }
  if (a.n == 0 || a.k == 0) throw CLI::RequiredError("--n and --k (or --n-max)");
  doc.range["n"] = a.n;
  doc.range["k"] = a.k;
  return {Dims(a.n, a.k)};
}

Dims single_dims(const DimsArgs& a, ReportDocument& doc) {
  doc.range["n"] = a.n;
  doc.range["k"] = a.k;
  return Dims(a.n, a.k);
}

void add_dims_options(CLI::App* sub, DimsArgs& a, bool sweep) {
  auto* n = sub->add_option("--n", a.n, "dimension n");
  auto* k = sub->add_option("--k", a.k, "order k");
  if (sweep) {
    auto* m = sub->add_option("--n-max", a.nMax, "sweep 2k < n <= n-max")->check(CLI::Range(3, 400));
    m->excludes(n)->excludes(k);
  } else {
    n->required();
    k->required();
  }
}

// ---- subcommands ----

ReportDocument cmd_tau0(const DimsArgs& a, const Common& c) {
  auto doc = new_doc("tau0", c);
  const auto grid = dims_of(a, doc);
  const double tol = c.tol.value_or(1e-14);
  struct Row {
    Tau0Result r;
    Tau0Bounds b;
  };
  const auto rows = parallel_map(grid.size(), c.jobs, [&](std::size_t i) {
    return Row{solve_tau0(grid[i], tol), tau0_bounds_check(grid[i], 1e-12)};
  });
  ReportSection s{"tau0", {"n", "k", "y", "tau0", "residual", "lower", "upper", "bounds_hold"}, {},
                  {{"bisection", tol}, {"residual", 1e-13}, {"bounds_slack", 1e-12}}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& [r, b] = rows[i];
    s.rows.push_back({grid[i].n(), grid[i].k(), num(r.y), num(r.tau0), num(r.residual), num(b.lower), num(b.upper),
                      b.holds});
    doc.verdict(r.residual <= 1e-13 && b.holds);
  }
  if (grid.size() == 1) {
    doc.highlights["tau0"] = num(rows[0].r.tau0);
    doc.highlights["y"] = num(rows[0].r.y);
    doc.highlights["residual"] = num(rows[0].r.residual);
  }
  doc.sections.push_back(std::move(s));
  return doc;
}

ReportDocument cmd_spectrum(const DimsArgs& a, int mMax, int jMax, const Common& c) {
  auto doc = new_doc("spectrum", c);
  const Dims d = single_dims(a, doc);
  doc.range["mMax"] = mMax;
  doc.range["jMax"] = jMax;
  const auto rep = eigenvalue_gap_report(d, mMax, jMax);
  ReportSection tab{"alpha", {"m", "j", "alpha", "multiplicity", "kernel"}, {}, {{"kernel_relative", 1e-12}}};
  for (const auto& e : rep.table)
    tab.rows.push_back({e.mode.m, e.mode.j, num(e.value), big(spherical_multiplicity(d.n(), e.mode.j)),
                        std::abs(e.value - rep.kernelValue) <= 1e-12 * rep.kernelValue});
  ReportSection st{"structure",
                   {"tau0", "kernel_value", "kernel_relative_error", "alpha01_over_alpha10", "kernel_unique",
                    "increasing_in_m", "increasing_in_j", "coercivity"},
                   {{num(rep.tau0), num(rep.kernelValue), num(rep.kernelRelativeError), num(rep.alpha01OverAlpha10),
                     rep.kernelUnique, rep.increasingInM, rep.increasingInJ, num(coercivity_constant(d))}},
                   {{"kernel_relative_error", 1e-12}}};
  doc.verdict(rep.kernelRelativeError <= 1e-12);
  doc.verdict(rep.alpha01OverAlpha10 > 1.0);
  doc.verdict(rep.kernelUnique);
  doc.highlights["tau0"] = num(rep.tau0);
  doc.highlights["kernelValue"] = num(rep.kernelValue);
  doc.sections.push_back(std::move(tab));
  doc.sections.push_back(std::move(st));
  return doc;
}

const char* parity_name(int count) { return count == 1 ? "cos" : "cos+sin"; }

ReportDocument cmd_hessian(const DimsArgs& a, int mMax, int jMax, const Common& c) {
  auto doc = new_doc("hessian", c);
  const Dims d = single_dims(a, doc);
  doc.range["mMax"] = mMax;
  doc.range["jMax"] = jMax;
  QuadratureConfig q;
  if (c.tol) q.relTol = *c.tol;
  const auto rep = hessian_at_one(d, mMax, jMax, q);
  ReportSection s{"hessian", {"m", "j", "parity", "parity_count", "multiplicity", "value", "kernel"}, {}, {}};
  double gap = 0.0;
  for (const auto& e : rep.hessianDiagonal) {
    s.rows.push_back({e.mode.m, e.mode.j, e.mode.m == 0 ? "constant" : parity_name(e.parityCount), e.parityCount,
                      big(e.multiplicity), num(e.value), e.kernel});
    if (e.mode.m == 1 && e.mode.j == 0) continue;
    if (!e.kernel && (gap == 0.0 || e.value < gap)) gap = e.value;
  }
  double gmax = 0.0;
  for (double g : rep.gradient) gmax = std::max(gmax, std::abs(g));
  s.tolerances["kernel_relative"] = 1e-10;
  s.tolerances["gradient_abs"] = 1e-8;
  doc.highlights["value"] = num(rep.value);
  doc.highlights["kernelDimension"] = big(rep.kernelDimension);
  doc.highlights["gradientMaxAbs"] = num(gmax);
  doc.highlights["smallestPositiveEntry"] = num(gap);
  doc.verdict(rep.kernelDimension == 3);
  doc.verdict(gmax <= 1e-8);
  doc.sections.push_back(std::move(s));
  return doc;
}

ReportDocument cmd_as3(const std::string& fiber, int ell, int mMin, int mMax, const std::string& convention,
                       std::size_t monteCarlo, const Common& c) {
  auto doc = new_doc("as3", c);
  const FiberKind kind = fiber == "sphere" ? FiberKind::Sphere : FiberKind::ComplexProjective;
  const LaplacianConvention conv = convention == "printed" ? LaplacianConvention::Printed : LaplacianConvention::Geometric;
  doc.range["fiber"] = fiber;
  doc.range["ell"] = ell;
  doc.range["mMin"] = mMin;
  doc.range["mMax"] = mMax;
  doc.range["convention"] = convention;
  if (mMin > mMax) throw DomainError("as3: --m-min must not exceed --m-max");

  const auto v = as3_verdict(kind, ell, mMin, mMax, conv, c.jobs);
  ReportSection rows{"as3", {"m", "discriminant", "discriminant_positive", "lambda_minus", "lambda_plus", "pattern"},
                     {}, {{"root_residual", 1e-9}}};
  for (const auto& r : v.rows)
    rows.rows.push_back({r.m, num(r.discriminant.to_double()), r.discriminantPositive,
                         r.lambdaMinus ? num(*r.lambdaMinus) : json(nullptr),
                         r.lambdaPlus ? num(*r.lambdaPlus) : json(nullptr), to_string(r.pattern)});
  const auto q = shifted_paneitz_eigenvalue({mMax, {kind, ell}}, conv);
  ReportSection coef{"coefficients",
                     {"m", "a", "b", "c", "discriminant", "a_value", "b_value", "c_value", "root_residual"},
                     {{mMax, q.a.to_string(), q.b.to_string(), q.c.to_string(), q.discriminant.to_string(),
                       num(q.a.to_double()), num(q.b.to_double()), num(q.c.to_double()), num(q.rootResidual)}},
                     {{"root_residual", 1e-9}}};
  const auto& last = v.rows.back();
  doc.highlights["predicted"] = to_string(v.predicted);
  doc.highlights["patternAtMMax"] = to_string(last.pattern);
  doc.highlights["leastStableM"] = v.leastStableM ? json(*v.leastStableM) : json(nullptr);
  doc.verdict(last.pattern == v.predicted);
  doc.verdict(last.discriminantPositive);
  doc.verdict(q.rootResidual <= 1e-9);

  ReportSection asym{"asymptotics", {"quantity", "early_max", "late_max", "bounded", "offset_at_max"}, {},
                     {{"late_over_early", 2.0}}};
  if (conv == LaplacianConvention::Printed) {
    for (const auto& chk : asymptotic_consistency(kind, ell, conv, 10000)) {
      asym.rows.push_back({chk.quantity, num(chk.earlyMax), num(chk.lateMax), chk.bounded, num(chk.offsetAtMax)});
      doc.verdict(chk.bounded);
    }
  }
  doc.sections.push_back(std::move(rows));
  doc.sections.push_back(std::move(coef));
  doc.sections.push_back(std::move(asym));

  if (monteCarlo > 0) {
    if (kind != FiberKind::Sphere) throw DomainError("as3: --monte-carlo is available for sphere fibers only");
    const auto mc = cubic_integral_monte_carlo(ell, monteCarlo, c.seed);
    doc.sections.push_back({"cubic_integral",
                            {"ell", "samples", "integral", "standard_error", "nonzero"},
                            {{mc.ell, mc.samples, num(mc.integral), num(mc.standardError), mc.nonzero}},
                            {{"sigma_multiple", 3.0}}});
    doc.verdict(mc.nonzero);
  }
  return doc;
}

ReportDocument cmd_inequalities(const DimsArgs& a, int ellMax, const Common& c) {
  auto doc = new_doc("inequalities", c);
  const auto grid = dims_of(a, doc);
  doc.range["ellMax"] = ellMax;
  struct Row {
    InequalityVerdict v;
    bool informational;
    bool needStrict;
  };
  const auto blocks = parallel_map(grid.size(), c.jobs, [&](std::size_t i) {
    const Dims& d = grid[i];
    std::vector<Row> out;
    const auto sb = strict_binding(d);
    out.push_back({sb.quotient, false, true});
    out.push_back({sb.reduced, false, true});
    out.push_back({sb.literal, true, false});
    out.push_back({sb.reducedExponent, true, false});
    for (int l = 0; l <= ellMax; ++l) out.push_back({beckner_gap(d, l), false, l >= 2});
    for (double l : {1.5, 2.0, 5.0, 10.0}) {
      out.push_back({beckner_derivative_step(d, l), false, true});
      out.push_back({lambda_derivative_step(d, l), false, false});
    }
    const auto qc = quartic_constant_c(d);
    out.push_back({qc.alphaIneq, false, true});
    out.push_back({qc.convexity, false, false});
    out.push_back({qc.printedIntermediateY, true, false});
    return out;
  });
  ReportSection s{"inequalities",
                  {"n", "k", "name", "parameter", "lhs", "rhs", "margin", "holds", "equality", "informational"},
                  {},
                  {{"equality_relative", 1e-10}}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (const auto& r : blocks[i]) {
      std::string param;
      for (const auto& [k, v] : r.v.parameters) {
        if (k == "n" || k == "k") continue;
        std::ostringstream os;
        os << k << "=" << v;
        param += (param.empty() ? "" : ";") + os.str();
      }
      s.rows.push_back({grid[i].n(), grid[i].k(), r.v.name, param, num(r.v.lhs), num(r.v.rhs), num(r.v.margin),
                        r.v.holds, r.v.equalityCase, r.informational});
      if (!r.informational) doc.verdict(r.needStrict ? r.v.strict() : r.v.holds);
    }
  doc.sections.push_back(std::move(s));
  return doc;
}

ReportDocument cmd_quartic(const DimsArgs& a, const std::string& metricName, const std::string& loglog,
                           const Common& c) {
  auto doc = new_doc("quartic", c);
  const Dims d = single_dims(a, doc);
  const DistanceMetric metric = metricName == "dist" ? DistanceMetric::Dist : DistanceMetric::EnergyDist;
  doc.range["metric"] = metricName;
  QuadratureConfig q;
  if (c.tol) q.relTol = *c.tol;
  const auto grid = default_xi_grid();
  const auto deg = degenerate_sequence(d, grid, c.jobs, q);
  const auto fit = fit_exponent(deg, metric);

  ReportSection samples{"samples",
                        {"xi", "b", "deficit", "dist", "energy_dist", "norm_squared", "fitted_exponent"},
                        {},
                        {{"deficit_floor_eps_multiple", 1e3}}};
  for (const auto& s : deg)
    samples.rows.push_back({num(s.xi), num(s.b), num(s.deficit), num(s.dist), num(s.energyDist), num(s.normSquared),
                            num(fit.exponent)});

  ReportSection fits{"fits", {"sequence", "metric", "exponent", "prefactor", "r2", "xi_min", "xi_max", "target"}, {},
                     {{"exponent", 0.05}, {"r2_min", 0.9999}}};
  auto add_fit = [&](SequenceKind kind, double target) {
    const auto f = kind == SequenceKind::Degenerate ? fit : fit_exponent(probe_sequence(d, grid, kind, c.jobs, q), metric);
    fits.rows.push_back({to_string(kind), to_string(metric), num(f.exponent), num(f.prefactor), num(f.r2),
                         num(f.xiMin), num(f.xiMax), target});
    return f;
  };
  add_fit(SequenceKind::Degenerate, 4.0);
  add_fit(SequenceKind::FirstModeOnly, 4.0);
  const auto ctrl = add_fit(SequenceKind::SecondModeOnly, 2.0);
  doc.verdict(std::abs(fit.exponent - 4.0) <= 0.05);
  doc.verdict(fit.r2 > 0.9999);
  doc.verdict(std::abs(ctrl.exponent - 2.0) <= 0.05);

  const auto pl = plateau_report(d, deg);
  ReportSection plateau{"plateau", {"plateau", "spread", "assembled", "ratio"},
                        {{num(pl.plateau), num(pl.spread), num(pl.assembled), num(pl.ratio)}},
                        {{"spread", 0.05}, {"ratio", 0.1}}};
  doc.verdict(pl.spread <= 0.05);
  doc.verdict(std::abs(pl.ratio - 1.0) <= 0.1);

  const auto rel = frank3_expansion_check(d, 0.02, 0.0, q);
  const auto ord = frank3_order_check(d, 0.02, 0.5, q);
  ReportSection f3{"expansion", {"xi", "b", "quadrature", "analytic", "abs_discrepancy", "rel_discrepancy"}, {},
                   {{"rel_discrepancy", 1e-2}, {"halving_ratio_min", 12.8}, {"halving_ratio_max", 38.4}}};
  for (const auto& r : {rel, ord.coarse, ord.fine})
    f3.rows.push_back({num(r.xi), num(r.b), num(r.quadrature), num(r.analytic), num(r.absDiscrepancy),
                       num(r.relDiscrepancy)});
  doc.verdict(rel.relDiscrepancy < 1e-2);
  doc.verdict(ord.ratio >= 12.8 && ord.ratio <= 38.4);

  doc.highlights["exponent"] = num(fit.exponent);
  doc.highlights["r2"] = num(fit.r2);
  doc.highlights["controlExponent"] = num(ctrl.exponent);
  doc.highlights["halvingRatio"] = num(ord.ratio);
  doc.sections.push_back(std::move(samples));
  doc.sections.push_back(std::move(fits));
  doc.sections.push_back(std::move(plateau));
  doc.sections.push_back(std::move(f3));

  if (!loglog.empty()) {
    std::ofstream f(loglog);
    if (!f) throw DomainError("quartic: cannot write " + loglog);
    f << std::setprecision(17);
    for (const auto& s : fit.samples)
      f << std::log(metric == DistanceMetric::Dist ? s.dist : s.energyDist) << " " << std::log(s.deficit) << "\n";
  }
  return doc;
}

ReportDocument cmd_greens(const DimsArgs& a, std::optional<double> t, std::optional<double> s,
                          const std::vector<double>& omega, const std::vector<double>& eta, int pairs,
                          const Common& c) {
  auto doc = new_doc("greens", c);
  const Dims d = single_dims(a, doc);
  const double tau0 = solve_tau0(d).tau0;
  const double tol = c.tol.value_or(1e-10);
  std::vector<GreensPoint> pts;
  if (t || s || !omega.empty() || !eta.empty()) {
    if (!(t && s && !omega.empty() && !eta.empty())) throw CLI::ValidationError("greens: --t, --s, --omega and --eta go together");
    pts.push_back({*t, omega, *s, eta});
    doc.range["mode"] = "explicit";
  } else {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> N01;
    std::uniform_real_distribution<double> T(0.0, 2.0 * std::numbers::pi * tau0);
    auto sphere_point = [&] {
      std::vector<double> v(static_cast<std::size_t>(d.n()));
      double sum = 0.0;
      for (auto& x : v) {
        x = N01(rng);
        sum += x * x;
      }
      for (auto& x : v) x /= std::sqrt(sum);
      return v;
    };
    for (int i = 0; i < pairs; ++i) {
      const double ti = T(rng);
      auto w = sphere_point();
      const double si = T(rng);
      pts.push_back({ti, std::move(w), si, sphere_point()});
    }
    doc.range["mode"] = "random";
    doc.range["pairs"] = pairs;
  }
  const auto vals = greens_kernel(d, tau0, pts, 1, tol);
  ReportSection sec{"greens", {"t", "s", "omega_dot_eta", "value", "tail_bound", "terms"}, {}, {{"tail_relative", tol}}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < pts[i].omega.size(); ++j) dot += pts[i].omega[j] * pts[i].eta[j];
    sec.rows.push_back({num(pts[i].t), num(pts[i].s), num(dot), num(vals[i].value), num(vals[i].tailBound),
                        vals[i].terms});
    doc.verdict(vals[i].value > 0.0 && vals[i].tailBound <= tol * vals[i].value);
  }
  doc.highlights["tau0"] = num(tau0);
  doc.sections.push_back(std::move(sec));
  return doc;
}

ReportDocument cmd_verify(const std::vector<int>& ids, int nMax, const Common& c) {
  auto doc = new_doc("verify", c);
  VerifyOptions o;
  o.nMax = nMax;
  o.jobs = c.jobs;
  o.seed = c.seed;
  if (nMax > 0) doc.range["nMax"] = nMax;
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  doc.range["criteria"] = todo;
  ReportSection crit{"criteria", {"id", "title", "pass", "seconds", "runtime_limit", "error"}, {}, {}};
  ReportSection checks{"checks",
                       {"criterion", "label", "pass", "cases", "failures", "tolerance", "worst_case", "worst_value"},
                       {},
                       {}};
  for (int id : todo) {
    const auto r = run_criterion(id, o);
    crit.rows.push_back({r.id, r.title, r.pass, num(r.seconds), num(r.runtimeLimit), r.error});
    for (const auto& ch : r.checks)
      checks.rows.push_back({r.id, ch.label, ch.pass, ch.cases, ch.failures, num(ch.tolerance), ch.worstCase,
                             num(ch.worstValue)});
    doc.verdict(r.pass);
  }
  doc.sections.push_back(std::move(crit));
  doc.sections.push_back(std::move(checks));
  return doc;
}

template <class T>
T env_number(const char* name, const std::string& text, T lo, T hi) {
  T value{};
  std::istringstream is(text);
  is >> value;
  if (!is || !is.eof() || !(value > lo || (std::is_integral_v<T> && value == lo)) || value > hi)
    throw CLI::ValidationError(name, "invalid value '" + text + "'");
  return value;
}

const std::map<std::string, std::string> kCsvSection{
    {"tau0", "tau0"},   {"spectrum", "alpha"},    {"hessian", "hessian"}, {"as3", "as3"},
    {"inequalities", "inequalities"}, {"quartic", "samples"}, {"greens", "greens"}, {"verify", "checks"}};

void emit(const ReportDocument& doc, const Common& c, std::ostream& out) {
  if (c.format == "json")
    out << render_json(doc);
  else if (c.format == "csv")
    out << render_csv(doc, kCsvSection.at(doc.command));
  else
    out << render_human(doc);
}

void emit_error(const char* type, const std::string& message, const Common& c, std::ostream& out, std::ostream& err) {
  if (c.format == "json")
    out << json{{"error", {{"type", type}, {"message", message}}}}.dump(2) << "\n";
  else
    err << "qcurve: " << type << ": " << message << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcurve: spectral and variational checks for the total Q-curvature functional on S^1 x S^{n-1}",
               "qcurve"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", QCURVE_VERSION);

  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--jobs", common.jobs, "worker threads for sweeps [env QCURVE_JOBS]")->check(CLI::Range(1, 256));
  app.add_option("--tol", common.tol, "numerical tolerance: tau0 bisection, quadrature, Green's tail [env QCURVE_TOL]")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "seed for randomized checks");

  DimsArgs tau0Dims, specDims, hessDims, ineqDims, quartDims, greensDims;
  int specM = 10, specJ = 10, hessM = 10, hessJ = 10, ellMax = 50;

  auto* tau0 = app.add_subcommand("tau0", "critical radius tau0 and its bounds");
  add_dims_options(tau0, tau0Dims, true);

  auto* spectrum = app.add_subcommand("spectrum", "alpha_{m,j}(tau0) table and kernel structure");
  add_dims_options(spectrum, specDims, false);
  spectrum->add_option("--m-max", specM, "largest circle mode")->check(CLI::Range(2, 500));
  spectrum->add_option("--j-max", specJ, "largest spherical degree")->check(CLI::Range(2, 500));

  auto* hessian = app.add_subcommand("hessian", "second variation at u = 1");
  add_dims_options(hessian, hessDims, false);
  hessian->add_option("--m-max", hessM, "largest circle mode")->check(CLI::Range(1, 200));
  hessian->add_option("--j-max", hessJ, "largest spherical degree")->check(CLI::Range(0, 200));

  std::string fiber = "sphere", convention = "printed";
  int ell = 2, mMin = 1000, mMax = 1000;
  std::size_t monteCarlo = 0;
  auto* as3 = app.add_subcommand("as3", "shifted Paneitz quadratic on Einstein products M^m x F");
  as3->add_option("--fiber", fiber, "sphere or cp")->check(CLI::IsMember({"sphere", "cp"}));
  as3->add_option("--ell", ell, "fiber dimension parameter l >= 2")->check(CLI::Range(2, 1000));
  as3->add_option("--m-min", mMin, "smallest base dimension")->check(CLI::Range(1, 10000000));
  as3->add_option("--m-max", mMax, "largest base dimension")->check(CLI::Range(1, 10000000));
  as3->add_option("--convention", convention, "fiber Laplacian sign convention")
      ->check(CLI::IsMember({"printed", "geometric"}));
  as3->add_option("--monte-carlo", monteCarlo, "samples for the cubic fiber integral (0: skip)");

  auto* ineq = app.add_subcommand("inequalities", "strict binding, Gamma-ratio bounds and the quartic constant");
  add_dims_options(ineq, ineqDims, true);
  ineq->add_option("--ell-max", ellMax, "largest l in the Gamma-ratio comparison")->check(CLI::Range(1, 1000));

  std::string metric = "energyDist", loglog;
  auto* quartic = app.add_subcommand("quartic", "degenerate family, exponent fits and expansion check");
  add_dims_options(quartic, quartDims, false);
  quartic->add_option("--metric", metric, "distance used in the fit")->check(CLI::IsMember({"dist", "energyDist"}));
  quartic->add_option("--loglog", loglog, "write log(distance) log(deficit) pairs to this file");

  std::optional<double> gt, gs;
  std::vector<double> omega, eta;
  int pairs = 10;
  auto* greens = app.add_subcommand("greens", "periodized Green's kernel of P_k");
  add_dims_options(greens, greensDims, false);
  greens->add_option("--t", gt, "circle coordinate of x");
  greens->add_option("--s", gs, "circle coordinate of y");
  greens->add_option("--omega", omega, "unit vector of x in R^n, comma separated")->delimiter(',');
  greens->add_option("--eta", eta, "unit vector of y in R^n, comma separated")->delimiter(',');
  greens->add_option("--pairs", pairs, "random point pairs when no point is given")->check(CLI::Range(1, 1000000));

  std::vector<int> criteria;
  int verifyNMax = 0;
  bool all = false;
  auto* verify = app.add_subcommand("verify", "run acceptance criteria");
  verify->add_flag("--all", all, "all criteria (default)");
  verify->add_option("--criterion", criteria, "criterion id, repeatable")->check(CLI::Range(1, kCriterionCount));
  verify->add_option("--n-max", verifyNMax, "cap every dimension sweep")->check(CLI::Range(3, 400));

  std::vector<std::string> argvCopy(args.rbegin(), args.rend());
  try {
    // environment sits between built-in defaults and flags
    if (const char* v = std::getenv("QCURVE_JOBS")) common.jobs = env_number<int>("QCURVE_JOBS", v, 1, 256);
    if (const char* v = std::getenv("QCURVE_TOL")) common.tol = env_number<double>("QCURVE_TOL", v, 0.0, 1.0);
    app.parse(argvCopy);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << QCURVE_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qcurve: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    ReportDocument doc;
    if (*tau0) doc = cmd_tau0(tau0Dims, common);
    else if (*spectrum) doc = cmd_spectrum(specDims, specM, specJ, common);
    else if (*hessian) doc = cmd_hessian(hessDims, hessM, hessJ, common);
    else if (*as3) doc = cmd_as3(fiber, ell, as3->count("--m-min") ? mMin : mMax, mMax, convention, monteCarlo, common);
    else if (*ineq) doc = cmd_inequalities(ineqDims, ellMax, common);
    else if (*quartic) doc = cmd_quartic(quartDims, metric, loglog, common);
    else if (*greens) doc = cmd_greens(greensDims, gt, gs, omega, eta, pairs, common);
    else doc = cmd_verify(criteria, verifyNMax, common);
    emit(doc, common, out);
    return doc.verdictSummary.fail == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    err << "qcurve: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    emit_error("domain_error", e.what(), common, out, err);
  } catch (const AccuracyError& e) {
    emit_error("accuracy_error", e.what(), common, out, err);
  } catch (const InternalError& e) {
    emit_error("internal_error", e.what(), common, out, err);
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qcurve::cli
