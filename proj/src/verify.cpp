#include "qcurve/verify.hpp"

#include "qcurve/as3.hpp"
#include "qcurve/error.hpp"
#include "qcurve/inequality.hpp"
#include "qcurve/parallel.hpp"
#include "qcurve/qfunctional.hpp"
#include "qcurve/quartic.hpp"
#include "qcurve/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

namespace qcurve {

namespace {

class Group {
 public:
  Group(std::string label, double tolerance) {
    line_.label = std::move(label);
    line_.tolerance = tolerance;
    line_.worstSlack = std::numeric_limits<double>::infinity();
  }
  // slack >= 0 on success; the smallest slack (or first failure) is kept
  void add(const std::string& which, double value, bool ok, double slack) {
    ++line_.cases;
    if (!ok) {
      if (line_.failures++ == 0) record(which, value, slack);
      line_.pass = false;
    } else if (line_.failures == 0 && slack < line_.worstSlack) {
      record(which, value, slack);
    }
  }
  // |value| <= tol
  void within(const std::string& which, double value, double tol) {
    add(which, value, std::abs(value) <= tol, tol - std::abs(value));
  }
  void flag(const std::string& which, bool ok) { add(which, ok ? 1.0 : 0.0, ok, ok ? 0.0 : -1.0); }
  CheckLine done() {
    if (line_.cases == 0) {
      line_.pass = false;
      line_.worstCase = "no cases";
    }
    if (!std::isfinite(line_.worstSlack)) line_.worstSlack = 0.0;
    return line_;
  }

 private:
  void record(const std::string& which, double value, double slack) {
    line_.worstCase = which;
    line_.worstValue = value;
    line_.worstSlack = slack;
  }
  CheckLine line_;
};

std::string label(const Dims& d) { return d.label(); }

std::vector<Dims> dims_grid(int nMax, const VerifyOptions& o) {
  if (o.nMax > 0) nMax = std::min(nMax, o.nMax);
  std::vector<Dims> out;
  for (int n = 3; n <= nMax; ++n)
    for (int k = 1; 2 * k < n; ++k) out.emplace_back(n, k);
  return out;
}

const std::vector<Dims>& pilot_dims() {
  static const std::vector<Dims> d{Dims(5, 1), Dims(6, 2), Dims(7, 2), Dims(7, 3)};
  return d;
}

using Body = std::function<void(CriterionResult&, const VerifyOptions&)>;

void c1_tau0_closed_form(CriterionResult& r, const VerifyOptions& o) {
  Group g("|tau0 - 1/sqrt(n-2)|, k = 1, 3 <= n <= 40", 1e-12);
  const int nMax = o.nMax > 0 ? std::min(40, o.nMax) : 40;
  for (int n = 3; n <= nMax; ++n) {
    const Dims d(n, 1);
    g.within(label(d), solve_tau0(d).tau0 - 1.0 / std::sqrt(n - 2.0), 1e-12);
  }
  r.checks.push_back(g.done());
}

void c2_tau0_bounds(CriterionResult& r, const VerifyOptions& o) {
  Group g("1/sqrt(n+2k-4) <= tau0 <= 1/sqrt(n-2k), n <= 40", 1e-12);
  for (const auto& d : dims_grid(40, o)) {
    const auto b = tau0_bounds_check(d, 1e-12);
    g.add(label(d), b.tau0, b.holds, std::min(b.tau0 - b.lower, b.upper - b.tau0) + 1e-12);
  }
  r.checks.push_back(g.done());
}

void c3_eigen_structure(CriterionResult& r, const VerifyOptions& o) {
  Group kern("alpha_{1,0}(tau0) vs (n+2k)/(n-2k) p_{k,0}, relative", 1e-12);
  Group gap("alpha_{0,1} / alpha_{1,0} > 1", 0.0);
  Group uniq("kernel eigenvalue attained only at (1,0), m,j <= 10", 0.0);
  Group dim("Hessian kernel dimension == 3", 0.0);
  const auto grid = dims_grid(20, o);
  struct Row {
    EigenvalueGapReport gap;
    BigInt kdim;
  };
  const auto rows = parallel_map(grid.size(), o.jobs, [&](std::size_t i) {
    return Row{eigenvalue_gap_report(grid[i], 10, 10), hessian_at_one(grid[i], 10, 10).kernelDimension};
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& rep = rows[i].gap;
    const std::string w = label(grid[i]);
    kern.within(w, rep.kernelRelativeError, 1e-12);
    gap.add(w, rep.alpha01OverAlpha10, rep.alpha01OverAlpha10 > 1.0, rep.alpha01OverAlpha10 - 1.0);
    uniq.flag(w, rep.kernelUnique);
    dim.add(w, rows[i].kdim.convert_to<double>(), rows[i].kdim == 3, rows[i].kdim == 3 ? 0.0 : -1.0);
  }
  r.checks = {kern.done(), gap.done(), uniq.done(), dim.done()};
}

void c4_strict_binding(CriterionResult& r, const VerifyOptions& o) {
  Group q("Y < 2/(n-2k) S_{n,k}, n <= 40", 0.0);
  Group red("Psi_k(n) < Phi_k(n), n <= 40", 0.0);
  for (const auto& d : dims_grid(40, o)) {
    const auto s = strict_binding(d);
    q.add(label(d), s.quotient.margin, s.quotient.strict(), s.quotient.margin);
    red.add(label(d), s.reduced.margin, s.reduced.strict(), s.reduced.margin);
  }
  Group phi("|Phi_k(1e4) - 1/sqrt(2 pi)|, k = 1..19", 1e-2);
  Group psi("|Psi_k(1e4) - e^{-k}|, k = 1..19", 1e-2);
  for (int k = 1; k <= 19; ++k) {
    const std::string w = "k=" + std::to_string(k);
    phi.within(w, std::exp(log_phi_k(1e4, k)) - 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-2);
    psi.within(w, std::exp(log_psi_k(1e4, k)) - std::exp(-static_cast<double>(k)), 1e-2);
  }
  r.checks = {q.done(), red.done(), phi.done(), psi.done()};
}

void c5_beckner(CriterionResult& r, const VerifyOptions& o) {
  Group eq("Gamma-ratio bound at l in {0,1}: |rhs - lhs| relative", 1e-10);
  Group strict("Gamma-ratio bound strict for 2 <= l <= 50, n <= 20", 0.0);
  for (const auto& d : dims_grid(20, o)) {
    for (int l = 0; l <= 50; ++l) {
      const auto v = beckner_gap(d, l);
      const std::string w = label(d) + " l=" + std::to_string(l);
      if (l <= 1)
        eq.within(w, v.margin / std::max(std::abs(v.lhs), std::abs(v.rhs)), 1e-10);
      else
        strict.add(w, v.margin, v.margin > 0.0, v.margin);
    }
  }
  r.checks = {eq.done(), strict.done()};
}

void c6_as3(CriterionResult& r, const VerifyOptions& o) {
  const FiberKind kinds[2] = {FiberKind::Sphere, FiberKind::ComplexProjective};
  const char* quantities[4] = {"a", "b", "c", "disc"};
  for (auto kind : kinds) {
    for (int qi = 0; qi < 4; ++qi) {
      Group g(std::string("m (exact - printed) bounded, m <= 1e4: ") + to_string(kind) + " " + quantities[qi], 2.0);
      for (int l = 2; l <= 8; ++l) {
        const auto chk = asymptotic_consistency(kind, l, LaplacianConvention::Printed, 10000)[static_cast<std::size_t>(qi)];
        g.add("l=" + std::to_string(l), chk.lateMax, chk.bounded, 2.0 * chk.earlyMax + 1e-9 - chk.lateMax);
      }
      r.checks.push_back(g.done());
    }
  }
  Group disc("discriminant > 0 for 1000 <= m <= 10000", 0.0);
  for (auto kind : kinds)
    for (int l = 2; l <= 8; ++l) {
      const auto v = as3_verdict(kind, l, 1000, 10000, LaplacianConvention::Printed, o.jobs);
      std::size_t bad = 0;
      for (const auto& row : v.rows) bad += row.discriminantPositive ? 0 : 1;
      disc.add(std::string(to_string(kind)) + " l=" + std::to_string(l), static_cast<double>(bad), bad == 0,
               -static_cast<double>(bad));
    }
  r.checks.push_back(disc.done());
  for (auto kind : kinds) {
    Group sign(std::string("root sign pattern at m = 1000 as expected: ") + to_string(kind) + " l = 2..10", 0.0);
    for (int l = 2; l <= 10; ++l) {
      const auto row = as3_verdict(kind, l, 1000, 1000).rows.at(0);
      const auto want = predicted_pattern(kind, l);
      sign.add("l=" + std::to_string(l) + " got " + to_string(row.pattern) + " want " + to_string(want),
               row.lambdaPlus.value_or(std::numeric_limits<double>::quiet_NaN()), row.pattern == want,
               row.pattern == want ? 0.0 : -1.0);
    }
    r.checks.push_back(sign.done());
  }
}

void c7_quartic(CriterionResult& r, const VerifyOptions& o) {
  Group e("|exponent - 4| on the degenerate family", 0.05);
  Group r2("r^2 > 0.9999 on the degenerate family", 0.9999);
  Group c("|exponent - 2| on the second-mode control", 0.05);
  for (const auto& d : pilot_dims()) {
    const auto grid = default_xi_grid();
    const auto fit = fit_exponent(degenerate_sequence(d, grid, o.jobs));
    e.within(label(d), fit.exponent - 4.0, 0.05);
    r2.add(label(d), fit.r2, fit.r2 > 0.9999, fit.r2 - 0.9999);
    const auto ctrl = fit_exponent(probe_sequence(d, grid, SequenceKind::SecondModeOnly, o.jobs));
    c.within(label(d), ctrl.exponent - 2.0, 0.05);
  }
  r.checks = {e.done(), r2.done(), c.done()};
}

void c8_quartic_constant(CriterionResult& r, const VerifyOptions& o) {
  Group pos("quartic constant c > 0, n <= 20", 0.0);
  Group ineq("alpha_{2,0} > (2 2* - 1)/(2* + 1) alpha_{1,0}, n <= 20", 0.0);
  for (const auto& d : dims_grid(20, o)) {
    const auto q = quartic_constant_c(d);
    pos.add(label(d), q.c, q.positive && q.c > 0.0, q.c);
    ineq.add(label(d), q.alphaIneq.margin, q.alphaIneq.strict(), q.alphaIneq.margin);
  }
  Group pl("|plateau of deficit/xi^4 / assembled constant - 1|", 0.1);
  for (const auto& d : pilot_dims()) {
    const auto rep = plateau_report(d, degenerate_sequence(d, default_xi_grid(), o.jobs));
    pl.within(label(d), rep.ratio - 1.0, 0.1);
  }
  r.checks = {pos.done(), ineq.done(), pl.done()};
}

void c9_first_variation(CriterionResult& r, const VerifyOptions& o) {
  Group fd("closed-form first variation vs central differences (h = 1e-5), relative", 1e-6);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> U(-0.2, 0.2);
  const Dims pool[] = {Dims(3, 1), Dims(5, 1), Dims(6, 2), Dims(7, 2), Dims(7, 3), Dims(9, 4)};
  for (int i = 0; i < 50; ++i) {
    const Dims& d = pool[static_cast<std::size_t>(i) % std::size(pool)];
    const double tau = solve_tau0(d).tau0;
    std::vector<double> a(4), b(4);
    for (auto& x : a) x = U(rng);
    for (auto& x : b) x = U(rng);
    const RadialFourierFunction u(d, tau, 1.0, a, b);
    fd.within(label(d) + " #" + std::to_string(i), gradient_check(u, 1e-5).maxRelativeError, 1e-6);
  }
  Group crit("max |DQ(1)|, n <= 20", 1e-8);
  for (const auto& d : dims_grid(20, o)) {
    const auto g = q_gradient(RadialFourierFunction::constant(d, solve_tau0(d).tau0, 1.0, 4));
    double worst = 0.0;
    for (double x : g) worst = std::max(worst, std::abs(x));
    crit.within(label(d), worst, 1e-8);
  }
  r.checks = {fd.done(), crit.done()};
}

void c10_expansion(CriterionResult& r, const VerifyOptions&) {
  Group rel("fourth-order expansion relative discrepancy, xi = 0.02, b = 0", 1e-2);
  Group order("discrepancy(xi = 0.02) / discrepancy(0.01), b = 1/2, in [12.8, 38.4]", 38.4);
  Group m4("|int phi^4 / (3 vol / 8) - 1|", 1e-12);
  Group m2("|(int phi^2)^2 / (vol^2 / 4) - 1|", 1e-12);
  for (const auto& d : pilot_dims()) {
    rel.within(label(d), frank3_expansion_check(d, 0.02, 0.0).relDiscrepancy, 1e-2);
    const double ratio = frank3_order_check(d, 0.02, 0.5).ratio;
    order.add(label(d), ratio, ratio >= 16 * 0.8 && ratio <= 32 * 1.2, std::min(ratio - 16 * 0.8, 32 * 1.2 - ratio));
    const auto pm = phi_moments(d);
    m4.within(label(d), pm.relErr4, 1e-12);
    m2.within(label(d), pm.relErr2, 1e-12);
  }
  r.checks = {rel.done(), order.done(), m4.done(), m2.done()};
}

void c11_greens(CriterionResult& r, const VerifyOptions& o) {
  Group pos("Green's kernel > 0 on random pairs", 0.0);
  Group sym("|G(x,y) - G(y,x)| / G(x,y)", 1e-12);
  Group tail("tail bound after adaptive truncation", 1e-10);
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> N01;
  const Dims pool[] = {Dims(5, 1), Dims(6, 2), Dims(7, 3), Dims(9, 4)};
  for (const auto& d : pool) {
    const double tau0 = solve_tau0(d).tau0;
    std::uniform_real_distribution<double> T(0.0, 2.0 * std::numbers::pi * tau0);
    auto sphere_point = [&] {
      std::vector<double> v(static_cast<std::size_t>(d.n()));
      double s = 0.0;
      for (auto& x : v) {
        x = N01(rng);
        s += x * x;
      }
      for (auto& x : v) x /= std::sqrt(s);
      return v;
    };
    std::vector<GreensPoint> pts, swapped;
    for (int i = 0; i < 250; ++i) {
      GreensPoint p{T(rng), sphere_point(), T(rng), sphere_point()};
      swapped.push_back({p.s, p.eta, p.t, p.omega});
      pts.push_back(std::move(p));
    }
    auto a = greens_kernel(d, tau0, pts, 1, 1e-13), b = greens_kernel(d, tau0, swapped, 1, 1e-13);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].value > 1e3) {
        a[i] = greens_kernel(d, tau0, {pts[i]}, a[i].terms, 1e-10 / a[i].value).at(0);
        b[i] = greens_kernel(d, tau0, {swapped[i]}, b[i].terms, 1e-10 / b[i].value).at(0);
      }
      const std::string w = label(d) + " #" + std::to_string(i);
      pos.add(w, a[i].value, a[i].value > 0.0, a[i].value);
      sym.within(w, (a[i].value - b[i].value) / a[i].value, 1e-12);
      tail.add(w, a[i].tailBound, a[i].tailBound <= 1e-10, 1e-10 - a[i].tailBound);
    }
  }
  r.checks = {pos.done(), sym.done(), tail.done()};
}

struct Spec {
  const char* title;
  double limit;
  Body body;
};

const Spec& spec_of(int id) {
  static const Spec specs[kCriterionCount] = {
      {"tau0 closed form for k = 1", 1.0, c1_tau0_closed_form},
      {"tau0 bounds", 5.0, c2_tau0_bounds},
      {"eigenvalue structure and kernel dimension", 10.0, c3_eigen_structure},
      {"strict binding against the sharp Sobolev constant", 5.0, c4_strict_binding},
      {"Gamma-ratio (Beckner) comparison", 10.0, c5_beckner},
      {"AS3 examples on Einstein products", 30.0, c6_as3},
      {"quartic sharpness of the stability exponent", 120.0, c7_quartic},
      {"quartic constant and plateau", 60.0, c8_quartic_constant},
      {"first variation and criticality", 30.0, c9_first_variation},
      {"fourth-order expansion", 10.0, c10_expansion},
      {"Green's kernel positivity and symmetry", 10.0, c11_greens},
  };
  if (id < 1 || id > kCriterionCount) throw DomainError("verify: criterion id must be in 1.." + std::to_string(kCriterionCount));
  return specs[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  const Spec& s = spec_of(id);
  CriterionResult r;
  r.id = id;
  r.title = s.title;
  r.runtimeLimit = s.limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    s.body(r, opts);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.withinRuntime = r.seconds <= r.runtimeLimit;
  r.pass = r.error.empty() && r.withinRuntime && !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const CheckLine& c) { return c.pass; });
  return r;
}

std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

}  // namespace qcurve
