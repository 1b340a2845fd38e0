#include "eulerlab/model.hpp"

#include <cmath>

#include "eulerlab/rng.hpp"
#include "parallel.hpp"

namespace eulerlab {

Exclusion exclude_near_origin(double radius) {
  return {"origin", [radius](double x, double y, double, double guard) {
            return std::hypot(x, y) < radius + guard;
          }};
}

Exclusion exclude_angle_cut(double band) {
  return {"angle-cut", [band](double x, double y, double, double guard) {
            const double theta = std::atan2(y, x);
            return M_PI - std::abs(theta) < band + guard;
          }};
}

Exclusion exclude_time_near(double t0, double band) {
  return {"time", [t0, band](double, double, double t, double guard) {
            return std::abs(t - t0) < band + guard;
          }};
}

bool SolutionPair::excluded(double x, double y, double t, double guard) const {
  for (const auto& e : exclusions)
    if (e.contains(x, y, t, guard)) return true;
  return false;
}

EvalContext SolutionPair::context(double x, double y, double t) const {
  EvalContext ctx;
  ctx.x = x;
  ctx.y = y;
  ctx.t = t;
  ctx.params = &params;
  ctx.funcs = &funcs;
  ctx.funcs2 = &funcs2;
  return ctx;
}

double SolutionPair::eval_psi(double x, double y, double t) const {
  return eval(psi, context(x, y, t));
}

double SolutionPair::eval_phi(double x, double y, double t) const {
  return eval(phi, context(x, y, t));
}

SolutionPair merge_bindings(SolutionPair base, const ParamMap& params,
                            const FuncMap& funcs, const Func2Map& funcs2) {
  base.params.insert(params.begin(), params.end());
  base.funcs.insert(funcs.begin(), funcs.end());
  base.funcs2.insert(funcs2.begin(), funcs2.end());
  return base;
}

std::vector<std::array<double, 3>> sample_points(const SamplePlan& plan,
                                                 const SolutionPair& sp) {
  if (plan.samples <= 0) throw ParamError("sample plan needs samples >= 1");
  Rng rng(plan.seed);
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(plan.samples));
  const long max_attempts = 200L * plan.samples + 1000;
  long attempts = 0;
  while (static_cast<int>(pts.size()) < plan.samples) {
    if (++attempts > max_attempts)
      throw PreconditionError(
          "sample plan box is incompatible with the pair's exclusions");
    const double x = rng.uniform(plan.x_min, plan.x_max);
    const double y = rng.uniform(plan.y_min, plan.y_max);
    const double t = rng.uniform(plan.t_min, plan.t_max);
    if (sp.excluded(x, y, t, plan.guard)) continue;
    pts.push_back({x, y, t});
  }
  return pts;
}

Expr TermSum::combined() const {
  Expr sum = constant(0.0);
  for (const Expr& term : terms) sum = sum + term;
  return sum;
}

std::pair<double, double> TermSum::eval_scaled(const EvalContext& ctx) const {
  double sum = 0.0;
  double scale = 0.0;
  for (const Expr& term : terms) {
    const double v = eval(term, ctx);
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  return {sum, scale};
}

std::string form_name(SystemForm f) {
  switch (f) {
    case SystemForm::eu:
      return "eu";
    case SystemForm::divergence:
      return "div";
    case SystemForm::truncated:
      return "trunc";
    case SystemForm::psys:
      return "psys";
    case SystemForm::pdp:
      return "pdp";
    case SystemForm::ab:
      return "ab";
  }
  return "?";
}

SystemForm form_from_name(const std::string& name) {
  if (name == "eu") return SystemForm::eu;
  if (name == "div") return SystemForm::divergence;
  if (name == "trunc") return SystemForm::truncated;
  if (name == "psys") return SystemForm::psys;
  if (name == "pdp") return SystemForm::pdp;
  if (name == "ab") return SystemForm::ab;
  throw ParamError("unknown residual form '" + name + "'");
}

namespace {

// Bracket split into its two products, so each enters the term scale.
void push_bracket(std::vector<Expr>& terms, const Expr& f, const Expr& g) {
  terms.push_back(diff(f, Var::x) * diff(g, Var::y));
  terms.push_back(-(diff(g, Var::x) * diff(f, Var::y)));
}

TermSum advected_equation(const std::string& name, const Expr& stream,
                          const Expr& advected) {
  TermSum eq{name, {}};
  eq.terms.push_back(diff(advected, Var::t));
  push_bracket(eq.terms, stream, advected);
  return eq;
}

}  // namespace

ResidualSystem residual_eu(const SolutionPair& sp) {
  const Expr gp = sp.psi - laplacian(sp.psi) + laplacian(sp.phi);
  const Expr gm = sp.psi - laplacian(sp.psi) - laplacian(sp.phi);
  ResidualSystem sys{form_name(SystemForm::eu),
                     {advected_equation("R1", sp.phi + sp.psi, gp),
                      advected_equation("R2", sp.phi - sp.psi, gm)},
                     sp};
  return sys;
}

FluxSet flux_components(const SolutionPair& sp) {
  const Expr psi = sp.psi;
  const Expr phi = sp.phi;
  const Expr lpsi = laplacian(psi);
  const Expr lphi = laplacian(phi);
  const Expr psi_x = diff(psi, Var::x), psi_y = diff(psi, Var::y);
  const Expr phi_x = diff(phi, Var::x), phi_y = diff(phi, Var::y);
  FluxSet f;
  f.j0 = lpsi - psi;
  f.jx = psi_y * lphi - phi_y * lpsi + psi * phi_y;
  f.jy = phi_x * lpsi - psi_x * lphi - psi * phi_x;
  f.k0 = lphi;
  f.kx = psi_y * lpsi - phi_y * lphi;
  f.ky = phi_x * lphi - psi_x * lpsi;
  return f;
}

ResidualSystem residual_div(const SolutionPair& sp) {
  const FluxSet f = flux_components(sp);
  TermSum d1{"D1",
             {diff(f.j0, Var::t), diff(f.jx, Var::x), diff(f.jy, Var::y)}};
  TermSum d2{"D2",
             {diff(f.k0, Var::t), diff(f.kx, Var::x), diff(f.ky, Var::y)}};
  return {form_name(SystemForm::divergence), {std::move(d1), std::move(d2)}, sp};
}

ResidualSystem residual_truncated(const SolutionPair& sp) {
  const Expr m = sp.psi - laplacian(sp.psi);
  const Expr n = laplacian(sp.phi);
  return {form_name(SystemForm::truncated),
          {advected_equation("T1", sp.phi, m),
           advected_equation("T2", sp.phi, n)},
          sp};
}

ResidualSystem constraints_partial(const SolutionPair& sp) {
  TermSum pdp{"pdp", {}};
  push_bracket(pdp.terms, sp.psi, laplacian(sp.psi));
  TermSum pdphi{"pdphi", {}};
  push_bracket(pdphi.terms, sp.psi, laplacian(sp.phi));
  return {form_name(SystemForm::pdp), {std::move(pdp), std::move(pdphi)}, sp};
}

ResidualSystem residual_psys(const SolutionPair& sp) {
  const Expr m = sp.psi - laplacian(sp.psi);
  const Expr n = laplacian(sp.phi);
  TermSum p1{"P1", {diff(m, Var::t)}};
  push_bracket(p1.terms, sp.phi, m);
  push_bracket(p1.terms, sp.psi, n);
  TermSum p2 = advected_equation("P2", sp.phi, n);
  TermSum p3{"P3", {}};
  push_bracket(p3.terms, sp.psi, laplacian(sp.psi));
  return {form_name(SystemForm::psys),
          {std::move(p1), std::move(p2), std::move(p3)},
          sp};
}

ResidualSystem residual_ab(const SolutionPair& sp, const FuncBinding& a_of_psi,
                           const FuncBinding& b_of_psi) {
  ResidualSystem sys{form_name(SystemForm::ab), {}, sp};
  TermSum evol{"evolution", {diff(sp.psi, Var::t)}};
  push_bracket(evol.terms, -sp.psi, sp.phi);  // -[psi, phi]
  sys.equations.push_back(std::move(evol));
  if (a_of_psi.valid()) {
    const std::string name = unique_name("A");
    sys.context.funcs.emplace(name, a_of_psi);
    sys.equations.push_back(
        {"psi-closure", {laplacian(sp.psi), -opaque(name, sp.psi)}});
  }
  if (b_of_psi.valid()) {
    const std::string name = unique_name("B");
    sys.context.funcs.emplace(name, b_of_psi);
    sys.equations.push_back(
        {"phi-closure", {laplacian(sp.phi), -opaque(name, sp.psi)}});
  }
  return sys;
}

double ResidualReport::worst_linf() const {
  double w = 0.0;
  for (const auto& eq : equations) w = std::max(w, eq.linf);
  return w;
}

ResidualReport check(const ResidualSystem& system, const SamplePlan& plan,
                     double tol) {
  const auto points = sample_points(plan, system.context);
  const std::size_t n_pts = points.size();
  const std::size_t n_eq = system.equations.size();

  // scaled residual per (equation, point); assembled deterministically
  std::vector<std::vector<double>> scaled(n_eq,
                                          std::vector<double>(n_pts, 0.0));
  std::vector<int> bad_point(n_pts, -1);

  detail::parallel_for(n_pts, [&](std::size_t i) {
    const auto& p = points[i];
    const EvalContext ctx = system.context.context(p[0], p[1], p[2]);
    for (std::size_t e = 0; e < n_eq; ++e) {
      const auto [sum, scale] = system.equations[e].eval_scaled(ctx);
      if (!std::isfinite(sum) || !std::isfinite(scale)) {
        bad_point[i] = static_cast<int>(e);
        return;
      }
      scaled[e][i] = std::abs(sum) / (1.0 + scale);
    }
  });

  for (std::size_t i = 0; i < n_pts; ++i)
    if (bad_point[i] >= 0)
      throw SingularEvalError(
          "evaluation singular in equation '" +
              system.equations[static_cast<std::size_t>(bad_point[i])].name +
              "' of form '" + system.form + "'",
          points[i]);

  ResidualReport report;
  report.form = system.form;
  report.checked = "residual form '" + system.form + "' at " +
                   std::to_string(n_pts) + " sampled points";
  report.samples = static_cast<int>(n_pts);
  report.tol = tol;
  report.pass = true;
  for (std::size_t e = 0; e < n_eq; ++e) {
    EquationStats stats;
    stats.name = system.equations[e].name;
    double sq = 0.0;
    for (std::size_t i = 0; i < n_pts; ++i) {
      const double v = scaled[e][i];
      sq += v * v;
      if (v > stats.linf) {
        stats.linf = v;
        stats.worst_point = points[i];
      }
    }
    stats.l2 = std::sqrt(sq / static_cast<double>(n_pts));
    if (stats.linf > tol) report.pass = false;
    report.equations.push_back(std::move(stats));
  }
  return report;
}

ResidualReport check(SystemForm form, const SolutionPair& sp,
                     const SamplePlan& plan, double tol) {
  switch (form) {
    case SystemForm::eu:
      return check(residual_eu(sp), plan, tol);
    case SystemForm::divergence:
      return check(residual_div(sp), plan, tol);
    case SystemForm::truncated:
      return check(residual_truncated(sp), plan, tol);
    case SystemForm::psys:
      return check(residual_psys(sp), plan, tol);
    case SystemForm::pdp:
      return check(constraints_partial(sp), plan, tol);
    case SystemForm::ab:
      throw ParamError(
          "form 'ab' needs the two closures supplied; use check_ab()");
  }
  throw ParamError("unknown residual form");
}

ResidualReport check_ab(const SolutionPair& sp, const FuncBinding& a_of_psi,
                        const FuncBinding& b_of_psi, const SamplePlan& plan,
                        double tol) {
  return check(residual_ab(sp, a_of_psi, b_of_psi), plan, tol);
}

}  // namespace eulerlab
