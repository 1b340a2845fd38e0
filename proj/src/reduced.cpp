#include "eulerlab/reduced.hpp"

#include <cmath>

namespace eulerlab {

namespace {

void validate_grid(const Grid1D& grid) {
  if (grid.n < 8) throw ParamError("Grid1D needs n >= 8");
  if (!(grid.max > grid.min)) throw ParamError("Grid1D needs max > min");
}

/// Thomas sweep for a constant-coefficient tridiagonal (lower, diag, upper).
Eigen::ArrayXd tridiagonal_solve(double lower, double diag, double upper,
                                 Eigen::ArrayXd rhs) {
  const int n = static_cast<int>(rhs.size());
  Eigen::ArrayXd c_prime(n);
  c_prime[0] = upper / diag;
  rhs[0] /= diag;
  for (int i = 1; i < n; ++i) {
    const double m = diag - lower * c_prime[i - 1];
    c_prime[i] = upper / m;
    rhs[i] = (rhs[i] - lower * rhs[i - 1]) / m;
  }
  for (int i = n - 2; i >= 0; --i) rhs[i] -= c_prime[i] * rhs[i + 1];
  return rhs;
}

}  // namespace

Profile1D solve_v(const FuncBinding& f_rhs, double a, double b,
                  const Grid1D& grid, double left, double right) {
  validate_grid(grid);
  const double d = a * a + b * b;
  if (!(d > 0.0)) throw PreconditionError("solve_v needs A^2 + B^2 > 0");
  const double h = grid.spacing();
  const double w = d / (h * h);

  const int m = grid.n - 2;  // interior unknowns
  Eigen::ArrayXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = f_rhs(grid.node(i + 1), 0);
  rhs[0] += w * left;
  rhs[m - 1] += w * right;

  Eigen::ArrayXd interior = tridiagonal_solve(-w, 1.0 + 2.0 * w, -w, rhs);

  Profile1D out{grid, Eigen::ArrayXd(grid.n), 0.0};
  out.values[0] = left;
  out.values[grid.n - 1] = right;
  out.values.segment(1, m) = interior;
  return out;
}

Profile1D solve_w(const FuncBinding& g_rhs, double a, double b,
                  const Grid1D& grid, double left, double right) {
  validate_grid(grid);
  const double d = a * a + b * b;
  if (!(d > 0.0)) throw PreconditionError("solve_w needs A^2 + B^2 > 0");
  const double h = grid.spacing();

  // -W_{i-1} + 2 W_i - W_{i+1} = -h^2 G_i / D
  const int m = grid.n - 2;
  Eigen::ArrayXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = -h * h * g_rhs(grid.node(i + 1), 0) / d;
  rhs[0] += left;
  rhs[m - 1] += right;

  Eigen::ArrayXd interior = tridiagonal_solve(-1.0, 2.0, -1.0, rhs);

  Profile1D out{grid, Eigen::ArrayXd(grid.n), 0.0};
  out.values[0] = left;
  out.values[grid.n - 1] = right;
  out.values.segment(1, m) = interior;
  return out;
}

double discrete_residual_v(const Profile1D& v, const FuncBinding& f_rhs,
                           double d_coeff) {
  const double h = v.grid.spacing();
  double worst = 0.0;
  for (int i = 1; i + 1 < v.grid.n; ++i) {
    const double vss =
        (v.values[i + 1] - 2.0 * v.values[i] + v.values[i - 1]) / (h * h);
    worst = std::max(
        worst, std::abs(v.values[i] - d_coeff * vss - f_rhs(v.grid.node(i), 0)));
  }
  return worst;
}

double discrete_residual_w(const Profile1D& w, const FuncBinding& g_rhs,
                           double d_coeff) {
  const double h = w.grid.spacing();
  double worst = 0.0;
  for (int i = 1; i + 1 < w.grid.n; ++i) {
    const double wss =
        (w.values[i + 1] - 2.0 * w.values[i] + w.values[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(d_coeff * wss - g_rhs(w.grid.node(i), 0)));
  }
  return worst;
}

double power_exponent(double b) {
  if (b == 0.0) throw ParamError("power_exponent needs b != 0");
  return (b * b - 2.0 * b - 4.0) / (2.0 * b);
}

namespace {

SolutionPair profile_context(const std::string& name,
                             const Func2Binding& profile) {
  SolutionPair sp;
  sp.funcs2.emplace(name, profile);
  sp.label = "reduced-profile";
  return sp;
}

Expr prof(const std::string& name, int nr, int nt) {
  return opaque2(name, var_x(), var_t(), nr, nt);
}

}  // namespace

SamplePlan reduced_plan() {
  SamplePlan plan;
  plan.x_min = 0.25;
  plan.x_max = 2.5;
  plan.y_min = 0.0;
  plan.y_max = 0.0;
  plan.t_min = 0.3;
  plan.t_max = 2.0;
  plan.samples = 160;
  return plan;
}

ResidualSystem residual_q(const Func2Binding& q_profile) {
  const std::string name = unique_name("Q");
  const Expr r = var_x();
  const Expr t = var_t();
  TermSum eq{"reduced-Q",
             {square(r) * prof(name, 3, 0), -(2.0 * r * t * prof(name, 2, 1)),
              r * prof(name, 2, 0), -(2.0 * t * prof(name, 1, 1)),
              -(square(r) * prof(name, 1, 0)), 2.0 * r * t * prof(name, 0, 1),
              3.0 * prof(name, 1, 0)}};
  return {"reduced-Q", {std::move(eq)}, profile_context(name, q_profile)};
}

ResidualSystem residual_r(const Func2Binding& r_profile) {
  const std::string name = unique_name("R");
  const Expr r = var_x();
  const Expr t = var_t();
  TermSum eq{"reduced-R",
             {2.0 * r * t * prof(name, 2, 1), -(square(r) * prof(name, 3, 0)),
              2.0 * t * prof(name, 1, 1), -(r * prof(name, 2, 0)),
              5.0 * prof(name, 1, 0)}};
  return {"reduced-R", {std::move(eq)}, profile_context(name, r_profile)};
}

namespace {

void run_profile_check(const ResidualSystem& sys, const std::string& what,
                       double tol, const SamplePlan& plan) {
  ResidualReport report = check(sys, plan, tol);
  if (!report.pass)
    throw PreconditionError(what + " does not satisfy its reduced equation "
                                   "(linf " +
                            std::to_string(report.worst_linf()) + ")");
}

}  // namespace

void residual_q_check(const std::string& q_name, const Func2Binding& q,
                      double tol) {
  run_profile_check(residual_q(q), "profile '" + q_name + "'", tol,
                    reduced_plan());
}

void residual_r_check(const std::string& r_name, const Func2Binding& r,
                      double tol) {
  run_profile_check(residual_r(r), "profile '" + r_name + "'", tol,
                    reduced_plan());
}

void residual_v_check(const std::string& v_name, const Func2Binding& v,
                      const std::string& a_name, const FuncBinding& a,
                      const std::string& b_name, const FuncBinding& b,
                      double tol) {
  const std::string vn = unique_name("Vchk");
  SolutionPair ctx;
  ctx.funcs2.emplace(vn, v);
  ctx.funcs.emplace(a_name, a);
  ctx.funcs.emplace(b_name, b);
  const Expr d = square(opaque(a_name, var_t())) + square(opaque(b_name, var_t()));
  const Expr inner = prof(vn, 0, 0) - d * prof(vn, 2, 0);
  TermSum eq{"reduced-V", {diff(inner, Var::t)}};
  ResidualSystem sys{"reduced-V", {std::move(eq)}, std::move(ctx)};
  SamplePlan plan = reduced_plan();
  plan.x_min = -2.5;  // s may be signed
  run_profile_check(sys, "profile '" + v_name + "'", tol, plan);
}

void residual_w_check(const std::string& w_name, const Func2Binding& w,
                      const std::string& a_name, const FuncBinding& a,
                      const std::string& b_name, const FuncBinding& b,
                      double tol) {
  const std::string wn = unique_name("Wchk");
  SolutionPair ctx;
  ctx.funcs2.emplace(wn, w);
  ctx.funcs.emplace(a_name, a);
  ctx.funcs.emplace(b_name, b);
  const Expr d = square(opaque(a_name, var_t())) + square(opaque(b_name, var_t()));
  TermSum eq{"reduced-W", {diff(d * prof(wn, 2, 0), Var::t)}};
  ResidualSystem sys{"reduced-W", {std::move(eq)}, std::move(ctx)};
  SamplePlan plan = reduced_plan();
  plan.x_min = -2.5;  // s may be signed
  run_profile_check(sys, "profile '" + w_name + "'", tol, plan);
}

SolutionPair superpose(const SolutionPair& sp1, const SolutionPair& sp2,
                       double c1, double c2) {
  SolutionPair out;
  out.psi = sp1.fixed_psi + constant(c1) * (sp1.psi - sp1.fixed_psi) +
            constant(c2) * (sp2.psi - sp2.fixed_psi);
  out.phi = sp1.fixed_phi + constant(c1) * (sp1.phi - sp1.fixed_phi) +
            constant(c2) * (sp2.phi - sp2.fixed_phi);
  out.fixed_psi = sp1.fixed_psi;
  out.fixed_phi = sp1.fixed_phi;
  out.params = sp1.params;
  out.params.insert(sp2.params.begin(), sp2.params.end());
  out.funcs = sp1.funcs;
  out.funcs.insert(sp2.funcs.begin(), sp2.funcs.end());
  out.funcs2 = sp1.funcs2;
  out.funcs2.insert(sp2.funcs2.begin(), sp2.funcs2.end());
  out.exclusions = sp1.exclusions;
  out.exclusions.insert(out.exclusions.end(), sp2.exclusions.begin(),
                        sp2.exclusions.end());
  out.label = "superposition";
  return out;
}

ResidualReport superposition_check(const SolutionPair& sp1,
                                   const SolutionPair& sp2, double c1,
                                   double c2, const SamplePlan& plan,
                                   double tol) {
  if (!check(SystemForm::eu, sp1, plan, tol).pass)
    throw PreconditionError("superposition_check: first pair fails the system");
  if (!check(SystemForm::eu, sp2, plan, tol).pass)
    throw PreconditionError(
        "superposition_check: second pair fails the system");

  // Fixed parts must agree pointwise; sample the union of exclusions.
  SolutionPair merged = superpose(sp1, sp2, 1.0, 0.0);
  SamplePlan probe = plan;
  probe.samples = 24;
  for (const auto& p : sample_points(probe, merged)) {
    const EvalContext c_1 = sp1.context(p[0], p[1], p[2]);
    const EvalContext c_2 = sp2.context(p[0], p[1], p[2]);
    const double a1 = eval(sp1.fixed_psi, c_1), a2 = eval(sp2.fixed_psi, c_2);
    const double b1 = eval(sp1.fixed_phi, c_1), b2 = eval(sp2.fixed_phi, c_2);
    if (std::abs(a1 - a2) > 1e-8 * (1.0 + std::abs(a1)) ||
        std::abs(b1 - b2) > 1e-8 * (1.0 + std::abs(b1)))
      throw PreconditionError("superposition_check: mismatched fixed parts");
  }

  ResidualReport report =
      check(SystemForm::eu, superpose(sp1, sp2, c1, c2), plan, tol);
  report.checked = "superposed invariant pair against the full system";
  return report;
}

}  // namespace eulerlab
