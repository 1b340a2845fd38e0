#include "eulerlab/generators.hpp"

#include <cmath>
#include <utility>

namespace eulerlab {

namespace {

const std::vector<std::string> kDerivativeLeaves = {
    formal::psi_x, formal::psi_y, formal::phi_x, formal::phi_y};

Expr quad_r2_half() {
  return (square(var_x()) + square(var_y())) / 2.0;
}

}  // namespace

void Generator::validate() const {
  if (kind == GeneratorKind::point) {
    for (const Expr* comp : {&xi, &eta, &tau, &zeta_psi, &zeta_phi})
      if (references_param(*comp, kDerivativeLeaves))
        throw PreconditionError("point generator '" + name +
                                "' references field derivatives");
  }
}

Generator translation_x() {
  Generator g{"Tx", constant(1.0), constant(0.0), constant(0.0),
              constant(0.0), constant(0.0)};
  return g;
}

Generator translation_y() {
  Generator g{"Ty", constant(0.0), constant(1.0), constant(0.0),
              constant(0.0), constant(0.0)};
  return g;
}

Generator translation_t() {
  Generator g{"Tt", constant(0.0), constant(0.0), constant(1.0),
              constant(0.0), constant(0.0)};
  return g;
}

Generator rotation() {
  Generator g{"Rot", var_y(), -var_x(), constant(0.0), constant(0.0),
              constant(0.0)};
  return g;
}

Generator psi_shift() {
  Generator g{"PsiShift", constant(0.0), constant(0.0), constant(0.0),
              constant(1.0), constant(0.0)};
  return g;
}

Generator phi_shift(FuncBinding q) {
  if (!q.valid()) throw ParamError("PhiShift needs a bound q(t)");
  const std::string qn = unique_name("q");
  Generator g{"PhiShift", constant(0.0), constant(0.0), constant(0.0),
              constant(0.0), opaque(qn, var_t())};
  g.funcs.emplace(qn, std::move(q));
  return g;
}

Generator x1(FuncBinding a, FuncBinding b) {
  if (!a.valid() || !b.valid()) throw ParamError("X1 needs bound A(t), B(t)");
  if (a.max_order() < 1 || b.max_order() < 1)
    throw ParamError("X1 needs at least first derivatives of A, B");
  const std::string an = unique_name("A");
  const std::string bn = unique_name("B");
  Generator g{"X1",
              opaque(an, var_t()),
              opaque(bn, var_t()),
              constant(0.0),
              constant(0.0),
              var_x() * opaque(bn, var_t(), 1) - var_y() * opaque(an, var_t(), 1)};
  g.funcs.emplace(an, std::move(a));
  g.funcs.emplace(bn, std::move(b));
  return g;
}

Generator x2() {
  Generator g{"X2",          -(var_t() * var_y()), var_t() * var_x(),
              constant(0.0), constant(0.0),        quad_r2_half()};
  return g;
}

Generator x_ab(double a, double b) {
  if (a == 0.0 && b == 0.0) throw ParamError("Xab needs (a, b) != (0, 0)");
  Generator g{"Xab",
              -(var_t() * var_y()),
              var_t() * var_x(),
              constant(0.0),
              constant(a) * quad_r2_half(),
              constant(b) * quad_r2_half()};
  g.params.emplace("a", a);
  g.params.emplace("b", b);
  return g;
}

Generator x_pp() {
  Generator g{"Xpp",          constant(0.0), constant(0.0),
              constant(0.0),  param(formal::psi), constant(0.0)};
  return g;
}

Generator x3() {
  Generator g{"X3",
              constant(0.0),
              constant(0.0),
              constant(0.0),
              param(formal::psi_y),
              param(formal::phi_x),
              GeneratorKind::generalized};
  return g;
}

namespace {

double required(const ParamMap& params, const std::string& key,
                const std::string& who) {
  auto it = params.find(key);
  if (it == params.end())
    throw ParamError("generator " + who + " needs parameter '" + key + "'");
  return it->second;
}

FuncBinding required_func(const FuncMap& funcs, const std::string& key,
                          const std::string& who) {
  auto it = funcs.find(key);
  if (it == funcs.end())
    throw ParamError("generator " + who + " needs function '" + key + "'");
  return it->second;
}

}  // namespace

Generator builtin(const std::string& name, const ParamMap& params,
                  const FuncMap& funcs) {
  if (name == "Tx") return translation_x();
  if (name == "Ty") return translation_y();
  if (name == "Tt") return translation_t();
  if (name == "Rot") return rotation();
  if (name == "PsiShift") return psi_shift();
  if (name == "PhiShift") return phi_shift(required_func(funcs, "q", name));
  if (name == "X1")
    return x1(required_func(funcs, "A", name), required_func(funcs, "B", name));
  if (name == "X2") return x2();
  if (name == "Xab")
    return x_ab(required(params, "a", name), required(params, "b", name));
  if (name == "Xpp") return x_pp();
  if (name == "X3") return x3();
  throw UnknownIdError("unknown generator '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"Tx", "Ty", "Tt",  "Rot", "PsiShift", "PhiShift",
          "X1", "X2", "Xab", "Xpp", "X3"};
}

Characteristic characteristic(const Generator& g, const SolutionPair& sp) {
  g.validate();
  Substitution sub;
  sub.params.emplace(formal::psi, sp.psi);
  sub.params.emplace(formal::phi, sp.phi);
  sub.params.emplace(formal::psi_x, diff(sp.psi, Var::x));
  sub.params.emplace(formal::psi_y, diff(sp.psi, Var::y));
  sub.params.emplace(formal::phi_x, diff(sp.phi, Var::x));
  sub.params.emplace(formal::phi_y, diff(sp.phi, Var::y));

  auto evolutionary = [&](const Expr& zeta, const Expr& field) {
    return substitute(zeta, sub) - g.xi * diff(field, Var::x) -
           g.eta * diff(field, Var::y) - g.tau * diff(field, Var::t);
  };
  return {evolutionary(g.zeta_psi, sp.psi), evolutionary(g.zeta_phi, sp.phi)};
}

namespace {

// Directional linearization of the advective residual d_t(G) + [S, G] at
// (psi, phi) in direction (u, v): d_t(dG) + [dS, G] + [S, dG].
TermSum linearized_advected(const std::string& name, const Expr& stream,
                            const Expr& advected, const Expr& d_stream,
                            const Expr& d_advected) {
  TermSum eq{name, {diff(d_advected, Var::t)}};
  eq.terms.push_back(diff(d_stream, Var::x) * diff(advected, Var::y));
  eq.terms.push_back(-(diff(advected, Var::x) * diff(d_stream, Var::y)));
  eq.terms.push_back(diff(stream, Var::x) * diff(d_advected, Var::y));
  eq.terms.push_back(-(diff(d_advected, Var::x) * diff(stream, Var::y)));
  return eq;
}

ResidualSystem linearized_system(const Generator& g, const SolutionPair& sp,
                                 SystemForm base) {
  const Characteristic q = characteristic(g, sp);
  const Expr& u = q.q_psi;
  const Expr& v = q.q_phi;

  SolutionPair ctx = merge_bindings(sp, g.params, g.funcs);
  ResidualSystem sys{"symmetry(" + form_name(base) + ")", {}, std::move(ctx)};

  if (base == SystemForm::eu) {
    const Expr gp = sp.psi - laplacian(sp.psi) + laplacian(sp.phi);
    const Expr gm = sp.psi - laplacian(sp.psi) - laplacian(sp.phi);
    const Expr du_p = u - laplacian(u) + laplacian(v);
    const Expr du_m = u - laplacian(u) - laplacian(v);
    sys.equations.push_back(
        linearized_advected("dR1", sp.phi + sp.psi, gp, v + u, du_p));
    sys.equations.push_back(
        linearized_advected("dR2", sp.phi - sp.psi, gm, v - u, du_m));
  } else if (base == SystemForm::truncated) {
    const Expr m = sp.psi - laplacian(sp.psi);
    const Expr n = laplacian(sp.phi);
    sys.equations.push_back(
        linearized_advected("dT1", sp.phi, m, v, u - laplacian(u)));
    sys.equations.push_back(
        linearized_advected("dT2", sp.phi, n, v, laplacian(v)));
  } else {
    throw ParamError("symmetry_check supports the eu and truncated forms");
  }
  return sys;
}

}  // namespace

ResidualReport symmetry_check(const Generator& g, const SolutionPair& sp,
                              const SamplePlan& plan, double tol,
                              SystemForm base) {
  // The condition is on-shell only: require the pair to solve the base form.
  ResidualReport base_report = check(base, sp, plan, tol);
  if (!base_report.pass)
    throw PreconditionError("symmetry_check: pair does not solve form '" +
                            form_name(base) + "' (linf " +
                            std::to_string(base_report.worst_linf()) + ")");
  ResidualReport report = check(linearized_system(g, sp, base), plan, tol);
  report.generator = g.name;
  report.checked =
      "linearized '" + form_name(base) +
      "' residual along the characteristic of " + g.name;
  return report;
}

ResidualReport invariance_check(const Generator& g, const SolutionPair& sp,
                                const SamplePlan& plan, double tol) {
  g.validate();
  Substitution sub;
  sub.params.emplace(formal::psi, sp.psi);
  sub.params.emplace(formal::phi, sp.phi);
  sub.params.emplace(formal::psi_x, diff(sp.psi, Var::x));
  sub.params.emplace(formal::psi_y, diff(sp.psi, Var::y));
  sub.params.emplace(formal::phi_x, diff(sp.phi, Var::x));
  sub.params.emplace(formal::phi_y, diff(sp.phi, Var::y));

  // Keep the components as separate terms so the scale is honest.
  auto terms_of = [&](const Expr& zeta, const Expr& field) {
    return std::vector<Expr>{substitute(zeta, sub),
                             -(g.xi * diff(field, Var::x)),
                             -(g.eta * diff(field, Var::y)),
                             -(g.tau * diff(field, Var::t))};
  };
  ResidualSystem sys{"invariance",
                     {TermSum{"Q_psi", terms_of(g.zeta_psi, sp.psi)},
                      TermSum{"Q_phi", terms_of(g.zeta_phi, sp.phi)}},
                     merge_bindings(sp, g.params, g.funcs)};
  ResidualReport report = check(sys, plan, tol);
  report.generator = g.name;
  report.checked = "evolutionary-form components of " + g.name +
                   " on the candidate pair";
  return report;
}

SolutionPair orbit_x1(const SolutionPair& sp, FuncBinding a, FuncBinding b) {
  if (!a.valid() || !b.valid())
    throw ParamError("orbit_x1 needs bound A(t), B(t)");
  if (a.max_order() < 1 || b.max_order() < 1)
    throw PreconditionError("orbit_x1 needs first derivatives of A and B");

  const std::string an = unique_name("A");
  const std::string bn = unique_name("B");
  const Expr at = opaque(an, var_t());
  const Expr bt = opaque(bn, var_t());
  const Expr at1 = opaque(an, var_t(), 1);
  const Expr bt1 = opaque(bn, var_t(), 1);

  Substitution shift;
  shift.vars.emplace(Var::x, var_x() - at);
  shift.vars.emplace(Var::y, var_y() - bt);

  SolutionPair out = sp;
  out.psi = substitute(sp.psi, shift);
  out.phi = var_x() * bt1 - var_y() * at1 - (at * bt1 - at1 * bt) / 2.0 +
            substitute(sp.phi, shift);
  out.fixed_psi = substitute(sp.fixed_psi, shift);
  out.fixed_phi = var_x() * bt1 - var_y() * at1 - (at * bt1 - at1 * bt) / 2.0 +
                  substitute(sp.fixed_phi, shift);
  out.funcs.emplace(an, a);
  out.funcs.emplace(bn, b);
  out.label = sp.label.empty() ? "x1-orbit" : sp.label + " (x1 orbit)";

  // Exclusions move with the frame: a point is bad if its pre-image was.
  out.exclusions.clear();
  for (const auto& ex : sp.exclusions) {
    out.exclusions.push_back(
        {ex.label + " (shifted)",
         [inner = ex.contains, a, b](double x, double y, double t,
                                     double guard) {
           return inner(x - a(t, 0), y - b(t, 0), t, guard);
         }});
  }
  return out;
}

namespace {

SolutionPair rotated_image(const SolutionPair& sp, double lambda) {
  const Expr c = cos(constant(lambda) * var_t());
  const Expr s = sin(constant(lambda) * var_t());
  Substitution rot;
  rot.vars.emplace(Var::x, var_x() * c + var_y() * s);
  rot.vars.emplace(Var::y, -(var_x() * s) + var_y() * c);

  SolutionPair out = sp;
  out.psi = substitute(sp.psi, rot);
  out.phi = substitute(sp.phi, rot);
  out.fixed_psi = substitute(sp.fixed_psi, rot);
  out.fixed_phi = substitute(sp.fixed_phi, rot);
  out.exclusions.clear();
  for (const auto& ex : sp.exclusions) {
    out.exclusions.push_back(
        {ex.label + " (rotated)",
         [inner = ex.contains, lambda](double x, double y, double t,
                                       double guard) {
           const double cv = std::cos(lambda * t);
           const double sv = std::sin(lambda * t);
           return inner(x * cv + y * sv, -x * sv + y * cv, t, guard);
         }});
  }
  return out;
}

}  // namespace

SolutionPair xab_image_unchecked(const SolutionPair& sp, double a, double b,
                                 double lambda) {
  SolutionPair out = rotated_image(sp, lambda);
  const Expr quad = constant(lambda) * quad_r2_half();
  out.psi = out.psi + constant(a) * quad;
  out.phi = out.phi + constant(b) * quad;
  out.fixed_psi = out.fixed_psi + constant(a) * quad;
  out.fixed_phi = out.fixed_phi + constant(b) * quad;
  return out;
}

SolutionPair orbit_x2(const SolutionPair& sp, double lambda) {
  SolutionPair out = xab_image_unchecked(sp, 0.0, 1.0, lambda);
  out.label = sp.label.empty() ? "x2-orbit" : sp.label + " (x2 orbit)";
  return out;
}

ResidualSystem partial_constraint_xab(const SolutionPair& sp, double a,
                                      double b) {
  auto angular = [](const Expr& f) {
    return var_y() * diff(f, Var::x) - var_x() * diff(f, Var::y);
  };
  const Expr lpsi = laplacian(sp.psi);
  const Expr lphi = laplacian(sp.phi);
  TermSum c1{"C1",
             {angular(constant(1.0 - b) * (sp.psi - lpsi)),
              angular(constant(a) * (sp.phi - lphi))}};
  TermSum c2{"C2",
             {angular(constant(a) * lpsi),
              angular(constant(1.0 - b) * lphi)}};
  return {"xab-constraints", {std::move(c1), std::move(c2)}, sp};
}

SolutionPair orbit_xab(const SolutionPair& sp, double a, double b,
                       double lambda, const SamplePlan& plan, double tol) {
  if (a == 0.0 && b == 0.0) throw ParamError("orbit_xab needs (a,b) != (0,0)");
  ResidualReport eu = check(SystemForm::eu, sp, plan, tol);
  if (!eu.pass)
    throw PreconditionError("orbit_xab: input pair does not solve the system");
  ResidualReport gate = check(partial_constraint_xab(sp, a, b), plan, tol);
  if (!gate.pass)
    throw PreconditionError(
        "orbit_xab: rotational constraints violated for (a=" +
        std::to_string(a) + ", b=" + std::to_string(b) +
        "); worst linf " + std::to_string(gate.worst_linf()));
  SolutionPair out = xab_image_unchecked(sp, a, b, lambda);
  out.label = sp.label.empty() ? "xab-orbit" : sp.label + " (xab orbit)";
  return out;
}

SolutionPair orbit_phi_shift(const SolutionPair& sp, FuncBinding q) {
  if (!q.valid()) throw ParamError("orbit_phi_shift needs a bound q(t)");
  const std::string qn = unique_name("q");
  SolutionPair out = sp;
  out.phi = sp.phi + opaque(qn, var_t());
  out.fixed_phi = sp.fixed_phi + opaque(qn, var_t());
  out.funcs.emplace(qn, std::move(q));
  return out;
}

SolutionPair orbit_scale_psi(const SolutionPair& sp, double lambda,
                             const SamplePlan& plan, double tol) {
  ResidualReport eu = check(SystemForm::eu, sp, plan, tol);
  if (!eu.pass)
    throw PreconditionError(
        "orbit_scale_psi: input pair does not solve the system");
  // Eligibility is the vanishing self-bracket of psi with its Laplacian.
  ResidualSystem constraints = constraints_partial(sp);
  constraints.equations.resize(1);  // [psi, lap psi] only
  ResidualReport gate = check(constraints, plan, tol);
  if (!gate.pass)
    throw PreconditionError(
        "orbit_scale_psi: [psi, lap psi] != 0 on samples (linf " +
        std::to_string(gate.worst_linf()) + ")");
  SolutionPair out = sp;
  out.psi = constant(lambda) * sp.psi;
  out.fixed_psi = constant(lambda) * sp.fixed_psi;
  out.label = sp.label.empty() ? "scaled" : sp.label + " (psi scaled)";
  return out;
}

}  // namespace eulerlab
