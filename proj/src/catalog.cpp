#include "eulerlab/catalog.hpp"

#include <cmath>
#include <sstream>

#include "eulerlab/reduced.hpp"

namespace eulerlab {

namespace {

Expr radius_expr() { return sqrt(square(var_x()) + square(var_y())); }
Expr angle_expr() { return atan2(var_y(), var_x()); }

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

SolutionPair x1_invariant(const Func2Binding& v_profile,
                          const Func2Binding& w_profile, FuncBinding a,
                          FuncBinding b) {
  if (!a.valid() || !b.valid() || !v_profile.valid() || !w_profile.valid())
    throw ParamError("x1_invariant needs bound V, W, A, B");
  if (a.max_order() < 1 || b.max_order() < 1)
    throw PreconditionError("x1_invariant needs first derivatives of A, B");

  // Degeneracy scan of A^2 + B^2 over the verification t-range.
  for (int i = 0; i <= 64; ++i) {
    const double t = 0.05 + (2.1 - 0.05) * i / 64.0;
    const double av = a(t, 0), bv = b(t, 0);
    require(av * av + bv * bv > 1e-12,
            "x1_invariant: A^2 + B^2 vanishes near t = " + std::to_string(t));
  }

  const std::string an = unique_name("A");
  const std::string bn = unique_name("B");
  const std::string vn = unique_name("V");
  const std::string wn = unique_name("W");

  residual_v_check(vn, v_profile, an, a, bn, b);
  residual_w_check(wn, w_profile, an, a, bn, b);

  const Expr at = opaque(an, var_t());
  const Expr bt = opaque(bn, var_t());
  const Expr at1 = opaque(an, var_t(), 1);
  const Expr bt1 = opaque(bn, var_t(), 1);
  const Expr s = bt * var_x() - at * var_y();

  const Expr denom = square(at) + square(bt);
  const Expr quad = ((at1 * bt + at * bt1) * (square(var_x()) - square(var_y())) -
                     2.0 * var_x() * var_y() * (at * at1 - bt * bt1)) /
                    (2.0 * denom);

  SolutionPair sp;
  sp.psi = opaque2(vn, s, var_t());
  sp.phi = quad + opaque2(wn, s, var_t());
  sp.fixed_psi = constant(0.0);
  sp.fixed_phi = quad;
  sp.funcs.emplace(an, std::move(a));
  sp.funcs.emplace(bn, std::move(b));
  sp.funcs2.emplace(vn, v_profile);
  sp.funcs2.emplace(wn, w_profile);
  sp.label = "x1-invariant";
  return sp;
}

SolutionPair x2_invariant(const Func2Binding& q_profile,
                          const Func2Binding& r_profile) {
  if (!q_profile.valid() || !r_profile.valid())
    throw ParamError("x2_invariant needs bound Q, R");

  const std::string qn = unique_name("Q");
  const std::string rn = unique_name("R");
  residual_q_check(qn, q_profile);
  residual_r_check(rn, r_profile);

  const Expr r = radius_expr();
  const Expr spiral = square(r) * angle_expr() / (2.0 * var_t());

  SolutionPair sp;
  sp.psi = opaque2(qn, r, var_t());
  sp.phi = spiral + opaque2(rn, r, var_t());
  sp.fixed_psi = constant(0.0);
  sp.fixed_phi = spiral;
  sp.funcs2.emplace(qn, q_profile);
  sp.funcs2.emplace(rn, r_profile);
  sp.exclusions = {exclude_near_origin(0.05), exclude_angle_cut(0.05),
                   exclude_time_near(0.0, 0.05)};
  sp.label = "x2-invariant";
  return sp;
}

SolutionPair conditional_family(ConditionalFamily family,
                                const ConditionalParams& p, FuncBinding gamma,
                                FuncBinding t_shift, FuncBinding t1_shift) {
  if (!gamma.valid() || !t_shift.valid())
    throw ParamError("conditional_family needs bound gamma(t), T(t)");
  if (gamma.max_order() < 1)
    throw ParamError("conditional_family needs gamma'(t)");
  if (std::abs(p.sign1) != 1.0 || std::abs(p.sign2) != 1.0)
    throw ParamError("sign parameters must be +1 or -1");

  const std::string gn = unique_name("gamma");
  const std::string tn = unique_name("T");
  const Expr g0 = opaque(gn, var_t());
  const Expr g1 = opaque(gn, var_t(), 1);
  const Expr tt = opaque(tn, var_t());

  SolutionPair sp;
  sp.funcs.emplace(gn, std::move(gamma));
  sp.funcs.emplace(tn, std::move(t_shift));

  const Expr wave_arg = var_x() - g0;
  switch (family) {
    case ConditionalFamily::sin_exp: {
      const double root = std::sqrt(1.0 + p.k * p.k);
      sp.psi = sin(constant(p.k) * wave_arg + constant(p.phase)) + p.c0;
      sp.phi = exp(constant(p.sign2 * root) * var_y()) - g1 * var_y() + tt;
      sp.label = "cond_sin_exp";
      break;
    }
    case ConditionalFamily::exp_sin: {
      const double root = std::sqrt(1.0 + p.k * p.k);
      sp.psi = exp(constant(p.sign1 * root) * wave_arg) + p.c0;
      sp.phi = sin(constant(p.k) * var_y() + constant(p.phase)) -
               g1 * var_y() + tt;
      sp.label = "cond_exp_sin";
      break;
    }
    case ConditionalFamily::exp_exp_kappa: {
      if (std::abs(p.k) >= 1.0)
        throw ParamError("exp_exp_kappa needs |kappa| < 1");
      const double root = std::sqrt(1.0 - p.k * p.k);
      sp.psi = exp(constant(p.sign1 * root) * wave_arg) + p.c0;
      sp.phi = exp(constant(p.sign2 * p.k) * var_y()) - g1 * var_y() + tt;
      sp.label = "cond_exp_exp_kappa";
      break;
    }
    case ConditionalFamily::exp_parab: {
      if (!t1_shift.valid()) throw ParamError("exp_parab needs bound T1(t)");
      const std::string t1n = unique_name("T1");
      sp.funcs.emplace(t1n, std::move(t1_shift));
      sp.psi = g0 * exp(constant(p.sign1) * var_x()) + p.c0;
      sp.phi = constant(p.k) * square(var_y()) +
               var_y() * opaque(t1n, var_t()) + tt;
      sp.label = "cond_exp_parab";
      break;
    }
    case ConditionalFamily::lin_exp: {
      if (p.k == 0.0) throw ParamError("lin_exp needs k != 0");
      sp.psi = g0 + constant(p.k) * var_x();
      sp.phi = exp(constant(p.sign2) * var_y()) + g1 * var_y() / p.k;
      sp.label = "cond_lin_exp";
      break;
    }
  }
  return sp;
}

SolutionPair static_pair(FuncBinding f, FuncBinding g, Var v) {
  if (!f.valid() || !g.valid()) throw ParamError("static_pair needs bound f, g");
  if (v == Var::t) throw ParamError("static_pair needs a spatial variable");
  if (f.max_order() < 2 || g.max_order() < 2)
    throw PreconditionError("static_pair needs twice-differentiable f, g");
  const std::string fn = unique_name("f");
  const std::string gn = unique_name("g");
  SolutionPair sp;
  sp.psi = opaque(fn, var(v));
  sp.phi = opaque(gn, var(v));
  sp.funcs.emplace(fn, std::move(f));
  sp.funcs.emplace(gn, std::move(g));
  sp.label = "static";
  return sp;
}

SolutionPair xab_example() {
  SolutionPair sp;
  sp.psi = 3.0 * square(var_x()) + square(var_y());
  sp.phi = exp(-var_x());
  sp.label = "xab_example";
  return sp;
}

SolutionPair ab_elementary(AbFamily family, const AbParams& p,
                           FuncBinding shape) {
  SolutionPair sp;
  switch (family) {
    case AbFamily::trig:
      sp.psi = constant(p.c1) * sin(constant(p.k) * (var_x() - var_t())) +
               constant(p.c2) * sin(constant(p.k) * (var_y() - var_t())) +
               constant(p.c3);
      sp.phi = var_x() - var_y();
      sp.label = "ab_trig";
      break;
    case AbFamily::spiral:
      sp.psi = 2.0 * var_t() - angle_expr();
      sp.phi = square(var_x()) + square(var_y());
      sp.exclusions = {exclude_near_origin(0.05), exclude_angle_cut(0.05)};
      sp.label = "ab_spiral";
      break;
    case AbFamily::traveling: {
      if (!shape.valid() || shape.max_order() < 2)
        throw ParamError(
            "ab_elementary(traveling) needs a twice-differentiable profile");
      const std::string pn = unique_name("wave");
      sp.psi = opaque(pn, var_y() - var_t());
      sp.phi = var_x();
      sp.funcs.emplace(pn, std::move(shape));
      sp.label = "ab_traveling";
      break;
    }
  }
  return sp;
}

// ---------------------------------------------------------------------------
// Function-spec parsing.
// ---------------------------------------------------------------------------

FuncBinding parse_func_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        args.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ParamError("bad number '" + item + "' in func spec '" + spec +
                         "'");
      }
    }
  }
  auto arg = [&](std::size_t i, double fallback) {
    return i < args.size() ? args[i] : fallback;
  };
  if (head == "zero") return FuncBinding::zero();
  if (head == "const") {
    if (args.empty()) throw ParamError("const needs a value");
    return FuncBinding::constant(args[0]);
  }
  if (head == "poly") {
    if (args.empty()) throw ParamError("poly needs coefficients");
    return FuncBinding::polynomial(args);
  }
  if (head == "sin")
    return FuncBinding::sinusoid(arg(0, 1.0), arg(1, 1.0), arg(2, 0.0));
  if (head == "cos")
    return FuncBinding::cosine(arg(0, 1.0), arg(1, 1.0), arg(2, 0.0));
  if (head == "exp")
    return FuncBinding::exponential(arg(0, 1.0), arg(1, 1.0));
  if (head == "gauss") return FuncBinding::gaussian();
  if (head == "lorentz") return FuncBinding::lorentzian();
  if (head == "tanh") return FuncBinding::tanh_profile();
  if (head == "power") {
    if (args.size() < 2) throw ParamError("power needs coeff,exponent");
    return FuncBinding::power(args[0], args[1]);
  }
  throw ParamError("unknown func spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

namespace {

double pick(const ParamMap& params, const std::string& key) {
  return params.at(key);
}

FuncBinding pick_func(const FuncMap& funcs, const std::string& key) {
  return funcs.at(key);
}

ConditionalParams cond_params(const ParamMap& p, bool kappa = false) {
  ConditionalParams cp;
  cp.k = pick(p, kappa ? "kappa" : "k");
  if (p.count("sign1")) cp.sign1 = pick(p, "sign1");
  if (p.count("sign2")) cp.sign2 = pick(p, "sign2");
  if (p.count("phase")) cp.phase = pick(p, "phase");
  if (p.count("c0")) cp.c0 = pick(p, "c0");
  return cp;
}

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> entries;

  const ParamSpec sign1{"sign1", 1.0, -1.0, 1.0, "sign of the psi exponent"};
  const ParamSpec sign2{"sign2", 1.0, -1.0, 1.0, "sign of the phi exponent"};
  const ParamSpec phase{"phase", 0.0, -10.0, 10.0, "phase shift in the sine"};
  const ParamSpec c0{"c0", 0.0, -10.0, 10.0, "additive constant in psi"};

  entries.push_back(
      {"zero",
       "the trivial pair psi = phi = 0",
       {},
       {},
       SystemForm::eu,
       "",
       [](const ParamMap&, const FuncMap&) {
         SolutionPair sp;
         sp.label = "zero";
         return sp;
       },
       nullptr,
       [](const ParamMap&) {
         return std::make_pair(FuncBinding::zero(), FuncBinding::zero());
       }});

  entries.push_back(
      {"static_gauss",
       "time-independent pair psi = exp(-x^2), phi = 1/(1+x^2)",
       {},
       {FuncSpec{"f", "gauss", "psi profile"},
        FuncSpec{"g", "lorentz", "phi profile"}},
       SystemForm::eu,
       "",
       [](const ParamMap&, const FuncMap& funcs) {
         auto sp = static_pair(pick_func(funcs, "f"), pick_func(funcs, "g"));
         sp.label = "static_gauss";
         return sp;
       },
       nullptr,
       nullptr});

  entries.push_back(
      {"static_eq",
       "time-independent aligned pair psi = f(x), phi = sign * f(x)",
       {ParamSpec{"sign", 1.0, -1.0, 1.0, "phi = sign * psi"}},
       {FuncSpec{"f", "gauss", "common profile"}},
       SystemForm::eu,
       "",
       [](const ParamMap& params, const FuncMap& funcs) {
         const double sign = pick(params, "sign");
         if (std::abs(sign) != 1.0)
           throw ParamError("static_eq: sign must be +1 or -1");
         FuncBinding f = pick_func(funcs, "f");
         FuncBinding g{[f, sign](double s, int order) {
                         return sign * f(s, order);
                       },
                       f.max_order()};
         auto sp = static_pair(f, g);
         sp.label = "static_eq";
         return sp;
       },
       nullptr,
       nullptr});

  entries.push_back(
      {"vw_uniform",
       "uniform shear field psi = B(t)x - A(t)y in a hyperbolic velocity "
       "pattern, A = A0 e^t, B = sign A0 e^t",
       {ParamSpec{"A0", 1.0, -10.0, 10.0, "frame amplitude"},
        ParamSpec{"sign", 1.0, -1.0, 1.0, "B = sign * A"}},
       {},
       SystemForm::eu,
       "X1",
       [](const ParamMap& params, const FuncMap&) {
         const double a0 = pick(params, "A0");
         const double sign = pick(params, "sign");
         if (std::abs(sign) != 1.0)
           throw ParamError("vw_uniform: sign must be +1 or -1");
         if (a0 == 0.0) throw ParamError("vw_uniform: A0 must be nonzero");
         auto sp = x1_invariant(Func2Binding::power(1.0, 1.0, 0.0),
                                Func2Binding::zero(),
                                FuncBinding::exponential(a0, 1.0),
                                FuncBinding::exponential(sign * a0, 1.0));
         sp.label = "vw_uniform";
         return sp;
       },
       [](const ParamMap& params, const FuncMap&) {
         const double a0 = pick(params, "A0");
         const double sign = pick(params, "sign");
         return x1(FuncBinding::exponential(a0, 1.0),
                   FuncBinding::exponential(sign * a0, 1.0));
       },
       nullptr});

  entries.push_back(
      {"vw_rotating",
       "shear field rotating at omega inside a velocity pattern rotating at "
       "2 omega; A = A0 cos(omega t), B = A0 sin(omega t)",
       {ParamSpec{"A0", 1.0, -10.0, 10.0, "frame amplitude"},
        ParamSpec{"omega", 1.0, -10.0, 10.0, "rotation rate"}},
       {},
       SystemForm::eu,
       "X1",
       [](const ParamMap& params, const FuncMap&) {
         const double a0 = pick(params, "A0");
         const double omega = pick(params, "omega");
         if (a0 == 0.0) throw ParamError("vw_rotating: A0 must be nonzero");
         auto sp = x1_invariant(Func2Binding::power(1.0, 1.0, 0.0),
                                Func2Binding::zero(),
                                FuncBinding::cosine(a0, omega),
                                FuncBinding::sinusoid(a0, omega));
         sp.label = "vw_rotating";
         return sp;
       },
       [](const ParamMap& params, const FuncMap&) {
         const double a0 = pick(params, "A0");
         const double omega = pick(params, "omega");
         return x1(FuncBinding::cosine(a0, omega),
                   FuncBinding::sinusoid(a0, omega));
       },
       nullptr});

  entries.push_back(
      {"x2_spiral",
       "bare spiral potential psi = 0, phi = r^2 theta / (2t)",
       {},
       {},
       SystemForm::eu,
       "X2",
       [](const ParamMap&, const FuncMap&) {
         auto sp = x2_invariant(Func2Binding::zero(), Func2Binding::zero());
         sp.label = "x2_spiral";
         return sp;
       },
       [](const ParamMap&, const FuncMap&) { return x2(); },
       nullptr});

  entries.push_back(
      {"x2_power_R",
       "spiral potential plus the power radial profile R = t^a r^b with the "
       "exponent relation a = (b^2 - 2b - 4) / (2b)",
       {ParamSpec{"b", 2.0, -8.0, 8.0, "radial exponent (|b| >= 0.05)"}},
       {},
       SystemForm::eu,
       "X2",
       [](const ParamMap& params, const FuncMap&) {
         const double b = pick(params, "b");
         if (std::abs(b) < 0.05)
           throw ParamError("x2_power_R: |b| must be >= 0.05");
         const double a = power_exponent(b);
         auto sp = x2_invariant(Func2Binding::zero(),
                                Func2Binding::power(1.0, b, a));
         sp.label = "x2_power_R";
         return sp;
       },
       [](const ParamMap&, const FuncMap&) { return x2(); },
       nullptr});

  const std::vector<FuncSpec> cond_funcs = {
      FuncSpec{"gamma", "sin", "wave displacement gamma(t)"},
      FuncSpec{"T", "zero", "additive potential shift T(t)"}};

  auto cond_builder = [](ConditionalFamily family, bool kappa) {
    return [family, kappa](const ParamMap& params, const FuncMap& funcs) {
      FuncBinding t1 = funcs.count("T1") ? pick_func(funcs, "T1")
                                         : FuncBinding::zero();
      return conditional_family(family, cond_params(params, kappa),
                                pick_func(funcs, "gamma"),
                                pick_func(funcs, "T"), t1);
    };
  };
  auto x3_gen = [](const ParamMap&, const FuncMap&) { return x3(); };

  entries.push_back({"cond_sin_exp",
                     "wave pair psi = sin(k(x - gamma)), phi = e^{±sqrt(1+k^2) "
                     "y} - gamma' y + T",
                     {ParamSpec{"k", 1.0, -6.0, 6.0, "wavenumber"}, sign2,
                      phase, c0},
                     cond_funcs,
                     SystemForm::eu,
                     "X3",
                     cond_builder(ConditionalFamily::sin_exp, false),
                     x3_gen,
                     nullptr});

  entries.push_back({"cond_exp_sin",
                     "wave pair psi = e^{±sqrt(1+k^2)(x - gamma)}, phi = "
                     "sin(k y) - gamma' y + T",
                     {ParamSpec{"k", 1.0, -6.0, 6.0, "wavenumber"}, sign1,
                      phase, c0},
                     cond_funcs,
                     SystemForm::eu,
                     "X3",
                     cond_builder(ConditionalFamily::exp_sin, false),
                     x3_gen,
                     nullptr});

  entries.push_back({"cond_exp_exp_kappa",
                     "pair of exponentials psi = e^{±sqrt(1-kappa^2)(x - "
                     "gamma)}, phi = e^{±kappa y} - gamma' y + T",
                     {ParamSpec{"kappa", 0.5, -0.95, 0.95,
                                "transverse rate, |kappa| < 1"},
                      sign1, sign2, c0},
                     cond_funcs,
                     SystemForm::eu,
                     "X3",
                     cond_builder(ConditionalFamily::exp_exp_kappa, true),
                     x3_gen,
                     nullptr});

  entries.push_back(
      {"cond_exp_parab",
       "modulated exponential psi = gamma(t) e^{±x}, phi = k y^2 + y T1 + T",
       {ParamSpec{"k", 1.0, -6.0, 6.0, "parabolic strength"}, sign1, c0},
       {FuncSpec{"gamma", "sin", "amplitude gamma(t)"},
        FuncSpec{"T", "zero", "additive shift T(t)"},
        FuncSpec{"T1", "zero", "linear-in-y shift T1(t)"}},
       SystemForm::eu,
       "X3",
       cond_builder(ConditionalFamily::exp_parab, false),
       x3_gen,
       nullptr});

  entries.push_back(
      {"cond_lin_exp",
       "linear flux psi = gamma(t) + k x, phi = e^{±y} + gamma' y / k",
       {ParamSpec{"k", 1.0, -6.0, 6.0, "slope, k != 0"}, sign2},
       {FuncSpec{"gamma", "sin", "offset gamma(t)"},
        FuncSpec{"T", "zero", "unused for this family"}},
       SystemForm::eu,
       "X3",
       cond_builder(ConditionalFamily::lin_exp, false),
       x3_gen,
       nullptr});

  entries.push_back(
      {"xab_example",
       "psi = 3x^2 + y^2, phi = e^{-x}; seed of the rotational "
       "partial-symmetry orbit",
       {},
       {},
       SystemForm::eu,
       "",
       [](const ParamMap&, const FuncMap&) { return xab_example(); },
       nullptr,
       nullptr});

  entries.push_back(
      {"ab_trig",
       "traveling sines psi = c1 sin(k(x-t)) + c2 sin(k(y-t)) + c3, phi = x-y",
       {ParamSpec{"c1", 1.0, -10.0, 10.0, "x-wave amplitude"},
        ParamSpec{"c2", 2.0, -10.0, 10.0, "y-wave amplitude"},
        ParamSpec{"c3", 0.0, -10.0, 10.0, "additive constant"},
        ParamSpec{"k", 3.0, -8.0, 8.0, "wavenumber"}},
       {},
       SystemForm::eu,
       "",
       [](const ParamMap& params, const FuncMap&) {
         AbParams p;
         p.c1 = pick(params, "c1");
         p.c2 = pick(params, "c2");
         p.c3 = pick(params, "c3");
         p.k = pick(params, "k");
         return ab_elementary(AbFamily::trig, p);
       },
       nullptr,
       [](const ParamMap& params) {
         const double k = pick(params, "k");
         const double c3 = pick(params, "c3");
         return std::make_pair(
             FuncBinding{[k, c3](double u, int order) {
                           if (order == 0) return -k * k * (u - c3);
                           if (order == 1) return -k * k;
                           return 0.0;
                         },
                         FuncBinding::kUnlimited},
             FuncBinding::zero());
       }});

  entries.push_back(
      {"ab_spiral",
       "uniformly winding angle psi = 2t - theta in the parabolic potential "
       "phi = r^2",
       {},
       {},
       SystemForm::eu,
       "",
       [](const ParamMap&, const FuncMap&) {
         return ab_elementary(AbFamily::spiral);
       },
       nullptr,
       [](const ParamMap&) {
         return std::make_pair(FuncBinding::zero(), FuncBinding::constant(4.0));
       }});

  entries.push_back(
      {"ab_traveling",
       "traveling profile psi = shape(y - t), phi = x",
       {},
       {FuncSpec{"shape", "tanh", "wave profile"}},
       SystemForm::eu,
       "",
       [](const ParamMap&, const FuncMap& funcs) {
         return ab_elementary(AbFamily::traveling, {},
                              pick_func(funcs, "shape"));
       },
       nullptr,
       [](const ParamMap&) {
         // psi-closure left unbound on purpose: it depends on the profile.
         return std::make_pair(FuncBinding{}, FuncBinding::zero());
       }});

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& find_entry(const std::string& id) {
  for (const auto& e : catalog_entries())
    if (e.id == id) return e;
  throw UnknownIdError("unknown catalog id '" + id + "'");
}

ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& overrides) {
  ParamMap params;
  for (const auto& spec : entry.params) params[spec.name] = spec.default_value;
  for (const auto& [key, value] : overrides) {
    const ParamSpec* spec = nullptr;
    for (const auto& s : entry.params)
      if (s.name == key) spec = &s;
    if (!spec)
      throw ParamError("entry '" + entry.id + "' has no parameter '" + key +
                       "'");
    if (value < spec->min || value > spec->max)
      throw ParamError("parameter '" + key + "' = " + std::to_string(value) +
                       " outside [" + std::to_string(spec->min) + ", " +
                       std::to_string(spec->max) + "]");
    params[key] = value;
  }
  return params;
}

SolutionPair build_entry(const std::string& id, const ParamMap& params,
                         const std::map<std::string, std::string>& funcs) {
  const CatalogEntry& entry = find_entry(id);
  const ParamMap resolved = resolve_params(entry, params);
  FuncMap bound;
  for (const auto& spec : entry.funcs)
    bound[spec.name] = parse_func_spec(spec.default_spec);
  for (const auto& [key, spec] : funcs) {
    bool known = false;
    for (const auto& s : entry.funcs)
      if (s.name == key) known = true;
    if (!known)
      throw ParamError("entry '" + id + "' has no function slot '" + key + "'");
    bound[key] = parse_func_spec(spec);
  }
  return entry.build(resolved, bound);
}

}  // namespace eulerlab
