#include <cmath>
#include <doctest.h>

#include "eulerlab/catalog.hpp"
#include "eulerlab/reduced.hpp"
#include "oracles.hpp"

using namespace eulerlab;

TEST_CASE("every entry verifies at its default parameters") {
  for (const auto& entry : catalog_entries()) {
    const SolutionPair sp = build_entry(entry.id);
    const ResidualReport report =
        check(entry.documented_form, sp, SamplePlan{}, 1e-8);
    CHECK_MESSAGE(report.pass, entry.id, " linf = ", report.worst_linf());
  }
}

TEST_CASE("schema-random parameters keep every entry on the solution set") {
  Rng rng(0x5EED);
  for (const auto& entry : catalog_entries()) {
    for (int draw = 0; draw < 10; ++draw) {
      ParamMap params;
      for (const auto& spec : entry.params) {
        if (spec.name == "sign" || spec.name == "sign1" || spec.name == "sign2")
          params[spec.name] = rng.canonical() < 0.5 ? -1.0 : 1.0;
        else if (spec.name == "kappa")
          params[spec.name] = rng.uniform(-0.9, 0.9);
        else if (spec.name == "b") {
          double b = rng.uniform(0.3, 3.0);
          if (rng.canonical() < 0.5) b = -b;
          params[spec.name] = b;
        } else if (spec.name == "k") {
          double k = rng.uniform(0.3, 2.5);
          params[spec.name] = k;
        } else if (spec.name == "A0") {
          params[spec.name] = rng.uniform(0.2, 1.5);
        } else {
          params[spec.name] = rng.uniform(-1.5, 1.5);
        }
      }
      const SolutionPair sp = build_entry(entry.id, params);
      const ResidualReport report =
          check(entry.documented_form, sp, SamplePlan{}, 1e-8);
      CHECK_MESSAGE(report.pass, entry.id, " draw ", draw,
                    " linf = ", report.worst_linf());
    }
  }
}

TEST_CASE("declared invariances hold") {
  for (const auto& entry : catalog_entries()) {
    if (!entry.invariant_gen) continue;
    ParamMap params;
    for (const auto& spec : entry.params) params[spec.name] = spec.default_value;
    FuncMap funcs;
    for (const auto& spec : entry.funcs)
      funcs[spec.name] = parse_func_spec(spec.default_spec);
    const SolutionPair sp = entry.build(params, funcs);
    const Generator gen = entry.invariant_gen(params, funcs);
    const ResidualReport report = invariance_check(gen, sp);
    CHECK_MESSAGE(report.pass, entry.id, " not invariant under ", gen.name,
                  " linf = ", report.worst_linf());
  }
}

TEST_CASE("closure under the moving-frame orbit") {
  FuncBinding a_fun = FuncBinding::polynomial({0.2, 0.9, -0.3});
  FuncBinding b_fun = FuncBinding::sinusoid(0.7, 1.3, 0.2);
  for (const auto& entry : catalog_entries()) {
    const SolutionPair sp = build_entry(entry.id);
    if (!check(SystemForm::eu, sp, SamplePlan{}, 1e-9).pass)
      continue;  // entries documented against subsystems keep their own gate
    const SolutionPair image = orbit_x1(sp, a_fun, b_fun);
    const ResidualReport report =
        check(SystemForm::eu, image, SamplePlan{}, 1e-7);
    CHECK_MESSAGE(report.pass, entry.id, " orbit image linf = ",
                  report.worst_linf());
  }
}

TEST_CASE("moving-frame family specifics") {
  SUBCASE("degenerate constants produce a sheared one-variable profile") {
    const SolutionPair sp =
        x1_invariant(Func2Binding::power(1.0, 1.0, 0.0), Func2Binding::zero(),
                     FuncBinding::constant(1.0), FuncBinding::zero());
    // s = B x - A y = -y, quadratic part vanishes: psi = -y, phi = 0
    for (double y : {-1.0, 0.3, 2.0}) {
      CHECK(sp.eval_psi(0.5, y, 1.0) == doctest::Approx(-y));
      CHECK(sp.eval_phi(0.5, y, 1.0) == doctest::Approx(0.0));
    }
  }
  SUBCASE("uniform field: psi = B(t)x - A(t)y") {
    const SolutionPair sp = build_entry("vw_uniform", {{"A0", 0.5}});
    const double t = 0.8, x = 1.2, y = -0.4;
    const double a = 0.5 * std::exp(t), b = 0.5 * std::exp(t);
    CHECK(sp.eval_psi(x, y, t) == doctest::Approx(b * x - a * y));
    CHECK(check(SystemForm::eu, sp).pass);
  }
  SUBCASE("rotating frame solves the system") {
    const SolutionPair sp =
        build_entry("vw_rotating", {{"A0", 1.0}, {"omega", 2.0}});
    CHECK(check(SystemForm::eu, sp).pass);
  }
  SUBCASE("vanishing frame is rejected") {
    CHECK_THROWS_AS(x1_invariant(Func2Binding::power(1.0, 1.0, 0.0),
                                 Func2Binding::zero(), FuncBinding::zero(),
                                 FuncBinding::zero()),
                    PreconditionError);
  }
  SUBCASE("profiles violating the reduced equations are rejected") {
    // V(s, t) = s * t has d_t(V - D V_ss) = s != 0.
    CHECK_THROWS_AS(x1_invariant(Func2Binding::power(1.0, 1.0, 1.0),
                                 Func2Binding::zero(), FuncBinding::cosine(),
                                 FuncBinding::sinusoid()),
                    PreconditionError);
  }
}

TEST_CASE("rotation-invariant family specifics") {
  SUBCASE("bare winding potential solves the system") {
    const SolutionPair sp = build_entry("x2_spiral");
    CHECK(check(SystemForm::eu, sp).pass);
    CHECK(sp.eval_psi(1.0, 1.0, 0.5) == doctest::Approx(0.0));
    // phi = r^2 theta / (2t)
    const double r2 = 2.0, theta = std::atan2(1.0, 1.0);
    CHECK(sp.eval_phi(1.0, 1.0, 0.5) == doctest::Approx(r2 * theta / 1.0));
  }
  SUBCASE("power radial profile with the matched exponent") {
    const SolutionPair sp = build_entry("x2_power_R", {{"b", 2.0}});
    CHECK(check(SystemForm::eu, sp).pass);
    // b = 2 gives a = -1: R = r^2 / t, so phi = r^2 theta / (2t) + r^2 / t
    const double r2 = 1.1 * 1.1 + 0.25;
    const double expected =
        r2 * std::atan2(0.5, 1.1) / (2.0 * 0.7) + r2 / 0.7;
    CHECK(sp.eval_phi(1.1, 0.5, 0.7) == doctest::Approx(expected));
  }
  SUBCASE("mismatched exponent pair is rejected") {
    CHECK_THROWS_AS(
        x2_invariant(Func2Binding::zero(), Func2Binding::power(1.0, 1.0, 1.0)),
        PreconditionError);
  }
}

TEST_CASE("wave families expose the generalized-invariance structure") {
  const SolutionPair sp = build_entry("cond_sin_exp");
  const Expr psi_y = diff(sp.psi, Var::y);
  const Expr phi_x = diff(sp.phi, Var::x);
  for (const auto& p : oracles::points(sp, 25)) {
    const EvalContext ctx = sp.context(p[0], p[1], p[2]);
    CHECK(std::abs(eval(psi_y, ctx)) < 1e-12);
    CHECK(std::abs(eval(phi_x, ctx)) < 1e-12);
  }

  SUBCASE("sign and phase variants stay solutions") {
    for (double s2 : {-1.0, 1.0})
      CHECK(check(SystemForm::eu,
                  build_entry("cond_sin_exp", {{"sign2", s2},
                                               {"phase", 0.8},
                                               {"c0", 1.5}}))
                .pass);
    CHECK(check(SystemForm::eu,
                build_entry("cond_exp_exp_kappa",
                            {{"kappa", -0.6}, {"sign1", -1.0}}))
              .pass);
  }
  SUBCASE("kappa range is enforced") {
    CHECK_THROWS_AS(build_entry("cond_exp_exp_kappa", {{"kappa", 1.2}}),
                    ParamError);
  }
  SUBCASE("lin_exp needs a nonzero slope") {
    CHECK_THROWS_AS(build_entry("cond_lin_exp", {{"k", 0.0}}), ParamError);
  }
  SUBCASE("moving gamma keeps the family on shell") {
    CHECK(check(SystemForm::eu, build_entry("cond_sin_exp", {},
                                            {{"gamma", "poly:0,1"}}))
              .pass);
  }
}

TEST_CASE("aligned static pair realizes the scaling-invariant case") {
  const SolutionPair sp = build_entry("static_eq", {{"sign", -1.0}});
  CHECK(check(SystemForm::eu, sp).pass);
  for (double x : {-1.0, 0.2, 1.7})
    CHECK(sp.eval_phi(x, 0.0, 0.0) == doctest::Approx(-sp.eval_psi(x, 0.0, 0.0)));

  SUBCASE("the one-variable construction works along y too") {
    const SolutionPair vertical = static_pair(
        FuncBinding::sinusoid(), FuncBinding::lorentzian(), Var::y);
    CHECK(check(SystemForm::eu, vertical).pass);
    CHECK(vertical.eval_psi(2.0, 0.4, 1.0) == doctest::Approx(std::sin(0.4)));
  }
  SUBCASE("time is not a profile variable") {
    CHECK_THROWS_AS(
        static_pair(FuncBinding::gaussian(), FuncBinding::gaussian(), Var::t),
        ParamError);
  }
}

TEST_CASE("rotational-orbit seed") {
  const SolutionPair sp = build_entry("xab_example");
  SUBCASE("solves the system") { CHECK(check(SystemForm::eu, sp).pass); }
  SUBCASE("its Laplacian is the constant 8") {
    const Expr lap = laplacian(sp.psi);
    CHECK(eval(lap, sp.context(0.3, -2.0, 1.0)) == doctest::Approx(8.0));
  }
  SUBCASE("phi is its own Laplacian") {
    const Expr defect = sp.phi - laplacian(sp.phi);
    for (const auto& p : oracles::points(sp, 20))
      CHECK(std::abs(eval(defect, sp.context(p[0], p[1], p[2]))) < 1e-12);
  }
}

TEST_CASE("elementary constrained-system families") {
  SUBCASE("trig pair passes both full and constrained forms") {
    const SolutionPair sp = build_entry(
        "ab_trig", {{"c1", 1.0}, {"c2", 2.0}, {"c3", 0.0}, {"k", 3.0}});
    CHECK(check(SystemForm::eu, sp).pass);
    CHECK(check(SystemForm::psys, sp).pass);
  }
  SUBCASE("degenerate wavenumber still solves (constant fields)") {
    const SolutionPair sp = build_entry("ab_trig", {{"k", 0.0}});
    CHECK(check(SystemForm::eu, sp).pass);
  }
  SUBCASE("spiral passes the constrained form off the cut") {
    CHECK(check(SystemForm::psys, build_entry("ab_spiral")).pass);
  }
  SUBCASE("tanh traveling profile") {
    const SolutionPair sp = build_entry("ab_traveling");
    CHECK(check(SystemForm::eu, sp).pass);
    CHECK(check(SystemForm::psys, sp).pass);
  }
}

TEST_CASE("registry plumbing") {
  CHECK(catalog_entries().size() >= 14);
  CHECK_THROWS_AS(find_entry("nope"), UnknownIdError);
  CHECK_THROWS_AS(build_entry("ab_trig", {{"zz", 1.0}}), ParamError);
  CHECK_THROWS_AS(build_entry("ab_trig", {{"k", 99.0}}), ParamError);
  CHECK_THROWS_AS(build_entry("static_gauss", {}, {{"h", "gauss"}}),
                  ParamError);
  CHECK_THROWS_AS(parse_func_spec("wat"), ParamError);
  CHECK(parse_func_spec("poly:1,2")(2.0, 0) == doctest::Approx(5.0));
  CHECK(parse_func_spec("const:3")(9.0, 1) == doctest::Approx(0.0));
}
