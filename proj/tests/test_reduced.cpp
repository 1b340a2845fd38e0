#include <cmath>
#include <doctest.h>

#include "eulerlab/catalog.hpp"
#include "eulerlab/reduced.hpp"
#include "oracles.hpp"

using namespace eulerlab;

TEST_CASE("two-point solves of the frame-profile equation") {
  const Grid1D grid{0.0, M_PI, 65};

  SUBCASE("linear profile is reproduced exactly") {
    // F(s) = s with matching boundaries: V = s (V_ss = 0).
    const auto v = solve_v(FuncBinding::polynomial({0.0, 1.0}), 1.0, 1.0, grid,
                           grid.node(0), grid.node(grid.n - 1));
    for (int i = 0; i < grid.n; ++i)
      CHECK(v.values[i] == doctest::Approx(grid.node(i)).epsilon(1e-12));
  }
  SUBCASE("zero data gives the zero profile") {
    const auto v = solve_v(FuncBinding::zero(), 0.6, 0.8, grid, 0.0, 0.0);
    CHECK(v.values.abs().maxCoeff() < 1e-14);
  }
  SUBCASE("manufactured sine converges at second order") {
    const double k = 1.0, d = 2.0;  // A = B = 1
    const FuncBinding f{[k, d](double s, int order) {
                          return order == 0 ? (1 + d * k * k) * std::sin(k * s)
                                            : 0.0;
                        },
                        0};
    auto error = [&](int n) {
      const Grid1D g{0.0, M_PI, n};
      const auto v = solve_v(f, 1.0, 1.0, g, 0.0, std::sin(k * M_PI));
      double worst = 0.0;
      for (int i = 0; i < g.n; ++i)
        worst = std::max(worst,
                         std::abs(v.values[i] - std::sin(k * g.node(i))));
      return worst;
    };
    const double e1 = error(33), e2 = error(65);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.13));
  }
  SUBCASE("discrete residual at interior nodes is roundoff") {
    const auto v = solve_v(FuncBinding::gaussian(), 0.9, 1.2, grid, 0.3, -0.2);
    CHECK(discrete_residual_v(v, FuncBinding::gaussian(),
                              0.9 * 0.9 + 1.2 * 1.2) < 1e-10);
  }
  SUBCASE("degenerate frame is refused") {
    CHECK_THROWS_AS(solve_v(FuncBinding::zero(), 0.0, 0.0, grid, 0, 0),
                    PreconditionError);
    CHECK_THROWS_AS(solve_v(FuncBinding::zero(), 1.0, 0.0, {0.0, 1.0, 4}, 0, 0),
                    ParamError);
  }
}

TEST_CASE("double-integration solves of the potential-profile equation") {
  const Grid1D grid{0.0, M_PI, 65};

  SUBCASE("zero data") {
    const auto w = solve_w(FuncBinding::zero(), 1.0, 0.5, grid, 0.0, 0.0);
    CHECK(w.values.abs().maxCoeff() < 1e-14);
  }
  SUBCASE("constant source integrates to the exact quadratic") {
    // G = 2 D -> W = s^2 + linear; quadratics are exact for the stencil.
    const double d = 1.0 * 1.0 + 2.0 * 2.0;
    const auto w = solve_w(FuncBinding::constant(2.0 * d), 1.0, 2.0, grid, 0.0,
                           M_PI * M_PI);
    for (int i = 0; i < grid.n; ++i) {
      const double s = grid.node(i);
      CHECK(w.values[i] == doctest::Approx(s * s).epsilon(1e-10));
    }
  }
  SUBCASE("manufactured sine converges at second order") {
    const double k = 1.0, d = 2.0;
    const FuncBinding g{[k, d](double s, int order) {
                          return order == 0 ? -d * k * k * std::sin(k * s)
                                            : 0.0;
                        },
                        0};
    auto error = [&](int n) {
      const Grid1D gr{0.0, M_PI, n};
      const auto w = solve_w(g, 1.0, 1.0, gr, 0.0, std::sin(k * M_PI));
      double worst = 0.0;
      for (int i = 0; i < gr.n; ++i)
        worst = std::max(worst,
                         std::abs(w.values[i] - std::sin(k * gr.node(i))));
      return worst;
    };
    const double e1 = error(33), e2 = error(65);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.13));
  }
  SUBCASE("discrete residual at interior nodes is roundoff") {
    const auto w = solve_w(FuncBinding::sinusoid(), 1.0, 1.0, grid, 0.2, 0.4);
    CHECK(discrete_residual_w(w, FuncBinding::sinusoid(), 2.0) < 1e-10);
  }
}

TEST_CASE("third-order radial residuals") {
  SUBCASE("constants annihilate the psi-profile equation") {
    CHECK(check(residual_q(Func2Binding::constant(3.0)), reduced_plan(), 1e-12)
              .pass);
  }
  SUBCASE("matched power profiles annihilate the potential equation") {
    for (double b : {2.0, -2.0, 1.0, 3.0}) {
      const double a = power_exponent(b);
      const ResidualReport report = check(
          residual_r(Func2Binding::power(1.0, b, a)), reduced_plan(), 1e-9);
      CHECK_MESSAGE(report.pass, "b = ", b, " linf = ", report.worst_linf());
    }
  }
  SUBCASE("mismatched exponent leaves a residual") {
    // R = t r needs a = -5/2 for b = 1; a = 1 violates the relation.
    const ResidualReport report = check(
        residual_r(Func2Binding::power(1.0, 1.0, 1.0)), reduced_plan(), 1e-9);
    CHECK_FALSE(report.pass);
    CHECK(report.worst_linf() > 1e-3);
  }
}

TEST_CASE("exponent relation") {
  CHECK(power_exponent(2.0) == doctest::Approx(-1.0));
  CHECK(power_exponent(-2.0) == doctest::Approx(-1.0));
  CHECK(power_exponent(1.0) == doctest::Approx(-2.5));
  CHECK_THROWS_AS(power_exponent(0.0), ParamError);

  SUBCASE("defining identity to 1e-12 on random exponents") {
    Rng rng(0xBEEF);
    for (int i = 0; i < 100; ++i) {
      double b = rng.uniform(-5.0, 5.0);
      if (std::abs(b) < 1e-3) b = 1e-3;
      const double a = power_exponent(b);
      CHECK(std::abs(2 * a * b - b * b + 2 * b + 4) <= 1e-12);
    }
  }
}

TEST_CASE("invariant coordinates commute") {
  // s = B(t)x - A(t)y and t have a vanishing bracket.
  const Expr s = opaque("B", var_t()) * var_x() - opaque("A", var_t()) * var_y();
  const Expr b = bracket(s, var_t());
  FuncMap funcs{{"A", FuncBinding::cosine()}, {"B", FuncBinding::sinusoid()}};
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    EvalContext ctx;
    ctx.funcs = &funcs;
    ctx.x = rng.uniform(-3, 3);
    ctx.y = rng.uniform(-3, 3);
    ctx.t = rng.uniform(0.1, 2);
    CHECK(eval(b, ctx) == 0.0);
  }
}

TEST_CASE("full-system residuals of the frame ansatz ARE the reduced defects") {
  // For psi = V(s,t), phi = quad + W(s,t) with s = B(t)x - A(t)y, the
  // moving-frame advection cancels exactly and the two residuals collapse to
  //   R1/R2 = d_t(V - D V_ss) +/- d_t(D W_ss)   (D = A^2 + B^2),
  // for ARBITRARY profiles, solutions or not.  Checked on a non-solution.
  FuncBinding a_fun = FuncBinding::cosine();
  FuncBinding b_fun = FuncBinding::sinusoid();
  const std::string an = unique_name("A"), bn = unique_name("B");
  const std::string vn = unique_name("V"), wn = unique_name("W");

  // build the ansatz by hand so the constructor's precondition cannot object
  const Expr at = opaque(an, var_t()), bt = opaque(bn, var_t());
  const Expr at1 = opaque(an, var_t(), 1), bt1 = opaque(bn, var_t(), 1);
  const Expr s = bt * var_x() - at * var_y();
  const Expr denom = square(at) + square(bt);
  const Expr quad =
      ((at1 * bt + at * bt1) * (square(var_x()) - square(var_y())) -
       2.0 * var_x() * var_y() * (at * at1 - bt * bt1)) /
      (2.0 * denom);

  SolutionPair sp;
  sp.psi = opaque2(vn, s, var_t());
  sp.phi = quad + opaque2(wn, s, var_t());
  sp.funcs = {{an, a_fun}, {bn, b_fun}};
  sp.funcs2 = {{vn, Func2Binding::power(1.0, 1.0, 1.0)},    // V = s t
               {wn, Func2Binding::power(0.5, 2.0, 1.0)}};   // W = s^2 t / 2

  // V_ss = 0, W_ss = t, D = 1: defects are d_t(s t) = s and d_t(t) = 1.
  const ResidualSystem eu = residual_eu(sp);
  Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    const double x = rng.uniform(-3, 3), y = rng.uniform(-3, 3),
                 t = rng.uniform(0.1, 2.0);
    const EvalContext ctx = sp.context(x, y, t);
    const double s_val = b_fun(t, 0) * x - a_fun(t, 0) * y;
    const double r1 = eval(eu.equations[0].combined(), ctx);
    const double r2 = eval(eu.equations[1].combined(), ctx);
    CHECK(r1 == doctest::Approx(s_val + 1.0).epsilon(1e-9));
    CHECK(r2 == doctest::Approx(s_val - 1.0).epsilon(1e-9));
  }
}

TEST_CASE("a radial profile off its reduced equation breaks the full system") {
  // Bypass the constructor gate and check the full system directly.
  const std::string rn = unique_name("R");
  const Expr r = sqrt(square(var_x()) + square(var_y()));
  SolutionPair sp;
  sp.psi = constant(0.0);
  sp.phi = square(r) * atan2(var_y(), var_x()) / (2.0 * var_t()) +
           opaque2(rn, r, var_t());
  sp.funcs2 = {{rn, Func2Binding::power(1.0, 1.0, 1.0)}};  // R = t r, not a
                                                           // reduced solution
  sp.exclusions = {exclude_near_origin(0.05), exclude_angle_cut(0.05),
                   exclude_time_near(0.0, 0.05)};
  const ResidualReport report = check(SystemForm::eu, sp);
  CHECK_FALSE(report.pass);
  CHECK(report.worst_linf() > 1e-3);

  SUBCASE("restoring the exponent relation restores the solution") {
    SolutionPair good = sp;
    good.funcs2 = {{rn, Func2Binding::power(1.0, 1.0, power_exponent(1.0))}};
    CHECK(check(SystemForm::eu, good).pass);
  }
}

TEST_CASE("superposition of invariant solutions") {
  SUBCASE("rotation-invariant radial profiles combine affinely and beyond") {
    const SolutionPair sp1 = build_entry("x2_power_R", {{"b", 2.0}});
    const SolutionPair sp2 = build_entry("x2_power_R", {{"b", 1.0}});
    for (auto [c1, c2] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {0.3, 0.7}, {-0.5, 1.5}, {2.0, 1.0}}) {
      const ResidualReport report = superposition_check(sp1, sp2, c1, c2);
      CHECK_MESSAGE(report.pass, "c = (", c1, ",", c2, ") linf = ",
                    report.worst_linf());
    }
  }
  SUBCASE("frame-invariant profiles with a shared frame combine linearly") {
    FuncBinding a_fun = FuncBinding::cosine();
    FuncBinding b_fun = FuncBinding::sinusoid();
    const SolutionPair sp1 =
        x1_invariant(Func2Binding::of_first(FuncBinding::sinusoid()),
                     Func2Binding::zero(), a_fun, b_fun);
    const SolutionPair sp2 =
        x1_invariant(Func2Binding::of_first(FuncBinding::cosine()),
                     Func2Binding::zero(), a_fun, b_fun);
    for (auto [c1, c2] : std::vector<std::pair<double, double>>{
             {0.25, 0.75}, {1.3, -0.3}, {0.6, 0.9}}) {
      CHECK(superposition_check(sp1, sp2, c1, c2).pass);
    }
  }
  SUBCASE("c = (1, 0) reproduces the first input") {
    const SolutionPair sp1 = build_entry("x2_power_R", {{"b", 2.0}});
    const SolutionPair sp2 = build_entry("x2_power_R", {{"b", 3.0}});
    const SolutionPair combined = superpose(sp1, sp2, 1.0, 0.0);
    for (const auto& p : oracles::points(sp1, 25)) {
      CHECK(combined.eval_psi(p[0], p[1], p[2]) ==
            doctest::Approx(sp1.eval_psi(p[0], p[1], p[2])));
      CHECK(combined.eval_phi(p[0], p[1], p[2]) ==
            doctest::Approx(sp1.eval_phi(p[0], p[1], p[2])));
    }
  }
  SUBCASE("mismatched rigid parts are refused") {
    const SolutionPair sp1 = build_entry("x2_power_R", {{"b", 2.0}});
    FuncBinding a_fun = FuncBinding::cosine();
    FuncBinding b_fun = FuncBinding::sinusoid();
    const SolutionPair sp2 =
        x1_invariant(Func2Binding::of_first(FuncBinding::sinusoid()),
                     Func2Binding::zero(), a_fun, b_fun);
    CHECK_THROWS_AS(superposition_check(sp1, sp2, 0.5, 0.5),
                    PreconditionError);
  }
  SUBCASE("non-solutions are refused") {
    SolutionPair bad;
    bad.psi = var_x() * var_y();
    bad.phi = constant(0.0);
    CHECK_THROWS_AS(
        superposition_check(bad, build_entry("x2_spiral"), 0.5, 0.5),
        PreconditionError);
  }
}
