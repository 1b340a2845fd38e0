#ifndef EULERLAB_MODEL_HPP
#define EULERLAB_MODEL_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eulerlab/expr.hpp"

namespace eulerlab {

/// Region predicate marking points where a candidate solution is singular or
/// sits on a branch cut.  `guard` widens the band (sample plans pass theirs).
struct Exclusion {
  std::string label;
  std::function<bool(double x, double y, double t, double guard)> contains;
};

// Stock exclusions used by the catalog.
Exclusion exclude_near_origin(double radius);
Exclusion exclude_angle_cut(double band);  // |theta| > pi - band
Exclusion exclude_time_near(double t0, double band);

/// A candidate solution of the two-field system: expressions for psi and phi
/// plus everything needed to evaluate them.
struct SolutionPair {
  Expr psi;
  Expr phi;
  ParamMap params;
  FuncMap funcs;
  Func2Map funcs2;
  std::vector<Exclusion> exclusions;
  /// Rigid-plus-linear decomposition of an invariant solution: the parts that
  /// stay fixed when the linear-space term is scaled.  Zero for pairs without
  /// a declared decomposition.
  Expr fixed_psi;
  Expr fixed_phi;
  std::string label;

  bool excluded(double x, double y, double t, double guard) const;
  EvalContext context(double x, double y, double t) const;
  double eval_psi(double x, double y, double t) const;
  double eval_phi(double x, double y, double t) const;
};

/// Merge params/funcs/funcs2 of `extra` into `base` (unique instance names
/// make collisions vacuous).
SolutionPair merge_bindings(SolutionPair base, const ParamMap& params,
                            const FuncMap& funcs, const Func2Map& funcs2 = {});

/// Where and how many points to sample.  Defaults follow the project-wide
/// verification box: [-3,3]^2 in x,y and [0.1,2] in t, 200 points, fixed seed.
struct SamplePlan {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
  double t_min = 0.1, t_max = 2.0;
  int samples = 200;
  std::uint64_t seed = 0x5EED;
  double guard = 0.05;
};

/// Seeded rejection sampling respecting the pair's exclusions.  Throws
/// PreconditionError if the box is essentially covered by exclusions.
std::vector<std::array<double, 3>> sample_points(const SamplePlan& plan,
                                                 const SolutionPair& sp);

/// One residual equation kept as its top-level summands, so the relative
/// tolerance can scale by the largest term actually summed (third-derivative
/// cancellations would otherwise trip absolute comparisons).
struct TermSum {
  std::string name;
  std::vector<Expr> terms;

  Expr combined() const;
  /// (sum, max |term|) at a point.
  std::pair<double, double> eval_scaled(const EvalContext& ctx) const;
};

/// A residual set bound to the pair (possibly augmented with extra bindings)
/// it evaluates against.
struct ResidualSystem {
  std::string form;
  std::vector<TermSum> equations;
  SolutionPair context;
};

/// The residual forms of the system.
///  eu         - the two advected-combination equations
///  divergence - the equivalent conservation-law form
///  truncated  - the reduced dynamics with the psi/Delta-phi coupling dropped
///  psys       - the three-equation form valid on the bracket-constrained set
///  pdp        - the two bracket constraints themselves
///  ab         - evolution plus the two elliptic closures Delta psi = A(psi),
///               Delta phi = B(psi)
enum class SystemForm { eu, divergence, truncated, psys, pdp, ab };

std::string form_name(SystemForm f);
SystemForm form_from_name(const std::string& name);

ResidualSystem residual_eu(const SolutionPair& sp);
ResidualSystem residual_div(const SolutionPair& sp);
ResidualSystem residual_truncated(const SolutionPair& sp);
ResidualSystem residual_psys(const SolutionPair& sp);
ResidualSystem constraints_partial(const SolutionPair& sp);
/// A or B may be invalid() to skip the corresponding closure residual.
ResidualSystem residual_ab(const SolutionPair& sp, const FuncBinding& a_of_psi,
                           const FuncBinding& b_of_psi);

/// Conserved current components (J0, Jx, Jy, K0, Kx, Ky) grouped exactly as
/// in the divergence form.
struct FluxSet {
  Expr j0, jx, jy;
  Expr k0, kx, ky;
};
FluxSet flux_components(const SolutionPair& sp);

/// Per-equation residual statistics over a sample set.
struct EquationStats {
  std::string name;
  double linf = 0.0;
  double l2 = 0.0;
  std::array<double, 3> worst_point{};
};

struct ResidualReport {
  std::string form;
  std::string generator;  // set by symmetry/invariance checks
  std::string checked;    // human description of what was verified
  int samples = 0;
  double tol = 0.0;
  std::vector<EquationStats> equations;
  bool pass = false;

  double worst_linf() const;
};

/// Evaluate a residual system at the plan's points.  Scaled comparison:
/// |sum| <= tol * (1 + max |term|) per point.  Deterministic for fixed seed;
/// point evaluation may run in parallel (EULERLAB_THREADS caps workers).
/// NaN/Inf at an accepted point throws SingularEvalError with the point.
ResidualReport check(const ResidualSystem& system, const SamplePlan& plan,
                     double tol);

/// Build-and-check in one step for the binding-free forms (everything except
/// SystemForm::ab, which needs the closures supplied).
ResidualReport check(SystemForm form, const SolutionPair& sp,
                     const SamplePlan& plan = {}, double tol = 1e-8);

ResidualReport check_ab(const SolutionPair& sp, const FuncBinding& a_of_psi,
                        const FuncBinding& b_of_psi,
                        const SamplePlan& plan = {}, double tol = 1e-8);

}  // namespace eulerlab

#endif
