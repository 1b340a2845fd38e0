#ifndef EULERLAB_GENERATORS_HPP
#define EULERLAB_GENERATORS_HPP

#include <string>
#include <vector>

#include "eulerlab/model.hpp"

namespace eulerlab {

/// Formal leaf names a generator component may reference.  They are plain
/// Parameter leaves until characteristic() substitutes the candidate pair.
namespace formal {
inline const std::string psi = "psi";
inline const std::string phi = "phi";
inline const std::string psi_x = "psi_x";
inline const std::string psi_y = "psi_y";
inline const std::string phi_x = "phi_x";
inline const std::string phi_y = "phi_y";
}  // namespace formal

enum class GeneratorKind { point, generalized };

/// A symmetry vector field xi d_x + eta d_y + tau d_t + zeta_psi d_psi +
/// zeta_phi d_phi.  Point generators never reference field derivatives;
/// generalized ones may use the formal first-derivative leaves.
struct Generator {
  std::string name;
  Expr xi, eta, tau;
  Expr zeta_psi, zeta_phi;
  GeneratorKind kind = GeneratorKind::point;
  ParamMap params;  // numeric constants appearing in components
  FuncMap funcs;    // opaque time functions appearing in components

  /// Enforced at construction: point kind must not use derivative leaves.
  void validate() const;
};

// The built-in generators.
Generator translation_x();
Generator translation_y();
Generator translation_t();
Generator rotation();
Generator psi_shift();
Generator phi_shift(FuncBinding q);
/// Moving-frame family: xi = A(t), eta = B(t), zeta_phi = x B' - y A'.
Generator x1(FuncBinding a, FuncBinding b);
/// Time-proportional rotation with quadratic potential: xi = -t y, eta = t x,
/// zeta_phi = (x^2+y^2)/2.
Generator x2();
/// Same base flow with the quadratic split across both fields by (a, b).
Generator x_ab(double a, double b);
/// Field scaling psi d_psi (partial symmetry).
Generator x_pp();
/// Generalized generator with characteristic (psi_y, phi_x).
Generator x3();

/// Registry lookup for the CLI: name in {Tx,Ty,Tt,Rot,PsiShift,PhiShift,X1,
/// X2,Xab,Xpp,X3}; required funcs/params per generator.  Throws
/// UnknownIdError / ParamError.
Generator builtin(const std::string& name, const ParamMap& params = {},
                  const FuncMap& funcs = {});
std::vector<std::string> builtin_names();

/// Evolutionary-form components after substituting a concrete pair:
/// Q_a = zeta_a - xi u_a,x - eta u_a,y - tau u_a,t.
struct Characteristic {
  Expr q_psi;
  Expr q_phi;
};
Characteristic characteristic(const Generator& g, const SolutionPair& sp);

/// On-shell symmetry condition: the directional (Gateaux) linearization of
/// the residual operator at sp in the direction of g's characteristic, which
/// on solutions coincides with the prolonged action.  `base` selects the
/// residual operator (eu or truncated).  Enforces that sp itself passes the
/// base form first.
ResidualReport symmetry_check(const Generator& g, const SolutionPair& sp,
                              const SamplePlan& plan = {}, double tol = 1e-8,
                              SystemForm base = SystemForm::eu);

/// Invariance condition Q_psi = Q_phi = 0 at sample points.
ResidualReport invariance_check(const Generator& g, const SolutionPair& sp,
                                const SamplePlan& plan = {},
                                double tol = 1e-8);

/// Finite orbit maps.  Each returns a new pair with composed exclusions and
/// inherits the input bindings; preconditions are enforced and violations
/// throw PreconditionError (never silent output).
SolutionPair orbit_x1(const SolutionPair& sp, FuncBinding a, FuncBinding b);
SolutionPair orbit_x2(const SolutionPair& sp, double lambda);
SolutionPair orbit_xab(const SolutionPair& sp, double a, double b,
                       double lambda, const SamplePlan& plan = {},
                       double tol = 1e-8);
SolutionPair orbit_phi_shift(const SolutionPair& sp, FuncBinding q);
SolutionPair orbit_scale_psi(const SolutionPair& sp, double lambda,
                             const SamplePlan& plan = {}, double tol = 1e-8);

/// The two rotational constraints that gate orbit_xab:
///   C1 = (y d_x - x d_y)[(1-b)(psi - lap psi) + a (phi - lap phi)]
///   C2 = (y d_x - x d_y)[a lap psi + (1-b) lap phi]
ResidualSystem partial_constraint_xab(const SolutionPair& sp, double a,
                                      double b);

/// Rotated-plus-quadratic image without the precondition gate; exposed so the
/// ineligible branch can be probed directly by tests and negative controls.
SolutionPair xab_image_unchecked(const SolutionPair& sp, double a, double b,
                                 double lambda);

}  // namespace eulerlab

#endif
