#ifndef EULERLAB_REDUCED_HPP
#define EULERLAB_REDUCED_HPP

#include <Eigen/Dense>

#include "eulerlab/model.hpp"

namespace eulerlab {

/// Uniform 1-D grid with n nodes, endpoints inclusive.
struct Grid1D {
  double min = 0.0;
  double max = 1.0;
  int n = 65;

  double spacing() const { return (max - min) / (n - 1); }
  double node(int i) const { return min + spacing() * i; }
};

/// Samples of a reduced profile on a Grid1D, at a fixed slice time.
struct Profile1D {
  Grid1D grid;
  Eigen::ArrayXd values;
  double t_param = 0.0;
};

/// Two-point boundary-value solve of V - (A^2+B^2) V_ss = F(s) by
/// second-order central differences and a tridiagonal sweep.  The discrete
/// residual at interior nodes is at roundoff (<= 1e-10 guaranteed).
Profile1D solve_v(const FuncBinding& f_rhs, double a, double b,
                  const Grid1D& grid, double left, double right);

/// Same for (A^2+B^2) W_ss = G(s).
Profile1D solve_w(const FuncBinding& g_rhs, double a, double b,
                  const Grid1D& grid, double left, double right);

/// Max interior defect of the discrete V equation (diagnostic for tests).
double discrete_residual_v(const Profile1D& v, const FuncBinding& f_rhs,
                           double d_coeff);
double discrete_residual_w(const Profile1D& w, const FuncBinding& g_rhs,
                           double d_coeff);

/// Exponent relation of the radial power solutions R = t^a r^b:
/// a = (b^2 - 2b - 4) / (2b); throws ParamError for b = 0.
double power_exponent(double b);

/// Residual expressions of the third-order reduced equations; the first
/// variable slot carries the radial coordinate.
///   Q: r^2 Q_rrr - 2rt Q_rrt + r Q_rr - 2t Q_rt - r^2 Q_r + 2rt Q_t + 3 Q_r
///   R: 2rt R_rrt - r^2 R_rrr + 2t R_rt - r R_rr + 5 R_r
ResidualSystem residual_q(const Func2Binding& q_profile);
ResidualSystem residual_r(const Func2Binding& r_profile);

/// Sample box for the reduced (r, t) residuals: r in [0.25, 2.5],
/// t in [0.3, 2].
SamplePlan reduced_plan();

/// Sampled preconditions used by the catalog constructors; throw
/// PreconditionError naming the offending profile.  The V/W residuals are
///   d_t(V - (A(t)^2+B(t)^2) V_ss) = 0   and   d_t((A^2+B^2) W_ss) = 0,
/// with the first slot carrying s.
void residual_v_check(const std::string& v_name, const Func2Binding& v,
                      const std::string& a_name, const FuncBinding& a,
                      const std::string& b_name, const FuncBinding& b,
                      double tol = 1e-7);
void residual_w_check(const std::string& w_name, const Func2Binding& w,
                      const std::string& a_name, const FuncBinding& a,
                      const std::string& b_name, const FuncBinding& b,
                      double tol = 1e-7);
void residual_q_check(const std::string& q_name, const Func2Binding& q,
                      double tol = 1e-7);
void residual_r_check(const std::string& r_name, const Func2Binding& r,
                      double tol = 1e-7);

/// Invariant solutions form a linear manifold over their rigid part: combine
/// two pairs with identical fixed parts into (alpha + c1 Z1 + c2 Z2) and
/// verify against the full system.  Throws PreconditionError when an input
/// fails the system or the fixed parts differ.
ResidualReport superposition_check(const SolutionPair& sp1,
                                   const SolutionPair& sp2, double c1,
                                   double c2, const SamplePlan& plan = {},
                                   double tol = 1e-7);

/// The combined pair itself (exposed for orbit/closure tests).
SolutionPair superpose(const SolutionPair& sp1, const SolutionPair& sp2,
                       double c1, double c2);

}  // namespace eulerlab

#endif
