#ifndef EULERLAB_FUNC_BINDING_HPP
#define EULERLAB_FUNC_BINDING_HPP

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "eulerlab/errors.hpp"

namespace eulerlab {

/// Numeric realization of a univariate opaque function f(s).
///
/// The symbolic layer never guesses a closed form for A(t), gamma(t), ...;
/// every derivative order reachable by differentiation must be bound here.
/// Requesting an order beyond `max_order()` throws UnboundDerivativeError.
class FuncBinding {
 public:
  static constexpr int kUnlimited = std::numeric_limits<int>::max();

  FuncBinding() = default;
  FuncBinding(std::function<double(double, int)> eval, int max_order)
      : eval_(std::move(eval)), max_order_(max_order) {}

  /// Value of the order-th derivative at s.
  double operator()(double s, int order) const;

  int max_order() const { return max_order_; }
  bool valid() const { return static_cast<bool>(eval_); }

  // Stock bindings, all with exact derivatives of every order unless noted.
  static FuncBinding zero();
  static FuncBinding constant(double c);
  /// c0 + c1 s + c2 s^2 + ...
  static FuncBinding polynomial(std::vector<double> coeffs);
  /// amp * sin(freq * s + phase)
  static FuncBinding sinusoid(double amp = 1.0, double freq = 1.0,
                              double phase = 0.0);
  /// amp * cos(freq * s + phase)
  static FuncBinding cosine(double amp = 1.0, double freq = 1.0,
                            double phase = 0.0);
  /// amp * exp(rate * s)
  static FuncBinding exponential(double amp = 1.0, double rate = 1.0);
  /// exp(-s^2); derivatives via the Hermite-style recursion.
  static FuncBinding gaussian();
  /// 1 / (1 + s^2); derivatives via the complex pole formula.
  static FuncBinding lorentzian();
  /// coeff * s^exponent (real exponent; derivative brings falling factors).
  static FuncBinding power(double coeff, double exponent);
  /// tanh(s); derivatives via the polynomial-in-tanh recursion.
  static FuncBinding tanh_profile();

  /// Derivatives listed explicitly, orders 0..derivs.size()-1.
  static FuncBinding from_derivatives(
      std::vector<std::function<double(double)>> derivs);

 private:
  std::function<double(double, int)> eval_;
  int max_order_ = -1;
};

/// Numeric realization of a bivariate opaque function f(a, b), evaluator
/// indexed by a derivative multi-order (na, nb).  Needed for the reduction
/// profiles V(s,t), W(s,t), Q(r,t), R(r,t) whose mixed derivatives enter the
/// residual expressions.
class Func2Binding {
 public:
  static constexpr int kUnlimited = std::numeric_limits<int>::max();

  Func2Binding() = default;
  Func2Binding(std::function<double(double, double, int, int)> eval,
               int max_order)
      : eval_(std::move(eval)), max_order_(max_order) {}

  double operator()(double a, double b, int na, int nb) const;

  int max_order() const { return max_order_; }
  bool valid() const { return static_cast<bool>(eval_); }

  static Func2Binding zero();
  static Func2Binding constant(double c);
  /// coeff * a^pa * b^pb (real exponents).
  static Func2Binding power(double coeff, double pa, double pb);
  /// f(a), constant in the second slot.
  static Func2Binding of_first(FuncBinding f);
  /// f(b), constant in the first slot.
  static Func2Binding of_second(FuncBinding f);
  /// f(a) * g(b).
  static Func2Binding separable(FuncBinding f, FuncBinding g);
  /// lhs + rhs pointwise (derivatives add).
  static Func2Binding sum(Func2Binding lhs, Func2Binding rhs);

 private:
  std::function<double(double, double, int, int)> eval_;
  int max_order_ = -1;
};

using ParamMap = std::map<std::string, double>;
using FuncMap = std::map<std::string, FuncBinding>;
using Func2Map = std::map<std::string, Func2Binding>;

/// Point + name bindings against which an Expr evaluates.
struct EvalContext {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  const ParamMap* params = nullptr;
  const FuncMap* funcs = nullptr;
  const Func2Map* funcs2 = nullptr;
};

/// d^order/ds^order of s^exponent at s (falling-factorial prefactor).
double power_derivative(double s, double exponent, int order);

}  // namespace eulerlab

#endif
