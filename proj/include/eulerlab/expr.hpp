#ifndef EULERLAB_EXPR_HPP
#define EULERLAB_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eulerlab/func_binding.hpp"

namespace eulerlab {

/// Independent variables of every expression in the library.
enum class Var : std::uint8_t { x = 0, y = 1, t = 2 };

/// Immutable symbolic expression over (x, y, t), named parameters and opaque
/// function applications.  Exact differentiation closes over the node set;
/// evaluation is deterministic (same tree + same bindings -> bit-identical
/// doubles).  Values are cheap shared handles, safe to copy across threads.
class Expr {
 public:
  enum class Kind : std::uint8_t {
    Constant,   // real literal
    Variable,   // x | y | t
    Parameter,  // named constant bound at evaluation
    Func,       // opaque univariate application  f^(n)(arg)
    Func2,      // opaque bivariate application   f^(na,nb)(a, b)
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Atan2,  // atan2(first, second), the plane angle primitive
    Add,
    Mul,
    Div,
    Pow
  };

  struct Node;

  Expr();  // constant 0
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_constant(double v) const;
  double constant_value() const;  // requires Constant kind
  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& handle() const { return node_; }

  /// Number of distinct nodes reachable from this handle (diagnostic).
  std::size_t tree_size() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Kind kind;
  double value = 0.0;      // Constant
  Var var = Var::x;        // Variable
  std::string name;        // Parameter / Func / Func2
  int order = 0;           // Func derivative order; Func2 first-slot order
  int order2 = 0;          // Func2 second-slot order
  std::vector<Expr> args;  // children
};

// Leaf constructors.
Expr constant(double v);
Expr var(Var v);
Expr var_x();
Expr var_y();
Expr var_t();
Expr param(std::string name);
/// Opaque univariate application name^(order)(arg).
Expr opaque(std::string name, Expr arg, int order = 0);
/// Opaque bivariate application name^(order_a, order_b)(a, b).
Expr opaque2(std::string name, Expr a, Expr b, int order_a = 0,
             int order_b = 0);

// Arithmetic with the usual 0/1/constant folding at construction time.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& e);
inline Expr operator+(const Expr& a, double b) { return a + constant(b); }
inline Expr operator+(double a, const Expr& b) { return constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - constant(b); }
inline Expr operator-(double a, const Expr& b) { return constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * constant(b); }
inline Expr operator*(double a, const Expr& b) { return constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / constant(b); }
inline Expr operator/(double a, const Expr& b) { return constant(a) / b; }

Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);
Expr atan2(const Expr& y_arg, const Expr& x_arg);
Expr pow(const Expr& base, const Expr& exponent);
Expr pow(const Expr& base, double exponent);
Expr square(const Expr& e);

/// Exact n-th partial derivative; total on well-formed trees.
Expr diff(const Expr& e, Var v, int n = 1);

/// Poisson bracket [f,g] = f_x g_y - g_x f_y.
Expr bracket(const Expr& f, const Expr& g);

/// f_xx + f_yy.
Expr laplacian(const Expr& f);

/// Constant folding, 0/1 identities, neg-neg collapse.  Semantic equality is
/// preserved; there is no canonical form beyond that.
Expr simplify(const Expr& e);

/// Simultaneous substitution: variables and/or parameters replaced by
/// expressions.  Opaque-function names and orders are untouched.
struct Substitution {
  std::map<Var, Expr> vars;
  std::map<std::string, Expr> params;
};
Expr substitute(const Expr& e, const Substitution& s);

/// IEEE double evaluation.  NaN/Inf propagate and are reported by callers,
/// never masked here.  Throws UnboundSymbolError / UnboundDerivativeError.
double eval(const Expr& e, const EvalContext& ctx);

/// True if any Parameter leaf carries one of the given names.
bool references_param(const Expr& e, const std::vector<std::string>& names);

/// Parenthesized rendering for reports and diagnostics.
std::string to_string(const Expr& e);

/// Process-unique name "base@N" for opaque-function instances, so merged
/// binding maps never collide.
std::string unique_name(const std::string& base);

}  // namespace eulerlab

#endif
