#include "eulerlab/expr.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace eulerlab {

namespace {

using Kind = Expr::Kind;
using Node = Expr::Node;

Expr make(Node n) {
  return Expr(std::make_shared<const Node>(std::move(n)));
}

bool both_const(const Expr& a, const Expr& b) {
  return a.is_constant() && b.is_constant();
}

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>(Node{Kind::Constant})) {}

Kind Expr::kind() const { return node_->kind; }

bool Expr::is_constant(double v) const {
  return is_constant() && node_->value == v;
}

double Expr::constant_value() const { return node_->value; }

std::size_t Expr::tree_size() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const Expr& c : n->args) stack.push_back(c.handle().get());
  }
  return seen.size();
}

Expr constant(double v) {
  Node n{Kind::Constant};
  n.value = v;
  return make(std::move(n));
}

Expr var(Var v) {
  Node n{Kind::Variable};
  n.var = v;
  return make(std::move(n));
}

Expr var_x() {
  static const Expr e = var(Var::x);
  return e;
}
Expr var_y() {
  static const Expr e = var(Var::y);
  return e;
}
Expr var_t() {
  static const Expr e = var(Var::t);
  return e;
}

Expr param(std::string name) {
  Node n{Kind::Parameter};
  n.name = std::move(name);
  return make(std::move(n));
}

Expr opaque(std::string name, Expr arg, int order) {
  Node n{Kind::Func};
  n.name = std::move(name);
  n.order = order;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr opaque2(std::string name, Expr a, Expr b, int order_a, int order_b) {
  Node n{Kind::Func2};
  n.name = std::move(name);
  n.order = order_a;
  n.order2 = order_b;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (both_const(a, b)) return constant(a.constant_value() + b.constant_value());
  Node n{Kind::Add};
  n.args = {a, b};
  return make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (both_const(a, b)) return constant(a.constant_value() - b.constant_value());
  if (a.is_constant(0.0)) return -b;
  return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (both_const(a, b)) return constant(a.constant_value() * b.constant_value());
  Node n{Kind::Mul};
  n.args = {a, b};
  return make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0)) return constant(0.0);
  if (both_const(a, b)) return constant(a.constant_value() / b.constant_value());
  Node n{Kind::Div};
  n.args = {a, b};
  return make(std::move(n));
}

Expr operator-(const Expr& e) {
  if (e.is_constant()) return constant(-e.constant_value());
  if (e.kind() == Kind::Neg) return e.node().args[0];
  Node n{Kind::Neg};
  n.args = {e};
  return make(std::move(n));
}

namespace {

Expr unary(Kind k, const Expr& e, double (*fold)(double)) {
  if (e.is_constant()) return constant(fold(e.constant_value()));
  Node n{k};
  n.args = {e};
  return make(std::move(n));
}

}  // namespace

Expr sin(const Expr& e) {
  return unary(Kind::Sin, e, +[](double v) { return std::sin(v); });
}
Expr cos(const Expr& e) {
  return unary(Kind::Cos, e, +[](double v) { return std::cos(v); });
}
Expr exp(const Expr& e) {
  return unary(Kind::Exp, e, +[](double v) { return std::exp(v); });
}
Expr log(const Expr& e) {
  return unary(Kind::Log, e, +[](double v) { return std::log(v); });
}
Expr sqrt(const Expr& e) {
  return unary(Kind::Sqrt, e, +[](double v) { return std::sqrt(v); });
}

Expr atan2(const Expr& y_arg, const Expr& x_arg) {
  if (both_const(y_arg, x_arg))
    return constant(std::atan2(y_arg.constant_value(), x_arg.constant_value()));
  Node n{Kind::Atan2};
  n.args = {y_arg, x_arg};
  return make(std::move(n));
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return constant(1.0);
  if (base.is_constant(1.0)) return constant(1.0);
  if (both_const(base, exponent))
    return constant(std::pow(base.constant_value(), exponent.constant_value()));
  Node n{Kind::Pow};
  n.args = {base, exponent};
  return make(std::move(n));
}

Expr pow(const Expr& base, double exponent) {
  return pow(base, constant(exponent));
}

Expr square(const Expr& e) { return pow(e, 2.0); }

namespace {

class Differentiator {
 public:
  Differentiator(Var v) : v_(v) {}

  Expr run(const Expr& e) {
    auto it = cache_.find(e.handle().get());
    if (it != cache_.end()) return it->second;
    Expr d = derive(e);
    cache_.emplace(e.handle().get(), d);
    return d;
  }

 private:
  Expr derive(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::Constant:
      case Kind::Parameter:
        return constant(0.0);
      case Kind::Variable:
        return constant(n.var == v_ ? 1.0 : 0.0);
      case Kind::Func: {
        Expr inner = run(n.args[0]);
        if (inner.is_constant(0.0)) return constant(0.0);
        return opaque(n.name, n.args[0], n.order + 1) * inner;
      }
      case Kind::Func2: {
        Expr da = run(n.args[0]);
        Expr db = run(n.args[1]);
        Expr out = constant(0.0);
        if (!da.is_constant(0.0))
          out = out + opaque2(n.name, n.args[0], n.args[1], n.order + 1,
                              n.order2) *
                          da;
        if (!db.is_constant(0.0))
          out = out + opaque2(n.name, n.args[0], n.args[1], n.order,
                              n.order2 + 1) *
                          db;
        return out;
      }
      case Kind::Neg:
        return -run(n.args[0]);
      case Kind::Sin:
        return cos(n.args[0]) * run(n.args[0]);
      case Kind::Cos:
        return -(sin(n.args[0]) * run(n.args[0]));
      case Kind::Exp:
        return e * run(n.args[0]);
      case Kind::Log:
        return run(n.args[0]) / n.args[0];
      case Kind::Sqrt:
        return run(n.args[0]) / (constant(2.0) * e);
      case Kind::Atan2: {
        // d atan2(u, w) = (w du - u dw) / (u^2 + w^2); for (y, x) this is the
        // exact angle gradient theta_x = -y/r^2, theta_y = x/r^2.
        const Expr& u = n.args[0];
        const Expr& w = n.args[1];
        Expr du = run(u);
        Expr dw = run(w);
        return (w * du - u * dw) / (square(u) + square(w));
      }
      case Kind::Add:
        return run(n.args[0]) + run(n.args[1]);
      case Kind::Mul:
        return run(n.args[0]) * n.args[1] + n.args[0] * run(n.args[1]);
      case Kind::Div: {
        const Expr& p = n.args[0];
        const Expr& q = n.args[1];
        return (run(p) * q - p * run(q)) / square(q);
      }
      case Kind::Pow: {
        const Expr& f = n.args[0];
        const Expr& g = n.args[1];
        Expr df = run(f);
        if (g.is_constant()) {
          const double c = g.constant_value();
          return constant(c) * pow(f, c - 1.0) * df;
        }
        Expr dg = run(g);
        return e * (dg * log(f) + g * df / f);
      }
    }
    return constant(0.0);  // unreachable
  }

  Var v_;
  std::unordered_map<const Node*, Expr> cache_;
};

}  // namespace

Expr diff(const Expr& e, Var v, int n) {
  Expr out = e;
  for (int i = 0; i < n; ++i) out = Differentiator(v).run(out);
  return out;
}

Expr bracket(const Expr& f, const Expr& g) {
  return diff(f, Var::x) * diff(g, Var::y) - diff(g, Var::x) * diff(f, Var::y);
}

Expr laplacian(const Expr& f) {
  return diff(f, Var::x, 2) + diff(f, Var::y, 2);
}

namespace {

class Rebuilder {
 public:
  Expr run(const Expr& e) {
    auto it = cache_.find(e.handle().get());
    if (it != cache_.end()) return it->second;
    Expr r = rebuild(e);
    cache_.emplace(e.handle().get(), r);
    return r;
  }

 private:
  Expr rebuild(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::Constant:
      case Kind::Variable:
      case Kind::Parameter:
        return e;
      case Kind::Func:
        return opaque(n.name, run(n.args[0]), n.order);
      case Kind::Func2:
        return opaque2(n.name, run(n.args[0]), run(n.args[1]), n.order,
                       n.order2);
      case Kind::Neg:
        return -run(n.args[0]);
      case Kind::Sin:
        return sin(run(n.args[0]));
      case Kind::Cos:
        return cos(run(n.args[0]));
      case Kind::Exp:
        return exp(run(n.args[0]));
      case Kind::Log:
        return log(run(n.args[0]));
      case Kind::Sqrt:
        return sqrt(run(n.args[0]));
      case Kind::Atan2:
        return atan2(run(n.args[0]), run(n.args[1]));
      case Kind::Add:
        return run(n.args[0]) + run(n.args[1]);
      case Kind::Mul:
        return run(n.args[0]) * run(n.args[1]);
      case Kind::Div:
        return run(n.args[0]) / run(n.args[1]);
      case Kind::Pow:
        return pow(run(n.args[0]), run(n.args[1]));
    }
    return e;  // unreachable
  }

  std::unordered_map<const Node*, Expr> cache_;
};

}  // namespace

Expr simplify(const Expr& e) { return Rebuilder().run(e); }

namespace {

class Substituter {
 public:
  explicit Substituter(const Substitution& s) : s_(s) {}

  Expr run(const Expr& e) {
    auto it = cache_.find(e.handle().get());
    if (it != cache_.end()) return it->second;
    Expr r = apply(e);
    cache_.emplace(e.handle().get(), r);
    return r;
  }

 private:
  Expr apply(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::Constant:
        return e;
      case Kind::Variable: {
        auto it = s_.vars.find(n.var);
        return it != s_.vars.end() ? it->second : e;
      }
      case Kind::Parameter: {
        auto it = s_.params.find(n.name);
        return it != s_.params.end() ? it->second : e;
      }
      case Kind::Func:
        return opaque(n.name, run(n.args[0]), n.order);
      case Kind::Func2:
        return opaque2(n.name, run(n.args[0]), run(n.args[1]), n.order,
                       n.order2);
      case Kind::Neg:
        return -run(n.args[0]);
      case Kind::Sin:
        return sin(run(n.args[0]));
      case Kind::Cos:
        return cos(run(n.args[0]));
      case Kind::Exp:
        return exp(run(n.args[0]));
      case Kind::Log:
        return log(run(n.args[0]));
      case Kind::Sqrt:
        return sqrt(run(n.args[0]));
      case Kind::Atan2:
        return atan2(run(n.args[0]), run(n.args[1]));
      case Kind::Add:
        return run(n.args[0]) + run(n.args[1]);
      case Kind::Mul:
        return run(n.args[0]) * run(n.args[1]);
      case Kind::Div:
        return run(n.args[0]) / run(n.args[1]);
      case Kind::Pow:
        return pow(run(n.args[0]), run(n.args[1]));
    }
    return e;  // unreachable
  }

  const Substitution& s_;
  std::unordered_map<const Node*, Expr> cache_;
};

class Evaluator {
 public:
  explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

  double run(const Expr& e) {
    auto it = cache_.find(e.handle().get());
    if (it != cache_.end()) return it->second;
    double v = compute(e);
    cache_.emplace(e.handle().get(), v);
    return v;
  }

 private:
  double compute(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::Constant:
        return n.value;
      case Kind::Variable:
        switch (n.var) {
          case Var::x:
            return ctx_.x;
          case Var::y:
            return ctx_.y;
          case Var::t:
            return ctx_.t;
        }
        return 0.0;
      case Kind::Parameter: {
        if (ctx_.params) {
          auto it = ctx_.params->find(n.name);
          if (it != ctx_.params->end()) return it->second;
        }
        throw UnboundSymbolError("unbound parameter '" + n.name + "'");
      }
      case Kind::Func: {
        if (!ctx_.funcs)
          throw UnboundSymbolError("unbound function '" + n.name + "'");
        auto it = ctx_.funcs->find(n.name);
        if (it == ctx_.funcs->end())
          throw UnboundSymbolError("unbound function '" + n.name + "'");
        return it->second(run(n.args[0]), n.order);
      }
      case Kind::Func2: {
        if (!ctx_.funcs2)
          throw UnboundSymbolError("unbound function '" + n.name + "'");
        auto it = ctx_.funcs2->find(n.name);
        if (it == ctx_.funcs2->end())
          throw UnboundSymbolError("unbound function '" + n.name + "'");
        return it->second(run(n.args[0]), run(n.args[1]), n.order, n.order2);
      }
      case Kind::Neg:
        return -run(n.args[0]);
      case Kind::Sin:
        return std::sin(run(n.args[0]));
      case Kind::Cos:
        return std::cos(run(n.args[0]));
      case Kind::Exp:
        return std::exp(run(n.args[0]));
      case Kind::Log:
        return std::log(run(n.args[0]));
      case Kind::Sqrt:
        return std::sqrt(run(n.args[0]));
      case Kind::Atan2:
        return std::atan2(run(n.args[0]), run(n.args[1]));
      case Kind::Add:
        return run(n.args[0]) + run(n.args[1]);
      case Kind::Mul:
        return run(n.args[0]) * run(n.args[1]);
      case Kind::Div:
        return run(n.args[0]) / run(n.args[1]);
      case Kind::Pow:
        return std::pow(run(n.args[0]), run(n.args[1]));
    }
    return 0.0;  // unreachable
  }

  const EvalContext& ctx_;
  std::unordered_map<const Node*, double> cache_;
};

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
  return Substituter(s).run(e);
}

double eval(const Expr& e, const EvalContext& ctx) {
  return Evaluator(ctx).run(e);
}

bool references_param(const Expr& e, const std::vector<std::string>& names) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{e.handle().get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->kind == Kind::Parameter)
      for (const auto& name : names)
        if (n->name == name) return true;
    for (const Expr& c : n->args) stack.push_back(c.handle().get());
  }
  return false;
}

namespace {

void print(const Expr& e, std::ostream& os) {
  const Node& n = e.node();
  auto binary = [&](const char* op) {
    os << '(';
    print(n.args[0], os);
    os << op;
    print(n.args[1], os);
    os << ')';
  };
  auto call = [&](const char* fn) {
    os << fn << '(';
    print(n.args[0], os);
    os << ')';
  };
  switch (n.kind) {
    case Kind::Constant:
      os << n.value;
      return;
    case Kind::Variable:
      os << (n.var == Var::x ? 'x' : n.var == Var::y ? 'y' : 't');
      return;
    case Kind::Parameter:
      os << n.name;
      return;
    case Kind::Func:
      os << n.name;
      if (n.order > 0) os << '^' << '(' << n.order << ')';
      os << '(';
      print(n.args[0], os);
      os << ')';
      return;
    case Kind::Func2:
      os << n.name;
      if (n.order > 0 || n.order2 > 0)
        os << "^(" << n.order << ',' << n.order2 << ')';
      os << '(';
      print(n.args[0], os);
      os << ',';
      print(n.args[1], os);
      os << ')';
      return;
    case Kind::Neg:
      os << "(-";
      print(n.args[0], os);
      os << ')';
      return;
    case Kind::Sin:
      call("sin");
      return;
    case Kind::Cos:
      call("cos");
      return;
    case Kind::Exp:
      call("exp");
      return;
    case Kind::Log:
      call("log");
      return;
    case Kind::Sqrt:
      call("sqrt");
      return;
    case Kind::Atan2:
      os << "atan2(";
      print(n.args[0], os);
      os << ',';
      print(n.args[1], os);
      os << ')';
      return;
    case Kind::Add:
      binary("+");
      return;
    case Kind::Mul:
      binary("*");
      return;
    case Kind::Div:
      binary("/");
      return;
    case Kind::Pow:
      binary("^");
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

std::string unique_name(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  return base + "@" + std::to_string(counter.fetch_add(1));
}

}  // namespace eulerlab
