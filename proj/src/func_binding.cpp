#include "eulerlab/func_binding.hpp"

#include <cmath>
#include <complex>
#include <utility>

namespace eulerlab {

double FuncBinding::operator()(double s, int order) const {
  if (!eval_) throw UnboundSymbolError("opaque function has no binding");
  if (order < 0 || order > max_order_)
    throw UnboundDerivativeError("derivative order " + std::to_string(order) +
                                 " not bound (max " +
                                 std::to_string(max_order_) + ")");
  return eval_(s, order);
}

double Func2Binding::operator()(double a, double b, int na, int nb) const {
  if (!eval_) throw UnboundSymbolError("opaque function has no binding");
  if (na < 0 || nb < 0 || na > max_order_ || nb > max_order_)
    throw UnboundDerivativeError(
        "derivative order (" + std::to_string(na) + "," + std::to_string(nb) +
        ") not bound (max " + std::to_string(max_order_) + ")");
  return eval_(a, b, na, nb);
}

double power_derivative(double s, double exponent, int order) {
  double factor = 1.0;
  double e = exponent;
  for (int i = 0; i < order; ++i) {
    factor *= e;
    e -= 1.0;
  }
  if (factor == 0.0) return 0.0;  // integer exponent fully differentiated away
  return factor * std::pow(s, e);
}

FuncBinding FuncBinding::zero() {
  return {[](double, int) { return 0.0; }, kUnlimited};
}

FuncBinding FuncBinding::constant(double c) {
  return {[c](double, int order) { return order == 0 ? c : 0.0; }, kUnlimited};
}

FuncBinding FuncBinding::polynomial(std::vector<double> coeffs) {
  return {[coeffs = std::move(coeffs)](double s, int order) {
            double out = 0.0;
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
              if (static_cast<int>(k) < order) continue;
              double term = coeffs[k];
              for (int i = 0; i < order; ++i)
                term *= static_cast<double>(k - i);
              out += term * std::pow(s, static_cast<double>(k - order));
            }
            return out;
          },
          kUnlimited};
}

FuncBinding FuncBinding::sinusoid(double amp, double freq, double phase) {
  return {[amp, freq, phase](double s, int order) {
            const double arg = freq * s + phase + 0.5 * M_PI * order;
            return amp * std::pow(freq, order) * std::sin(arg);
          },
          kUnlimited};
}

FuncBinding FuncBinding::cosine(double amp, double freq, double phase) {
  return sinusoid(amp, freq, phase + 0.5 * M_PI);
}

FuncBinding FuncBinding::exponential(double amp, double rate) {
  return {[amp, rate](double s, int order) {
            return amp * std::pow(rate, order) * std::exp(rate * s);
          },
          kUnlimited};
}

FuncBinding FuncBinding::gaussian() {
  // d^n/ds^n exp(-s^2) = P_n(s) exp(-s^2), P_0 = 1, P_{n+1} = P_n' - 2 s P_n.
  return {[](double s, int order) {
            std::vector<double> p{1.0};
            for (int n = 0; n < order; ++n) {
              std::vector<double> q(p.size() + 1, 0.0);
              for (std::size_t k = 1; k < p.size(); ++k)
                q[k - 1] += static_cast<double>(k) * p[k];
              for (std::size_t k = 0; k < p.size(); ++k) q[k + 1] -= 2.0 * p[k];
              p = std::move(q);
            }
            double poly = 0.0;
            for (std::size_t k = p.size(); k-- > 0;) poly = poly * s + p[k];
            return poly * std::exp(-s * s);
          },
          kUnlimited};
}

FuncBinding FuncBinding::lorentzian() {
  // 1/(1+s^2) = Im (s - i)^{-1}; the n-th derivative keeps the pole form.
  return {[](double s, int order) {
            std::complex<double> pole(s, -1.0);
            double fact = 1.0;
            for (int k = 1; k <= order; ++k) fact *= static_cast<double>(k);
            const double sign = (order % 2 == 0) ? 1.0 : -1.0;
            return sign * fact *
                   std::imag(std::pow(pole, -(order + 1.0)));
          },
          kUnlimited};
}

FuncBinding FuncBinding::power(double coeff, double exponent) {
  return {[coeff, exponent](double s, int order) {
            return coeff * power_derivative(s, exponent, order);
          },
          kUnlimited};
}

FuncBinding FuncBinding::tanh_profile() {
  // d^n tanh = P_n(tanh), P_1 = 1 - T^2, P_{n+1} = P_n'(T) (1 - T^2).
  return {[](double s, int order) {
            const double tval = std::tanh(s);
            if (order == 0) return tval;
            std::vector<double> p{1.0, 0.0, -1.0};  // P_1 = 1 - T^2
            for (int n = 1; n < order; ++n) {
              std::vector<double> dp(p.size() > 0 ? p.size() - 1 : 0, 0.0);
              for (std::size_t k = 1; k < p.size(); ++k)
                dp[k - 1] = static_cast<double>(k) * p[k];
              // multiply dp by (1 - T^2)
              std::vector<double> q(dp.size() + 2, 0.0);
              for (std::size_t k = 0; k < dp.size(); ++k) {
                q[k] += dp[k];
                q[k + 2] -= dp[k];
              }
              p = std::move(q);
            }
            double out = 0.0;
            for (std::size_t k = p.size(); k-- > 0;) out = out * tval + p[k];
            return out;
          },
          kUnlimited};
}

FuncBinding FuncBinding::from_derivatives(
    std::vector<std::function<double(double)>> derivs) {
  const int max_order = static_cast<int>(derivs.size()) - 1;
  return {[derivs = std::move(derivs)](double s, int order) {
            return derivs[static_cast<std::size_t>(order)](s);
          },
          max_order};
}

Func2Binding Func2Binding::zero() {
  return {[](double, double, int, int) { return 0.0; }, kUnlimited};
}

Func2Binding Func2Binding::constant(double c) {
  return {[c](double, double, int na, int nb) {
            return (na == 0 && nb == 0) ? c : 0.0;
          },
          kUnlimited};
}

Func2Binding Func2Binding::power(double coeff, double pa, double pb) {
  return {[coeff, pa, pb](double a, double b, int na, int nb) {
            return coeff * power_derivative(a, pa, na) *
                   power_derivative(b, pb, nb);
          },
          kUnlimited};
}

Func2Binding Func2Binding::of_first(FuncBinding f) {
  return {[f = std::move(f)](double a, double, int na, int nb) {
            return nb == 0 ? f(a, na) : 0.0;
          },
          kUnlimited};
}

Func2Binding Func2Binding::of_second(FuncBinding f) {
  return {[f = std::move(f)](double, double b, int na, int nb) {
            return na == 0 ? f(b, nb) : 0.0;
          },
          kUnlimited};
}

Func2Binding Func2Binding::separable(FuncBinding f, FuncBinding g) {
  return {[f = std::move(f), g = std::move(g)](double a, double b, int na,
                                               int nb) {
            return f(a, na) * g(b, nb);
          },
          kUnlimited};
}

Func2Binding Func2Binding::sum(Func2Binding lhs, Func2Binding rhs) {
  return {[lhs = std::move(lhs), rhs = std::move(rhs)](double a, double b,
                                                       int na, int nb) {
            return lhs(a, b, na, nb) + rhs(a, b, na, nb);
          },
          kUnlimited};
}

}  // namespace eulerlab
