#ifndef EULERLAB_CATALOG_HPP
#define EULERLAB_CATALOG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eulerlab/generators.hpp"
#include "eulerlab/model.hpp"

namespace eulerlab {

// ---------------------------------------------------------------------------
// Programmatic constructors for the closed-form solution families.
// ---------------------------------------------------------------------------

/// Moving-frame invariant solution
///   psi = V(s, t),
///   phi = [ (A'B + AB')(x^2 - y^2) - 2xy(AA' - BB') ] / (2 (A^2 + B^2))
///         + W(s, t),           s = B(t) x - A(t) y.
/// Preconditions: A^2 + B^2 > 0 on the sampled t-range, and the profiles
/// satisfy the reduced equations d_t(V - (A^2+B^2) V_ss) = 0,
/// d_t((A^2+B^2) W_ss) = 0 at sample points.
SolutionPair x1_invariant(const Func2Binding& v_profile,
                          const Func2Binding& w_profile, FuncBinding a,
                          FuncBinding b);

/// Rotation-invariant solution
///   psi = Q(r, t),  phi = r^2 theta / (2 t) + R(r, t)
/// with the angle cut and the origin excluded; Q, R must satisfy the
/// third-order reduced equations at sample points, and t = 0 is excluded.
SolutionPair x2_invariant(const Func2Binding& q_profile,
                          const Func2Binding& r_profile);

enum class ConditionalFamily {
  sin_exp,        // psi = sin(k(x-gamma)+phase)+c0, phi = e^{s2 sqrt(1+k^2) y} - gamma' y + T
  exp_sin,        // psi = e^{s1 sqrt(1+k^2)(x-gamma)}+c0, phi = sin(k y + phase) - gamma' y + T
  exp_exp_kappa,  // psi = e^{s1 sqrt(1-kappa^2)(x-gamma)}+c0, phi = e^{s2 kappa y} - gamma' y + T
  exp_parab,      // psi = gamma(t) e^{s1 x}+c0, phi = k y^2 + y T1 + T
  lin_exp         // psi = gamma(t) + k x, phi = e^{s2 y} + gamma' y / k
};

/// The wave-type families invariant under the generalized generator.  Signs
/// are explicit parameters (two independent ones where the family has two);
/// `phase` and `c0` realize the licensed cos/constant variants.
struct ConditionalParams {
  double k = 1.0;      // wavenumber (kappa for exp_exp_kappa)
  double sign1 = 1.0;  // sign in the psi exponent
  double sign2 = 1.0;  // sign in the phi exponent
  double phase = 0.0;
  double c0 = 0.0;     // additive constant in psi
};
SolutionPair conditional_family(ConditionalFamily family,
                                const ConditionalParams& params,
                                FuncBinding gamma, FuncBinding t_shift,
                                FuncBinding t1_shift = FuncBinding::zero());

/// Time-independent pair psi = f(v), phi = g(v) of one spatial variable.
SolutionPair static_pair(FuncBinding f, FuncBinding g, Var v = Var::x);

/// psi = 3x^2 + y^2, phi = e^{-x}: radial Laplacian and phi - lap phi = 0,
/// the eligible seed for the rotational partial-symmetry orbit.
SolutionPair xab_example();

enum class AbFamily { trig, spiral, traveling };
struct AbParams {
  double c1 = 1.0, c2 = 2.0, c3 = 0.0, k = 3.0;  // trig
};
/// The elementary solutions of the bracket-constrained system:
///   trig:      psi = c1 sin(k(x-t)) + c2 sin(k(y-t)) + c3, phi = x - y
///   spiral:    psi = 2t - theta,                           phi = r^2
///   traveling: psi = shape(y - t),                         phi = x
SolutionPair ab_elementary(AbFamily family, const AbParams& params = {},
                           FuncBinding shape = FuncBinding::tanh_profile());

// ---------------------------------------------------------------------------
// Registry: every family as a named, parameter-validated entry.
// ---------------------------------------------------------------------------

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  double min = -1e30;
  double max = 1e30;
  std::string doc;
};

struct FuncSpec {
  std::string name;
  std::string default_spec;
  std::string doc;
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<FuncSpec> funcs;
  SystemForm documented_form = SystemForm::eu;
  /// Generator this family is invariant under ("" if none declared).
  std::string invariant_generator;
  std::function<SolutionPair(const ParamMap&, const FuncMap&)> build;
  /// Generator instance matching the entry's own parameters (optional).
  std::function<Generator(const ParamMap&, const FuncMap&)> invariant_gen;
  /// Closures (A(psi), B(psi)) realizing the 'ab' form for this entry
  /// (optional; an invalid binding skips that closure).
  std::function<std::pair<FuncBinding, FuncBinding>(const ParamMap&)>
      ab_closures;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& find_entry(const std::string& id);  // throws UnknownIdError

/// Validate overrides against the schema, fill defaults, build.
SolutionPair build_entry(const std::string& id, const ParamMap& params = {},
                         const std::map<std::string, std::string>& funcs = {});

/// Schema-checked parameter merge used by build_entry (exposed for tests).
ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& overrides);

/// Parse a function spec: zero | const:c | poly:c0,c1,... | sin[:amp,freq,
/// phase] | cos[:amp,freq,phase] | exp[:amp,rate] | gauss | lorentz | tanh |
/// power:coeff,exponent.  Throws ParamError.
FuncBinding parse_func_spec(const std::string& spec);

}  // namespace eulerlab

#endif
