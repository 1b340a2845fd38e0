#ifndef EULERLAB_FIELDLAB_HPP
#define EULERLAB_FIELDLAB_HPP

#include <Eigen/Dense>
#include <array>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "eulerlab/model.hpp"

namespace eulerlab {

/// Uniform periodic rectangle; node (i, j) sits at (i hx, j hy).
/// Sizes are powers of two >= 32 so the spectral masks stay meaningful.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int nx, int ny, double lx = 2.0 * M_PI, double ly = 2.0 * M_PI);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return lx_ / nx_; }
  double hy() const { return ly_ / ny_; }
  double x(int i) const { return hx() * i; }
  double y(int j) const { return hy() * j; }
  double cell_area() const { return hx() * hy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.lx_ == b.lx_ &&
           a.ly_ == b.ly_;
  }

 private:
  int nx_ = 0, ny_ = 0;
  double lx_ = 0.0, ly_ = 0.0;
};

/// Real scalar samples on a Grid2D; values(i, j) with i the x index.
struct Field2D {
  Grid2D grid;
  Eigen::ArrayXXd values;

  Field2D() = default;
  explicit Field2D(const Grid2D& g)
      : grid(g), values(Eigen::ArrayXXd::Zero(g.nx(), g.ny())) {}
  Field2D(const Grid2D& g, Eigen::ArrayXXd v)
      : grid(g), values(std::move(v)) {}

  double mean() const { return values.mean(); }
  double max_abs() const { return values.abs().maxCoeff(); }
  bool all_finite() const { return values.isFinite().all(); }
  /// Quadrature of the samples: on a periodic grid the trapezoid rule is the
  /// plain cell sum (spectrally exact for band-limited data).
  double integral() const { return values.sum() * grid.cell_area(); }
};

using SpecField = Eigen::ArrayXXcd;

/// 2-D transform pair plus the spectral-space operators.  Derivatives are
/// exact for every retained mode; the 2/3-rule mask gates quadratic products.
class Spectral {
 public:
  explicit Spectral(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }

  SpecField forward(const Field2D& f) const;
  Field2D inverse(const SpecField& f_hat) const;

  SpecField dx(const SpecField& f_hat) const;
  SpecField dy(const SpecField& f_hat) const;
  SpecField laplacian(const SpecField& f_hat) const;
  /// Solves (1 - lap) u = f: divide by 1 + |k|^2.
  SpecField helmholtz_invert(const SpecField& f_hat) const;
  /// Solves lap u = f: divide by -|k|^2, zero mode pinned to 0 (zero-mean
  /// gauge).
  SpecField poisson_invert(const SpecField& f_hat) const;
  void dealias(SpecField& f_hat) const;

  double kx(int i) const { return kx_[i]; }
  double ky(int j) const { return ky_[j]; }

 private:
  Grid2D grid_;
  mutable Eigen::FFT<double> fft_;
  Eigen::ArrayXd kx_, ky_;       // signed wavenumbers
  Eigen::ArrayXd kx_d_, ky_d_;   // derivative symbols (Nyquist zeroed)
  Eigen::ArrayXXd k2_;           // |k|^2
  Eigen::ArrayXXd mask_;         // 2/3-rule keep mask
};

/// (1 - lap) u = g on the grid, spectrally.
Field2D helmholtz_solve(const Field2D& g);
/// lap u = g, zero-mean gauge.  Requires |mean g| <= 1e-10 * max|g|.
Field2D poisson_solve(const Field2D& g);

/// Pointwise samples of an expression at grid nodes and time t, with the
/// pair's bindings; throws SingularEvalError when an exclusion covers a node
/// or a value is not finite.
Field2D sample_field(const Expr& e, const Grid2D& grid, double t,
                     const SolutionPair& bindings);

/// Simulator state: the two advected combinations
///   Gp = psi - lap psi + lap phi,   Gm = psi - lap psi - lap phi,
/// advanced by d_t G± + [phi ± psi, G±] = 0, plus derived stream caches.
/// `truncated` switches to the reduced dynamics (both combinations advected
/// by phi alone).
struct SimState {
  double time = 0.0;
  Field2D gp, gm;
  Field2D psi, phi;  // derived each step: Helmholtz / zero-mean Poisson
  double dt = 0.0;   // last accepted step size
  bool dealias = true;
  bool truncated = false;
};

/// Build a state from stream-function fields (G± formed spectrally).
SimState make_state(const Grid2D& grid, const Field2D& psi, const Field2D& phi,
                    double t0 = 0.0, bool dealias = true,
                    bool truncated = false);
/// Build a state from the advected combinations directly.
SimState make_state_from_g(const Grid2D& grid, const Field2D& gp,
                           const Field2D& gm, double t0 = 0.0,
                           bool dealias = true, bool truncated = false);

/// Largest stable step: 0.5 * min(hx, hy) / max |grad(phi ± psi)|.
double cfl_limit(const SimState& state);

/// One classical RK4 step.  Throws CflError when dt exceeds the advective
/// bound at the current state and NanError if the update stops being finite.
SimState step(const SimState& state, double dt);

/// (integral of lap psi - psi, integral of lap phi, integral of Gp^2,
///  integral of Gm^2).
std::array<double, 4> conserved(const SimState& state);

/// Band-limited random field: modes with 1 <= |k| <= kmax, seeded phases,
/// zero mean, normalized to the requested amplitude.
Field2D random_band_limited(const Grid2D& grid, int kmax, double amplitude,
                            std::uint64_t seed);

/// Uniformly spaced snapshots of a run.
struct Trajectory {
  Grid2D grid;
  double dt = 0.0;      // snapshot spacing in time
  bool dealias = true;
  bool truncated = false;
  std::vector<double> times;
  std::vector<Field2D> gp, gm;

  std::size_t size() const { return times.size(); }
  SimState state_at(std::size_t idx) const;
};

struct ConservationLog {
  std::vector<double> t, j0, k0, cp, cm;
  void append(const SimState& state);
};

struct RunResult {
  Trajectory trajectory;
  ConservationLog log;
  SimState final_state;
};

/// Advance `steps` RK4 steps, storing every `store_every`-th state (and the
/// initial one) plus the conservation series at every step.
RunResult simulate(const SimState& initial, double dt, int steps,
                   int store_every = 1);

/// Time-dependent vector potential reconstruction: two stream-like pairs
/// (P1, P2) and (P3, P4) integrated from the current right-hand sides by the
/// trapezoid rule, seeded so the curl constraints hold at t0:
///   -d_x P2 + d_y P1 = lap psi - psi,   -d_x P4 + d_y P3 = lap phi.
/// Requires zero-mean psi at all snapshots (periodic compatibility).
struct PotentialResult {
  std::vector<std::array<Field2D, 4>> p;  // per snapshot
  std::vector<double> curl_err_j;         // relative Linf per snapshot
  std::vector<double> curl_err_k;
  double tol = 0.0;
  bool pass = false;
};
PotentialResult potential_reconstruct(const Trajectory& traj,
                                      double tol = 1e-6);

/// Verifies d_t J0 + div J = 0 and the K analogue on the stored snapshots
/// (centered time differences, spectral space derivatives).
ResidualReport flux_divergence_check(const Trajectory& traj,
                                     double tol = 1e-4);

}  // namespace eulerlab

#endif
