#include "eulerlab/fieldlab.hpp"

#include <cmath>

#include "eulerlab/rng.hpp"

namespace eulerlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid2D::Grid2D(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (!power_of_two(nx) || !power_of_two(ny) || nx < 32 || ny < 32)
    throw ParamError("Grid2D sizes must be powers of two >= 32");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ParamError("Grid2D lengths must be positive");
}

Spectral::Spectral(const Grid2D& grid) : grid_(grid) {
  const int nx = grid.nx(), ny = grid.ny();
  kx_.resize(nx);
  kx_d_.resize(nx);
  for (int i = 0; i < nx; ++i) {
    const int s = (i <= nx / 2) ? i : i - nx;
    kx_[i] = 2.0 * M_PI * s / grid.lx();
    kx_d_[i] = (i == nx / 2) ? 0.0 : kx_[i];  // odd-derivative Nyquist
  }
  ky_.resize(ny);
  ky_d_.resize(ny);
  for (int j = 0; j < ny; ++j) {
    const int s = (j <= ny / 2) ? j : j - ny;
    ky_[j] = 2.0 * M_PI * s / grid.ly();
    ky_d_[j] = (j == ny / 2) ? 0.0 : ky_[j];
  }
  k2_.resize(nx, ny);
  mask_.resize(nx, ny);
  for (int i = 0; i < nx; ++i) {
    const int si = (i <= nx / 2) ? i : i - nx;
    for (int j = 0; j < ny; ++j) {
      const int sj = (j <= ny / 2) ? j : j - ny;
      k2_(i, j) = kx_[i] * kx_[i] + ky_[j] * ky_[j];
      const bool keep =
          std::abs(si) <= nx / 3 && std::abs(sj) <= ny / 3;
      mask_(i, j) = keep ? 1.0 : 0.0;
    }
  }
}

SpecField Spectral::forward(const Field2D& f) const {
  const int nx = grid_.nx(), ny = grid_.ny();
  SpecField a = f.values.cast<std::complex<double>>();
  Eigen::VectorXcd in(nx), out(nx);
  for (int j = 0; j < ny; ++j) {
    in = a.col(j).matrix();
    fft_.fwd(out, in);
    a.col(j) = out.array();
  }
  Eigen::VectorXcd rin(ny), rout(ny);
  for (int i = 0; i < nx; ++i) {
    rin = a.row(i).matrix().transpose();
    fft_.fwd(rout, rin);
    a.row(i) = rout.array().transpose();
  }
  return a;
}

Field2D Spectral::inverse(const SpecField& f_hat) const {
  const int nx = grid_.nx(), ny = grid_.ny();
  SpecField a = f_hat;
  Eigen::VectorXcd rin(ny), rout(ny);
  for (int i = 0; i < nx; ++i) {
    rin = a.row(i).matrix().transpose();
    fft_.inv(rout, rin);
    a.row(i) = rout.array().transpose();
  }
  Eigen::VectorXcd in(nx), out(nx);
  for (int j = 0; j < ny; ++j) {
    in = a.col(j).matrix();
    fft_.inv(out, in);
    a.col(j) = out.array();
  }
  return Field2D(grid_, a.real());
}

SpecField Spectral::dx(const SpecField& f_hat) const {
  SpecField out = f_hat;
  const std::complex<double> iu(0.0, 1.0);
  for (int i = 0; i < grid_.nx(); ++i) out.row(i) *= iu * kx_d_[i];
  return out;
}

SpecField Spectral::dy(const SpecField& f_hat) const {
  SpecField out = f_hat;
  const std::complex<double> iu(0.0, 1.0);
  for (int j = 0; j < grid_.ny(); ++j) out.col(j) *= iu * ky_d_[j];
  return out;
}

SpecField Spectral::laplacian(const SpecField& f_hat) const {
  return f_hat * (-k2_).cast<std::complex<double>>();
}

SpecField Spectral::helmholtz_invert(const SpecField& f_hat) const {
  return f_hat / (1.0 + k2_).cast<std::complex<double>>();
}

SpecField Spectral::poisson_invert(const SpecField& f_hat) const {
  SpecField out = f_hat;
  for (int i = 0; i < grid_.nx(); ++i)
    for (int j = 0; j < grid_.ny(); ++j)
      out(i, j) = (i == 0 && j == 0)
                      ? std::complex<double>(0.0, 0.0)
                      : out(i, j) / std::complex<double>(-k2_(i, j), 0.0);
  return out;
}

void Spectral::dealias(SpecField& f_hat) const {
  f_hat *= mask_.cast<std::complex<double>>();
}

Field2D helmholtz_solve(const Field2D& g) {
  Spectral sp(g.grid);
  return sp.inverse(sp.helmholtz_invert(sp.forward(g)));
}

Field2D poisson_solve(const Field2D& g) {
  if (std::abs(g.mean()) > 1e-10 * std::max(1e-300, g.max_abs()))
    throw PreconditionError(
        "poisson_solve: right-hand side must have zero mean");
  Spectral sp(g.grid);
  return sp.inverse(sp.poisson_invert(sp.forward(g)));
}

Field2D sample_field(const Expr& e, const Grid2D& grid, double t,
                     const SolutionPair& bindings) {
  Field2D out(grid);
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) {
      const double x = grid.x(i), y = grid.y(j);
      if (bindings.excluded(x, y, t, 0.0))
        throw SingularEvalError("grid node inside an exclusion region",
                                {x, y, t});
      const double v = eval(e, bindings.context(x, y, t));
      if (!std::isfinite(v))
        throw SingularEvalError("expression not finite at grid node",
                                {x, y, t});
      out.values(i, j) = v;
    }
  return out;
}

namespace {

struct StreamGradients {
  Eigen::ArrayXXd dxp, dyp, dxm, dym;  // gradients of the two streams
};

/// Shared stage kernel: spectral state -> streams, gradients, bracket RHS.
class StageKernel {
 public:
  StageKernel(const Spectral& sp, bool dealias, bool truncated)
      : sp_(sp), dealias_(dealias), truncated_(truncated) {}

  /// RHS in spectral space; optionally reports stream gradients (CFL).
  std::pair<SpecField, SpecField> rhs(const SpecField& gp_hat,
                                      const SpecField& gm_hat,
                                      StreamGradients* grads = nullptr) const {
    const SpecField psi_hat = sp_.helmholtz_invert(0.5 * (gp_hat + gm_hat));
    const SpecField phi_hat = sp_.poisson_invert(0.5 * (gp_hat - gm_hat));
    const SpecField stream_p = truncated_ ? phi_hat : phi_hat + psi_hat;
    const SpecField stream_m = truncated_ ? phi_hat : phi_hat - psi_hat;

    const Eigen::ArrayXXd sx_p = sp_.inverse(sp_.dx(stream_p)).values;
    const Eigen::ArrayXXd sy_p = sp_.inverse(sp_.dy(stream_p)).values;
    const Eigen::ArrayXXd gx_p = sp_.inverse(sp_.dx(gp_hat)).values;
    const Eigen::ArrayXXd gy_p = sp_.inverse(sp_.dy(gp_hat)).values;
    const Eigen::ArrayXXd sx_m = sp_.inverse(sp_.dx(stream_m)).values;
    const Eigen::ArrayXXd sy_m = sp_.inverse(sp_.dy(stream_m)).values;
    const Eigen::ArrayXXd gx_m = sp_.inverse(sp_.dx(gm_hat)).values;
    const Eigen::ArrayXXd gy_m = sp_.inverse(sp_.dy(gm_hat)).values;

    if (grads) *grads = {sx_p, sy_p, sx_m, sy_m};

    // d_t G = -[S, G] = -(S_x G_y - G_x S_y), products on nodes.
    Field2D np(sp_.grid(), -(sx_p * gy_p - gx_p * sy_p));
    Field2D nm(sp_.grid(), -(sx_m * gy_m - gx_m * sy_m));
    SpecField rp = sp_.forward(np);
    SpecField rm = sp_.forward(nm);
    if (dealias_) {
      sp_.dealias(rp);
      sp_.dealias(rm);
    }
    return {std::move(rp), std::move(rm)};
  }

 private:
  const Spectral& sp_;
  bool dealias_;
  bool truncated_;
};

void derive_streams(const Spectral& sp, SimState& state) {
  SpecField gp_hat = sp.forward(state.gp);
  SpecField gm_hat = sp.forward(state.gm);
  state.psi = sp.inverse(sp.helmholtz_invert(0.5 * (gp_hat + gm_hat)));
  state.phi = sp.inverse(sp.poisson_invert(0.5 * (gp_hat - gm_hat)));
}

double max_speed(const StreamGradients& grads) {
  const double vp =
      (grads.dxp.square() + grads.dyp.square()).maxCoeff();
  const double vm =
      (grads.dxm.square() + grads.dym.square()).maxCoeff();
  return std::sqrt(std::max(vp, vm));
}

}  // namespace

SimState make_state(const Grid2D& grid, const Field2D& psi, const Field2D& phi,
                    double t0, bool dealias, bool truncated) {
  Spectral sp(grid);
  SpecField psi_hat = sp.forward(psi);
  SpecField phi_hat = sp.forward(phi);
  if (dealias) {
    sp.dealias(psi_hat);
    sp.dealias(phi_hat);
  }
  const SpecField lap_psi = sp.laplacian(psi_hat);
  const SpecField lap_phi = sp.laplacian(phi_hat);
  SimState state;
  state.time = t0;
  state.dealias = dealias;
  state.truncated = truncated;
  state.gp = sp.inverse(psi_hat - lap_psi + lap_phi);
  state.gm = sp.inverse(psi_hat - lap_psi - lap_phi);
  derive_streams(sp, state);
  return state;
}

SimState make_state_from_g(const Grid2D& grid, const Field2D& gp,
                           const Field2D& gm, double t0, bool dealias,
                           bool truncated) {
  Spectral sp(grid);
  SimState state;
  state.time = t0;
  state.dealias = dealias;
  state.truncated = truncated;
  SpecField gp_hat = sp.forward(gp);
  SpecField gm_hat = sp.forward(gm);
  if (dealias) {
    sp.dealias(gp_hat);
    sp.dealias(gm_hat);
  }
  state.gp = sp.inverse(gp_hat);
  state.gm = sp.inverse(gm_hat);
  derive_streams(sp, state);
  return state;
}

double cfl_limit(const SimState& state) {
  Spectral sp(state.gp.grid);
  StageKernel kernel(sp, state.dealias, state.truncated);
  SpecField gp_hat = sp.forward(state.gp);
  SpecField gm_hat = sp.forward(state.gm);
  if (state.dealias) {
    sp.dealias(gp_hat);
    sp.dealias(gm_hat);
  }
  StreamGradients grads;
  kernel.rhs(gp_hat, gm_hat, &grads);
  const double vmax = max_speed(grads);
  const double h = std::min(state.gp.grid.hx(), state.gp.grid.hy());
  if (vmax <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * h / vmax;
}

SimState step(const SimState& state, double dt) {
  if (!(dt > 0.0)) throw ParamError("step needs dt > 0");
  const Grid2D& grid = state.gp.grid;
  Spectral sp(grid);
  StageKernel kernel(sp, state.dealias, state.truncated);

  SpecField gp0 = sp.forward(state.gp);
  SpecField gm0 = sp.forward(state.gm);
  if (state.dealias) {
    sp.dealias(gp0);
    sp.dealias(gm0);
  }

  StreamGradients grads;
  auto [k1p, k1m] = kernel.rhs(gp0, gm0, &grads);

  const double vmax = max_speed(grads);
  if (vmax > 0.0) {
    const double limit = 0.5 * std::min(grid.hx(), grid.hy()) / vmax;
    if (dt > limit * (1.0 + 1e-12))
      throw CflError("step refused: dt = " + std::to_string(dt) +
                     " exceeds the advective limit " + std::to_string(limit));
  }

  auto [k2p, k2m] =
      kernel.rhs(gp0 + 0.5 * dt * k1p, gm0 + 0.5 * dt * k1m);
  auto [k3p, k3m] =
      kernel.rhs(gp0 + 0.5 * dt * k2p, gm0 + 0.5 * dt * k2m);
  auto [k4p, k4m] = kernel.rhs(gp0 + dt * k3p, gm0 + dt * k3m);

  SpecField gp_new =
      gp0 + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  SpecField gm_new =
      gm0 + (dt / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
  if (state.dealias) {
    sp.dealias(gp_new);
    sp.dealias(gm_new);
  }

  SimState out = state;
  out.time = state.time + dt;
  out.dt = dt;
  out.gp = sp.inverse(gp_new);
  out.gm = sp.inverse(gm_new);
  if (!out.gp.all_finite() || !out.gm.all_finite())
    throw NanError("simulation state not finite at t = " +
                   std::to_string(out.time) + " (last dt " +
                   std::to_string(dt) + ")");
  derive_streams(sp, out);
  return out;
}

std::array<double, 4> conserved(const SimState& state) {
  const double area = state.gp.grid.cell_area();
  const double j0 = -0.5 * (state.gp.values + state.gm.values).sum() * area;
  const double k0 = 0.5 * (state.gp.values - state.gm.values).sum() * area;
  const double cp = state.gp.values.square().sum() * area;
  const double cm = state.gm.values.square().sum() * area;
  return {j0, k0, cp, cm};
}

Field2D random_band_limited(const Grid2D& grid, int kmax, double amplitude,
                            std::uint64_t seed) {
  if (kmax < 1) throw ParamError("random_band_limited needs kmax >= 1");
  Rng rng(seed);
  Field2D out(grid);
  Eigen::ArrayXd xs(grid.nx()), ys(grid.ny());
  for (int i = 0; i < grid.nx(); ++i) xs[i] = grid.x(i);
  for (int j = 0; j < grid.ny(); ++j) ys[j] = grid.y(j);
  for (int mx = -kmax; mx <= kmax; ++mx)
    for (int my = -kmax; my <= kmax; ++my) {
      if (mx == 0 && my == 0) continue;
      if (mx * mx + my * my > kmax * kmax) continue;
      const double amp = rng.uniform(-1.0, 1.0);
      const double phase = rng.uniform(0.0, 2.0 * M_PI);
      const double kx = 2.0 * M_PI * mx / grid.lx();
      const double ky = 2.0 * M_PI * my / grid.ly();
      for (int i = 0; i < grid.nx(); ++i)
        for (int j = 0; j < grid.ny(); ++j)
          out.values(i, j) += amp * std::cos(kx * xs[i] + ky * ys[j] + phase);
    }
  const double peak = out.max_abs();
  if (peak > 0.0) out.values *= amplitude / peak;
  return out;
}

SimState Trajectory::state_at(std::size_t idx) const {
  SimState state;
  state.time = times.at(idx);
  state.dealias = dealias;
  state.truncated = truncated;
  state.gp = gp.at(idx);
  state.gm = gm.at(idx);
  Spectral sp(grid);
  derive_streams(sp, state);
  return state;
}

void ConservationLog::append(const SimState& state) {
  const auto c = conserved(state);
  t.push_back(state.time);
  j0.push_back(c[0]);
  k0.push_back(c[1]);
  cp.push_back(c[2]);
  cm.push_back(c[3]);
}

RunResult simulate(const SimState& initial, double dt, int steps,
                   int store_every) {
  if (steps < 0) throw ParamError("simulate needs steps >= 0");
  if (store_every < 1) throw ParamError("simulate needs store_every >= 1");
  RunResult run;
  run.trajectory.grid = initial.gp.grid;
  run.trajectory.dt = dt * store_every;
  run.trajectory.dealias = initial.dealias;
  run.trajectory.truncated = initial.truncated;

  SimState state = initial;
  auto store = [&](const SimState& s) {
    run.trajectory.times.push_back(s.time);
    run.trajectory.gp.push_back(s.gp);
    run.trajectory.gm.push_back(s.gm);
  };
  store(state);
  run.log.append(state);
  for (int n = 1; n <= steps; ++n) {
    state = step(state, dt);
    run.log.append(state);
    if (n % store_every == 0) store(state);
  }
  run.final_state = std::move(state);
  return run;
}

namespace {

struct SnapshotFields {
  Eigen::ArrayXXd psi, phi, lap_psi, lap_phi;
  Eigen::ArrayXXd psi_x, psi_y, phi_x, phi_y;
};

SnapshotFields snapshot_fields(const Spectral& sp, const Field2D& gp,
                               const Field2D& gm) {
  const SpecField gp_hat = sp.forward(gp);
  const SpecField gm_hat = sp.forward(gm);
  const SpecField psi_hat = sp.helmholtz_invert(0.5 * (gp_hat + gm_hat));
  const SpecField phi_hat = sp.poisson_invert(0.5 * (gp_hat - gm_hat));
  SnapshotFields f;
  f.psi = sp.inverse(psi_hat).values;
  f.phi = sp.inverse(phi_hat).values;
  f.lap_psi = sp.inverse(sp.laplacian(psi_hat)).values;
  f.lap_phi = sp.inverse(sp.laplacian(phi_hat)).values;
  f.psi_x = sp.inverse(sp.dx(psi_hat)).values;
  f.psi_y = sp.inverse(sp.dy(psi_hat)).values;
  f.phi_x = sp.inverse(sp.dx(phi_hat)).values;
  f.phi_y = sp.inverse(sp.dy(phi_hat)).values;
  return f;
}

}  // namespace

PotentialResult potential_reconstruct(const Trajectory& traj, double tol) {
  if (traj.size() < 2)
    throw ParamError("potential_reconstruct needs at least two snapshots");
  const Grid2D& grid = traj.grid;
  Spectral sp(grid);

  PotentialResult result;
  result.tol = tol;

  // Right-hand sides of the four potential equations per snapshot.
  std::vector<std::array<Eigen::ArrayXXd, 4>> rhs(traj.size());
  std::vector<Eigen::ArrayXXd> j0(traj.size()), k0(traj.size());
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const SnapshotFields f = snapshot_fields(sp, traj.gp[n], traj.gm[n]);
    const double psi_mean = f.psi.mean();
    if (std::abs(psi_mean) > 1e-10 * std::max(1.0, f.psi.abs().maxCoeff()))
      throw PreconditionError(
          "potential_reconstruct: psi must have zero mean (periodic curl "
          "compatibility); found mean " +
          std::to_string(psi_mean));
    j0[n] = f.lap_psi - f.psi;
    k0[n] = f.lap_phi;
    rhs[n][0] = f.psi_x * f.lap_phi - f.phi_x * j0[n];
    rhs[n][1] = f.psi_y * f.lap_phi - f.phi_y * j0[n];
    rhs[n][2] = f.psi_x * f.lap_psi - f.phi_x * f.lap_phi;
    rhs[n][3] = f.psi_y * f.lap_psi - f.phi_y * f.lap_phi;
  }

  // Seed so both curl constraints hold exactly at the first snapshot.
  const Field2D chi_j = poisson_solve(Field2D(grid, j0[0]));
  const Field2D chi_k = poisson_solve(Field2D(grid, k0[0]));
  const SpecField chi_j_hat = sp.forward(chi_j);
  const SpecField chi_k_hat = sp.forward(chi_k);
  std::array<Eigen::ArrayXXd, 4> p{
      sp.inverse(sp.dy(chi_j_hat)).values,
      -sp.inverse(sp.dx(chi_j_hat)).values,
      sp.inverse(sp.dy(chi_k_hat)).values,
      -sp.inverse(sp.dx(chi_k_hat)).values};

  result.pass = true;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    if (n > 0) {
      const double half_dt = 0.5 * (traj.times[n] - traj.times[n - 1]);
      for (int c = 0; c < 4; ++c)
        p[c] += half_dt * (rhs[n - 1][c] + rhs[n][c]);
    }
    result.p.push_back({Field2D(grid, p[0]), Field2D(grid, p[1]),
                        Field2D(grid, p[2]), Field2D(grid, p[3])});

    const SpecField p1_hat = sp.forward(result.p.back()[0]);
    const SpecField p2_hat = sp.forward(result.p.back()[1]);
    const SpecField p3_hat = sp.forward(result.p.back()[2]);
    const SpecField p4_hat = sp.forward(result.p.back()[3]);
    const Eigen::ArrayXXd curl_j =
        -sp.inverse(sp.dx(p2_hat)).values + sp.inverse(sp.dy(p1_hat)).values;
    const Eigen::ArrayXXd curl_k =
        -sp.inverse(sp.dx(p4_hat)).values + sp.inverse(sp.dy(p3_hat)).values;
    const double scale_j = 1.0 + j0[n].abs().maxCoeff();
    const double scale_k = 1.0 + k0[n].abs().maxCoeff();
    const double err_j = (curl_j - j0[n]).abs().maxCoeff() / scale_j;
    const double err_k = (curl_k - k0[n]).abs().maxCoeff() / scale_k;
    result.curl_err_j.push_back(err_j);
    result.curl_err_k.push_back(err_k);
    if (err_j > tol || err_k > tol) result.pass = false;
  }
  return result;
}

ResidualReport flux_divergence_check(const Trajectory& traj, double tol) {
  if (traj.size() < 3)
    throw ParamError("flux_divergence_check needs at least three snapshots");
  const Grid2D& grid = traj.grid;
  Spectral sp(grid);

  std::vector<SnapshotFields> fields(traj.size());
  for (std::size_t n = 0; n < traj.size(); ++n)
    fields[n] = snapshot_fields(sp, traj.gp[n], traj.gm[n]);

  ResidualReport report;
  report.form = "flux-divergence";
  report.checked =
      "centered d_t of the conserved densities against the spectral flux "
      "divergence on stored snapshots";
  report.samples = static_cast<int>(traj.size() - 2);
  report.tol = tol;
  EquationStats eq_j{"J-current", 0.0, 0.0, {0, 0, 0}};
  EquationStats eq_k{"K-current", 0.0, 0.0, {0, 0, 0}};

  double sq_j = 0.0, sq_k = 0.0;
  for (std::size_t n = 1; n + 1 < traj.size(); ++n) {
    const double two_dt = traj.times[n + 1] - traj.times[n - 1];
    const SnapshotFields& f = fields[n];

    const Eigen::ArrayXXd j0_prev =
        fields[n - 1].lap_psi - fields[n - 1].psi;
    const Eigen::ArrayXXd j0_next =
        fields[n + 1].lap_psi - fields[n + 1].psi;
    const Eigen::ArrayXXd dj0 = (j0_next - j0_prev) / two_dt;
    const Eigen::ArrayXXd dk0 =
        (fields[n + 1].lap_phi - fields[n - 1].lap_phi) / two_dt;

    const Eigen::ArrayXXd jx =
        f.psi_y * f.lap_phi - f.phi_y * f.lap_psi + f.psi * f.phi_y;
    const Eigen::ArrayXXd jy =
        f.phi_x * f.lap_psi - f.psi_x * f.lap_phi - f.psi * f.phi_x;
    const Eigen::ArrayXXd kx =
        f.psi_y * f.lap_psi - f.phi_y * f.lap_phi;
    const Eigen::ArrayXXd ky =
        f.phi_x * f.lap_phi - f.psi_x * f.lap_psi;

    const Eigen::ArrayXXd div_j =
        sp.inverse(sp.dx(sp.forward(Field2D(grid, jx)))).values +
        sp.inverse(sp.dy(sp.forward(Field2D(grid, jy)))).values;
    const Eigen::ArrayXXd div_k =
        sp.inverse(sp.dx(sp.forward(Field2D(grid, kx)))).values +
        sp.inverse(sp.dy(sp.forward(Field2D(grid, ky)))).values;

    const double scale_j =
        1.0 + std::max(dj0.abs().maxCoeff(), div_j.abs().maxCoeff());
    const double scale_k =
        1.0 + std::max(dk0.abs().maxCoeff(), div_k.abs().maxCoeff());

    Eigen::Index wi, wj;
    const double rj = (dj0 + div_j).abs().maxCoeff(&wi, &wj) / scale_j;
    if (rj > eq_j.linf) {
      eq_j.linf = rj;
      eq_j.worst_point = {grid.x(static_cast<int>(wi)),
                          grid.y(static_cast<int>(wj)), traj.times[n]};
    }
    const double rk = (dk0 + div_k).abs().maxCoeff(&wi, &wj) / scale_k;
    if (rk > eq_k.linf) {
      eq_k.linf = rk;
      eq_k.worst_point = {grid.x(static_cast<int>(wi)),
                          grid.y(static_cast<int>(wj)), traj.times[n]};
    }
    sq_j += rj * rj;
    sq_k += rk * rk;
  }
  const double m = static_cast<double>(traj.size() - 2);
  eq_j.l2 = std::sqrt(sq_j / m);
  eq_k.l2 = std::sqrt(sq_k / m);
  report.equations = {eq_j, eq_k};
  report.pass = eq_j.linf <= tol && eq_k.linf <= tol;
  return report;
}

}  // namespace eulerlab
