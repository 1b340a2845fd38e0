// eulerlab: verification runs for the two-field advected-vorticity system.
// Subcommands: catalog, symmetry, orbit, reduce, simulate, conserve,
// potential.  All reports are JSON (stdout unless --out).
//
// Exit codes: 0 ok, 1 verification failure, 2 unknown id, 3 parameter error,
// 4 orbit/check precondition failure, 5 CFL refusal, 6 NaN or singular
// evaluation abort.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "eulerlab/catalog.hpp"
#include "eulerlab/fieldlab.hpp"
#include "eulerlab/generators.hpp"
#include "eulerlab/io.hpp"
#include "eulerlab/reduced.hpp"
#include "eulerlab/runconfig.hpp"

namespace {

using namespace eulerlab;
using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUnknownId = 2,
  kParamError = 3,
  kPrecondition = 4,
  kCflRefused = 5,
  kNanAbort = 6
};

void emit(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream os(out);
    if (!os) throw IoError("cannot write '" + out + "'");
    os << doc.dump(2) << '\n';
  }
}

ParamMap parse_kv_list(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw ParamError("expected name=value, got '" + pair + "'");
      try {
        out[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParamError("bad numeric value in '" + pair + "'");
      }
    }
  }
  return out;
}

std::map<std::string, std::string> parse_func_list(
    const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParamError("expected name=spec, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

FuncMap bind_funcs(const std::map<std::string, std::string>& specs) {
  FuncMap out;
  for (const auto& [name, spec] : specs) out[name] = parse_func_spec(spec);
  return out;
}

json config_echo(const RunConfig& cfg) { return cfg.to_json(); }

// --- catalog ---------------------------------------------------------------

int run_catalog_list(const RunConfig& cfg) {
  json doc;
  doc["entries"] = json::array();
  for (const auto& e : catalog_entries()) {
    json entry;
    entry["id"] = e.id;
    entry["summary"] = e.summary;
    entry["form"] = form_name(e.documented_form);
    entry["invariant_generator"] = e.invariant_generator;
    entry["params"] = json::array();
    for (const auto& p : e.params)
      entry["params"].push_back({{"name", p.name},
                                 {"default", p.default_value},
                                 {"min", p.min},
                                 {"max", p.max},
                                 {"doc", p.doc}});
    entry["funcs"] = json::array();
    for (const auto& f : e.funcs)
      entry["funcs"].push_back(
          {{"name", f.name}, {"default", f.default_spec}, {"doc", f.doc}});
    doc["entries"].push_back(entry);
  }
  emit(doc, cfg.out);
  return kOk;
}

int run_catalog_verify(const RunConfig& cfg) {
  const CatalogEntry& entry = find_entry(cfg.catalog_id);
  SolutionPair sp = build_entry(cfg.catalog_id, cfg.entry_params,
                                cfg.entry_funcs);
  ResidualReport report =
      check(entry.documented_form, sp, cfg.plan, cfg.tol);
  json doc = io::to_json(report);
  doc["id"] = cfg.catalog_id;
  doc["config"] = config_echo(cfg);
  emit(doc, cfg.out);
  return report.pass ? kOk : kVerifyFailed;
}

// --- symmetry / orbit --------------------------------------------------

Generator build_generator(const RunConfig& cfg) {
  return builtin(cfg.generator, cfg.generator_params,
                 bind_funcs(cfg.generator_funcs));
}

int run_symmetry(const RunConfig& cfg) {
  SolutionPair sp =
      build_entry(cfg.catalog_id, cfg.entry_params, cfg.entry_funcs);
  Generator gen = build_generator(cfg);
  ResidualReport report =
      cfg.action == "invariance"
          ? invariance_check(gen, sp, cfg.plan, cfg.tol)
          : symmetry_check(gen, sp, cfg.plan, cfg.tol);
  json doc = io::to_json(report);
  doc["id"] = cfg.catalog_id;
  doc["config"] = config_echo(cfg);
  emit(doc, cfg.out);
  return report.pass ? kOk : kVerifyFailed;
}

int run_orbit(const RunConfig& cfg) {
  SolutionPair sp =
      build_entry(cfg.catalog_id, cfg.entry_params, cfg.entry_funcs);
  SolutionPair image;
  if (cfg.generator == "X1") {
    FuncMap funcs = bind_funcs(cfg.generator_funcs);
    if (!funcs.count("A") || !funcs.count("B"))
      throw ParamError("orbit X1 needs --func A=<spec> --func B=<spec>");
    image = orbit_x1(sp, funcs.at("A"), funcs.at("B"));
  } else if (cfg.generator == "X2") {
    image = orbit_x2(sp, cfg.lambda);
  } else if (cfg.generator == "Xab") {
    if (!cfg.generator_params.count("a") || !cfg.generator_params.count("b"))
      throw ParamError("orbit Xab needs --a and --b");
    image = orbit_xab(sp, cfg.generator_params.at("a"),
                      cfg.generator_params.at("b"), cfg.lambda, cfg.plan,
                      cfg.tol);
  } else if (cfg.generator == "ScalePsi") {
    image = orbit_scale_psi(sp, cfg.lambda, cfg.plan, cfg.tol);
  } else if (cfg.generator == "PhiShift") {
    FuncMap funcs = bind_funcs(cfg.generator_funcs);
    if (!funcs.count("q")) throw ParamError("orbit PhiShift needs --func q=");
    image = orbit_phi_shift(sp, funcs.at("q"));
  } else {
    throw UnknownIdError("no orbit map for generator '" + cfg.generator + "'");
  }

  // The image is registered as an in-memory pair and described in the report.
  json doc;
  doc["orbit_of"] = cfg.catalog_id;
  doc["generator"] = cfg.generator;
  doc["lambda"] = cfg.lambda;
  doc["image"] = {{"psi", to_string(image.psi)},
                  {"phi", to_string(image.phi)},
                  {"label", image.label}};
  int code = kOk;
  if (cfg.verify) {
    ResidualReport report = check(SystemForm::eu, image, cfg.plan, cfg.tol);
    doc["verify"] = io::to_json(report);
    code = report.pass ? kOk : kVerifyFailed;
  }
  doc["config"] = config_echo(cfg);
  emit(doc, cfg.out);
  return code;
}

// --- reduce ------------------------------------------------------------

int run_reduce(const RunConfig& cfg, const std::string& equation, double a,
               double b, double smin, double smax, int n, double left,
               double right, const std::string& rhs_spec, double power_b) {
  json doc;
  int code = kOk;
  if (cfg.action == "power-exponent") {
    const double a_exp = power_exponent(power_b);
    doc["b"] = power_b;
    doc["a"] = a_exp;
    doc["identity"] = 2.0 * a_exp * power_b - power_b * power_b +
                      2.0 * power_b + 4.0;
    doc["checked"] = "exponent relation of the radial power profiles";
  } else if (cfg.action == "check-power") {
    const double a_exp = power_exponent(power_b);
    ResidualReport report = check(
        residual_r(Func2Binding::power(1.0, power_b, a_exp)), reduced_plan(),
        cfg.tol);
    doc = io::to_json(report);
    doc["b"] = power_b;
    doc["a"] = a_exp;
    code = report.pass ? kOk : kVerifyFailed;
  } else if (cfg.action == "solve") {
    const FuncBinding rhs = parse_func_spec(rhs_spec);
    const Grid1D grid{smin, smax, n};
    Profile1D profile;
    std::string var_name;
    if (equation == "V") {
      profile = solve_v(rhs, a, b, grid, left, right);
      var_name = "s";
      doc["residual"] =
          discrete_residual_v(profile, rhs, a * a + b * b);
    } else if (equation == "W") {
      profile = solve_w(rhs, a, b, grid, left, right);
      var_name = "s";
      doc["residual"] =
          discrete_residual_w(profile, rhs, a * a + b * b);
    } else {
      throw ParamError("--equation must be V or W");
    }
    doc["equation"] = equation;
    doc["n"] = n;
    if (cfg.out.empty()) throw ParamError("reduce solve needs --out <csv>");
    io::write_profile_csv(cfg.out, profile, var_name);
    doc["out"] = cfg.out;
    emit(doc, "");
    return kOk;
  } else {
    throw ParamError("unknown reduce action '" + cfg.action + "'");
  }
  doc["config"] = config_echo(cfg);
  emit(doc, cfg.out);
  return code;
}

// --- simulate / conserve / potential ------------------------------------

SimState initial_state(const RunConfig& cfg) {
  const Grid2D grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
  if (cfg.init == "random") {
    Field2D psi = random_band_limited(grid, cfg.kmax, cfg.amplitude, cfg.seed);
    Field2D phi =
        random_band_limited(grid, cfg.kmax, cfg.amplitude, cfg.seed ^ 0x9E3779B9);
    return make_state(grid, psi, phi, 0.0, cfg.dealias, cfg.truncated);
  }
  // Catalog entries seed the advected combinations directly: the exact
  // Laplacians drop harmonic stream parts (x - y and friends) that have no
  // periodic representative, while G± themselves are often periodic.
  SolutionPair sp = build_entry(cfg.init, cfg.entry_params, cfg.entry_funcs);
  const Expr lap_psi = laplacian(sp.psi);
  const Expr lap_phi = laplacian(sp.phi);
  Field2D gp = sample_field(sp.psi - lap_psi + lap_phi, grid, 0.0, sp);
  Field2D gm = sample_field(sp.psi - lap_psi - lap_phi, grid, 0.0, sp);
  return make_state_from_g(grid, gp, gm, 0.0, cfg.dealias, cfg.truncated);
}

json drift_summary(const ConservationLog& log) {
  auto drift = [&](const std::vector<double>& series, double scale) {
    double worst = 0.0;
    for (double v : series) worst = std::max(worst, std::abs(v - series.front()));
    return worst / scale;
  };
  // Signed integrals can start at ~0; scale by the initial Casimir magnitude
  // as the reference size of the state.
  const double density_scale =
      1.0 + std::abs(log.j0.front()) + std::sqrt(std::abs(log.cp.front()));
  json doc;
  doc["J0_drift"] = drift(log.j0, density_scale);
  doc["K0_drift"] = drift(log.k0, density_scale);
  doc["Cp_drift"] = drift(log.cp, 1.0 + std::abs(log.cp.front()));
  doc["Cm_drift"] = drift(log.cm, 1.0 + std::abs(log.cm.front()));
  return doc;
}

int run_simulate(const RunConfig& cfg, bool csv_fields) {
  SimState state = initial_state(cfg);
  double dt = cfg.dt;
  const double limit = cfl_limit(state);
  if (dt <= 0.0) dt = 0.4 * limit;
  if (dt > limit)
    throw CflError("requested dt " + std::to_string(dt) +
                   " exceeds the CFL limit " + std::to_string(limit));
  RunResult run = simulate(state, dt, cfg.steps, cfg.store_every);

  json doc;
  doc["steps"] = cfg.steps;
  doc["dt"] = dt;
  doc["final_time"] = run.final_state.time;
  doc["drift"] = drift_summary(run.log);
  if (!cfg.out.empty()) {
    io::write_trace(cfg.out, run.trajectory, run.log);
    doc["trace"] = cfg.out;
    if (csv_fields) {
      const std::filesystem::path dir(cfg.out);
      io::write_field_csv(dir / "final_psi.csv", run.final_state.psi);
      io::write_field_csv(dir / "final_phi.csv", run.final_state.phi);
      doc["csv_fields"] = true;
    }
  }
  doc["config"] = config_echo(cfg);
  emit(doc, "");
  return kOk;
}

int run_conserve(const RunConfig& cfg) {
  Trajectory traj = io::read_trace(cfg.trace_dir);
  ConservationLog log;
  for (std::size_t n = 0; n < traj.size(); ++n) log.append(traj.state_at(n));
  ResidualReport flux = flux_divergence_check(traj, cfg.tol > 0 ? 1e-4 : 1e-4);
  json doc;
  doc["drift"] = drift_summary(log);
  doc["flux"] = io::to_json(flux);
  doc["config"] = config_echo(cfg);
  emit(doc, cfg.out);
  return flux.pass ? kOk : kVerifyFailed;
}

int run_potential(const RunConfig& cfg) {
  Trajectory traj = io::read_trace(cfg.trace_dir);
  PotentialResult result = potential_reconstruct(traj, 1e-6);
  json doc;
  doc["snapshots"] = result.p.size();
  doc["tol"] = result.tol;
  double worst_j = 0.0, worst_k = 0.0;
  for (double v : result.curl_err_j) worst_j = std::max(worst_j, v);
  for (double v : result.curl_err_k) worst_k = std::max(worst_k, v);
  doc["curl_linf_J"] = worst_j;
  doc["curl_linf_K"] = worst_k;
  doc["pass"] = result.pass;
  doc["checked"] =
      "curl constraints of the reconstructed vector potential at every "
      "snapshot";
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    for (std::size_t n = 0; n < result.p.size(); ++n)
      for (int c = 0; c < 4; ++c) {
        char name[32];
        std::snprintf(name, sizeof(name), "p%d_%05zu.eulf", c + 1, n);
        io::write_field_binary(std::filesystem::path(cfg.out) / name,
                               result.p[n][static_cast<std::size_t>(c)],
                               traj.times[n]);
      }
    doc["out"] = cfg.out;
  }
  doc["config"] = config_echo(cfg);
  emit(doc, "");
  return result.pass ? kOk : kVerifyFailed;
}

int dispatch(const RunConfig& cfg, const std::string& equation, double a,
             double b, double smin, double smax, int n, double left,
             double right, const std::string& rhs_spec, double power_b,
             bool csv_fields) {
  if (cfg.command == "catalog")
    return cfg.action == "list" ? run_catalog_list(cfg)
                                : run_catalog_verify(cfg);
  if (cfg.command == "symmetry") return run_symmetry(cfg);
  if (cfg.command == "orbit") return run_orbit(cfg);
  if (cfg.command == "reduce")
    return run_reduce(cfg, equation, a, b, smin, smax, n, left, right,
                      rhs_spec, power_b);
  if (cfg.command == "simulate") return run_simulate(cfg, csv_fields);
  if (cfg.command == "conserve") return run_conserve(cfg);
  if (cfg.command == "potential") return run_potential(cfg);
  throw ParamError("unknown command '" + cfg.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for the two-field advected-vorticity "
               "system"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> param_items, func_items, gparam_items, gfunc_items;
  std::string config_file;

  // reduce-specific knobs
  std::string equation = "V", rhs_spec = "zero";
  double red_a = 1.0, red_b = 0.0, smin = 0.0, smax = M_PI;
  int red_n = 65;
  double left = 0.0, right = 0.0, power_b = 2.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON RunConfig file");
    sub->add_option("--out", cfg.out, "write the report/dump here");
    sub->add_option("--tol", cfg.tol, "verification tolerance");
    sub->add_option("--samples", cfg.plan.samples, "sample count");
    sub->add_option("--seed", cfg.plan.seed, "sample seed");
  };
  auto add_entry = [&](CLI::App* sub) {
    sub->add_option("--id", cfg.catalog_id, "catalog entry id");
    sub->add_option("--param", param_items, "entry parameter name=value")
        ->take_all();
    sub->add_option("--func", func_items, "entry function name=spec")
        ->take_all();
  };

  CLI::App* cat = app.add_subcommand("catalog", "list or verify entries");
  CLI::App* cat_list = cat->add_subcommand("list", "catalog as JSON");
  add_common(cat_list);
  CLI::App* cat_verify = cat->add_subcommand("verify", "residual check");
  add_common(cat_verify);
  add_entry(cat_verify);

  CLI::App* sym = app.add_subcommand("symmetry", "symmetry checks");
  CLI::App* sym_check =
      sym->add_subcommand("check", "linearized on-shell condition");
  add_common(sym_check);
  add_entry(sym_check);
  sym_check->add_option("--generator", cfg.generator, "generator name")
      ->required();
  sym_check->add_option("--gparam", gparam_items, "generator parameter")
      ->take_all();
  sym_check->add_option("--gfunc", gfunc_items, "generator function")
      ->take_all();
  CLI::App* sym_inv =
      sym->add_subcommand("invariance", "evolutionary-form components");
  add_common(sym_inv);
  add_entry(sym_inv);
  sym_inv->add_option("--generator", cfg.generator, "generator name")
      ->required();
  sym_inv->add_option("--gparam", gparam_items, "generator parameter")
      ->take_all();
  sym_inv->add_option("--gfunc", gfunc_items, "generator function")
      ->take_all();

  CLI::App* orb = app.add_subcommand("orbit", "finite transformations");
  add_common(orb);
  add_entry(orb);
  orb->add_option("--generator", cfg.generator, "X1|X2|Xab|ScalePsi|PhiShift")
      ->required();
  orb->add_option("--lambda", cfg.lambda, "flow parameter");
  double orb_a = 0.0, orb_b = 0.0;
  auto* orb_a_opt = orb->add_option("--a", orb_a, "Xab psi coefficient");
  auto* orb_b_opt = orb->add_option("--b", orb_b, "Xab phi coefficient");
  orb->add_option("--gfunc", gfunc_items, "generator function (A, B, q)")
      ->take_all();
  orb->add_flag("--verify", cfg.verify, "run the residual check on the image");

  CLI::App* red = app.add_subcommand("reduce", "reduced-equation utilities");
  CLI::App* red_solve = red->add_subcommand("solve", "two-point BVP solve");
  add_common(red_solve);
  red_solve->add_option("--equation", equation, "V or W");
  red_solve->add_option("--rhs", rhs_spec, "right-hand side func spec");
  red_solve->add_option("--A", red_a, "frame coefficient A");
  red_solve->add_option("--B", red_b, "frame coefficient B");
  red_solve->add_option("--min", smin, "left endpoint");
  red_solve->add_option("--max", smax, "right endpoint");
  red_solve->add_option("--n", red_n, "node count");
  red_solve->add_option("--left", left, "left boundary value");
  red_solve->add_option("--right", right, "right boundary value");
  CLI::App* red_pow =
      red->add_subcommand("power-exponent", "exponent relation a(b)");
  add_common(red_pow);
  red_pow->add_option("--b", power_b, "radial exponent")->required();
  CLI::App* red_chk =
      red->add_subcommand("check-power", "residual of the power profile");
  add_common(red_chk);
  red_chk->add_option("--b", power_b, "radial exponent")->required();

  CLI::App* simu = app.add_subcommand("simulate", "periodic spectral run");
  add_common(simu);
  simu->add_option("--nx", cfg.nx, "grid size x");
  simu->add_option("--ny", cfg.ny, "grid size y");
  simu->add_option("--Lx", cfg.lx, "domain length x");
  simu->add_option("--Ly", cfg.ly, "domain length y");
  simu->add_option("--dt", cfg.dt, "time step (0 = from CFL)");
  simu->add_option("--steps", cfg.steps, "step count");
  simu->add_option("--dump-every", cfg.store_every, "snapshot stride");
  simu->add_option("--init", cfg.init, "catalog id or 'random'");
  simu->add_option("--kmax", cfg.kmax, "random init band limit");
  simu->add_option("--amp", cfg.amplitude, "random init amplitude");
  simu->add_flag("--truncated", cfg.truncated, "evolve the reduced dynamics");
  bool csv_fields = false;
  simu->add_flag("--csv", csv_fields, "also dump the final fields as CSV");
  simu->add_flag("!--no-dealias", cfg.dealias, "disable the 2/3 mask");
  simu->add_option("--param", param_items, "init entry parameter")->take_all();
  simu->add_option("--func", func_items, "init entry function")->take_all();

  CLI::App* consv = app.add_subcommand("conserve", "verify a stored run");
  add_common(consv);
  consv->add_option("--trace", cfg.trace_dir, "trace directory")->required();

  CLI::App* pot =
      app.add_subcommand("potential", "vector-potential reconstruction");
  add_common(pot);
  pot->add_option("--trace", cfg.trace_dir, "trace directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParamError;
  }

  try {
    if (!config_file.empty()) {
      std::ifstream is(config_file);
      if (!is) throw IoError("cannot read config '" + config_file + "'");
      nlohmann::json doc;
      is >> doc;
      cfg = RunConfig::from_json(doc);
    }
    cfg.entry_params = parse_kv_list(param_items);
    cfg.entry_funcs = parse_func_list(func_items);
    cfg.generator_params = parse_kv_list(gparam_items);
    cfg.generator_funcs = parse_func_list(gfunc_items);
    if (*orb_a_opt) cfg.generator_params["a"] = orb_a;
    if (*orb_b_opt) cfg.generator_params["b"] = orb_b;
    cfg.seed = cfg.plan.seed;  // one seed drives everything

    if (cat_list->parsed()) {
      cfg.command = "catalog";
      cfg.action = "list";
    } else if (cat_verify->parsed()) {
      cfg.command = "catalog";
      cfg.action = "verify";
    } else if (sym_check->parsed()) {
      cfg.command = "symmetry";
      cfg.action = "check";
    } else if (sym_inv->parsed()) {
      cfg.command = "symmetry";
      cfg.action = "invariance";
    } else if (orb->parsed()) {
      cfg.command = "orbit";
    } else if (red_solve->parsed()) {
      cfg.command = "reduce";
      cfg.action = "solve";
    } else if (red_pow->parsed()) {
      cfg.command = "reduce";
      cfg.action = "power-exponent";
    } else if (red_chk->parsed()) {
      cfg.command = "reduce";
      cfg.action = "check-power";
    } else if (simu->parsed()) {
      cfg.command = "simulate";
    } else if (consv->parsed()) {
      cfg.command = "conserve";
    } else if (pot->parsed()) {
      cfg.command = "potential";
    }

    return dispatch(cfg, equation, red_a, red_b, smin, smax, red_n, left,
                    right, rhs_spec, power_b, csv_fields);
  } catch (const UnknownIdError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnknownId;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParamError;
  } catch (const UnboundSymbolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParamError;
  } catch (const UnboundDerivativeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParamError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CflError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCflRefused;
  } catch (const SingularEvalError& e) {
    std::cerr << "error: " << e.what() << " at (" << e.point[0] << ", "
              << e.point[1] << ", " << e.point[2] << ")\n";
    return kNanAbort;
  } catch (const NanError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNanAbort;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParamError;
  }
}
