#ifndef EULERLAB_RUNCONFIG_HPP
#define EULERLAB_RUNCONFIG_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "eulerlab/model.hpp"

namespace eulerlab {

/// Everything a CLI run needs, round-trippable through JSON losslessly so a
/// run is reproducible from its own report.
struct RunConfig {
  std::string command;  // catalog | symmetry | orbit | reduce | simulate | ...
  std::string action;   // subcommand-specific (list, verify, check, ...)

  // verification target
  std::string catalog_id;
  ParamMap entry_params;
  std::map<std::string, std::string> entry_funcs;  // name -> func spec

  // generator
  std::string generator;
  ParamMap generator_params;
  std::map<std::string, std::string> generator_funcs;
  double lambda = 0.0;

  // sampling
  SamplePlan plan;
  double tol = 1e-8;

  // grid / simulation
  int nx = 64, ny = 64;
  double lx = 2.0 * M_PI, ly = 2.0 * M_PI;
  double dt = 0.0;  // 0 = pick from the CFL limit
  int steps = 200;
  int store_every = 1;
  std::string init = "random";  // catalog id or "random"
  int kmax = 3;
  double amplitude = 0.25;
  bool truncated = false;
  bool dealias = true;

  std::uint64_t seed = 0x5EED;
  std::string out;        // report / dump destination ("" = stdout)
  std::string trace_dir;  // input trace for conserve/potential
  bool verify = false;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& doc);
};

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace eulerlab

#endif
