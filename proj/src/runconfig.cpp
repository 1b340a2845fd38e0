#include "eulerlab/runconfig.hpp"

namespace eulerlab {

namespace {

nlohmann::json plan_to_json(const SamplePlan& plan) {
  return {{"x_min", plan.x_min}, {"x_max", plan.x_max},
          {"y_min", plan.y_min}, {"y_max", plan.y_max},
          {"t_min", plan.t_min}, {"t_max", plan.t_max},
          {"samples", plan.samples}, {"seed", plan.seed},
          {"guard", plan.guard}};
}

SamplePlan plan_from_json(const nlohmann::json& doc) {
  SamplePlan plan;
  plan.x_min = doc.at("x_min").get<double>();
  plan.x_max = doc.at("x_max").get<double>();
  plan.y_min = doc.at("y_min").get<double>();
  plan.y_max = doc.at("y_max").get<double>();
  plan.t_min = doc.at("t_min").get<double>();
  plan.t_max = doc.at("t_max").get<double>();
  plan.samples = doc.at("samples").get<int>();
  plan.seed = doc.at("seed").get<std::uint64_t>();
  plan.guard = doc.at("guard").get<double>();
  return plan;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json doc;
  doc["command"] = command;
  doc["action"] = action;
  doc["catalog_id"] = catalog_id;
  doc["entry_params"] = entry_params;
  doc["entry_funcs"] = entry_funcs;
  doc["generator"] = generator;
  doc["generator_params"] = generator_params;
  doc["generator_funcs"] = generator_funcs;
  doc["lambda"] = lambda;
  doc["plan"] = plan_to_json(plan);
  doc["tol"] = tol;
  doc["nx"] = nx;
  doc["ny"] = ny;
  doc["lx"] = lx;
  doc["ly"] = ly;
  doc["dt"] = dt;
  doc["steps"] = steps;
  doc["store_every"] = store_every;
  doc["init"] = init;
  doc["kmax"] = kmax;
  doc["amplitude"] = amplitude;
  doc["truncated"] = truncated;
  doc["dealias"] = dealias;
  doc["seed"] = seed;
  doc["out"] = out;
  doc["trace_dir"] = trace_dir;
  doc["verify"] = verify;
  return doc;
}

RunConfig RunConfig::from_json(const nlohmann::json& doc) {
  RunConfig cfg;
  cfg.command = doc.value("command", std::string{});
  cfg.action = doc.value("action", std::string{});
  cfg.catalog_id = doc.value("catalog_id", std::string{});
  if (doc.contains("entry_params"))
    cfg.entry_params = doc.at("entry_params").get<ParamMap>();
  if (doc.contains("entry_funcs"))
    cfg.entry_funcs =
        doc.at("entry_funcs").get<std::map<std::string, std::string>>();
  cfg.generator = doc.value("generator", std::string{});
  if (doc.contains("generator_params"))
    cfg.generator_params = doc.at("generator_params").get<ParamMap>();
  if (doc.contains("generator_funcs"))
    cfg.generator_funcs =
        doc.at("generator_funcs").get<std::map<std::string, std::string>>();
  cfg.lambda = doc.value("lambda", 0.0);
  if (doc.contains("plan")) cfg.plan = plan_from_json(doc.at("plan"));
  cfg.tol = doc.value("tol", 1e-8);
  cfg.nx = doc.value("nx", 64);
  cfg.ny = doc.value("ny", 64);
  cfg.lx = doc.value("lx", 2.0 * M_PI);
  cfg.ly = doc.value("ly", 2.0 * M_PI);
  cfg.dt = doc.value("dt", 0.0);
  cfg.steps = doc.value("steps", 200);
  cfg.store_every = doc.value("store_every", 1);
  cfg.init = doc.value("init", std::string{"random"});
  cfg.kmax = doc.value("kmax", 3);
  cfg.amplitude = doc.value("amplitude", 0.25);
  cfg.truncated = doc.value("truncated", false);
  cfg.dealias = doc.value("dealias", true);
  cfg.seed = doc.value("seed", std::uint64_t{0x5EED});
  cfg.out = doc.value("out", std::string{});
  cfg.trace_dir = doc.value("trace_dir", std::string{});
  cfg.verify = doc.value("verify", false);
  return cfg;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.to_json() == b.to_json();
}

}  // namespace eulerlab
