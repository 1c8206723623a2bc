#include "cli/run_config.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "zonoreach/errors.hpp"

namespace zonoreach::cli {

namespace {

void reject_unknown(const io::Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.count(it.key()) == 0) throw UsageError(where + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
void read(const io::Json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  io::Json j;
  try {
    j = io::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("run config: ") + e.what());
  }
  reject_unknown(j,
                 {"system", "h", "N", "budget", "max_generators", "epsilon", "sort_generators", "retry_half_step",
                  "outer", "seed", "out"},
                 "run config");
  RunConfig c;
  try {
    c.system = j.at("system").get<std::string>();
    read(j, "h", c.h);
    read(j, "N", c.N);
    read(j, "budget", c.budget);
    read(j, "max_generators", c.max_generators);
    read(j, "epsilon", c.epsilon);
    read(j, "sort_generators", c.sort_generators);
    read(j, "retry_half_step", c.retry_half_step);
    read(j, "seed", c.seed);
    read(j, "out", c.out);
    if (j.contains("outer")) {
      const io::Json& o = j.at("outer");
      reject_unknown(o, {"taylor_order", "enclosure_inflation", "max_picard_iters", "max_step_splits"},
                     "run config outer");
      read(o, "taylor_order", c.outer.taylor_order);
      read(o, "enclosure_inflation", c.outer.enclosure_inflation);
      read(o, "max_picard_iters", c.outer.max_picard_iters);
      read(o, "max_step_splits", c.outer.max_step_splits);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("run config: ") + e.what());
  }
  if (c.system.empty()) throw UsageError("run config: empty system");
  if (c.h < 0.0 || !std::isfinite(c.h)) throw UsageError("run config: h must be a finite value >= 0");
  if (c.N < -1) throw UsageError("run config: N must be >= 0");
  if (c.budget < 0) throw UsageError("run config: budget must be >= 0");
  if (c.max_generators < -1) throw UsageError("run config: max_generators must be >= 0");
  if (!(c.epsilon > 0.0)) throw UsageError("run config: epsilon must be positive");
  if (c.outer.taylor_order < 1) throw UsageError("run config: outer.taylor_order must be >= 1");
  if (!(c.outer.enclosure_inflation > 1.0)) throw UsageError("run config: outer.enclosure_inflation must be > 1");
  if (c.outer.max_picard_iters < 1) throw UsageError("run config: outer.max_picard_iters must be >= 1");
  if (c.outer.max_step_splits < 0) throw UsageError("run config: outer.max_step_splits must be >= 0");
  return c;
}

io::Json to_json(const RunConfig& c) {
  io::Json j;
  j["system"] = c.system;
  j["h"] = c.h;
  j["N"] = c.N;
  j["budget"] = c.budget;
  j["max_generators"] = c.max_generators;
  j["epsilon"] = c.epsilon;
  j["sort_generators"] = c.sort_generators;
  j["retry_half_step"] = c.retry_half_step;
  j["outer"] = {{"taylor_order", c.outer.taylor_order},
                {"enclosure_inflation", c.outer.enclosure_inflation},
                {"max_picard_iters", c.outer.max_picard_iters},
                {"max_step_splits", c.outer.max_step_splits}};
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

ResolvedRun resolve(const RunConfig& c) {
  ResolvedRun r;
  r.config = c;
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(c.system, ec)) r.config.system = fs::absolute(c.system).lexically_normal().string();
  try {
    r.bench = load_benchmark(r.config.system);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  RunConfig& f = r.config;
  if (f.h == 0.0) f.h = r.bench.h;
  if (!(f.h > 0.0)) throw UsageError("run config: no step size given and the system has none");
  if (f.N < 0) f.N = static_cast<int>(std::lround(r.bench.T / f.h));
  if (f.budget == 0) {
    InnerParams defaults;
    defaults.boundary_budget = r.bench.budget;
    f.budget = effective_budget(defaults, r.bench.system.dim());
  }
  if (f.max_generators < 0) f.max_generators = r.bench.max_generators;

  r.params.epsilon = f.epsilon;
  r.params.boundary_budget = f.budget;
  r.params.outer = f.outer;
  r.params.h = f.h;
  r.params.N = f.N;
  r.params.max_generators = f.max_generators;
  r.params.sort_generators = f.sort_generators;
  r.params.retry_half_step = f.retry_half_step;
  return r;
}

}  // namespace zonoreach::cli
