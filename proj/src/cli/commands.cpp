#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "cli/render.hpp"
#include "zonoreach/boundary.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/metrics.hpp"
#include "zonoreach/tiling.hpp"

namespace zonoreach::cli {

namespace fs = std::filesystem;

namespace {

Zonotope load_zonotope(const std::string& path) {
  try {
    return io::zonotope_from_json(io::Json::parse(io::read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw UsageError("cannot create directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string step_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%04zu.json", k);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_header() { return "system,dim,h,steps,T,verified,gamma_min,soundness"; }

struct Run {
  ResolvedRun resolved;
  std::vector<StepRecord> steps;
  io::Json summary;
};

void write_run(const std::string& dir, const ResolvedRun& r, const std::vector<StepRecord>& steps,
               const StepRecord* failed, std::optional<double> wall) {
  ensure_dir(dir);
  // Stale step files from an earlier, longer run would be picked up by eval.
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if ((name.rfind("step_", 0) == 0 && entry.path().extension() == ".json") || name == "failed_step.json") {
      fs::remove(entry.path());
    }
  }
  io::write_file(join(dir, "config.json"), io::dump(to_json(r.config)));
  for (std::size_t k = 0; k < steps.size(); ++k) {
    io::write_file(join(dir, step_name(k + 1)), io::dump(io::to_json(steps[k], static_cast<int>(k + 1))));
  }
  io::Json summary;
  summary["system"] = r.bench.system.name();
  summary["steps_requested"] = r.params.N;
  summary["steps_verified"] = steps.size();
  summary["verified"] = static_cast<int>(steps.size()) == r.params.N;
  if (failed != nullptr && static_cast<int>(steps.size()) < r.params.N) {
    summary["failure_stage"] = failed->failure_stage;
    summary["failure"] = failed->failure;
    io::write_file(join(dir, "failed_step.json"), io::dump(io::to_json(*failed, static_cast<int>(steps.size() + 1))));
  }
  if (wall) summary["wall_seconds"] = *wall;
  io::write_file(join(dir, "summary.json"), io::dump(summary));
}

Run load_run(const std::string& dir) {
  if (!fs::is_directory(dir)) throw UsageError("run directory " + dir + " does not exist");
  const std::string config_path = join(dir, "config.json");
  if (!fs::is_regular_file(config_path)) throw UsageError(dir + " is not a run directory (no config.json)");
  Run run;
  run.resolved = resolve(parse_run_config(io::read_file(config_path)));
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("step_", 0) == 0 && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  try {
    for (const std::string& f : files) run.steps.push_back(io::step_record_from_json(io::Json::parse(io::read_file(f))));
    const std::string summary_path = join(dir, "summary.json");
    if (fs::is_regular_file(summary_path)) run.summary = io::Json::parse(io::read_file(summary_path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(dir + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(dir + ": " + e.what());
  }
  if (run.steps.empty()) throw UsageError(dir + " holds no verified steps");
  for (const StepRecord& s : run.steps) {
    if (s.candidate.dim() != run.resolved.bench.system.dim()) throw UsageError(dir + ": step dimension differs from system");
  }
  return run;
}

double horizon(const std::vector<StepRecord>& steps) {
  double t = 0.0;
  for (const StepRecord& s : steps) t += s.h;
  return t;
}

EvalReport evaluate(const Benchmark& b, const Zonotope& u, double t, const EvalOptions& opt, std::uint64_t seed) {
  if (opt.samples < 1 || opt.soundness_samples < 1) throw UsageError("sample counts must be positive");
  EvalReport rep;
  rep.seed = seed;
  rep.samples = opt.samples;
  rep.soundness_samples = opt.soundness_samples;
  const Box hull = simulation_hull(b.system, b.x0, t, opt.samples, seed);
  rep.width_ratios = width_ratios(u, hull);
  rep.gamma_min = *std::min_element(rep.width_ratios.begin(), rep.width_ratios.end());
  rep.soundness = soundness_check(b.system, u, b.x0, t, opt.soundness_samples, seed + 1);
  return rep;
}

std::string csv_row(const Benchmark& b, const ResolvedRun& r, std::size_t steps, const EvalReport* rep) {
  const bool full = static_cast<int>(steps) == r.params.N;
  std::string row = b.system.name() + "," + std::to_string(b.system.dim()) + "," + num(r.params.h) + "," +
                    std::to_string(steps) + "," + num(r.params.h * static_cast<double>(steps)) + "," +
                    (full ? "yes" : "no") + ",";
  row += rep != nullptr ? num(rep->gamma_min) + "," + num(rep->soundness) : std::string(",");
  return row;
}

}  // namespace

int cmd_boundary(const std::string& zonotope_file, const std::string& out_dir, std::ostream& out) {
  const Zonotope z = load_zonotope(zonotope_file);
  const Boundary b = extract_boundary(z);
  ensure_dir(out_dir);
  io::Json facets = io::Json::array();
  for (const Facet& f : b.facets) {
    io::Json j;
    j["row"] = f.row;
    j["normal"] = std::vector<double>(f.normal.data(), f.normal.data() + f.normal.size());
    j["zonotope"] = io::to_json(f.zonotope);
    facets.push_back(j);
  }
  io::write_file(join(out_dir, "facets.json"), io::dump(facets));
  io::write_file(join(out_dir, "boundary.csv"), io::to_csv(b.matrix.entries));
  out << b.facets.size() << " facets, boundary matrix " << b.matrix.rows() << "x" << b.matrix.entries.cols() << "\n";
  return kOk;
}

int cmd_tile(const std::string& zonotope_file, const TileOptions& opt, const std::string& out_dir, std::ostream& out) {
  const Zonotope z = load_zonotope(zonotope_file);
  if (opt.budget < 0 || opt.grid_k < 0) throw UsageError("--budget and --grid-k must be >= 0");
  if (opt.budget > 0 && opt.grid_k > 0) throw UsageError("--budget and --grid-k are exclusive");
  if (numeric_rank(z.generators()) < z.dim()) throw UsageError("tile: the zonotope is not full-dimensional");
  std::vector<Zonotope> tiles;
  std::optional<IntMat> matrix;
  if (opt.grid_k > 0) {
    const Zonotope clean = z.without_zero_generators();
    if (clean.num_generators() != clean.dim()) throw UsageError("--grid-k needs a parallelotope input");
    tiles = split_parallelotope_grid(clean, opt.grid_k);
  } else if (opt.budget > 0) {
    tiles = refine_full_dimensional(z.without_zero_generators(), opt.budget);
  } else {
    const TilingMatrix t = tile(z, opt.iterations);
    tiles = tiles_from_matrix(t);
    // Columns back in the input's generator order.
    IntMat m(t.rows(), t.entries.cols());
    for (Eigen::Index k = 0; k < t.entries.cols(); ++k) m.col(t.permutation[static_cast<std::size_t>(k)]) = t.entries.col(k);
    matrix = m;
  }
  ensure_dir(out_dir);
  io::Json arr = io::Json::array();
  for (const Zonotope& t : tiles) arr.push_back(io::to_json(t));
  io::write_file(join(out_dir, "tiles.json"), io::dump(arr));
  if (matrix) io::write_file(join(out_dir, "tiling.csv"), io::to_csv(*matrix));
  out << tiles.size() << " tiles\n";
  return kOk;
}

int cmd_reach(const RunConfig& config, bool timing, std::ostream& out) {
  if (config.out.empty()) throw UsageError("reach: no output directory (--out or \"out\" in the config)");
  const ResolvedRun r = resolve(config);
  const auto t0 = std::chrono::steady_clock::now();
  StepRecord failed;
  const std::vector<StepRecord> steps = inner_reach(r.bench.system, r.bench.x0, r.params, &failed);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run(config.out, r, steps, &failed, timing ? std::optional<double>(wall) : std::nullopt);
  out << r.bench.system.name() << ": " << steps.size() << "/" << r.params.N << " steps verified";
  if (timing) out << " in " << num(wall) << " s";
  out << "\n";
  if (static_cast<int>(steps.size()) < r.params.N) {
    out << "step " << steps.size() + 1 << " failed at " << failed.failure_stage << ": " << failed.failure << "\n";
    return kUnverified;
  }
  return kOk;
}

int cmd_eval(const std::string& run_dir, const EvalOptions& opt, std::ostream& out) {
  const Run run = load_run(run_dir);
  const std::uint64_t seed = opt.seed.value_or(run.resolved.config.seed);
  EvalReport rep = evaluate(run.resolved.bench, run.steps.back().candidate, horizon(run.steps), opt, seed);
  rep.wall_seconds = run.summary.value("wall_seconds", 0.0);
  io::write_file(join(run_dir, "eval.json"), io::dump(io::to_json(rep)));
  const std::string row = csv_row(run.resolved.bench, run.resolved, run.steps.size(), &rep);
  io::write_file(join(run_dir, "eval.csv"), csv_header() + "\n" + row + "\n");
  out << csv_header() << "\n" << row << "\n";
  return kOk;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  std::vector<std::string> names = opt.names;
  if (opt.all) {
    for (const std::string& n : benchmark_names()) {
      if (benchmark(n).system.dim() <= opt.max_dim) names.push_back(n);
    }
  }
  if (names.empty()) throw UsageError("bench: give --name or --all");
  out << csv_header() << ",time_s\n";
  int code = kOk;
  for (const std::string& name : names) {
    RunConfig c;
    c.system = name;
    const ResolvedRun r = resolve(c);
    const auto t0 = std::chrono::steady_clock::now();
    StepRecord failed;
    const std::vector<StepRecord> steps = inner_reach(r.bench.system, r.bench.x0, r.params, &failed);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::optional<EvalReport> rep;
    if (!steps.empty()) {
      rep = evaluate(r.bench, steps.back().candidate, horizon(steps), opt.eval, opt.eval.seed.value_or(c.seed));
    }
    if (!opt.out.empty()) write_run(join(opt.out, name), r, steps, &failed, std::nullopt);
    out << csv_row(r.bench, r, steps.size(), rep ? &*rep : nullptr) << "," << num(wall) << "\n";
    out.flush();
    if (static_cast<int>(steps.size()) < r.params.N) code = kUnverified;
  }
  return code;
}

int cmd_render(const std::string& run_dir, const RenderOptions& opt, std::ostream& out) {
  const Run run = load_run(run_dir);
  const int n = run.resolved.bench.system.dim();
  if (opt.axis_x < 1 || opt.axis_y < 1 || opt.axis_x > n || opt.axis_y > n || opt.axis_x == opt.axis_y) {
    throw UsageError("--axes needs two distinct coordinates in 1.." + std::to_string(n));
  }
  const int i = opt.axis_x - 1;
  const int j = opt.axis_y - 1;
  const Benchmark& b = run.resolved.bench;
  const std::uint64_t seed = opt.seed.value_or(run.resolved.config.seed);
  const Box hull = simulation_hull(b.system, b.x0, horizon(run.steps), opt.samples, seed);

  std::vector<Layer> layers;
  layers.push_back({"X0", "#777777", "#cccccc", 0.4, 1.0, false, {projected_polygon(b.x0, i, j)}});
  Layer path{"U_k", "#6a9fd4", "none", 0.0, 0.5, false, {}};
  for (std::size_t k = 0; k + 1 < run.steps.size(); ++k) path.polygons.push_back(projected_polygon(run.steps[k].candidate, i, j));
  layers.push_back(std::move(path));
  layers.push_back({"simulation hull", "#c0392b", "none", 0.0, 1.5, true,
                    {{{hull.lower(i), hull.lower(j)}, {hull.upper(i), hull.lower(j)},
                      {hull.upper(i), hull.upper(j)}, {hull.lower(i), hull.upper(j)}}}});
  if (opt.tiles) {
    Layer tiles{"boundary pieces", "#27ae60", "none", 0.0, 0.6, false, {}};
    for (const Zonotope& piece : run.steps.back().boundary_pieces) tiles.polygons.push_back(projected_polygon(piece, i, j));
    layers.push_back(std::move(tiles));
  }
  layers.push_back({"U_N", "#1f4e99", "#1f4e99", 0.35, 1.5, false, {projected_polygon(run.steps.back().candidate, i, j)}});

  const std::string path_out =
      opt.out.empty() ? join(run_dir, "render_" + std::to_string(opt.axis_x) + "_" + std::to_string(opt.axis_y) + ".svg")
                      : opt.out;
  io::write_file(path_out, render_svg(layers, "x" + std::to_string(opt.axis_x), "x" + std::to_string(opt.axis_y)));
  out << "wrote " << path_out << "\n";
  return kOk;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inner approximations of reachable sets of nonlinear ODEs"};
  app.name("zonoreach");
  app.require_subcommand(1);

  std::string input;
  std::string out_dir = ".";
  auto* boundary = app.add_subcommand("boundary", "Facets and boundary matrix of a zonotope");
  boundary->add_option("zonotope", input, "Zonotope JSON file")->required();
  boundary->add_option("--out", out_dir, "Output directory (facets.json, boundary.csv)");

  TileOptions tile_opt;
  auto* tile_cmd = app.add_subcommand("tile", "Parallelotope tiling of a zonotope");
  tile_cmd->add_option("zonotope", input, "Zonotope JSON file")->required();
  tile_cmd->add_option("--budget", tile_opt.budget, "Refine into at most this many pieces");
  tile_cmd->add_option("--grid-k", tile_opt.grid_k, "Grid split of a parallelotope, k per axis");
  tile_cmd->add_option("--iterations", tile_opt.iterations, "Stop the elimination early");
  tile_cmd->add_option("--out", out_dir, "Output directory (tiles.json, tiling.csv)");

  std::string config_file;
  RunConfig flags;
  bool timing = false;
  auto* reach = app.add_subcommand("reach", "Inner approximation run");
  reach->set_help_flag("--help", "Print this help message and exit");  // --h is the step size
  reach->add_option("config", config_file, "Run config JSON");
  auto* o_system = reach->add_option("--system", flags.system, "System JSON file or builtin name");
  auto* o_h = reach->add_option("--h", flags.h, "Step size");
  auto* o_n = reach->add_option("--N", flags.N, "Number of steps");
  auto* o_budget = reach->add_option("--budget", flags.budget, "Boundary piece budget");
  auto* o_eps = reach->add_option("--epsilon", flags.epsilon, "Contraction margin");
  auto* o_gens = reach->add_option("--max-generators", flags.max_generators, "Generator cap of the starting candidate");
  auto* o_out = reach->add_option("--out", flags.out, "Run directory");
  reach->add_flag("--timing", timing, "Record wall time in summary.json");

  std::string run_dir;
  EvalOptions eval_opt;
  std::uint64_t seed = 0;
  auto* eval = app.add_subcommand("eval", "Width ratio and soundness of a run");
  eval->add_option("run_dir", run_dir)->required();
  eval->add_option("--samples", eval_opt.samples, "Trajectories for the simulation hull");
  eval->add_option("--soundness-samples", eval_opt.soundness_samples, "Backward trajectories");
  auto* eval_seed = eval->add_option("--seed", seed);

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Run builtin benchmarks with their default settings");
  bench->add_option("--name", bench_opt.names, "Benchmark name (repeatable)");
  bench->add_flag("--all", bench_opt.all, "Every registered benchmark up to --max-dim");
  bench->add_option("--max-dim", bench_opt.max_dim);
  bench->add_option("--samples", bench_opt.eval.samples);
  bench->add_option("--soundness-samples", bench_opt.eval.soundness_samples);
  auto* bench_seed = bench->add_option("--seed", seed);
  bench->add_option("--out", bench_opt.out, "Keep the run directories here");

  RenderOptions render_opt;
  std::vector<int> axes;
  auto* render = app.add_subcommand("render", "SVG of a run projected on two axes");
  render->add_option("run_dir", run_dir)->required();
  render->add_option("--axes", axes, "Two 1-based coordinates")->expected(2);
  render->add_flag("--tiles", render_opt.tiles, "Draw the last step's boundary pieces");
  render->add_option("--samples", render_opt.samples);
  auto* render_seed = render->add_option("--seed", seed);
  render->add_option("--out", render_opt.out, "SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (boundary->parsed()) return cmd_boundary(input, out_dir, out);
    if (tile_cmd->parsed()) return cmd_tile(input, tile_opt, out_dir, out);
    if (reach->parsed()) {
      RunConfig c;
      if (!config_file.empty()) {
        std::string text;
        try {
          text = io::read_file(config_file);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        c = parse_run_config(text);
      }
      if (o_system->count() > 0) c.system = flags.system;
      if (o_h->count() > 0) c.h = flags.h;
      if (o_n->count() > 0) c.N = flags.N;
      if (o_budget->count() > 0) c.budget = flags.budget;
      if (o_eps->count() > 0) c.epsilon = flags.epsilon;
      if (o_gens->count() > 0) c.max_generators = flags.max_generators;
      if (o_out->count() > 0) c.out = flags.out;
      if (c.system.empty()) throw UsageError("reach: no system (--system or a config file)");
      // Same checks as a config file.
      c = parse_run_config(to_json(c).dump());
      return cmd_reach(c, timing, out);
    }
    if (eval->parsed()) {
      if (eval_seed->count() > 0) eval_opt.seed = seed;
      return cmd_eval(run_dir, eval_opt, out);
    }
    if (bench->parsed()) {
      if (bench_seed->count() > 0) bench_opt.eval.seed = seed;
      return cmd_bench(bench_opt, out);
    }
    if (render->parsed()) {
      if (render_seed->count() > 0) render_opt.seed = seed;
      if (!axes.empty()) {
        render_opt.axis_x = axes[0];
        render_opt.axis_y = axes[1];
      }
      return cmd_render(run_dir, render_opt, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace zonoreach::cli
