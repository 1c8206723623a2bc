#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace zonoreach::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kUnverified = 3, kNumeric = 4 };

struct TileOptions {
  int budget = 0;
  int grid_k = 0;
  int iterations = -1;
};

struct EvalOptions {
  int samples = 1000;
  int soundness_samples = 1000;
  std::optional<std::uint64_t> seed;
};

struct RenderOptions {
  int axis_x = 1;  // 1-based
  int axis_y = 2;
  bool tiles = false;
  int samples = 1000;
  std::optional<std::uint64_t> seed;
  std::string out;  // default: <run_dir>/render_<i>_<j>.svg
};

struct BenchOptions {
  std::vector<std::string> names;  // empty with all = true: every registered benchmark
  bool all = false;
  int max_dim = 12;
  EvalOptions eval;
  std::string out;  // optional parent directory for the run directories
};

// Each command writes its files, prints a short report to `out` and returns an exit code.
// Usage problems are raised as UsageError; numeric failures as zonoreach::Error.
int cmd_boundary(const std::string& zonotope_file, const std::string& out_dir, std::ostream& out);
int cmd_tile(const std::string& zonotope_file, const TileOptions& opt, const std::string& out_dir, std::ostream& out);
int cmd_reach(const RunConfig& config, bool timing, std::ostream& out);
int cmd_eval(const std::string& run_dir, const EvalOptions& opt, std::ostream& out);
int cmd_bench(const BenchOptions& opt, std::ostream& out);
int cmd_render(const std::string& run_dir, const RenderOptions& opt, std::ostream& out);

// Full command line: parsing, dispatch and exit-code mapping.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace zonoreach::cli
