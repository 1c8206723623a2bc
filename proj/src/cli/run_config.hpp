#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "zonoreach/inner.hpp"
#include "zonoreach/io.hpp"
#include "zonoreach/system.hpp"

namespace zonoreach::cli {

// Bad flags, unreadable or malformed inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string system;  // builtin benchmark name or path to a system JSON file
  double h = 0.0;      // 0: the benchmark's step
  int N = -1;          // -1: round(T / h)
  int budget = 0;      // 0: the benchmark's suggestion, then the library default
  int max_generators = -1;
  double epsilon = 1e-6;
  bool sort_generators = true;
  bool retry_half_step = true;
  OuterParams outer;
  std::uint64_t seed = 1;
  std::string out;
};

// Unknown keys, wrong types and out-of-range values raise UsageError.
[[nodiscard]] RunConfig parse_run_config(const std::string& text);
[[nodiscard]] io::Json to_json(const RunConfig& c);

struct ResolvedRun {
  RunConfig config;  // every default filled in; file paths made absolute
  Benchmark bench;
  InnerParams params;
};

[[nodiscard]] ResolvedRun resolve(const RunConfig& c);

}  // namespace zonoreach::cli
