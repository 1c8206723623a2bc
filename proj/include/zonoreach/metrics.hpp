#pragma once

#include <cstdint>
#include <vector>

#include "zonoreach/parallel.hpp"
#include "zonoreach/system.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

struct EvalReport {
  double gamma_min = 0.0;
  std::vector<double> width_ratios;
  int samples = 0;
  int soundness_samples = 0;
  double soundness = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

// Per-axis width ratios of u against o.
[[nodiscard]] std::vector<double> width_ratios(const Zonotope& u, const Box& o);
[[nodiscard]] double gamma_min(const Zonotope& u, const Box& o);
[[nodiscard]] double gamma_min(const Zonotope& u, const Zonotope& o);

// Interval enclosure of `count` uniform samples of x0 integrated to time t.
[[nodiscard]] Box simulation_hull(const System& s, const Zonotope& x0, double t, int count, std::uint64_t seed,
                                  ExecPolicy policy = ExecPolicy::Parallel);

// Fraction of `count` samples of u whose backward trajectory over t lands in x0 (inflated 1e-6).
[[nodiscard]] double soundness_check(const System& s, const Zonotope& u, const Zonotope& x0, double t, int count,
                                     std::uint64_t seed, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace zonoreach
