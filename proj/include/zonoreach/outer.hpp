#pragma once

#include "zonoreach/system.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

struct OuterParams {
  int taylor_order = 12;
  double enclosure_inflation = 1.1;
  int max_picard_iters = 50;
  int max_step_splits = 8;
};

// Box Y with hull(Z) + [0,h] f(Y) inside Y, so every trajectory from Z stays in Y on [0,h].
// Throws EnclosureFailure when the iteration does not close.
[[nodiscard]] Box a_priori_enclosure(const System& s, const Zonotope& z, double h, const OuterParams& params = {});

// Conservative linearization around the enclosure midpoint; the result contains every
// endpoint x(h) with x(0) in z. Halves h internally (up to max_step_splits times) when the
// enclosure fails or the remainder is large. Throws EnclosureFailure when nothing works.
[[nodiscard]] Zonotope outer_step(const System& s, const Zonotope& z, double h, const OuterParams& params = {});

[[nodiscard]] Zonotope outer_point(const System& s, const Vec& x, double h, const OuterParams& params = {});

// Girard's box reduction: keeps the largest generators and boxes the rest so the result
// has at most max_generators columns (never fewer than n). The result contains z.
[[nodiscard]] Zonotope reduce_outer(const Zonotope& z, int max_generators);

}  // namespace zonoreach
