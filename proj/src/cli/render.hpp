#pragma once

#include <string>
#include <vector>

#include "zonoreach/zonotope.hpp"

namespace zonoreach::cli {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Convex polygon of the projection onto axes (i, j), from support points in `directions`
// evenly spaced directions. Counter-clockwise, consecutive duplicates removed.
[[nodiscard]] std::vector<Point2> projected_polygon(const Zonotope& z, int i, int j, int directions = 64);

struct Layer {
  std::string label;
  std::string stroke;
  std::string fill;  // "none" for outlines
  double fill_opacity = 0.0;
  double stroke_width = 1.0;
  bool dashed = false;
  std::vector<std::vector<Point2>> polygons;
};

// Self-contained SVG; layers are drawn in order. Same input, same bytes.
[[nodiscard]] std::string render_svg(const std::vector<Layer>& layers, const std::string& x_label,
                                     const std::string& y_label, int size = 640);

}  // namespace zonoreach::cli
