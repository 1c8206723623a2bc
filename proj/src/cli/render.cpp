#include "cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "zonoreach/errors.hpp"

namespace zonoreach::cli {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Point2> projected_polygon(const Zonotope& z, int i, int j, int directions) {
  if (i < 0 || j < 0 || i >= z.dim() || j >= z.dim() || i == j) {
    throw Error("projected_polygon: axes must be two distinct coordinates");
  }
  if (directions < 3) throw Error("projected_polygon: need at least 3 directions");
  std::vector<Point2> out;
  for (int k = 0; k < directions; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / directions;
    const double dx = std::cos(theta);
    const double dy = std::sin(theta);
    Point2 p{z.center()(i), z.center()(j)};
    for (Eigen::Index l = 0; l < z.num_generators(); ++l) {
      const double gx = z.generators()(i, l);
      const double gy = z.generators()(j, l);
      const double s = gx * dx + gy * dy;
      const double sign = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
      p.x += sign * gx;
      p.y += sign * gy;
    }
    if (!out.empty() && std::abs(out.back().x - p.x) < 1e-12 && std::abs(out.back().y - p.y) < 1e-12) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && std::abs(out.back().x - out.front().x) < 1e-12 &&
         std::abs(out.back().y - out.front().y) < 1e-12) {
    out.pop_back();
  }
  return out;
}

std::string render_svg(const std::vector<Layer>& layers, const std::string& x_label, const std::string& y_label,
                       int size) {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const Layer& l : layers) {
    for (const auto& poly : l.polygons) {
      for (const Point2& p : poly) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
      }
    }
  }
  if (!std::isfinite(x0)) {
    x0 = y0 = -1.0;
    x1 = y1 = 1.0;
  }
  auto pad = [](double& lo, double& hi) {
    double w = hi - lo;
    if (w <= 0.0) w = std::max(1e-9, std::abs(lo) * 1e-3);
    lo -= 0.05 * w;
    hi += 0.05 * w;
  };
  pad(x0, x1);
  pad(y0, y1);

  const double margin = 60.0;
  const double plot = size - 2.0 * margin;
  auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * plot; };
  auto sy = [&](double y) { return margin + (y1 - y) / (y1 - y0) * plot; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) + "\" height=\"" +
         std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " + std::to_string(size) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(size) + "\" height=\"" + std::to_string(size) +
         "\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt("%.2f", margin) + "\" y=\"" + fmt("%.2f", margin) + "\" width=\"" + fmt("%.2f", plot) +
         "\" height=\"" + fmt("%.2f", plot) + "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  for (const Layer& l : layers) {
    svg += "<g stroke=\"" + l.stroke + "\" fill=\"" + l.fill + "\" fill-opacity=\"" + fmt("%.3f", l.fill_opacity) +
           "\" stroke-width=\"" + fmt("%.2f", l.stroke_width) + "\"";
    if (l.dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += ">\n";
    for (const auto& poly : l.polygons) {
      if (poly.empty()) continue;
      svg += "<polygon points=\"";
      for (std::size_t k = 0; k < poly.size(); ++k) {
        if (k > 0) svg += ' ';
        svg += fmt("%.3f", sx(poly[k].x)) + "," + fmt("%.3f", sy(poly[k].y));
      }
      svg += "\"/>\n";
    }
    svg += "</g>\n";
  }

  const std::string font = " font-family=\"monospace\" font-size=\"12\"";
  svg += "<text x=\"" + fmt("%.2f", margin) + "\" y=\"" + fmt("%.2f", size - margin + 18) + "\"" + font + ">" +
         fmt("%.6g", x0) + "</text>\n";
  svg += "<text x=\"" + fmt("%.2f", size - margin) + "\" y=\"" + fmt("%.2f", size - margin + 18) + "\"" + font +
         " text-anchor=\"end\">" + fmt("%.6g", x1) + "</text>\n";
  svg += "<text x=\"" + fmt("%.2f", size / 2.0) + "\" y=\"" + fmt("%.2f", size - margin + 36) + "\"" + font +
         " text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  svg += "<text x=\"" + fmt("%.2f", margin - 6) + "\" y=\"" + fmt("%.2f", size - margin) + "\"" + font +
         " text-anchor=\"end\">" + fmt("%.6g", y0) + "</text>\n";
  svg += "<text x=\"" + fmt("%.2f", margin - 6) + "\" y=\"" + fmt("%.2f", margin + 10) + "\"" + font +
         " text-anchor=\"end\">" + fmt("%.6g", y1) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt("%.2f", size / 2.0) + "\"" + font + " text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt("%.2f", size / 2.0) + ")\">" + escape(y_label) + "</text>\n";
  double ly = 14.0;
  for (const Layer& l : layers) {
    if (l.label.empty()) continue;
    svg += "<rect x=\"" + fmt("%.2f", margin) + "\" y=\"" + fmt("%.2f", ly - 9) + "\" width=\"14\" height=\"10\" stroke=\"" +
           l.stroke + "\" fill=\"" + (l.fill == "none" ? std::string("white") : l.fill) + "\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", margin + 20) + "\" y=\"" + fmt("%.2f", ly) + "\"" + font + ">" + escape(l.label) +
           "</text>\n";
    ly += 12.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace zonoreach::cli
