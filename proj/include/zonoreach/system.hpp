#pragma once

#include <string>
#include <vector>

#include "zonoreach/expr.hpp"
#include "zonoreach/interval.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

// Autonomous ODE x' = f(x). Derivatives are derived symbolically at construction.
class System {
 public:
  System() = default;
  System(std::string name, std::vector<Expr> rhs);
  static System parse(std::string name, const std::vector<std::string>& rhs);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int dim() const { return static_cast<int>(rhs_.size()); }
  [[nodiscard]] const std::vector<Expr>& rhs() const { return rhs_; }
  [[nodiscard]] std::vector<std::string> rhs_strings() const;

  [[nodiscard]] Vec eval(const Vec& x) const;
  void eval(const double* x, double* dx) const;
  [[nodiscard]] Mat jacobian(const Vec& x) const;
  [[nodiscard]] std::vector<Interval> interval_eval(const Box& box) const;

  // hessian_bound(Y)[i](j,k) >= max over Y of |d^2 f_i / dx_j dx_k|.
  [[nodiscard]] std::vector<Mat> hessian_bound(const Box& box) const;

 private:
  std::string name_;
  std::vector<Expr> rhs_;
  std::vector<Program> f_;
  std::vector<Program> jac_;   // row-major n x n
  std::vector<Program> hess_;  // [i][j][k], only j <= k stored meaningfully
};

[[nodiscard]] System time_invert(const System& s);

[[nodiscard]] Mat jacobian(const System& s, const Vec& x);
[[nodiscard]] std::vector<Mat> hessian_bound(const System& s, const Box& box);

// Adaptive Dormand-Prince 5(4) integration over [0, t] with absolute tolerance abs_tol.
[[nodiscard]] Vec integrate(const System& s, const Vec& x0, double t, double abs_tol = 1e-9);

struct Benchmark {
  System system;
  Zonotope x0;
  double h = 0.0;
  double T = 0.0;
  std::string source;
  // Suggested inner-run settings; 0 means the library default.
  int budget = 0;
  int max_generators = 0;
};

// Builtin registry compiled from the bundled benchmark file.
[[nodiscard]] Benchmark benchmark(const std::string& name);
[[nodiscard]] std::vector<std::string> benchmark_names();

// Reads {"name","dim","rhs","x0_center","x0_radius","h","T"} (optionally "source", "budget",
// "max_generators") from a JSON string.
[[nodiscard]] Benchmark benchmark_from_json(const std::string& text);
[[nodiscard]] Benchmark load_benchmark(const std::string& file_or_name);

}  // namespace zonoreach
