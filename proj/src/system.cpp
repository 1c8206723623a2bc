#include "zonoreach/system.hpp"

#include <boost/numeric/odeint.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "zonoreach/errors.hpp"

namespace zonoreach {

namespace {

const char* const kEmbeddedBenchmarks =
#include "benchmarks_embedded.inc"
    ;

const nlohmann::json& registry() {
  static const nlohmann::json parsed = nlohmann::json::parse(kEmbeddedBenchmarks);
  return parsed.at("benchmarks");
}

}  // namespace

System::System(std::string name, std::vector<Expr> rhs) : name_(std::move(name)), rhs_(std::move(rhs)) {
  const int n = dim();
  if (n < 1) throw Error("System: need at least one equation");
  f_.reserve(rhs_.size());
  jac_.reserve(static_cast<std::size_t>(n * n));
  hess_.reserve(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    const Expr& fi = rhs_[static_cast<std::size_t>(i)];
    f_.emplace_back(fi);
    std::vector<Expr> grad;
    for (int j = 0; j < n; ++j) {
      grad.push_back(differentiate(fi, j));
      jac_.emplace_back(grad.back());
    }
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        hess_.emplace_back(k >= j ? differentiate(grad[static_cast<std::size_t>(j)], k) : constant(0.0));
      }
    }
  }
}

System System::parse(std::string name, const std::vector<std::string>& rhs) {
  std::vector<Expr> exprs;
  const int n = static_cast<int>(rhs.size());
  for (const std::string& s : rhs) exprs.push_back(parse_expr(s, n));
  return System(std::move(name), std::move(exprs));
}

std::vector<std::string> System::rhs_strings() const {
  std::vector<std::string> out;
  for (const Expr& e : rhs_) out.push_back(to_string(e));
  return out;
}

void System::eval(const double* x, double* dx) const {
  for (std::size_t i = 0; i < f_.size(); ++i) dx[i] = f_[i](x);
}

Vec System::eval(const Vec& x) const {
  if (x.size() != dim()) throw DimensionMismatch("System::eval: wrong state size");
  Vec dx(dim());
  eval(x.data(), dx.data());
  return dx;
}

Mat System::jacobian(const Vec& x) const {
  if (x.size() != dim()) throw DimensionMismatch("System::jacobian: wrong state size");
  const int n = dim();
  Mat j(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) j(r, c) = jac_[static_cast<std::size_t>(r * n + c)](x.data());
  }
  return j;
}

std::vector<Interval> System::interval_eval(const Box& box) const {
  if (box.dim() != dim()) throw DimensionMismatch("System::interval_eval: wrong box size");
  std::vector<Interval> x(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) x[static_cast<std::size_t>(i)] = Interval(box.lower(i), box.upper(i));
  std::vector<Interval> out;
  out.reserve(f_.size());
  for (const Program& p : f_) out.push_back(p(x.data()));
  return out;
}

std::vector<Mat> System::hessian_bound(const Box& box) const {
  if (box.dim() != dim()) throw DimensionMismatch("System::hessian_bound: wrong box size");
  const int n = dim();
  std::vector<Interval> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = Interval(box.lower(i), box.upper(i));
  std::vector<Mat> out(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const Program& p = hess_[static_cast<std::size_t>((i * n + j) * n + k)];
        if (p.is_zero()) continue;
        const double m = p(x.data()).mag();
        out[static_cast<std::size_t>(i)](j, k) = m;
        out[static_cast<std::size_t>(i)](k, j) = m;
      }
    }
  }
  return out;
}

System time_invert(const System& s) {
  std::vector<Expr> rhs;
  for (const Expr& e : s.rhs()) rhs.push_back(make_neg(e));
  return System(s.name(), std::move(rhs));
}

Mat jacobian(const System& s, const Vec& x) { return s.jacobian(x); }
std::vector<Mat> hessian_bound(const System& s, const Box& box) { return s.hessian_bound(box); }

Vec integrate(const System& s, const Vec& x0, double t, double abs_tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  if (x0.size() != s.dim()) throw DimensionMismatch("integrate: wrong state size");
  State x(x0.data(), x0.data() + x0.size());
  if (t == 0.0) return x0;
  if (t < 0.0) throw Error("integrate: negative horizon, integrate time_invert(system) instead");
  auto rhs = [&s](const State& state, State& dx, double) { s.eval(state.data(), dx.data()); };
  auto stepper = odeint::make_controlled(abs_tol, abs_tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_adaptive(stepper, rhs, x, 0.0, t, std::min(t, 1e-2));
  return Eigen::Map<const Vec>(x.data(), static_cast<Eigen::Index>(x.size()));
}

Benchmark benchmark_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("system config: ") + e.what());
  }
  static const char* const allowed[] = {"name", "dim", "rhs", "x0_center", "x0_radius", "h", "T", "source", "budget", "max_generators"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(std::begin(allowed), std::end(allowed), it.key()) == std::end(allowed)) {
      throw Error("system config: unknown key '" + it.key() + "'");
    }
  }
  try {
    const int n = j.at("dim").get<int>();
    const auto rhs = j.at("rhs").get<std::vector<std::string>>();
    if (static_cast<int>(rhs.size()) != n) throw Error("system config: rhs count differs from dim");
    std::vector<Expr> exprs;
    for (const std::string& s : rhs) exprs.push_back(parse_expr(s, n));
    const auto c = j.at("x0_center").get<std::vector<double>>();
    const auto r = j.at("x0_radius").get<std::vector<double>>();
    if (static_cast<int>(c.size()) != n || static_cast<int>(r.size()) != n) {
      throw Error("system config: x0_center/x0_radius length differs from dim");
    }
    Benchmark b;
    b.system = System(j.at("name").get<std::string>(), std::move(exprs));
    const Vec cv = Eigen::Map<const Vec>(c.data(), n);
    const Vec rv = Eigen::Map<const Vec>(r.data(), n);
    b.x0 = Zonotope::from_box(Box(cv - rv, cv + rv));
    b.h = j.at("h").get<double>();
    b.T = j.at("T").get<double>();
    b.source = j.value("source", std::string());
    b.budget = j.value("budget", 0);
    b.max_generators = j.value("max_generators", 0);
    if (b.budget < 0 || b.max_generators < 0) throw Error("system config: budget/max_generators must be >= 0");
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("system config: ") + e.what());
  }
}

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names;
  for (const auto& entry : registry()) {
    names.push_back(entry.at("name").get<std::string>());
  }
  return names;
}

Benchmark benchmark(const std::string& name) {
  for (const auto& entry : registry()) {
    if (entry.at("name").get<std::string>() == name) return benchmark_from_json(entry.dump());
  }
  throw Error("unknown benchmark '" + name + "'");
}

Benchmark load_benchmark(const std::string& file_or_name) {
  std::ifstream in(file_or_name);
  if (!in) return benchmark(file_or_name);
  std::stringstream ss;
  ss << in.rdbuf();
  return benchmark_from_json(ss.str());
}

}  // namespace zonoreach
