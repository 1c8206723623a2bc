#include "zonoreach/io.hpp"

#include <fstream>
#include <sstream>

#include "zonoreach/errors.hpp"

namespace zonoreach::io {

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json list_json(const std::vector<Zonotope>& zs) {
  Json a = Json::array();
  for (const Zonotope& z : zs) a.push_back(to_json(z));
  return a;
}

std::vector<Zonotope> list_from_json(const Json& j) {
  std::vector<Zonotope> out;
  for (const Json& z : j) out.push_back(zonotope_from_json(z));
  return out;
}

}  // namespace

Json to_json(const Zonotope& z) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < z.dim(); ++r) rows.push_back(vec_json(z.generators().row(r).transpose()));
  return Json{{"center", vec_json(z.center())}, {"generators", rows}};
}

Zonotope zonotope_from_json(const Json& j) {
  try {
    const auto c = j.at("center").get<std::vector<double>>();
    const auto rows = j.at("generators").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(c.size());
    if (n == 0) throw Error("zonotope JSON: empty center");
    if (!rows.empty() && static_cast<Eigen::Index>(rows.size()) != n) {
      throw Error("zonotope JSON: generators must have one row per dimension");
    }
    const auto p = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
    Mat g(n, p);
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(rows.size()); ++r) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != p) {
        throw Error("zonotope JSON: ragged generator rows");
      }
      for (Eigen::Index k = 0; k < p; ++k) g(r, k) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    }
    return Zonotope(Eigen::Map<const Vec>(c.data(), n), g);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("zonotope JSON: ") + e.what());
  }
}

Json to_json(const Box& b) { return Json{{"lower", vec_json(b.lower)}, {"upper", vec_json(b.upper)}}; }

Json to_json(const StepRecord& r, int step) {
  Json j;
  j["step"] = step;
  j["h"] = r.h;
  j["substeps"] = r.substeps;
  j["verified"] = r.verified;
  if (!r.verified) {
    j["failure_stage"] = r.failure_stage;
    j["failure"] = r.failure;
  }
  j["U_k"] = to_json(r.U_k);
  j["candidate"] = to_json(r.candidate);
  j["outer_whole"] = to_json(r.outer_whole);
  j["boundary_pieces"] = list_json(r.boundary_pieces);
  j["outer_pieces"] = list_json(r.outer_pieces);
  return j;
}

StepRecord step_record_from_json(const Json& j) {
  try {
    StepRecord r;
    r.h = j.at("h").get<double>();
    r.substeps = j.value("substeps", 1);
    r.verified = j.at("verified").get<bool>();
    r.failure_stage = j.value("failure_stage", std::string());
    r.failure = j.value("failure", std::string());
    r.U_k = zonotope_from_json(j.at("U_k"));
    r.candidate = zonotope_from_json(j.at("candidate"));
    r.outer_whole = zonotope_from_json(j.at("outer_whole"));
    r.boundary_pieces = list_from_json(j.at("boundary_pieces"));
    r.outer_pieces = list_from_json(j.at("outer_pieces"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("step record JSON: ") + e.what());
  }
}

Json to_json(const EvalReport& r) {
  Json j;
  j["gamma_min"] = r.gamma_min;
  j["width_ratios"] = r.width_ratios;
  j["samples"] = r.samples;
  j["soundness_samples"] = r.soundness_samples;
  j["soundness"] = r.soundness;
  j["seed"] = r.seed;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string to_csv(const IntMat& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += std::to_string(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace zonoreach::io
