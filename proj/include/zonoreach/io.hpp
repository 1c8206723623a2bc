#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "zonoreach/boundary.hpp"
#include "zonoreach/inner.hpp"
#include "zonoreach/metrics.hpp"
#include "zonoreach/tiling.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach::io {

using Json = nlohmann::ordered_json;

// {"center": [...], "generators": [[row], ...]} with one inner array per row of G.
[[nodiscard]] Json to_json(const Zonotope& z);
[[nodiscard]] Zonotope zonotope_from_json(const Json& j);

[[nodiscard]] Json to_json(const Box& b);
[[nodiscard]] Json to_json(const StepRecord& r, int step);
[[nodiscard]] StepRecord step_record_from_json(const Json& j);
[[nodiscard]] Json to_json(const EvalReport& r);

[[nodiscard]] std::string to_csv(const IntMat& m);

[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Pretty JSON with a trailing newline, stable across runs.
[[nodiscard]] std::string dump(const Json& j);

}  // namespace zonoreach::io
