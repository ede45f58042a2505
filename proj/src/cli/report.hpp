#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "blowup/graph.hpp"
#include "blowup/scalar.hpp"

namespace blowup::cli {

using Json = nlohmann::ordered_json;

/// Single-line JSON: `{"a": 1, "b": [1,2]}`. Doubles use 17 significant
/// digits.
std::string format_json(const Json& value);

Json rational_json(const Rational& q);
Json vector_json(const Eigen::VectorXd& v);
Json vertices_json(const std::vector<Vertex>& v);

}  // namespace blowup::cli
