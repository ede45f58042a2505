#include "report.hpp"

#include <cstdio>

namespace blowup::cli {

namespace {

void emit(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ", ";
        first = false;
        out += Json(key).dump();
        out += ": ";
        emit(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        emit(item, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      out += buf;
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string format_json(const Json& value) {
  std::string out;
  emit(value, out);
  return out;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json vertices_json(const std::vector<Vertex>& v) {
  Json a = Json::array();
  for (Vertex x : v) a.push_back(x);
  return a;
}

}  // namespace blowup::cli
