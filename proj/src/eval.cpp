#include "cholspace/eval.hpp"

#include <charconv>
#include <vector>

#include "cholspace/gyro.hpp"
#include "cholspace/spd_manifold.hpp"

namespace cholspace {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) {
  throw GeometryError(ErrorCode::ParseError, msg);
}

Matrix to_matrix(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) parse_fail("'" + key + "' must be a non-empty matrix");
  const Index n = static_cast<Index>(j.size());
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != n) {
      parse_fail("'" + key + "' must be square");
    }
    for (Index k = 0; k < n; ++k) {
      if (!j[i][k].is_number()) parse_fail("'" + key + "' has a non-numeric entry");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

Matrix field_matrix(const json& in, const std::string& key) {
  if (!in.contains(key)) parse_fail("missing field '" + key + "'");
  return to_matrix(in[key], key);
}

double field_number(const json& in, const std::string& key) {
  if (!in.contains(key) || !in[key].is_number()) parse_fail("missing numeric field '" + key + "'");
  return in[key].get<double>();
}

json from_matrix(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

struct ParsedMetric {
  CholeskyMetricSpec spec;
  bool spd = false;
};

ParsedMetric parse_metric(const std::string& tag, const json& input) {
  Mode mode = Mode::Checked;
  if (input.contains("mode")) {
    const std::string m = input["mode"].get<std::string>();
    if (m == "raw") {
      mode = Mode::Raw;
    } else if (m != "checked") {
      parse_fail("mode must be 'raw' or 'checked'");
    }
  }
  std::optional<PositiveDiag> weights;
  if (input.contains("M")) {
    std::vector<double> w = input["M"].get<std::vector<double>>();
    weights = PositiveDiag(Eigen::Map<const Vector>(w.data(), static_cast<Index>(w.size())));
  }

  std::string family = tag;
  double theta = 1.0;
  if (const auto dash = tag.find('-'); dash != std::string::npos) {
    family = tag.substr(dash + 1);
    const auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + dash, theta);
    if (ec != std::errc() || ptr != tag.data() + dash) parse_fail("bad exponent in '" + tag + "'");
  }
  const bool has_theta = family != tag;
  if (family == "CM" && !has_theta) return {CholeskyMetricSpec::cm(mode), false};
  if (family == "LCM" && !has_theta) return {CholeskyMetricSpec::cm(mode), true};
  if (family == "DEM" && has_theta) return {CholeskyMetricSpec::dem(theta, mode), false};
  if (family == "CDEM" && has_theta) return {CholeskyMetricSpec::dem(theta, mode), true};
  if (family == "DGBWM") return {CholeskyMetricSpec::dgbwm(theta, weights, mode), false};
  if (family == "CDGBWM") return {CholeskyMetricSpec::dgbwm(theta, weights, mode), true};
  parse_fail("unknown metric '" + tag + "'");
}

json eval_cholesky(const CholeskyMetricSpec& spec, const std::string& op, const json& in) {
  auto point = [&](const char* k) { return CholeskyPoint(LowerTriangular(field_matrix(in, k)), spec.mode); };
  auto tangent = [&](const char* k) { return LowerTriangular(field_matrix(in, k)); };

  if (op == "inner") return inner(spec, point("L"), tangent("X"), tangent("Y"));
  if (op == "geodesic") {
    return from_matrix(geodesic(spec, point("L"), tangent("X"), field_number(in, "t")).matrix());
  }
  if (op == "exp") return from_matrix(exp_map(spec, point("L"), tangent("X")).matrix());
  if (op == "log") return from_matrix(log_map(spec, point("L"), point("K")).matrix());
  if (op == "transport") {
    return from_matrix(transport(spec, point("L"), point("K"), tangent("X")).matrix());
  }
  if (op == "dist") return dist(spec, point("L"), point("K"));
  if (op == "wfm") {
    if (!in.contains("points") || !in["points"].is_array()) parse_fail("missing 'points'");
    std::vector<CholeskyPoint> pts;
    for (const auto& p : in["points"]) pts.emplace_back(LowerTriangular(to_matrix(p, "points")), spec.mode);
    const auto w = in.at("weights").get<std::vector<double>>();
    return from_matrix(wfm(spec, w, pts).matrix());
  }
  if (op == "gyro_add") return from_matrix(gyro_add(spec, point("L"), point("K")).matrix());
  if (op == "gyro_scale") {
    return from_matrix(gyro_scale(spec, field_number(in, "t"), point("L")).matrix());
  }
  if (op == "gyro_inverse") return from_matrix(gyro_inverse(spec, point("L")).matrix());
  parse_fail("unknown operation '" + op + "'");
}

json eval_spd(const SpdMetricSpec& spec, const std::string& op, const json& in) {
  auto point = [&](const char* k) { return SpdPoint(field_matrix(in, k)); };
  auto tangent = [&](const char* k) { return SymTangent(field_matrix(in, k)); };

  if (op == "inner") return spd_inner(spec, point("P"), tangent("V"), tangent("W"));
  if (op == "geodesic") {
    return from_matrix(spd_geodesic(spec, point("P"), tangent("V"), field_number(in, "t")).matrix());
  }
  if (op == "exp") return from_matrix(spd_exp(spec, point("P"), tangent("V")).matrix());
  if (op == "log") return from_matrix(spd_log(spec, point("P"), point("Q")).matrix());
  if (op == "transport") {
    return from_matrix(spd_transport(spec, point("P"), point("Q"), tangent("V")).matrix());
  }
  if (op == "dist") return spd_dist(spec, point("P"), point("Q"));
  if (op == "wfm") {
    if (!in.contains("points") || !in["points"].is_array()) parse_fail("missing 'points'");
    std::vector<SpdPoint> pts;
    for (const auto& p : in["points"]) pts.emplace_back(to_matrix(p, "points"));
    const auto w = in.at("weights").get<std::vector<double>>();
    return from_matrix(spd_wfm(spec, w, pts).matrix());
  }
  if (op == "gyro_add") return from_matrix(spd_gyro_add(spec, point("P"), point("Q")).matrix());
  if (op == "gyro_scale") {
    return from_matrix(spd_gyro_scale(spec, field_number(in, "t"), point("P")).matrix());
  }
  if (op == "gyro_inverse") {
    return from_matrix(SpdPoint::from_factor(gyro_inverse(spec.underlying, point("P").factor())).matrix());
  }
  if (op == "interpolate") {
    return from_matrix(
        spd_geodesic_between(spec, point("P"), point("Q"), field_number(in, "t")).matrix());
  }
  parse_fail("unknown operation '" + op + "'");
}

}  // namespace

json evaluate_operator(const std::string& metric, const std::string& op, const json& input) {
  if (!input.is_object()) parse_fail("input must be a JSON object");
  try {
    const ParsedMetric parsed = parse_metric(metric, input);
    json result = parsed.spd ? eval_spd(SpdMetricSpec{parsed.spec}, op, input)
                             : eval_cholesky(parsed.spec, op, input);
    return json{{"result", result}};
  } catch (const json::exception& e) {
    throw GeometryError(ErrorCode::ParseError, e.what());
  }
}

}  // namespace cholspace
