#include "hcube/io.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "hcube/error.hpp"

namespace hcube {

namespace {

using Json = nlohmann::ordered_json;

void emit_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

// nlohmann prints the shortest round-trip form; machine output wants a
// fixed 17 significant digits, so the tree is walked here instead.
void emit(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        emit_string(out, key);
        out += ':';
        emit(out, value);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(out, j[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v, kMachineDigits) : "null";
      break;
    }
    case Json::value_t::string: emit_string(out, j.get<std::string>()); break;
    default: out += j.dump();
  }
}

std::string to_text(const Json& j) {
  std::string out;
  emit(out, j);
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double real_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Json report_object(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["eps"] = r.eps;
  j["q"] = r.q ? Json(*r.q) : Json(nullptr);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["pass"] = r.pass;
  if (!r.extras.empty()) {
    Json extras = Json::object();
    for (const auto& [key, value] : r.extras) extras[key] = value;
    j["extras"] = extras;
  }
  return j;
}

Json profile_object(const RadialProfile& p) {
  Json spheres = Json::array();
  for (const SphereTerm& s : p.spheres) {
    Json t;
    t["radius_fraction"] = p.n > 0 ? static_cast<double>(s.radius) / p.n : 0.0;
    t["log2_value_per_n"] = p.n > 0 ? s.log2_height / p.n : 0.0;
    spheres.push_back(t);
  }
  Json j;
  j["spheres"] = spheres;
  j["uniform_mass"] = p.uniform;
  return j;
}

std::string csv_number(double v) { return format_number(v, kMachineDigits); }

}  // namespace

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

CubeFunction parse_cube_function(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
  const int n = int_field(j, "n");
  if (j.contains("kind")) {
    const Json& kind = j.at("kind");
    if (!kind.is_string()) throw Error(ErrorCode::ParseError, "field 'kind' must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "sphere") return sphere_indicator(n, int_field(j, "r"));
    if (k == "ball") return ball_indicator(n, int_field(j, "r"));
    if (k == "mixture") return sphere_mixture(n, int_field(j, "r"), real_field(j, "v"));
    if (k == "constant") return CubeFunction::constant(n, j.contains("v") ? real_field(j, "v") : 1.0);
    throw Error(ErrorCode::ParseError, "unknown generator kind '" + k + "'");
  }
  const Json& values = field(j, "values");
  if (!values.is_array()) throw Error(ErrorCode::ParseError, "field 'values' must be an array");
  std::vector<double> v;
  v.reserve(values.size());
  for (const Json& x : values) {
    if (!x.is_number()) throw Error(ErrorCode::ParseError, "values must be numbers");
    v.push_back(x.get<double>());
  }
  return make_function(n, std::move(v));
}

std::string cube_function_json(const CubeFunction& f) {
  Json j;
  j["n"] = f.dim();
  j["values"] = Json(std::vector<double>(f.values().begin(), f.values().end()));
  return to_text(j);
}

std::string check_report_json(const CheckReport& r) { return to_text(report_object(r)); }

std::string check_report_csv_header() { return "name,n,eps,q,lhs,rhs,slack,pass"; }

std::string check_report_csv_row(const CheckReport& r) {
  std::ostringstream os;
  os << r.name << ',' << r.n << ',' << csv_number(r.eps) << ',' << (r.q ? csv_number(*r.q) : "") << ','
     << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << csv_number(r.slack) << ','
     << (r.pass ? "true" : "false");
  return os.str();
}

std::string profile_json(const RadialProfile& p) { return to_text(profile_object(p)); }

RadialProfile parse_profile(std::string_view text, int n) {
  const Json j = parse_json(text);
  if (n < 1) throw Error(ErrorCode::ParseError, "profile dimension must be positive");
  RadialProfile p;
  p.n = n;
  p.uniform = real_field(j, "uniform_mass");
  const Json& spheres = field(j, "spheres");
  if (!spheres.is_array()) throw Error(ErrorCode::ParseError, "field 'spheres' must be an array");
  for (const Json& s : spheres) {
    const double rho = real_field(s, "radius_fraction");
    const double r = std::round(rho * n);
    if (std::fabs(r - rho * n) > 1e-9 * n) {
      throw Error(ErrorCode::ParseError, "radius_fraction does not give an integer radius at this n");
    }
    p.spheres.push_back({static_cast<int>(r), real_field(s, "log2_value_per_n") * n});
  }
  return p;
}

std::string tightness_json(const TightnessInstance& t) {
  Json j;
  j["kind"] = to_string(t.kind);
  j["q"] = t.q;
  j["eps"] = t.eps;
  j["x"] = t.x;
  j["n"] = t.n;
  j["rate"] = t.rate;
  j["lhs"] = t.lhs;
  j["rhs"] = t.rhs;
  j["slack"] = t.slack;
  j["delta"] = t.delta;
  if (t.kind == TightnessKind::Nhc) {
    j["kappa"] = t.kappa;
    j["kappa_achieved"] = t.kappa_achieved;
  }
  j["profile"] = profile_object(t.profile);
  if (t.function) {
    j["function"] = Json::object();
    j["function"]["n"] = t.function->dim();
    j["function"]["values"] = Json(std::vector<double>(t.function->values().begin(), t.function->values().end()));
  }
  return to_text(j);
}

std::string suite_report_json(const SuiteReport& r) {
  const SuiteConfig& c = r.config;
  Json config;
  config["seed"] = c.seed;
  config["n_range"] = c.n_range;
  config["eps_grid"] = c.eps_grid;
  config["q_grid"] = c.q_grid;
  config["samples_per_cell"] = c.samples_per_cell;
  Json models = Json::array();
  for (FunctionModel m : c.models) models.push_back(to_string(m));
  config["function_models"] = models;
  config["trend_n"] = c.trend_n;
  config["eigen_n"] = c.eigen_n;

  Json checks = Json::array();
  for (const CheckSummary& s : r.checks) {
    Json j;
    j["name"] = s.name;
    j["total"] = s.total;
    j["passed"] = s.passed;
    j["min_slack"] = s.min_slack;
    if (s.total > 0) {
      Json w;
      w["model"] = to_string(s.argmin.model);
      w["n"] = s.argmin.n;
      w["eps"] = s.argmin.eps;
      w["q"] = s.argmin.q;
      w["sample_seed"] = s.argmin.sample_seed;
      w["values"] = s.argmin.values;
      j["argmin"] = w;
    }
    checks.push_back(j);
  }

  Json tightness = Json::array();
  for (const TightnessRow& t : r.tightness_trend) {
    Json j;
    j["kind"] = to_string(t.kind);
    j["q"] = t.q;
    j["eps"] = t.eps;
    j["x"] = t.x;
    j["n"] = t.n;
    j["rate"] = t.rate;
    j["lhs"] = t.lhs;
    j["rhs"] = t.rhs;
    j["slack"] = t.slack;
    tightness.push_back(j);
  }
  Json eigen = Json::array();
  for (const EigenRow& e : r.eigen_trend) {
    Json j;
    j["n"] = e.n;
    j["radius"] = e.radius;
    j["lambda"] = e.lambda;
    j["bound"] = e.bound;
    j["tightness"] = e.tightness;
    j["pass"] = e.pass;
    eigen.push_back(j);
  }

  Json j;
  j["config"] = config;
  j["passed"] = r.passed;
  j["checks"] = checks;
  j["trends"] = Json::object();
  j["trends"]["tightness"] = tightness;
  j["trends"]["eigen"] = eigen;
  return to_text(j);
}

std::string trend_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "series,n,radius,q,eps,x,rate,lhs,rhs,slack,tightness\n";
  for (const TightnessRow& t : r.tightness_trend) {
    os << to_string(t.kind) << ',' << t.n << ",," << csv_number(t.q) << ',' << csv_number(t.eps) << ','
       << csv_number(t.x) << ',' << csv_number(t.rate) << ',' << csv_number(t.lhs) << ',' << csv_number(t.rhs)
       << ',' << csv_number(t.slack) << ",\n";
  }
  for (const EigenRow& e : r.eigen_trend) {
    os << "eigen_ball," << e.n << ',' << e.radius << ",,,,," << csv_number(e.lambda) << ','
       << csv_number(e.bound) << ',' << csv_number(e.bound - e.lambda) << ',' << csv_number(e.tightness)
       << '\n';
  }
  return os.str();
}

}  // namespace hcube
