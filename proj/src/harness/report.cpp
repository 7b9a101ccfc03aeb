#include "sphere_spectra/harness/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra::harness {
namespace {

using nlohmann::json;

// JSON has no infinity; the horizon of a totally geodesic surface is one.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw SchemaError("report: expected a number, got '" + s + "'");
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number_from(j.at(key));
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

const std::vector<std::string>& verdict_names() {
  static const std::vector<std::string> names = {
      "lambda1_oracle", "choi_wang", "improved_bound", "yau_upper", "yang_yau",
      "simons",         "area_bound", "offsets_embedded", "offsets_mean_curvature"};
  return names;
}

Verdict make(const std::string& name, bool ok, std::string detail) {
  return {name, ok ? VerdictStatus::Pass : VerdictStatus::Fail, std::move(detail)};
}

Verdict skip(const std::string& name, std::string why) {
  return {name, VerdictStatus::Skipped, std::move(why)};
}

std::string describe(double lhs, const char* op, double rhs) {
  std::ostringstream out;
  out << std::setprecision(8) << lhs << ' ' << op << ' ' << rhs;
  return out.str();
}

}  // namespace

const char* tool_version() { return SPHERE_SPECTRA_VERSION; }

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::Skipped: return "skipped";
  }
  return "skipped";
}

VerdictStatus verdict_status_from_string(const std::string& text) {
  if (text == "pass") return VerdictStatus::Pass;
  if (text == "fail") return VerdictStatus::Fail;
  if (text == "skipped") return VerdictStatus::Skipped;
  throw SchemaError("report: unknown verdict status '" + text + "'");
}

const char* to_string(OffsetStatus status) {
  switch (status) {
    case OffsetStatus::Embedded: return "embedded";
    case OffsetStatus::SelfIntersecting: return "self-intersecting";
    case OffsetStatus::BeyondHorizon: return "beyond-horizon";
  }
  return "embedded";
}

OffsetStatus offset_status_from_string(const std::string& text) {
  if (text == "embedded") return OffsetStatus::Embedded;
  if (text == "self-intersecting") return OffsetStatus::SelfIntersecting;
  if (text == "beyond-horizon") return OffsetStatus::BeyondHorizon;
  throw SchemaError("report: unknown offset status '" + text + "'");
}

bool VerificationReport::is_minimal() const {
  const double tol = curvature_source == "analytic" ? thresholds.minimal_tol
                                                    : thresholds.discrete_minimal_tol;
  return max_abs_mean_curvature <= tol;
}

bool VerificationReport::is_mean_convex() const {
  const double tol = curvature_source == "analytic" ? thresholds.minimal_tol
                                                    : thresholds.discrete_minimal_tol;
  return min_mean_curvature >= -tol;
}

bool VerificationReport::all_pass() const {
  for (const Verdict& v : verdicts) {
    if (v.status == VerdictStatus::Fail) return false;
  }
  return true;
}

const Verdict* VerificationReport::find_verdict(const std::string& name) const {
  for (const Verdict& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::vector<Verdict> recompute_verdicts(const VerificationReport& r) {
  const VerdictThresholds& th = r.thresholds;
  const bool minimal = r.is_minimal();
  const double half_n = 0.5 * r.n;
  std::vector<Verdict> out;

  if (r.analytic_lambda1) {
    const double rel = std::abs(r.lambda1 - *r.analytic_lambda1) / *r.analytic_lambda1;
    out.push_back(make("lambda1_oracle", rel <= th.verdict_tol,
                       describe(rel, "<=", th.verdict_tol) + " relative"));
  } else {
    out.push_back(skip("lambda1_oracle", "no closed-form eigenvalue"));
  }

  if (minimal) {
    out.push_back(make("choi_wang", r.lambda1 >= half_n, describe(r.lambda1, ">=", half_n)));
    const bool chain = half_n < r.bound_value && r.bound_value <= r.lambda1 * (1.0 + th.verdict_tol);
    out.push_back(make("improved_bound", chain,
                       describe(r.bound_value, "<=", r.lambda1) + " with Lambda " +
                           format_number(r.bound_lambda)));
    out.push_back(make("yau_upper", r.lambda1 <= r.n * (1.0 + th.verdict_tol),
                       describe(r.lambda1, "<=", r.n)));
  } else {
    out.push_back(skip("choi_wang", "not minimal"));
    out.push_back(skip("improved_bound", "not minimal"));
    out.push_back(skip("yau_upper", "not minimal"));
  }

  const double yang_yau = 8.0 * std::numbers::pi * std::floor((r.genus + 3) / 2.0);
  const double product = r.lambda1 * r.area_discrete;
  out.push_back(make("yang_yau", product <= yang_yau * (1.0 + th.verdict_tol),
                     describe(product, "<=", yang_yau)));

  if (minimal) {
    out.push_back(make("simons", r.simons_integral >= th.simons_floor,
                       describe(r.simons_integral, ">=", th.simons_floor)));
  } else {
    out.push_back(skip("simons", "not minimal"));
  }

  if (!r.is_mean_convex()) {
    out.push_back(skip("area_bound", "not mean-convex"));
  } else if (!r.volume_bound) {
    out.push_back(skip("area_bound", "Lambda = 0"));
  } else {
    out.push_back(make("area_bound", r.area_discrete <= *r.volume_bound,
                       describe(r.area_discrete, "<=", *r.volume_bound)));
  }

  if (r.offsets.empty()) {
    out.push_back(skip("offsets_embedded", "no offsets requested"));
    out.push_back(skip("offsets_mean_curvature", "no offsets requested"));
  } else {
    int bad = 0;
    int worst_h = 0;
    double worst = 0.0;
    for (const OffsetRow& row : r.offsets) {
      if (row.status == OffsetStatus::BeyondHorizon) continue;
      if (row.status != OffsetStatus::Embedded) ++bad;
      if (row.h_error > th.offset_h_tol) ++worst_h;
      worst = std::max(worst, row.h_error);
    }
    out.push_back(make("offsets_embedded", bad == 0,
                       std::to_string(bad) + " offsets below the horizon intersect"));
    out.push_back(make("offsets_mean_curvature", worst_h == 0,
                       describe(worst, "<=", th.offset_h_tol) + " worst relative H error"));
  }
  return out;
}

std::string to_json(const VerificationReport& r, int indent) {
  json j;
  j["schema"] = r.schema;
  j["version"] = r.version;
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["surface"] = {{"source", r.source},     {"family", r.family},
                  {"n", r.n},               {"vertices", r.vertices},
                  {"triangles", r.triangles}, {"genus", r.genus}};
  j["spectrum"] = {{"lambda1", number(r.lambda1)},
                   {"residual", number(r.residual)},
                   {"iterations", r.iterations},
                   {"multiplicity", r.multiplicity},
                   {"analytic_lambda1", optional_number(r.analytic_lambda1)}};
  j["geometry"] = {{"lambda_discrete", number(r.lambda_discrete)},
                   {"lambda_analytic", optional_number(r.lambda_analytic)},
                   {"area_discrete", number(r.area_discrete)},
                   {"area_analytic", optional_number(r.area_analytic)},
                   {"simons_integral", number(r.simons_integral)},
                   {"max_abs_mean_curvature", number(r.max_abs_mean_curvature)},
                   {"min_mean_curvature", number(r.min_mean_curvature)},
                   {"curvature_source", r.curvature_source}};
  j["bound"] = {{"lambda", number(r.bound_lambda)},
                {"value", number(r.bound_value)},
                {"value_discrete", number(r.bound_value_discrete)}};
  j["volume"] = {{"tube_integral", optional_number(r.tube_integral)},
                 {"bound", optional_number(r.volume_bound)}};
  json rows = json::array();
  for (const OffsetRow& row : r.offsets) {
    rows.push_back({{"t", number(row.t)},
                    {"status", to_string(row.status)},
                    {"horizon", number(row.horizon)},
                    {"witnesses", row.witnesses},
                    {"h_min_discrete", number(row.h_min_discrete)},
                    {"h_max_discrete", number(row.h_max_discrete)},
                    {"h_min_analytic", number(row.h_min_analytic)},
                    {"h_max_analytic", number(row.h_max_analytic)},
                    {"h_error", number(row.h_error)}});
  }
  j["offsets"] = rows;
  const VerdictThresholds& th = r.thresholds;
  j["thresholds"] = {{"verdict_tol", th.verdict_tol},
                     {"minimal_tol", th.minimal_tol},
                     {"discrete_minimal_tol", th.discrete_minimal_tol},
                     {"simons_floor", th.simons_floor},
                     {"offset_h_tol", th.offset_h_tol},
                     {"totally_geodesic_lambda", th.totally_geodesic_lambda}};
  json verdicts = json::array();
  for (const Verdict& v : r.verdicts) {
    verdicts.push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  j["timing"] = r.timing;
  return j.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("report: not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_number_integer()) {
    throw SchemaError("report: missing integer 'schema' field");
  }
  const int schema = j.at("schema").get<int>();
  if (schema != kReportSchema) {
    throw SchemaError("report: schema " + std::to_string(schema) + " is not supported (expected " +
                      std::to_string(kReportSchema) + ")");
  }
  VerificationReport r;
  try {
    r.schema = schema;
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    const json& s = j.at("surface");
    r.source = s.at("source").get<std::string>();
    r.family = s.at("family").get<std::string>();
    r.n = s.at("n").get<int>();
    r.vertices = s.at("vertices").get<long>();
    r.triangles = s.at("triangles").get<long>();
    r.genus = s.at("genus").get<int>();
    const json& sp = j.at("spectrum");
    r.lambda1 = number_from(sp.at("lambda1"));
    r.residual = number_from(sp.at("residual"));
    r.iterations = sp.at("iterations").get<int>();
    r.multiplicity = sp.at("multiplicity").get<int>();
    r.analytic_lambda1 = optional_from(sp, "analytic_lambda1");
    const json& g = j.at("geometry");
    r.lambda_discrete = number_from(g.at("lambda_discrete"));
    r.lambda_analytic = optional_from(g, "lambda_analytic");
    r.area_discrete = number_from(g.at("area_discrete"));
    r.area_analytic = optional_from(g, "area_analytic");
    r.simons_integral = number_from(g.at("simons_integral"));
    r.max_abs_mean_curvature = number_from(g.at("max_abs_mean_curvature"));
    r.min_mean_curvature = number_from(g.at("min_mean_curvature"));
    r.curvature_source = g.at("curvature_source").get<std::string>();
    const json& b = j.at("bound");
    r.bound_lambda = number_from(b.at("lambda"));
    r.bound_value = number_from(b.at("value"));
    r.bound_value_discrete = number_from(b.at("value_discrete"));
    const json& v = j.at("volume");
    r.tube_integral = optional_from(v, "tube_integral");
    r.volume_bound = optional_from(v, "bound");
    for (const json& row : j.at("offsets")) {
      OffsetRow o;
      o.t = number_from(row.at("t"));
      o.status = offset_status_from_string(row.at("status").get<std::string>());
      o.horizon = number_from(row.at("horizon"));
      o.witnesses = row.at("witnesses").get<int>();
      o.h_min_discrete = number_from(row.at("h_min_discrete"));
      o.h_max_discrete = number_from(row.at("h_max_discrete"));
      o.h_min_analytic = number_from(row.at("h_min_analytic"));
      o.h_max_analytic = number_from(row.at("h_max_analytic"));
      o.h_error = number_from(row.at("h_error"));
      r.offsets.push_back(o);
    }
    const json& th = j.at("thresholds");
    r.thresholds.verdict_tol = th.at("verdict_tol").get<double>();
    r.thresholds.minimal_tol = th.at("minimal_tol").get<double>();
    r.thresholds.discrete_minimal_tol = th.at("discrete_minimal_tol").get<double>();
    r.thresholds.simons_floor = th.at("simons_floor").get<double>();
    r.thresholds.offset_h_tol = th.at("offset_h_tol").get<double>();
    r.thresholds.totally_geodesic_lambda = th.at("totally_geodesic_lambda").get<double>();
    for (const json& item : j.at("verdicts")) {
      r.verdicts.push_back({item.at("name").get<std::string>(),
                            verdict_status_from_string(item.at("status").get<std::string>()),
                            item.at("detail").get<std::string>()});
    }
    r.timing = j.at("timing").get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: malformed field: ") + e.what());
  }
  return r;
}

std::string csv_header() {
  std::string h =
      "source,family,n,vertices,triangles,genus,lambda1,residual,multiplicity,analytic_lambda1,"
      "lambda_discrete,lambda_analytic,area_discrete,area_analytic,simons_integral,"
      "bound_lambda,bound_value,bound_value_discrete,tube_integral,volume_bound";
  for (const std::string& name : verdict_names()) h += "," + name;
  return h;
}

std::string csv_row(const VerificationReport& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << quote(r.source) << ',' << quote(r.family) << ',' << r.n << ',' << r.vertices << ','
      << r.triangles << ',' << r.genus << ',' << format_number(r.lambda1) << ','
      << format_number(r.residual) << ',' << r.multiplicity << ','
      << format_optional(r.analytic_lambda1) << ',' << format_number(r.lambda_discrete) << ','
      << format_optional(r.lambda_analytic) << ',' << format_number(r.area_discrete) << ','
      << format_optional(r.area_analytic) << ',' << format_number(r.simons_integral) << ','
      << format_number(r.bound_lambda) << ',' << format_number(r.bound_value) << ','
      << format_number(r.bound_value_discrete) << ',' << format_optional(r.tube_integral) << ','
      << format_optional(r.volume_bound);
  for (const std::string& name : verdict_names()) {
    const Verdict* v = r.find_verdict(name);
    out << ',' << (v ? to_string(v->status) : "");
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigurationError("cannot open '" + tmp + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw ConfigurationError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ConfigurationError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sphere_spectra::harness
