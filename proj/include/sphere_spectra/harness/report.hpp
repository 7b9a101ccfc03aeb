#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sphere_spectra::harness {

inline constexpr int kReportSchema = 1;

const char* tool_version();

enum class VerdictStatus { Pass, Fail, Skipped };

const char* to_string(VerdictStatus status);
VerdictStatus verdict_status_from_string(const std::string& text);

struct Verdict {
  std::string name;
  VerdictStatus status = VerdictStatus::Skipped;
  std::string detail;

  bool operator==(const Verdict&) const = default;
};

enum class OffsetStatus { Embedded, SelfIntersecting, BeyondHorizon };

const char* to_string(OffsetStatus status);
OffsetStatus offset_status_from_string(const std::string& text);

struct OffsetRow {
  double t = 0.0;
  OffsetStatus status = OffsetStatus::Embedded;
  double horizon = 0.0;
  int witnesses = 0;
  double h_min_discrete = 0.0;
  double h_max_discrete = 0.0;
  double h_min_analytic = 0.0;
  double h_max_analytic = 0.0;
  double h_error = 0.0;  // |h_min_discrete - h_min_analytic| / |h_min_analytic| (absolute near 0)

  bool operator==(const OffsetRow&) const = default;
};

/// Thresholds every verdict is evaluated against; stored with the report.
struct VerdictThresholds {
  double verdict_tol = 0.01;        // relative slack for discrete-vs-exact comparisons
  double minimal_tol = 1e-9;        // |H| below this counts as minimal (analytic H)
  double discrete_minimal_tol = 0.05;  // same, when only discrete H is known
  double simons_floor = -0.05;
  double offset_h_tol = 0.05;
  double totally_geodesic_lambda = 0.05;

  bool operator==(const VerdictThresholds&) const = default;
};

struct VerificationReport {
  int schema = kReportSchema;
  std::string version;
  std::string command = "verify-surface";
  std::map<std::string, std::string> parameters;

  // Surface.
  std::string source;
  std::string family;
  int n = 2;
  long vertices = 0;
  long triangles = 0;
  int genus = 0;

  // Spectrum.
  double lambda1 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int multiplicity = 0;
  std::optional<double> analytic_lambda1;

  // Extrinsic geometry.
  double lambda_discrete = 0.0;
  std::optional<double> lambda_analytic;
  double area_discrete = 0.0;
  std::optional<double> area_analytic;
  double simons_integral = 0.0;
  double max_abs_mean_curvature = 0.0;  // analytic when available
  double min_mean_curvature = 0.0;      // analytic when available
  std::string curvature_source;         // "analytic" or "discrete"

  // Improved bound n/2 + a_n / (Lambda^6 + b_n).
  double bound_lambda = 0.0;
  double bound_value = 0.0;
  double bound_value_discrete = 0.0;

  // Volume bound Vol(S^3) / (2 I_Lambda).
  std::optional<double> tube_integral;
  std::optional<double> volume_bound;

  std::vector<OffsetRow> offsets;
  VerdictThresholds thresholds;
  std::vector<Verdict> verdicts;
  std::map<std::string, double> timing;

  bool is_minimal() const;
  bool is_mean_convex() const;
  bool all_pass() const;
  const Verdict* find_verdict(const std::string& name) const;
};

/// Recomputes every verdict from the raw numbers in `report`.
std::vector<Verdict> recompute_verdicts(const VerificationReport& report);

std::string to_json(const VerificationReport& report, int indent = 2);
/// Throws SchemaError on a missing or foreign schema field.
VerificationReport report_from_json(const std::string& text);

std::string csv_header();
std::string csv_row(const VerificationReport& report);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace sphere_spectra::harness
