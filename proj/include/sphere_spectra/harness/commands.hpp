#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphere_spectra/harness/report.hpp"
#include "sphere_spectra/mesh.hpp"
#include "sphere_spectra/spectral.hpp"

namespace sphere_spectra::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFailed = 1,
  kExitUsage = 2,
  kExitMesh = 3,
  kExitSolver = 4,
  kExitOracleFailed = 5,
  kExitSchema = 6,
};

/// Maps a library exception to the documented exit code.
int exit_code_for(const std::exception& e);

// Surface construction -------------------------------------------------------

struct SurfaceSpec {
  std::string gen;        // clifford | flat-torus | sphere | equator (empty with mesh_path)
  std::string mesh_path;  // S3OFF input
  int res_u = 128;
  int res_v = 128;
  std::optional<double> r;  // flat-torus radius or geodesic-sphere polar radius
  int subdiv = 5;
};

std::string describe(const SurfaceSpec& spec);
SphericalTriMesh build_surface(const SurfaceSpec& spec);

// Surface verification -------------------------------------------------------

struct VerifyOptions {
  EigenOptions eigen;
  VerdictThresholds thresholds;
  std::vector<double> offsets;
  std::map<std::string, std::string> parameters;
};

/// Assembly, eigensolve, shape operator, optional offsets and every verdict.
VerificationReport verify_surface(const SphericalTriMesh& mesh, const std::string& source,
                                  const VerifyOptions& options);

/// Offsets of `mesh` at each t: embeddedness and discrete vs transported H.
std::vector<OffsetRow> offset_table(const SphericalTriMesh& mesh, const std::vector<double>& ts);

// Constants ------------------------------------------------------------------

struct ConstantsRequest {
  int n = 2;
  std::optional<double> lambda;
  std::optional<double> eps;
  std::optional<double> beta;
};

std::string constants_json(const ConstantsRequest& request);

// Radial oracles -------------------------------------------------------------

struct OracleRow {
  std::string identity;
  int n = 0;
  std::string label;
  double value = 0.0;
  std::string relation;  // "<=" for gaps and residuals, ">=" for slacks
  double threshold = 0.0;
  bool pass = false;
};

struct OracleOptions {
  std::vector<int> dims{2, 3, 4};
  std::vector<std::string> only;  // empty means every identity
  std::optional<double> tol;      // identity threshold; quadrature runs at tol / 100
};

const std::vector<std::string>& oracle_identities();
std::vector<OracleRow> run_oracles(const OracleOptions& options);

// Commands -------------------------------------------------------------------

int cmd_constants(const ConstantsRequest& request, const std::string& out_path,
                  std::ostream& out);

struct SurfaceCommand {
  SurfaceSpec surface;
  VerifyOptions verify;
  std::string out_path;
  std::string csv_path;
  std::string save_mesh_path;
};

int cmd_verify_surface(const SurfaceCommand& command, std::ostream& out, std::ostream& err);

struct OffsetsCommand {
  SurfaceSpec surface;
  std::vector<double> ts{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::string out_path;
  std::string csv_path;
};

int cmd_offsets(const OffsetsCommand& command, std::ostream& out, std::ostream& err);

int cmd_verify_oracles(const OracleOptions& options, const std::string& out_path,
                       std::ostream& out, std::ostream& err);

int cmd_report(const std::vector<std::string>& paths, const std::string& csv_path,
               const std::string& json_path, std::ostream& out, std::ostream& err);

}  // namespace sphere_spectra::harness
