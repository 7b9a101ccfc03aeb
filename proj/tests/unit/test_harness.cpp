#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <algorithm>
#include <sstream>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/harness/commands.hpp"
#include "sphere_spectra/harness/report.hpp"
#include "sphere_spectra/mesh.hpp"

using namespace sphere_spectra;
using namespace sphere_spectra::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "sphere_spectra_unit";
  fs::create_directories(dir);
  return dir;
}

VerificationReport small_report(const SphericalTriMesh& mesh, std::vector<double> offsets = {}) {
  VerifyOptions o;
  o.offsets = std::move(offsets);
  o.parameters["case"] = "unit";
  return verify_surface(mesh, "unit", o);
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("Clifford report: verdicts and round trip") {
  const VerificationReport r = small_report(gen_clifford_torus(48, 48), {0.3, 0.8});
  CHECK(r.all_pass());
  CHECK(r.is_minimal());
  CHECK(r.genus == 1);
  CHECK(r.lambda1 == doctest::Approx(2.0).epsilon(0.01));
  CHECK(r.bound_value == doctest::Approx(1.0000163).epsilon(1e-7));
  REQUIRE(r.offsets.size() == 2);
  CHECK(r.offsets[0].status == OffsetStatus::Embedded);
  CHECK(r.offsets[1].status == OffsetStatus::BeyondHorizon);
  CHECK(r.version == std::string(tool_version()));
  CHECK(r.parameters.at("case") == "unit");

  const VerificationReport back = report_from_json(to_json(r));
  CHECK(to_json(back) == to_json(r));
  CHECK(back.offsets == r.offsets);
  CHECK(back.verdicts == r.verdicts);
  CHECK(back.lambda1 == r.lambda1);
  CHECK(recompute_verdicts(back) == r.verdicts);
}

TEST_CASE("verdicts follow the stored numbers") {
  VerificationReport r = small_report(gen_clifford_torus(32, 32));
  r.lambda1 = 2.5;
  const auto v = recompute_verdicts(r);
  bool saw = false;
  for (const Verdict& x : v) {
    if (x.name == "lambda1_oracle") {
      CHECK(x.status == VerdictStatus::Fail);
      saw = true;
    }
  }
  CHECK(saw);
  r.simons_integral = -1.0;
  for (const Verdict& x : recompute_verdicts(r)) {
    if (x.name == "simons") CHECK(x.status == VerdictStatus::Fail);
  }
}

TEST_CASE("flat torus: not minimal, improved bound skipped, volume bound passes") {
  const VerificationReport r = small_report(gen_flat_torus(0.5, 48, 48));
  CHECK_FALSE(r.is_minimal());
  CHECK(r.is_mean_convex());
  REQUIRE(r.find_verdict("improved_bound"));
  CHECK(r.find_verdict("improved_bound")->status == VerdictStatus::Skipped);
  REQUIRE(r.find_verdict("area_bound"));
  CHECK(r.find_verdict("area_bound")->status == VerdictStatus::Pass);
  CHECK(r.lambda1 == doctest::Approx(4.0 / 3.0).epsilon(0.015));
}

TEST_CASE("equator: totally geodesic branch") {
  const VerificationReport r = small_report(gen_geodesic_sphere(M_PI / 2, 4));
  CHECK(r.bound_value == 2.0);
  CHECK(r.multiplicity == 3);
  CHECK(r.all_pass());
  CHECK(r.find_verdict("area_bound")->status == VerdictStatus::Skipped);
}

TEST_CASE("schema validation") {
  const std::string good = to_json(small_report(gen_clifford_torus(16, 16)));
  auto j = nlohmann::json::parse(good);
  j["schema"] = 2;
  CHECK_THROWS_AS(report_from_json(j.dump()), SchemaError);
  j.erase("schema");
  CHECK_THROWS_AS(report_from_json(j.dump()), SchemaError);
  CHECK_THROWS_AS(report_from_json("not json"), SchemaError);
  CHECK_THROWS_AS(report_from_json("[]"), SchemaError);
}

TEST_CASE("CSV rows line up with the header") {
  const VerificationReport r = small_report(gen_clifford_torus(16, 16));
  auto columns = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
  CHECK(columns(csv_header()) == columns(csv_row(r)));
}

TEST_CASE("report merging") {
  const fs::path dir = scratch_dir();
  std::vector<std::string> paths;
  int k = 0;
  for (const SphericalTriMesh& m : {gen_clifford_torus(16, 16), gen_flat_torus(0.4, 16, 16),
                                    gen_geodesic_sphere(M_PI / 2, 3)}) {
    const std::string p = (dir / ("r" + std::to_string(k++) + ".json")).string();
    write_file_atomic(p, to_json(small_report(m)));
    paths.push_back(p);
  }
  std::ostringstream out, err;
  CHECK(cmd_report(paths, "", "", out, err) == kExitOk);
  CHECK(count_lines(out.str()) == 4);

  std::ostringstream empty_out;
  CHECK(cmd_report({}, "", "", empty_out, err) == kExitOk);
  CHECK(empty_out.str() == csv_header() + "\n");

  auto j = nlohmann::json::parse(read_file(paths[1]));
  j["schema"] = 7;
  const std::string foreign = (dir / "foreign.json").string();
  write_file_atomic(foreign, j.dump());
  std::ostringstream mixed;
  CHECK(cmd_report({paths[0], foreign}, "", "", mixed, err) == kExitSchema);

  const std::string merged = (dir / "merged.json").string();
  std::ostringstream quiet;
  CHECK(cmd_report(paths, (dir / "merged.csv").string(), merged, quiet, err) == kExitOk);
  CHECK(nlohmann::json::parse(read_file(merged)).size() == 3);
}

TEST_CASE("atomic writes leave no temporary file") {
  const fs::path p = scratch_dir() / "atomic.txt";
  write_file_atomic(p.string(), "one");
  write_file_atomic(p.string(), "two");
  CHECK(read_file(p.string()) == "two");
  for (const auto& entry : fs::directory_iterator(p.parent_path())) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(MeshError("x")) == kExitMesh);
  CHECK(exit_code_for(MeshQualityError("x", 3)) == kExitMesh);
  CHECK(exit_code_for(ConvergenceError("x", 1.0, 2.0, {})) == kExitSolver);
  CHECK(exit_code_for(SchemaError("x")) == kExitSchema);
}

TEST_CASE("constants JSON") {
  const auto j = nlohmann::json::parse(constants_json({2, std::sqrt(2.0), std::nullopt, std::nullopt}));
  CHECK(j["bound"].get<double>() == doctest::Approx(1.0000163).epsilon(1e-7));
  CHECK(j["a_n"].get<double>() >= j["a_n_floor"].get<double>());
  CHECK(j["b_n"].get<double>() <= j["b_n_ceiling"].get<double>());
  const auto g = nlohmann::json::parse(constants_json({3, 1.2, std::nullopt, std::nullopt}));
  CHECK(g["bound"].get<double>() == 3.0);
  std::ostringstream out;
  CHECK(cmd_constants({2, std::nullopt, std::nullopt, std::nullopt}, "", out) == kExitOk);
  CHECK(out.str().find("a_n") != std::string::npos);
}

TEST_CASE("oracle table") {
  const auto rows = run_oracles({});
  CHECK(rows.size() > 50);
  for (const OracleRow& r : rows) CHECK_MESSAGE(r.pass, r.identity << " " << r.label);

  OracleOptions only;
  only.only = {"reilly"};
  for (const OracleRow& r : run_oracles(only)) CHECK(r.identity == "reilly");

  OracleOptions loose;
  loose.tol = 1e-6;
  for (const OracleRow& r : run_oracles(loose)) CHECK(r.pass);

  OracleOptions bad;
  bad.only = {"nonsense"};
  CHECK_THROWS(run_oracles(bad));
}

TEST_CASE("surface specs") {
  SurfaceSpec s;
  s.gen = "flat-torus";
  s.res_u = s.res_v = 16;
  CHECK(build_surface(s).analytic()->family == "flat-torus");
  s.gen = "sphere";
  s.subdiv = 3;
  CHECK(build_surface(s).analytic()->family == "geodesic-sphere");
  s.gen = "";
  CHECK_THROWS(build_surface(s));
  s.mesh_path = "/nonexistent/path.s3off";
  CHECK_THROWS_AS(build_surface(s), MeshError);
}
