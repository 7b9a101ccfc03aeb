// sphere-spectra: command-line front end.
//
//   sphere-spectra constants --dim 2 --lambda 1.41421356
//   sphere-spectra verify-surface --gen clifford --res 128 --out report.json
//   sphere-spectra offsets --gen clifford --t 0.1,0.2,0.3
//   sphere-spectra verify-oracles --dims 2,3,4 --only reilly
//   sphere-spectra report a.json b.json --csv merged.csv
//
// Every subcommand accepts --config FILE with "key = value" lines (keys are
// long flag names without dashes, '#' starts a comment); flags given on the
// command line win over the file.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/harness/commands.hpp"

namespace {

namespace h = sphere_spectra::harness;

std::string join(const std::vector<double>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

struct SurfaceFlags {
  std::string gen;
  std::string mesh;
  int res = 0;
  int res_u = 0;
  int res_v = 0;
  double r = 0.0;
  int subdiv = 5;

  void attach(CLI::App* app) {
    app->add_option("--gen", gen, "Generator: clifford, flat-torus, sphere, equator")
        ->check(CLI::IsMember({"clifford", "flat-torus", "sphere", "equator"}));
    app->add_option("--mesh", mesh, "S3OFF input file")->check(CLI::ExistingFile);
    app->add_option("--res", res, "Grid resolution per side for tori")->check(CLI::Range(8, 4096));
    app->add_option("--res-u", res_u, "Grid resolution along u")->check(CLI::Range(8, 4096));
    app->add_option("--res-v", res_v, "Grid resolution along v")->check(CLI::Range(8, 4096));
    app->add_option("--r", r, "Flat-torus radius or geodesic-sphere polar radius");
    app->add_option("--subdiv", subdiv, "Icosphere subdivision level")->check(CLI::Range(3, 9));
  }

  h::SurfaceSpec spec(const CLI::App* app) const {
    h::SurfaceSpec s;
    s.gen = gen;
    s.mesh_path = mesh;
    if (res > 0) s.res_u = s.res_v = res;
    if (res_u > 0) s.res_u = res_u;
    if (res_v > 0) s.res_v = res_v;
    if (app->count("--r") > 0) s.r = r;
    s.subdiv = subdiv;
    return s;
  }
};

bool on_command_line(int argc, char** argv, const std::string& flag) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Seed precedence: --seed flag, then SPHERE_SPECTRA_SEED, then config file.
std::uint64_t resolve_seed(bool flag_given, std::uint64_t value) {
  const char* env = std::getenv("SPHERE_SPECTRA_SEED");
  if (flag_given || env == nullptr || *env == '\0') return value;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw CLI::ValidationError("SPHERE_SPECTRA_SEED", "not an unsigned integer");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue bounds and verification suites for minimal surfaces in S^3"};
  app.set_version_flag("--version", std::string(h::tool_version()));
  app.require_subcommand(1);
  app.set_config("--config", "", "Key = value configuration file");
  app.get_config_formatter_base()->arrayDelimiter(',');

  // constants
  auto* constants = app.add_subcommand("constants", "Bound constants and the parameter chain");
  h::ConstantsRequest creq;
  double c_lambda = 0.0;
  double c_eps = 0.0;
  double c_beta = 0.0;
  std::string c_out;
  constants->add_option("--dim", creq.n, "Hypersurface dimension n")->check(CLI::Range(2, 1 << 20));
  auto* c_lambda_opt =
      constants->add_option("--lambda", c_lambda, "Lambda = max ||A||")->check(CLI::NonNegativeNumber);
  auto* c_eps_opt = constants->add_option("--eps", c_eps, "epsilon (default sqrt(n)/3)")
                        ->check(CLI::PositiveNumber);
  auto* c_beta_opt = constants->add_option("--beta", c_beta, "beta (default sqrt(n)/20)")
                         ->check(CLI::PositiveNumber);
  constants->add_option("--out", c_out, "Write JSON here");

  // verify-surface
  auto* verify = app.add_subcommand("verify-surface", "End-to-end verification of one surface");
  SurfaceFlags v_surface;
  v_surface.attach(verify);
  h::SurfaceCommand vcmd;
  std::uint64_t v_seed = sphere_spectra::kDefaultSeed;
  std::vector<double> v_offsets;
  verify->add_option("--tol", vcmd.verify.eigen.tol, "Eigen residual tolerance")
      ->check(CLI::Range(1e-12, 1e-2));
  verify->add_option("--max-iter", vcmd.verify.eigen.max_iter, "Outer eigen iterations")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", v_seed, "RNG seed");
  verify->add_option("--verdict-tol", vcmd.verify.thresholds.verdict_tol,
                     "Relative slack for discrete-vs-exact verdicts");
  verify->add_option("--offsets", v_offsets, "Comma-separated offset distances")->delimiter(',');
  verify->add_option("--out", vcmd.out_path, "Write the JSON report here");
  verify->add_option("--csv", vcmd.csv_path, "Write a one-row CSV here");
  verify->add_option("--save-mesh", vcmd.save_mesh_path, "Write the input mesh as S3OFF");

  // offsets
  auto* offsets = app.add_subcommand("offsets", "Embeddedness and mean curvature of offsets");
  SurfaceFlags o_surface;
  o_surface.attach(offsets);
  h::OffsetsCommand ocmd;
  std::vector<double> o_ts;
  offsets->add_option("--t", o_ts, "Comma-separated offset distances (default 0.1,...,0.8)")
      ->delimiter(',');
  offsets->add_option("--out", ocmd.out_path, "Write JSON here");
  offsets->add_option("--csv", ocmd.csv_path, "Write CSV here");

  // verify-oracles
  auto* oracles = app.add_subcommand("verify-oracles", "Radial identity and inequality checks");
  std::vector<int> o_dims{2, 3, 4};
  std::vector<std::string> o_only;
  double o_tol = 0.0;
  std::string o_out;
  oracles->add_option("--dims", o_dims, "Comma-separated dimensions n")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20));
  oracles->add_option("--only", o_only,
                      "Comma-separated subset of: reilly, bochner, interior-gradient, "
                      "boundary-layer, choi-wang, hemisphere-ode")
      ->delimiter(',');
  auto* o_tol_opt = oracles->add_option("--tol", o_tol, "Identity threshold (default 1e-8)")
                        ->check(CLI::Range(1e-14, 1e-2));
  oracles->add_option("--out", o_out, "Write JSON here");

  // report
  auto* report = app.add_subcommand("report", "Merge verification reports");
  std::vector<std::string> r_paths;
  std::string r_csv;
  std::string r_json;
  report->add_option("paths", r_paths, "Report JSON files")->check(CLI::ExistingFile);
  report->add_option("--csv", r_csv, "Write merged CSV here (default stdout)");
  report->add_option("--json", r_json, "Write merged JSON array here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kExitUsage;
  }

  try {
    if (*constants) {
      if (*c_lambda_opt) creq.lambda = c_lambda;
      if (*c_eps_opt) creq.eps = c_eps;
      if (*c_beta_opt) creq.beta = c_beta;
      return h::cmd_constants(creq, c_out, std::cout);
    }
    if (*verify) {
      vcmd.surface = v_surface.spec(verify);
      vcmd.verify.offsets = v_offsets;
      vcmd.verify.eigen.seed = resolve_seed(on_command_line(argc, argv, "--seed"), v_seed);
      vcmd.verify.parameters = {
          {"surface", h::describe(vcmd.surface)},
          {"tol", std::to_string(vcmd.verify.eigen.tol)},
          {"max_iter", std::to_string(vcmd.verify.eigen.max_iter)},
          {"seed", std::to_string(vcmd.verify.eigen.seed)},
          {"verdict_tol", std::to_string(vcmd.verify.thresholds.verdict_tol)},
          {"offsets", join(v_offsets)}};
      return h::cmd_verify_surface(vcmd, std::cout, std::cerr);
    }
    if (*offsets) {
      ocmd.surface = o_surface.spec(offsets);
      if (!o_ts.empty()) ocmd.ts = o_ts;
      return h::cmd_offsets(ocmd, std::cout, std::cerr);
    }
    if (*oracles) {
      h::OracleOptions opts;
      opts.dims = o_dims;
      opts.only = o_only;
      if (*o_tol_opt) opts.tol = o_tol;
      return h::cmd_verify_oracles(opts, o_out, std::cout, std::cerr);
    }
    if (*report) return h::cmd_report(r_paths, r_csv, r_json, std::cout, std::cerr);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return h::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return h::exit_code_for(e);
  }
  return h::kExitUsage;
}
