#include "sphere_spectra/harness/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sphere_spectra/constants.hpp"
#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/intersection.hpp"
#include "sphere_spectra/laplacian.hpp"
#include "sphere_spectra/radial_oracles.hpp"
#include "sphere_spectra/shape_operator.hpp"

namespace sphere_spectra::harness {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Lambda fed to the bound when only a discrete estimate exists. A minimal
// surface with Lambda < sqrt(n) is totally geodesic, so a discrete value
// that is clearly nonzero but dips below sqrt(n) is discretization noise.
double bound_lambda_from_discrete(double lambda_discrete, double totally_geodesic_lambda, int n) {
  if (lambda_discrete <= totally_geodesic_lambda) return 0.0;
  return std::max(lambda_discrete, std::sqrt(static_cast<double>(n)));
}

std::string join(const std::vector<double>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

bool wanted(const OracleOptions& options, const std::string& identity) {
  return options.only.empty() ||
         std::find(options.only.begin(), options.only.end(), identity) != options.only.end();
}

OracleRow at_most(std::string identity, int n, std::string label, double value, double threshold) {
  return {std::move(identity), n, std::move(label), value, "<=", threshold,
          std::isfinite(value) && value <= threshold};
}

OracleRow at_least(std::string identity, int n, std::string label, double value,
                   double threshold) {
  return {std::move(identity), n, std::move(label), value, ">=", threshold,
          std::isfinite(value) && value >= threshold};
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

RadialProfile cosine_profile() {
  RadialProfile p;
  p.name = "cos";
  p.f = [](double r) { return std::cos(r); };
  p.df = [](double r) { return -std::sin(r); };
  p.d2f = [](double r) { return -std::cos(r); };
  p.d3f = [](double r) { return std::sin(r); };
  p.domain = RadialDomain::Hemisphere;
  return p;
}

void print_offset_rows(const std::vector<OffsetRow>& rows, std::ostream& out) {
  out << std::left << std::setw(8) << "t" << std::setw(20) << "status" << std::setw(10)
      << "witness" << std::setw(14) << "H_min" << std::setw(14) << "H_max" << std::setw(14)
      << "H_exact_min" << "rel_err\n";
  for (const OffsetRow& row : rows) {
    out << std::left << std::setw(8) << fmt(row.t, 4);
    if (row.status == OffsetStatus::BeyondHorizon) {
      out << "beyond T_Sigma = " << fmt(row.horizon, 8) << '\n';
      continue;
    }
    out << std::setw(20) << to_string(row.status) << std::setw(10) << row.witnesses
        << std::setw(14) << fmt(row.h_min_discrete) << std::setw(14) << fmt(row.h_max_discrete)
        << std::setw(14) << fmt(row.h_min_analytic) << fmt(row.h_error, 3) << '\n';
  }
}

std::string offsets_csv(const std::vector<OffsetRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "t,status,horizon,witnesses,h_min_discrete,h_max_discrete,h_min_analytic,"
         "h_max_analytic,h_error\n";
  for (const OffsetRow& r : rows) {
    out << r.t << ',' << to_string(r.status) << ',' << r.horizon << ',' << r.witnesses << ','
        << r.h_min_discrete << ',' << r.h_max_discrete << ',' << r.h_min_analytic << ','
        << r.h_max_analytic << ',' << r.h_error << '\n';
  }
  return out.str();
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return kExitSchema;
  if (dynamic_cast<const MeshError*>(&e)) return kExitMesh;
  if (dynamic_cast<const NumericError*>(&e)) return kExitSolver;
  if (dynamic_cast<const SingularityError*>(&e)) return kExitUsage;
  if (dynamic_cast<const Error*>(&e)) return kExitUsage;
  return kExitUsage;
}

std::string describe(const SurfaceSpec& spec) {
  if (!spec.mesh_path.empty()) return spec.mesh_path;
  std::ostringstream out;
  out << spec.gen;
  if (spec.gen == "clifford" || spec.gen == "flat-torus") {
    out << ' ' << spec.res_u << 'x' << spec.res_v;
  } else {
    out << " subdiv " << spec.subdiv;
  }
  if (spec.r) out << " r=" << std::setprecision(10) << *spec.r;
  return out.str();
}

SphericalTriMesh build_surface(const SurfaceSpec& spec) {
  if (!spec.mesh_path.empty()) {
    if (!spec.gen.empty()) throw ConfigurationError("give either --gen or --mesh, not both");
    return read_s3off_file(spec.mesh_path);
  }
  if (spec.gen == "clifford") return gen_clifford_torus(spec.res_u, spec.res_v);
  if (spec.gen == "flat-torus") return gen_flat_torus(spec.r.value_or(0.5), spec.res_u, spec.res_v);
  if (spec.gen == "sphere") return gen_geodesic_sphere(spec.r.value_or(kHalfPi / 2.0), spec.subdiv);
  if (spec.gen == "equator") return gen_geodesic_sphere(kHalfPi, spec.subdiv);
  if (spec.gen.empty()) throw ConfigurationError("no surface given: use --gen or --mesh");
  throw ConfigurationError("unknown generator '" + spec.gen +
                           "' (expected clifford, flat-torus, sphere or equator)");
}

std::vector<OffsetRow> offset_table(const SphericalTriMesh& mesh, const std::vector<double>& ts) {
  const double horizon = mesh_horizon(mesh);
  std::vector<OffsetRow> rows;
  for (double t : ts) {
    OffsetRow row;
    row.t = t;
    row.horizon = horizon;
    if (std::abs(t) >= horizon) {
      row.status = OffsetStatus::BeyondHorizon;
      rows.push_back(row);
      continue;
    }
    const SphericalTriMesh moved = offset_mesh(mesh, t);
    const DiscreteGeometry geom = discrete_shape_operator(moved);
    row.h_min_discrete = geom.mean_curvature.minCoeff();
    row.h_max_discrete = geom.mean_curvature.maxCoeff();
    if (moved.analytic()) {
      row.h_min_analytic = moved.analytic()->min_mean_curvature();
      row.h_max_analytic = moved.analytic()->max_mean_curvature();
      const double diff = std::abs(row.h_min_discrete - row.h_min_analytic);
      row.h_error = std::abs(row.h_min_analytic) > 1e-6 ? diff / std::abs(row.h_min_analytic) : diff;
    } else {
      row.h_min_analytic = std::numeric_limits<double>::quiet_NaN();
      row.h_max_analytic = std::numeric_limits<double>::quiet_NaN();
    }
    const IntersectionResult hit = self_intersection_test(moved);
    row.status = hit.embedded ? OffsetStatus::Embedded : OffsetStatus::SelfIntersecting;
    row.witnesses = static_cast<int>(hit.witnesses.size());
    rows.push_back(row);
  }
  return rows;
}

VerificationReport verify_surface(const SphericalTriMesh& mesh, const std::string& source,
                                  const VerifyOptions& options) {
  const auto start = Clock::now();
  VerificationReport r;
  r.version = tool_version();
  r.parameters = options.parameters;
  r.thresholds = options.thresholds;
  r.source = source;

  const MeshTopology topo = validate_mesh(mesh);
  r.vertices = static_cast<long>(topo.vertices);
  r.triangles = static_cast<long>(topo.faces);
  r.genus = topo.genus;

  auto t0 = Clock::now();
  const LaplacePair pair = assemble_laplacian(mesh);
  r.timing["assembly"] = seconds_since(t0);

  t0 = Clock::now();
  const EigenResult eig = smallest_nonzero_eig(pair, options.eigen);
  r.timing["eigensolve"] = seconds_since(t0);
  r.lambda1 = eig.lambda1;
  r.residual = eig.residual;
  r.iterations = eig.iterations;
  r.multiplicity = eig.multiplicity;

  t0 = Clock::now();
  const DiscreteGeometry geom = discrete_shape_operator(mesh);
  r.timing["shape_operator"] = seconds_since(t0);
  r.lambda_discrete = geom.lambda;
  r.area_discrete = geom.total_area;
  r.simons_integral = geom.simons_integral();

  const double tg = options.thresholds.totally_geodesic_lambda;
  double volume_lambda = geom.lambda;
  if (const auto& an = mesh.analytic()) {
    r.family = an->family;
    r.analytic_lambda1 = an->lambda1;
    r.lambda_analytic = an->lambda_max();
    r.area_analytic = an->area;
    r.max_abs_mean_curvature = an->max_abs_mean_curvature();
    r.min_mean_curvature = an->min_mean_curvature();
    r.curvature_source = "analytic";
    r.bound_lambda = *r.lambda_analytic;
    volume_lambda = *r.lambda_analytic;
  } else {
    r.family = "mesh";
    r.max_abs_mean_curvature = geom.mean_curvature.cwiseAbs().maxCoeff();
    r.min_mean_curvature = geom.mean_curvature.minCoeff();
    r.curvature_source = "discrete";
    r.bound_lambda = bound_lambda_from_discrete(geom.lambda, tg, r.n);
    if (volume_lambda <= tg) volume_lambda = 0.0;
  }
  r.bound_value = eigenvalue_lower_bound(r.n, r.bound_lambda);
  r.bound_value_discrete =
      eigenvalue_lower_bound(r.n, bound_lambda_from_discrete(geom.lambda, tg, r.n));

  if (volume_lambda > 0.0) {
    const VolumeBound vb = volume_upper_bound(r.n, volume_lambda);
    r.tube_integral = vb.tube_integral;
    r.volume_bound = vb.sharp;
  }

  if (!options.offsets.empty()) {
    t0 = Clock::now();
    r.offsets = offset_table(mesh, options.offsets);
    r.timing["offsets"] = seconds_since(t0);
  }

  r.verdicts = recompute_verdicts(r);
  r.timing["total"] = seconds_since(start);
  return r;
}

std::string constants_json(const ConstantsRequest& q) {
  const BoundConstants bc = compute_bound_constants(q.n);
  json j;
  j["schema"] = kReportSchema;
  j["version"] = tool_version();
  j["command"] = "constants";
  j["n"] = q.n;
  j["arctan_cubed_factor"] = arctan_cubed_factor(q.n);
  j["a_n"] = bc.a;
  j["a_n_floor"] = a_floor(q.n);
  j["b_n"] = bc.b;
  j["b_n_ceiling"] = b_ceiling(q.n);
  j["c_n"] = bc.c;
  j["c_n_ceiling"] = 25.0 / 3.0 * std::pow(1.25, q.n - 2);
  if (q.lambda) {
    const double lam = *q.lambda;
    j["lambda"] = lam;
    j["branch"] = is_totally_geodesic_branch(q.n, lam) ? "totally-geodesic" : "improved";
    j["bound"] = eigenvalue_lower_bound(q.n, lam);
    if (lam > 0.0) {
      const double eps = q.eps.value_or(default_eps(q.n));
      const double beta = q.beta.value_or(default_beta(q.n));
      if (eps <= 0.5 * lam || q.eps) {
        const ParameterChain c = build_parameter_chain(q.n, lam, eps, beta);
        j["chain"] = {{"eps", c.eps},
                      {"beta", c.beta},
                      {"eps_tilde", c.eps_tilde},
                      {"gamma", c.gamma},
                      {"delta", c.delta},
                      {"T", c.shell_width},
                      {"D_eps", c.d_eps},
                      {"a", c.a},
                      {"b", c.b},
                      {"valid", c.valid}};
      } else {
        j["chain"] = nullptr;
      }
      const VolumeBound vb = volume_upper_bound(q.n, lam);
      j["tube_integral"] = vb.tube_integral;
      j["volume_bound"] = vb.sharp;
      j["volume_bound_crude"] = vb.crude ? json(*vb.crude) : json(nullptr);
    }
  }
  return j.dump(2);
}

int cmd_constants(const ConstantsRequest& q, const std::string& out_path, std::ostream& out) {
  const json j = json::parse(constants_json(q));
  auto row = [&out](const std::string& name, double v, const std::string& note = "") {
    out << std::left << std::setw(22) << name << std::setw(22) << fmt(v, 10) << note << '\n';
  };
  out << "n = " << q.n << '\n';
  row("n^1.5 atan^3", j["arctan_cubed_factor"], "window [0.035, 0.0370370]");
  row("a_n", j["a_n"], "floor (n-1)n^2/32000 = " + fmt(j["a_n_floor"].get<double>(), 10));
  row("b_n", j["b_n"], "ceiling 5n^2/216 = " + fmt(j["b_n_ceiling"].get<double>(), 10));
  row("c_n", j["c_n"]);
  if (q.lambda) {
    out << "Lambda = " << fmt(*q.lambda, 10) << " (" << j["branch"].get<std::string>()
        << " branch)\n";
    row("bound", j["bound"], "n/2 + a_n/(Lambda^6 + b_n), or n below sqrt(n)");
    if (j.contains("chain") && !j["chain"].is_null()) {
      const json& c = j["chain"];
      for (const char* key : {"eps", "beta", "eps_tilde", "gamma", "delta", "T", "D_eps", "a", "b"}) {
        row(std::string("  ") + key, c[key]);
      }
      out << "  chain " << (c["valid"].get<bool>() ? "valid" : "degenerate (gamma <= 0)") << '\n';
    } else if (j.contains("chain")) {
      out << "  chain not admissible: default eps exceeds Lambda/2\n";
    }
    if (j.contains("tube_integral")) {
      row("I_Lambda", j["tube_integral"]);
      row("volume bound", j["volume_bound"], "Vol(S^{n+1}) / (2 I_Lambda)");
    }
  }
  if (!out_path.empty()) write_file_atomic(out_path, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify_surface(const SurfaceCommand& c, std::ostream& out, std::ostream& err) {
  SphericalTriMesh mesh;
  try {
    mesh = build_surface(c.surface);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (!c.save_mesh_path.empty()) write_s3off_file(c.save_mesh_path, mesh);

  VerificationReport report;
  try {
    report = verify_surface(mesh, describe(c.surface), c.verify);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  out << "surface        " << report.source << " (" << report.family << ", V=" << report.vertices
      << ", F=" << report.triangles << ", genus " << report.genus << ")\n";
  out << "lambda1        " << fmt(report.lambda1, 10) << "  residual " << fmt(report.residual, 3)
      << "  multiplicity " << report.multiplicity;
  if (report.analytic_lambda1) out << "  exact " << fmt(*report.analytic_lambda1, 10);
  out << '\n';
  out << "Lambda         discrete " << fmt(report.lambda_discrete, 8);
  if (report.lambda_analytic) out << "  analytic " << fmt(*report.lambda_analytic, 8);
  out << '\n';
  out << "area           " << fmt(report.area_discrete, 8) << "  lambda1*area "
      << fmt(report.lambda1 * report.area_discrete, 8) << '\n';
  out << "classification " << (report.is_minimal() ? "minimal" : "not minimal") << ", "
      << (report.is_mean_convex() ? "mean-convex" : "not mean-convex") << '\n';
  out << "bound          " << fmt(report.bound_value, 10) << " (Lambda " << fmt(report.bound_lambda, 8)
      << "), discrete-Lambda bound " << fmt(report.bound_value_discrete, 10) << '\n';
  out << "Simons         " << fmt(report.simons_integral, 6) << '\n';
  if (!report.offsets.empty()) print_offset_rows(report.offsets, out);
  for (const Verdict& v : report.verdicts) {
    out << "  " << std::left << std::setw(24) << v.name << std::setw(9) << to_string(v.status)
        << v.detail << '\n';
  }

  const std::string text = to_json(report) + "\n";
  if (!c.out_path.empty()) write_file_atomic(c.out_path, text);
  if (!c.csv_path.empty()) {
    write_file_atomic(c.csv_path, csv_header() + "\n" + csv_row(report) + "\n");
  }
  return report.all_pass() ? kExitOk : kExitVerdictFailed;
}

int cmd_offsets(const OffsetsCommand& c, std::ostream& out, std::ostream& err) {
  std::vector<OffsetRow> rows;
  double horizon = 0.0;
  try {
    const SphericalTriMesh mesh = build_surface(c.surface);
    horizon = mesh_horizon(mesh);
    rows = offset_table(mesh, c.ts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  out << "surface " << describe(c.surface) << ", T_Sigma = " << fmt(horizon, 10) << '\n';
  print_offset_rows(rows, out);

  if (!c.out_path.empty()) {
    json j;
    j["schema"] = kReportSchema;
    j["version"] = tool_version();
    j["command"] = "offsets";
    j["surface"] = describe(c.surface);
    j["horizon"] = std::isfinite(horizon) ? json(horizon) : json("inf");
    j["t"] = join(c.ts);
    json list = json::array();
    for (const OffsetRow& r : rows) {
      list.push_back({{"t", r.t},
                      {"status", to_string(r.status)},
                      {"witnesses", r.witnesses},
                      {"h_min_discrete", r.h_min_discrete},
                      {"h_max_discrete", r.h_max_discrete},
                      {"h_min_analytic", std::isfinite(r.h_min_analytic) ? json(r.h_min_analytic) : json(nullptr)},
                      {"h_error", r.h_error}});
    }
    j["rows"] = list;
    write_file_atomic(c.out_path, j.dump(2) + "\n");
  }
  if (!c.csv_path.empty()) write_file_atomic(c.csv_path, offsets_csv(rows));

  for (const OffsetRow& r : rows) {
    if (r.status == OffsetStatus::SelfIntersecting) return kExitVerdictFailed;
  }
  return kExitOk;
}

const std::vector<std::string>& oracle_identities() {
  static const std::vector<std::string> ids = {"reilly",         "bochner",   "interior-gradient",
                                               "boundary-layer", "choi-wang", "hemisphere-ode"};
  return ids;
}

std::vector<OracleRow> run_oracles(const OracleOptions& options) {
  for (const std::string& id : options.only) {
    const auto& ids = oracle_identities();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      throw ConfigurationError("unknown identity '" + id + "'");
    }
  }
  const double identity_tol = options.tol.value_or(1e-8);
  const double quad_tol = std::min(1e-10, identity_tol * 1e-2);
  const double bochner_tol = std::max(1e-6, identity_tol);
  const double ode_tol = std::max(1e-8, identity_tol);
  const double slack_floor = 0.0;

  std::vector<OracleRow> rows;
  for (int n : options.dims) {
    if (wanted(options, "reilly")) {
      std::vector<RadialProfile> profiles = RadialProfile::ball_profiles();
      profiles.push_back(RadialProfile::constant(1.0));
      for (double radius : {0.5, 1.0, 1.4}) {
        for (const RadialProfile& p : profiles) {
          const ReillyReport rep = verify_reilly_radial(n, radius, p, quad_tol);
          rows.push_back(at_most("reilly", n, p.name + " R=" + fmt(radius),
                                 rep.gap / (1.0 + std::abs(rep.lhs)), identity_tol));
        }
      }
    }
    if (wanted(options, "bochner")) {
      for (auto [r0, r1] : {std::pair{0.3, 1.2}, std::pair{0.5, 1.0}, std::pair{0.2, 2.8}}) {
        const BochnerReport rep = verify_bochner_radial(n, r0, r1);
        rows.push_back(at_most("bochner", n, "annulus " + fmt(r0) + ".." + fmt(r1),
                               rep.max_rel_residual, bochner_tol));
      }
      const BochnerReport flat = verify_bochner_radial(n, RadialProfile::constant(1.0), 0.3, 1.2);
      rows.push_back(at_most("bochner", n, "constant", flat.max_abs_residual, bochner_tol));
    }
    if (wanted(options, "interior-gradient")) {
      struct Case {
        double r0, r1, t;
      };
      for (const Case& k : {Case{0.3, 1.3, 0.1}, Case{0.3, 1.3, 0.25 * (1.0 - 1e-9)},
                            Case{0.5, 2.5, 0.3}, Case{0.2, 1.0, 0.05}}) {
        const InequalityReport rep = verify_interior_gradient_radial(n, k.r0, k.r1, k.t);
        rows.push_back(at_least("interior-gradient", n,
                                "annulus " + fmt(k.r0) + ".." + fmt(k.r1) + " t=" + fmt(k.t),
                                rep.slack, slack_floor));
      }
      const InequalityReport flat =
          verify_interior_gradient_radial(n, 0.3, 1.3, 0.1, RadialProfile::constant(1.0));
      rows.push_back(at_least("interior-gradient", n, "constant", flat.slack, slack_floor));
    }
    if (wanted(options, "boundary-layer")) {
      const RadialProfile v = cosine_profile();
      for (double t : {0.1, 0.2, 0.3, 0.5}) {
        for (double beta : {0.1, 0.5, 1.0, 2.0}) {
          const BoundaryLayerReport rep = verify_boundary_layer_hemisphere(n, t, beta, v);
          rows.push_back(at_least("boundary-layer", n, "cos t=" + fmt(t) + " beta=" + fmt(beta),
                                  rep.inequality.slack, slack_floor));
        }
      }
      const BoundaryLayerReport flat =
          verify_boundary_layer_hemisphere(n, 0.3, 0.5, RadialProfile::constant(1.0));
      rows.push_back(at_least("boundary-layer", n, "constant", flat.inequality.slack, slack_floor));
    }
    const bool want_chain = wanted(options, "choi-wang");
    const bool want_ode = wanted(options, "hemisphere-ode");
    if (want_chain || want_ode) {
      const HemisphereExtension ext = solve_hemisphere_extension(n);
      if (want_ode) {
        double residual = 0.0;
        double positivity = std::numeric_limits<double>::infinity();
        constexpr int kSamples = 2000;
        for (int i = 0; i < kSamples; ++i) {
          const double th = 0.01 + (kHalfPi - 0.01) * i / (kSamples - 1);
          residual = std::max(residual, std::abs(ext.ode_residual(th)));
          positivity = std::min({positivity, ext.F(th), ext.dF(th)});
        }
        rows.push_back(at_most("hemisphere-ode", n, "residual on [0.01, pi/2]", residual, ode_tol));
        rows.push_back(at_least("hemisphere-ode", n, "min(F, F')", positivity, 0.0));
        rows.push_back(at_least("hemisphere-ode", n, "u_nu = F'(pi/2)", ext.dF(kHalfPi), 0.0));
      }
      if (want_chain) {
        const ChoiWangReport cw = verify_choiwang_chain_hemisphere(ext);
        const double floor = -identity_tol * (1.0 + cw.dirichlet_energy);
        rows.push_back(at_most("choi-wang", n, "flux identity", cw.identity_gap, identity_tol));
        rows.push_back(at_least("choi-wang", n, "Reilly inequality", cw.reilly_slack, floor));
        rows.push_back(at_least("choi-wang", n, "2(lambda1 - n/2)G >= H2", cw.choi_wang_slack, floor));
        rows.push_back(at_least("choi-wang", n, "H2 >= 0", cw.hessian_slack, 0.0));
        rows.push_back(at_least("choi-wang", n, "boundary gradient", cw.gradient_slack, floor));
      }
    }
  }
  return rows;
}

int cmd_verify_oracles(const OracleOptions& options, const std::string& out_path,
                       std::ostream& out, std::ostream& err) {
  std::vector<OracleRow> rows;
  try {
    rows = run_oracles(options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  int failures = 0;
  out << std::left << std::setw(19) << "identity" << std::setw(3) << "n" << std::setw(30) << "case"
      << std::setw(14) << "value" << std::setw(15) << "threshold" << "verdict\n";
  for (const OracleRow& r : rows) {
    out << std::left << std::setw(19) << r.identity << std::setw(3) << r.n << std::setw(30)
        << r.label << std::setw(14) << fmt(r.value, 4) << r.relation << ' ' << std::setw(12)
        << fmt(r.threshold, 3) << (r.pass ? "PASS" : "FAIL") << '\n';
    if (!r.pass) {
      ++failures;
      err << "failed: " << r.identity << " (n=" << r.n << ", " << r.label << ")\n";
    }
  }
  out << rows.size() - failures << "/" << rows.size() << " checks passed\n";
  if (!out_path.empty()) {
    json j;
    j["schema"] = kReportSchema;
    j["version"] = tool_version();
    j["command"] = "verify-oracles";
    json list = json::array();
    for (const OracleRow& r : rows) {
      list.push_back({{"identity", r.identity},
                      {"n", r.n},
                      {"case", r.label},
                      {"value", r.value},
                      {"relation", r.relation},
                      {"threshold", r.threshold},
                      {"pass", r.pass}});
    }
    j["rows"] = list;
    write_file_atomic(out_path, j.dump(2) + "\n");
  }
  return failures == 0 ? kExitOk : kExitOracleFailed;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& csv_path,
               const std::string& json_path, std::ostream& out, std::ostream& err) {
  std::vector<VerificationReport> reports;
  try {
    for (const std::string& p : paths) reports.push_back(report_from_json(read_file(p)));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  std::ostringstream csv;
  csv << csv_header() << '\n';
  for (const VerificationReport& r : reports) csv << csv_row(r) << '\n';
  if (csv_path.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(csv_path, csv.str());
  }
  if (!json_path.empty()) {
    json merged = json::array();
    for (const VerificationReport& r : reports) merged.push_back(json::parse(to_json(r)));
    write_file_atomic(json_path, merged.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace sphere_spectra::harness
