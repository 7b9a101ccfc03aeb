#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <Eigen/Core>

#include "sphere_spectra/constants.hpp"
#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/harness/commands.hpp"
#include "sphere_spectra/harness/report.hpp"
#include "sphere_spectra/intersection.hpp"
#include "sphere_spectra/laplacian.hpp"
#include "sphere_spectra/mesh.hpp"
#include "sphere_spectra/radial_oracles.hpp"
#include "sphere_spectra/shape_operator.hpp"
#include "sphere_spectra/spectral.hpp"
#include "sphere_spectra/sphere_geometry.hpp"

namespace py = pybind11;
namespace ss = sphere_spectra;

namespace {

using RowMatrix4 = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;
using RowMatrix3i = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

RowMatrix4 vertex_array(const ss::SphericalTriMesh& mesh) {
  RowMatrix4 out(mesh.vertex_count(), 4);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) out.row(i) = mesh.vertices()[i].transpose();
  return out;
}

RowMatrix3i triangle_array(const ss::SphericalTriMesh& mesh) {
  RowMatrix3i out(mesh.triangle_count(), 3);
  for (std::size_t f = 0; f < mesh.triangle_count(); ++f) {
    for (int k = 0; k < 3; ++k) out(f, k) = mesh.triangles()[f][k];
  }
  return out;
}

ss::SphericalTriMesh mesh_from_arrays(const RowMatrix4& vertices, const RowMatrix3i& triangles) {
  std::vector<ss::Vec4> v(vertices.rows());
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) v[i] = vertices.row(i).transpose();
  std::vector<ss::Triangle> t(triangles.rows());
  for (Eigen::Index f = 0; f < triangles.rows(); ++f) {
    t[f] = {triangles(f, 0), triangles(f, 1), triangles(f, 2)};
  }
  return ss::SphericalTriMesh(std::move(v), std::move(t));
}

}  // namespace

PYBIND11_MODULE(_sphere_spectra, m) {
  m.doc() = "Eigenvalue bounds and discrete spectral geometry of surfaces in S^3";
  m.attr("__version__") = ss::harness::tool_version();

  auto base = py::register_exception<ss::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ss::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ss::PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ss::SingularityError>(m, "SingularityError", base.ptr());
  auto numeric = py::register_exception<ss::NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ss::ConvergenceError>(m, "ConvergenceError", numeric.ptr());
  auto mesh_error = py::register_exception<ss::MeshError>(m, "MeshError", base.ptr());
  py::register_exception<ss::MeshQualityError>(m, "MeshQualityError", mesh_error.ptr());
  py::register_exception<ss::ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<ss::SchemaError>(m, "SchemaError", base.ptr());

  // constants
  py::class_<ss::BoundConstants>(m, "BoundConstants")
      .def_readonly("a", &ss::BoundConstants::a)
      .def_readonly("b", &ss::BoundConstants::b)
      .def_readonly("c", &ss::BoundConstants::c);
  py::class_<ss::ParameterChain>(m, "ParameterChain")
      .def_readonly("n", &ss::ParameterChain::n)
      .def_readonly("lambda_", &ss::ParameterChain::lambda)
      .def_readonly("eps", &ss::ParameterChain::eps)
      .def_readonly("beta", &ss::ParameterChain::beta)
      .def_readonly("eps_tilde", &ss::ParameterChain::eps_tilde)
      .def_readonly("gamma", &ss::ParameterChain::gamma)
      .def_readonly("delta", &ss::ParameterChain::delta)
      .def_readonly("shell_width", &ss::ParameterChain::shell_width)
      .def_readonly("d_eps", &ss::ParameterChain::d_eps)
      .def_readonly("a", &ss::ParameterChain::a)
      .def_readonly("b", &ss::ParameterChain::b)
      .def_readonly("valid", &ss::ParameterChain::valid);
  py::class_<ss::VolumeBound>(m, "VolumeBound")
      .def_readonly("ambient_volume", &ss::VolumeBound::ambient_volume)
      .def_readonly("tube_integral", &ss::VolumeBound::tube_integral)
      .def_readonly("sharp", &ss::VolumeBound::sharp)
      .def_readonly("crude", &ss::VolumeBound::crude)
      .def_readonly("sharp_within_crude", &ss::VolumeBound::sharp_within_crude);

  m.def("arctan_cubed_factor", &ss::arctan_cubed_factor, py::arg("n"));
  m.def("compute_bound_constants", &ss::compute_bound_constants, py::arg("n"));
  m.def("eigenvalue_lower_bound", &ss::eigenvalue_lower_bound, py::arg("n"), py::arg("lam"));
  m.def("build_parameter_chain", &ss::build_parameter_chain, py::arg("n"), py::arg("lam"),
        py::arg("eps"), py::arg("beta"));
  m.def("default_parameter_chain", &ss::default_parameter_chain, py::arg("n"), py::arg("lam"));
  m.def("tube_integral", &ss::tube_integral, py::arg("n"), py::arg("lam"));
  m.def("volume_upper_bound", &ss::volume_upper_bound, py::arg("n"), py::arg("lam"));

  // pointwise offset geometry
  m.def("curvature_transport", &ss::curvature_transport, py::arg("kappa"), py::arg("t"));
  m.def(
      "embeddedness_horizon",
      [](std::vector<double> k) { return ss::embeddedness_horizon(ss::PrincipalCurvatureSet(k)); },
      py::arg("kappas"));
  m.def(
      "offset_mean_curvature",
      [](std::vector<double> k, double t) {
        return ss::offset_mean_curvature(ss::PrincipalCurvatureSet(k), t);
      },
      py::arg("kappas"), py::arg("t"));
  m.def("offset_mean_curvature_bound", &ss::offset_mean_curvature_bound, py::arg("n"),
        py::arg("lam"), py::arg("eps"));

  // meshes
  py::class_<ss::SphericalTriMesh>(m, "SphericalTriMesh")
      .def(py::init(&mesh_from_arrays), py::arg("vertices"), py::arg("triangles"))
      .def_property_readonly("vertices", &vertex_array)
      .def_property_readonly("triangles", &triangle_array)
      .def_property_readonly("family",
                             [](const ss::SphericalTriMesh& mesh) -> py::object {
                               if (!mesh.analytic()) return py::none();
                               return py::str(mesh.analytic()->family);
                             })
      .def("__len__", &ss::SphericalTriMesh::vertex_count);
  m.def("gen_clifford_torus", &ss::gen_clifford_torus, py::arg("res_u"), py::arg("res_v"));
  m.def("gen_flat_torus", &ss::gen_flat_torus, py::arg("r"), py::arg("res_u"), py::arg("res_v"));
  m.def("gen_geodesic_sphere", &ss::gen_geodesic_sphere, py::arg("r"), py::arg("subdiv"));
  m.def("offset_mesh", &ss::offset_mesh, py::arg("mesh"), py::arg("t"));
  m.def("mesh_horizon", &ss::mesh_horizon, py::arg("mesh"));
  m.def(
      "genus", [](const ss::SphericalTriMesh& mesh) { return ss::validate_mesh(mesh).genus; },
      py::arg("mesh"));
  m.def("read_s3off", &ss::read_s3off_file, py::arg("path"));
  m.def("write_s3off", &ss::write_s3off_file, py::arg("path"), py::arg("mesh"));

  py::class_<ss::LaplacePair>(m, "LaplacePair")
      .def_readonly("stiffness", &ss::LaplacePair::stiffness)
      .def_readonly("mass", &ss::LaplacePair::mass);
  m.def("assemble_laplacian", &ss::assemble_laplacian, py::arg("mesh"));

  py::class_<ss::EigenResult>(m, "EigenResult")
      .def_readonly("lambda1", &ss::EigenResult::lambda1)
      .def_readonly("eigenvector", &ss::EigenResult::eigenvector)
      .def_readonly("residual", &ss::EigenResult::residual)
      .def_readonly("iterations", &ss::EigenResult::iterations)
      .def_readonly("multiplicity", &ss::EigenResult::multiplicity);
  m.def(
      "smallest_nonzero_eig",
      [](const ss::LaplacePair& pair, double tol, int max_iter, std::uint64_t seed) {
        ss::EigenOptions options;
        options.tol = tol;
        options.max_iter = max_iter;
        options.seed = seed;
        py::gil_scoped_release release;
        return ss::smallest_nonzero_eig(pair, options);
      },
      py::arg("pair"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
      py::arg("seed") = ss::kDefaultSeed);
  m.def("rayleigh_quotient", &ss::rayleigh_quotient, py::arg("x"), py::arg("pair"));

  py::class_<ss::DiscreteGeometry>(m, "DiscreteGeometry")
      .def_readonly("vertex_area", &ss::DiscreteGeometry::vertex_area)
      .def_readonly("norm_a", &ss::DiscreteGeometry::norm_a)
      .def_readonly("mean_curvature", &ss::DiscreteGeometry::mean_curvature)
      .def_readonly("total_area", &ss::DiscreteGeometry::total_area)
      .def_readonly("lambda_", &ss::DiscreteGeometry::lambda)
      .def_readonly("genus", &ss::DiscreteGeometry::genus)
      .def("simons_integral", &ss::DiscreteGeometry::simons_integral);
  m.def("discrete_shape_operator", &ss::discrete_shape_operator, py::arg("mesh"));

  m.def(
      "self_intersection_test",
      [](const ss::SphericalTriMesh& mesh) {
        const ss::IntersectionResult r = ss::self_intersection_test(mesh);
        std::vector<std::pair<int, int>> witnesses;
        for (const auto& w : r.witnesses) witnesses.emplace_back(w.triangle_a, w.triangle_b);
        return py::make_tuple(r.embedded, witnesses);
      },
      py::arg("mesh"));

  // radial oracles
  m.def(
      "verify_bochner_radial",
      [](int n, double r0, double r1) { return ss::verify_bochner_radial(n, r0, r1).max_rel_residual; },
      py::arg("n"), py::arg("r0"), py::arg("r1"));
  m.def(
      "verify_reilly_cosine",
      [](int n, double radius) {
        const auto profiles = ss::RadialProfile::ball_profiles();
        const ss::ReillyReport r = ss::verify_reilly_radial(n, radius, profiles.front());
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("gap") = r.gap,
                        py::arg("passed") = r.passed);
      },
      py::arg("n"), py::arg("radius"));
  m.def(
      "verify_choiwang_chain_hemisphere",
      [](int n) {
        const ss::ChoiWangReport r = ss::verify_choiwang_chain_hemisphere(n);
        return py::dict(py::arg("dirichlet_energy") = r.dirichlet_energy,
                        py::arg("boundary_flux") = r.boundary_flux,
                        py::arg("hessian_energy") = r.hessian_energy,
                        py::arg("boundary_gradient") = r.boundary_gradient,
                        py::arg("identity_gap") = r.identity_gap,
                        py::arg("all_hold") = r.all_hold());
      },
      py::arg("n"));

  // harness
  m.def(
      "verify_surface_json",
      [](const ss::SphericalTriMesh& mesh, const std::string& source, std::vector<double> offsets,
         std::uint64_t seed) {
        ss::harness::VerifyOptions options;
        options.offsets = std::move(offsets);
        options.eigen.seed = seed;
        options.parameters["source"] = source;
        std::string text;
        {
          py::gil_scoped_release release;
          text = ss::harness::to_json(ss::harness::verify_surface(mesh, source, options));
        }
        return text;
      },
      py::arg("mesh"), py::arg("source") = "python", py::arg("offsets") = std::vector<double>{},
      py::arg("seed") = ss::kDefaultSeed);
  m.def("constants_json",
        [](int n, std::optional<double> lam, std::optional<double> eps, std::optional<double> beta) {
          return ss::harness::constants_json({n, lam, eps, beta});
        },
        py::arg("n"), py::arg("lam") = py::none(), py::arg("eps") = py::none(),
        py::arg("beta") = py::none());
}
