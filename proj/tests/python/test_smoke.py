import math

import numpy as np
import pytest

import sphere_spectra as ss


def test_version():
    assert ss.__version__ == "0.1.0"


def test_bound_constants_n2():
    c = ss.compute_bound_constants(2)
    assert c.a == pytest.approx(1.315533e-4, rel=1e-6)
    assert c.b == pytest.approx(0.0877022, rel=1e-6)


def test_headline_bound_clifford():
    assert ss.eigenvalue_lower_bound(2, math.sqrt(2)) == pytest.approx(1.000016266, abs=2e-9)


def test_totally_geodesic_branch():
    assert ss.eigenvalue_lower_bound(3, 1.2) == 3.0


def test_tube_integral_closed_form():
    assert ss.tube_integral(2, 1.0) == pytest.approx(math.pi / 4 - 0.5, abs=1e-10)


def test_bad_dimension_raises():
    with pytest.raises(ss.Error):
        ss.compute_bound_constants(1)


def test_curvature_transport_composition():
    k, s, t = 0.3, 0.2, 0.25
    assert ss.curvature_transport(ss.curvature_transport(k, s), t) == pytest.approx(
        ss.curvature_transport(k, s + t), rel=1e-12
    )


def test_clifford_offset_mean_curvature():
    t = 0.3
    assert ss.offset_mean_curvature([1.0, -1.0], t) == pytest.approx(2 * math.tan(2 * t), rel=1e-12)
    assert ss.embeddedness_horizon([1.0, -1.0]) == pytest.approx(math.pi / 4, rel=1e-12)


def test_mesh_arrays_roundtrip():
    mesh = ss.gen_clifford_torus(16, 16)
    v, f = mesh.vertices, mesh.triangles
    assert v.shape == (256, 4) and f.shape == (512, 3)
    assert np.allclose(np.linalg.norm(v, axis=1), 1.0)
    rebuilt = ss.SphericalTriMesh(v, f)
    assert ss.genus(rebuilt) == 1
    assert mesh.family is not None


def test_equator_spectrum():
    mesh = ss.gen_geodesic_sphere(math.pi / 2, 3)
    res = ss.smallest_nonzero_eig(ss.assemble_laplacian(mesh), tol=1e-8)
    assert res.lambda1 == pytest.approx(2.0, rel=0.01)
    assert res.multiplicity == 3


def test_self_intersection_detects_crossing_spheres():
    a = ss.gen_geodesic_sphere(math.pi / 2, 3)
    embedded, witnesses = ss.self_intersection_test(a)
    assert embedded and witnesses == []

    v, f = a.vertices, a.triangles
    rotated = v[:, [0, 1, 3, 2]]
    both = ss.SphericalTriMesh(np.vstack([v, rotated]), np.vstack([f, f + len(v)]))
    embedded, witnesses = ss.self_intersection_test(both)
    assert not embedded
    assert all(i < len(f) <= j or j < len(f) <= i for i, j in witnesses)


def test_oracles():
    assert ss.verify_bochner_radial(3, 0.2, 1.2) < 1e-6
    assert ss.verify_reilly_cosine(2, 1.0)["passed"]
    chain = ss.verify_choiwang_chain_hemisphere(2)
    assert chain["all_hold"]
    assert chain["boundary_flux"] == pytest.approx(4 / math.pi, rel=1e-8)


def test_verify_surface_report():
    mesh = ss.gen_clifford_torus(32, 32)
    report = ss.verify_surface(mesh, offsets=[0.2])
    assert report["schema"] == 1
    assert report["surface"]["genus"] == 1
    assert report["spectrum"]["lambda1"] == pytest.approx(2.0, rel=0.02)
    assert all(v["status"] == "pass" for v in report["verdicts"])
    assert len(report["offsets"]) == 1
    assert report["offsets"][0]["status"] == "embedded"


def test_constants_dict():
    d = ss.constants(2, lam=math.sqrt(2))
    assert d["n"] == 2
    assert d["bound"] == pytest.approx(1.000016266, abs=2e-9)
