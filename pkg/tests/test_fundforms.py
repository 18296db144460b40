import math

import numpy as np
from numpy.testing import assert_allclose

from pytest import approx
from pytest import mark
from pytest import raises

from rimaps.cli import Catalog
from rimaps.cli import Sampling
from rimaps.fundforms import FundamentalForms
from rimaps.fundforms import SecondFundamentalFormMap
from rimaps.geometry import FrameField
from rimaps.geometry import ManifoldSpec
from rimaps.maps import MapSpec
from rimaps.verdicts import Verdict

ROOT2 = math.sqrt(2.0)


def angle(x):
    return (x[0] - x[2]) / ROOT2


def outward(x):
    return np.array([math.cos(angle(x)), math.sin(angle(x)), 0.0])


def tangent(x):
    return np.array([-math.sin(angle(x)), math.cos(angle(x)), 0.0])


@mark.parametrize("t".split(), ((0.0, ), (1.0, ), (4.0, )))
def test_circle_second_fundamental_form(session, circle, t):
    f, _ = circle
    sff = session.fundforms().map_sff_at(f, [t])
    assert_allclose(sff.values[0, 0], [-math.cos(t), -math.sin(t)],
                    atol=1e-12)
    assert sff.max_norm() == approx(1.0)


def test_cylinder_second_fundamental_form(session, cylinder):
    f, _ = cylinder
    x = np.array([0.4, -0.3, 1.1, 0.2])
    sff = session.fundforms().map_sff_at(f, x)
    unit = np.array([1.0, 0.0, -1.0, 0.0]) / ROOT2
    assert_allclose(sff(unit, unit), -outward(x), atol=1e-12)
    assert_allclose(sff.quadratic(unit * ROOT2), -2 * outward(x), atol=1e-12)
    kernel = np.array([1.0, 0.0, 1.0, 0.0]) / ROOT2
    assert_allclose(sff(kernel, unit), 0.0, atol=1e-12)
    assert sff.symmetry_defect() < 1e-9


def test_linear_map_is_totally_geodesic(session, linear):
    f, points = linear
    report = session.fundforms().check_totally_geodesic_map(f, points)
    assert report.verdict is Verdict.PASS
    assert report.residual("second_fundamental_form") < 1e-12


def test_cylinder_map_is_not_totally_geodesic(session, cylinder):
    f, points = cylinder
    report = session.fundforms().check_totally_geodesic_map(f, points)
    assert report.verdict is Verdict.FAIL
    # the angle moves at speed sqrt(2) along e1 - e3
    assert report.residual("second_fundamental_form") == approx(2.0)
    assert report.worst_offender.point is not None


def test_shape_operator_on_cylinder(session, cylinder):
    f, _ = cylinder
    x = np.array([0.4, -0.3, 1.1, 0.2])
    shape = session.fundforms().shape_operator_at(f, x, outward(x))
    assert_allclose(shape.apply(tangent(x)), -tangent(x), atol=1e-6)
    assert_allclose(shape.apply(np.array([0.0, 0.0, 1.0])), 0.0, atol=1e-6)
    assert shape.symmetry_defect() < 1e-6
    assert_allclose(shape.normal_derivatives, 0.0, atol=1e-6)


def test_shape_operator_does_not_depend_on_extension(session, cylinder):
    f, _ = cylinder
    x = np.array([-0.7, 0.5, 0.3, 1.2])
    forms = session.fundforms()
    v = 2.5 * outward(x)
    frame = forms.shape_operator_at(f, x, v, extension="frame")
    projected = forms.shape_operator_at(f, x, v, extension="projected")
    assert_allclose(frame.matrix, projected.matrix, atol=1e-6)
    assert_allclose(frame.images, projected.images, atol=1e-6)
    with raises(TypeError):
        forms.shape_operator_at(f, x, v, extension="parallel")


def test_shape_operator_rejects_range_vectors(session, cylinder):
    f, _ = cylinder
    with raises(FundamentalForms.NotNormalException):
        session.fundforms().shape_operator_at(f, [0.0] * 4, [0.0, 0.0, 1.0])


def test_shape_identity(session, cylinder):
    f, _ = cylinder
    x = np.array([0.4, -0.3, 1.1, 0.2])
    u = np.array([1.0, 0.0, -1.0, 0.0]) / ROOT2
    w = np.array([0.0, 1.0, 0.0, 1.0]) / ROOT2
    for a, b in ((u, u), (u, w), (w, w)):
        residual = session.fundforms().shape_identity_residual(
            f, x, outward(x), a, b)
        assert residual < 1e-6


def test_sphere_parallels_and_meridians(session, sphere):
    # the meridian field d/dtheta is geodesic; the parallels
    # d/dphi / sin(theta) have curvature cot(theta) pointing to -d/dtheta
    manifold, _ = sphere
    theta = 1.0
    field = FrameField.from_expressions(manifold, [["0", "1"]], "parallels")
    geometry = session.fundforms().distribution_geometry(
        manifold, field, [theta, 0.5])
    expected = -1 / math.tan(theta)
    assert_allclose(geometry.mean_curvature, [expected, 0.0], atol=1e-7)
    assert geometry.is_umbilical(1e-7)
    assert not geometry.is_totally_geodesic(1e-3)
    assert not geometry.is_minimal(1e-3)
    meridians = FrameField.from_expressions(manifold, [["1", "0"]])
    geodesic = session.fundforms().distribution_geometry(
        manifold, meridians, [theta, 0.5])
    assert geodesic.is_totally_geodesic(1e-7)
    assert geodesic.is_minimal(1e-7)
    assert geodesic.bracket_defect < 1e-7


def test_non_integrable_distribution(session):
    # span{d/dx + y d/dz, d/dy} is the contact distribution on R^3
    manifold = ManifoldSpec.Builder("R3", ["x", "y", "z"]) \
        .set_identity_metric() \
        .build()
    field = FrameField.from_expressions(manifold,
                                        [["1", "0", "y"], ["0", "1", "0"]],
                                        "contact")
    geometry = session.fundforms().distribution_geometry(manifold, field,
                                                         [0.0, 0.0, 0.0])
    assert geometry.i_norm() == approx(1.0, rel=1e-6)
    assert geometry.antisymmetry_defect() < 1e-12
    assert geometry.bracket_defect < 1e-6


def test_stencil_failure(session):
    manifold = ManifoldSpec.Builder("R2", ["x", "y"]) \
        .set_identity_metric() \
        .build()
    field = FrameField.from_expressions(manifold, [["sqrt(y)", "1"]])
    with raises(FundamentalForms.StencilException):
        session.fundforms().distribution_geometry(manifold, field,
                                                  [0.0, 0.0])


def test_half_plane_fibers_are_geodesics(session, poincare):
    f, points = poincare
    report = session.fundforms().check_umbilical_fibers(f, points)
    assert report.verdict is Verdict.PASS
    assert report.details["mean_curvature_norm"] < 1e-6
    assert report.details["minimal"]
    assert report.details["totally_geodesic"]
    assert len(report.details["mean_curvature"]) == len(points)


def test_horizontal_curves_of_half_plane(session):
    # y = const is not a geodesic of H2; its curvature is 1
    manifold = ManifoldSpec.Builder("H2", ["x", "y"]) \
        .set_metric(0, 0, "1 / y^2") \
        .set_metric(1, 1, "1 / y^2") \
        .build()
    field = FrameField.from_expressions(manifold, [["y", "0"]])
    geometry = session.fundforms().distribution_geometry(
        manifold, field, [0.2, 1.5])
    assert geometry.mean_curvature_norm() == approx(1.0, rel=1e-6)


def test_umbilical_fibers_need_fibers(session, circle):
    f, points = circle
    report = session.fundforms().check_umbilical_fibers(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert "no fibers" in report.worst_offender.detail


def test_curved_fibers(session):
    # the distance from the origin has round spheres as fibers
    manifold = ManifoldSpec.Builder("R3", ["x", "y", "z"]) \
        .set_identity_metric() \
        .build()
    line = ManifoldSpec.Builder("R", ["r"]).set_identity_metric().build()
    f = MapSpec.parse("radius", manifold, line, ["sqrt(x^2 + y^2 + z^2)"])
    points = [[1.0, 0.5, -0.2], [0.3, -2.0, 0.4]]
    report = session.fundforms().check_umbilical_fibers(f, points)
    assert report.verdict is Verdict.PASS
    assert not report.details["minimal"]
    norms = [np.linalg.norm(h) for h in report.details["mean_curvature"]]
    radii = [np.linalg.norm(p) for p in points]
    assert_allclose(norms, [1 / r for r in radii], rtol=1e-5)


@mark.parametrize("name", ("linear_lagrangian", "lagrangian_cylinder",
                           "cylinder_inclusion", "circle_inclusion",
                           "line_projection", "invariant_projection",
                           "poincare_fibers"))
def test_second_fundamental_form_is_symmetric(session, name):
    scenario = Catalog.load(name)
    f = scenario.subject()
    region = scenario.sampling.region
    points = Sampling(Sampling.UNIFORM, 32, 5, region).draw()
    for x in points:
        assert session.fundforms().map_sff_at(f, x).symmetry_defect() < 1e-9


def test_symmetry_defect_sees_asymmetry():
    values = np.zeros((2, 2, 1))
    values[0, 1, 0] = 1.0
    sff = SecondFundamentalFormMap(np.zeros(2), np.zeros(1), values,
                                   np.eye(1))
    assert sff.symmetry_defect() == 1.0
