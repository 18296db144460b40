import math

import numpy as np
from numpy.testing import assert_allclose

from pytest import approx
from pytest import mark
from pytest import raises
from hypothesis import given
from hypothesis import settings
from hypothesis.strategies import floats

from rimaps.cli import Sampling
from rimaps.common import Utils
from rimaps.core import Session
from rimaps.geometry import FrameField
from rimaps.geometry import GeometryAnalyzer
from rimaps.geometry import ManifoldSpec
from rimaps.verdicts import Verdict


def half_plane():
    return ManifoldSpec.Builder("H2", ["x", "y"]) \
        .set_metric(0, 0, "1 / y^2") \
        .set_metric(1, 1, "1 / y^2") \
        .build()


def test_canonical_structure_columns():
    structure = ManifoldSpec.canonical_structure(4)
    assert_allclose(structure @ [1, 0, 0, 0], [0, 1, 0, 0])
    assert_allclose(structure @ [0, 1, 0, 0], [-1, 0, 0, 0])
    assert_allclose(structure @ [0, 0, 1, 0], [0, 0, 0, 1])
    assert_allclose(structure @ structure, -np.eye(4))


def test_builder_fills_symmetric_metric():
    manifold = ManifoldSpec.Builder("M", ["a", "b"]) \
        .set_identity_metric() \
        .set_metric(1, 0, "a / 10") \
        .build()
    assert manifold.metric[0][1] is manifold.metric[1][0]
    assert_allclose(manifold.metric_values(np.array([2.0, 0.0])),
                    [[1.0, 0.2], [0.2, 1.0]])


@mark.parametrize("coords structure".split(), ((["a"], True),
                                               ([], False)))
def test_invalid_specs(coords, structure):
    builder = ManifoldSpec.Builder("M", coords).set_identity_metric()
    if structure:
        builder.set_canonical_structure()
    with raises(ManifoldSpec.InvalidSpecException):
        builder.build()


def test_builder_rejects_bad_index():
    with raises(ManifoldSpec.InvalidSpecException):
        ManifoldSpec.Builder("M", ["a", "b"]).set_metric(0, 2, "1")


def test_point_dimension_is_checked():
    manifold = half_plane()
    with raises(ValueError):
        manifold.point([1.0, 2.0, 3.0])
    with raises(ValueError):
        GeometryAnalyzer.coordinates(manifold, [1.0])


def test_half_plane_christoffel(session):
    y = 1.7
    gamma = session.geometry().christoffel_at(half_plane(), [0.3, y]).gamma
    expected = np.zeros((2, 2, 2))
    expected[0, 0, 1] = expected[0, 1, 0] = -1 / y
    expected[1, 0, 0] = 1 / y
    expected[1, 1, 1] = -1 / y
    assert_allclose(gamma, expected, atol=1e-12)


def test_sphere_christoffel(session, sphere):
    manifold, _ = sphere
    theta = 1.1
    christoffel = session.geometry().christoffel_at(manifold, [theta, 0.4])
    assert christoffel.gamma[0, 1, 1] == \
        approx(-math.sin(theta) * math.cos(theta))
    assert christoffel.gamma[1, 0, 1] == \
        approx(1 / math.tan(theta))
    assert christoffel.torsion_defect() < 1e-9


@settings(max_examples=30, deadline=None)
@given(floats(min_value=-2, max_value=2), floats(min_value=0.2,
                                                  max_value=5))
def test_levi_civita_is_metric_compatible(x, y):
    with Session.Builder().create() as session:
        defect = session.geometry().metric_compatibility_defect(
            half_plane(), [x, y])
    assert defect < 1e-9 * (1 + 1 / y**3)


def test_metric_must_be_positive_definite(session):
    with raises(GeometryAnalyzer.NotPositiveDefiniteException) as info:
        session.geometry().metric_at(half_plane(), [0.0, 1e6])
    assert info.value.smallest_eigenvalue < 1e-10


def test_missing_structure(session, poincare):
    f, _ = poincare
    with raises(GeometryAnalyzer.NoComplexStructureException):
        session.geometry().structure_at(f.source, [0.0, 1.0])
    report = session.geometry().check_almost_hermitian(f.source,
                                                       [[0.0, 1.0]])
    assert report.verdict is Verdict.VACUOUS_PASS
    assert report.worst_offender.detail.startswith("gate failed")


def test_sphere_is_kahler(session, sphere):
    manifold, points = sphere
    hermitian = session.geometry().check_almost_hermitian(manifold, points)
    kahler = session.geometry().check_kahler(manifold, points)
    assert hermitian.verdict is Verdict.PASS
    assert kahler.verdict is Verdict.PASS
    assert kahler.residual("nabla_j") < 1e-9
    assert hermitian.samples == 16


def test_apply_j_rotates_a_quarter_turn(session, sphere):
    manifold, _ = sphere
    theta = 0.8
    rotated = session.geometry().apply_J(manifold,
                                         manifold.vector([theta, 1.0],
                                                         [1.0, 0.0]))
    assert_allclose(rotated.array, [0.0, 1 / math.sin(theta)])


def test_non_compatible_structure_fails(session):
    # J^2 = -1 but J does not preserve the stretched metric
    manifold = ManifoldSpec.Builder("M", ["x", "y"]) \
        .set_metric(0, 0, 4) \
        .set_metric(1, 1, 1) \
        .set_canonical_structure() \
        .build()
    hermitian = session.geometry().check_almost_hermitian(
        manifold, [[0.0, 0.0], [1.0, 1.0]])
    assert hermitian.verdict is Verdict.FAIL
    assert hermitian.residual("compatibility") == 3.0
    assert hermitian.residual("j_squared") == 0.0
    kahler = session.geometry().check_kahler(manifold, [[0.0, 0.0]])
    assert kahler.verdict is Verdict.VACUOUS_PASS


def test_non_parallel_structure_is_not_kahler(session):
    # compatible with the conformal metric, but not parallel
    manifold = ManifoldSpec.Builder("M", ["x", "y", "u", "v"]) \
        .set_metric(0, 0, "exp(u)") \
        .set_metric(1, 1, "exp(u)") \
        .set_metric(2, 2, 1) \
        .set_metric(3, 3, 1) \
        .set_canonical_structure() \
        .build()
    points = [[0.0, 0.0, 0.5, 0.0], [1.0, -1.0, 0.0, 2.0]]
    assert session.geometry().check_almost_hermitian(
        manifold, points).verdict is Verdict.PASS
    assert session.geometry().check_kahler(manifold,
                                           points).verdict is Verdict.FAIL


def test_frame_field_is_orthonormal(session):
    manifold = half_plane()
    field = FrameField.from_expressions(manifold, [["1", "1"], ["0", "1"]])
    x = np.array([0.5, 2.0])
    frame = field.at(x)
    metric = session.geometry().metric_at(manifold, x)
    assert_allclose(frame.T @ metric @ frame, np.eye(2), atol=1e-12)


def test_degenerate_frame_field():
    field = FrameField.from_expressions(half_plane(),
                                        [["x", "1"], ["2 * x", "2"]])
    with raises(ArithmeticError):
        field.at(np.array([1.0, 1.0]))


def test_gram_schmidt_reports_breakdown():
    vectors = np.array([[1.0, 1.0], [0.0, 1e-12]])
    _, worst = Utils.gram_schmidt(vectors, np.eye(2))
    assert worst < 1e-11


def test_polarization_set_size():
    assert len(Utils.polarization_set(4)) == 4 + 2 * 6


def difference_christoffel(geometry, manifold, x, h=1e-5):
    """Gamma^k_ij from central differences of the metric alone."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    derivatives = np.zeros((n, n, n))
    for k in range(n):
        derivatives[:, :, k] = Utils.central_difference(
            lambda p: geometry.metric_at(manifold, p), x, np.eye(n)[k], h)
    inverse = np.linalg.inv(geometry.metric_at(manifold, x))
    gamma = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                gamma[k, i, j] = 0.5 * sum(
                    inverse[k, l] *
                    (derivatives[j, l, i] + derivatives[i, l, j] -
                     derivatives[i, j, l]) for l in range(n))
    return gamma


@mark.parametrize("chart", ("sphere", "half_plane"))
def test_christoffel_matches_metric_differences(session, sphere, chart):
    if chart == "sphere":
        manifold, points = sphere
    else:
        manifold = half_plane()
        points = Sampling(Sampling.GRID, 16,
                          region=[(-1, 1), (0.5, 2)]).draw()
    assert len(points) == 16
    geometry = session.geometry()
    for x in points:
        christoffel = geometry.christoffel_at(manifold, x)
        assert_allclose(christoffel.gamma,
                        difference_christoffel(geometry, manifold, x),
                        atol=1e-6)
        assert christoffel.torsion_defect() < 1e-9
