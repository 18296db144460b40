import math

import numpy as np
from numpy.testing import assert_allclose

from pytest import approx
from pytest import mark
from pytest import raises
from hypothesis import given
from hypothesis import settings
from hypothesis.strategies import floats
from hypothesis.strategies import lists

from rimaps.cli import Catalog
from rimaps.core import Session
from rimaps.geometry import ManifoldSpec
from rimaps.maps import FrameBundle
from rimaps.maps import JacobianData
from rimaps.maps import MapSpec
from rimaps.verdicts import Verdict

ROOT2 = math.sqrt(2.0)


def flat(name, coords):
    return ManifoldSpec.Builder(name, coords).set_identity_metric().build()


def test_jacobian_rank_and_kind(session, linear):
    f, _ = linear
    data = session.maps().jacobian_at(f, [0.1, 0.2, 0.3, 0.4])
    assert data.rank == 2
    assert data.kind() == "proper"
    assert data.is_proper()
    assert_allclose(data.singular_values, [1.0, 1.0, 0.0], atol=1e-12)


@mark.parametrize("components kind".split(),
                  ((["x", "y"], "local-diffeomorphism"),
                   (["x"], "submersion"),
                   (["1"], "constant"),
                   (["x", "y", "x * y"], "immersion")))
def test_jacobian_kinds(session, components, kind):
    source = flat("A", ["x", "y"])
    target = flat("B", ["u", "v", "w"][:len(components)])
    f = MapSpec.parse("f", source, target, components)
    assert session.maps().jacobian_at(f, [0.5, 0.5]).kind() == kind


def test_rank_counts_relative_singular_values():
    assert JacobianData.count_rank(np.array([2.0, 1e-9, 0.0]), 1e-8) == 1
    assert JacobianData.count_rank(np.array([0.0, 0.0]), 1e-8) == 0
    assert JacobianData.count_rank(np.array([]), 1e-8) == 0


def test_component_count_must_match_target():
    with raises(MapSpec.InvalidMapException):
        MapSpec.parse("f", flat("A", ["x"]), flat("B", ["u", "v"]), ["x"])


def test_splitting_of_linear_map(session, linear):
    f, _ = linear
    frames = session.maps().split_at(f, [0.3, -0.2, 0.5, 0.9])
    assert frames.rank == 2
    assert frames.vertical.shape == (4, 2)
    assert frames.normal.shape == (3, 1)
    assert frames.orthonormality_defect() < 1e-12
    assert frames.kernel_defect() < 1e-12
    # ker F_* = span{(1,0,1,0), (0,1,0,-1)}
    assert_allclose(frames.push(np.array([1.0, 0.0, 1.0, 0.0])), 0,
                    atol=1e-12)
    assert_allclose(np.abs(frames.normal[:, 0]), [0.0, 1.0, 0.0],
                    atol=1e-12)
    assert_allclose(frames.range_projector() + frames.normal_projector(),
                    np.eye(3), atol=1e-12)
    assert_allclose(frames.vertical_projector() +
                    frames.horizontal_projector(), np.eye(4), atol=1e-12)


def test_adjoint_of_linear_map(session, linear):
    f, _ = linear
    adjoint = session.maps().adjoint_at(f, [0.0] * 4, [1.0, 0.0, 0.0])
    assert_allclose(adjoint.array, [1 / ROOT2, 0.0, -1 / ROOT2, 0.0])
    assert_allclose(f.jacobian(adjoint.base.array) @ adjoint.array,
                    [1.0, 0.0, 0.0])
    with raises(ValueError):
        session.maps().adjoint_at(f, [0.0] * 4, [1.0, 0.0])


def test_constant_rank_and_isometry(session, linear):
    f, points = linear
    rank = session.maps().check_constant_rank(f, points)
    assert rank.verdict is Verdict.PASS
    assert rank.details["ranks"] == [2]
    assert rank.details["proper"]
    riemannian = session.maps().check_riemannian_map(f, points)
    assert riemannian.verdict is Verdict.PASS
    assert riemannian.residual("isometry") < 1e-12


def test_rank_drop_is_reported(session):
    f = MapSpec.parse("f", flat("A", ["x", "y"]), flat("B", ["u"]),
                      ["x * y"])
    points = [[1.0, 1.0], [0.0, 0.0], [2.0, -1.0]]
    report = session.maps().check_constant_rank(f, points)
    assert report.verdict is Verdict.FAIL
    assert report.details["ranks"] == [0, 1]
    assert report.worst_offender.point == [0.0, 0.0]
    riemannian = session.maps().check_riemannian_map(f, points)
    assert riemannian.verdict is Verdict.VACUOUS_PASS


def test_constant_rank_needs_two_samples(session, linear):
    f, _ = linear
    report = session.maps().check_constant_rank(f, [[0.0] * 4])
    assert report.verdict is Verdict.VACUOUS_PASS


def test_scaled_map_is_not_riemannian(session):
    f = MapSpec.parse("f", flat("A", ["x", "y"]), flat("B", ["u"]),
                      ["2 * x"])
    report = session.maps().check_riemannian_map(f, [[0.0, 0.0],
                                                     [1.0, 2.0]])
    assert report.verdict is Verdict.FAIL
    assert report.residual("isometry") == approx(3.0)


def test_half_plane_projection_is_riemannian(session, poincare):
    # |d/dx| = 1/y on H2, so s = x is Riemannian only along y = 1
    f, _ = poincare
    report = session.maps().check_riemannian_map(f, [[0.0, 1.0],
                                                     [0.5, 1.0]])
    assert report.verdict is Verdict.PASS
    report = session.maps().check_riemannian_map(f, [[0.0, 2.0],
                                                     [0.5, 2.0]])
    assert report.verdict is Verdict.FAIL


def test_pivot_keeps_frames_continuous(session, cylinder):
    f, _ = cylinder
    maps = session.maps()
    anchor = maps.split_at(f, [0.2, 0.1, -0.3, 0.4])
    moved = maps.split_at(f, [0.2 + 1e-4, 0.1, -0.3, 0.4], anchor.pivot)
    assert np.linalg.norm(moved.normal - anchor.normal) < 1e-3
    assert np.linalg.norm(moved.range - anchor.range) < 1e-3


def test_rank_change_against_pivot(session):
    f = MapSpec.parse("f", flat("A", ["x", "y"]), flat("B", ["u"]),
                      ["x * y"])
    pivot = session.maps().split_at(f, [1.0, 1.0]).pivot
    with raises(FrameBundle.RankMismatchException):
        session.maps().split_at(f, [0.0, 0.0], pivot)


def test_frame_field_kinds(session, linear):
    f, _ = linear
    field = session.maps().frame_field(f, [0.0] * 4, "normal")
    assert field.at(np.array([0.5, 0.5, 0.5, 0.5])).shape == (3, 1)
    with raises(TypeError):
        session.maps().frame_field(f, [0.0] * 4, "diagonal")


@settings(max_examples=25, deadline=None)
@given(lists(floats(min_value=-3, max_value=3), min_size=4, max_size=4))
def test_cylinder_map_is_riemannian_everywhere(x):
    f = Catalog.load("lagrangian_cylinder").subject()
    with Session.Builder().create() as session:
        frames = session.maps().split_at(f, x)
        assert session.maps().riemannian_residual(frames) < 1e-12
        assert frames.rank == 2


def test_parallel_sampling_matches_serial(linear):
    f, points = linear
    conf = Session.Configuration.Builder().set_threads(4).build()
    with Session.Builder(conf).create() as parallel:
        threaded = parallel.maps().check_riemannian_map(f, points)
    with Session.Builder().create() as serial:
        single = serial.maps().check_riemannian_map(f, points)
    assert threaded.to_dict() == single.to_dict()


def test_closed_session_refuses_work(linear):
    f, points = linear
    session = Session.Builder().create()
    session.close()
    with raises(RuntimeError):
        session.maps().check_riemannian_map(f, points)


def test_worked_example_pushforwards(linear):
    f, _ = linear
    jacobian = f.jacobian(np.array([0.2, -0.4, 0.9, 0.1]))
    assert_allclose(jacobian @ [1.0, 0.0, -1.0, 0.0], [ROOT2, 0.0, 0.0],
                    atol=1e-12)
    assert_allclose(jacobian @ [0.0, 1.0, 0.0, 1.0], [0.0, 0.0, ROOT2],
                    atol=1e-12)
