import math

import numpy as np

from pytest import approx
from pytest import mark
from pytest import raises
from hypothesis import given
from hypothesis.strategies import floats
from hypothesis.strategies import lists
from hypothesis.strategies import tuples

from rimaps.geometry import ManifoldSpec
from rimaps.maps import MapSpec
from rimaps.verdicts import CheckRegistry
from rimaps.verdicts import Verdict
from rimaps.verdicts import VerificationReport

ROOT2 = math.sqrt(2.0)


def outward(x):
    u = (x[0] - x[2]) / ROOT2
    return np.array([math.cos(u), math.sin(u), 0.0])


@mark.parametrize("verdict failure".split(),
                  ((Verdict.PASS, False),
                   (Verdict.VACUOUS_PASS, False),
                   (Verdict.FAIL, True),
                   (Verdict.INCONSISTENT, True),
                   (Verdict.ERROR, True)))
def test_failure_verdicts(verdict, failure):
    assert verdict.is_failure() == failure


def test_accumulator_keeps_maxima_and_worst_point():
    accumulator = VerificationReport.Accumulator()
    accumulator.add([0.0], {"a": 1e-12, "b": 0.5})
    accumulator.add([1.0], {"a": 2.0, "b": 0.1}, "near the pole")
    report = accumulator.build("demo", 1e-9)
    assert report.verdict is Verdict.FAIL
    assert report.residuals == {"a": 2.0, "b": 0.5}
    assert report.samples == 2
    assert report.worst_offender.point == [1.0]
    assert report.worst_offender.detail == "a = 2.0; near the pole"


def test_nan_residual_counts_as_failure():
    accumulator = VerificationReport.Accumulator()
    accumulator.add([0.0, 0.0], {"a": float("nan")})
    report = accumulator.build("demo", 1.0)
    assert report.verdict is Verdict.FAIL
    assert report.max_residual == math.inf


def test_empty_accumulator_is_vacuous():
    report = VerificationReport.Accumulator().build("demo", 1e-9)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert report.passed
    assert report.to_dict()["worst_offender"] == {"point": None,
                                                  "detail": "no samples"}


residual_sets = lists(tuples(floats(min_value=-5, max_value=5),
                             floats(min_value=0, max_value=10)),
                      min_size=1,
                      max_size=6)


@given(residual_sets, residual_sets)
def test_merge_is_commutative(left, right):
    def collect(pairs):
        accumulator = VerificationReport.Accumulator()
        for point, value in pairs:
            accumulator.add([point], {"r": value})
        return accumulator

    one = collect(left).merge(collect(right))
    two = collect(right).merge(collect(left))
    assert one.samples == two.samples
    assert one.maxima == two.maxima
    assert one.worst == two.worst


def test_registry_order():
    names = CheckRegistry.names()
    assert names[:4] == ["almost_hermitian", "kahler", "constant_rank",
                         "riemannian_map"]
    assert names[-1] == "pluriharmonic_rigidity"
    assert len(names) == len(set(names)) == 16
    assert CheckRegistry.manifold_names() == ["almost_hermitian", "kahler"]


def test_unknown_check():
    with raises(CheckRegistry.UnknownCheckException) as info:
        CheckRegistry.get("harmonic")
    assert isinstance(info.value, KeyError)


def test_registry_defaults(session):
    assert CheckRegistry.get("totally_geodesic_map").default_tolerance(
        session) == 1e-9
    assert CheckRegistry.get("range_lemma").default_tolerance(
        session) == 1e-6
    assert CheckRegistry.get("dimension_counts").default_tolerance(
        session) == 0.5


def test_manifold_check_on_map_runs_on_source(session, linear):
    f, points = linear
    report = CheckRegistry.run(session, "kahler", f, points)
    assert report.verdict is Verdict.PASS
    assert report.tolerance == 1e-9


def test_pluriharmonic(session, linear, cylinder, circle):
    checks = session.verdicts()
    f, points = linear
    assert checks.check_pluriharmonic(f, points).verdict is Verdict.PASS
    f, points = cylinder
    report = checks.check_pluriharmonic(f, points)
    assert report.verdict is Verdict.FAIL
    f, points = circle
    report = checks.check_pluriharmonic(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS


def test_range_lemma(session, cylinder, circle):
    checks = session.verdicts()
    for f, points in (cylinder, circle):
        report = checks.check_range_lemma(f, points)
        assert report.verdict is Verdict.PASS
        assert set(report.residuals) == {"horizontal_range_part",
                                         "vertical_normal_part"}


def test_dimension_counts(session, line, wrapped, holomorphic):
    checks = session.verdicts()
    f, points = line
    report = checks.check_dimension_counts(f, points)
    assert report.verdict is Verdict.PASS
    assert report.details["mu_dims"] == [0]
    assert report.residual("forced_anti_invariance") == 0.0
    f, points = wrapped
    report = checks.check_dimension_counts(f, points)
    assert report.verdict is Verdict.PASS
    assert report.details["mu_dims"] == [2]
    f, points = holomorphic
    report = checks.check_dimension_counts(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert "not anti-invariant" in report.worst_offender.detail


def test_foliations_of_lagrangian_cylinder(session, cylinder):
    checks = session.verdicts()
    f, points = cylinder
    vertical = checks.check_vertical_foliation(f, points)
    assert vertical.verdict is Verdict.PASS
    assert vertical.details == {"condition": "holds", "conclusion": "holds"}
    horizontal = checks.check_horizontal_foliation(f, points)
    assert horizontal.verdict is Verdict.PASS
    assert horizontal.residual("range_lemma") < 1e-6
    product = checks.check_local_product(f, points)
    assert product.verdict is Verdict.PASS
    assert product.details == {"vertical_foliation": "pass",
                               "horizontal_foliation": "pass"}


def test_gates(session, circle):
    checks = session.verdicts()
    f, points = circle
    report = checks.check_vertical_foliation(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert report.worst_offender.detail == \
        "gate failed: S1 declares no complex structure"
    product = checks.check_local_product(f, points)
    assert product.verdict is Verdict.VACUOUS_PASS


def test_non_kahler_source_fails_the_gate(session):
    source = ManifoldSpec.Builder("M", ["x", "y", "u", "v"]) \
        .set_metric(0, 0, "exp(u)") \
        .set_metric(1, 1, "exp(u)") \
        .set_metric(2, 2, 1) \
        .set_metric(3, 3, 1) \
        .set_canonical_structure() \
        .build()
    target = ManifoldSpec.Builder("R", ["s"]).set_identity_metric().build()
    f = MapSpec.parse("f", source, target, ["v"])
    report = session.verdicts().check_geodesic_criterion(
        f, [[0.0, 0.0, 0.1, 0.0], [0.5, 0.5, 0.2, 1.0]])
    assert report.verdict is Verdict.VACUOUS_PASS
    assert report.worst_offender.detail == "gate failed: kahler is fail"


def test_adjoint_shape_defect(session, cylinder):
    f, _ = cylinder
    x = np.array([0.4, -0.3, 1.1, 0.2])
    defect = session.verdicts().adjoint_shape_defect(
        f, x, np.array([0.0, 1.0, 0.0, -1.0]), outward(x))
    assert defect == approx(ROOT2, rel=1e-6)


def test_geodesic_criterion(session, linear, cylinder, wrapped):
    checks = session.verdicts()
    f, points = linear
    assert checks.check_geodesic_criterion(f, points).verdict is Verdict.PASS
    f, points = cylinder
    report = checks.check_geodesic_criterion(f, points)
    assert report.verdict is Verdict.FAIL
    assert report.residual("adjoint_shape_in_mu") == approx(1.0, rel=1e-6)
    assert report.residual("adjoint_shape_in_j_kernel") < 1e-6
    assert report.details == {"condition": "fails", "conclusion": "fails"}
    f, points = wrapped
    report = checks.check_geodesic_criterion(f, points)
    assert report.verdict is Verdict.FAIL
    assert report.residual("adjoint_shape_in_mu") == 0.0
    assert report.residual("adjoint_shape_in_j_kernel") == approx(1.0,
                                                                  rel=1e-6)


def test_disagreeing_sides_are_inconsistent(session, cylinder):
    # a loose tolerance accepts the condition but not the conclusion
    f, points = cylinder
    report = session.verdicts().check_geodesic_criterion(f, points, 1.5)
    assert report.verdict is Verdict.INCONSISTENT
    assert report.details["condition"] == "holds"
    assert report.details["conclusion"] == "fails"
    assert report.worst_offender.detail.startswith("sides disagree")


def test_umbilical_lagrangian(session, cylinder, line):
    checks = session.verdicts()
    f, points = cylinder
    report = checks.check_umbilical_lagrangian(f, points)
    assert report.verdict is Verdict.PASS
    assert report.residual("mean_curvature") < 1e-6
    f, points = line
    report = checks.check_umbilical_lagrangian(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert "dim ker F_* = 1" in report.worst_offender.detail


def test_pluriharmonic_rigidity(session, linear, cylinder, wrapped):
    checks = session.verdicts()
    f, points = cylinder
    report = checks.check_pluriharmonic_rigidity(f, points)
    assert report.verdict is Verdict.PASS
    assert report.residuals == {"implication": 0.0}
    assert report.details["pluriharmonic"] == "fail"
    assert report.details["totally_geodesic_map"] == "fail"
    f, points = linear
    report = checks.check_pluriharmonic_rigidity(f, points)
    assert report.verdict is Verdict.PASS
    assert report.details["pluriharmonic"] == "pass"
    f, points = wrapped
    report = checks.check_pluriharmonic_rigidity(f, points)
    assert report.verdict is Verdict.VACUOUS_PASS
    assert "not Lagrangian" in report.worst_offender.detail
