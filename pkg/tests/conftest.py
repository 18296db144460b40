from pytest import fixture

from rimaps.cli import Catalog
from rimaps.core import Session


def shipped(name):
    """Subject of a shipped scenario together with its sample points."""
    scenario = Catalog.load(name)
    return scenario.subject(), scenario.sampling.draw()


@fixture
def session():
    with Session.Builder().create() as s:
        yield s


@fixture
def linear():
    return shipped("linear_lagrangian")


@fixture
def cylinder():
    return shipped("lagrangian_cylinder")


@fixture
def circle():
    return shipped("circle_inclusion")


@fixture
def wrapped():
    return shipped("cylinder_inclusion")


@fixture
def line():
    return shipped("line_projection")


@fixture
def holomorphic():
    return shipped("invariant_projection")


@fixture
def poincare():
    return shipped("poincare_fibers")


@fixture
def sphere():
    return shipped("sphere_chart")
