import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from okaforge.algebra import FactoredRational, GaussianRational as GR, RationalFunction
from okaforge.domains import (
    Hole,
    PuncturedCircularDomain,
    PuncturedPlane,
    WindingClass,
    classify_map,
    reduce_to_plane,
    validate,
)
from okaforge.errors import InvalidDomain, InvalidSecondComponent, ShapeError
from okaforge.maps import ExpLinear, MapPair

Z = RationalFunction.identity()
HALF = Fraction(1, 2)


def names(violations):
    return sorted(v.constraint for v in violations)


def test_valid_domain():
    D = PuncturedCircularDomain([Hole(GR(0), Fraction(1, 4))], [GR(HALF)])
    assert validate(D) == []


@pytest.mark.parametrize("holes,punctures,expected", [
    ([Hole(GR(0), 0)], [], ["radius_positive"]),
    ([Hole(GR(HALF), HALF)], [], ["hole_inside_disc"]),
    ([Hole(GR(Fraction(1, 4)), Fraction(1, 5)), Hole(GR(Fraction(-1, 8)), Fraction(1, 5))], [], ["hole_separation"]),
    ([], [GR(1)], ["puncture_in_disc"]),
    ([Hole(GR(0), Fraction(1, 4))], [GR(Fraction(1, 4))], ["puncture_outside_holes"]),
    ([], [GR(0), GR(0)], ["punctures_distinct"]),
])
def test_each_constraint_reported(holes, punctures, expected):
    assert names(validate(PuncturedCircularDomain(holes, punctures))) == expected


def test_boundary_cases_are_exact():
    # tangent to the unit circle: |c| + r = 1 is not allowed
    assert names(validate(PuncturedCircularDomain([Hole(GR(Fraction(3, 4)), Fraction(1, 4))]))) == ["hole_inside_disc"]
    # touching holes are not separated
    D = PuncturedCircularDomain([Hole(GR(Fraction(1, 4)), Fraction(1, 8)), Hole(GR(Fraction(-1, 4)), Fraction(3, 8))])
    assert names(validate(D)) == ["hole_separation"]


def test_classify_plane():
    X = PuncturedPlane([GR(1), GR(-1), GR(0)])
    psi = MapPair(Z, FactoredRational(1, [(GR(1), 1), (GR(-1), -1)]))
    assert classify_map(psi, X).puncture_windings == (1, -1, 0)
    assert classify_map(MapPair(Z, ExpLinear(1)), X).puncture_windings == (0, 0, 0)


def test_classify_rejects_zero_in_domain():
    X = PuncturedPlane([GR(0)])
    with pytest.raises(InvalidSecondComponent):
        classify_map(MapPair(Z, FactoredRational(1, [(GR(2), 1)])), X)


def test_classify_circular_counts_closed_hole():
    D = PuncturedCircularDomain([Hole(GR(0), Fraction(1, 4))], [GR(HALF)])
    b1 = GR(0, Fraction(1, 4))
    g = FactoredRational(1, [(GR(0), 2), (b1, -1), (GR(0, 1), -1), (GR(3), 1), (GR(HALF), 1)])
    w = classify_map(MapPair(Z, g), D)
    assert w.puncture_windings == (1,) and w.hole_windings == (1,)


def test_shape_error():
    with pytest.raises(ShapeError):
        WindingClass([1, 2]).check_shape(PuncturedPlane([GR(0)]))


def test_reduction_examples():
    D = PuncturedCircularDomain([], [GR(HALF), GR(-HALF)])
    r = reduce_to_plane(D, WindingClass([3, 0], []))
    assert r.plane.punctures == (GR(HALF), GR(-HALF), GR(0, 1))
    assert r.windings.puncture_windings == (3, 0, -1)
    D = PuncturedCircularDomain([Hole(GR(0), Fraction(1, 4))], [GR(HALF)])
    r = reduce_to_plane(D, WindingClass([5], [0]))
    assert r.plane.punctures == (GR(HALF), GR(0, 1), GR(0, Fraction(1, 4)), GR(0))
    assert r.windings.puncture_windings == (5, -1, -1, 1)
    assert r.boundary_points() == [GR(0, 1), GR(0, Fraction(1, 4))]


def test_reduction_rejects_invalid_domain():
    with pytest.raises(InvalidDomain):
        reduce_to_plane(PuncturedCircularDomain([], [GR(2)]), WindingClass([0]))


@given(st.integers(0, 10_000))
def test_reduced_plane_classifies_back(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 2)
    holes = [Hole(GR(Fraction(2 * i - 1, 2) if m == 2 else 0, Fraction(-1, 3)), Fraction(1, 8)) for i in range(m)]
    punctures = [GR(Fraction(1, 5), Fraction(k, 5)) for k in range(rng.randint(0, 3))]
    D = PuncturedCircularDomain(holes, punctures)
    assert validate(D) == []
    w = WindingClass([rng.randint(-3, 3) for _ in punctures], [rng.randint(-3, 3) for _ in holes])
    red = reduce_to_plane(D, w)
    g = FactoredRational(1, [(p, k) for p, k in zip(red.plane.punctures, red.windings.puncture_windings)])
    assert classify_map(MapPair(Z, g), D) == w
