"""Domains, winding classes, validation and the reduction of circular domains to planes."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .algebra import GaussianRational, I
from .errors import InvalidDomain, InvalidSecondComponent, ShapeError

__all__ = [
    "PuncturedPlane",
    "Hole",
    "PuncturedCircularDomain",
    "WindingClass",
    "Violation",
    "MarkedPoint",
    "ReductionResult",
    "validate",
    "classify_map",
    "reduce_to_plane",
    "hole_marked_point",
]

GR = GaussianRational


def _gr_tuple(values):
    return tuple(GR.coerce(v) for v in values)


@dataclass(frozen=True)
class PuncturedPlane:
    """The plane with finitely many points removed."""

    punctures: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "punctures", _gr_tuple(self.punctures))

    @property
    def n(self):
        return len(self.punctures)

    def contains(self, z):
        return GR.coerce(z) not in self.punctures

    def to_json(self):
        return {"kind": "plane", "punctures": [a.to_json() for a in self.punctures]}


@dataclass(frozen=True)
class Hole:
    center: GaussianRational
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", GR.coerce(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))

    def closed_contains(self, z):
        """Exact test ``|z - c| <= r``."""
        return (GR.coerce(z) - self.center).norm() <= self.radius ** 2

    def to_json(self):
        r = self.radius
        return {"center": self.center.to_json(), "radius": f"{r.numerator}/{r.denominator}"}


@dataclass(frozen=True)
class PuncturedCircularDomain:
    """Unit disc minus closed holes and finitely many points."""

    holes: Tuple[Hole, ...] = ()
    punctures: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        holes = tuple(h if isinstance(h, Hole) else Hole(*h) for h in self.holes)
        object.__setattr__(self, "holes", holes)
        object.__setattr__(self, "punctures", _gr_tuple(self.punctures))

    @property
    def n(self):
        return len(self.punctures)

    @property
    def m(self):
        return len(self.holes)

    def marked_points(self):
        """``b_0 = i`` followed by ``b_i = c_i + r_i i``."""
        return [I] + [hole_marked_point(h) for h in self.holes]

    def to_json(self):
        return {
            "kind": "circular",
            "holes": [h.to_json() for h in self.holes],
            "punctures": [a.to_json() for a in self.punctures],
        }


def hole_marked_point(hole):
    return hole.center + GR(hole.radius) * I


@dataclass(frozen=True)
class WindingClass:
    puncture_windings: Tuple[int, ...] = ()
    hole_windings: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "puncture_windings", tuple(int(k) for k in self.puncture_windings))
        object.__setattr__(self, "hole_windings", tuple(int(s) for s in self.hole_windings))

    def is_null(self):
        return not any(self.puncture_windings) and not any(self.hole_windings)

    def check_shape(self, domain):
        if len(self.puncture_windings) != len(domain.punctures):
            raise ShapeError(
                f"{len(self.puncture_windings)} puncture windings for {len(domain.punctures)} punctures")
        holes = len(getattr(domain, "holes", ()))
        if len(self.hole_windings) != holes:
            raise ShapeError(f"{len(self.hole_windings)} hole windings for {holes} holes")

    def to_json(self):
        return {"punctures": list(self.puncture_windings), "holes": list(self.hole_windings)}


@dataclass(frozen=True)
class Violation:
    constraint: str
    indices: Tuple[int, ...]
    detail: str = ""

    def to_json(self):
        return {"constraint": self.constraint, "indices": list(self.indices), "detail": self.detail}


def _pairwise_distinct(points, name):
    out = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                out.append(Violation(name, (i, j), f"{points[i]} repeated"))
    return out


def validate(domain) -> List[Violation]:
    """Every violated invariant of ``domain``; an empty list means valid.

    All comparisons are exact: ``|w| < t`` with rational ``t >= 0`` is tested
    as ``|w|^2 < t^2`` (with the sign of ``t`` handled separately).
    """
    if isinstance(domain, PuncturedPlane):
        return _pairwise_distinct(domain.punctures, "punctures_distinct")
    out = []
    holes = domain.holes
    for i, h in enumerate(holes):
        if h.radius <= 0:
            out.append(Violation("radius_positive", (i,), f"r={h.radius}"))
        # r < 1 - |c|  <=>  1 - r > 0 and |c|^2 < (1 - r)^2
        slack = 1 - h.radius
        if slack <= 0 or h.center.norm() >= slack ** 2:
            out.append(Violation("hole_inside_disc", (i,), f"r={h.radius} >= 1-|c| for c={h.center}"))
    for i in range(len(holes)):
        for j in range(i + 1, len(holes)):
            s = holes[i].radius + holes[j].radius
            # s < |c_i - c_j| with s > 0
            if (holes[i].center - holes[j].center).norm() <= s ** 2:
                out.append(Violation("hole_separation", (i, j),
                                     f"r_{i}+r_{j}={s} >= |c_{i}-c_{j}|"))
    for k, a in enumerate(domain.punctures):
        if a.norm() >= 1:
            out.append(Violation("puncture_in_disc", (k,), f"|{a}| >= 1"))
        for i, h in enumerate(holes):
            if h.closed_contains(a):
                out.append(Violation("puncture_outside_holes", (k, i), f"{a} lies in closed hole {i}"))
    out.extend(_pairwise_distinct(domain.punctures, "punctures_distinct"))
    return out


def _hole_index(domain, z):
    for i, h in enumerate(domain.holes):
        if h.closed_contains(z):
            return i
    return None


def _outside_closed_disc(z):
    return GR.coerce(z).norm() > 1


def classify_map(map_pair, domain) -> WindingClass:
    """Winding numbers of the second component about every puncture (and hole).

    For a plane, the winding about ``a_j`` is the order of the second component
    at ``a_j``. For a circular domain, the winding about a hole is the sum of
    orders at zeros and poles in the closed hole disc; zeros and poles outside
    the closed unit disc, or at the marked boundary points, do not wind.
    """
    second = map_pair.second
    holes = getattr(domain, "holes", ())
    if not hasattr(second, "factors"):
        # exponential of a linear function: no zeros or poles at all
        return WindingClass([0] * len(domain.punctures), [0] * len(holes))
    punctures = set(domain.punctures)
    circular = isinstance(domain, PuncturedCircularDomain)
    marked = set(domain.marked_points()) if circular else set()
    hole_w = [0] * len(holes)
    for root, mult in second.factors:
        if root in punctures:
            continue
        if not circular:
            raise InvalidSecondComponent(f"second component has a zero/pole at {root}, which lies in the domain")
        i = _hole_index(domain, root)
        if i is not None:
            hole_w[i] += mult
        elif root in marked or _outside_closed_disc(root):
            continue
        else:
            raise InvalidSecondComponent(f"second component has a zero/pole at {root}, which lies in the domain")
    return WindingClass([second.multiplicity(a) for a in domain.punctures], hole_w)


@dataclass(frozen=True)
class MarkedPoint:
    role: str  # "puncture", "boundary" (a b_i) or "center" (a c_i)
    index: int
    point: GaussianRational

    def to_json(self):
        return {"role": self.role, "index": self.index, "point": self.point.to_json()}


@dataclass(frozen=True)
class ReductionResult:
    plane: PuncturedPlane
    windings: WindingClass
    marked_points: Tuple[MarkedPoint, ...] = field(default=())

    def boundary_points(self):
        return [mp.point for mp in self.marked_points if mp.role == "boundary"]

    def to_json(self):
        return {
            "plane": self.plane.to_json(),
            "windings": self.windings.to_json(),
            "marked_points": [mp.to_json() for mp in self.marked_points],
        }


def reduce_to_plane(domain: PuncturedCircularDomain, windings: WindingClass) -> ReductionResult:
    """Auxiliary punctured plane ``Y`` and its winding vector.

    Punctures of ``Y`` are ordered ``a_1..a_n, b_0..b_m, c_1..c_m`` with
    windings ``k_j``, ``-1`` and ``s_i + 1`` respectively.
    """
    windings.check_shape(domain)
    bad = validate(domain)
    if bad:
        raise InvalidDomain("; ".join(f"{v.constraint}{list(v.indices)}" for v in bad))
    bs = domain.marked_points()
    cs = [h.center for h in domain.holes]
    points = list(domain.punctures) + bs + cs
    kw = list(windings.puncture_windings) + [-1] * len(bs) + [s + 1 for s in windings.hole_windings]
    marked = [MarkedPoint("puncture", j, a) for j, a in enumerate(domain.punctures)]
    marked += [MarkedPoint("boundary", i, b) for i, b in enumerate(bs)]
    marked += [MarkedPoint("center", i + 1, c) for i, c in enumerate(cs)]
    if len(set(points)) != len(points):
        raise InvalidDomain("reduced plane would have coincident punctures")
    return ReductionResult(PuncturedPlane(points), WindingClass(kw), tuple(marked))
