"""Explicit immersions and embeddings of punctured planes and punctured circular domains."""

from dataclasses import dataclass, field
import random
from fractions import Fraction
from typing import List, Optional

from .algebra import FactoredRational, GaussianRational, Polynomial, RationalFunction, Z, poly_gcd
from .domains import (
    PuncturedCircularDomain,
    PuncturedPlane,
    ReductionResult,
    WindingClass,
    reduce_to_plane,
    validate,
)
from .doublepoints import (
    FINITE,
    check_fiber_injectivity,
    common_component,
    fiber_values_regular,
    find_regular_value,
    pair_system,
)
from .errors import InvalidDomain, InvalidParameter, SearchExhausted, WrongBranch
from .maps import ExpLinear, MapPair, Scalar
from .projection import (
    ProjectionCertificate,
    pick_generic_d,
    remediate_thetas,
    theta_certificate,
)
from .verifiers import check_immersion, check_properness, check_winding

__all__ = [
    "NotCovered",
    "PerturbationLog",
    "CircularEmbedding",
    "CircularImmersion",
    "build_null_immersion",
    "build_nonnull_immersion",
    "build_embedding_plane",
    "build_embedding_circular",
    "build_circular_immersion",
    "match_plane_case",
    "match_circular_case",
    "pick_generic_d",
    "first_non_puncture",
]

GR = GaussianRational
DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class NotCovered:
    """The requested class matches none of the explicit constructions."""

    reason: str

    def to_json(self):
        return {"covered": False, "reason": self.reason}


@dataclass
class PerturbationLog:
    seed: int
    attempts: List[dict] = field(default_factory=list)
    final: Optional[MapPair] = None
    order: tuple = ()
    regular_value: Optional[GaussianRational] = None

    def to_json(self):
        return {
            "seed": self.seed,
            "order": list(self.order),
            "attempts": self.attempts,
            "regular_value": self.regular_value.to_json() if self.regular_value is not None else None,
            "final": self.final.to_expr() if self.final is not None else None,
        }


def _linear_product(points):
    return Polynomial.from_roots(list(points))


def first_non_puncture(punctures):
    """Smallest non-negative integer that is not a puncture."""
    c = 0
    while GR(c) in punctures:
        c += 1
    return GR(c)


# -- null class ------------------------------------------------------------------------


def build_null_immersion(X: PuncturedPlane, c) -> MapPair:
    """``((z - c)^(n+1) / prod (z - a_j), exp(z))``."""
    c = GR.coerce(c)
    if X.n < 1:
        raise InvalidParameter("the null construction needs at least one puncture")
    if c in X.punctures:
        raise InvalidParameter(f"c = {c} is a puncture")
    first = RationalFunction(Polynomial.linear(c) ** (X.n + 1), _linear_product(X.punctures))
    return MapPair(first, ExpLinear(Scalar(GR(1))))


# -- non-null class ----------------------------------------------------------------------


def _small_gaussian(rng):
    while True:
        v = GR(rng.randint(-6, 6), rng.randint(-6, 6)) / rng.randint(1, 3)
        if not v.is_zero():
            return v


_UNITS = (GR(1), GR(0, 1), GR(-1), GR(0, -1))


def _certify_candidate(psi, X, w, g, a_seed):
    """Run every check; return (failed check or None, regular value used)."""
    f = psi.first
    if poly_gcd(f.num, f.den).degree > 0:
        return "coprime", None
    if not check_immersion(psi, X).passed:
        return "immersion", None
    if not check_properness(psi, X).passed:
        return "properness", None
    if not check_winding(psi, X, w).passed:
        return "winding", None
    if common_component(pair_system(f, g)).finiteness != FINITE:
        return "common_component", None
    a = find_regular_value(g, X, seed=a_seed)
    if not fiber_values_regular(f, g, a):
        return "fiber_regular", a
    if not check_fiber_injectivity(f, g, a).passed:
        return "fiber_injectivity", a
    return None, a


def build_nonnull_immersion(X: PuncturedPlane, w: WindingClass, seed=0, budget=DEFAULT_BUDGET):
    """Proper immersion ``(p/q, g)`` with finitely many identified pairs in the class ``w``.

    ``g`` collects the punctures with nonzero winding, ``q`` the others. The
    numerator ``p`` starts as ``z^(deg q + 1) + beta`` and is re-drawn or
    perturbed (never ``q`` or ``g``) until every certificate passes.
    """
    w.check_shape(X)
    ks = w.puncture_windings
    if not any(ks):
        raise WrongBranch("all windings vanish; use the null construction")
    nonzero = [j for j, k in enumerate(ks) if k]
    zero = [j for j, k in enumerate(ks) if not k]
    log = PerturbationLog(seed, order=tuple(nonzero + zero))
    g = FactoredRational(GR(1), [(X.punctures[j], ks[j]) for j in nonzero])
    if not zero:
        psi = MapPair(RationalFunction.identity(), g)
        log.final = psi
        return psi, log
    q = _linear_product(X.punctures[j] for j in zero)
    m = q.degree
    rng = random.Random(seed)
    lead = Polynomial.monomial(m + 1)
    beta = _small_gaussian(rng)
    p = lead + Polynomial.constant(beta)
    a_seed = seed
    tweak = 0
    immersion_failures = 0
    for attempt in range(budget):
        psi = MapPair(RationalFunction(p, q), g)
        failed, a = _certify_candidate(psi, X, w, g, a_seed)
        if failed is None:
            log.final = psi
            log.regular_value = a
            log.attempts.append({"attempt": attempt, "p": p.to_expr(), "failed": None})
            return psi, log
        entry = {"attempt": attempt, "p": p.to_expr(), "failed": failed}
        if failed == "fiber_injectivity":
            # move one non-leading coefficient by a small amount
            tweak += 1
            idx = tweak % (m + 1)
            delta = _UNITS[tweak % 4] * GR(Fraction(1, 10 ** (1 + tweak // (m + 1))))
            p = p + Polynomial.monomial(idx, delta)
            entry["perturbation"] = f"coefficient {idx} += {delta}"
        elif failed == "fiber_regular":
            a_seed += 1
            entry["perturbation"] = "new regular value"
        else:
            if failed == "immersion":
                immersion_failures += 1
            beta = _small_gaussian(rng)
            p = lead + Polynomial.constant(beta)
            if immersion_failures > 1:
                p = p + Polynomial.monomial(1, _small_gaussian(rng))
            entry["perturbation"] = f"new p = {p.to_expr()}"
        log.attempts.append(entry)
    raise SearchExhausted(f"no admissible p within {budget} attempts", log)


# -- embeddings of punctured planes ---------------------------------------------------------


def match_plane_case(ks):
    """Case number 1-4 of the plane embedding constructions, or None."""
    n = len(ks)
    zeros = [j for j, k in enumerate(ks) if k == 0]
    nonzero = [j for j, k in enumerate(ks) if k != 0]
    if n >= 1 and not zeros:
        return 1
    if n >= 2 and len(zeros) == 1 and sum(ks) != 0:
        return 2
    if n >= 3 and len(nonzero) == 2 and sorted(ks[j] for j in nonzero) == [-1, 1]:
        return 3
    if n >= 3 and len(nonzero) == 1 and abs(ks[nonzero[0]]) == 1:
        return 4
    return None


def build_embedding_plane(X: PuncturedPlane, w: WindingClass, c=None):
    """Explicit embedding for the covered classes, else :class:`NotCovered`."""
    w.check_shape(X)
    ks = w.puncture_windings
    a = X.punctures
    case = match_plane_case(ks)
    zeros = [j for j, k in enumerate(ks) if k == 0]
    nonzero = [j for j, k in enumerate(ks) if k != 0]
    if case is None:
        if not any(ks):
            return NotCovered("null class: no explicit embedding is known")
        return NotCovered("winding class matches none of the explicit constructions")
    g = FactoredRational(GR(1), [(a[j], ks[j]) for j in nonzero])
    if case == 1:
        first = RationalFunction.identity()
    elif case == 2:
        first = RationalFunction(Polynomial((1,)), Polynomial.linear(a[zeros[0]]))
    elif case == 3:
        c = first_non_puncture(a) if c is None else GR.coerce(c)
        if c in a:
            raise InvalidParameter("c must not be a puncture")
        first = RationalFunction(Polynomial.linear(c) ** (len(ks) - 1), _linear_product(a[j] for j in zeros))
    else:
        first = RationalFunction(Polynomial((1,)), _linear_product(a[j] for j in zeros))
    return MapPair(first, g)


# -- punctured circular domains ---------------------------------------------------------------


@dataclass
class CircularEmbedding:
    case: int
    reduction: ReductionResult
    map: MapPair
    projection: ProjectionCertificate
    initial_projection: Optional[ProjectionCertificate] = None
    d: Optional[GaussianRational] = None
    remediated: bool = False

    def __iter__(self):
        return iter((self.reduction, self.map, self.projection))

    def to_json(self):
        out = {
            "covered": True,
            "case": self.case,
            "reduction": self.reduction.to_json(),
            "map": self.map.to_json(),
            "projection": self.projection.to_json(),
            "remediated": self.remediated,
        }
        if self.initial_projection is not None:
            out["initial_projection"] = self.initial_projection.to_json()
        if self.d is not None:
            out["d"] = self.d.to_json()
        return out


def match_circular_case(ks, ss):
    n, m = len(ks), len(ss)
    zeros = [j for j, k in enumerate(ks) if k == 0]
    nonzero = [j for j, k in enumerate(ks) if k != 0]
    holes_null = not any(ss)
    if n >= 1 and not zeros:
        return 1
    if n >= 1 and len(zeros) == 1:
        return 2
    if n >= 3 and holes_null and len(nonzero) == 2 and sorted(ks[j] for j in nonzero) == [-1, 1]:
        return 3
    if n >= 3 and holes_null and len(nonzero) == 1 and abs(ks[nonzero[0]]) == 1:
        return 4
    if n >= 2 and not nonzero and holes_null:
        return 5
    if n >= 2 and m == 1 and not nonzero and abs(ss[0]) == 1:
        return 6
    return None


def _separate_first(base, bs, avoid, seed):
    """Choose ``d`` so the first component ``base * (z - d)`` has separated directions."""
    d = pick_generic_d(bs, 8, seed=seed, avoid=avoid)
    first = base * RationalFunction(Polynomial.linear(d))
    initial = theta_certificate(first, bs)
    if initial.passed:
        initial.d = d
        return first, d, initial, initial, False
    min_modulus = Fraction(16)
    for attempt in range(1, 64):
        d = pick_generic_d(bs, min_modulus, seed=seed + attempt, avoid=avoid)
        first = base * RationalFunction(Polynomial.linear(d))
        cert = theta_certificate(first, bs)
        if cert.passed:
            cert.d = d
            return first, d, initial, cert, True
        min_modulus *= 2
    raise SearchExhausted("no separating d for the first component")


def build_embedding_circular(D: PuncturedCircularDomain, w: WindingClass, seed=0):
    """Explicit embedding of the bordered closure for the covered classes, else NotCovered."""
    w.check_shape(D)
    bad = validate(D)
    if bad:
        raise InvalidDomain("; ".join(f"{v.constraint}{list(v.indices)}" for v in bad))
    if D.n < 1:
        return NotCovered("at least one puncture is required")
    ks, ss = w.puncture_windings, w.hole_windings
    case = match_circular_case(ks, ss)
    if case is None:
        return NotCovered("winding class matches none of the explicit constructions")
    red = reduce_to_plane(D, w)
    a = D.punctures
    bs = D.marked_points()
    avoid = list(red.plane.punctures) + [GR(2)]
    zeros = [j for j, k in enumerate(ks) if k == 0]
    nonzero = [j for j, k in enumerate(ks) if k != 0]
    one = Polynomial((1,))
    if case in (1, 2):
        factors = [(a[j], ks[j]) for j in nonzero] + [(b, -1) for b in bs]
        factors += [(h.center, s + 1) for h, s in zip(D.holes, ss)]
        g = FactoredRational(GR(1), factors)
        initial = theta_certificate(g, bs)
        d = None
        if initial.passed:
            cert = initial
        else:
            g, d, cert = remediate_thetas(g, bs, avoid=avoid, seed=seed)
        first = RationalFunction.identity() if case == 1 else RationalFunction(one, Polynomial.linear(a[zeros[0]]))
        return CircularEmbedding(case, red, MapPair(first, g), cert, initial, d, not initial.passed)
    if case == 6:
        sign = ss[0]
        second = FactoredRational(GR(1), [(bs[1], sign), (bs[0], -sign)])
        first = RationalFunction(one, _linear_product(a))
        cert = ProjectionCertificate(
            "CStar", "pass", pattern="zero-infinity split",
            escape=[{"point": bs[1].to_json(), "order": sign}, {"point": bs[0].to_json(), "order": -sign}],
        )
        return CircularEmbedding(case, red, MapPair(first, second), cert)
    if case == 3:
        plus = next(j for j in nonzero if ks[j] == 1)
        minus = next(j for j in nonzero if ks[j] == -1)
        second = FactoredRational(GR(1), [(a[plus], 1), (a[minus], -1)])
    elif case == 4:
        second = FactoredRational(GR(1), [(a[nonzero[0]], ks[nonzero[0]])])
    else:
        second = FactoredRational(GR(1), [(GR(2), 1)])
    base = RationalFunction(one, _linear_product([a[j] for j in zeros] + bs))
    first, d, initial, cert, remediated = _separate_first(base, bs, avoid, seed)
    return CircularEmbedding(case, red, MapPair(first, second), cert, initial, d, remediated)


@dataclass
class CircularImmersion:
    reduction: ReductionResult
    plane: PuncturedPlane
    windings: WindingClass
    map: MapPair
    projection: ProjectionCertificate
    log: PerturbationLog
    d: Optional[GaussianRational] = None

    def to_json(self):
        out = {
            "reduction": self.reduction.to_json(),
            "plane": self.plane.to_json(),
            "windings": self.windings.to_json(),
            "map": self.map.to_json(),
            "projection": self.projection.to_json(),
            "log": self.log.to_json(),
        }
        if self.d is not None:
            out["d"] = self.d.to_json()
        return out


def build_circular_immersion(D: PuncturedCircularDomain, w: WindingClass, seed=0, budget=DEFAULT_BUDGET):
    """Proper immersion of a punctured circular domain via the auxiliary plane.

    The second component has a simple pole at every marked boundary point; if
    two boundary directions coincide modulo pi, a far puncture ``d`` of winding
    one is added before the plane construction runs.
    """
    red = reduce_to_plane(D, w)
    Y, wy = red.plane, red.windings
    bs = D.marked_points()
    g = FactoredRational(GR(1), [(p, k) for p, k in zip(Y.punctures, wy.puncture_windings) if k])
    cert = theta_certificate(g, bs)
    d = None
    if not cert.passed:
        _, d, cert = remediate_thetas(g, bs, avoid=list(Y.punctures), seed=seed)
        Y = PuncturedPlane(list(Y.punctures) + [d])
        wy = WindingClass(list(wy.puncture_windings) + [1])
    psi, log = build_nonnull_immersion(Y, wy, seed=seed, budget=budget)
    return CircularImmersion(red, Y, wy, psi, cert, log, d)
