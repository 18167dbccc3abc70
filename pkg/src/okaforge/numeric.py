"""Certified numeric roots of univariate polynomials.

Approximations come from the Aberth-Ehrlich iteration (double precision
kernel, then multiprecision refinement). Each approximation ``z`` of a
degree ``n`` polynomial gets the inclusion disc of radius
``n |p(z)| / |p'(z)|``, inflated by a rounding-error bound for Horner
evaluation; the disc provably contains a root. When the ``n`` discs are
pairwise disjoint each one holds exactly one simple root.
"""

from dataclasses import dataclass
import math

import mpmath
import numpy as np

from . import kernels
from .algebra import Polynomial, squarefree_decomposition
from .errors import AmbiguousRoot, PrecisionExhausted

__all__ = ["CertifiedRoot", "find_roots", "filter_points", "PRECISION_LADDER"]

PRECISION_LADDER = (64, 256, 1024)
GUARD_BITS = 32


@dataclass(frozen=True)
class CertifiedRoot:
    center: mpmath.mpc
    radius: mpmath.mpf
    multiplicity: int = 1

    def contains(self, z):
        if hasattr(z, "to_mpc"):
            z = z.to_mpc
        with mpmath.workprec(max(mpmath.mp.prec, 256)):
            z = z() if callable(z) else mpmath.mpc(z)
            return abs(z - self.center) <= self.radius

    def to_json(self, digits=30):
        return {
            "center": mp_to_json(self.center, digits),
            "radius": mpmath.nstr(self.radius, 6, min_fixed=0, max_fixed=0),
            "multiplicity": self.multiplicity,
        }


def mp_to_json(z, digits=30):
    # convert under enough precision that the printed digits are the value's own
    with mpmath.workprec(max(mpmath.mp.prec, int(digits * 3.33) + 16)):
        z = mpmath.mpc(z)
        return {
            "re": mpmath.nstr(z.real, digits, min_fixed=-4, max_fixed=8),
            "im": mpmath.nstr(z.imag, digits, min_fixed=-4, max_fixed=8),
        }


class _NotCertified(Exception):
    pass


def _ladder(precision, max_precision):
    steps = [precision] + [p for p in PRECISION_LADDER if precision < p <= max_precision]
    return steps


def _initial_circle(cs):
    """Fixed-circle starting points from a Fujiwara-type root bound."""
    n = len(cs) - 1
    lc = abs(cs[-1])
    bound = 0
    for k in range(1, n + 1):
        ratio = abs(cs[n - k]) / lc
        if ratio:
            bound = max(bound, float(ratio) ** (1.0 / k) if ratio < mpmath.mpf(10) ** 300 else float("inf"))
    radius = 2 * bound if bound and math.isfinite(bound) else 1.0
    return [radius * complex(math.cos(2 * math.pi * k / n + 0.4), math.sin(2 * math.pi * k / n + 0.4))
            for k in range(n)]


def _double_start(cs):
    n = len(cs) - 1
    try:
        lc = complex(cs[-1])
        c = np.array([complex(v) for v in cs], dtype=np.complex128) / lc
    except (OverflowError, ZeroDivisionError):
        return None
    if not np.all(np.isfinite(c)):
        return None
    z0 = _initial_circle(cs)
    if not all(math.isfinite(abs(z)) for z in z0):
        return None
    with np.errstate(all="ignore"):
        roots, _ = kernels.aberth(c, np.array(z0), 500, 1e-14)
    if not np.all(np.isfinite(roots)):
        return None
    # nudge exact coincidences apart, Aberth needs distinct iterates
    out = []
    seen = set()
    for k, r in enumerate(roots):
        r = complex(r)
        while r in seen:
            r += 1e-9 * (1 + abs(r)) * complex(math.cos(k), math.sin(k))
        seen.add(r)
        out.append(r)
    return out


def _horner(cs, z):
    p = mpmath.mpc(0)
    d = mpmath.mpc(0)
    for c in reversed(cs):
        d = d * z + p
        p = p * z + c
    return p, d


def _aberth_mp(cs, z, prec, maxiter=300):
    n = len(z)
    eps = mpmath.mpf(2) ** (-prec)
    z = [mpmath.mpc(v) for v in z]
    prev = None
    for _ in range(maxiter):
        worst = mpmath.mpf(0)
        for i in range(n):
            p, dp = _horner(cs, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else mpmath.mpf("1e-3")
            s = mpmath.mpc(0)
            zi = z[i]
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1 / diff
            denom = 1 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            z[i] = zi - w
            rel = abs(w) / max(1, abs(z[i]))
            if rel > worst:
                worst = rel
        if worst <= eps:
            break
        # rounding floor reached: further sweeps cannot improve the iterates
        if prev is not None and worst * 2 > prev and worst < eps ** 0.5:
            break
        prev = worst
    return z


def _certify(cs, z, prec):
    """Inclusion radii for approximations ``z`` of the roots of ``cs``."""
    n = len(cs) - 1
    u = mpmath.mpf(2) ** (-prec)
    abs_cs = [abs(c) for c in cs]
    radii = []
    for zi in z:
        p, dp = _horner(cs, zi)
        az = abs(zi)
        s = mpmath.mpf(0)
        sd = mpmath.mpf(0)
        for k in range(n, -1, -1):
            sd = sd * az + s
            s = s * az + abs_cs[k]
        err = (2 * n + 4) * u * s
        errd = (2 * n + 4) * u * sd
        denom = abs(dp) - errd
        if denom <= 0:
            raise _NotCertified("derivative indistinguishable from zero")
        radii.append(n * (abs(p) + err) / denom * (1 + 4 * u))
    return radii


def _disjoint(centers, radii):
    order = sorted(range(len(centers)), key=lambda k: (float(centers[k].real), float(centers[k].imag)))
    for a in range(len(order)):
        i = order[a]
        for b in range(a + 1, len(order)):
            j = order[b]
            if centers[j].real - centers[i].real > radii[i] + radii[j]:
                break
            if abs(centers[i] - centers[j]) <= radii[i] + radii[j]:
                return False
    return True


def _simple_roots(cs, prec, radius_target):
    """Certified roots of a squarefree polynomial given numerically at precision ``prec``."""
    n = len(cs) - 1
    if n == 1:
        z = [-cs[0] / cs[1]]
    elif n == 0:
        return []
    else:
        start = _double_start(cs)
        if start is None:
            start = _initial_circle(cs)
        z = _aberth_mp(cs, start, prec)
        if not all(mpmath.isfinite(v.real) and mpmath.isfinite(v.imag) for v in z):
            z = _aberth_mp(cs, _initial_circle(cs), prec)
    radii = _certify(cs, z, prec)
    if not _disjoint(z, radii):
        raise _NotCertified("inclusion discs overlap")
    if radius_target is not None and any(r >= radius_target for r in radii):
        raise _NotCertified("radius above target")
    return [CertifiedRoot(zi, ri, 1) for zi, ri in zip(z, radii)]


def _cluster(roots):
    """Merge overlapping discs into clusters (numeric multiplicity)."""
    groups = []
    for r in roots:
        hit = [g for g in groups if any(abs(r.center - o.center) <= r.radius + o.radius for o in g)]
        merged = [r]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    out = []
    for g in groups:
        if len(g) == 1:
            out.append(g[0])
            continue
        c = sum((m.center for m in g), mpmath.mpc(0)) / len(g)
        rad = max(abs(m.center - c) + m.radius for m in g)
        out.append(CertifiedRoot(c, rad, len(g)))
    return out


def _sort_key(root):
    return (float(root.center.real), float(root.center.imag))


def find_roots(poly, precision=64, *, max_precision=1024, radius_target=None):
    """Certified roots of ``poly``.

    ``poly`` is an exact :class:`Polynomial` or a callable ``prec -> coefficient
    list`` (lowest degree first, mpmath numbers) for coefficients that must be
    recomputed at each working precision. Exact inputs are split by squarefree
    decomposition first, so multiplicities are exact; numeric inputs get
    multiplicities from disc clustering.
    """
    if isinstance(poly, Polynomial):
        if poly.degree < 1:
            raise ValueError("find_roots needs a nonconstant polynomial")
        parts = squarefree_decomposition(poly)
        for prec in _ladder(precision, max_precision):
            with mpmath.workprec(prec + GUARD_BITS):
                try:
                    roots = []
                    for factor, mult in parts:
                        for r in _simple_roots(factor.to_mp_coeffs(), prec + GUARD_BITS, radius_target):
                            roots.append(CertifiedRoot(r.center, r.radius, mult))
                    if not _disjoint([r.center for r in roots], [r.radius for r in roots]):
                        raise _NotCertified("discs of distinct factors overlap")
                except _NotCertified:
                    continue
                return sorted(roots, key=_sort_key)
        raise PrecisionExhausted(f"root certification failed up to {max_precision} bits")

    for prec in _ladder(precision, max_precision):
        with mpmath.workprec(prec + GUARD_BITS):
            cs = [mpmath.mpc(c) for c in poly(prec + GUARD_BITS)]
            while cs and cs[-1] == 0:
                cs.pop()
            if len(cs) < 2:
                raise ValueError("find_roots needs a nonconstant polynomial")
            try:
                roots = _simple_roots(cs, prec + GUARD_BITS, radius_target)
            except _NotCertified:
                if prec < max_precision:
                    continue
                # repeated roots: fall back to clustering at the final precision
                z = _aberth_mp(cs, _double_start(cs) or _initial_circle(cs), prec + GUARD_BITS)
                radii = [abs(r) for r in _certify_loose(cs, z, prec)]
                roots = _cluster([CertifiedRoot(a, b, 1) for a, b in zip(z, radii)])
            return sorted(roots, key=_sort_key)
    raise PrecisionExhausted(f"root certification failed up to {max_precision} bits")


def _certify_loose(cs, z, prec):
    n = len(cs) - 1
    out = []
    for zi in z:
        p, dp = _horner(cs, zi)
        if dp == 0:
            out.append(mpmath.mpf(2) ** (-prec // (2 * n)) * (1 + abs(zi)))
        else:
            out.append(n * abs(p / dp) + mpmath.mpf(2) ** (-prec // (2 * n)) * (1 + abs(zi)))
    return out


def filter_points(roots, exact_points, tol):
    """Split roots into those away from every exact point and those matched to one.

    A root is matched when its disc lies within distance ``tol`` of a point,
    kept when its disc is farther than ``tol`` from all points; anything in
    between raises :class:`AmbiguousRoot`.
    """
    tol = mpmath.mpf(tol)
    kept, matched = [], []
    pts = [p.to_mpc() if hasattr(p, "to_mpc") else mpmath.mpc(p) for p in exact_points]
    for r in roots:
        hit = None
        for k, p in enumerate(pts):
            d = abs(r.center - p)
            if d + r.radius <= tol:
                hit = k
                break
            if d - r.radius <= tol:
                raise AmbiguousRoot(f"root {mpmath.nstr(r.center, 12)} is within tolerance of point {k} only ambiguously")
        if hit is None:
            kept.append(r)
        else:
            matched.append((r, exact_points[hit]))
    return kept, matched
