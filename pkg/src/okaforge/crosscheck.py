"""Brute-force oracle for identified pairs: dense grid starts plus Newton in double precision.

Independent of the resultant pipeline; used to cross-check the enumerator on
small instances inside a bounded box.
"""

import itertools

import numpy as np

from . import kernels

__all__ = ["grid_search_pairs", "match_pair_sets"]


def _coeffs(poly):
    return np.array(poly.to_complex_coeffs(), dtype=np.complex128)


def _rational_values(num, den, z):
    return np.polyval(num[::-1], z) / np.polyval(den[::-1], z)


def grid_search_pairs(f, g, punctures=(), box=5.0, per_axis=9, dedupe_tol=1e-6, residual_tol=1e-9):
    """Pairs ``x != y`` with ``f(x) = f(y)`` and ``g(x) = g(y)`` found from a 4-D grid of starts.

    Returns a list of ``(x, y)`` complex pairs with ``|x|, |y|`` components inside ``[-box, box]``,
    each unordered pair once.
    """
    grid = np.linspace(-box, box, per_axis)
    # shift the grid off the lattice so no start sits on the diagonal or on a puncture
    starts = np.array(list(itertools.product(grid, repeat=4))) + np.array([0.013, 0.029, -0.021, 0.037])
    x0 = starts[:, 0] + 1j * starts[:, 1]
    y0 = starts[:, 2] + 1j * starts[:, 3]
    keep = np.abs(x0 - y0) > 1e-3
    x0, y0 = x0[keep], y0[keep]
    gr = g.to_rational() if hasattr(g, "to_rational") else g
    fn, fd, gn, gd = _coeffs(f.num), _coeffs(f.den), _coeffs(gr.num), _coeffs(gr.den)
    x, y, conv = kernels.newton_pairs(fn, fd, gn, gd, x0, y0)
    conv = np.asarray(conv, dtype=bool)
    x, y = np.asarray(x)[conv], np.asarray(y)[conv]
    with np.errstate(all="ignore"):
        rf = np.abs(_rational_values(fn, fd, x) - _rational_values(fn, fd, y))
        rg = np.abs(_rational_values(gn, gd, x) - _rational_values(gn, gd, y))
        scale = 1 + np.abs(_rational_values(fn, fd, x)) + np.abs(_rational_values(gn, gd, x))
    ok = np.isfinite(rf) & np.isfinite(rg) & (rf + rg <= residual_tol * scale)
    ok &= np.abs(x - y) > dedupe_tol
    inside = lambda z: (np.abs(z.real) <= box) & (np.abs(z.imag) <= box)
    ok &= inside(x) & inside(y)
    pts = [complex(p) for p in punctures]
    for a in pts:
        ok &= (np.abs(x - a) > dedupe_tol) & (np.abs(y - a) > dedupe_tol)
    found = []
    for xi, yi in zip(x[ok], y[ok]):
        if (xi.real, xi.imag) > (yi.real, yi.imag):
            xi, yi = yi, xi
        if not any(abs(xi - u) <= dedupe_tol and abs(yi - v) <= dedupe_tol for u, v in found):
            found.append((complex(xi), complex(yi)))
    found.sort(key=lambda p: (p[0].real, p[0].imag, p[1].real, p[1].imag))
    return found


def _same(p, q, tol):
    (a, b), (c, d) = p, q
    return (abs(a - c) <= tol and abs(b - d) <= tol) or (abs(a - d) <= tol and abs(b - c) <= tol)


def match_pair_sets(certified, oracle, tol=1e-6, box=5.0, margin=0.25):
    """Compare certified pairs with oracle pairs inside the box.

    Returns ``(missing_from_oracle, unexplained_oracle_pairs)``. Certified pairs
    within ``margin`` of the box edge are not required of the oracle.
    """
    cert = [(complex(p.x), complex(p.y)) for p in certified]
    inner = box - margin

    def in_box(pair, b):
        return all(abs(z.real) <= b and abs(z.imag) <= b for z in pair)

    missing = [p for p in cert if in_box(p, inner) and not any(_same(p, q, tol) for q in oracle)]
    extra = [q for q in oracle if not any(_same(q, p, tol) for p in cert)]
    return missing, extra
