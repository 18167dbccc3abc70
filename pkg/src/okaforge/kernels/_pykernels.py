"""Reference numpy implementations of the double-precision kernels."""

import numpy as np


def _horner2(c, z):
    p = np.zeros_like(z)
    d = np.zeros_like(z)
    for k in range(len(c) - 1, -1, -1):
        d = d * z + p
        p = p * z + c[k]
    return p, d


def aberth(coeffs, z0, maxiter=500, tol=1e-14):
    """Aberth-Ehrlich simultaneous iteration; same contract as the compiled kernel."""
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.array(z0, dtype=np.complex128, copy=True)
    deg = len(z)
    done = np.zeros(deg, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            if done.all():
                break
            # Gauss-Seidel order matters for bitwise agreement with the compiled kernel
            for i in range(deg):
                if done[i]:
                    continue
                p, dp = _horner2(c, z[i:i + 1])
                p, dp = p[0], dp[0]
                if p == 0:
                    done[i] = True
                    continue
                ratio = p / dp if dp != 0 else 1e-3
                diff = z[i] - np.delete(z, i)
                s = np.sum(1.0 / diff)
                w = ratio / (1.0 - ratio * s)
                if not np.isfinite(w):
                    continue
                z[i] = z[i] - w
                if abs(w.real) + abs(w.imag) <= tol * (abs(z[i].real) + abs(z[i].imag) + tol):
                    done[i] = True
    return z, done


def newton_pairs(fn, fd, gn, gd, x0, y0, maxiter=60, tol=1e-13):
    """Vectorised Newton on the divided-difference pair system."""
    fn, fd, gn, gd = (np.asarray(a, dtype=np.complex128) for a in (fn, fd, gn, gd))
    x = np.array(x0, dtype=np.complex128, copy=True)
    y = np.array(y0, dtype=np.complex128, copy=True)
    n = len(x)
    conv = np.zeros(n, dtype=bool)
    active = np.ones(n, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            idx = np.nonzero(active)[0]
            if idx.size == 0:
                break
            xi, yi = x[idx], y[idx]
            h = xi - yi

            def value_and_slope(num, den, z):
                a, ad = _horner2(num, z)
                b, bd = _horner2(den, z)
                return a / b, (ad * b - a * bd) / (b * b), b

            fx, fpx, bfx = value_and_slope(fn, fd, xi)
            fy, fpy, bfy = value_and_slope(fn, fd, yi)
            gx, gpx, bgx = value_and_slope(gn, gd, xi)
            gy, gpy, bgy = value_and_slope(gn, gd, yi)
            F = (fx - fy) / h
            G = (gx - gy) / h
            Fx = (fpx - F) / h
            Fy = (F - fpy) / h
            Gx = (gpx - G) / h
            Gy = (G - gpy) / h
            det = Fx * Gy - Fy * Gx
            bad = (h == 0) | (bfx == 0) | (bfy == 0) | (bgx == 0) | (bgy == 0) | (det == 0)
            dx = (F * Gy - G * Fy) / det
            dy = (Fx * G - Gx * F) / det
            nx, ny = xi - dx, yi - dy
            finite = np.isfinite(nx) & np.isfinite(ny)
            step = np.abs(dx.real) + np.abs(dx.imag) + np.abs(dy.real) + np.abs(dy.imag)
            scale = 1.0 + np.abs(nx.real) + np.abs(nx.imag) + np.abs(ny.real) + np.abs(ny.imag)
            move = ~bad
            upd = idx[move]
            x[upd] = nx[move]
            y[upd] = ny[move]
            stop = bad | ~finite
            done_now = move & finite & (step <= tol * scale)
            conv[idx[done_now]] = True
            active[idx[stop | done_now]] = False
    return x, y, conv
