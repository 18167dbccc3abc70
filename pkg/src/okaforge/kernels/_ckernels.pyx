# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-precision kernels.

Both entry points mirror ``_pykernels`` exactly in signature and semantics.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, isfinite

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs1(cplx z) noexcept nogil:
    return fabs(z.real) + fabs(z.imag)


cdef inline cplx horner(const cplx* c, int n, cplx z) noexcept nogil:
    cdef cplx acc = 0
    cdef int k
    for k in range(n - 1, -1, -1):
        acc = acc * z + c[k]
    return acc


cdef inline void horner2(const cplx* c, int n, cplx z, cplx* val, cplx* der) noexcept nogil:
    cdef cplx p = 0
    cdef cplx d = 0
    cdef int k
    for k in range(n - 1, -1, -1):
        d = d * z + p
        p = p * z + c[k]
    val[0] = p
    der[0] = d


def aberth(coeffs, z0, int maxiter=500, double tol=1e-14):
    """Aberth-Ehrlich simultaneous iteration.

    ``coeffs`` lowest degree first; ``z0`` initial approximations (len = degree).
    Returns ``(roots, converged)``.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ca = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] za = np.array(z0, dtype=np.complex128, copy=True)
    cdef const cplx[:] c = ca
    cdef cplx[:] z = za
    cdef int n = ca.shape[0]
    cdef int deg = za.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] done = np.zeros(deg, dtype=np.uint8)
    cdef int it, i, j, ndone
    cdef cplx p, dp, ratio, s, w
    for it in range(maxiter):
        ndone = 0
        for i in range(deg):
            if done[i]:
                ndone += 1
                continue
            horner2(&c[0], n, z[i], &p, &dp)
            if p == 0:
                done[i] = 1
                ndone += 1
                continue
            ratio = p / dp if dp != 0 else 1e-3
            s = 0
            for j in range(deg):
                if j != i:
                    s = s + 1.0 / (z[i] - z[j])
            w = ratio / (1.0 - ratio * s)
            if not (isfinite(w.real) and isfinite(w.imag)):
                continue
            z[i] = z[i] - w
            if cabs1(w) <= tol * (cabs1(z[i]) + tol):
                done[i] = 1
        if ndone == deg:
            break
    return za, done.astype(bool)


def newton_pairs(fn, fd, gn, gd, x0, y0, int maxiter=60, double tol=1e-13):
    """Damped-free Newton on the divided-difference system

        (f(x) - f(y)) / (x - y) = 0,  (g(x) - g(y)) / (x - y) = 0

    with ``f = fn/fd`` and ``g = gn/gd`` given by coefficient arrays.
    Returns ``(x, y, converged)`` arrays.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fna = np.ascontiguousarray(fn, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fda = np.ascontiguousarray(fd, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] gna = np.ascontiguousarray(gn, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] gda = np.ascontiguousarray(gd, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] xa = np.array(x0, dtype=np.complex128, copy=True)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ya = np.array(y0, dtype=np.complex128, copy=True)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] conv = np.zeros(xa.shape[0], dtype=np.uint8)
    cdef const cplx[:] cfn = fna
    cdef const cplx[:] cfd = fda
    cdef const cplx[:] cgn = gna
    cdef const cplx[:] cgd = gda
    cdef cplx[:] X = xa
    cdef cplx[:] Y = ya
    cdef int nfn = fna.shape[0], nfd = fda.shape[0], ngn = gna.shape[0], ngd = gda.shape[0]
    # raw pointers: passing memoryview slices to the inline helpers costs a refcount per call
    cdef const cplx* pfn = &cfn[0]
    cdef const cplx* pfd = &cfd[0]
    cdef const cplx* pgn = &cgn[0]
    cdef const cplx* pgd = &cgd[0]
    cdef Py_ssize_t k, npts = xa.shape[0]
    cdef int it
    cdef cplx x, y, h, a, ad, b, bd, fx, fpx, fy, fpy, gx, gpx, gy, gpy
    cdef cplx F, G, Fx, Fy, Gx, Gy, det, dx, dy
    with nogil:
        for k in range(npts):
            x = X[k]
            y = Y[k]
            for it in range(maxiter):
                h = x - y
                if h == 0:
                    break
                horner2(pfn, nfn, x, &a, &ad)
                horner2(pfd, nfd, x, &b, &bd)
                if b == 0:
                    break
                fx = a / b
                fpx = (ad * b - a * bd) / (b * b)
                horner2(pfn, nfn, y, &a, &ad)
                horner2(pfd, nfd, y, &b, &bd)
                if b == 0:
                    break
                fy = a / b
                fpy = (ad * b - a * bd) / (b * b)
                horner2(pgn, ngn, x, &a, &ad)
                horner2(pgd, ngd, x, &b, &bd)
                if b == 0:
                    break
                gx = a / b
                gpx = (ad * b - a * bd) / (b * b)
                horner2(pgn, ngn, y, &a, &ad)
                horner2(pgd, ngd, y, &b, &bd)
                if b == 0:
                    break
                gy = a / b
                gpy = (ad * b - a * bd) / (b * b)
                F = (fx - fy) / h
                G = (gx - gy) / h
                Fx = (fpx - F) / h
                Fy = (F - fpy) / h
                Gx = (gpx - G) / h
                Gy = (G - gpy) / h
                det = Fx * Gy - Fy * Gx
                if det == 0:
                    break
                dx = (F * Gy - G * Fy) / det
                dy = (Fx * G - Gx * F) / det
                x = x - dx
                y = y - dy
                if not (isfinite(x.real) and isfinite(x.imag) and isfinite(y.real) and isfinite(y.imag)):
                    break
                if cabs1(dx) + cabs1(dy) <= tol * (1.0 + cabs1(x) + cabs1(y)):
                    conv[k] = 1
                    break
            X[k] = x
            Y[k] = y
    return xa, ya, conv.astype(bool)
