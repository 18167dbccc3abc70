"""Compiled versus pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Times the Aberth iteration on random polynomials and the batched pair Newton
solver on a grid of starts, once per available backend, and checks that the
backends return the same roots and pairs.
"""

import argparse
import json
import math
import time

import numpy as np

from okaforge import kernels


def aberth_case(degree, rng):
    coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    coeffs /= coeffs[-1]
    z0 = np.array([2 * complex(math.cos(2 * math.pi * k / degree + 0.4), math.sin(2 * math.pi * k / degree + 0.4))
                   for k in range(degree)])
    return coeffs, z0


def pair_case(per_axis):
    # f = z^3 - 2z, g = z(z - 1), as complex coefficient arrays (lowest degree first)
    fn = np.array([0, -2, 0, 1], dtype=np.complex128)
    fd = np.array([1], dtype=np.complex128)
    gn = np.array([0, -1, 1], dtype=np.complex128)
    gd = np.array([1], dtype=np.complex128)
    grid = np.linspace(-3, 3, per_axis)
    pts = np.array(np.meshgrid(grid, grid, grid, grid)).reshape(4, -1).T + np.array([0.013, 0.029, -0.021, 0.037])
    return fn, fd, gn, gd, pts[:, 0] + 1j * pts[:, 1], pts[:, 2] + 1j * pts[:, 3]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def run(repeat=3):
    rng = np.random.default_rng(7)
    polys = [aberth_case(d, rng) for d in (8, 16, 32, 64)]
    pairs = pair_case(9)
    rows = []
    results = {}
    for name in sorted(kernels.BACKENDS):
        kernels.use_backend(name)
        for coeffs, z0 in polys:
            t, (roots, _) = best_of(lambda: kernels.aberth(coeffs, z0), repeat)
            rows.append({"backend": name, "kernel": "aberth", "size": len(z0), "seconds": t})
            results.setdefault(("aberth", len(z0)), {})[name] = np.sort_complex(np.asarray(roots))
        t, (x, y, conv) = best_of(lambda: kernels.newton_pairs(*pairs), repeat)
        rows.append({"backend": name, "kernel": "newton_pairs", "size": len(pairs[4]), "seconds": t})
        results.setdefault(("newton_pairs", len(pairs[4])), {})[name] = np.asarray(x)[np.asarray(conv, bool)]
    agree = {}
    for key, by_backend in results.items():
        vals = list(by_backend.values())
        if len(vals) > 1:
            agree[f"{key[0]}:{key[1]}"] = bool(len(vals[0]) == len(vals[1]) and np.allclose(vals[0], vals[1], atol=1e-9))
    return rows, agree


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    previous = kernels.BACKEND
    try:
        rows, agree = run(args.repeat)
    finally:
        kernels.use_backend(previous)
    if args.json:
        print(json.dumps({"rows": rows, "agree": agree}, indent=2, sort_keys=True))
        return
    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not built; timing the python backend only")
    base = {(r["kernel"], r["size"]): r["seconds"] for r in rows if r["backend"] == "python"}
    print(f"{'kernel':<14}{'size':>8}{'backend':>10}{'seconds':>12}{'speedup':>10}")
    for r in rows:
        speed = base[(r["kernel"], r["size"])] / r["seconds"] if r["seconds"] else float("nan")
        print(f"{r['kernel']:<14}{r['size']:>8}{r['backend']:>10}{r['seconds']:>12.5f}{speed:>10.1f}")
    for key, ok in sorted(agree.items()):
        print(f"backends agree on {key}: {ok}")


if __name__ == "__main__":
    main()
