"""``okaforge`` command line: JSON result bundles on stdout, diagnostics on stderr.

Exit codes: 0 every requested certificate passed, 1 a certificate failed or the
class is not covered (the bundle is still printed), 2 usage or schema error,
3 a search or precision budget ran out.
"""

import argparse
import json
import sys
from importlib import resources

import mpmath

from ..constructors import (
    NotCovered,
    build_circular_immersion,
    build_embedding_circular,
    build_embedding_plane,
    build_nonnull_immersion,
    build_null_immersion,
    first_non_puncture,
)
from ..domains import PuncturedCircularDomain, PuncturedPlane, WindingClass, classify_map, reduce_to_plane, validate
from ..doublepoints import INFINITE, double_points
from ..errors import (
    AmbiguousBoundary,
    AmbiguousFiber,
    AmbiguousRoot,
    InternalInconsistency,
    OkaforgeError,
    PrecisionExhausted,
    SearchExhausted,
)
from ..projection import boundary_clearance
from ..verifiers import (
    check_immersion,
    check_injective_by_form,
    check_properness,
    check_winding,
    guard_not_proper_first,
    guard_symmetry,
)
from .parser import parse_expression, parse_map, parse_points
from .serialize import COMMANDS, SCHEMA, JobSpec, Options, dumps, parse_holes

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3

_BUDGET_ERRORS = (SearchExhausted, PrecisionExhausted, AmbiguousRoot, AmbiguousFiber, AmbiguousBoundary,
                  InternalInconsistency)


class UsageError(Exception):
    pass


def _require(job, *names):
    for name in names:
        if getattr(job, name) is None:
            raise UsageError(f"{job.command} needs --{name}")


def _certs_ok(certs):
    return all(c["verdict"] == "pass" for c in certs.values())


def _report_ok(report):
    return report.finiteness != INFINITE


def _dump_points(report):
    lines = []
    for p in report.pairs:
        lines.append(" ".join(mpmath_str(v) for v in (p.x.real, p.x.imag, p.y.real, p.y.imag)))
    return "\n".join(lines) + ("\n" if lines else "")


def mpmath_str(v):
    # 17 significant digits round-trip a double; tiny parts switch to exponent form
    return mpmath.nstr(v, 17, min_fixed=-4, max_fixed=8)


# -- commands --------------------------------------------------------------------------------


def _classify(job):
    _require(job, "domain", "map")
    psi = parse_map(job.map)
    w = classify_map(psi, job.domain)
    return {"map": psi.to_json(), "windings": w.to_json()}, EXIT_OK


def _map_certs(psi, domain, windings=None):
    certs = {
        "immersion": check_immersion(psi, domain).to_json(),
        "properness": check_properness(psi, domain).to_json(),
    }
    if windings is not None:
        certs["winding"] = check_winding(psi, domain, windings).to_json()
    return certs


def _construct(job):
    _require(job, "domain", "windings")
    D, w, o = job.domain, job.windings, job.options
    w.check_shape(D)
    if isinstance(D, PuncturedCircularDomain):
        built = build_circular_immersion(D, w, seed=o.seed, budget=o.attempt_budget)
        psi, Y = built.map, built.plane
        certs = _map_certs(psi, D, w)
        certs["plane"] = _map_certs(psi, Y, built.windings)
        report = double_points(psi, Y, tol=o.tol, K=o.K, precision=o.precision)
        certs["projection"] = built.projection.to_json()
        ok, wit = boundary_clearance(psi, report, D)
        certs["boundary_clearance"] = {"verdict": "pass" if ok else "fail", "witnesses": wit}
        result = {"construction": "circular", **built.to_json(), "certificates": certs,
                  "double_points": report.to_json()}
        certs_flat = dict(certs)
        plane = certs_flat.pop("plane")
        passed = _certs_ok(certs_flat) and _certs_ok(plane) and _report_ok(report)
        return result, EXIT_OK if passed else EXIT_FAIL
    if w.is_null():
        c = job.c if job.c is not None else first_non_puncture(D.punctures)
        psi = build_null_immersion(D, c)
        result = {"construction": "null", "c": c.to_json(), "map": psi.to_json()}
    else:
        psi, log = build_nonnull_immersion(D, w, seed=o.seed, budget=o.attempt_budget)
        result = {"construction": "nonnull", "map": psi.to_json(), "log": log.to_json()}
    certs = _map_certs(psi, D, w)
    report = double_points(psi, D, tol=o.tol, K=o.K, precision=o.precision)
    result["certificates"] = certs
    result["double_points"] = report.to_json()
    return result, EXIT_OK if _certs_ok(certs) and _report_ok(report) else EXIT_FAIL


def _embed(job):
    _require(job, "domain", "windings")
    D, w = job.domain, job.windings
    if isinstance(D, PuncturedCircularDomain):
        built = build_embedding_circular(D, w, seed=job.options.seed)
        if isinstance(built, NotCovered):
            return built.to_json(), EXIT_FAIL
        psi = built.map
        certs = _map_certs(psi, D, w)
        certs["injective_by_form"] = check_injective_by_form(psi).to_json()
        certs["projection"] = built.projection.to_json()
        return {**built.to_json(), "certificates": certs}, EXIT_OK if _certs_ok(certs) else EXIT_FAIL
    built = build_embedding_plane(D, w, c=job.c)
    if isinstance(built, NotCovered):
        return built.to_json(), EXIT_FAIL
    certs = _map_certs(built, D, w)
    certs["injective_by_form"] = check_injective_by_form(built).to_json()
    return {"covered": True, "map": built.to_json(), "certificates": certs}, EXIT_OK if _certs_ok(certs) else EXIT_FAIL


def _verify(job):
    _require(job, "domain", "map")
    psi = parse_map(job.map)
    o = job.options
    certs = _map_certs(psi, job.domain, job.windings)
    certs["injective_by_form"] = check_injective_by_form(psi).to_json()
    result = {"map": psi.to_json(), "certificates": certs}
    ok = _certs_ok({k: v for k, v in certs.items() if k != "injective_by_form"})
    if isinstance(job.domain, PuncturedPlane):
        report = double_points(psi, job.domain, tol=o.tol, K=o.K, precision=o.precision)
        result["double_points"] = report.to_json()
        ok = ok and _report_ok(report)
    return result, EXIT_OK if ok else EXIT_FAIL


def _double_points(job):
    _require(job, "domain", "map")
    psi = parse_map(job.map)
    o = job.options
    domain = job.domain
    result = {"map": psi.to_json()}
    if isinstance(domain, PuncturedCircularDomain):
        raise UsageError("double-points works on punctured planes; reduce the circular domain first")
    report = double_points(psi, domain, tol=o.tol, K=o.K, precision=o.precision)
    result["double_points"] = report.to_json()
    result["max_residual"] = f"{report.max_residual:.3e}"
    job.artifacts["report"] = report
    return result, EXIT_OK if _report_ok(report) else EXIT_FAIL


def _reduce(job):
    _require(job, "domain", "windings")
    if not isinstance(job.domain, PuncturedCircularDomain):
        raise UsageError("reduce needs --domain circular")
    violations = validate(job.domain)
    if violations:
        return {"valid": False, "violations": [v.to_json() for v in violations]}, EXIT_FAIL
    return {"valid": True, **reduce_to_plane(job.domain, job.windings).to_json()}, EXIT_OK


def _guard(job):
    _require(job, "f")
    f = parse_expression(job.f)
    out = {"not_proper_first": guard_not_proper_first(f).to_json()}
    if job.sigma is not None:
        out["symmetry"] = guard_symmetry(f, parse_expression(job.sigma)).to_json()
    return out, EXIT_OK if _certs_ok(out) else EXIT_FAIL


_HANDLERS = {
    "classify": _classify,
    "construct": _construct,
    "embed": _embed,
    "verify": _verify,
    "double-points": _double_points,
    "reduce": _reduce,
    "guard": _guard,
}


def run(job: JobSpec):
    """Execute a job; returns ``(bundle, exit_code)``. Budget errors become exit code 3."""
    bundle = {"schema": SCHEMA, "job": job.to_json()}
    try:
        result, code = _HANDLERS[job.command](job)
    except _BUDGET_ERRORS as exc:
        bundle["error"] = {"type": type(exc).__name__, "message": str(exc)}
        log = getattr(exc, "log", None)
        if log is not None:
            bundle["error"]["log"] = log.to_json() if hasattr(log, "to_json") else log
        return bundle, EXIT_EXHAUSTED
    bundle["result"] = result
    bundle["status"] = "pass" if code == EXIT_OK else "fail"
    return bundle, code


# -- corpus ------------------------------------------------------------------------------------


def corpus_names():
    files = resources.files("okaforge").joinpath("corpus")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_corpus(name):
    path = resources.files("okaforge").joinpath("corpus", f"{name}.json")
    if not path.is_file():
        raise UsageError(f"no corpus job named {name!r}")
    return json.loads(path.read_text(encoding="utf-8"))


# -- argument handling ------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--domain", choices=("plane", "circular"), default="plane")
    p.add_argument("--punctures", default="", help="comma-separated Gaussian rationals, e.g. 0,1,-1/2+i")
    p.add_argument("--holes", default="", help="center:radius items separated by ';'")
    p.add_argument("--windings", default=None, help="comma-separated puncture windings")
    p.add_argument("--hole-windings", default=None, help="comma-separated hole windings")
    p.add_argument("--map", default=None, help="'(first, second)' in the infix grammar")
    p.add_argument("--c", default=None, help="centre of the null construction")
    p.add_argument("--f", default=None, help="first component for guard")
    p.add_argument("--sigma", default=None, help="candidate symmetry for guard")
    _add_options(p)
    p.add_argument("--dump-points", default=None, metavar="FILE",
                   help="write identified pairs as 'x.re x.im y.re y.im' lines")


def _add_options(p):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--budget", dest="attempt_budget", type=int, default=None)
    p.add_argument("--precision", type=int, default=None)


def _ints(text):
    if text is None or not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"windings must be integers: {text!r}") from None


def _apply_options(opts, args):
    for key in ("seed", "tol", "K", "attempt_budget", "precision"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(opts, key, value)
    return opts


def _job_from_args(args):
    punctures = parse_points(args.punctures)
    if args.domain == "plane":
        if args.holes:
            raise UsageError("--holes needs --domain circular")
        domain = PuncturedPlane(punctures)
    else:
        domain = PuncturedCircularDomain(parse_holes(args.holes), punctures)
    windings = None
    if args.windings is not None or args.hole_windings is not None:
        windings = WindingClass(_ints(args.windings), _ints(args.hole_windings))
    c = None
    if args.c is not None:
        (c,) = parse_points(args.c)
    opts = _apply_options(Options(), args)
    return JobSpec(args.command, domain, windings, args.map, c, args.f, args.sigma, options=opts)


_COMMAND_HELP = {
    "classify": "winding numbers of a map about each puncture and hole",
    "construct": "proper immersion in a given winding class",
    "embed": "explicit embedding for the covered winding classes",
    "verify": "immersion, properness and winding certificates for a map",
    "double-points": "finiteness verdict and certified identified pairs",
    "reduce": "auxiliary punctured plane of a punctured circular domain",
    "guard": "obstructions for maps (f, exp g) into C x C*",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="okaforge",
        description="Construct and certify proper holomorphic maps of punctured domains into C x C*.",
        epilog="Exit codes: 0 pass, 1 fail or not covered, 2 usage error, 3 budget exhausted.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _add_common(sub.add_parser(name, help=_COMMAND_HELP[name]))
    p = sub.add_parser("run", help="run a JSON job file ('-' for stdin)")
    p.add_argument("job")
    _add_options(p)
    p = sub.add_parser("corpus", help="bundled example jobs")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    r = csub.add_parser("run")
    r.add_argument("name")
    _add_options(r)
    return parser


def _job_from_json(obj, args):
    job = JobSpec.from_json(obj.get("job", obj))
    _apply_options(job.options, args)
    return job


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "corpus":
            if args.action == "list":
                for name in corpus_names():
                    entry = load_corpus(name)
                    out.write(f"{name}\t{entry.get('description', '')}\n")
                return EXIT_OK
            job = _job_from_json(load_corpus(args.name), args)
        elif args.command == "run":
            text = sys.stdin.read() if args.job == "-" else open(args.job, encoding="utf-8").read()
            job = _job_from_json(json.loads(text), args)
        else:
            job = _job_from_args(args)
        bundle, code = run(job)
    except (UsageError, OkaforgeError, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        if isinstance(exc, _BUDGET_ERRORS):
            sys.stderr.write(f"okaforge: {type(exc).__name__}: {exc}\n")
            return EXIT_EXHAUSTED
        sys.stderr.write(f"okaforge: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    out.write(dumps(bundle))
    dump = getattr(args, "dump_points", None)
    if dump and "report" in job.artifacts:
        with open(dump, "w", encoding="utf-8") as fh:
            fh.write(_dump_points(job.artifacts["report"]))
    if code != EXIT_OK and "error" in bundle:
        sys.stderr.write(f"okaforge: {bundle['error']['type']}: {bundle['error']['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
