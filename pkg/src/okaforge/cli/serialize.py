"""Job descriptions and deterministic JSON output."""

from dataclasses import dataclass, field, asdict
import json
from fractions import Fraction
from typing import Optional

from ..algebra import GaussianRational
from ..domains import Hole, PuncturedCircularDomain, PuncturedPlane, WindingClass
from ..errors import ParseError
from .parser import parse_points

SCHEMA = "okaforge/1"
COMMANDS = ("classify", "construct", "embed", "verify", "double-points", "reduce", "guard")

__all__ = ["SCHEMA", "COMMANDS", "Options", "JobSpec", "dumps", "domain_from_json", "parse_holes"]


@dataclass
class Options:
    seed: int = 0
    tol: float = 1e-10
    K: int = 10
    attempt_budget: int = 64
    precision: int = 64


@dataclass
class JobSpec:
    command: str
    domain: Optional[object] = None
    windings: Optional[WindingClass] = None
    map: Optional[str] = None
    c: Optional[GaussianRational] = None
    f: Optional[str] = None
    sigma: Optional[str] = None
    name: Optional[str] = None
    options: Options = field(default_factory=Options)
    artifacts: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")

    def to_json(self):
        out = {"command": self.command, "options": asdict(self.options)}
        if self.name:
            out["name"] = self.name
        if self.domain is not None:
            out["domain"] = self.domain.to_json()
        if self.windings is not None:
            out["windings"] = self.windings.to_json()
        for key in ("map", "f", "sigma"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.c is not None:
            out["c"] = self.c.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        if obj.get("schema", SCHEMA) != SCHEMA:
            raise ParseError(f"unsupported schema {obj.get('schema')!r}")
        known = {f for f in Options.__dataclass_fields__}
        raw = obj.get("options", {})
        unknown = set(raw) - known
        if unknown:
            raise ParseError(f"unknown options {sorted(unknown)}")
        opts = Options(**raw)
        domain = domain_from_json(obj["domain"]) if "domain" in obj else None
        windings = None
        if "windings" in obj:
            w = obj["windings"]
            if isinstance(w, list):
                w = {"punctures": w}
            windings = WindingClass(w.get("punctures", []), w.get("holes", []))
        c = GaussianRational.from_json(obj["c"]) if "c" in obj else None
        return cls(obj["command"], domain, windings, obj.get("map"), c, obj.get("f"), obj.get("sigma"),
                   obj.get("name"), opts)


def _point(obj):
    try:
        return GaussianRational.from_json(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {obj!r}: {exc}") from None


def domain_from_json(obj):
    kind = obj.get("kind", "plane")
    punctures = [_point(p) for p in obj.get("punctures", [])]
    if kind == "plane":
        return PuncturedPlane(punctures)
    if kind == "circular":
        holes = [Hole(_point(h["center"]), Fraction(str(h["radius"]))) for h in obj.get("holes", [])]
        return PuncturedCircularDomain(holes, punctures)
    raise ParseError(f"unknown domain kind {kind!r}")


def parse_holes(text):
    """``center:radius`` items separated by ``;``, e.g. ``-1/2i:1/4;1/2:1/8``."""
    holes = []
    for item in filter(None, (s.strip() for s in text.split(";"))):
        if ":" not in item:
            raise ParseError(f"hole {item!r} must be written center:radius")
        center, radius = item.split(":", 1)
        (c,) = parse_points(center)
        try:
            holes.append(Hole(c, Fraction(radius.strip())))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad radius in {item!r}") from exc
    return holes


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
