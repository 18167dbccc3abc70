"""Candidate maps into C x C*: a rational first component and a C*-valued second one."""

from dataclasses import dataclass
from typing import Union

import mpmath

from .algebra import FactoredRational, GaussianRational, RationalFunction
from .errors import InvalidParameter

__all__ = ["Scalar", "ExpLinear", "MapPair", "PI_SCALAR"]


@dataclass(frozen=True)
class Scalar:
    """``coeff * pi**pi_power`` with ``pi_power`` in {0, 1}."""

    coeff: GaussianRational
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", GaussianRational.coerce(self.coeff))
        if self.pi_power not in (0, 1):
            raise InvalidParameter("only pi**0 and pi**1 are supported")

    def is_zero(self):
        return self.coeff.is_zero()

    def to_mpc(self):
        c = self.coeff.to_mpc()
        return c * mpmath.pi if self.pi_power else c

    def to_expr(self):
        c = self.coeff.to_expr()
        if not self.pi_power:
            return c
        return "pi" if self.coeff == 1 else f"{c}*pi"

    def to_json(self):
        return {"coeff": self.coeff.to_json(), "pi_power": self.pi_power}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussianRational.from_json(obj["coeff"]), int(obj.get("pi_power", 0)))


PI_SCALAR = Scalar(GaussianRational(1), 1)


@dataclass(frozen=True)
class ExpLinear:
    """The function ``exp(lam * z)``."""

    lam: Scalar

    def __post_init__(self):
        lam = self.lam if isinstance(self.lam, Scalar) else Scalar(self.lam)
        if lam.is_zero():
            raise InvalidParameter("exp(lam z) needs lam != 0")
        object.__setattr__(self, "lam", lam)

    def is_constant(self):
        return False

    def eval_mp(self, z):
        return mpmath.exp(self.lam.to_mpc() * z)

    def to_expr(self):
        lam = self.lam
        if lam.coeff == 1 and not lam.pi_power:
            return "exp(z)"
        return f"exp({lam.to_expr()}*z)"

    def to_json(self):
        return {"type": "exp", "lam": self.lam.to_json()}


Second = Union[FactoredRational, ExpLinear]


@dataclass(frozen=True)
class MapPair:
    first: RationalFunction
    second: Second

    def __post_init__(self):
        if not isinstance(self.first, RationalFunction):
            raise InvalidParameter("first component must be a RationalFunction")
        if not isinstance(self.second, (FactoredRational, ExpLinear)):
            raise InvalidParameter("second component must be factored rational or exp-linear")
        if self.first.is_constant() and self.second.is_constant():
            raise InvalidParameter("both components are constant")

    @property
    def is_exponential(self):
        return isinstance(self.second, ExpLinear)

    def second_rational(self):
        if self.is_exponential:
            raise InvalidParameter("second component is not rational")
        return self.second.to_rational()

    def eval_mp(self, z):
        return self.first.eval_mp(z), self.second.eval_mp(z)

    def to_expr(self):
        return f"({self.first.to_expr()},{self.second.to_expr()})"

    def to_json(self):
        second = self.second.to_json() if self.is_exponential else {"type": "factored", **self.second.to_json()}
        return {"first": self.first.to_json(), "second": second, "expr": self.to_expr()}

    @classmethod
    def from_json(cls, obj):
        s = obj["second"]
        if s.get("type") == "exp":
            second = ExpLinear(Scalar.from_json(s["lam"]))
        else:
            second = FactoredRational.from_json(s)
        return cls(RationalFunction.from_json(obj["first"]), second)
