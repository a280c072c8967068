"""Exact arithmetic in the real quadratic field Q(sqrt(d)).

Elements are u + v*sqrt(d) with rational u, v and a fixed positive radicand d.
All ring operations, equality and order comparisons are exact; no floating
point enters any decision.  When d is a perfect square the element collapses
to a rational (v is folded into u), so comparisons agree with plain rational
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


def _to_fraction(x: Rat) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadFieldElement:
    """u + v*sqrt(d), exact.  Mixing different radicands is rejected."""

    u: Fraction
    v: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "u", _to_fraction(self.u))
        object.__setattr__(self, "v", _to_fraction(self.v))
        if self.d <= 0:
            raise ValueError("radicand must be positive")
        root = math.isqrt(self.d)
        if root * root == self.d and self.v:
            # perfect-square radicand: collapse to a rational
            object.__setattr__(self, "u", self.u + self.v * root)
            object.__setattr__(self, "v", Fraction(0))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def rational(cls, x: Rat, d: int) -> "QuadFieldElement":
        return cls(_to_fraction(x), Fraction(0), d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadFieldElement":
        return cls(Fraction(0), Fraction(1), d)

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other) -> "QuadFieldElement":
        if isinstance(other, QuadFieldElement):
            if other.d != self.d:
                raise ValueError(f"mixed radicands: {self.d} vs {other.d}")
            return other
        return QuadFieldElement.rational(other, self.d)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other) -> "QuadFieldElement":
        o = self._coerce(other)
        return QuadFieldElement(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __sub__(self, other) -> "QuadFieldElement":
        o = self._coerce(other)
        return QuadFieldElement(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other) -> "QuadFieldElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuadFieldElement":
        o = self._coerce(other)
        return QuadFieldElement(
            self.u * o.u + self.v * o.v * self.d,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadFieldElement":
        norm = self.u * self.u - self.v * self.v * self.d
        if not norm:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadFieldElement(self.u / norm, -self.v / norm, self.d)

    def __truediv__(self, other) -> "QuadFieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadFieldElement":
        return self._coerce(other) * self.inverse()

    def __neg__(self) -> "QuadFieldElement":
        return QuadFieldElement(-self.u, -self.v, self.d)

    def __pow__(self, n: int) -> "QuadFieldElement":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        base = self if n >= 0 else self.inverse()
        result = QuadFieldElement.rational(1, self.d)
        for _ in range(abs(n)):
            result = result * base
        return result

    def conjugate(self) -> "QuadFieldElement":
        return QuadFieldElement(self.u, -self.v, self.d)

    # -- sign, order, equality --------------------------------------------------

    def sign(self) -> int:
        """Exact sign of u + v*sqrt(d) (radicand irrational here unless v=0)."""
        u, v = self.u, self.v
        if not v:
            return 0 if not u else (1 if u > 0 else -1)
        if not u:
            return 1 if v > 0 else -1
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # opposite signs: compare u^2 with v^2*d; equality would force
        # sqrt(d) rational, excluded by the collapse in __post_init__
        uu, vv = u * u, v * v * self.d
        if uu == vv:
            raise ArithmeticError("non-collapsed rational sqrt(d)")
        bigger_u = uu > vv
        return (1 if u > 0 else -1) if bigger_u else (1 if v > 0 else -1)

    def is_zero(self) -> bool:
        return not self.u and not self.v

    def is_rational(self) -> bool:
        return not self.v

    def as_fraction(self) -> Fraction:
        if self.v:
            raise ValueError("element is irrational")
        return self.u

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadFieldElement)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        if not self.v:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> "QuadFieldElement":
        return -self if self.sign() < 0 else self

    # -- display-only conversions (never used in decisions) --------------------

    def __float__(self) -> float:
        return float(self.u) + float(self.v) * math.sqrt(self.d)

    def approx_fraction(self, digits: int = 30) -> Fraction:
        """Rational approximation accurate to ~10**-digits."""
        scale = 10**digits
        root = Fraction(math.isqrt(self.d * scale * scale), scale)
        return self.u + self.v * root

    def decimal(self, sig: int = 5) -> str:
        """Render to `sig` significant digits, for table display."""
        return f"%.{sig}g" % float(self.approx_fraction())

    def __repr__(self) -> str:
        if not self.v:
            return f"{self.u}"
        if not self.u:
            return f"{self.v}*sqrt({self.d})"
        op = "+" if self.v > 0 else "-"
        return f"{self.u} {op} {abs(self.v)}*sqrt({self.d})"
