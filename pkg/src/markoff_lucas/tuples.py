"""Coefficient tuples (a,b,c,d) of the Markoff-Rosenberger equation.

Nontrivial solutions of a*x^2 + b*y^2 + c*z^2 = d*x*y*z with pairwise coprime
a,b,c dividing d exist only for the six base tuples below (Rosenberger).
Solving with ordered indices i <= j <= k requires running every distinct
permutation of (a,b,c) with d fixed, then permuting solution components back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Tuple

ROSENBERGER_SET: Tuple[Tuple[int, int, int, int], ...] = (
    (1, 1, 1, 1),
    (1, 1, 1, 3),
    (1, 1, 2, 2),
    (1, 1, 2, 4),
    (1, 2, 3, 6),
    (1, 1, 5, 5),
)


class TupleNotInA(ValueError):
    """Coefficient tuple outside the admissible set."""


@dataclass(frozen=True)
class MarkoffTuple:
    a: int
    b: int
    c: int
    d: int
    base: Tuple[int, int, int, int]

    @property
    def abc(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def abcd(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def e(self) -> Fraction:
        """d/c, the ratio whose distance to powers of alpha is bounded."""
        return Fraction(self.d, self.c)

    def lhs(self, x: int, y: int, z: int) -> int:
        return self.a * x * x + self.b * y * y + self.c * z * z

    def holds(self, x: int, y: int, z: int) -> bool:
        return self.lhs(x, y, z) == self.d * x * y * z

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})"


def base_tuple(spec: Tuple[int, int, int, int]) -> MarkoffTuple:
    if tuple(spec) not in ROSENBERGER_SET:
        raise TupleNotInA(f"{spec} is not in the admissible set")
    a, b, c, d = spec
    return MarkoffTuple(a, b, c, d, tuple(spec))


def permutations_of(base: Tuple[int, int, int, int]) -> Tuple[MarkoffTuple, ...]:
    """Distinct permutations of (a,b,c) with d fixed, first-seen order."""
    if tuple(base) not in ROSENBERGER_SET:
        raise TupleNotInA(f"{base} is not in the admissible set")
    a, b, c, d = base
    seen = []
    for perm in permutations((a, b, c)):
        if perm not in seen:
            seen.append(perm)
    return tuple(MarkoffTuple(p[0], p[1], p[2], d, tuple(base)) for p in seen)
