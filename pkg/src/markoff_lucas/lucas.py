"""Generalized Lucas sequences U_n(P,Q), V_n(P,Q) with exact arithmetic.

U_0=0, U_1=1, V_0=2, V_1=P and X_n = P*X_{n-1} - Q*X_{n-2}.  Admitted
parameters are P >= 2 with D = P^2-4Q > 0 and -P-1 <= Q <= P-1, plus the two
P=1 sequences (1,-1) and (1,-2); these force alpha > 1 and |beta| <= 1, so
terms are nondecreasing from index 1 on (verified up to a guard index at
construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Tuple

from .quadfield import QuadFieldElement

KINDS = ("U", "V")
MONOTONE_GUARD = 64


class InvalidParams(ValueError):
    """Parameters outside the admitted families."""


class IdentityUnavailable(ValueError):
    """Shift identity needs beta in {+1,-1} (step m >= 1)."""


@dataclass(frozen=True)
class SequenceParams:
    """Validated (P, Q, kind) with the exact roots of x^2 - P*x + Q."""

    P: int
    Q: int
    kind: str
    D: int
    alpha: QuadFieldElement
    beta: QuadFieldElement
    sqrt_d: QuadFieldElement
    _prefix: Tuple[int, ...] = field(repr=False, compare=False)

    @property
    def beta_unit(self) -> int | None:
        """+1 or -1 when beta is exactly that unit, else None."""
        for s in (1, -1):
            if self.beta == s:
                return s
        return None

    def describe(self) -> str:
        return f"{self.kind}(P={self.P}, Q={self.Q})"


def _recurrence_prefix(P: int, Q: int, kind: str, count: int) -> Tuple[int, ...]:
    a, b = (0, 1) if kind == "U" else (2, P)
    out = [a, b]
    for _ in range(count - 2):
        a, b = b, P * b - Q * a
        out.append(b)
    return tuple(out)


def validate_params(P: int, Q: int, kind: str) -> SequenceParams:
    """Check the admitted-parameter invariants and build exact alpha, beta."""
    if kind not in KINDS:
        raise InvalidParams(f"kind must be 'U' or 'V', got {kind!r}")
    if not isinstance(P, int) or not isinstance(Q, int):
        raise InvalidParams("P and Q must be integers")
    if Q == 0:
        raise InvalidParams("Q must be nonzero")
    if P >= 2:
        if not (-P - 1 <= Q <= P - 1):
            raise InvalidParams(f"Q={Q} outside [-P-1, P-1] for P={P}")
    elif P == 1:
        if Q not in (-1, -2):
            raise InvalidParams("P=1 admits only Q in {-1, -2}")
    else:
        raise InvalidParams(f"P={P} must be >= 1")
    D = P * P - 4 * Q
    if D <= 0:
        raise InvalidParams(f"discriminant D={D} must be positive")

    sqrt_d = QuadFieldElement.sqrt(D)
    half = Fraction(1, 2)
    alpha = QuadFieldElement(Fraction(P, 2), half, D)
    beta = QuadFieldElement(Fraction(P, 2), -half, D)
    if not alpha > 1:
        raise InvalidParams("alpha must exceed 1")
    if abs(beta) > 1:
        raise InvalidParams("|beta| must not exceed 1")

    prefix = _recurrence_prefix(P, Q, kind, MONOTONE_GUARD + 2)
    for n in range(1, MONOTONE_GUARD + 1):
        if prefix[n + 1] < prefix[n]:
            raise InvalidParams(f"terms decrease at n={n}")
    return SequenceParams(P, Q, kind, D, alpha, beta, sqrt_d, prefix)


def term(params: SequenceParams, n: int) -> int:
    """Exact n-th term by the recurrence."""
    if n < 0:
        raise ValueError("negative indices are out of scope")
    if n < len(params._prefix):
        return params._prefix[n]
    a, b = params._prefix[-2], params._prefix[-1]
    for _ in range(n - len(params._prefix) + 1):
        a, b = b, params.P * b - params.Q * a
    return b


def binet(params: SequenceParams, n: int) -> int:
    """Evaluate the closed form in Q(sqrt(D)); exactly an integer."""
    an = params.alpha**n
    bn = params.beta**n
    if params.kind == "U":
        value = (an - bn) / params.sqrt_d
    else:
        value = an + bn
    frac = value.as_fraction()
    if frac.denominator != 1:
        raise ArithmeticError(f"closed form gave non-integer {frac}")
    return frac.numerator


def fundamental_identity_check(params: SequenceParams, n: int) -> bool:
    """V_n^2 - D*U_n^2 == 4*Q^n, the Pell-type relation both kinds satisfy."""
    u = _recurrence_prefix(params.P, params.Q, "U", max(n + 1, 2))[n]
    v = _recurrence_prefix(params.P, params.Q, "V", max(n + 1, 2))[n]
    return v * v - params.D * u * u == 4 * params.Q**n


def shift_identity_coeffs(params: SequenceParams, m: int) -> Dict[int, Tuple[int, int]]:
    """Linear forms R_{j+m} = g*R_j + h, one per parity class of j.

    Exact for all j of the given parity.  m=0 is the identity for any
    parameters; m >= 1 requires beta in {+1,-1} (alpha is then an integer and
    R_{j+m} = alpha^m R_j + beta^j * U_m for kind U, minus sqrt(D)*U_m*beta^j
    for kind V).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return {0: (1, 0), 1: (1, 0)}
    b = params.beta_unit
    if b is None:
        raise IdentityUnavailable(f"beta={params.beta!r} is not a unit")
    alpha = params.alpha.as_fraction()
    assert alpha.denominator == 1
    a = alpha.numerator
    delta = params.sqrt_d.as_fraction().numerator
    u_m = _recurrence_prefix(params.P, params.Q, "U", max(m + 1, 2))[m]
    scale = u_m if params.kind == "U" else -delta * u_m
    g = a**m
    return {0: (g, scale), 1: (g, scale * b)}


def is_member(params: SequenceParams, x: int) -> FrozenSet[int]:
    """All indices n >= 1 with term(n) == x; empty when x is not a term."""
    if x < 1:
        return frozenset()
    hits = []
    n = 1
    while True:
        t = term(params, n)
        if t == x:
            hits.append(n)
        elif t > x:
            break
        n += 1
    return frozenset(hits)


@dataclass(frozen=True)
class ModularSequence:
    """Residues of a Lucas sequence mod m: eventually periodic state stream."""

    modulus: int
    preperiod: int
    period: int
    residues: Tuple[int, ...]

    def residue(self, n: int) -> int:
        if n < 0:
            raise ValueError("negative index")
        if n < len(self.residues):
            return self.residues[n]
        return self.residues[self.preperiod + (n - self.preperiod) % self.period]


def mod_reduce(params: SequenceParams, m: int) -> ModularSequence:
    """Minimal preperiod and period of the residue stream mod m.

    Detected by first repeat of the state pair (R_n, R_{n+1}); the preperiod
    is 0 whenever gcd(Q, m) = 1 because the state map is then invertible.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a, b = (0, 1) if params.kind == "U" else (2 % m, params.P % m)
    seen = {}
    stream = []
    n = 0
    while True:
        state = (a, b)
        if state in seen:
            start = seen[state]
            # stream holds exactly preperiod + one full period entries
            return ModularSequence(m, start, n - start, tuple(stream))
        seen[state] = n
        stream.append(a)
        a, b = b, (params.P * b - params.Q * a) % m
        n += 1


def sequence_values(params: SequenceParams, n_max: int) -> Tuple[int, ...]:
    """Terms 0..n_max as a tuple."""
    return tuple(term(params, n) for n in range(n_max + 1))


def is_perfect_square(x: int) -> bool:
    return x >= 0 and math.isqrt(x) ** 2 == x
