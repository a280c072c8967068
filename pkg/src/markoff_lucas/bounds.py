"""Index bounds for ordered solutions (R_i, R_j, R_k), i <= j <= k.

For kind U the pivot quantity is the minimum distance from integer powers of
alpha to d/(c*sqrt(D)); for kind V, to d/c.  When that minimum is positive it
yields an explicit bound on the smallest index i, and the same inequality
sieves the feasible gaps m = k-j for each i.  Exponents where a power of
alpha hits the target exactly span diagonal index planes k-i-j = I0 that the
bound cannot see; they are classified here and resolved separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Tuple

from .lucas import SequenceParams, term
from .quadfield import QuadFieldElement
from .tuples import MarkoffTuple

ENVELOPE_PRESETS = ("analytic", "balancing", "jacobsthal")
_VERIFY_CAP = 4096


class ZeroBound(ArithmeticError):
    """Positive minimum unavailable (cannot happen after exclusions)."""


@dataclass(frozen=True)
class Envelope:
    """Constants with s1*alpha^(k-i1) <= R_k <= s2*alpha^(k+i2) for k >= 1."""

    s1: QuadFieldElement
    s2: QuadFieldElement
    i1: int
    i2: int


def default_envelope(params: SequenceParams) -> Envelope:
    """Envelope from |beta^k| <= 1 alone; valid for every admitted sequence.

    Kind U: (alpha^k - 1)/sqrt(D) <= U_k <= (alpha^k + 1)/sqrt(D) weakened to
    exponent-0 constants; kind V likewise without the sqrt(D).
    """
    inv_alpha = params.alpha.inverse()
    one = QuadFieldElement.rational(1, params.D)
    lo, hi = one - inv_alpha, one + inv_alpha
    if params.kind == "U":
        return Envelope(lo / params.sqrt_d, hi / params.sqrt_d, 0, 0)
    return Envelope(lo, hi, 0, 0)


def preset_envelope(name: str, params: SequenceParams) -> Envelope:
    """Named envelopes, or explicit constants given as "s1,s2,i1,i2"."""
    if "," in name:
        parts = name.split(",")
        if len(parts) != 4:
            raise ValueError(f"explicit envelope needs s1,s2,i1,i2: {name!r}")
        return Envelope(
            QuadFieldElement.rational(Fraction(parts[0]), params.D),
            QuadFieldElement.rational(Fraction(parts[1]), params.D),
            int(parts[2]),
            int(parts[3]),
        )
    if name == "analytic":
        return default_envelope(params)
    if name == "balancing":
        if (params.P, params.Q, params.kind) != (6, 1, "U"):
            raise ValueError("'balancing' preset needs U(6,1)")
        one = QuadFieldElement.rational(1, params.D)
        return Envelope(one, one, 1, 0)
    if name == "jacobsthal":
        if (params.P, params.Q, params.kind) != (1, -2, "U"):
            raise ValueError("'jacobsthal' preset needs U(1,-2)")
        return Envelope(
            QuadFieldElement.rational(Fraction(1, 3), params.D),
            QuadFieldElement.rational(1, params.D),
            1,
            -1,
        )
    raise ValueError(f"unknown envelope preset {name!r}")


def _tail_start(params: SequenceParams, coeff: QuadFieldElement) -> int | None:
    """Smallest k >= 1 with alpha^k * coeff >= 1, or None if out of reach."""
    k = 1
    power = params.alpha
    while (power * coeff) < 1:
        k += 1
        power = power * params.alpha
        if k > _VERIFY_CAP:
            return None
    return k


def verify_envelope(params: SequenceParams, env: Envelope, horizon: int = 100) -> bool:
    """Exact check for k = 1..horizon plus an exact tail argument.

    Kind U lower side: sqrt(D)*(U_k - s1*alpha^(k-i1)) = alpha^k*c - beta^k
    with c = 1 - sqrt(D)*s1*alpha^(-i1).  With c > 0 the side holds for every
    k past the exact crossover alpha^k*c >= 1 since |beta^k| <= 1; the other
    three sides reduce the same way.  A side whose c is exactly 0 survives
    only when the conjugate term has the harmless sign for all k (beta > 0,
    and only on the sides where +beta^k is being absorbed).  The finite check
    is extended to cover any k before the latest crossover.
    """
    alpha = params.alpha
    if params.kind == "U":
        c_lo = 1 - params.sqrt_d * env.s1 * alpha.inverse() ** env.i1
        c_hi = params.sqrt_d * env.s2 * alpha**env.i2 - 1
        zero_ok = (False, True)  # alpha^k*c >= beta^k / >= -beta^k
    else:
        c_lo = 1 - env.s1 * alpha.inverse() ** env.i1
        c_hi = env.s2 * alpha**env.i2 - 1
        zero_ok = (True, False)
    tails = []
    for coeff, ok_when_zero in ((c_lo, zero_ok[0]), (c_hi, zero_ok[1])):
        sign = coeff.sign()
        if sign < 0:
            return False
        if sign == 0:
            if ok_when_zero and params.beta.sign() > 0:
                tails.append(1)
                continue
            return False
        start = _tail_start(params, coeff)
        if start is None:
            return False
        tails.append(start)
    check_to = max(horizon, max(tails) - 1)
    if check_to > _VERIFY_CAP:
        return False

    power = alpha ** (1 - env.i1)
    step_lo = alpha
    lo_k = env.s1 * power
    hi_k = env.s2 * alpha ** (1 + env.i2)
    for k in range(1, check_to + 1):
        t = term(params, k)
        if not (lo_k <= t and t <= hi_k):
            return False
        lo_k = lo_k * step_lo
        hi_k = hi_k * step_lo
    return True


# -- distance from powers of alpha to the tuple target ------------------------


def target_value(params: SequenceParams, tup: MarkoffTuple, kind: str) -> QuadFieldElement:
    """d/(c*sqrt(D)) for kind U, d/c for kind V, as an exact field element."""
    ratio = QuadFieldElement.rational(Fraction(tup.d, tup.c), params.D)
    if kind == "U":
        return ratio / params.sqrt_d
    return ratio


def _crossing_exponent(params: SequenceParams, target: QuadFieldElement) -> int:
    """The unique I with alpha^I <= target < alpha^(I+1) (target > 0)."""
    alpha = params.alpha
    i = 0
    power = QuadFieldElement.rational(1, params.D)
    if power <= target:
        while power * alpha <= target:
            power = power * alpha
            i += 1
    else:
        while power > target:
            power = power / alpha
            i -= 1
    return i


def min_power_gap(
    params: SequenceParams, tup: MarkoffTuple, kind: str
) -> Tuple[QuadFieldElement, int, Tuple[int, ...]]:
    """(minimum of |alpha^I - target| over I with the exact hits excluded,
    the attaining exponent, the excluded exponents).

    Candidates reduce to the crossing window: powers below the target only
    get farther as I decreases (the I -> -infinity limit value is the target
    itself and never beats the best finite candidate), and powers above only
    grow.
    """
    target = target_value(params, tup, kind)
    i_star = _crossing_exponent(params, target)
    zero: Tuple[int, ...] = ()
    if params.alpha**i_star == target:
        zero = (i_star,)
        candidates = [i_star - 1, i_star + 1]
    else:
        candidates = [i_star, i_star + 1]
    best = None
    best_i = None
    for i in candidates:
        gap = abs(params.alpha**i - target)
        if best is None or gap < best:
            best, best_i = gap, i
    if best is None or best.sign() <= 0:
        raise ZeroBound("no positive minimum")
    return best, best_i, zero


def zero_gap_exponents(
    params: SequenceParams, e_num: int, e_den: int, kind: str
) -> FrozenSet[int]:
    """All integers I with alpha^I exactly equal to the target for e = d/c.

    Irrational sqrt(D): a kind-U hit would force alpha^I + beta^I = 0, i.e. a
    vanishing V-term, impossible here; a kind-V hit would force alpha^I
    rational, so only I=0 with e=1.  Rational sqrt(D) = delta: alpha is an
    integer >= 2 and the single crossing exponent is tested exactly.
    """
    if e_num <= 0 or e_den <= 0:
        raise ValueError("e must be positive")
    e = Fraction(e_num, e_den)
    root = _isqrt_exact(params.D)
    if root is None:
        if kind == "V" and e == 1:
            return frozenset({0})
        return frozenset()
    delta = root
    target = e / delta if kind == "U" else e
    alpha = params.alpha.as_fraction()
    i = 0
    power = Fraction(1)
    if power <= target:
        while power * alpha <= target:
            power *= alpha
            i += 1
    else:
        while power > target:
            power /= alpha
            i -= 1
    return frozenset({i}) if power == target else frozenset()


def _isqrt_exact(d: int):
    r = math.isqrt(d)
    return r if r * r == d else None


# -- the i-bound and the gap sieve ---------------------------------------------


def rhs_coefficient(
    params: SequenceParams, tup: MarkoffTuple, env: Envelope, kind: str
) -> QuadFieldElement:
    """Bracketed coefficient of alpha^(-i) in the gap inequality."""
    alpha = params.alpha
    growth = (env.s2 * env.s2 / env.s1) * alpha ** (2 * env.i2 + env.i1)
    if kind == "U":
        return (
            (tup.a + tup.b) * growth * params.sqrt_d / tup.c
            + (3 * tup.d) / (tup.c * params.sqrt_d)
            + 1
        )
    return (tup.a + tup.b) * growth / tup.c + QuadFieldElement.rational(
        Fraction(3 * tup.d, tup.c), params.D
    ) + 1


@dataclass(frozen=True)
class BoundReport:
    """Everything the pipeline needs to enumerate candidate (i, m) cells."""

    tup: MarkoffTuple
    kind: str
    gap: QuadFieldElement
    gap_decimal: str
    gap_argmin: int
    zero_exponents: Tuple[int, ...]
    rhs_coeff: QuadFieldElement
    index_bound: int


def index_bound(
    params: SequenceParams,
    tup: MarkoffTuple,
    env: Envelope,
    kind: str,
    gap: QuadFieldElement,
) -> int:
    """Largest i >= 0 with alpha^i <= rhs/gap, by exact comparisons."""
    if gap.sign() <= 0:
        raise ZeroBound("gap must be positive")
    limit = rhs_coefficient(params, tup, env, kind) / gap
    i = 0
    power = params.alpha
    while power <= limit:
        i += 1
        power = power * params.alpha
        if i > 10_000:
            raise ArithmeticError("index bound did not converge")
    return i


def bound_report(
    params: SequenceParams, tup: MarkoffTuple, kind: str, env: Envelope
) -> BoundReport:
    gap, argmin, zero = min_power_gap(params, tup, kind)
    bound = index_bound(params, tup, env, kind, gap)
    return BoundReport(
        tup=tup,
        kind=kind,
        gap=gap,
        gap_decimal=gap.decimal(5),
        gap_argmin=argmin,
        zero_exponents=zero,
        rhs_coeff=rhs_coefficient(params, tup, env, kind),
        index_bound=bound,
    )


def feasible_gaps(
    params: SequenceParams,
    tup: MarkoffTuple,
    env: Envelope,
    i: int,
    kind: str,
) -> FrozenSet[int]:
    """All m = k-j >= 0 surviving |alpha^(m-i) - target| <= rhs * alpha^(-i).

    Exponents that hit the target exactly are excluded here; those index
    planes belong to the diagonal resolution.  For i past the index bound the
    threshold drops below the positive minimum, so the set is empty.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    target = target_value(params, tup, kind)
    threshold = rhs_coefficient(params, tup, env, kind) * params.alpha.inverse() ** i
    zero = zero_gap_exponents(params, tup.d, tup.c, kind)
    out = []
    exponent = -i
    power = params.alpha.inverse() ** i
    while True:
        if power - target > threshold:
            break
        if exponent not in zero and abs(power - target) <= threshold:
            out.append(exponent + i)
        exponent += 1
        power = power * params.alpha
    return frozenset(out)
