"""The four elimination arguments, diagonal resolution, and certificates.

For a fixed coefficient tuple, smallest index i (with r = R_i) and gap
m = k-j, the equation a*r^2 + b*R_j^2 + c*R_{j+m}^2 = d*r*R_j*R_{j+m} is
attacked by, in order of cost:

  I    solvability of a*r^2 + b*y^2 + c*z^2 = d*r*y*z over the integers
       (definiteness, residue scan, witness search);
  II   a residue-class scan of j modulo a small modulus;
  III  substitution of the linear shift form R_{j+m} = g*R_j + h, leaving an
       integer quadratic in R_j that is solved exactly (beta must be a unit,
       except m = 0 which is the identity);
  IV   for Q = +-1, multiplying the Pell-type relation with the
       discriminant-must-be-square condition into a quartic Y^2 = f(X) in
       X = R_k, searched for integral points up to a bound.

Index planes k-i-j = I0 on which a power of alpha hits the bound target
exactly escape the index bound; they are resolved by an exact window plus
residue-class scans over the (i, j) classes, with per-row fallbacks.

Every negative claim is packaged as a certificate that can be re-checked
from its own fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _scan
from .lucas import (
    IdentityUnavailable,
    ModularSequence,
    SequenceParams,
    is_member,
    is_perfect_square,
    mod_reduce,
    shift_identity_coeffs,
    term,
)
from .tuples import MarkoffTuple

IndexTriple = Tuple[int, int, int]


class DegenerateCurve(ArithmeticError):
    """d^2*r^2 = 4bc: the second factor collapses; the case is already
    impossible because the discriminant would be -4ab*r^2 < 0."""


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefinitenessCertificate:
    """No (y, z) at all: d^2 r^2 - 4bc <= 0 forces the form positive."""

    variant = "definiteness"
    tup: Tuple[int, int, int, int]
    i: int
    r: int
    n_value: int


@dataclass(frozen=True)
class QuadResidueCertificate:
    """No residue pair (y, z) mod `modulus` satisfies the congruence."""

    variant = "quad-residue"
    tup: Tuple[int, int, int, int]
    i: int
    r: int
    modulus: int


@dataclass(frozen=True)
class ModularCertificate:
    """No index class j mod the sequence period satisfies the congruence."""

    variant = "modular"
    tup: Tuple[int, int, int, int]
    i: int
    m: int
    modulus: int


@dataclass(frozen=True)
class ShiftReductionCertificate:
    """Exact roots of the per-parity quadratics; complete for the cell."""

    variant = "shift-reduction"
    tup: Tuple[int, int, int, int]
    i: int
    m: int
    parity_rows: Tuple[Tuple[int, Tuple[int, int, int], Tuple[int, ...]], ...]
    solutions: Tuple[IndexTriple, ...]


@dataclass(frozen=True)
class DiagonalCertificate:
    """k-i-j = i0 plane: exact window + residue-class kills, per-row record.

    When `identity_reduction` is set the whole plane was decided by the
    product-identity argument instead (kind V, Q=1, i0=0), and the window,
    tail and row fields are empty.
    """

    variant = "diagonal"
    tup: Tuple[int, int, int, int]
    i0: int
    window: int
    tail_modulus: Optional[int]
    rows: Tuple[Tuple[int, str, Optional[int]], ...]
    solutions: Tuple[IndexTriple, ...]
    identity_reduction: Optional[Tuple[int, int, int]] = None


@dataclass(frozen=True)
class QuarticCertificate:
    """Bounded integral-point search; complete for R_k <= x_max."""

    variant = "quartic-search"
    tup: Tuple[int, int, int, int]
    i: int
    curves: Tuple[Tuple[int, int, int, Optional[int]], ...]
    x_max: int
    points: Tuple[Tuple[int, int], ...]
    solutions: Tuple[IndexTriple, ...]


Certificate = (
    DefinitenessCertificate
    | QuadResidueCertificate
    | ModularCertificate
    | ShiftReductionCertificate
    | DiagonalCertificate
    | QuarticCertificate
)


# ---------------------------------------------------------------------------
# argument I: the free quadratic in (y, z)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadDecision:
    status: str  # "solvable" | "unsolvable" | "unknown"
    witness: Optional[Tuple[int, int]]
    certificate: Optional[Certificate]


def _has_residue_pair(tup: MarkoffTuple, r: int, modulus: int) -> bool:
    for y in range(modulus):
        for z in range(modulus):
            v = tup.a * r * r + tup.b * y * y + tup.c * z * z - tup.d * r * y * z
            if v % modulus == 0:
                return True
    return False


def _witness_search(tup: MarkoffTuple, r: int, bound: int) -> Optional[Tuple[int, int]]:
    a, b, c, d = tup.abcd
    ar2 = a * r * r
    for y in range(1, bound + 1):
        disc = (d * r * y) ** 2 - 4 * c * (ar2 + b * y * y)
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for sgn in (s, -s):
            num = d * r * y + sgn
            if num > 0 and num % (2 * c) == 0:
                return (y, num // (2 * c))
    for z in range(1, bound + 1):
        disc = (d * r * z) ** 2 - 4 * b * (ar2 + c * z * z)
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for sgn in (s, -s):
            num = d * r * z + sgn
            if num > 0 and num % (2 * b) == 0:
                return (num // (2 * b), z)
    return None


def quad_solvable(
    tup: MarkoffTuple,
    r: int,
    i: int,
    moduli: Sequence[int] = (),
    witness_bound: int = 1024,
) -> QuadDecision:
    """Decide or semi-decide a*r^2 + b*y^2 + c*z^2 = d*r*y*z in positive y, z.

    Complete when N = d^2 r^2 - 4bc <= 0: for N < 0 the (y,z)-form is
    positive definite, for N = 0 the y-discriminant is -4ab*r^2 < 0.  For
    N > 0 a residue certificate or a bounded witness search may settle it;
    otherwise the case falls through to the per-gap stages.
    """
    n = tup.d**2 * r**2 - 4 * tup.b * tup.c
    if n <= 0:
        return QuadDecision(
            "unsolvable", None, DefinitenessCertificate(tup.abcd, i, r, n)
        )
    for modulus in moduli:
        if not _has_residue_pair(tup, r, modulus):
            return QuadDecision(
                "unsolvable", None, QuadResidueCertificate(tup.abcd, i, r, modulus)
            )
    witness = _witness_search(tup, r, witness_bound)
    if witness is not None:
        return QuadDecision("solvable", witness, None)
    return QuadDecision("unknown", None, None)


# ---------------------------------------------------------------------------
# argument II: modular elimination of a fixed (i, m) cell
# ---------------------------------------------------------------------------


def modular_eliminate(
    params: SequenceParams, tup: MarkoffTuple, i: int, m: int, modulus: int
) -> bool:
    """True iff no index j >= 1 can satisfy the congruence mod `modulus`."""
    seq = mod_reduce(params, modulus)
    r = term(params, i) % modulus
    for j in range(1, seq.preperiod + 2 * seq.period + 1):
        x = seq.residue(j)
        z = seq.residue(j + m)
        v = tup.a * r * r + tup.b * x * x + tup.c * z * z - tup.d * r * x * z
        if v % modulus == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# argument III: shift reduction to an integer quadratic
# ---------------------------------------------------------------------------


def _integer_quadratic_roots(L: int, M: int, R: int) -> List[int]:
    """Integer roots of L*y^2 + M*y + R = 0 (not identically zero)."""
    if L == 0:
        if M == 0:
            if R == 0:
                raise ArithmeticError("identically zero quadratic")
            return []
        return [-R // M] if R % M == 0 else []
    disc = M * M - 4 * L * R
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    roots = set()
    for sgn in (s, -s):
        num = -M + sgn
        if num % (2 * L) == 0:
            roots.add(num // (2 * L))
    return sorted(roots)


def shift_reduce(
    params: SequenceParams, tup: MarkoffTuple, i: int, m: int
) -> Tuple[List[IndexTriple], ShiftReductionCertificate]:
    """Solve the (i, m) cell exactly through R_{j+m} = g*R_j + h.

    Needs beta in {+1,-1} for m >= 1 (m = 0 is the identity for any
    parameters).  Returns every solution with i <= j and the certificate
    recording the per-parity quadratics and their integer roots.
    """
    r = term(params, i)
    coeffs = shift_identity_coeffs(params, m)
    a, b, c, d = tup.abcd
    rows = []
    triples: List[IndexTriple] = []
    for parity in sorted(coeffs):
        g, h = coeffs[parity]
        L = b + c * g * g - d * r * g
        M = 2 * c * g * h - d * r * h
        R = a * r * r + c * h * h
        roots = _integer_quadratic_roots(L, M, R)
        rows.append((parity, (L, M, R), tuple(roots)))
        for y in roots:
            if y < 1:
                continue
            z = g * y + h
            if z < 1:
                continue
            for j in sorted(is_member(params, y)):
                if j < i or j % 2 != parity:
                    continue
                k = j + m
                assert term(params, k) == z
                triples.append((i, j, k))
    triples = sorted(set(triples))
    cert = ShiftReductionCertificate(tup.abcd, i, m, tuple(rows), tuple(triples))
    return triples, cert


# ---------------------------------------------------------------------------
# argument IV: the quartic curve in X = R_k
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuarticCurve:
    """Y^2 = a4*X^4 + b2*X^2 + c0, the product of the Pell-type factor and
    the discriminant factor for a fixed smallest index.

    `parity` restricts which index parity of k the curve covers (Q = -1
    splits by the sign of Q^k); `y_scale` is the factor divided out of Y
    (the raw factor product equals y_scale^2 times this curve).
    """

    a4: int
    b2: int
    c0: int
    parity: Optional[int]
    y_scale: int
    first_factor: Tuple[int, int]
    second_factor: Tuple[int, int]
    tup: Tuple[int, int, int, int]
    i: int
    r: int
    kind: str

    def value(self, x: int) -> int:
        x2 = x * x
        return self.a4 * x2 * x2 + self.b2 * x2 + self.c0


def build_quartic(params: SequenceParams, tup: MarkoffTuple, i: int) -> List[QuarticCurve]:
    """Curves whose integral points carry every candidate R_k for this i.

    First factor: D*X^2 + 4Q^k for kind U (from V_k^2 - D*U_k^2 = 4Q^k with
    X = U_k), D*X^2 - 4D*Q^k for kind V; divided by 4 when P is even, where
    the V-terms are all even.  Second factor: N*X^2 - 4ab*r^2 with
    N = d^2 r^2 - 4bc, the discriminant of the equation as a quadratic in
    R_j.  Q = -1 yields one curve per parity of k.
    """
    if params.Q not in (1, -1):
        raise ValueError("quartic construction needs Q = +1 or -1")
    r = term(params, i)
    a, b, c, d = tup.abcd
    n = d * d * r * r - 4 * b * c
    if n == 0:
        raise DegenerateCurve(f"d^2*r^2 = 4bc for i={i}")
    second = (n, -4 * a * b * r * r)
    halve = params.P % 2 == 0
    parities: Tuple[Optional[int], ...] = (None,) if params.Q == 1 else (0, 1)
    curves = []
    for parity in parities:
        q_pow = 1 if parity is None or parity == 0 else -1
        if params.kind == "U":
            first = (params.D, 4 * q_pow)
        else:
            first = (params.D, -4 * params.D * q_pow)
        y_scale = 1
        if halve:
            first = (first[0] // 4, first[1] // 4)
            y_scale = 2
        a4 = first[0] * second[0]
        b2 = first[0] * second[1] + first[1] * second[0]
        c0 = first[1] * second[1]
        curves.append(
            QuarticCurve(
                a4, b2, c0, parity, y_scale, first, second, tup.abcd, i, r, params.kind
            )
        )
    return curves


def quartic_integral_points(
    curve: QuarticCurve, x_max: int, backend: Optional[str] = None
) -> List[Tuple[int, int]]:
    """All (X, Y), 0 <= X <= x_max, Y >= 0, on the curve; negative X mirror
    by symmetry.  Complete only up to x_max."""
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    return _scan.quartic_scan(curve.a4, curve.b2, curve.c0, x_max, backend=backend)


def final_quadratic(tup: MarkoffTuple, r: int, z: int) -> List[int]:
    """Positive roots y of b*y^2 - d*r*z*y + (a*r^2 + c*z^2) = 0."""
    roots = _integer_quadratic_roots(
        tup.b, -tup.d * r * z, tup.a * r * r + tup.c * z * z
    )
    return [y for y in roots if y >= 1]


def quartic_case_solutions(
    params: SequenceParams,
    tup: MarkoffTuple,
    i: int,
    x_max: int,
    backend: Optional[str] = None,
) -> Tuple[List[IndexTriple], QuarticCertificate]:
    """Resolve the whole index case i (every j, k) via the quartic curves.

    Complete conditional on R_k <= x_max, which the certificate records.
    """
    r = term(params, i)
    curves = build_quartic(params, tup, i)
    points: List[Tuple[int, int]] = []
    triples: List[IndexTriple] = []
    for curve in curves:
        for x, y in quartic_integral_points(curve, x_max, backend=backend):
            points.append((x, y))
            if x < 1:
                continue
            for k in sorted(is_member(params, x)):
                if curve.parity is not None and k % 2 != curve.parity:
                    continue
                if k < i:
                    continue
                for root in final_quadratic(tup, r, x):
                    for j in sorted(is_member(params, root)):
                        if i <= j <= k:
                            triples.append((i, j, k))
    triples = sorted(set(triples))
    cert = QuarticCertificate(
        tup.abcd,
        i,
        tuple((c.a4, c.b2, c.c0, c.parity) for c in curves),
        x_max,
        tuple(sorted(set(points))),
        tuple(triples),
    )
    return triples, cert


# ---------------------------------------------------------------------------
# diagonal planes k - i - j = i0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalOutcome:
    solutions: Tuple[IndexTriple, ...]
    certificate: Optional[DiagonalCertificate]
    unresolved_rows: Tuple[object, ...]  # row indices and/or "tail"


def _diag_value(tup: MarkoffTuple, x: int, y: int, z: int, modulus: int) -> int:
    return (
        tup.a * x * x + tup.b * y * y + tup.c * z * z - tup.d * x * y * z
    ) % modulus


def _diag_tail_dead(
    params: SequenceParams, tup: MarkoffTuple, i0: int, seq: ModularSequence, t: int
) -> bool:
    """No residue class pair works for i, j > t (classes valid past the
    preperiod, which t dominates)."""
    lo = t + 1
    for ci in range(lo, lo + seq.period):
        for cj in range(lo, lo + seq.period):
            k_idx = ci + cj + i0
            if k_idx < 0:
                continue
            v = _diag_value(
                tup,
                seq.residue(ci),
                seq.residue(cj),
                seq.residue(k_idx),
                seq.modulus,
            )
            if v == 0:
                return False
    return True


def _diag_row_dead(
    params: SequenceParams,
    tup: MarkoffTuple,
    i0: int,
    i: int,
    seq: ModularSequence,
    t: int,
) -> bool:
    """No class of j > t works for this exact small i."""
    r = term(params, i) % seq.modulus
    lo = t + 1
    for cj in range(lo, lo + seq.period):
        k_idx = cj + i + i0
        if k_idx < 0:
            continue
        if _diag_value(tup, r, seq.residue(cj), seq.residue(k_idx), seq.modulus) == 0:
            return False
    return True


def _v_product_identity(
    params: SequenceParams, tup: MarkoffTuple
) -> Optional[Tuple[List[IndexTriple], Tuple[int, int, int]]]:
    """Exact reduction of the kind-V, Q=1, k=i+j plane (d = c there).

    V_i*V_j = V_{i+j} + V_{j-i} and V_{2n} = V_n^2 - 2 turn the equation into
    (a-c)*V_i^2 + (b-c)*V_j^2 + 4c = 0.  When the reduced form cannot change
    sign the plane is decided by a finite enumeration; mixed signs leave a
    Pell-type condition and the caller falls back to residue scans.
    """
    a, b, c, _ = tup.abcd
    A, B, C = a - c, b - c, 4 * c
    if A > 0 or B > 0:
        if A >= 0 and B >= 0:
            return [], (A, B, C)  # strictly positive: impossible
        return None
    if A == 0 and B == 0:
        return [], (A, B, C)
    if A == 0 or B == 0:
        # one variable free: either empty or an infinite family; decide only
        # the empty case
        coef = A or B
        rhs, rem = divmod(C, -coef)
        if rem == 0 and is_perfect_square(rhs) and is_member(params, math.isqrt(rhs)):
            return None
        return [], (A, B, C)
    sols: List[IndexTriple] = []
    t = 1
    while -B * t * t <= C + A:  # t = V_j; s = V_i <= t
        num = C + B * t * t
        if num > 0:
            s2, rem = divmod(num, -A)
            if rem == 0 and is_perfect_square(s2):
                s = math.isqrt(s2)
                if 1 <= s <= t:
                    for i in sorted(is_member(params, s)):
                        for j in sorted(is_member(params, t)):
                            if i <= j and tup.holds(s, t, term(params, i + j)):
                                sols.append((i, j, i + j))
        t += 1
    return sorted(set(sols)), (A, B, C)


def diagonal_eliminate(
    params: SequenceParams,
    tup: MarkoffTuple,
    i0: int,
    moduli: Sequence[int],
    window: int = 8,
    scan_limit: int = 24,
) -> DiagonalOutcome:
    """Resolve the index plane k = i + j + i0 (all 1 <= i <= j).

    Exact enumeration for i, j up to the window; residue-class scans kill the
    (i > T, j > T) tail and each small-i row beyond the window, falling back
    to per-cell modular elimination and, when available, shift reduction.
    Regions that resist everything are scanned exactly up to `scan_limit`
    and reported unresolved.
    """
    if params.kind == "V" and params.Q == 1 and i0 == 0:
        decided = _v_product_identity(params, tup)
        if decided is not None:
            sols, reduction = decided
            solutions = tuple(sols)
            cert = DiagonalCertificate(
                tup.abcd, i0, 0, None, (), solutions, reduction
            )
            return DiagonalOutcome(solutions, cert, ())
    seqs = [mod_reduce(params, m) for m in moduli]
    t = max([window, 1] + [s.preperiod for s in seqs])
    sols = set()
    for i in range(1, t + 1):
        for j in range(i, t + 1):
            k = i + j + i0
            if k < j or k < 1:
                continue
            x, y, z = term(params, i), term(params, j), term(params, k)
            if tup.holds(x, y, z):
                sols.add((i, j, k))

    unresolved: List[object] = []
    tail_modulus = None
    for seq in seqs:
        if _diag_tail_dead(params, tup, i0, seq, t):
            tail_modulus = seq.modulus
            break
    if tail_modulus is None:
        unresolved.append("tail")
        for i in range(t + 1, scan_limit + 1):
            for j in range(i, scan_limit + 1):
                k = i + j + i0
                if k < j or k < 1:
                    continue
                if tup.holds(term(params, i), term(params, j), term(params, k)):
                    sols.add((i, j, k))

    rows: List[Tuple[int, str, Optional[int]]] = []
    shift_ok = params.beta_unit is not None
    for i in range(1, t + 1):
        m = i + i0
        if m < 0:
            rows.append((i, "vacuous", None))
            continue
        done = None
        # the whole index case may already be impossible over the integers
        decision = quad_solvable(tup, term(params, i), i, moduli, witness_bound=0)
        if decision.status == "unsolvable":
            done = (decision.certificate.variant, getattr(decision.certificate, "modulus", None))
        for seq in seqs:
            if done is not None:
                break
            if _diag_row_dead(params, tup, i0, i, seq, t):
                done = ("classes", seq.modulus)
                break
        if done is None:
            for seq in seqs:
                if modular_eliminate(params, tup, i, m, seq.modulus):
                    done = ("cell", seq.modulus)
                    break
        if done is None and (shift_ok or m == 0):
            triples, _cert = shift_reduce(params, tup, i, m)
            sols.update(triples)
            done = ("shift", None)
        if done is None:
            unresolved.append(i)
            for j in range(max(i, t + 1), scan_limit + 1):
                k = i + j + i0
                if k < j or k < 1:
                    continue
                if tup.holds(term(params, i), term(params, j), term(params, k)):
                    sols.add((i, j, k))
            rows.append((i, "unresolved", None))
        else:
            rows.append((i, done[0], done[1]))

    solutions = tuple(sorted(sols))
    cert = None
    if not unresolved:
        cert = DiagonalCertificate(
            tup.abcd, i0, t, tail_modulus, tuple(rows), solutions
        )
    return DiagonalOutcome(solutions, cert, tuple(unresolved))


# ---------------------------------------------------------------------------
# certificate re-checking
# ---------------------------------------------------------------------------


def verify_certificate(params: SequenceParams, cert: Certificate) -> bool:
    """Re-establish the certificate's claim from its own fields."""
    tup = MarkoffTuple(*cert.tup, base=cert.tup)
    if isinstance(cert, DefinitenessCertificate):
        n = cert.tup[3] ** 2 * cert.r**2 - 4 * cert.tup[1] * cert.tup[2]
        return n == cert.n_value and n <= 0 and term(params, cert.i) == cert.r
    if isinstance(cert, QuadResidueCertificate):
        return term(params, cert.i) == cert.r and not _has_residue_pair(
            tup, cert.r, cert.modulus
        )
    if isinstance(cert, ModularCertificate):
        return modular_eliminate(params, tup, cert.i, cert.m, cert.modulus)
    if isinstance(cert, ShiftReductionCertificate):
        triples, fresh = shift_reduce(params, tup, cert.i, cert.m)
        return fresh.parity_rows == cert.parity_rows and tuple(triples) == cert.solutions
    if isinstance(cert, QuarticCertificate):
        curves = build_quartic(params, tup, cert.i)
        if tuple((c.a4, c.b2, c.c0, c.parity) for c in curves) != cert.curves:
            return False
        triples, fresh = quartic_case_solutions(params, tup, cert.i, cert.x_max)
        return fresh.points == cert.points and tuple(triples) == cert.solutions
    if isinstance(cert, DiagonalCertificate):
        if cert.identity_reduction is not None:
            decided = _v_product_identity(params, tup)
            return decided is not None and (
                tuple(decided[0]),
                decided[1],
            ) == (cert.solutions, cert.identity_reduction)
        outcome = diagonal_eliminate(
            params,
            tup,
            cert.i0,
            [cert.tail_modulus]
            + [m for (_, kind, m) in cert.rows if m is not None],
            window=cert.window,
        )
        return outcome.certificate is not None and outcome.solutions == cert.solutions
    raise TypeError(f"unknown certificate {type(cert).__name__}")


def certificate_contradicts(
    cert: Certificate, triple: IndexTriple, values: Tuple[int, int, int]
) -> bool:
    """Does this certificate claim the given ordered solution impossible?"""
    i, j, k = triple
    if isinstance(cert, (DefinitenessCertificate, QuadResidueCertificate)):
        return cert.i == i
    if isinstance(cert, ModularCertificate):
        return cert.i == i and cert.m == k - j
    if isinstance(cert, ShiftReductionCertificate):
        return cert.i == i and cert.m == k - j and triple not in cert.solutions
    if isinstance(cert, QuarticCertificate):
        return cert.i == i and values[2] <= cert.x_max and triple not in cert.solutions
    if isinstance(cert, DiagonalCertificate):
        return k - i - j == cert.i0 and triple not in cert.solutions
    raise TypeError(f"unknown certificate {type(cert).__name__}")
