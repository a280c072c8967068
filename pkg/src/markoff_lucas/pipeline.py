"""Resolution pipeline: bounds -> stage I -> gap sieve -> exact stages.

For one base tuple the solver runs every distinct permutation of (a,b,c)
with ordered indices 1 <= i <= j <= k, resolves each candidate cell either
positively (exact solutions) or negatively (a certificate), resolves the
diagonal index planes separately, then permutes the found value triples back
through the base equation and deduplicates.

A cell that resists every stage is reported unresolved, never dropped; such
cells still get an exact bounded index scan so that small solutions cannot
be missed (the independent oracle below cross-checks this).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

from .bounds import (
    BoundReport,
    bound_report,
    feasible_gaps,
    preset_envelope,
    verify_envelope,
    zero_gap_exponents,
)
from .elimination import (
    Certificate,
    DiagonalCertificate,
    ModularCertificate,
    QuarticCertificate,
    modular_eliminate,
    diagonal_eliminate,
    quad_solvable,
    quartic_case_solutions,
    shift_reduce,
)
from .lucas import SequenceParams, term
from .tuples import MarkoffTuple, permutations_of

IndexTriple = Tuple[int, int, int]
ValueTriple = Tuple[int, int, int]

DEFAULT_MODULI = (3, 5, 7, 8, 9, 11, 13, 16)


@dataclass(frozen=True)
class ResolveConfig:
    moduli: Tuple[int, ...] = DEFAULT_MODULI
    x_max: int = 10**6
    witness_bound: int = 1024
    diagonal_window: int = 8
    scan_limit: int = 24
    envelope: str = "analytic"
    backend: Optional[str] = None  # quartic scan backend override

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GapOutcome:
    m: int
    status: str  # "eliminated" | "solved" | "quartic" | "unresolved"
    certificate: Optional[Certificate]
    solutions: Tuple[IndexTriple, ...]


@dataclass(frozen=True)
class CaseOutcome:
    """Everything that happened for one smallest index i."""

    i: int
    r: int
    stage1: str  # "unsolvable" | "solvable" | "unknown"
    stage1_certificate: Optional[Certificate]
    witness: Optional[Tuple[int, int]]
    gaps: Tuple[GapOutcome, ...]
    solutions: Tuple[IndexTriple, ...]
    unresolved_gaps: Tuple[int, ...]


@dataclass(frozen=True)
class DiagonalRecord:
    i0: int
    solutions: Tuple[IndexTriple, ...]
    certificate: Optional[DiagonalCertificate]
    unresolved_rows: Tuple[object, ...]


@dataclass(frozen=True)
class UnresolvedCase:
    tup: Tuple[int, int, int, int]
    kind: str  # "index-case" | "diagonal"
    detail: Tuple[object, ...]
    scanned_to: int


@dataclass(frozen=True)
class PermutationReport:
    tup: MarkoffTuple
    bound: BoundReport
    cases: Tuple[CaseOutcome, ...]
    diagonals: Tuple[DiagonalRecord, ...]
    solutions: Tuple[ValueTriple, ...]  # under the permuted tuple, index-sorted

    @property
    def surviving_i(self) -> Tuple[int, ...]:
        return tuple(c.i for c in self.cases if c.stage1 != "unsolvable")


@dataclass(frozen=True)
class ResolutionReport:
    P: int
    Q: int
    kind: str
    base: Tuple[int, int, int, int]
    permutations: Tuple[PermutationReport, ...]
    solutions: Tuple[ValueTriple, ...]  # for the base tuple component order
    unresolved: Tuple[UnresolvedCase, ...]
    config: ResolveConfig

    @property
    def complete(self) -> bool:
        return not self.unresolved


def _index_to_values(params: SequenceParams, triples) -> Tuple[ValueTriple, ...]:
    vals = {
        (term(params, i), term(params, j), term(params, k)) for (i, j, k) in triples
    }
    return tuple(sorted(vals))


def _resolve_case(
    params: SequenceParams,
    tup: MarkoffTuple,
    env,
    i: int,
    config: ResolveConfig,
) -> CaseOutcome:
    r = term(params, i)
    decision = quad_solvable(tup, r, i, config.moduli, config.witness_bound)
    if decision.status == "unsolvable":
        return CaseOutcome(
            i, r, decision.status, decision.certificate, None, (), (), ()
        )
    gaps = sorted(feasible_gaps(params, tup, env, i, params.kind))
    outcomes: List[GapOutcome] = []
    solutions = set()
    pending: List[int] = []
    for m in gaps:
        cert = None
        for modulus in config.moduli:
            if modular_eliminate(params, tup, i, m, modulus):
                cert = ModularCertificate(tup.abcd, i, m, modulus)
                break
        if cert is not None:
            outcomes.append(GapOutcome(m, "eliminated", cert, ()))
            continue
        if params.beta_unit is not None or m == 0:
            triples, scert = shift_reduce(params, tup, i, m)
            solutions.update(triples)
            outcomes.append(GapOutcome(m, "solved", scert, tuple(triples)))
            continue
        pending.append(m)
    unresolved: Tuple[int, ...] = ()
    if pending:
        if params.Q in (1, -1):
            triples, qcert = quartic_case_solutions(
                params, tup, i, config.x_max, config.backend
            )
            solutions.update(triples)
            # the quartic search is value-bounded (R_k <= x_max); an exact
            # index-bounded sweep keeps low-index solutions complete even
            # when their z-component is huge (infinite families do occur)
            for j in range(i, config.scan_limit + 1):
                y = term(params, j)
                for k in range(j, config.scan_limit + 1):
                    if tup.holds(r, y, term(params, k)):
                        solutions.add((i, j, k))
            for m in pending:
                found = tuple(t for t in triples if t[2] - t[1] == m)
                outcomes.append(GapOutcome(m, "quartic", qcert, found))
        else:
            unresolved = tuple(pending)
            for m in pending:
                found = []
                for j in range(i, config.scan_limit + 1):
                    k = j + m
                    if tup.holds(term(params, i), term(params, j), term(params, k)):
                        found.append((i, j, k))
                solutions.update(found)
                outcomes.append(GapOutcome(m, "unresolved", None, tuple(found)))
    return CaseOutcome(
        i,
        r,
        decision.status,
        decision.certificate,
        decision.witness,
        tuple(outcomes),
        tuple(sorted(solutions)),
        unresolved,
    )


def resolve(
    params: SequenceParams,
    base: Tuple[int, int, int, int],
    config: ResolveConfig = ResolveConfig(),
) -> ResolutionReport:
    """Complete resolution of the base tuple over the given sequence."""
    env = preset_envelope(config.envelope, params)
    if not verify_envelope(params, env):
        raise ValueError(f"envelope {config.envelope!r} fails for {params.describe()}")

    perm_reports: List[PermutationReport] = []
    unresolved: List[UnresolvedCase] = []
    for tup in permutations_of(base):
        rep = bound_report(params, tup, params.kind, env)
        cases = tuple(
            _resolve_case(params, tup, env, i, config)
            for i in range(1, rep.index_bound + 1)
        )
        for case in cases:
            if case.unresolved_gaps:
                unresolved.append(
                    UnresolvedCase(
                        tup.abcd,
                        "index-case",
                        (case.i,) + case.unresolved_gaps,
                        config.scan_limit,
                    )
                )
        diagonals = []
        for i0 in sorted(zero_gap_exponents(params, tup.d, tup.c, params.kind)):
            outcome = diagonal_eliminate(
                params,
                tup,
                i0,
                config.moduli,
                config.diagonal_window,
                config.scan_limit,
            )
            diagonals.append(
                DiagonalRecord(
                    i0, outcome.solutions, outcome.certificate, outcome.unresolved_rows
                )
            )
            if outcome.unresolved_rows:
                unresolved.append(
                    UnresolvedCase(
                        tup.abcd,
                        "diagonal",
                        (i0,) + outcome.unresolved_rows,
                        config.scan_limit,
                    )
                )
        index_triples = set()
        for case in cases:
            index_triples.update(case.solutions)
        for diag in diagonals:
            index_triples.update(diag.solutions)
        perm_reports.append(
            PermutationReport(
                tup,
                rep,
                cases,
                tuple(diagonals),
                _index_to_values(params, index_triples),
            )
        )

    base_tup = permutations_of(base)[0]
    merged = set()
    for rep in perm_reports:
        for values in rep.solutions:
            for x, y, z in _component_orders(values):
                if base_tup.holds(x, y, z):
                    merged.add((x, y, z))
    return ResolutionReport(
        params.P,
        params.Q,
        params.kind,
        tuple(base),
        tuple(perm_reports),
        tuple(sorted(merged)),
        tuple(unresolved),
        config,
    )


def _component_orders(values: ValueTriple):
    seen = set()
    from itertools import permutations as perms

    for ordering in perms(values):
        if ordering not in seen:
            seen.add(ordering)
            yield ordering


def brute_force_oracle(
    params: SequenceParams, base: Tuple[int, int, int, int], n_max: int
):
    """Exhaustive scan over index triples 1..n_max of the base equation.

    Independent of the pipeline: no bounds, no sieves, just the recurrence
    and exact integer arithmetic.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a, b, c, d = base
    vals = [term(params, n) for n in range(n_max + 1)]
    out = set()
    for i in range(1, n_max + 1):
        x = vals[i]
        for j in range(1, n_max + 1):
            y = vals[j]
            for k in range(1, n_max + 1):
                z = vals[k]
                if a * x * x + b * y * y + c * z * z == d * x * y * z:
                    out.add((x, y, z))
    return frozenset(out)
