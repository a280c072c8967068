"""Command-line front end: solve | bounds | classify-zero | oracle.

Configuration is layered: built-in defaults, then an optional flat key=value
config file, then command-line flags.  Output is either a human table or
line-delimited JSON records with a fixed field order (schema, command,
params, tuple, perm, stage, payload).

Exit codes: 0 success, 1 invalid configuration, 2 solve left unresolved
cases (batch drivers may widen the search and retry).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields, is_dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bounds import bound_report, preset_envelope, zero_gap_exponents
from .elimination import quad_solvable
from .lucas import InvalidParams, SequenceParams, term, validate_params
from .pipeline import ResolveConfig, ResolutionReport, brute_force_oracle, resolve
from .quadfield import QuadFieldElement
from .tuples import ROSENBERGER_SET, MarkoffTuple, permutations_of

SCHEMA = "markoff-lucas/1"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    P: int = 6
    Q: int = 1
    kind: str = "U"
    tuples: Tuple[Tuple[int, int, int, int], ...] = ROSENBERGER_SET
    moduli: Tuple[int, ...] = (3, 5, 7, 8, 9, 11, 13, 16)
    x_max: int = 10**6
    oracle_n_max: int = 20
    envelope: str = "analytic"
    diagonal_window: int = 8
    scan_limit: int = 24
    witness_bound: int = 1024
    output: str = "human"

    def validate(self) -> "RunConfig":
        if self.kind not in ("U", "V"):
            raise ConfigError(f"kind must be U or V, got {self.kind!r}")
        if self.output not in ("human", "records"):
            raise ConfigError(f"output must be human or records, got {self.output!r}")
        for t in self.tuples:
            if t not in ROSENBERGER_SET:
                raise ConfigError(f"tuple {t} is not in the admissible set")
        for name in ("x_max", "oracle_n_max", "diagonal_window", "scan_limit", "witness_bound"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if any(m < 2 for m in self.moduli):
            raise ConfigError("moduli must be >= 2")
        return self

    def solver_config(self) -> ResolveConfig:
        return ResolveConfig(
            moduli=self.moduli,
            x_max=self.x_max,
            witness_bound=self.witness_bound,
            diagonal_window=self.diagonal_window,
            scan_limit=self.scan_limit,
            envelope=self.envelope,
        )

    # -- flat key=value file representation -----------------------------------

    def to_file(self, path: str) -> None:
        lines = [
            f"P = {self.P}",
            f"Q = {self.Q}",
            f"kind = {self.kind}",
            "tuples = " + " ".join(",".join(map(str, t)) for t in self.tuples),
            "moduli = " + ",".join(map(str, self.moduli)),
            f"xmax = {self.x_max}",
            f"nmax = {self.oracle_n_max}",
            f"envelope = {self.envelope}",
            f"diagonal_window = {self.diagonal_window}",
            f"scan_limit = {self.scan_limit}",
            f"witness_bound = {self.witness_bound}",
            f"output = {self.output}",
        ]
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_file(cls, path: str, base: Optional["RunConfig"] = None) -> "RunConfig":
        cfg = base or cls()
        try:
            with open(path) as fh:
                raw = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        for lineno, line in enumerate(raw.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            cfg = _apply_option(cfg, key, value, where=f"{path}:{lineno}")
        return cfg


_INT_KEYS = {
    "P": "P",
    "Q": "Q",
    "xmax": "x_max",
    "nmax": "oracle_n_max",
    "diagonal_window": "diagonal_window",
    "scan_limit": "scan_limit",
    "witness_bound": "witness_bound",
}


def _apply_option(cfg: RunConfig, key: str, value: str, where: str) -> RunConfig:
    try:
        if key in _INT_KEYS:
            return replace(cfg, **{_INT_KEYS[key]: int(value)})
        if key == "kind":
            return replace(cfg, kind=value)
        if key == "envelope":
            return replace(cfg, envelope=value)
        if key == "output":
            return replace(cfg, output=value)
        if key == "moduli":
            return replace(cfg, moduli=tuple(int(v) for v in value.replace(",", " ").split()))
        if key == "tuples":
            return replace(cfg, tuples=tuple(_parse_tuple(t) for t in value.split()))
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key}: {exc}") from exc
    raise ConfigError(f"{where}: unknown key {key!r}")


def _parse_tuple(text: str) -> Tuple[int, int, int, int]:
    parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p]
    if len(parts) != 4:
        raise ValueError(f"expected a,b,c,d got {text!r}")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# records serialization
# ---------------------------------------------------------------------------


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, QuadFieldElement):
        return {"u": str(obj.u), "v": str(obj.v), "d": obj.d, "approx": float(obj)}
    if isinstance(obj, MarkoffTuple):
        return list(obj.abcd)
    if is_dataclass(obj):
        payload = {"variant": getattr(obj, "variant", type(obj).__name__)}
        for f in fields(obj):
            payload[f.name] = _jsonable(getattr(obj, f.name))
        return payload
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _record(out, command, cfg, stage, payload, tup=None, perm=None):
    line = {
        "schema": SCHEMA,
        "command": command,
        "params": {"P": cfg.P, "Q": cfg.Q, "kind": cfg.kind},
        "tuple": list(tup) if tup else None,
        "perm": list(perm) if perm else None,
        "stage": stage,
        "payload": _jsonable(payload),
    }
    out.write(json.dumps(line) + "\n")


def _fmt_triples(sols) -> str:
    return "{" + ", ".join("(" + ",".join(map(str, s)) + ")" for s in sols) + "}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_solve(cfg: RunConfig, out) -> int:
    params = validate_params(cfg.P, cfg.Q, cfg.kind)
    solver = cfg.solver_config()
    reports: List[ResolutionReport] = [resolve(params, t, solver) for t in cfg.tuples]
    unresolved_total = sum(len(r.unresolved) for r in reports)
    if cfg.output == "human":
        out.write(f"solutions over {params.describe()}\n")
        for rep in reports:
            status = ""
            if rep.unresolved:
                status = f"  [unresolved: {len(rep.unresolved)} cases]"
            out.write(
                "(" + ",".join(map(str, rep.base)) + "): "
                + _fmt_triples(rep.solutions) + status + "\n"
            )
    else:
        for rep in reports:
            for prep in rep.permutations:
                _record(
                    out, "solve", cfg, "bound",
                    {
                        "gap": prep.bound.gap,
                        "gap_decimal": prep.bound.gap_decimal,
                        "gap_argmin": prep.bound.gap_argmin,
                        "zero_exponents": prep.bound.zero_exponents,
                        "index_bound": prep.bound.index_bound,
                    },
                    tup=rep.base, perm=prep.tup.abcd,
                )
                for case in prep.cases:
                    _record(
                        out, "solve", cfg, "case",
                        {
                            "i": case.i, "r": case.r, "stage1": case.stage1,
                            "stage1_certificate": case.stage1_certificate,
                            "witness": case.witness,
                            "gaps": case.gaps,
                            "solutions": case.solutions,
                            "unresolved_gaps": case.unresolved_gaps,
                        },
                        tup=rep.base, perm=prep.tup.abcd,
                    )
                for diag in prep.diagonals:
                    _record(
                        out, "solve", cfg, "diagonal",
                        {
                            "i0": diag.i0,
                            "solutions": diag.solutions,
                            "certificate": diag.certificate,
                            "unresolved_rows": diag.unresolved_rows,
                        },
                        tup=rep.base, perm=prep.tup.abcd,
                    )
            for sol in rep.solutions:
                _record(out, "solve", cfg, "solution", {"x": sol[0], "y": sol[1], "z": sol[2]}, tup=rep.base)
            _record(
                out, "solve", cfg, "summary",
                {
                    "solutions": rep.solutions,
                    "unresolved": len(rep.unresolved),
                    "complete": rep.complete,
                    "x_max": solver.x_max,
                },
                tup=rep.base,
            )
    return 2 if unresolved_total else 0


def cmd_bounds(cfg: RunConfig, out) -> int:
    params = validate_params(cfg.P, cfg.Q, cfg.kind)
    env = preset_envelope(cfg.envelope, params)
    rows = []
    for base in cfg.tuples:
        for tup in permutations_of(base):
            rep = bound_report(params, tup, cfg.kind, env)
            surviving = []
            for i in range(1, rep.index_bound + 1):
                decision = quad_solvable(
                    tup, term(params, i), i, cfg.moduli, cfg.witness_bound
                )
                if decision.status != "unsolvable":
                    surviving.append(i)
            rows.append((base, tup, rep, surviving))
    if cfg.output == "human":
        out.write(f"index bounds over {params.describe()} [envelope={cfg.envelope}]\n")
        header = f"{'tuple':<12} {'min_gap':<12} {'at_I':>4} {'zero_I':>7} {'i_bound':>8}  surviving_i\n"
        out.write(header)
        for base, tup, rep, surviving in rows:
            zero = ",".join(map(str, rep.zero_exponents)) or "-"
            surv = ",".join(map(str, surviving)) or "-"
            out.write(
                f"{str(tup):<12} {rep.gap_decimal:<12} {rep.gap_argmin:>4} "
                f"{zero:>7} {rep.index_bound:>8}  {surv}\n"
            )
    else:
        for base, tup, rep, surviving in rows:
            _record(
                out, "bounds", cfg, "bound",
                {
                    "gap": rep.gap,
                    "gap_decimal": rep.gap_decimal,
                    "gap_argmin": rep.gap_argmin,
                    "zero_exponents": rep.zero_exponents,
                    "rhs_coeff": rep.rhs_coeff,
                    "index_bound": rep.index_bound,
                    "surviving_i": surviving,
                },
                tup=base, perm=tup.abcd,
            )
    return 0


def classify_zero_cases(
    p_min: int, p_max: int, e_values: Sequence[int], kind: str
) -> List[Tuple[int, int, int, int]]:
    """All (P, Q, e, I) with alpha^I exactly on the bound target."""
    hits = []
    for p in range(p_min, p_max + 1):
        for q in range(-p - 1, p):
            if q == 0 or p * p - 4 * q <= 0:
                continue
            try:
                params = validate_params(p, q, "U")
            except InvalidParams:
                continue
            for e in e_values:
                for i in sorted(zero_gap_exponents(params, e, 1, kind)):
                    hits.append((p, q, e, i))
    return hits


def cmd_classify_zero(cfg: RunConfig, out, p_min: int, p_max: int, e_min: int, e_max: int) -> int:
    if p_min < 2 or p_max < p_min or e_min < 1 or e_max < e_min:
        raise ConfigError("need 2 <= pmin <= pmax and 1 <= emin <= emax")
    e_values = range(e_min, e_max + 1)
    for kind in ("U", "V"):
        hits = classify_zero_cases(p_min, p_max, e_values, kind)
        if kind == "V":
            family = [h for h in hits if h[2] == 1]
            rest = [h for h in hits if h[2] != 1]
        else:
            family, rest = [], hits
        if cfg.output == "human":
            out.write(f"kind {kind}: zero cases for P in [{p_min},{p_max}], e in [{e_min},{e_max}]\n")
            if family:
                out.write(f"  e=1 I=0 family: every admitted (P,Q), {len(family)} pairs\n")
            for p, q, e, i in rest:
                out.write(f"  P={p} Q={q} e={e} I={i}\n")
        else:
            for p, q, e, i in hits:
                _record(
                    out, "classify-zero", cfg, "zero-case",
                    {"P": p, "Q": q, "e": e, "I": i, "kind": kind},
                )
    return 0


def cmd_oracle(cfg: RunConfig, out) -> int:
    params = validate_params(cfg.P, cfg.Q, cfg.kind)
    if cfg.output == "human":
        out.write(f"oracle over {params.describe()} n_max={cfg.oracle_n_max}\n")
    for base in cfg.tuples:
        sols = sorted(brute_force_oracle(params, base, cfg.oracle_n_max))
        if cfg.output == "human":
            out.write("(" + ",".join(map(str, base)) + "): " + _fmt_triples(sols) + "\n")
        else:
            _record(out, "oracle", cfg, "summary", {"solutions": sols, "n_max": cfg.oracle_n_max}, tup=base)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markoff-lucas",
        description="Markoff-Rosenberger equations over generalized Lucas sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--P", type=int)
        p.add_argument("--Q", type=int)
        p.add_argument("--kind", choices=("U", "V"))
        p.add_argument("--tuple", action="append", dest="tuples", metavar="a,b,c,d")
        p.add_argument("--moduli", help="comma-separated residue moduli")
        p.add_argument("--xmax", type=int)
        p.add_argument("--nmax", type=int)
        p.add_argument("--envelope")
        p.add_argument("--output", choices=("human", "records"))

    for name in ("solve", "bounds", "oracle"):
        common(sub.add_parser(name))
    cz = sub.add_parser("classify-zero")
    common(cz)
    cz.add_argument("--pmin", type=int, default=2)
    cz.add_argument("--pmax", type=int, default=100)
    cz.add_argument("--emin", type=int, default=1)
    cz.add_argument("--emax", type=int, default=3)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = RunConfig.from_file(args.config, cfg)
    updates = {}
    if args.P is not None:
        updates["P"] = args.P
    if args.Q is not None:
        updates["Q"] = args.Q
    if args.kind is not None:
        updates["kind"] = args.kind
    if args.tuples:
        updates["tuples"] = tuple(_parse_tuple(t) for t in args.tuples)
    if args.moduli is not None:
        updates["moduli"] = tuple(int(v) for v in args.moduli.replace(",", " ").split())
    if args.xmax is not None:
        updates["x_max"] = args.xmax
    if args.nmax is not None:
        updates["oracle_n_max"] = args.nmax
    if args.envelope is not None:
        updates["envelope"] = args.envelope
    if args.output is not None:
        updates["output"] = args.output
    return replace(cfg, **updates).validate()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        cfg = _config_from_args(args)
        if args.command == "solve":
            return cmd_solve(cfg, out)
        if args.command == "bounds":
            return cmd_bounds(cfg, out)
        if args.command == "oracle":
            return cmd_oracle(cfg, out)
        if args.command == "classify-zero":
            return cmd_classify_zero(cfg, out, args.pmin, args.pmax, args.emin, args.emax)
        raise AssertionError(args.command)
    except (ConfigError, InvalidParams, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
