"""Command-line entry point: ``dumont <subcommand> [options]``.

Exit status is 0 when every executed check passed, 1 when any check failed
and 2 on usage or precondition errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional, TextIO

from . import counting, identities, matrix
from .errors import DumontError
from .report import SCHEMA_VERSION, Discrepancy, Stopwatch, VerificationReport, report
from .series import Monomial, QSeries, invert_unit, pochhammer, theta_jacobi, theta_odd_squares

FORMATS = ("json", "tsv", "human")
ENV_PREFIX = "DUMONT_"
HUMAN_TERMS = 10


@dataclass
class RunConfig:
    degree: int = 200
    max_index: int = 12
    k_max: int = 6
    n_max: int = 200
    output_format: str = "human"
    seed: int = 0
    jobs: int = 1

    def validate(self) -> None:
        if self.degree < 0:
            raise DumontError("degree must be >= 0")
        if self.max_index < 0:
            raise DumontError("max-index must be >= 0")
        if self.k_max < 1:
            raise DumontError("k-max must be >= 1")
        if self.output_format not in FORMATS:
            raise DumontError(f"format must be one of {', '.join(FORMATS)}")
        if self.jobs < 1:
            raise DumontError("jobs must be >= 1")


def _env_defaults(environ) -> dict:
    out = {}
    for name in ("degree", "max_index", "k_max", "n_max", "seed", "jobs"):
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            try:
                out[name] = int(raw)
            except ValueError:
                raise DumontError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}")
    fmt = environ.get(ENV_PREFIX + "FORMAT")
    if fmt is not None:
        out["output_format"] = fmt
    if "jobs" not in out:
        out["jobs"] = os.cpu_count() or 1
    return out


# ------------------------------------------------------------------ output

class Emitter:
    def __init__(self, fmt: str, out: TextIO) -> None:
        self.fmt = fmt
        self.out = out
        self.reports: list[VerificationReport] = []
        self._tsv_header = False

    def write(self, line: str) -> None:
        self.out.write(line + "\n")

    def emit(self, rep: VerificationReport) -> None:
        self.reports.append(rep)
        if self.fmt == "json":
            self.write(json.dumps(rep.to_dict(), sort_keys=True))
        elif self.fmt == "tsv":
            if not self._tsv_header:
                self.write("check\tparameters\tpass\tfirst_discrepancy")
                self._tsv_header = True
            d = rep.first_discrepancy
            self.write("\t".join([rep.check_name, json.dumps(rep.parameters, sort_keys=True),
                                  str(rep.passed).lower(),
                                  json.dumps(d.to_dict(), sort_keys=True) if d else ""]))
        else:
            self.write(rep.summary())

    def finish(self, started: float) -> None:
        if self.fmt == "json" and self.reports:
            meta = {"metadata": {
                "schema_version": SCHEMA_VERSION,
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(started)),
                "elapsed_ms": [r.elapsed_ms for r in self.reports],
            }}
            self.write(json.dumps(meta, sort_keys=True))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.reports)


# ---------------------------------------------------------------- commands

def cmd_verify_identities(args, cfg: RunConfig, em: Emitter) -> None:
    for rep in identities.verify_identities(cfg.degree, cfg.jobs):
        em.emit(rep)


def cmd_verify_intertwining(args, cfg: RunConfig, em: Emitter) -> None:
    em.emit(matrix.verify_intertwining(cfg.max_index, cfg.degree, args.inject_fault, cfg.jobs))
    em.emit(matrix.verify_valuation_soundness(args.samples, cfg.degree, cfg.seed, args.inject_fault))


def cmd_verify_proof_decomposition(args, cfg: RunConfig, em: Emitter) -> None:
    for i in range(args.max_i + 1):
        for j in range(1, args.max_j + 1):
            em.emit(matrix.verify_proof_decomposition(i, j, cfg.degree))


def cmd_traces(args, cfg: RunConfig, em: Emitter) -> None:
    em.emit(matrix.verify_trace_equality(cfg.k_max, cfg.degree))
    em.emit(matrix.verify_trace_cyclicity(cfg.degree, args.inject_fault))
    if em.fmt == "human":
        A = matrix.trace_powers(matrix.matrix_a(), cfg.k_max, cfg.degree)
        for k, t in enumerate(A, start=1):
            em.write(f"  tr[A^{k}] = {t.format(HUMAN_TERMS)}")


COUNT_KINDS: dict[str, Callable[[int, int], int]] = {
    "odd-squares": counting.odd_squares_count,
    "cyclic1": lambda k, n: counting.cyclic_count(counting.CyclicFormSpec(k, 1), n),
    "cyclic3": lambda k, n: counting.cyclic_count(counting.CyclicFormSpec(k, 3), n),
    "triangular": counting.triangular_count,
    "kronecker": lambda k, n: counting.kronecker_count(n),
    "r2z": lambda k, n: counting.all_signs_squares_count(2, n),
    "r4z": lambda k, n: counting.all_signs_squares_count(4, n),
}


def cmd_count(args, cfg: RunConfig, em: Emitter) -> None:
    value = COUNT_KINDS[args.kind](args.k, args.n)
    if em.fmt == "json":
        em.write(json.dumps({"kind": args.kind, "k": args.k, "n": args.n, "count": str(value)},
                            sort_keys=True))
    elif em.fmt == "tsv":
        em.write("kind\tk\tn\tcount")
        em.write(f"{args.kind}\t{args.k}\t{args.n}\t{value}")
    else:
        em.write(f"{args.kind}(k={args.k}, n={args.n}) = {value}")


def cmd_dumont_check(args, cfg: RunConfig, em: Emitter) -> None:
    watch = Stopwatch()
    rows = counting.dumont_table(cfg.k_max, cfg.n_max)
    bad = next((r for r in rows if not r.holds), None)
    d = None
    if bad is not None:
        d = Discrepancy({"k": bad.k, "n": bad.n}, bad.n, bad.r,
                        bad.c1 - (-1) ** bad.k * bad.c3)
    rep = report("dumont_check", {"k_max": cfg.k_max, "n_max": cfg.n_max}, watch, d,
                 rows=len(rows))
    if em.fmt == "tsv":
        em.reports.append(rep)
        em.write("k\tn\tr\tc1\tc3\tholds")
        for r in rows:
            em.write("\t".join(str(v).lower() if isinstance(v, bool) else str(v)
                               for v in r.as_row()))
    else:
        em.emit(rep)


def cmd_verify_classical(args, cfg: RunConfig, em: Emitter) -> None:
    em.emit(counting.verify_classical(args.max))


def _expand_registry(args) -> dict[str, Callable[[int], QSeries]]:
    inf = math.inf
    return {
        "pochhammer-q-inf": lambda N: pochhammer(Monomial(1, 1), 1, inf, N),
        "partitions": lambda N: invert_unit(pochhammer(Monomial(1, 1), 1, inf, N), N),
        "distinct-parts": lambda N: pochhammer(Monomial(-1, 1), 1, inf, N),
        "theta-odd-squares": theta_odd_squares,
        "theta": lambda N: theta_jacobi(Monomial.parse(args.z), N),
        "trace-a": lambda N: matrix.trace_power(matrix.matrix_a(), args.k, N),
        "trace-b": lambda N: matrix.trace_power(matrix.matrix_b(), args.k, N),
        "x-entry": lambda N: matrix.matrix_x().entry(args.i, args.j, N),
        "closed-form": lambda N: matrix.intertwining_closed_form(args.i, args.j, N),
    }


def cmd_expand(args, cfg: RunConfig, em: Emitter) -> None:
    series = _expand_registry(args)[args.series](cfg.degree)
    if em.fmt == "json":
        em.write(json.dumps({"series": args.series, "degree": cfg.degree, **series.to_json()},
                            sort_keys=True))
    elif em.fmt == "tsv":
        em.write("exponent\tcoefficient")
        for e, c in series.terms():
            em.write(f"{e}\t{c}")
    else:
        em.write(series.format())


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    def global_flags(default):
        flags = argparse.ArgumentParser(add_help=False)
        flags.add_argument("--format", dest="output_format", choices=FORMATS, default=default)
        flags.add_argument("--seed", type=int, default=default)
        flags.add_argument("--jobs", type=int, default=default,
                           help="worker processes (default: CPU count)")
        return flags

    # accepted before or after the subcommand; the subparser copy must not
    # overwrite a value given before it
    common = global_flags(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="dumont", parents=[global_flags(None)],
                                     description="Exact verification of Dumont's odd-squares identity.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("verify-identities", cmd_verify_identities, "q-binomial, Euler, Jacobi, Gauss")
    p.add_argument("--degree", type=int)

    p = add("verify-intertwining", cmd_verify_intertwining, "XB = AX on a finite corner")
    p.add_argument("--max-index", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--inject-fault", action="store_true", help="zero out x_01")

    p = add("verify-proof-decomposition", cmd_verify_proof_decomposition,
            "partial-sum identities behind XB = AX")
    p.add_argument("--max-i", type=int, default=6)
    p.add_argument("--max-j", type=int, default=6)
    p.add_argument("--degree", type=int)

    p = add("traces", cmd_traces, "tr[A^k] = tr[B^k] and tr[AX] = tr[XA]")
    p.add_argument("--k-max", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--inject-fault", action="store_true", help="zero out x_01")

    p = add("count", cmd_count, "one brute-force representation count")
    p.add_argument("--kind", choices=sorted(COUNT_KINDS), required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, required=True)

    p = add("dumont-check", cmd_dumont_check, "r = c1 - (-1)^k c3 over a range")
    p.add_argument("--k-max", type=int)
    p.add_argument("--n-max", type=int)

    p = add("verify-classical", cmd_verify_classical, "Gauss, Jacobi, Lagrange, Kronecker")
    p.add_argument("--max", type=int, default=200)

    p = add("expand", cmd_expand, "print a series up to --degree")
    p.add_argument("--series", required=True,
                   choices=sorted(_expand_registry(argparse.Namespace()).keys()))
    p.add_argument("--degree", type=int)
    p.add_argument("--z", default="q")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    return parser


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    values = _env_defaults(os.environ if environ is None else environ)
    for name in ("degree", "max_index", "k_max", "n_max", "output_format", "seed", "jobs"):
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def run(argv: Optional[list[str]] = None, out: TextIO = None, err: TextIO = None,
        environ=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.time()
    try:
        cfg = resolve_config(args, environ)
        em = Emitter(cfg.output_format, out)
        args.func(args, cfg, em)
    except (DumontError, ValueError) as exc:
        err.write(f"dumont: error: {exc}\n")
        return 2
    em.finish(started)
    return 0 if em.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
