"""qpfaff command line: compute, verify, suite, bench.

Exit codes: 0 every verified identity holds, 1 something failed or ran out
of time budget, 2 usage or engine error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, replace
from fractions import Fraction

from .identities import (
    IDENTITIES,
    UnsupportedRequest,
    random_ncpoly,
    run_suite,
    verify_identity,
)
from .matrix import generator_matrix
from .ncalg import REGIMES, NCPoly, clear_caches, generic_spec, normalize_with_strategy, spec_for_regime
from .qlinalg import (
    adjugate,
    antisymmetry_ratios,
    build_B,
    build_Bprime,
    cdet,
    hf_full,
    per_q,
    pf_full,
    rdet,
)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

WHATS = ("rdet", "cdet", "per", "pf", "pfprime", "hf", "B", "Bprime", "adj", "antisym")


@dataclass(frozen=True)
class CliConfig:
    command: str
    n: int | None = None
    regime: str = "generic"
    r: Fraction | None = None
    s: Fraction | None = None
    identity: str | None = None
    what: str | None = None
    fmt: str = "text"
    seed: int = 0
    budget: float = 600.0
    skip: tuple = ()
    allow_large: bool = False
    timing: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qpfaff", description="Exact computations in the quantum matrix semigroup A_{r,s}(n).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--regime", default="generic", choices=REGIMES)
        sp.add_argument("--r", type=_rational, help="numeric regime only")
        sp.add_argument("--s", type=_rational, help="numeric regime only")
        sp.add_argument("--format", dest="fmt", default="text", choices=("text", "json"))
        sp.add_argument("--allow-large", action="store_true", help="lift the desk-scale size caps")

    c = sub.add_parser("compute", help="print the canonical form of an invariant")
    c.add_argument("--what", required=True, choices=WHATS)
    c.add_argument("--n", type=int, required=True, help="size of the generator matrix A")
    common(c)

    v = sub.add_parser("verify", help="check one identity")
    v.add_argument("--identity", required=True, choices=tuple(IDENTITIES))
    v.add_argument("--size", type=int, required=True, help="n for determinant identities, 2n for Pfaffian ones")
    v.add_argument("--timing", action="store_true", help="report wall time (otherwise 0, for byte-stable output)")
    common(v)

    s = sub.add_parser("suite", help="run the acceptance matrix")
    s.add_argument("--budget", type=float, default=600.0, help="seconds; later rows are skipped")
    s.add_argument("--skip", action="append", default=[], help="skip rows with this tag (e.g. 2n6)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", dest="fmt", default="text", choices=("text", "json"))
    s.add_argument("--timing", action="store_true")

    b = sub.add_parser("bench", help="time normalization workloads")
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--count", type=int, default=200)
    return p


def parse_config(argv) -> CliConfig:
    a = build_parser().parse_args(argv)
    cfg = CliConfig(command=a.command)
    for name in ("regime", "r", "s", "identity", "what", "fmt", "seed", "budget", "allow_large", "timing"):
        if hasattr(a, name):
            cfg = replace(cfg, **{name: getattr(a, name)})
    if a.command == "compute":
        cfg = replace(cfg, n=a.n)
    elif a.command == "verify":
        cfg = replace(cfg, n=a.size)
    elif a.command == "suite":
        cfg = replace(cfg, skip=tuple(a.skip))
    elif a.command == "bench":
        cfg = replace(cfg, n=a.n, budget=float(a.count))
    if (cfg.r is not None or cfg.s is not None) and cfg.regime != "numeric":
        raise UnsupportedRequest("--r/--s only apply to --regime numeric")
    return cfg


def _emit_poly(p: NCPoly, fmt: str, out):
    if fmt == "json":
        print(json.dumps({"terms": p.to_json()}), file=out)
    else:
        print(str(p), file=out)


def _emit_matrix(M, fmt: str, out):
    if fmt == "json":
        rows = [[x.to_json() for x in row] for row in M.entries()]
        print(json.dumps({"entries": rows}), file=out)
        return
    for i in range(1, M.rows + 1):
        for j in range(1, M.cols + 1):
            print(f"[{i},{j}] {M[i, j]}", file=out)


def cmd_compute(cfg: CliConfig, out) -> int:
    n = cfg.n
    if n is None or n < 1:
        raise UnsupportedRequest("--n must be a positive integer")
    quadratic = cfg.what in ("pf", "pfprime", "hf", "B", "Bprime", "antisym")
    cap = 6 if quadratic else 4
    if n > cap and not cfg.allow_large:
        raise UnsupportedRequest(f"n={n} exceeds the desk-scale cap {cap}; pass --allow-large to force")
    if quadratic and n % 2:
        raise UnsupportedRequest(f"{cfg.what} needs an even size, got {n}")
    spec = spec_for_regime(cfg.regime, n, cfg.r, cfg.s)
    A = generator_matrix(spec)
    w = cfg.what
    if w == "rdet":
        _emit_poly(rdet(A), cfg.fmt, out)
    elif w == "cdet":
        _emit_poly(cdet(A), cfg.fmt, out)
    elif w == "per":
        _emit_poly(per_q(A), cfg.fmt, out)
    elif w == "pf":
        _emit_poly(pf_full(build_B(spec), spec.r), cfg.fmt, out)
    elif w == "pfprime":
        _emit_poly(pf_full(build_Bprime(spec), spec.s.inverse()), cfg.fmt, out)
    elif w == "hf":
        if spec.q is None:
            raise UnsupportedRequest("hf needs a one-parameter regime (q-inverse, q-negative or numeric with rs = 1)")
        _emit_poly(hf_full(build_Bprime(spec, spec.q), spec.q), cfg.fmt, out)
    elif w == "B":
        _emit_matrix(build_B(spec), cfg.fmt, out)
    elif w == "Bprime":
        _emit_matrix(build_Bprime(spec), cfg.fmt, out)
    elif w == "adj":
        _emit_matrix(adjugate(A), cfg.fmt, out)
    elif w == "antisym":
        rows = []
        for name, M in (("B", build_B(spec)), ("Bprime", build_Bprime(spec))):
            for (i, j), c in antisymmetry_ratios(M).items():
                rows.append({"matrix": name, "i": i, "j": j, "ratio": None if c is None else str(c)})
        if cfg.fmt == "json":
            print(json.dumps(rows), file=out)
        else:
            for row in rows:
                ratio = row["ratio"] if row["ratio"] is not None else "none"
                print(f"{row['matrix']}[{row['j']},{row['i']}] = {ratio} * {row['matrix']}[{row['i']},{row['j']}]", file=out)
    return EXIT_OK


def _stable(rep: Report, timing: bool) -> Report:
    return rep if timing else replace(rep, elapsed_ms=0)


def cmd_verify(cfg: CliConfig, out) -> int:
    rep = verify_identity(
        cfg.identity, cfg.n, cfg.regime, r=cfg.r, s=cfg.s, allow_large=cfg.allow_large
    )
    rep = _stable(rep, cfg.timing)
    print(rep.to_json() if cfg.fmt == "json" else rep.text(), file=out)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_suite(cfg: CliConfig, out) -> int:
    rows = []

    def show(res):
        rep = _stable(res.report, cfg.timing) if res.report else None
        row = res.row
        if cfg.fmt == "json":
            rows.append(
                {
                    "criterion": row.criterion,
                    "label": row.label,
                    "expect_holds": row.expect_holds,
                    "status": res.status,
                    "out_of_time": res.out_of_time,
                    "report": rep.to_dict() if rep else None,
                }
            )
            return
        expected = "holds" if row.expect_holds else "fails"
        status = "skipped (budget)" if res.out_of_time else res.status
        residual = "-" if rep is None else str(rep.residual_terms)
        ms = f" {rep.elapsed_ms} ms" if rep and cfg.timing else ""
        print(
            f"[{row.criterion:>2}] {row.label:<28} expect {expected:<5} residual {residual:>4}  {status}{ms}",
            file=out,
            flush=True,
        )

    summary = run_suite(seed=cfg.seed, budget_s=cfg.budget, skip=cfg.skip, on_result=show)
    counts = {k: sum(r.status == k for r in summary.results) for k in ("pass", "FAIL", "skipped")}
    if cfg.fmt == "json":
        print(json.dumps({"rows": rows, "counts": counts, "ok": summary.ok}), file=out)
    else:
        print(f"{counts['pass']} passed, {counts['FAIL']} failed, {counts['skipped']} skipped", file=out)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_bench(cfg: CliConfig, out) -> int:
    """Timings are inherently not byte-stable."""
    spec = generic_spec(cfg.n)
    rng = random.Random(cfg.seed)
    count = int(cfg.budget)
    polys = [random_ncpoly(spec, rng) for _ in range(count)]
    for label, fn in (
        ("memo engine (cold)", lambda raw: NCPoly(spec, raw)),
        ("memo engine (warm)", lambda raw: NCPoly(spec, raw)),
        ("worklist leftmost", lambda raw: normalize_with_strategy(raw, spec, "leftmost")),
    ):
        if label.endswith("(cold)"):
            clear_caches()
        t0 = time.perf_counter()
        for raw in polys:
            fn(raw)
        dt = time.perf_counter() - t0
        print(f"{label:<20} {count} polys  {dt * 1000:9.1f} ms", file=out)
    A = generator_matrix(generic_spec(4))
    clear_caches()
    t0 = time.perf_counter()
    rdet(A)
    print(f"{'rdet n=4 (cold)':<20} {(time.perf_counter() - t0) * 1000:9.1f} ms", file=out)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "suite": cmd_suite, "bench": cmd_bench}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UnsupportedRequest, ValueError, ZeroDivisionError) as exc:
        print(f"qpfaff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
