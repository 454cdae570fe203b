"""Named identity checks and the acceptance matrix.

Every check builds both sides exactly, subtracts, normalizes, and counts the
surviving terms.  Zero terms means the identity holds; there is no
probabilistic shortcut anywhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import classical
from .matrix import generator_matrix, identity_matrix
from .ncalg import (
    LEFT,
    RIGHT,
    TENSOR,
    AlgebraSpec,
    Letter,
    NCPoly,
    coproduct,
    generic_spec,
    normalize_with_strategy,
    numeric_spec,
    spec_for_regime,
)
from .qexterior import det_oracle, manin_check, pf_oracle, phi_check
from .qlinalg import (
    adjugate,
    build_B,
    build_Bprime,
    cdet,
    cofactor_col,
    cofactor_col_right,
    cofactor_row,
    cofactor_row_right,
    evaluate_numeric,
    hf_full,
    hf_matching,
    hf_recursive,
    jay,
    laplace_col,
    laplace_row,
    maya_residuals,
    minor,
    per_q,
    pf_full,
    pf_matching,
    pf_recursive,
    rdet,
)
from .ratfunc import RatFunc
from .report import Report, stopwatch

__all__ = [
    "IDENTITIES",
    "DET_SIZE_CAP",
    "PF_SIZE_CAP",
    "UnsupportedRequest",
    "verify_identity",
    "confluence_check",
    "random_ncpoly",
    "classical_check",
    "SuiteRow",
    "ACCEPTANCE",
    "run_suite",
]

DET_SIZE_CAP = 4
PF_SIZE_CAP = 6

ALL_REGIMES = ("generic", "q-inverse", "q-negative", "numeric")
ONE_PARAM = ("q-inverse", "q-negative")


class UnsupportedRequest(ValueError):
    """Unknown identity, bad size or a regime the identity is not stated for."""


def _residual(polys) -> int:
    return sum(len(p.terms) for p in polys)


# --------------------------------------------------------------------------
# determinant-side identities (size = n)
# --------------------------------------------------------------------------


def _det_rc_eq(spec):
    A = generator_matrix(spec)
    return [rdet(A) - cdet(A)]


def _det_commutation(spec):
    A = generator_matrix(spec)
    d = rdet(A)
    rs = spec.r * spec.s
    out = []
    for i in range(1, spec.n + 1):
        for j in range(1, spec.n + 1):
            a = A[i, j]
            out.append(d * a - (a * d).scale(rs ** (j - i)))
    return out


def _splits(n):
    full = range(1, n + 1)
    for t in range(1, n):
        for first in combinations(full, t):
            yield list(first), [x for x in full if x not in first]


def _laplace(spec):
    A = generator_matrix(spec)
    n = spec.n
    d = rdet(A)
    c = cdet(A)
    out = []
    for split in _splits(n):
        out.append(laplace_row(A, split) - d)
        out.append(laplace_col(A, split) - c)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            target_r = d if i == k else spec.zero()
            target_c = c if i == k else spec.zero()
            out.append(cofactor_row(A, i, k) - target_r)
            out.append(cofactor_row_right(A, i, k) - target_r)
            out.append(cofactor_col(A, i, k) - target_c)
            out.append(cofactor_col_right(A, i, k) - target_c)
    return out


def _cramer(spec):
    from .qlinalg import tau

    A = generator_matrix(spec)
    adj = adjugate(A)
    I = identity_matrix(spec, spec.n, rdet(A))
    r, s = spec.r, spec.s
    products = (
        tau(A, r) @ adj,
        adj @ tau(A, s.inverse()),
        A @ tau(adj, r.inverse()),
        tau(adj, s) @ A,
    )
    return [x for P in products for row in (P - I).entries() for x in row]


def _minor_rc(spec):
    A = generator_matrix(spec)
    n = spec.n
    out = []
    for t in range(1, n + 1):
        for rows in combinations(range(1, n + 1), t):
            for cols in combinations(range(1, n + 1), t):
                M = minor(A, rows, cols)
                out.append(rdet(M) - cdet(M))
    return out


def _grouplike(spec):
    A = generator_matrix(spec)
    tspec = spec.with_flavor(TENSOR)
    L = generator_matrix(tspec, LEFT)
    R = generator_matrix(tspec, RIGHT)
    return [
        coproduct(rdet(A)) - rdet(L) * rdet(R),
        coproduct(cdet(A)) - cdet(L) * cdet(R),
    ]


def _det_oracle(spec):
    A = generator_matrix(spec)
    return [det_oracle(spec, "row") - rdet(A), det_oracle(spec, "column") - cdet(A)]


# --------------------------------------------------------------------------
# Pfaffian-side identities (size = 2n)
# --------------------------------------------------------------------------


def _pf_rdet(spec):
    return [pf_full(build_B(spec), spec.r) - rdet(generator_matrix(spec))]


def _pf_cdet(spec):
    return [pf_full(build_Bprime(spec), spec.s.inverse()) - cdet(generator_matrix(spec))]


def _pf_pf(spec):
    return [pf_full(build_B(spec), spec.r) - pf_full(build_Bprime(spec), spec.s.inverse())]


def _hf_per(spec):
    q = spec.q
    return [hf_full(build_Bprime(spec, q), q) - per_q(generator_matrix(spec), q=q)]


def _maya(spec):
    return maya_residuals(build_B(spec), spec.r, "plus")


def _maya_neg(spec):
    return maya_residuals(build_Bprime(spec), spec.r, "minus")


def _pf_simplified(spec):
    B = build_B(spec)
    return [pf_full(B, spec.r) - pf_matching(B, spec.r)]


def _pf_recursion(spec):
    B = build_B(spec)
    rec = pf_recursive(B, spec.r)
    return [rec - pf_matching(B, spec.r), rec - pf_full(B, spec.r)]


def _hf_simplified(spec):
    B = build_Bprime(spec)
    return [hf_full(B, spec.q) - hf_matching(B, spec.q)]


def _hf_recursion(spec):
    B = build_Bprime(spec)
    rec = hf_recursive(B, spec.q)
    return [rec - hf_matching(B, spec.q), rec - hf_full(B, spec.q)]


def _pf_oracle(spec):
    B = build_B(spec)
    Bp = build_Bprime(spec)
    return [
        pf_oracle(B, spec.r, "x") - pf_full(B, spec.r),
        pf_oracle(Bp, spec.s, "y") - pf_full(Bp, spec.s.inverse()),
    ]


def _hf_oracle(spec):
    # y-exterior relation y_j ^ y_i = q y_i ^ y_j, i.e. -v^-1 = q
    B = build_Bprime(spec)
    v = -spec.q.inverse()
    return [pf_oracle(B, v, "y") - hf_full(B, spec.q)]


@dataclass(frozen=True)
class IdentityDef:
    name: str
    kind: str  # "det" (size n) or "pf" (size 2n)
    regimes: tuple
    residuals: Callable[[AlgebraSpec], list] | None = None
    report: Callable[[AlgebraSpec], Report] | None = None
    min_size: int = 1


def _defs():
    D, P = "det", "pf"
    return [
        IdentityDef("det_rc_eq", D, ALL_REGIMES, _det_rc_eq),
        IdentityDef("det_commutation", D, ALL_REGIMES, _det_commutation),
        IdentityDef("cramer", D, ALL_REGIMES, _cramer),
        IdentityDef("laplace", D, ALL_REGIMES, _laplace),
        IdentityDef("minor_rc", D, ALL_REGIMES, _minor_rc),
        IdentityDef("grouplike", D, ALL_REGIMES, _grouplike),
        IdentityDef("phi", D, ALL_REGIMES, report=phi_check),
        IdentityDef("manin", D, ALL_REGIMES, report=manin_check),
        IdentityDef("det_oracle", D, ALL_REGIMES, _det_oracle),
        IdentityDef("pf_rdet", P, ALL_REGIMES, _pf_rdet),
        IdentityDef("pf_cdet", P, ALL_REGIMES, _pf_cdet),
        IdentityDef("pf_pf", P, ALL_REGIMES, _pf_pf),
        IdentityDef("pf_oracle", P, ALL_REGIMES, _pf_oracle),
        IdentityDef("maya", P, ALL_REGIMES, _maya),
        IdentityDef("maya_neg", P, ALL_REGIMES, _maya_neg),
        IdentityDef("pf_simplified", P, ONE_PARAM, _pf_simplified),
        IdentityDef("pf_recursion", P, ONE_PARAM, _pf_recursion),
        IdentityDef("hf_simplified", P, ("q-negative",), _hf_simplified),
        IdentityDef("hf_recursion", P, ("q-negative",), _hf_recursion),
        IdentityDef("hf_per", P, ("q-negative",), _hf_per),
        IdentityDef("hf_oracle", P, ("q-negative",), _hf_oracle),
    ]


IDENTITIES: dict[str, IdentityDef] = {d.name: d for d in _defs()}


def _build_spec(regime, size, r=None, s=None) -> AlgebraSpec:
    try:
        return spec_for_regime(regime, size, r, s)
    except ValueError as exc:
        raise UnsupportedRequest(str(exc)) from None


def verify_identity(
    name: str,
    size: int,
    regime: str = "generic",
    r=None,
    s=None,
    allow_large: bool = False,
    spec: AlgebraSpec | None = None,
) -> Report:
    """Check one named identity at one size; ``size`` is n or 2n per identity."""
    d = IDENTITIES.get(name)
    if d is None:
        raise UnsupportedRequest(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    regime = spec.regime if spec is not None else regime
    if regime not in d.regimes:
        raise UnsupportedRequest(
            f"{name} is only stated for regimes {', '.join(d.regimes)}, not {regime}"
        )
    if size < d.min_size:
        raise UnsupportedRequest(f"size must be >= {d.min_size}")
    if d.kind == "pf" and size % 2:
        raise UnsupportedRequest(f"{name} needs an even size 2n, got {size}")
    cap = DET_SIZE_CAP if d.kind == "det" else PF_SIZE_CAP
    if size > cap and not allow_large:
        raise UnsupportedRequest(
            f"size {size} exceeds the desk-scale cap {cap} for {name}; pass allow_large to force"
        )
    if spec is None:
        spec = _build_spec(regime, size, r, s)
    elif spec.n != size:
        raise UnsupportedRequest(f"spec has n={spec.n} but size={size}")
    if d.report is not None:
        rep = d.report(spec)
        return Report(name, size, regime, rep.holds, rep.residual_terms, rep.elapsed_ms)
    with stopwatch() as sw:
        residual = _residual(d.residuals(spec))
    return Report(name, size, regime, residual == 0, residual, sw["ms"])


# --------------------------------------------------------------------------
# engine health: confluence
# --------------------------------------------------------------------------


def random_ncpoly(spec: AlgebraSpec, rng: random.Random, max_degree: int = 5, max_terms: int = 3) -> dict:
    """Raw (unnormalized) random element: {word: coeff}."""
    n = spec.n
    gens = [Letter(LEFT, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    variables = spec.variables
    raw: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_degree)))
        c = RatFunc.const(variables, rng.choice([-3, -2, -1, 1, 2, 3]))
        for g in RatFunc.gens(variables):
            c = c * g ** rng.randint(-1, 2)
        raw[w] = raw[w] + c if w in raw else c
    return raw


def confluence_check(
    count: int = 200, n: int = 3, max_degree: int = 5, seed: int = 0, spec: AlgebraSpec | None = None
) -> Report:
    """Normal forms agree across leftmost, rightmost and random-position rewriting
    (and the memoized engine) on ``count`` random polynomials.
    """
    spec = spec or generic_spec(n)
    rng = random.Random(seed)
    with stopwatch() as sw:
        disagreements = 0
        for k in range(count):
            raw = random_ncpoly(spec, rng, max_degree)
            forms = [
                normalize_with_strategy(raw, spec, "leftmost"),
                normalize_with_strategy(raw, spec, "rightmost"),
                normalize_with_strategy(raw, spec, "random", seed=seed * 7919 + k),
                NCPoly(spec, raw),
            ]
            if any(f != forms[0] for f in forms[1:]):
                disagreements += 1
    return Report("confluence", spec.n, spec.regime, disagreements == 0, disagreements, sw["ms"])


# --------------------------------------------------------------------------
# classical specialization r = s = 1
# --------------------------------------------------------------------------


def _random_int_matrix(rng, m, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(m)]


def _assign(M):
    return {(i + 1, j + 1): x for i, row in enumerate(M) for j, x in enumerate(row)}


def classical_check(part: str, trials: int = 100, size: int = 4, seed: int = 0) -> Report:
    """Exact integer checks at r = s = 1.

    ``agree``: engine det, per, Pf, Hf equal the brute-force routines.
    ``pf_det``: Pf(A^T J A) = det(A).  ``hf_per``: Hf(A J A^T) = per(A),
    with J = J_1 block diagonal [[0, 1], [-1, 0]].
    The residual is the number of (matrix, quantity) mismatches.
    """
    spec = numeric_spec(size, 1, 1)
    A = generator_matrix(spec)
    rng = random.Random(seed)
    with stopwatch() as sw:
        if part == "agree":
            exprs = {
                "det": rdet(A),
                "cdet": cdet(A),
                "per": per_q(A, q=1),
                "pf": pf_full(A, 1) if size % 2 == 0 else None,
                "hf": hf_full(A, 1) if size % 2 == 0 else None,
            }
            refs = {
                "det": classical.det,
                "cdet": classical.det,
                "per": classical.per,
                "pf": classical.pf,
                "hf": classical.hf,
            }
        elif part == "pf_det":
            exprs = {"pf": pf_full(build_B(spec), 1)}
            refs = {"pf": classical.det}
        elif part == "hf_per":
            J = jay(1, size // 2, spec)
            exprs = {"hf": hf_full(A @ J @ A.transpose(), 1)}
            refs = {"hf": classical.per}
        else:
            raise UnsupportedRequest(f"unknown classical check {part!r}")
        bad = 0
        for _ in range(trials):
            M = _random_int_matrix(rng, size)
            vals = _assign(M)
            for key, expr in exprs.items():
                if expr is None:
                    continue
                if evaluate_numeric(expr, vals) != refs[key](M):
                    bad += 1
            # the classical identity itself, engine-free
            JM = classical.symplectic(size // 2)
            if part == "pf_det":
                C = classical.matmul(classical.matmul(classical.transpose(M), JM), M)
                bad += classical.pf(C) != classical.det(M)
            elif part == "hf_per":
                C = classical.matmul(classical.matmul(M, JM), classical.transpose(M))
                bad += classical.hf(C) != classical.per(M)
    return Report(f"classical_{part}", size, "numeric", bad == 0, bad, sw["ms"])


# --------------------------------------------------------------------------
# acceptance matrix
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteRow:
    criterion: int
    identity: str
    size: int
    regime: str
    expect_holds: bool = True
    tags: tuple = ()
    runner: str = "identity"  # identity | confluence | classical

    @property
    def label(self) -> str:
        return f"{self.identity}@{self.size}/{self.regime}"


def _acceptance():
    rows = []
    add = rows.append
    for n in (2, 3, 4):
        add(SuiteRow(1, "det_rc_eq", n, "generic"))
    for n in (2, 3):
        add(SuiteRow(2, "det_commutation", n, "generic"))
    add(SuiteRow(3, "laplace", 3, "generic"))
    for n in (2, 3):
        add(SuiteRow(4, "cramer", n, "generic"))
    add(SuiteRow(5, "minor_rc", 3, "generic"))
    add(SuiteRow(6, "pf_rdet", 4, "generic"))
    add(SuiteRow(6, "pf_rdet", 6, "generic", tags=("2n6",)))
    add(SuiteRow(7, "pf_cdet", 4, "generic"))
    add(SuiteRow(7, "pf_pf", 4, "generic"))
    add(SuiteRow(8, "maya", 4, "q-inverse"))
    add(SuiteRow(8, "maya_neg", 4, "q-negative"))
    add(SuiteRow(8, "maya", 4, "generic", expect_holds=False))
    add(SuiteRow(8, "maya_neg", 4, "generic", expect_holds=False))
    for size, tags in ((4, ()), (6, ("2n6",))):
        add(SuiteRow(9, "pf_simplified", size, "q-inverse", tags=tags))
        add(SuiteRow(9, "pf_recursion", size, "q-inverse", tags=tags))
    add(SuiteRow(9, "hf_simplified", 4, "q-negative"))
    add(SuiteRow(9, "hf_recursion", 4, "q-negative"))
    add(SuiteRow(10, "hf_per", 4, "q-negative"))
    for n in (2, 3):
        add(SuiteRow(11, "grouplike", n, "generic"))
    for n in (1, 2, 3):
        add(SuiteRow(12, "phi", n, "generic"))
    for n in (2, 3):
        add(SuiteRow(12, "manin", n, "generic"))
    for n in (1, 2, 3, 4):
        add(SuiteRow(13, "det_oracle", n, "generic"))
    add(SuiteRow(13, "pf_oracle", 4, "generic"))
    add(SuiteRow(13, "pf_oracle", 6, "generic", tags=("2n6",)))
    add(SuiteRow(13, "hf_oracle", 4, "q-negative"))
    add(SuiteRow(13, "hf_oracle", 6, "q-negative", tags=("2n6",)))
    add(SuiteRow(14, "confluence", 3, "generic", runner="confluence"))
    add(SuiteRow(15, "agree", 4, "numeric", runner="classical"))
    add(SuiteRow(15, "pf_det", 4, "numeric", runner="classical"))
    add(SuiteRow(15, "hf_per", 4, "numeric", runner="classical"))
    return tuple(rows)


ACCEPTANCE: tuple[SuiteRow, ...] = _acceptance()


def run_row(row: SuiteRow, seed: int = 0) -> Report:
    if row.runner == "identity":
        return verify_identity(row.identity, row.size, row.regime)
    if row.runner == "confluence":
        return confluence_check(count=200, n=row.size, seed=seed)
    if row.runner == "classical":
        return classical_check(row.identity, trials=100, size=row.size, seed=seed)
    raise ValueError(row.runner)


@dataclass
class SuiteResult:
    row: SuiteRow
    status: str  # pass | FAIL | skipped
    report: Report | None = None
    out_of_time: bool = False


@dataclass
class SuiteSummary:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Every row passed, apart from rows skipped on request."""
        return all(r.status == "pass" or (r.status == "skipped" and not r.out_of_time) for r in self.results)


def run_suite(
    seed: int = 0,
    budget_s: float = 600.0,
    skip: tuple = (),
    only_criteria: tuple = (),
    on_result: Callable[[SuiteResult], None] | None = None,
) -> SuiteSummary:
    """Run the acceptance matrix in order; rows past the time budget are skipped.

    Rows skipped for lack of time count as not passing; rows skipped by tag
    (``skip``) do not.
    """
    t0 = time.perf_counter()
    summary = SuiteSummary()
    for row in ACCEPTANCE:
        if only_criteria and row.criterion not in only_criteria:
            continue
        if set(row.tags) & set(skip):
            res = SuiteResult(row, "skipped")
        elif time.perf_counter() - t0 > budget_s:
            res = SuiteResult(row, "skipped", out_of_time=True)
        else:
            rep = run_row(row, seed)
            res = SuiteResult(row, "pass" if rep.holds == row.expect_holds else "FAIL", rep)
        summary.results.append(res)
        if on_result is not None:
            on_result(res)
    return summary
