"""Quantum exterior algebras and the wedge-form definitions of det and Pf.

Two commuting exterior algebras sit next to A_{r,s}::

    x_j ^ x_i = -r   x_i ^ x_j,   x_i ^ x_i = 0      (i < j)
    y_j ^ y_i = -s^-1 y_i ^ y_j,  y_i ^ y_i = 0

A basis monomial is a strictly increasing index tuple; the product of two
monomials is zero if they share an index and otherwise picks up one factor
of the (negated) parameter per interleaving inversion.  The a's, x's and y's
all commute with each other.

Determinants and Pfaffians are read off as top-degree coefficients of
wedge powers; these serve as oracles for the permutation sums in
:mod:`qpfaff.qlinalg`.
"""

from __future__ import annotations

from itertools import combinations

from .matrix import GenMatrix
from .ncalg import AlgebraSpec, NCPoly, _acc, _engine, free_spec
from .ratfunc import RatFunc, q_factorial
from .report import Report, stopwatch

__all__ = [
    "MixedPoly",
    "x_wedge",
    "y_wedge",
    "wedge_monomials",
    "mixed_mul",
    "delta",
    "partial",
    "phi_form",
    "omega",
    "det_oracle",
    "phi_check",
    "pf_oracle",
    "minor_expansion",
    "manin_check",
]


def wedge_monomials(m1: tuple, m2: tuple, v: RatFunc):
    """(coeff, merged) for m1 ^ m2 when x_j ^ x_i = -v x_i ^ x_j; (0, None) if they meet."""
    if not m1 or not m2 or m1[-1] < m2[0]:
        return RatFunc.const(v.variables, 1), m1 + m2
    s1 = set(m1)
    if any(b in s1 for b in m2):
        return RatFunc.const(v.variables, 0), None
    inv = 0
    k = 0
    # count pairs (a in m1, b in m2) with a > b by a merge walk
    for b in m2:
        while k < len(m1) and m1[k] < b:
            k += 1
        inv += len(m1) - k
    merged = tuple(sorted(m1 + m2))
    return (-v) ** inv, merged


def x_wedge(m1: tuple, m2: tuple, spec: AlgebraSpec):
    return wedge_monomials(tuple(m1), tuple(m2), spec.r)


def y_wedge(m1: tuple, m2: tuple, spec: AlgebraSpec):
    return wedge_monomials(tuple(m1), tuple(m2), spec.s.inverse())


class MixedPoly:
    """Element of A (x) Lambda (x) Lambda'.

    Keys are ``(a_word, x_mono, y_mono)``.  ``xv`` and ``yv`` are the
    parameters in ``x_j ^ x_i = -xv x_i ^ x_j`` and likewise for y; by
    default r and s^-1 of the AlgebraSpec.
    """

    __slots__ = ("spec", "xv", "yv", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None, xv=None, yv=None):
        self.spec = spec
        self.xv = spec.r if xv is None else spec.coeff(xv)
        self.yv = spec.s.inverse() if yv is None else spec.coeff(yv)
        self.terms = {} if terms is None else terms

    def _like(self, terms):
        return MixedPoly(self.spec, terms, self.xv, self.yv)

    @classmethod
    def lift(cls, p: NCPoly, x=(), y=(), xv=None, yv=None) -> "MixedPoly":
        """p * x_mono * y_mono (monomials must already be increasing)."""
        x, y = tuple(x), tuple(y)
        return cls(p.spec, {(w, x, y): c for w, c in p.terms.items()}, xv, yv)

    def __add__(self, other: "MixedPoly"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MixedPoly):
            return mixed_mul(self, other)
        return self.scale(other)

    def scale(self, c) -> "MixedPoly":
        c = self.spec.coeff(c)
        if c.is_zero():
            return self._like({})
        return self._like({k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def x_degrees(self) -> set[int]:
        return {len(k[1]) for k in self.terms}

    def coefficient(self, x=(), y=()) -> NCPoly:
        """The A-part multiplying the basis monomial x_mono * y_mono."""
        x, y = tuple(x), tuple(y)
        return NCPoly(
            self.spec,
            {w: c for (w, xm, ym), c in self.terms.items() if xm == x and ym == y},
            _canonical=True,
        )

    def components(self) -> dict:
        """{(x_mono, y_mono): NCPoly}."""
        buckets: dict = {}
        for (w, xm, ym), c in self.terms.items():
            buckets.setdefault((xm, ym), {})[w] = c
        return {k: NCPoly(self.spec, v, _canonical=True) for k, v in buckets.items()}

    def __eq__(self, other):
        return (
            isinstance(other, MixedPoly)
            and self.spec == other.spec
            and self.xv == other.xv
            and self.yv == other.yv
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"MixedPoly({len(self.terms)} terms)"


def mixed_mul(p: MixedPoly, q: MixedPoly, spec: AlgebraSpec | None = None) -> MixedPoly:
    """Product in A (x) Lambda (x) Lambda'; all three families commute."""
    if p.spec != q.spec or p.xv != q.xv or p.yv != q.yv:
        raise ValueError("mixed polynomials over different algebras")
    eng = _engine(p.spec)
    out: dict = {}
    wedge_cache: dict = {}
    for (w1, x1, y1), c1 in p.terms.items():
        for (w2, x2, y2), c2 in q.terms.items():
            key = (x1, x2, y1, y2)
            hit = wedge_cache.get(key)
            if hit is None:
                cx, xm = wedge_monomials(x1, x2, p.xv)
                if xm is None:
                    hit = (None, None, None)
                else:
                    cy, ym = wedge_monomials(y1, y2, p.yv)
                    hit = (None, None, None) if ym is None else (cx * cy, xm, ym)
                wedge_cache[key] = hit
            cxy, xm, ym = hit
            if cxy is None:
                continue
            c = c1 * c2 * cxy
            for w, c3 in eng.mul_words(w1, w2).items():
                _acc(out, (w, xm, ym), c * c3)
    return p._like(out)


def wedge_power(p: MixedPoly, k: int) -> MixedPoly:
    out = MixedPoly.lift(p.spec.one(), xv=p.xv, yv=p.yv)
    for _ in range(k):
        out = out * p
    return out


def wedge_all(forms) -> MixedPoly:
    forms = list(forms)
    out = forms[0]
    for f in forms[1:]:
        out = out * f
    return out


def delta(i: int, spec: AlgebraSpec) -> MixedPoly:
    """delta_i = sum_j a_ij x_j."""
    if not 1 <= i <= spec.n:
        raise IndexError(f"row {i} outside 1..{spec.n}")
    out = MixedPoly(spec)
    for j in range(1, spec.n + 1):
        out = out + MixedPoly.lift(spec.gen(i, j), x=(j,))
    return out


def partial(i: int, spec: AlgebraSpec) -> MixedPoly:
    """partial_i = sum_j a_ji y_j."""
    if not 1 <= i <= spec.n:
        raise IndexError(f"column {i} outside 1..{spec.n}")
    out = MixedPoly(spec)
    for j in range(1, spec.n + 1):
        out = out + MixedPoly.lift(spec.gen(j, i), y=(j,))
    return out


def omega(i: int, spec: AlgebraSpec) -> MixedPoly:
    """omega_i = x_i partial_i."""
    return MixedPoly.lift(spec.one(), x=(i,)) * partial(i, spec)


def phi_form(spec: AlgebraSpec) -> MixedPoly:
    """Phi = sum_ij a_ji x_i y_j."""
    out = MixedPoly(spec)
    for i in range(1, spec.n + 1):
        for j in range(1, spec.n + 1):
            out = out + MixedPoly.lift(spec.gen(j, i), x=(i,), y=(j,))
    return out


def det_oracle(spec: AlgebraSpec, mode: str = "row") -> NCPoly:
    """Top coefficient of delta_1 ^ ... ^ delta_n (row) or of the partials (column)."""
    top = tuple(range(1, spec.n + 1))
    if mode == "row":
        return wedge_all(delta(i, spec) for i in top).coefficient(x=top)
    if mode == "column":
        return wedge_all(partial(i, spec) for i in top).coefficient(y=top)
    raise ValueError(f"mode must be 'row' or 'column', not {mode!r}")


def phi_check(spec: AlgebraSpec) -> Report:
    """Expand the n-th power of Phi and compare its top part with both determinants."""
    with stopwatch() as sw:
        n = spec.n
        top = tuple(range(1, n + 1))
        power = wedge_power(phi_form(spec), n)
        stray = [k for k in power.components() if k != (top, top)]
        lead = power.coefficient(x=top, y=top).scale(q_factorial(n, spec.r / spec.s).inverse())
        res_row = lead - det_oracle(spec, "row")
        res_col = lead - det_oracle(spec, "column")
        residual = len(res_row) + len(res_col) + len(stray)
    return Report("phi", n, spec.regime, residual == 0, residual, sw["ms"])


def pf_oracle(B: GenMatrix, v: RatFunc, flavor: str = "x") -> NCPoly:
    """Wedge-form Pfaffian of the strict upper triangle of B.

    ``x``: Omega = sum b_ij x_i^x_j with x_j^x_i = -v x_i^x_j, result divided
    by [n]_{v^4}!.  ``y``: same with y_j^y_i = -v^-1 y_i^y_j and [n]_{v^-4}!.
    """
    size = B.rows
    if size != B.cols or size % 2:
        raise ValueError("Pfaffian needs an even square matrix")
    spec = B.spec
    v = spec.coeff(v)
    n = size // 2
    top = tuple(range(1, size + 1))
    if flavor == "x":
        rel, base = v, v**4
    elif flavor == "y":
        rel, base = v.inverse(), v ** (-4)
    else:
        raise ValueError("flavor must be 'x' or 'y'")
    form = MixedPoly(spec, xv=rel, yv=rel)
    for i, j in combinations(top, 2):
        b = B[i, j]
        if not b.is_zero():
            form = form + (
                MixedPoly.lift(b, x=(i, j), xv=rel, yv=rel)
                if flavor == "x"
                else MixedPoly.lift(b, y=(i, j), xv=rel, yv=rel)
            )
    power = wedge_power(form, n)
    lead = power.coefficient(x=top) if flavor == "x" else power.coefficient(y=top)
    return lead.scale(q_factorial(n, base).inverse())


def minor_expansion(rows, spec: AlgebraSpec) -> dict:
    """Decompose delta_{i1} ^ ... ^ delta_{it} over basis x-monomials.

    Returns ``{column tuple: NCPoly}``; empty when the wedge vanishes.
    """
    rows = list(rows)
    for i in rows:
        if not 1 <= i <= spec.n:
            raise IndexError(f"row {i} outside 1..{spec.n}")
    if not rows:
        return {(): spec.one()}
    w = wedge_all(delta(i, spec) for i in rows)
    return {xm: p for (xm, _), p in w.components().items() if not p.is_zero()}


def _exterior_residuals(spec: AlgebraSpec) -> list[MixedPoly]:
    n = spec.n
    ds = [delta(i, spec) for i in range(1, n + 1)]
    ps = [partial(i, spec) for i in range(1, n + 1)]
    r, sinv = spec.r, spec.s.inverse()
    out = []
    for i in range(n):
        out.append(ds[i] * ds[i])
        out.append(ps[i] * ps[i])
        for j in range(i + 1, n):
            out.append(ds[j] * ds[i] + (ds[i] * ds[j]).scale(r))
            out.append(ps[j] * ps[i] + (ps[i] * ps[j]).scale(sinv))
    return out


def manin_check(spec: AlgebraSpec) -> Report:
    """delta's and partials obey the exterior relations over A_{r,s}, not over the free algebra.

    A negative control that unexpectedly vanishes counts as one residual
    term.  At n = 1 there is nothing to control (x_1 ^ x_1 = 0 regardless).
    """
    with stopwatch() as sw:
        residual = sum(len(m.terms) for m in _exterior_residuals(spec))
        if spec.n >= 2:
            d1 = delta(1, free_spec(spec.n, like=spec))
            if (d1 * d1).is_zero():
                residual += 1
    return Report("manin", spec.n, spec.regime, residual == 0, residual, sw["ms"])


def free_residuals(spec: AlgebraSpec) -> list[MixedPoly]:
    """The same residuals computed with the relations switched off."""
    return _exterior_residuals(free_spec(spec.n, like=spec))

