"""The quantum matrix semigroup A_{r,s}(n) as a rewriting system.

Generators a_ij (1 <= i, j <= n) obey, for i < j and k < l::

    a_ik a_il = r a_il a_ik
    a_ik a_jk = s^-1 a_jk a_ik
    r a_il a_jk = s^-1 a_jk a_il
    a_ik a_jl - a_jl a_ik = (r - s) a_il a_jk

Read left to right as rules that sort a word into non-decreasing
(row, col) order, these terminate (each rule lowers the word in lex order)
and empirically have no ambiguities, so every element has a unique normal
form: a combination of sorted words.

The tensor-square flavour carries two copies (left ``L`` and right ``R``)
that each satisfy the relations and commute with one another; it is the
target of the coproduct.  The free flavour has no relations at all and is
used for negative controls and for free symbols ``b_ij``.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .ratfunc import RatFunc

__all__ = [
    "Letter",
    "AlgebraSpec",
    "NCPoly",
    "generic_spec",
    "q_inverse_spec",
    "q_negative_spec",
    "numeric_spec",
    "free_spec",
    "spec_for_regime",
    "rewrite_pair",
    "normalize",
    "normalize_with_strategy",
    "nc_mul",
    "nc_add",
    "nc_scale",
    "is_zero",
    "equals",
    "coproduct",
    "counit",
    "apply_counit",
    "corrupted",
    "clear_caches",
    "REGIMES",
]

SINGLE = "single"
TENSOR = "tensor"
FREE = "free"
LEFT, RIGHT = 0, 1

REGIMES = ("generic", "q-inverse", "q-negative", "numeric")


class Letter(NamedTuple):
    """One generator; tuple order (copy, row, col) is the normal order."""

    copy: int
    row: int
    col: int


Word = tuple  # tuple[Letter, ...]


@dataclass(frozen=True)
class AlgebraSpec:
    """Which algebra a polynomial lives in.

    ``q`` is set in the one-parameter regimes (and at r = s = 1) and feeds
    the q-permanent and Hafnian.  ``symbol`` only affects rendering.
    """

    n: int
    r: RatFunc
    s: RatFunc
    flavor: str = SINGLE
    regime: str = "generic"
    q: RatFunc | None = None
    symbol: str = "a"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix size must be positive")
        if self.flavor not in (SINGLE, TENSOR, FREE):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.r.is_zero() or self.s.is_zero():
            raise ValueError("parameters r and s must be nonzero")
        if self.r.variables != self.s.variables:
            raise ValueError("r and s live in different fields")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.r.variables

    def coeff(self, c) -> RatFunc:
        """Coerce an int, Fraction or RatFunc into the coefficient field."""
        if isinstance(c, RatFunc):
            if c.variables != self.variables:
                raise ValueError(f"coefficient over {c.variables}, expected {self.variables}")
            return c
        return RatFunc.const(self.variables, c)

    def with_flavor(self, flavor: str) -> "AlgebraSpec":
        return AlgebraSpec(self.n, self.r, self.s, flavor, self.regime, self.q, self.symbol)

    def with_size(self, n: int) -> "AlgebraSpec":
        return AlgebraSpec(n, self.r, self.s, self.flavor, self.regime, self.q, self.symbol)

    def letter(self, i: int, j: int, copy: int = LEFT) -> Letter:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"generator index ({i}, {j}) outside 1..{self.n}")
        if copy == RIGHT and self.flavor != TENSOR:
            raise ValueError("right copy only exists in the tensor square")
        return Letter(copy, i, j)

    def gen(self, i: int, j: int, copy: int = LEFT) -> "NCPoly":
        return NCPoly(self, {(self.letter(i, j, copy),): self.coeff(1)}, _canonical=True)

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): self.coeff(1)}, _canonical=True)

    def zero(self) -> "NCPoly":
        return NCPoly(self, {}, _canonical=True)

    def const(self, c) -> "NCPoly":
        c = self.coeff(c)
        return NCPoly(self, {(): c} if not c.is_zero() else {}, _canonical=True)

    def describe(self) -> str:
        return f"A(n={self.n}, r={self.r}, s={self.s}, {self.flavor}, {self.regime})"


def generic_spec(n: int, flavor: str = SINGLE) -> AlgebraSpec:
    r, s = RatFunc.gens(("r", "s"))
    return AlgebraSpec(n, r, s, flavor, "generic")


def q_inverse_spec(n: int, flavor: str = SINGLE) -> AlgebraSpec:
    """r = s^-1 = q: the standard one-parameter quantum group."""
    (q,) = RatFunc.gens(("q",))
    return AlgebraSpec(n, q, q.inverse(), flavor, "q-inverse", q)


def q_negative_spec(n: int, flavor: str = SINGLE) -> AlgebraSpec:
    """r = -s^-1 = q."""
    (q,) = RatFunc.gens(("q",))
    return AlgebraSpec(n, q, -q.inverse(), flavor, "q-negative", q)


def numeric_spec(n: int, r=1, s=1, flavor: str = SINGLE) -> AlgebraSpec:
    """Exact rational parameters; r = s = 1 is the commutative case."""
    rr = RatFunc.const((), Fraction(r))
    ss = RatFunc.const((), Fraction(s))
    q = rr if rr * ss == 1 else None
    return AlgebraSpec(n, rr, ss, flavor, "numeric", q)


def free_spec(n: int, symbol: str = "a", like: AlgebraSpec | None = None) -> AlgebraSpec:
    """No relations; coefficients over the same field as ``like``."""
    base = like or generic_spec(n)
    return AlgebraSpec(n, base.r, base.s, FREE, base.regime, base.q, symbol)


def spec_for_regime(regime: str, n: int, r=None, s=None) -> AlgebraSpec:
    if regime == "generic":
        return generic_spec(n)
    if regime == "q-inverse":
        return q_inverse_spec(n)
    if regime == "q-negative":
        return q_negative_spec(n)
    if regime == "numeric":
        return numeric_spec(n, 1 if r is None else r, 1 if s is None else s)
    raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")


# --------------------------------------------------------------------------
# rewriting
# --------------------------------------------------------------------------

# test-only perturbation of the rule coefficients, see corrupted()
_CORRUPTION: dict[str, int] = {}


class _Engine:
    """Per-spec rule table and memo caches."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        one = spec.coeff(1)
        self.one = one
        self.zero = spec.coeff(0)
        r, s = spec.r, spec.s
        self.c_row = r.inverse()  # a_il a_ik -> r^-1 a_ik a_il
        self.c_col = s  # a_jk a_ik -> s a_ik a_jk
        self.c_anti = r * s  # a_jk a_il -> rs a_il a_jk
        self.c_cross = -(r - s)  # a_jl a_ik -> a_ik a_jl - (r-s) a_il a_jk
        for rule, k in _CORRUPTION.items():
            setattr(self, rule, getattr(self, rule) * k)
        self.pairs: dict = {}
        self.inserts: dict = {}
        self.free = spec.flavor == FREE

    def pair(self, x: Letter, y: Letter):
        """Rewrite of the non-normal pair x*y as [(coeff, (u, v)), ...]."""
        key = (x, y)
        hit = self.pairs.get(key)
        if hit is not None:
            return hit
        if self.free or x <= y:
            raise ValueError(f"pair {x}{y} is already normal")
        if x.copy != y.copy:
            out = [(self.one, (y, x))]
        else:
            c, j, l = x  # x = a_{j l}
            _, i, k = y  # y = a_{i k}
            if i == j:
                out = [(self.c_row, (y, x))]
            elif k == l:
                out = [(self.c_col, (y, x))]
            elif l < k:
                out = [(self.c_anti, (y, x))]
            else:
                out = [(self.one, (y, x))]
                if not self.c_cross.is_zero():
                    out.append((self.c_cross, (Letter(c, i, l), Letter(c, j, k))))
        self.pairs[key] = out
        return out

    def insert(self, x: Letter, word: Word) -> dict:
        """Normal form of x*word for a normal word."""
        if self.free or not word or x <= word[0]:
            return {(x,) + word: self.one}
        key = (x, word)
        hit = self.inserts.get(key)
        if hit is not None:
            return hit
        rest = word[1:]
        out: dict = {}
        for c, (u, v) in self.pair(x, word[0]):
            for w1, c1 in self.insert(v, rest).items():
                cc = c * c1
                for w2, c2 in self.insert(u, w1).items():
                    _acc(out, w2, cc * c2)
        self.inserts[key] = out
        return out

    def mul_words(self, w1: Word, w2: Word) -> dict:
        if self.free or not w1 or not w2 or w1[-1] <= w2[0]:
            return {w1 + w2: self.one}
        cur = {w2: self.one}
        for x in reversed(w1):
            nxt: dict = {}
            for w, c in cur.items():
                for w3, c3 in self.insert(x, w).items():
                    _acc(nxt, w3, c * c3)
            cur = nxt
        return cur

    def normal_word(self, w: Word) -> dict:
        cur = {(): self.one}
        for x in reversed(w):
            nxt: dict = {}
            for ww, c in cur.items():
                for w3, c3 in self.insert(x, ww).items():
                    _acc(nxt, w3, c * c3)
            cur = nxt
        return cur


def _acc(out: dict, w, c: RatFunc):
    prev = out.get(w)
    if prev is None:
        if not c.is_zero():
            out[w] = c
        return
    v = prev + c
    if v.is_zero():
        del out[w]
    else:
        out[w] = v


def _is_normal(w: Word) -> bool:
    return all(w[k] <= w[k + 1] for k in range(len(w) - 1))


_ENGINES: dict[AlgebraSpec, _Engine] = {}


def _engine(spec: AlgebraSpec) -> _Engine:
    eng = _ENGINES.get(spec)
    if eng is None:
        eng = _ENGINES[spec] = _Engine(spec)
    return eng


def clear_caches() -> None:
    """Drop every memoized rewrite (all specs)."""
    _ENGINES.clear()


@contextmanager
def corrupted(rule: str = "c_anti", factor: int = 2):
    """Scale one rule coefficient by ``factor`` inside the block.

    Test-only: checks that the identity harness notices a broken engine.
    Rules are ``c_row``, ``c_col``, ``c_anti`` and ``c_cross``.  Only a
    broken ``c_anti`` shows up in rdet = cdet; the other three still give
    equal determinants and are caught by the commutation and Cramer checks.
    """
    if rule not in ("c_row", "c_col", "c_anti", "c_cross"):
        raise ValueError(f"unknown rule {rule!r}")
    _CORRUPTION[rule] = factor
    clear_caches()
    try:
        yield
    finally:
        _CORRUPTION.pop(rule, None)
        clear_caches()


def rewrite_pair(x: Letter, y: Letter, spec: AlgebraSpec) -> "NCPoly":
    """One rewriting step on the two-letter word x*y (which must not be normal)."""
    eng = _engine(spec)
    terms: dict = {}
    for c, w in eng.pair(x, y):
        _acc(terms, w, c)
    return NCPoly(spec, terms, _canonical=True)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class NCPoly:
    """Element of A_{r,s}(n) (or its tensor square, or the free algebra).

    Stored as ``{word: RatFunc}`` with every word in normal order; the
    constructor normalizes unless told the input already is canonical.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None, _canonical: bool = False):
        self.spec = spec
        if terms is None:
            terms = {}
        if not _canonical:
            terms = _normalize_terms(spec, terms)
        self.terms = terms

    # construction helpers --------------------------------------------------

    @classmethod
    def from_words(cls, spec: AlgebraSpec, items: Iterable[tuple]) -> "NCPoly":
        """Build from (coeff, word) pairs; words may be unsorted."""
        raw: dict = {}
        for c, w in items:
            w = tuple(Letter(*x) if not isinstance(x, Letter) else x for x in w)
            _acc(raw, w, spec.coeff(c))
        return cls(spec, raw)

    # basic protocol ---------------------------------------------------------

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "NCPoly"):
        if self.spec != other.spec:
            raise ValueError(
                f"cannot combine elements of {self.spec.describe()} and {other.spec.describe()}"
            )

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.spec.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return NCPoly(self.spec, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.spec, {w: -c for w, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        eng = _engine(self.spec)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                for w, c3 in eng.mul_words(w1, w2).items():
                    _acc(out, w, c * c3)
        return NCPoly(self.spec, out, _canonical=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.spec.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "NCPoly":
        c = self.spec.coeff(c)
        if c.is_zero():
            return self.spec.zero()
        return NCPoly(self.spec, {w: c * v for w, v in self.terms.items()}, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = self.spec.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def coefficient(self, word) -> RatFunc:
        word = tuple(Letter(*x) for x in word)
        return self.terms.get(word, self.spec.coeff(0))

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def sorted_terms(self) -> list[tuple]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    # rendering ---------------------------------------------------------------

    def render_letter(self, x: Letter) -> str:
        sym = self.spec.symbol
        if self.spec.flavor == TENSOR:
            sym = "L" if x.copy == LEFT else "R"
        if self.spec.n >= 10:
            return f"{sym}[{x.row},{x.col}]"
        return f"{sym}{x.row}{x.col}"

    def render_word(self, w: Word) -> str:
        return "*".join(self.render_letter(x) for x in w)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            ws = self.render_word(w)
            neg, body = _render_coeff(c)
            if not ws:
                text = body or "1"
            elif not body:
                text = ws
            else:
                text = f"{body}*{ws}"
            if not parts:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f"- {text}" if neg else f"+ {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"NCPoly({self})"

    def to_json(self) -> list[dict]:
        """Terms as ``{"word": [[copy, row, col], ...], "coeff": str}``."""
        return [
            {"word": [list(x) for x in w], "coeff": str(c)} for w, c in self.sorted_terms()
        ]


def _render_coeff(c: RatFunc) -> tuple[bool, str]:
    """(is_negative, body); body is '' for a unit coefficient."""
    one = (0,) * len(c.variables)
    if c.num_terms() == 1 and c._d == {one: 1}:
        (e, k), = c._n.items()
        neg = k < 0
        mag = RatFunc._make(c.variables, {e: abs(k)}, c._d)
        if mag.is_one():
            return neg, ""
        return neg, str(mag)
    lead = max(c._n, key=lambda e: (sum(e), e))
    if c._n[lead] < 0:
        return True, f"({-c})"
    return False, f"({c})"


def _normalize_terms(spec: AlgebraSpec, terms: dict) -> dict:
    eng = _engine(spec)
    out: dict = {}
    for w, c in terms.items():
        c = spec.coeff(c)
        if c.is_zero():
            continue
        w = tuple(w)
        if eng.free or _is_normal(w):
            _acc(out, w, c)
            continue
        for w2, c2 in eng.normal_word(w).items():
            _acc(out, w2, c * c2)
    return out


def normalize(p: NCPoly, spec: AlgebraSpec | None = None) -> NCPoly:
    """Canonical form of p (re-normalizes every stored word)."""
    spec = spec or p.spec
    return NCPoly(spec, dict(p.terms))


def normalize_with_strategy(
    p: NCPoly | dict, spec: AlgebraSpec, strategy: str = "leftmost", seed: int = 0
) -> NCPoly:
    """Plain worklist normalization without memoization.

    ``strategy`` picks which reducible adjacent pair to rewrite first:
    ``leftmost``, ``rightmost`` or ``random`` (seeded).  Used to check that
    the normal form does not depend on the reduction order.
    """
    terms = p.terms if isinstance(p, NCPoly) else p
    eng = _Engine(spec)
    rng = random.Random(seed)
    out: dict = {}
    work = [(tuple(w), spec.coeff(c)) for w, c in terms.items()]
    while work:
        w, c = work.pop()
        if c.is_zero():
            continue
        spots = [k for k in range(len(w) - 1) if w[k] > w[k + 1]] if not eng.free else []
        if not spots:
            _acc(out, w, c)
            continue
        if strategy == "leftmost":
            k = spots[0]
        elif strategy == "rightmost":
            k = spots[-1]
        elif strategy == "random":
            k = rng.choice(spots)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for c2, (u, v) in eng.pair(w[k], w[k + 1]):
            work.append((w[:k] + (u, v) + w[k + 2 :], c * c2))
    return NCPoly(spec, out, _canonical=True)


# functional aliases ------------------------------------------------------------


def nc_mul(p: NCPoly, q: NCPoly, spec: AlgebraSpec | None = None) -> NCPoly:
    return p * q


def nc_add(p: NCPoly, q: NCPoly, spec: AlgebraSpec | None = None) -> NCPoly:
    return p + q


def nc_scale(p: NCPoly, c, spec: AlgebraSpec | None = None) -> NCPoly:
    return p.scale(c)


def is_zero(p: NCPoly) -> bool:
    return p.is_zero()


def equals(p: NCPoly, q: NCPoly) -> bool:
    p._check(q)
    return (p - q).is_zero()


# --------------------------------------------------------------------------
# bialgebra structure
# --------------------------------------------------------------------------


def coproduct(p: NCPoly) -> NCPoly:
    """Delta(a_ij) = sum_k a_ik (x) a_kj, extended multiplicatively."""
    spec = p.spec
    if spec.flavor != SINGLE:
        raise ValueError("coproduct is defined on the single-copy algebra")
    tspec = spec.with_flavor(TENSOR)
    n = spec.n
    images = {}
    out = tspec.zero()
    for w, c in p.terms.items():
        term = tspec.const(c)
        for x in w:
            img = images.get(x)
            if img is None:
                img = tspec.zero()
                for k in range(1, n + 1):
                    img = img + tspec.gen(x.row, k, LEFT) * tspec.gen(k, x.col, RIGHT)
                images[x] = img
            term = term * img
        out = out + term
    return out


def counit(p: NCPoly) -> RatFunc:
    """epsilon(a_ij) = delta_ij."""
    if p.spec.flavor == TENSOR:
        raise ValueError("counit takes a single-copy element")
    total = p.spec.coeff(0)
    for w, c in p.terms.items():
        if all(x.row == x.col for x in w):
            total = total + c
    return total


def apply_counit(p: NCPoly, side: int) -> NCPoly:
    """(eps (x) id) for side=LEFT, (id (x) eps) for side=RIGHT, on the tensor square."""
    if p.spec.flavor != TENSOR:
        raise ValueError("expected an element of the tensor square")
    spec = p.spec.with_flavor(SINGLE)
    raw: dict = {}
    for w, c in p.terms.items():
        keep = []
        for x in w:
            if x.copy == side:
                if x.row != x.col:
                    break
            else:
                keep.append(Letter(LEFT, x.row, x.col))
        else:
            _acc(raw, tuple(keep), c)
    return NCPoly(spec, raw)
