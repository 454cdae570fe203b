"""Exact rational functions with integer coefficients in a short variable list.

Polynomials are sparse maps ``exponent tuple -> int``.  A :class:`RatFunc` is
kept reduced at all times: numerator and denominator coprime, denominator
with positive leading coefficient (graded-lex, first variable largest), and
zero stored as ``0/1``.  Laurent monomials such as ``r**-1`` are fractions
with monomial denominators.

The gcd is the classical recursive one: split off the content with respect
to the main variable and run a subresultant remainder sequence on the
primitive parts.  Monomial denominators (by far the common case inside the
rewriting engine) take a shortcut that never calls the gcd.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

__all__ = [
    "IntPoly",
    "RatFunc",
    "reduce",
    "q_integer",
    "q_factorial",
    "substitute",
    "SpecializationPole",
]


class SpecializationPole(ZeroDivisionError):
    """A denominator vanished under substitution."""


# --------------------------------------------------------------------------
# raw sparse polynomial helpers (dict: exponent tuple -> nonzero int)
# --------------------------------------------------------------------------


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _psub(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pscale(a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def _pshift(a, m):
    return {tuple(x + y for x, y in zip(e, m)): c for e, c in a.items()}


def _pmul(a, b):
    if len(a) == 1:
        (ea, ca), = a.items()
        return {tuple(x + y for x, y in zip(ea, e)): ca * c for e, c in b.items()}
    if len(b) == 1:
        (eb, cb), = b.items()
        return {tuple(x + y for x, y in zip(e, eb)): c * cb for e, c in a.items()}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _ppow(a, k, nv):
    out = {(0,) * nv: 1}
    base = a
    while k:
        if k & 1:
            out = _pmul(out, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return out


def _content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _mindeg(a, nv):
    it = iter(a)
    m = list(next(it))
    for e in it:
        for k in range(nv):
            if e[k] < m[k]:
                m[k] = e[k]
    return tuple(m)


def _pdivexact(a, b):
    """Exact quotient a/b, or None when b does not divide a."""
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        out = {}
        for e, c in a.items():
            m = tuple(x - y for x, y in zip(e, eb))
            if min(m, default=0) < 0:
                return None
            qq, rr = divmod(c, cb)
            if rr:
                return None
            out[m] = qq
        return out
    lb = max(b)
    cb = b[lb]
    rem = dict(a)
    quo = {}
    while rem:
        lr = max(rem)
        m = tuple(x - y for x, y in zip(lr, lb))
        if min(m, default=0) < 0:
            return None
        qq, rr = divmod(rem[lr], cb)
        if rr:
            return None
        quo[m] = qq
        for e, c in b.items():
            t = tuple(x + y for x, y in zip(e, m))
            v = rem.get(t, 0) - qq * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quo


def _divexact(a, b):
    q = _pdivexact(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


# univariate view: {degree in variable 0: dict over the remaining variables}


def _to_uni(a):
    out = {}
    for e, c in a.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return out


def _from_uni(u):
    out = {}
    for d, coef in u.items():
        for e, c in coef.items():
            out[(d,) + e] = c
    return out


def _uni_prem(f, g, nv):
    """Pseudo-remainder prem(f, g) with multiplier lc(g)**(deg f - deg g + 1)."""
    dg = max(g)
    lcg = g[dg]
    r = dict(f)
    e = max(f) - dg + 1
    while r and max(r) >= dg:
        d = max(r)
        lr = r[d]
        out = {}
        for k, c in r.items():
            out[k] = _pmul(c, lcg)
        for k, c in g.items():
            t = k + d - dg
            v = _psub(out.get(t, {}), _pmul(lr, c))
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        r = out
        e -= 1
    if e and r:
        m = _ppow(lcg, e, nv)
        r = {k: _pmul(c, m) for k, c in r.items()}
    return r


def _uni_content(u, nv):
    g = {}
    for c in u.values():
        g = _pgcd(g, c, nv)
        if len(g) == 1 and next(iter(g.values())) == 1 and not any(next(iter(g))):
            break
    return g


def _subresultant(f, g, nv):
    """Gcd (up to a unit of the coefficient ring) of primitive f, g."""
    if max(f) < max(g):
        f, g = g, f
    one = {(0,) * nv: 1}
    gg = one
    h = one
    while True:
        d = max(f) - max(g)
        r = _uni_prem(f, g, nv)
        if not r:
            return g
        if max(r) == 0:
            return {0: one}
        div = _pmul(gg, _ppow(h, d, nv))
        f, g = g, {k: _divexact(c, div) for k, c in r.items()}
        gg = f[max(f)]
        if d == 1:
            h = gg
        elif d > 1:
            h = _divexact(_ppow(gg, d, nv), _ppow(h, d - 1, nv))


def _normalize_sign(a):
    lead = max(a, key=_grlex_key)
    return _pneg(a) if a[lead] < 0 else a


def _pgcd(a, b, nv):
    """Gcd over Z[x_1..x_nv], sign-normalized; gcd(0, 0) = 0."""
    if not a:
        return _normalize_sign(b) if b else {}
    if not b:
        return _normalize_sign(a)
    if nv == 0:
        return {(): gcd(a[()], b[()])}
    if len(a) == 1 or len(b) == 1:
        if len(a) == 1 and len(b) == 1:
            ea, eb = next(iter(a)), next(iter(b))
            return {tuple(map(min, ea, eb)): gcd(a[ea], b[eb])}
        mono, other = (a, b) if len(a) == 1 else (b, a)
        em = next(iter(mono))
        eo = _mindeg(other, nv)
        return {tuple(map(min, em, eo)): gcd(mono[em], _content(other))}
    # pull out monomial factors first; keeps the remainder sequence short
    ma, mb = _mindeg(a, nv), _mindeg(b, nv)
    mono = tuple(map(min, ma, mb))
    if any(ma):
        a = _pshift(a, tuple(-x for x in ma))
    if any(mb):
        b = _pshift(b, tuple(-x for x in mb))
    ua, ub = _to_uni(a), _to_uni(b)
    if len(ua) == 1 or len(ub) == 1:
        # constant in the main variable: gcd lives in the coefficient ring
        g = _uni_content(ua, nv - 1)
        g = _pgcd(g, _uni_content(ub, nv - 1), nv - 1)
        res = {(0,) + e: c for e, c in g.items()}
    else:
        ca = _uni_content(ua, nv - 1)
        cb = _uni_content(ub, nv - 1)
        c = _pgcd(ca, cb, nv - 1)
        pa = {k: _divexact(v, ca) for k, v in ua.items()}
        pb = {k: _divexact(v, cb) for k, v in ub.items()}
        g = _subresultant(pa, pb, nv - 1)
        g = {k: _divexact(v, _uni_content(g, nv - 1)) for k, v in g.items()}
        res = _pmul(_from_uni(g), {(0,) + e: v for e, v in c.items()})
    if any(mono):
        res = _pshift(res, mono)
    return _normalize_sign(res)


def _grlex_key(e):
    return (sum(e), e)


# --------------------------------------------------------------------------
# public types
# --------------------------------------------------------------------------


class IntPoly:
    """Sparse integer polynomial over an ordered tuple of variable names."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, int] | None = None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match variables {self.variables}")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, variables, c: int) -> "IntPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name: str) -> "IntPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable lists")

    def __add__(self, other):
        self._check(other)
        return IntPoly(self.variables, _padd(self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return IntPoly(self.variables, _psub(self.terms, other.terms))

    def __mul__(self, other):
        self._check(other)
        return IntPoly(self.variables, _pmul(self.terms, other.terms))

    def __neg__(self):
        return IntPoly(self.variables, _pneg(self.terms))

    def __eq__(self, other):
        return (
            isinstance(other, IntPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def gcd(self, other) -> "IntPoly":
        self._check(other)
        return IntPoly(self.variables, _pgcd(self.terms, other.terms, len(self.variables)))

    def exact_div(self, other) -> "IntPoly":
        self._check(other)
        return IntPoly(self.variables, _divexact(self.terms, other.terms))

    def __str__(self):
        return _render_poly(self.terms, self.variables)

    def __repr__(self):
        return f"IntPoly({self.variables!r}, {self.terms!r})"


def _reduce_raw(n, d, nv):
    """Canonical (num, den) dicts for n/d.  d must be nonzero."""
    if not d:
        raise ZeroDivisionError("division by zero")
    one = (0,) * nv
    if not n:
        return {}, {one: 1}
    if len(d) == 1:
        (ed, cd), = d.items()
        if cd == 1 and not any(ed):
            return n, d
        m = tuple(map(min, ed, _mindeg(n, nv)))
        g = gcd(cd, _content(n))
        if cd < 0:
            g = -g
        if any(m):
            n = {tuple(x - y for x, y in zip(e, m)): c // g for e, c in n.items()}
            ed = tuple(x - y for x, y in zip(ed, m))
        elif g != 1:
            n = {e: c // g for e, c in n.items()}
        return n, {ed: cd // g}
    if len(n) == 1:
        (en, cn), = n.items()
        m = tuple(map(min, en, _mindeg(d, nv)))
        g = gcd(cn, _content(d))
        if any(m) or g != 1:
            n = {tuple(x - y for x, y in zip(en, m)): cn // g}
            d = {tuple(x - y for x, y in zip(e, m)): c // g for e, c in d.items()}
    else:
        g = _pgcd(n, d, nv)
        if len(g) != 1 or next(iter(g.values())) != 1 or any(next(iter(g))):
            n = _divexact(n, g)
            d = _divexact(d, g)
    lead = max(d, key=_grlex_key)
    if d[lead] < 0:
        n, d = _pneg(n), _pneg(d)
    return n, d


class RatFunc:
    """Reduced fraction of integer polynomials; immutable and hashable.

    >>> r, s = RatFunc.gens(("r", "s"))
    >>> str((r * r - s * s) / (r + s))
    'r - s'
    """

    __slots__ = ("variables", "_n", "_d", "_hash")

    def __init__(self, variables, num=None, den=None, _raw=False):
        self.variables = variables = tuple(variables)
        nv = len(variables)
        if num is None:
            num = {}
        if den is None:
            den = {(0,) * nv: 1}
        if isinstance(num, IntPoly):
            num = num.terms
        if isinstance(den, IntPoly):
            den = den.terms
        if not _raw:
            num, den = _reduce_raw(IntPoly(variables, num).terms, IntPoly(variables, den).terms, nv)
        self._n = num
        self._d = den
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def _make(cls, variables, n, d):
        obj = object.__new__(cls)
        obj.variables = variables
        obj._n = n
        obj._d = d
        obj._hash = None
        return obj

    @classmethod
    def const(cls, variables, c) -> "RatFunc":
        variables = tuple(variables)
        one = (0,) * len(variables)
        c = Fraction(c)
        n = {one: c.numerator} if c else {}
        return cls._make(variables, n, {one: c.denominator})

    @classmethod
    def gens(cls, variables) -> tuple["RatFunc", ...]:
        variables = tuple(variables)
        out = []
        for k in range(len(variables)):
            e = [0] * len(variables)
            e[k] = 1
            out.append(cls._make(variables, {tuple(e): 1}, {(0,) * len(variables): 1}))
        return tuple(out)

    @property
    def num(self) -> IntPoly:
        return IntPoly(self.variables, self._n)

    @property
    def den(self) -> IntPoly:
        return IntPoly(self.variables, self._d)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.variables != self.variables:
                raise ValueError(
                    f"cannot mix fields {self.variables} and {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.variables, other)
        return NotImplemented

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._n

    def is_one(self) -> bool:
        return (
            len(self._n) == 1
            and self._n == self._d
            and not any(next(iter(self._d)))
            and next(iter(self._d.values())) == 1
        )

    def is_constant(self) -> bool:
        one = (0,) * len(self.variables)
        return set(self._n) <= {one} and set(self._d) == {one}

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        one = (0,) * len(self.variables)
        return Fraction(self._n.get(one, 0), self._d[one])

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._n:
            return self
        if not self._n:
            return other
        nv = len(self.variables)
        a, b, c, d = self._n, self._d, other._n, other._d
        if b == d:
            return RatFunc._make(self.variables, *_reduce_raw(_padd(a, c), b, nv))
        if len(b) == 1 and len(d) == 1:
            (eb, cb), = b.items()
            (ed, cd), = d.items()
            em = tuple(map(max, eb, ed))
            g = gcd(cb, cd)
            cm = cb // g * cd
            num = _padd(
                _pmul(a, {tuple(x - y for x, y in zip(em, eb)): cm // cb}),
                _pmul(c, {tuple(x - y for x, y in zip(em, ed)): cm // cd}),
            )
            return RatFunc._make(self.variables, *_reduce_raw(num, {em: cm}, nv))
        num = _padd(_pmul(a, d), _pmul(c, b))
        return RatFunc._make(self.variables, *_reduce_raw(num, _pmul(b, d), nv))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(self.variables, _pneg(self._n), self._d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._n or not other._n:
            return RatFunc._make(self.variables, {}, {(0,) * len(self.variables): 1})
        if other.is_one():
            return self
        if self.is_one():
            return other
        nv = len(self.variables)
        if len(self._d) == 1 and len(other._d) == 1:
            return RatFunc._make(
                self.variables,
                *_reduce_raw(_pmul(self._n, other._n), _pmul(self._d, other._d), nv),
            )
        # cross-cancel before multiplying to keep the gcd inputs small
        g1 = _pgcd(self._n, other._d, nv)
        g2 = _pgcd(other._n, self._d, nv)
        n = _pmul(_divexact(self._n, g1), _divexact(other._n, g2))
        d = _pmul(_divexact(self._d, g2), _divexact(other._d, g1))
        return RatFunc._make(self.variables, *_reduce_raw(n, d, nv))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self._n:
            raise ZeroDivisionError("division by zero")
        return RatFunc._make(
            self.variables, *_reduce_raw(self._d, self._n, len(self.variables))
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        nv = len(self.variables)
        return RatFunc._make(self.variables, _ppow(self._n, k, nv), _ppow(self._d, k, nv)) if k else RatFunc.const(self.variables, 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.variables, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (
            self.variables == other.variables
            and self._n == other._n
            and self._d == other._d
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.variables, frozenset(self._n.items()), frozenset(self._d.items()))
            )
        return self._hash

    # rendering ------------------------------------------------------------

    def num_terms(self) -> int:
        return len(self._n)

    def __str__(self):
        num = _render_poly(self._n, self.variables)
        one = (0,) * len(self.variables)
        if self._d == {one: 1}:
            return num
        den = _render_poly(self._d, self.variables)
        if len(self._n) > 1:
            num = f"({num})"
        if len(self._d) > 1 or (len(self._d) == 1 and _is_compound_monomial(self._d)):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self})"


def _is_compound_monomial(d):
    (e, c), = d.items()
    factors = sum(1 for x in e if x) + (c != 1)
    return factors > 1


def _render_monomial(e, variables):
    parts = []
    for name, k in zip(variables, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _render_poly(terms, variables):
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=_grlex_key, reverse=True):
        c = terms[e]
        mono = _render_monomial(e, variables)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(out)


# --------------------------------------------------------------------------
# module-level operations
# --------------------------------------------------------------------------


def reduce(num: IntPoly, den: IntPoly) -> RatFunc:
    """Canonical form of num/den."""
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    return RatFunc(num.variables, num, den)


def q_integer(n: int, v: RatFunc) -> RatFunc:
    """``[n]_v = 1 + v + ... + v**(n-1)``."""
    if n < 1:
        raise ValueError("q-integer needs n >= 1")
    total = RatFunc.const(v.variables, 1)
    p = total
    for _ in range(n - 1):
        p = p * v
        total = total + p
    return total


def q_factorial(n: int, v: RatFunc) -> RatFunc:
    """``[n]_v [n-1]_v ... [1]_v``."""
    if n < 1:
        raise ValueError("q-factorial needs n >= 1")
    out = RatFunc.const(v.variables, 1)
    for k in range(2, n + 1):
        out = out * q_integer(k, v)
    return out


def _eval_poly(terms, variables, assignment, target):
    one = RatFunc.const(target, 1)
    vals = [assignment[name] for name in variables]
    total = RatFunc.const(target, 0)
    for e, c in terms.items():
        t = one * c
        for v, k in zip(vals, e):
            if k:
                t = t * v**k
        total = total + t
    return total


def substitute(f: RatFunc, assignment: Mapping[str, RatFunc | int | Fraction], target=None) -> RatFunc:
    """Replace each variable of f by a rational function over ``target``.

    ``target`` defaults to the variable list of the first RatFunc value in
    the assignment (or the empty list when all values are numbers).
    """
    missing = [v for v in f.variables if v not in assignment]
    if missing:
        raise KeyError(f"unassigned variables {missing}")
    if target is None:
        target = next(
            (v.variables for v in assignment.values() if isinstance(v, RatFunc)), ()
        )
    target = tuple(target)
    vals = {
        k: v if isinstance(v, RatFunc) else RatFunc.const(target, v)
        for k, v in assignment.items()
    }
    den = _eval_poly(f._d, f.variables, vals, target)
    if den.is_zero():
        raise SpecializationPole("specialization pole")
    return _eval_poly(f._n, f.variables, vals, target) / den
