"""Quantum linear algebra over A_{r,s}(n).

Row and column determinants, the q-permanent, minors and their Laplace
expansions, the adjugate and tau-conjugation, the quadratic matrices
B = A^T J_{s^-1} A and B' = A J_r A^T, and three ways each of computing
q-Pfaffians and q-Hafnians (full Pi' sum, perfect-matching sum, recursion
along the first row).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .matrix import GenMatrix, generator_matrix, scalar_matrix
from .ncalg import AlgebraSpec, Letter, NCPoly, _engine
from .ratfunc import RatFunc, q_factorial

__all__ = [
    "inversions",
    "enumerate_Pi_prime",
    "enumerate_Pi",
    "rdet",
    "cdet",
    "per_q",
    "minor",
    "laplace_row",
    "laplace_col",
    "cofactor_row",
    "cofactor_row_right",
    "cofactor_col",
    "cofactor_col_right",
    "adjugate",
    "tau",
    "jay",
    "build_B",
    "build_Bprime",
    "pf_full",
    "hf_full",
    "pf_matching",
    "hf_matching",
    "pf_recursive",
    "hf_recursive",
    "maya_residuals",
    "evaluate_numeric",
    "submatrix",
    "antisymmetry_ratios",
]


# --------------------------------------------------------------------------
# permutations
# --------------------------------------------------------------------------


def inversions(sigma: Sequence[int]) -> int:
    """Number of pairs i < j with sigma(i) > sigma(j)."""
    m = len(sigma)
    return sum(1 for i in range(m) for j in range(i + 1, m) if sigma[i] > sigma[j])


def enumerate_Pi_prime(size: int) -> list[tuple[int, ...]]:
    """Permutations of 1..size with sigma(2i-1) < sigma(2i)."""
    if size % 2:
        raise ValueError("size must be even")
    return [
        p
        for p in permutations(range(1, size + 1))
        if all(p[k] < p[k + 1] for k in range(0, size, 2))
    ]


def enumerate_Pi(size: int) -> list[tuple[int, ...]]:
    """The members of Pi' whose pair minima also increase: one per perfect matching."""
    return [
        p
        for p in enumerate_Pi_prime(size)
        if all(p[k] < p[k + 2] for k in range(0, size - 2, 2))
    ]


# --------------------------------------------------------------------------
# determinants and permanents
# --------------------------------------------------------------------------


def _product(spec: AlgebraSpec, factors) -> NCPoly:
    out = spec.one()
    for f in factors:
        if f.is_zero():
            return spec.zero()
        out = out * f
    return out


def _square(M: GenMatrix):
    if not M.is_square():
        raise ValueError(f"expected a square matrix, got {M.rows}x{M.cols}")
    return M.rows


def rdet(M: GenMatrix, spec: AlgebraSpec | None = None) -> NCPoly:
    """sum_sigma (-r)^l(sigma) m_{1,sigma(1)} ... m_{n,sigma(n)}."""
    spec = spec or M.spec
    m = _square(M)
    if m == 0:
        return spec.one()
    w = -spec.r
    out = spec.zero()
    for sigma in permutations(range(1, m + 1)):
        term = _product(spec, (M[i + 1, sigma[i]] for i in range(m)))
        if not term.is_zero():
            out = out + term.scale(w ** inversions(sigma))
    return out


def cdet(M: GenMatrix, spec: AlgebraSpec | None = None) -> NCPoly:
    """sum_sigma (-s)^-l(sigma) m_{sigma(1),1} ... m_{sigma(n),n}."""
    spec = spec or M.spec
    m = _square(M)
    if m == 0:
        return spec.one()
    w = (-spec.s).inverse()
    out = spec.zero()
    for sigma in permutations(range(1, m + 1)):
        term = _product(spec, (M[sigma[i], i + 1] for i in range(m)))
        if not term.is_zero():
            out = out + term.scale(w ** inversions(sigma))
    return out


def _q_of(spec: AlgebraSpec, q) -> RatFunc:
    if q is not None:
        return spec.coeff(q)
    if spec.q is None:
        raise ValueError(
            f"{spec.regime} regime has no single parameter q; build the algebra over Q(q)"
        )
    return spec.q


def per_q(M: GenMatrix, spec: AlgebraSpec | None = None, q=None) -> NCPoly:
    """sum_sigma q^l(sigma) m_{sigma(1),1} ... m_{sigma(n),n}."""
    spec = spec or M.spec
    q = _q_of(spec, q)
    m = _square(M)
    out = spec.zero()
    for sigma in permutations(range(1, m + 1)):
        term = _product(spec, (M[sigma[i], i + 1] for i in range(m)))
        if not term.is_zero():
            out = out + term.scale(q ** inversions(sigma))
    return out


def minor(M: GenMatrix, rows: Sequence[int], cols: Sequence[int]) -> GenMatrix:
    """Submatrix on the given rows and columns (1-based, order kept)."""
    for i in rows:
        if not 1 <= i <= M.rows:
            raise IndexError(f"row {i} outside 1..{M.rows}")
    for j in cols:
        if not 1 <= j <= M.cols:
            raise IndexError(f"column {j} outside 1..{M.cols}")
    return GenMatrix(M.spec, [[M[i, j] for j in cols] for i in rows])


def _hat(n: int, k: int) -> list[int]:
    return [x for x in range(1, n + 1) if x != k]


def _check_split(n: int, first, second):
    first, second = list(first), list(second)
    if sorted(first + second) != list(range(1, n + 1)):
        raise ValueError(f"{first}|{second} does not partition 1..{n}")
    if first != sorted(first) or second != sorted(second):
        raise ValueError("split blocks must be increasing")
    return first, second


def laplace_row(A: GenMatrix, split) -> NCPoly:
    """Block expansion of rdet along the row blocks I | I'.

    sum over column splits J | J' of (-r)^(sum J - sum I) rdet(A^I_J) rdet(A^I'_J').
    """
    n = _square(A)
    I, I2 = _check_split(n, *split)
    spec = A.spec
    w = -spec.r
    out = spec.zero()
    for J in combinations(range(1, n + 1), len(I)):
        J2 = [x for x in range(1, n + 1) if x not in J]
        term = rdet(minor(A, I, J)) * rdet(minor(A, I2, J2))
        out = out + term.scale(w ** (sum(J) - sum(I)))
    return out


def laplace_col(A: GenMatrix, split) -> NCPoly:
    """Block expansion of cdet along the column blocks I | I'.

    sum over row splits J | J' of (-s)^(sum I - sum J) cdet(A^J_I) cdet(A^J'_I').
    """
    n = _square(A)
    I, I2 = _check_split(n, *split)
    spec = A.spec
    w = -spec.s
    out = spec.zero()
    for J in combinations(range(1, n + 1), len(I)):
        J2 = [x for x in range(1, n + 1) if x not in J]
        term = cdet(minor(A, J, I)) * cdet(minor(A, J2, I2))
        out = out + term.scale(w ** (sum(I) - sum(J)))
    return out


def cofactor_row(A: GenMatrix, i: int, k: int) -> NCPoly:
    """sum_j (-r)^(j-i) a_ij rdet(A with row k, column j deleted); equals delta_ik rdet(A)."""
    n = _square(A)
    w = -A.spec.r
    out = A.spec.zero()
    for j in range(1, n + 1):
        out = out + (A[i, j] * rdet(minor(A, _hat(n, k), _hat(n, j)))).scale(w ** (j - i))
    return out


def cofactor_row_right(A: GenMatrix, i: int, k: int) -> NCPoly:
    """Right-handed form: sum_j (-r)^(i-j) rdet(A^k^_j^) a_ij."""
    n = _square(A)
    w = -A.spec.r
    out = A.spec.zero()
    for j in range(1, n + 1):
        out = out + (rdet(minor(A, _hat(n, k), _hat(n, j))) * A[i, j]).scale(w ** (i - j))
    return out


def cofactor_col(A: GenMatrix, i: int, k: int) -> NCPoly:
    """sum_j (-s)^(i-j) a_ji cdet(A with row j, column k deleted); equals delta_ik cdet(A)."""
    n = _square(A)
    w = -A.spec.s
    out = A.spec.zero()
    for j in range(1, n + 1):
        out = out + (A[j, i] * cdet(minor(A, _hat(n, j), _hat(n, k)))).scale(w ** (i - j))
    return out


def cofactor_col_right(A: GenMatrix, i: int, k: int) -> NCPoly:
    """Right-handed form: sum_j (-s)^(j-i) cdet(A^j^_k^) a_ji."""
    n = _square(A)
    w = -A.spec.s
    out = A.spec.zero()
    for j in range(1, n + 1):
        out = out + (cdet(minor(A, _hat(n, j), _hat(n, k))) * A[j, i]).scale(w ** (j - i))
    return out


def adjugate(A: GenMatrix, spec: AlgebraSpec | None = None) -> GenMatrix:
    """adj(A)_ij = (-1)^(i-j) rdet of A with row j and column i deleted."""
    n = _square(A)
    if n == 1:
        return GenMatrix(A.spec, [[A.spec.one()]])
    return GenMatrix.build(
        A.spec,
        n,
        n,
        lambda i, j: rdet(minor(A, _hat(n, j), _hat(n, i))).scale((-1) ** (i - j)),
    )


def tau(M: GenMatrix, v) -> GenMatrix:
    """D_v^-1 M D_v with D_v = diag(v, ..., v^n): entry (i, j) times v^(j-i)."""
    v = M.spec.coeff(v)
    return M.map(lambda i, j, x: x.scale(v ** (j - i)) if i != j else x)


def jay(v, n: int, spec: AlgebraSpec) -> GenMatrix:
    """Block diagonal 2n x 2n matrix with blocks [[0, 1], [-v, 0]]."""
    v = spec.coeff(v)
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for m in range(n):
        rows[2 * m][2 * m + 1] = 1
        rows[2 * m + 1][2 * m] = -v
    return scalar_matrix(spec, rows)


def _half(spec: AlgebraSpec) -> int:
    if spec.n % 2:
        raise ValueError(f"quadratic matrices need an even size, got {spec.n}")
    return spec.n // 2


def build_B(spec: AlgebraSpec) -> GenMatrix:
    """B = A^T J_{s^-1} A (all entries)."""
    n = _half(spec)
    A = generator_matrix(spec)
    return A.transpose() @ jay(spec.s.inverse(), n, spec) @ A


def build_Bprime(spec: AlgebraSpec, v=None) -> GenMatrix:
    """B' = A J_v A^T with v = r unless given."""
    n = _half(spec)
    A = generator_matrix(spec)
    return A @ jay(spec.r if v is None else v, n, spec) @ A.transpose()


# --------------------------------------------------------------------------
# Pfaffians and Hafnians
# --------------------------------------------------------------------------


def _even_size(B: GenMatrix) -> int:
    if not B.is_square() or B.rows % 2:
        raise ValueError(f"expected an even square matrix, got {B.rows}x{B.cols}")
    return B.rows


def _weighted_pair_sum(B: GenMatrix, perms, weight: RatFunc) -> NCPoly:
    """sum over perms of weight^l(sigma) b_{s1 s2} b_{s3 s4} ...; prefixes are shared."""
    spec = B.spec
    prefix: dict = {(): spec.one()}
    out = spec.zero()
    for sigma in perms:
        pairs = tuple(zip(sigma[0::2], sigma[1::2]))
        for k in range(1, len(pairs) + 1):
            key = pairs[:k]
            if key not in prefix:
                prefix[key] = prefix[pairs[: k - 1]] * B[pairs[k - 1]]
        out = out + prefix[pairs].scale(weight ** inversions(sigma))
    return out


def pf_full(B: GenMatrix, v, spec: AlgebraSpec | None = None) -> NCPoly:
    """(1/[n]_{v^4}!) sum_{Pi'} (-v)^l(sigma) b_{s1 s2} ... b_{s(2n-1) s(2n)}."""
    size = _even_size(B)
    if size == 0:
        return B.spec.one()
    v = B.spec.coeff(v)
    total = _weighted_pair_sum(B, enumerate_Pi_prime(size), -v)
    return total.scale(q_factorial(size // 2, v**4).inverse())


def hf_full(B: GenMatrix, q=None, spec: AlgebraSpec | None = None) -> NCPoly:
    """(1/[n]_{q^4}!) sum_{Pi'} q^l(sigma) b_{s1 s2} ... b_{s(2n-1) s(2n)}."""
    size = _even_size(B)
    if size == 0:
        return B.spec.one()
    q = _q_of(B.spec, q)
    total = _weighted_pair_sum(B, enumerate_Pi_prime(size), q)
    return total.scale(q_factorial(size // 2, q**4).inverse())


def pf_matching(B: GenMatrix, q) -> NCPoly:
    """sum over perfect matchings (Pi) of (-q)^l(sigma) b ... b."""
    size = _even_size(B)
    return _weighted_pair_sum(B, enumerate_Pi(size), -B.spec.coeff(q))


def hf_matching(B: GenMatrix, q) -> NCPoly:
    """sum over perfect matchings (Pi) of q^l(sigma) b ... b."""
    size = _even_size(B)
    return _weighted_pair_sum(B, enumerate_Pi(size), B.spec.coeff(q))


def submatrix(B: GenMatrix, idx: Sequence[int]) -> GenMatrix:
    """Principal submatrix on the index list idx (relabelled 1..len)."""
    return minor(B, idx, idx)


def _recursive(B: GenMatrix, idx: tuple, w: RatFunc, memo: dict) -> NCPoly:
    hit = memo.get(idx)
    if hit is not None:
        return hit
    spec = B.spec
    if not idx:
        out = spec.one()
    elif len(idx) == 2:
        out = B[idx[0], idx[1]]
    else:
        out = spec.zero()
        first = idx[0]
        for pos in range(1, len(idx)):
            rest = idx[1:pos] + idx[pos + 1 :]
            b = B[first, idx[pos]]
            if b.is_zero():
                continue
            out = out + (b * _recursive(B, rest, w, memo)).scale(w ** (pos - 1))
    memo[idx] = out
    return out


def pf_recursive(B: GenMatrix, q) -> NCPoly:
    """Pf(B) = sum_{j>=2} (-q)^(j-2) b_1j Pf(B with rows/cols 1, j removed)."""
    size = _even_size(B)
    return _recursive(B, tuple(range(1, size + 1)), -B.spec.coeff(q), {})


def hf_recursive(B: GenMatrix, q) -> NCPoly:
    """Hf(B) = sum_{j>=2} q^(j-2) b_1j Hf(B with rows/cols 1, j removed)."""
    size = _even_size(B)
    return _recursive(B, tuple(range(1, size + 1)), B.spec.coeff(q), {})


def maya_residuals(B: GenMatrix, q, sign: str = "plus") -> list[NCPoly]:
    """Left minus right side of the q-Maya (sign='plus') or (-q)-Maya relation
    for every i < j < k < l, normalized.
    """
    size = B.rows
    if size < 4:
        return []
    q = B.spec.coeff(q)
    if sign == "plus":
        e = -q
    elif sign == "minus":
        e = q
    else:
        raise ValueError("sign must be 'plus' or 'minus'")
    einv = e.inverse()
    out = []
    for i, j, k, l in combinations(range(1, size + 1), 4):
        b = lambda x, y: B[x, y]  # noqa: E731
        lhs = b(i, j) * b(k, l) + (b(i, k) * b(j, l)).scale(e) + (b(i, l) * b(j, k)).scale(e * e)
        rhs = (
            b(k, l) * b(i, j)
            + (b(j, l) * b(i, k)).scale(einv)
            + (b(j, k) * b(i, l)).scale(einv * einv)
        )
        out.append(lhs - rhs)
    return out


# --------------------------------------------------------------------------
# classical evaluation
# --------------------------------------------------------------------------


def _is_commutative(spec: AlgebraSpec) -> bool:
    if spec.flavor == "free":
        return False
    eng = _engine(spec)
    one = spec.coeff(1)
    return (
        eng.c_row == one and eng.c_col == one and eng.c_anti == one and eng.c_cross.is_zero()
    ) or spec.n == 1


def evaluate_numeric(p: NCPoly, assignment: Mapping) -> Fraction:
    """Value of p after substituting exact rationals for the generators.

    ``assignment`` maps ``(i, j)`` (or a Letter) to a number.  Only defined
    when the algebra is commutative, i.e. r = s = 1.
    """
    spec = p.spec
    if spec.variables:
        raise ValueError("numeric evaluation needs numeric parameters")
    if not _is_commutative(spec):
        raise ValueError(f"{spec.describe()} is not commutative; set r = s = 1")
    vals = {}
    for key, v in assignment.items():
        if isinstance(key, Letter):
            key = (key.row, key.col)
        vals[tuple(key)] = Fraction(v)
    total = Fraction(0)
    for w, c in p.terms.items():
        t = c.to_fraction()
        for x in w:
            t *= vals[(x.row, x.col)]
            if not t:
                break
        total += t
    return total


def numeric_matrix_assignment(values: Sequence[Sequence]) -> dict:
    return {(i + 1, j + 1): Fraction(x) for i, row in enumerate(values) for j, x in enumerate(row)}


def residual_terms(polys) -> int:
    return sum(len(p.terms) for p in polys)


def sum_terms(polys) -> NCPoly:
    polys = list(polys)
    out = polys[0].spec.zero()
    for p in polys:
        out = out + p
    return out


def antisymmetry_ratios(B: GenMatrix) -> dict:
    """For i < j, the scalar c with b_ji = c * b_ij, or None if there is none.

    Reports what is observed; nothing is assumed about B.
    """
    out = {}
    for i in range(1, B.rows + 1):
        for j in range(i + 1, B.cols + 1):
            lo, hi = B[i, j], B[j, i]
            if lo.is_zero():
                out[(i, j)] = None if not hi.is_zero() else B.spec.coeff(0)
                continue
            w, c = lo.sorted_terms()[0]
            ratio = hi.coefficient(w) / c
            out[(i, j)] = ratio if (hi - lo.scale(ratio)).is_zero() else None
    return out
