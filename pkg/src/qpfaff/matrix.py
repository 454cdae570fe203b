"""Matrices with noncommutative polynomial entries (1-based indexing)."""

from __future__ import annotations

from typing import Callable, Sequence

from .ncalg import AlgebraSpec, NCPoly

__all__ = ["GenMatrix", "generator_matrix", "scalar_matrix", "identity_matrix"]


class GenMatrix:
    """Rectangular grid of NCPoly over one AlgebraSpec.

    Indexing is 1-based to match the usual a_ij notation: ``M[i, j]``.
    """

    __slots__ = ("spec", "rows", "cols", "_e")

    def __init__(self, spec: AlgebraSpec, entries: Sequence[Sequence[NCPoly]]):
        self.spec = spec
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        grid = []
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for x in row:
                if x.spec != spec:
                    raise ValueError("entry from a different algebra")
            grid.append(tuple(row))
        self._e = tuple(grid)

    @classmethod
    def build(cls, spec: AlgebraSpec, rows: int, cols: int, f: Callable[[int, int], NCPoly]):
        return cls(spec, [[f(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)])

    def __getitem__(self, ij) -> NCPoly:
        i, j = ij
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self._e[i - 1][j - 1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entries(self):
        return [list(row) for row in self._e]

    def map(self, f: Callable[[int, int, NCPoly], NCPoly]) -> "GenMatrix":
        return GenMatrix.build(self.spec, self.rows, self.cols, lambda i, j: f(i, j, self[i, j]))

    def transpose(self) -> "GenMatrix":
        return GenMatrix.build(self.spec, self.cols, self.rows, lambda i, j: self[j, i])

    def __matmul__(self, other: "GenMatrix") -> "GenMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")

        def entry(i, j):
            acc = self.spec.zero()
            for k in range(1, self.cols + 1):
                x, y = self[i, k], other[k, j]
                if x.terms and y.terms:
                    acc = acc + x * y
            return acc

        return GenMatrix.build(self.spec, self.rows, other.cols, entry)

    def __sub__(self, other: "GenMatrix") -> "GenMatrix":
        return self.map(lambda i, j, x: x - other[i, j])

    def scale(self, c) -> "GenMatrix":
        return self.map(lambda i, j, x: x.scale(c))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self._e for x in row)

    def __eq__(self, other):
        return isinstance(other, GenMatrix) and self.spec == other.spec and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._e)

    def __repr__(self):
        return f"GenMatrix({self.rows}x{self.cols})"


def generator_matrix(spec: AlgebraSpec, copy: int = 0) -> GenMatrix:
    """A = (a_ij)."""
    return GenMatrix.build(spec, spec.n, spec.n, lambda i, j: spec.gen(i, j, copy))


def scalar_matrix(spec: AlgebraSpec, values) -> GenMatrix:
    return GenMatrix(spec, [[spec.const(v) for v in row] for row in values])


def identity_matrix(spec: AlgebraSpec, n: int, c=None) -> GenMatrix:
    c = spec.one() if c is None else c
    return GenMatrix.build(spec, n, n, lambda i, j: c if i == j else spec.zero())
