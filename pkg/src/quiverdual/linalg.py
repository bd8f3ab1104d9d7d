"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries; there is no
floating point anywhere.  Subspaces are stored by their reduced row echelon
basis, so two subspaces are equal exactly when their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, NotABasisError

Vector = tuple  # tuple[Fraction, ...]


def _frac_row(row: Iterable, ncols: int | None = None) -> list[Fraction]:
    out = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
    if ncols is not None and len(out) != ncols:
        raise ValueError(f"row has {len(out)} entries, expected {ncols}")
    return out


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix with immutable shape and entries."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(tuple(tuple(_frac_row(r, ncols)) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls.from_rows(([0] * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(
            ([self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)),
            self.nrows,
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        return Matrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v``."""
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self.rows], self.ncols)[1])

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise NotABasisError("not a basis: matrix is not square")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        reduced, pivots = _rref_rows(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(reduced) < n:
            raise NotABasisError("not a basis: matrix is singular")
        return Matrix(tuple(tuple(r[n:]) for r in reduced[:n]), n)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduce ``rows`` in place; return the nonzero rows and their pivot columns."""
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        for k in range(r, len(rows)):
            if rows[k][c] != 0:
                break
        else:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][c]
                if f != 0:
                    rows[k] = [a - f * b for a, b in zip(rows[k], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``m`` (same shape, zero rows last) and its pivots."""
    reduced, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    zero = [Fraction(0)] * m.ncols
    padded = reduced + [zero] * (m.nrows - len(reduced))
    return Matrix(tuple(tuple(r) for r in padded), m.ncols), pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` held by its canonical rref basis."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [_frac_row(v, ambient_dim) for v in vectors]
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(Matrix.identity(ambient_dim).rows, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix(self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        w = _frac_row(v, self.ambient_dim)
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(v in self for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def complement(self) -> "Subspace":
        return orthogonal_complement(self)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    reduced, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, c in zip(reduced, pivots):
            v[c] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, m.ncols)


def orthogonal_complement(s: Subspace) -> Subspace:
    """Complement under the coordinate pairing ``<x, y> = sum x_i y_i``."""
    return kernel(Matrix(s.basis, s.ambient_dim))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    return a.basis == b.basis


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection from the kernel of ``[A^t | -B^t]`` (coefficients x, y with xA = yB)."""
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    stacked = Matrix.from_rows(
        (list(a.basis[i][c] for i in range(a.dim)) + list(-b.basis[i][c] for i in range(b.dim))
         for c in range(a.ambient_dim)),
        a.dim + b.dim,
    )
    ker = kernel(stacked)
    vectors = []
    for coeffs in ker.basis:
        x = coeffs[: a.dim]
        vectors.append([sum((x[i] * a.basis[i][c] for i in range(a.dim)), Fraction(0))
                        for c in range(a.ambient_dim)])
    return Subspace.span(vectors, a.ambient_dim)


def rank(m: Matrix) -> int:
    return m.rank()


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` or ``None`` when inconsistent."""
    aug = [list(r) + [Fraction(x)] for r, x in zip(m.rows, b)]
    reduced, pivots = _rref_rows(aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, c in zip(reduced, pivots):
        x[c] = row[-1]
    return tuple(x)


def transition_and_dual(basis_a: Matrix, basis_b: Matrix) -> tuple[Matrix, Matrix]:
    """Transition matrices between two bases and between their dual bases.

    The rows of ``basis_a`` are ``v_1..v_m`` and those of ``basis_b`` are
    ``w_1..w_m``.  ``P`` satisfies ``w_j = sum_i P[i][j] v_i`` and ``T``
    satisfies ``w*_j = sum_i T[i][j] v*_i`` where the dual bases are taken with
    respect to the coordinate pairing.  The returned pair always has
    ``T^{-1} == P^t``.
    """
    if basis_a.shape != basis_b.shape or basis_a.nrows != basis_a.ncols:
        raise NotABasisError("not a basis: inputs must be square of equal size")
    a_inv = basis_a.inverse()
    b_inv = basis_b.inverse()
    # rows: B = P^t A
    p = (basis_b @ a_inv).transpose()
    # dual rows: A* = (A^-1)^t, B* = (B^-1)^t, and B* = T^t A*
    t = basis_a @ b_inv
    return p, t
