"""Exact rational linear algebra over :class:`fractions.Fraction`.

Vectors are tuples of Fractions and matrices are tuples of row vectors.
Every routine is a pure function; nothing is rounded.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(as_vector(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def transpose(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a: Matrix, c) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def flatten(m: Matrix) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence[Fraction], n: int) -> Matrix:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``m`` and its pivot columns.

    The result has the same shape as ``m``; zero rows sink to the bottom.
    """
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return (), []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    pr = rows[r]
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), pivots


def row_space(vectors: Iterable[Sequence]) -> Matrix:
    """Canonical basis of the span: the nonzero rows of the RREF."""
    vs = list(vectors)
    if not vs:
        return ()
    red, pivots = rref(vs)
    return red[:len(pivots)]


def rank(m: Sequence[Sequence]) -> int:
    return len(row_space(m))


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``; empty iff ``m`` is injective.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if not m:
        return [tuple(v) for v in identity(ncols or 0)]
    n = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -red[row][free]
        basis.append(tuple(v))
    return basis


def orthogonal_complement(span: Sequence[Sequence], dim: int) -> list[Vector]:
    """Basis of the vectors orthogonal to every vector of ``span``."""
    return kernel_basis([tuple(Fraction(x) for x in v) for v in span], dim)


def intersect_spans(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[Vector]:
    # span(A) ∩ span(B) = (A⊥ + B⊥)⊥; the standard form is positive definite over Q.
    perp = orthogonal_complement(a, dim) + orthogonal_complement(b, dim)
    return list(row_space(orthogonal_complement(perp, dim)))


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    return rank(list(basis) + [v]) == rank(basis)


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square nonsingular matrix by Gauss-Jordan elimination."""
    n = len(m)
    aug = [tuple(row) + e for row, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n:] for row in red)


def projector(basis: Sequence[Vector], dim: int) -> Matrix:
    """Orthogonal projection onto span(basis) as B^T (B B^T)^-1 B.

    ``basis`` holds linearly independent rows, so the Gram matrix is invertible.
    """
    if not basis:
        return zeros(dim, dim)
    b = tuple(tuple(row) for row in basis)
    gram = matmul(b, transpose(b))
    return matmul(matmul(transpose(b), inverse(gram)), b)


def format_rational(x: Fraction) -> str:
    return str(x)


_RATIONAL = re.compile(r"\s*[-+]?\d+(/\d+)?\s*")


def parse_rational(s: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal and float forms are rejected."""
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"rational must be a string or integer, got {s!r}")
    if isinstance(s, str) and not _RATIONAL.fullmatch(s):
        raise ValueError(f"bad rational {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ValueError(f"bad rational {s!r}") from exc
