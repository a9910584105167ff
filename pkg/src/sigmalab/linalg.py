"""Small exact linear-algebra kernel over Fraction.

Vectors are lists/tuples of Fractions; a subspace is given by a list of
generating vectors.  Everything is plain Gaussian elimination with exact
pivoting on nonzero entries, no floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def span_basis(vectors: Sequence[Vector]) -> list[list[Fraction]]:
    """Canonical basis (nonzero rref rows) of the span."""
    mat, pivots = rref(vectors)
    return mat[: len(pivots)]


def rank(vectors: Sequence[Vector]) -> int:
    return len(rref(vectors)[1])


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis)) == rank(list(basis) + [list(v)])


def nullspace(rows: Sequence[Vector], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -mat[r][fc]
        basis.append(x)
    return basis


def span_intersection(
    us: Sequence[Vector], vs: Sequence[Vector], dim: int
) -> list[list[Fraction]]:
    """Basis of span(us) intersect span(vs) inside Fraction^dim.

    A vector lies in both spans iff it is sum(a_i u_i) = sum(b_j v_j);
    the kernel of the column-stacked system [U | -V] yields all such
    coefficient pairs.
    """
    if not us or not vs:
        return []
    nu, nv = len(us), len(vs)
    rows = [
        [us[i][r] for i in range(nu)] + [-vs[j][r] for j in range(nv)]
        for r in range(dim)
    ]
    vectors = []
    for k in nullspace(rows, nu + nv):
        w = [ZERO] * dim
        for i in range(nu):
            if k[i] != 0:
                for r in range(dim):
                    w[r] += k[i] * us[i][r]
        vectors.append(w)
    return span_basis(vectors)


def subspace_equal(us: Sequence[Vector], vs: Sequence[Vector]) -> bool:
    """Equality by dimension plus membership both ways."""
    bu = span_basis(us) if us else []
    bv = span_basis(vs) if vs else []
    if len(bu) != len(bv):
        return False
    return all(in_span(u, bv) for u in bu) and all(in_span(v, bu) for v in bv)
