"""Conditional-expectation projections and the strong-operator metric.

Each field x acts on L2 of its space through the block-averaging
projection Q_x.  Matrices are exact rationals in the weighted inner
product ⟨f,g⟩ = Σ_i w_i f_i g_i.  Floats appear in exactly one place:
the output of op_distance.  Every pass/fail decision stays rational.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .lattice import FieldSequence, SigmaField, liminf_seq, meet
from .space import Space, as_rational
from . import linalg

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Vec:
    """Element of L2 over a Space: one exact rational per atom."""

    space: Space
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.space.atom_count:
            raise ValueError("vector length does not match atom count")
        for v in self.values:
            if not isinstance(v, Fraction):
                raise TypeError("vector entries must be Fractions")


def vec(space: Space, values: Sequence[Union[Fraction, int, str]]) -> Vec:
    return Vec(space, tuple(as_rational(v) for v in values))


def ones(space: Space) -> Vec:
    return Vec(space, (Fraction(1),) * space.atom_count)


def indicator(space: Space, atoms: Sequence[int]) -> Vec:
    members = set(atoms)
    return Vec(
        space,
        tuple(Fraction(1 if i in members else 0) for i in range(space.atom_count)),
    )


def inner(f: Vec, g: Vec) -> Fraction:
    """Weighted inner product Σ_i w_i f_i g_i."""
    if f.space != g.space:
        raise ValueError("vectors live on different spaces")
    return sum(
        (w * a * b for w, a, b in zip(f.space.weights, f.values, g.values)),
        Fraction(0),
    )


@dataclass(frozen=True)
class CondExp:
    """Projection of L2 onto the block-measurable functions of a field."""

    field: SigmaField
    matrix: Matrix

    @property
    def space(self) -> Space:
        return self.field.space

    def apply(self, f: Vec) -> Vec:
        if f.space != self.space:
            raise ValueError("vector lives on a different space")
        vals = tuple(
            sum((c * v for c, v in zip(row, f.values)), Fraction(0))
            for row in self.matrix
        )
        return Vec(self.space, vals)


def block_weights(x: SigmaField) -> list[Fraction]:
    w = x.space.weights
    return [sum((w[i] for i in b), Fraction(0)) for b in x.blocks]


@lru_cache(maxsize=4096)
def cond_exp(x: SigmaField) -> CondExp:
    """Q_x: averages over the block of each atom, exactly.

    (Q_x f)(i) = Σ_{j in block(i)} w_j f_j / Σ_{j in block(i)} w_j.
    """
    n = x.space.atom_count
    w = x.space.weights
    totals = block_weights(x)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k, b in enumerate(x.blocks):
        for i in b:
            for j in b:
                rows[i][j] = w[j] / totals[k]
    return CondExp(x, tuple(tuple(r) for r in rows))


def intersection_weights(
    x: SigmaField, y: SigmaField
) -> dict[tuple[int, int], Fraction]:
    """Weight of each nonempty block intersection, keyed by block indices."""
    bx, by = x.block_index(), y.block_index()
    w = x.space.weights
    t: dict[tuple[int, int], Fraction] = {}
    for i in range(x.space.atom_count):
        key = (bx[i], by[i])
        t[key] = t.get(key, Fraction(0)) + w[i]
    return t


def projection_product(x: SigmaField, y: SigmaField) -> Matrix:
    """The exact matrix of Q_x Q_y.

    Entry (i, j) equals w_j P(B_x(i) ∩ B_y(j)) / (P(B_x(i)) P(B_y(j))),
    which follows from composing the two block averagings.
    """
    if x.space != y.space:
        raise ValueError("fields live on different spaces")
    n = x.space.atom_count
    w = x.space.weights
    bx, by = x.block_index(), y.block_index()
    wx, wy = block_weights(x), block_weights(y)
    t = intersection_weights(x, y)
    coeff = {
        (a, b): t[(a, b)] / (wx[a] * wy[b]) for (a, b) in t
    }
    zero = Fraction(0)
    rows = []
    for i in range(n):
        a = bx[i]
        rows.append(
            tuple(w[j] * coeff.get((a, by[j]), zero) for j in range(n))
        )
    return tuple(rows)


def commutes(x: SigmaField, y: SigmaField) -> bool:
    """Exact equality of Q_x Q_y and Q_y Q_x."""
    return projection_product(x, y) == projection_product(y, x)


def check_projection_product(x: SigmaField, y: SigmaField) -> bool:
    """For a commuting pair, verify Q_x Q_y = Q_{x∧y} entry by entry."""
    if not commutes(x, y):
        raise ValueError("projection product identity requires a commuting pair")
    return projection_product(x, y) == cond_exp(meet(x, y)).matrix


@dataclass(frozen=True)
class NotTypeL2:
    """Diagnosis for a span that is not the L2 space of any field.

    The level-set partition is the smallest field making every basis
    vector measurable; its L2 space has dimension field_dim.  When that
    exceeds span_dim = dim(span ∪ constants), the span is too small to
    be closed under the lattice operations that fields provide.
    """

    partition: SigmaField
    span_dim: int
    field_dim: int


def field_of_subspace(
    space: Space, basis: Sequence[Vec]
) -> Union[SigmaField, NotTypeL2]:
    """Field whose L2 space is the given span, or a NotTypeL2 report.

    Groups atoms by the joint level sets of the basis vectors, then
    compares dimensions: the span (with constants adjoined) must fill
    the whole block-measurable space of the generated partition.
    """
    for v in basis:
        if v.space != space:
            raise ValueError("basis vector lives on a different space")
    n = space.atom_count
    groups: dict[tuple[Fraction, ...], list[int]] = {}
    for i in range(n):
        key = tuple(v.values[i] for v in basis)
        groups.setdefault(key, []).append(i)
    part = SigmaField(space, tuple(tuple(g) for g in groups.values()))
    rows = [list(v.values) for v in basis] + [[Fraction(1)] * n]
    span_dim = linalg.rank(rows)
    if span_dim == part.block_count:
        return part
    return NotTypeL2(partition=part, span_dim=span_dim, field_dim=part.block_count)


def op_distance_profile(
    x: SigmaField, y: SigmaField, probes: Optional[Sequence[Vec]] = None
) -> list[Fraction]:
    """Exact squared distances ‖(Q_x − Q_y)ψ_k‖² / ‖ψ_k‖² per probe.

    With probes omitted, the default family is the normalized atom
    indicators e_j / √w_j, handled analytically so no irrational entry
    is ever materialized:

        ‖(Q_x − Q_y) e_j‖² / w_j
            = w_j (1/W_x + 1/W_y − 2 P(B_x(j) ∩ B_y(j)) / (W_x W_y))

    where W_x, W_y are the weights of the blocks of j.  These rationals
    support zero-tolerance monotonicity comparisons along chains.
    """
    if x.space != y.space:
        raise ValueError("fields live on different spaces")
    space = x.space
    w = space.weights
    if probes is None:
        bx, by = x.block_index(), y.block_index()
        wx, wy = block_weights(x), block_weights(y)
        t = intersection_weights(x, y)
        out = []
        for j in range(space.atom_count):
            a, b = bx[j], by[j]
            cross = t[(a, b)] / (wx[a] * wy[b])
            out.append(w[j] * (1 / wx[a] + 1 / wy[b] - 2 * cross))
        return out
    out = []
    for psi in probes:
        if psi.space != space:
            raise ValueError("probe lives on a different space")
        norm_sq = inner(psi, psi)
        if norm_sq == 0:
            raise ValueError("zero probe vector")
        qx = _apply_field(x, psi)
        qy = _apply_field(y, psi)
        diff = Vec(space, tuple(a - b for a, b in zip(qx.values, qy.values)))
        out.append(inner(diff, diff) / norm_sq)
    return out


def _apply_field(x: SigmaField, f: Vec) -> Vec:
    """Block-average f without building the projection matrix."""
    w = x.space.weights
    vals = list(f.values)
    for b in x.blocks:
        total = sum((w[i] for i in b), Fraction(0))
        avg = sum((w[i] * f.values[i] for i in b), Fraction(0)) / total
        for i in b:
            vals[i] = avg
    return Vec(x.space, tuple(vals))


def project(x: SigmaField, f: Vec) -> Vec:
    """Apply Q_x to f exactly."""
    if f.space != x.space:
        raise ValueError("vector lives on a different space")
    return _apply_field(x, f)


def op_distance(
    x: SigmaField, y: SigmaField, probes: Optional[Sequence[Vec]] = None
) -> float:
    """Strong-operator probe distance Σ_k 2^{-k} ‖(Q_x − Q_y)ψ_k‖.

    Weights start at 2^{-1} for the first probe.  Probes are normalized
    internally, so any nonzero family is accepted; the default family is
    the normalized atom indicators, which spans L2, making the distance
    zero iff x = y.  This is the only float-valued function here.
    """
    profile = op_distance_profile(x, y, probes)
    return sum(
        math.sqrt(float(r)) * 2.0 ** -(k + 1) for k, r in enumerate(profile)
    )


def liminf_subsequence(
    q: FieldSequence, max_length: int = 6
) -> Optional[tuple[int, ...]]:
    """Longest subsequence whose liminf equals the final term.

    The search is exhaustive over index subsets that end at the final
    index (a finite stand-in for an infinite subsequence must sample the
    constant tail).  Terms must commute pairwise.  Returns the chosen
    indices, or None if no subsequence works.
    """
    terms = q.terms
    m = len(terms)
    if m > max_length:
        raise ValueError(f"sequence length {m} exceeds the search cap {max_length}")
    for a, b in itertools.combinations(terms, 2):
        if not commutes(a, b):
            raise ValueError("terms must commute pairwise")
    target = terms[-1]
    for size in range(m, 0, -1):
        for combo in itertools.combinations(range(m - 1), size - 1):
            idx = combo + (m - 1,)
            sub = FieldSequence(tuple(terms[i] for i in idx))
            if liminf_seq(sub) == target:
                return idx
    return None
