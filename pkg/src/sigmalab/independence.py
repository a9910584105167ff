"""Independence of fields and its operator-side consequences.

Two fields are independent when the product rule P(A ∩ B) = P(A) P(B)
holds for all of their blocks; by additivity that settles every pair of
events.  Independence is equivalent to commuting projections with
trivial meet, and an independent pair factors L2 as a tensor product of
its two block-indicator spaces.  The pair also spans a sublattice that
looks like a product of the intervals below x and below y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lattice import SigmaField, bottom, join, leq, meet
from .operators import (
    Vec,
    block_weights,
    commutes,
    intersection_weights,
)
from .space import Space


def is_independent(x: SigmaField, y: SigmaField) -> bool:
    """Exact product rule on all block pairs of the two fields."""
    if x.space != y.space:
        raise ValueError("fields live on different spaces")
    wx, wy = block_weights(x), block_weights(y)
    t = intersection_weights(x, y)
    zero = Fraction(0)
    for a in range(len(wx)):
        for b in range(len(wy)):
            if t.get((a, b), zero) != wx[a] * wy[b]:
                return False
    return True


@dataclass(frozen=True)
class IndependentPair:
    """A pair of fields checked for independence at construction."""

    x: SigmaField
    y: SigmaField

    def __post_init__(self) -> None:
        if not is_independent(self.x, self.y):
            raise ValueError("fields are not independent")

    @property
    def space(self) -> Space:
        return self.x.space


@dataclass(frozen=True)
class IndependenceEquivalence:
    """Both sides of the independence/commutation equivalence.

    Independence must hold exactly when the projections commute and the
    meet is trivial; `consistent` records whether the two sides agree,
    and the three flags show which side failed when they do not.
    """

    independent: bool
    commuting: bool
    meet_is_trivial: bool

    @property
    def operator_side(self) -> bool:
        return self.commuting and self.meet_is_trivial

    @property
    def consistent(self) -> bool:
        return self.independent == self.operator_side


def check_independence_equivalence(
    x: SigmaField, y: SigmaField
) -> IndependenceEquivalence:
    """Evaluate independence against commutation plus trivial meet."""
    return IndependenceEquivalence(
        independent=is_independent(x, y),
        commuting=commutes(x, y),
        meet_is_trivial=meet(x, y).is_bottom(),
    )


@dataclass(frozen=True)
class TensorFactorReport:
    """Outcome of factoring L2 over an independent pair.

    The pointwise products of block indicators of x and y are indicators
    of block intersections; for an independent pair none of them vanish,
    they are exactly the blocks of join(x, y), and the inner product
    factors across the two components.
    """

    x_blocks: int
    y_blocks: int
    product_count: int
    nonzero_products: int
    join_dim: int
    basis_ok: bool
    unitary_ok: bool

    @property
    def ok(self) -> bool:
        return self.basis_ok and self.unitary_ok


def tensor_factor_check(p: IndependentPair) -> TensorFactorReport:
    x, y = p.x, p.y
    space = p.space
    products = {}
    for a, ba in enumerate(x.blocks):
        sa = set(ba)
        for b, bb in enumerate(y.blocks):
            products[(a, b)] = tuple(sorted(sa.intersection(bb)))
    nonzero = {k: v for k, v in products.items() if v}
    j = join(x, y)
    join_blocks = set(j.blocks)
    basis_ok = (
        len(nonzero) == len(products)
        and set(nonzero.values()) == join_blocks
        and len(nonzero) == j.block_count
    )

    w = space.weights

    def prob(atoms: Sequence[int]) -> Fraction:
        return sum((w[i] for i in atoms), Fraction(0))

    wx, wy = block_weights(x), block_weights(y)
    unitary_ok = True
    keys = sorted(products)
    for a, b in keys:
        for a2, b2 in keys:
            both = tuple(
                i for i in products[(a, b)] if i in set(products[(a2, b2)])
            )
            lhs = prob(both)
            rhs = (wx[a] if a == a2 else Fraction(0)) * (
                wy[b] if b == b2 else Fraction(0)
            )
            if lhs != rhs:
                unitary_ok = False
                break
        if not unitary_ok:
            break

    return TensorFactorReport(
        x_blocks=x.block_count,
        y_blocks=y.block_count,
        product_count=len(products),
        nonzero_products=len(nonzero),
        join_dim=j.block_count,
        basis_ok=basis_ok,
        unitary_ok=unitary_ok,
    )


def _tensor(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[Fraction]:
    return [a * b for a in f for b in g]


def check_tensor_intersection(
    s1: Space,
    s2: Space,
    h1a: Sequence[Vec],
    h2a: Sequence[Vec],
    h1b: Sequence[Vec],
    h2b: Sequence[Vec],
) -> bool:
    """Intersecting two tensor-product subspaces factor by factor.

    Verifies span(h1a ⊗ h2a) ∩ span(h1b ⊗ h2b) equals
    span((h1a ∩ h1b) ⊗ (h2a ∩ h2b)) inside the product space, comparing
    dimensions and membership both ways, all in exact rationals.
    """
    for v in (*h1a, *h1b):
        if v.space != s1:
            raise ValueError("first-factor vector has wrong dimension")
    for v in (*h2a, *h2b):
        if v.space != s2:
            raise ValueError("second-factor vector has wrong dimension")
    n1, n2 = s1.atom_count, s2.atom_count
    dim = n1 * n2
    ua = [_tensor(f.values, g.values) for f in h1a for g in h2a]
    ub = [_tensor(f.values, g.values) for f in h1b for g in h2b]
    lhs = linalg.span_intersection(ua, ub, dim)
    i1 = linalg.span_intersection(
        [list(v.values) for v in h1a], [list(v.values) for v in h1b], n1
    )
    i2 = linalg.span_intersection(
        [list(v.values) for v in h2a], [list(v.values) for v in h2b], n2
    )
    rhs = [_tensor(f, g) for f in i1 for g in i2]
    return linalg.subspace_equal(lhs, rhs)


def embed(p: IndependentPair, u: SigmaField, v: SigmaField) -> SigmaField:
    """Join of one field below x and one below y."""
    if not leq(u, p.x):
        raise ValueError("first component must sit below x")
    if not leq(v, p.y):
        raise ValueError("second component must sit below y")
    return join(u, v)


@dataclass(frozen=True)
class SplitResult:
    """Decomposition of z against an independent pair.

    `member` records whether z is recovered as the join of its parts,
    which characterizes membership in the sublattice spanned by the
    intervals below x and below y.
    """

    x_part: SigmaField
    y_part: SigmaField
    member: bool


def split(p: IndependentPair, z: SigmaField) -> SplitResult:
    if z.space != p.space:
        raise ValueError("field lives on a different space")
    x_part = meet(z, p.x)
    y_part = meet(z, p.y)
    return SplitResult(x_part, y_part, join(x_part, y_part) == z)


def check_restriction_homomorphism(
    p: IndependentPair, z1: SigmaField, z2: SigmaField
) -> bool:
    """Restriction to each component turns joins and meets into the same.

    For members z1, z2 of the pair's sublattice, verifies that meeting
    with x (and with y) distributes over join and meet of the two
    members, and that joins and meets of members recombine component
    by component.
    """
    s1, s2 = split(p, z1), split(p, z2)
    if not s1.member or not s2.member:
        raise ValueError("inputs must belong to the pair's sublattice")
    checks = []
    for side in (p.x, p.y):
        checks.append(
            meet(join(z1, z2), side) == join(meet(z1, side), meet(z2, side))
        )
        checks.append(
            meet(meet(z1, z2), side) == meet(meet(z1, side), meet(z2, side))
        )
    u1, v1 = s1.x_part, s1.y_part
    u2, v2 = s2.x_part, s2.y_part
    checks.append(join(join(u1, v1), join(u2, v2)) == join(join(u1, u2), join(v1, v2)))
    checks.append(meet(join(u1, v1), join(u2, v2)) == join(meet(u1, u2), meet(v1, v2)))
    return all(checks)
