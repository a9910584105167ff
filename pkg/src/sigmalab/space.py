"""Finite probability spaces with exact rational atom weights.

A space is an ordered tuple of strictly positive rational weights summing
to one.  Atoms are addressed by index; events are canonical sorted tuples
of atom indices.  All probability arithmetic stays in Fraction, floats
never enter.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to Fraction.

    Floats are rejected on purpose: a binary float is almost never the
    rational the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Space:
    """Finite probability space: positive rational weights summing to 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("a space needs at least one atom")
        for w in self.weights:
            if not isinstance(w, Fraction):
                raise TypeError("weights must be Fractions, use new_space()")
            if w <= 0:
                raise ValueError(f"atom weight {w} is not strictly positive")
        total = sum(self.weights, Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected 1")

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"Space([{', '.join(str(w) for w in self.weights)}])"


@dataclass(frozen=True)
class Event:
    """Subset of atom indices in canonical form: sorted, deduplicated."""

    atoms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))
        for i in self.atoms:
            if not isinstance(i, int) or i < 0:
                raise ValueError(f"bad atom index {i!r}")

    def __repr__(self) -> str:
        return f"Event({list(self.atoms)})"


def new_space(weights: Sequence[RationalLike]) -> Space:
    """Build a Space from any mix of ints, Fractions, and 'p/q' strings."""
    return Space(tuple(as_rational(w) for w in weights))


def uniform_space(n: int) -> Space:
    if n < 1:
        raise ValueError("need at least one atom")
    return Space(tuple(Fraction(1, n) for _ in range(n)))


def event(atoms: Iterable[int]) -> Event:
    return Event(tuple(atoms))


def event_prob(space: Space, ev: Event) -> Fraction:
    """P(ev): exact sum of member atom weights."""
    for i in ev.atoms:
        if i >= space.atom_count:
            raise IndexError(f"atom index {i} out of range for {space.atom_count} atoms")
    return sum((space.weights[i] for i in ev.atoms), Fraction(0))


@dataclass(frozen=True)
class ProductSpace:
    """Product of two spaces with the coordinate projections.

    Atom (i, j) of the factors sits at flat index i * n2 + j.  The maps
    send a product atom back to its coordinate in each factor.
    """

    space: Space
    left: tuple[int, ...]
    right: tuple[int, ...]


def product_space(s1: Space, s2: Space) -> ProductSpace:
    """Independent product: weight of (i, j) is w1[i] * w2[j]."""
    n2 = s2.atom_count
    weights = []
    left = []
    right = []
    for i, wi in enumerate(s1.weights):
        for j, wj in enumerate(s2.weights):
            weights.append(wi * wj)
            left.append(i)
            right.append(j)
    return ProductSpace(Space(tuple(weights)), tuple(left), tuple(right))
