"""Noise-type Boolean algebras of fields, their closure and completion.

A noise-type algebra is a family of fields containing bottom and top,
closed under meet and join, distributive, with a unique complement for
each element, in which every pair with trivial meet is independent.
Validation reports the first violated axiom as a structured value with
a witness; nothing is raised for invalid inputs.

On a finite space the closure of a validated algebra adds nothing (the
algebra is already meet-closed, and chains in a finite family contain
their own infima and suprema), so the completion collapses to the
algebra itself.  The constructions are still carried out honestly: the
complement-rule completion scans for complemented elements, and the
cross-check searches all intermediate families exhaustively.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .independence import is_independent
from .lattice import SigmaField, bottom, join, meet, top
from .operators import cond_exp, projection_product
from .space import Space


def _sort_key(f: SigmaField):
    return (f.block_count, f.blocks)


def canonical_elements(elems: Sequence[SigmaField]) -> tuple[SigmaField, ...]:
    return tuple(sorted(set(elems), key=_sort_key))


@dataclass(frozen=True)
class AlgebraCandidate:
    """A validated noise-type Boolean algebra with its complement map."""

    space: Space
    elements: tuple[SigmaField, ...]
    complement_map: dict[SigmaField, SigmaField]

    def complement(self, x: SigmaField) -> SigmaField:
        return self.complement_map[x]

    @property
    def bottom_element(self) -> SigmaField:
        return bottom(self.space)

    @property
    def top_element(self) -> SigmaField:
        return top(self.space)


@dataclass(frozen=True)
class NoiseViolation:
    """First failed axiom of a would-be noise-type algebra."""

    axiom: str
    witness: tuple[SigmaField, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.detail}"


def validate_noise_type(
    space: Space, elems: Sequence[SigmaField]
) -> Union[AlgebraCandidate, NoiseViolation]:
    """Check the five axioms in order, stopping at the first failure.

    Order: bottom and top present; meet/join closure; distributivity;
    unique complements; independence of meet-trivial pairs.
    """
    if not elems:
        raise ValueError("empty element list")
    for f in elems:
        if f.space != space:
            raise ValueError("element lives on a different space")
    elements = canonical_elements(elems)
    bot, topf = bottom(space), top(space)

    if bot not in elements or topf not in elements:
        missing = tuple(f for f in (bot, topf) if f not in elements)
        return NoiseViolation(
            axiom="contains-bottom-top",
            witness=missing,
            detail="bottom or top is missing",
        )

    index = {f: k for k, f in enumerate(elements)}
    n = len(elements)
    meet_t = [[0] * n for _ in range(n)]
    join_t = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = meet(elements[a], elements[b])
            j = join(elements[a], elements[b])
            if m not in index:
                return NoiseViolation(
                    axiom="closure",
                    witness=(elements[a], elements[b], m),
                    detail="meet escapes the element set",
                )
            if j not in index:
                return NoiseViolation(
                    axiom="closure",
                    witness=(elements[a], elements[b], j),
                    detail="join escapes the element set",
                )
            meet_t[a][b] = meet_t[b][a] = index[m]
            join_t[a][b] = join_t[b][a] = index[j]

    for x, y, z in itertools.product(range(n), repeat=3):
        if meet_t[x][join_t[y][z]] != join_t[meet_t[x][y]][meet_t[x][z]]:
            return NoiseViolation(
                axiom="distributivity",
                witness=(elements[x], elements[y], elements[z]),
                detail="x ∧ (y ∨ z) differs from (x ∧ y) ∨ (x ∧ z)",
            )

    ibot, itop = index[bot], index[topf]
    comp: dict[SigmaField, SigmaField] = {}
    for a in range(n):
        cands = [
            b
            for b in range(n)
            if meet_t[a][b] == ibot and join_t[a][b] == itop
        ]
        if len(cands) != 1:
            return NoiseViolation(
                axiom="complement",
                witness=(elements[a], *(elements[b] for b in cands)),
                detail=(
                    "no complement" if not cands else "multiple complements"
                ),
            )
        comp[elements[a]] = elements[cands[0]]

    for a in range(n):
        for b in range(a + 1, n):
            if meet_t[a][b] == ibot and not is_independent(
                elements[a], elements[b]
            ):
                return NoiseViolation(
                    axiom="independence",
                    witness=(elements[a], elements[b]),
                    detail="meet is trivial but the pair is not independent",
                )

    return AlgebraCandidate(space=space, elements=elements, complement_map=comp)


def check_projection_products(b: AlgebraCandidate) -> bool:
    """Q_x Q_y = Q_{x∧y} for every ordered pair of algebra elements.

    Holds in every validated algebra; a failure would indicate a bug in
    the projection or validation code, so the exhaustive matrix check is
    kept as a separate verification.
    """
    for x in b.elements:
        for y in b.elements:
            if projection_product(x, y) != cond_exp(meet(x, y)).matrix:
                return False
    return True


@dataclass(frozen=True)
class ClosureSet:
    """Closure of an algebra inside a finite ambient family."""

    space: Space
    elements: tuple[SigmaField, ...]
    base: AlgebraCandidate


def closure(
    b: AlgebraCandidate, ambient: Optional[Sequence[SigmaField]] = None
) -> ClosureSet:
    """Close the algebra under pairwise meets and chain limits in ambient.

    Chains in a finite family contain their own minimum and maximum,
    which are their infimum and supremum, so only pairwise meets can add
    anything; a validated algebra is meet-closed already.  The finite
    collapse (result == b.elements) is asserted rather than assumed.
    """
    members = set(b.elements)
    amb = set(ambient) if ambient is not None else set(b.elements)
    if not members <= amb:
        raise ValueError("ambient must contain the algebra")
    amb_sorted = sorted(amb, key=_sort_key)
    for f1, f2 in itertools.combinations(amb_sorted, 2):
        if meet(f1, f2) not in amb or join(f1, f2) not in amb:
            raise ValueError("ambient is not closed under meet and join")

    current = set(members)
    changed = True
    while changed:
        changed = False
        for f1, f2 in itertools.combinations(sorted(current, key=_sort_key), 2):
            m = meet(f1, f2)
            if m in amb and m not in current:
                current.add(m)
                changed = True

    assert current == members, "finite closure must collapse to the algebra"
    return ClosureSet(
        space=b.space, elements=canonical_elements(current), base=b
    )


def completion(cl: ClosureSet) -> AlgebraCandidate:
    """Complemented elements of the closure, as a validated algebra.

    Each element may have at most one complement inside the closure;
    finding two is a fatal inconsistency, not a recoverable state.  The
    result must contain the base algebra, stay inside the closure, and
    itself validate as a noise-type algebra.
    """
    space = cl.space
    bot, topf = bottom(space), top(space)
    members: list[SigmaField] = []
    for x in cl.elements:
        cands = [
            y
            for y in cl.elements
            if meet(x, y) == bot and join(x, y) == topf
        ]
        if len(cands) > 1:
            raise AssertionError(
                f"element {x} has multiple complements in the closure: {cands}"
            )
        if cands:
            members.append(x)

    result = validate_noise_type(space, members)
    if isinstance(result, NoiseViolation):
        raise AssertionError(f"completion failed to validate: {result}")
    base = set(cl.base.elements)
    got = set(result.elements)
    assert base <= got <= set(cl.elements), "completion must sit between B and Cl(B)"
    return result


def check_de_morgan(c: AlgebraCandidate, x: SigmaField, y: SigmaField) -> bool:
    """join stays in the algebra and complements swap join for meet."""
    if x not in c.complement_map or y not in c.complement_map:
        raise ValueError("both inputs must be complemented algebra elements")
    j = join(x, y)
    if j not in c.complement_map:
        return False
    return c.complement_map[j] == meet(c.complement_map[x], c.complement_map[y])


def check_mixed_distributivity(cl: ClosureSet, b: AlgebraCandidate) -> bool:
    """Distributivity across the closure/algebra boundary.

    (x ∨ y) ∧ z = (x ∧ z) ∨ (y ∧ z) for x, y in the closure and z in
    the algebra, and x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for x in the
    closure and y, z in the algebra.
    """
    for x in cl.elements:
        for y in cl.elements:
            for z in b.elements:
                if meet(join(x, y), z) != join(meet(x, z), meet(y, z)):
                    return False
    for x in cl.elements:
        for y in b.elements:
            for z in b.elements:
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)):
                    return False
    return True


def check_splitting(cl: ClosureSet, x: SigmaField, y: SigmaField) -> bool:
    """Every closure element is rebuilt from its traces on x and y.

    Requires x, y in the closure with meet bottom and join top; then
    z = (x ∧ z) ∨ (y ∧ z) must hold for every closure element z.
    """
    members = set(cl.elements)
    if x not in members or y not in members:
        raise ValueError("x and y must belong to the closure")
    if not meet(x, y).is_bottom() or not join(x, y).is_top():
        raise ValueError("x and y must be complementary")
    return all(join(meet(x, z), meet(y, z)) == z for z in cl.elements)


@dataclass(frozen=True)
class CompletionCrossCheck:
    """Completion computed two independent ways.

    `by_complement_rule` lists the complemented closure elements;
    `exhaustive` is the unique maximal noise-type algebra between the
    base and the closure found by subset search, or None when the
    closure is too large to search (more than 16 elements).
    """

    by_complement_rule: tuple[SigmaField, ...]
    exhaustive: Optional[tuple[SigmaField, ...]]
    agree: Optional[bool]
    subsets_searched: int


EXHAUSTIVE_SEARCH_CAP = 16


def check_completion_maximality(cl: ClosureSet) -> CompletionCrossCheck:
    """Cross-check the completion against exhaustive subset search.

    Enumerates every family between the base algebra and the closure,
    keeps those that validate as noise-type algebras (pruned first by
    complement existence), and asserts that the unique maximal one is
    exactly the complement-rule completion.
    """
    c = completion(cl)
    rule_elems = c.elements
    if len(cl.elements) > EXHAUSTIVE_SEARCH_CAP:
        return CompletionCrossCheck(
            by_complement_rule=rule_elems,
            exhaustive=None,
            agree=None,
            subsets_searched=0,
        )

    space = cl.space
    bot, topf = bottom(space), top(space)
    base = list(cl.base.elements)
    extras = [f for f in cl.elements if f not in set(base)]
    valid: list[frozenset[SigmaField]] = []
    searched = 0
    for r in range(len(extras) + 1):
        for combo in itertools.combinations(extras, r):
            searched += 1
            candidate = base + list(combo)
            members = set(candidate)
            if any(
                not any(
                    meet(x, y) == bot and join(x, y) == topf for y in members
                )
                for x in members
            ):
                continue
            if isinstance(validate_noise_type(space, candidate), AlgebraCandidate):
                valid.append(frozenset(members))

    maximal = [
        s for s in valid if not any(s < other for other in valid)
    ]
    assert len(maximal) == 1, "expected a unique maximal noise-type algebra"
    exhaustive = canonical_elements(maximal[0])
    agree = exhaustive == rule_elems
    assert agree, "complement-rule completion differs from the maximal algebra"
    return CompletionCrossCheck(
        by_complement_rule=rule_elems,
        exhaustive=exhaustive,
        agree=agree,
        subsets_searched=searched,
    )
