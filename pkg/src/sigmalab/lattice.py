"""The complete lattice of sub-sigma-fields of a finite probability space.

On a finite space every sub-sigma-field is generated by its atoms, so the
lattice of sub-sigma-fields is exactly the partition lattice of the atom
set.  A SigmaField is a canonical partition: blocks sorted by minimal
element, atoms sorted within each block.  The order is x <= y iff every
block of x is a union of blocks of y, so bottom is the trivial field
(one block) and top separates all atoms (singletons).

Meet is the coarsest common coarsening, computed by union-find over the
merged block relations.  Join is the common refinement, computed by
pairwise block intersection.  liminf/limsup of sequences follow the
sup-of-tail-infs formula under the convention that a finite sequence is
eventually constant at its last term.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Sequence

from .space import Event, Space

Blocks = tuple[tuple[int, ...], ...]


def _canonical_blocks(raw: Iterable[Iterable[int]]) -> Blocks:
    blocks = tuple(sorted((tuple(sorted(b)) for b in raw), key=lambda b: b[0]))
    return blocks


@dataclass(frozen=True)
class SigmaField:
    """Sub-sigma-field of a finite Space, stored as a canonical partition."""

    space: Space
    blocks: Blocks

    def __post_init__(self) -> None:
        n = self.space.atom_count
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            for i in b:
                if not 0 <= i < n:
                    raise ValueError(f"atom index {i} out of range")
                if i in seen:
                    raise ValueError(f"atom {i} appears in two blocks")
                seen.add(i)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise ValueError(f"atoms {missing} not covered")
        object.__setattr__(self, "blocks", _canonical_blocks(self.blocks))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_index(self) -> tuple[int, ...]:
        """Map atom -> index of its block in canonical order."""
        idx = [0] * self.space.atom_count
        for k, b in enumerate(self.blocks):
            for i in b:
                idx[i] = k
        return tuple(idx)

    def is_bottom(self) -> bool:
        return len(self.blocks) == 1

    def is_top(self) -> bool:
        return len(self.blocks) == self.space.atom_count

    def __repr__(self) -> str:
        body = " | ".join(" ".join(str(i) for i in b) for b in self.blocks)
        return f"SigmaField[{body}]"


@dataclass(frozen=True)
class FieldSequence:
    """Finite list of fields over one Space, eventually constant at its last term."""

    terms: tuple[SigmaField, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("empty sequence")
        sp = self.terms[0].space
        for t in self.terms:
            if t.space != sp:
                raise ValueError("sequence terms live on different spaces")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def space(self) -> Space:
        return self.terms[0].space


def from_blocks(space: Space, blocks: Iterable[Iterable[int]]) -> SigmaField:
    """Build a field from explicit partition blocks, validating coverage."""
    return SigmaField(space, tuple(tuple(b) for b in blocks))


def bottom(space: Space) -> SigmaField:
    return SigmaField(space, (tuple(range(space.atom_count)),))


def top(space: Space) -> SigmaField:
    return SigmaField(space, tuple((i,) for i in range(space.atom_count)))


def generated_by(space: Space, events: Sequence[Event]) -> SigmaField:
    """Smallest field containing every given event.

    Atoms land in the same block iff no event separates them, so blocks
    are the nonempty cells cut out by the events and their complements.
    """
    n = space.atom_count
    for ev in events:
        for i in ev.atoms:
            if i >= n:
                raise ValueError(f"event atom {i} out of range")
    sig: dict[tuple[bool, ...], list[int]] = {}
    for i in range(n):
        key = tuple(i in ev.atoms for ev in events)
        sig.setdefault(key, []).append(i)
    return SigmaField(space, tuple(tuple(v) for v in sig.values()))


def _require_same_space(x: SigmaField, y: SigmaField) -> None:
    if x.space != y.space:
        raise ValueError("fields live on different spaces")


def leq(x: SigmaField, y: SigmaField) -> bool:
    """x <= y iff every block of x is a union of blocks of y."""
    _require_same_space(x, y)
    bx = x.block_index()
    for b in y.blocks:
        owner = bx[b[0]]
        if any(bx[i] != owner for i in b):
            return False
    return True


class _UnionFind:
    """Disjoint sets over 0..n-1 with path compression."""

    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def meet(x: SigmaField, y: SigmaField) -> SigmaField:
    """Intersection of the two fields: coarsest common coarsening.

    An event measurable in both fields is a union of x-blocks and also of
    y-blocks, hence a union of connected components of the merged block
    relation.
    """
    _require_same_space(x, y)
    uf = _UnionFind(x.space.atom_count)
    for b in itertools.chain(x.blocks, y.blocks):
        first = b[0]
        for i in b[1:]:
            uf.union(first, i)
    groups: dict[int, list[int]] = {}
    for i in range(x.space.atom_count):
        groups.setdefault(uf.find(i), []).append(i)
    return SigmaField(x.space, tuple(tuple(v) for v in groups.values()))


def join(x: SigmaField, y: SigmaField) -> SigmaField:
    """Field generated by both: common refinement of the partitions."""
    _require_same_space(x, y)
    bx, by = x.block_index(), y.block_index()
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(x.space.atom_count):
        groups.setdefault((bx[i], by[i]), []).append(i)
    return SigmaField(x.space, tuple(tuple(v) for v in groups.values()))


def inf_family(fields: Sequence[SigmaField]) -> SigmaField:
    if not fields:
        raise ValueError("inf of empty family")
    return reduce(meet, fields)


def sup_family(fields: Sequence[SigmaField]) -> SigmaField:
    if not fields:
        raise ValueError("sup of empty family")
    return reduce(join, fields)


def liminf_seq(q: FieldSequence) -> SigmaField:
    """sup over n of the inf of the tail starting at n.

    The tail beyond the last term repeats it, so every tail inf is the
    inf of a suffix of the stored terms.
    """
    terms = q.terms
    tails = [inf_family(terms[n:]) for n in range(len(terms))]
    return sup_family(tails)


def limsup_seq(q: FieldSequence) -> SigmaField:
    terms = q.terms
    tails = [sup_family(terms[n:]) for n in range(len(terms))]
    return inf_family(tails)


ENUMERATION_CAP = 10  # Bell(10) = 115975, about a second of work


def enumerate_lattice(space: Space, cap: int = ENUMERATION_CAP) -> list[SigmaField]:
    """All partitions of the atom set, via restricted growth strings.

    Canonical RGS order: a[0] = 0 and a[i] <= max(a[:i]) + 1, which
    enumerates each partition exactly once.
    """
    n = space.atom_count
    if n > cap:
        raise ValueError(f"{n} atoms exceeds the enumeration cap {cap}")
    out: list[SigmaField] = []
    codes = [0] * n

    def rec(i: int, width: int) -> None:
        if i == n:
            groups: dict[int, list[int]] = {}
            for atom, c in enumerate(codes):
                groups.setdefault(c, []).append(atom)
            out.append(SigmaField(space, tuple(tuple(v) for v in groups.values())))
            return
        for c in range(width + 1):
            codes[i] = c
            rec(i + 1, max(width, c + 1))

    if n == 1:
        return [bottom(space)]
    rec(1, 1)
    return out


@dataclass(frozen=True)
class ModularityReport:
    modular: bool
    distributive: bool
    modularity_witness: Optional[tuple[SigmaField, SigmaField, SigmaField]]
    distributivity_witness: Optional[tuple[SigmaField, SigmaField, SigmaField]]
    pentagon: Optional[tuple[SigmaField, ...]] = field(default=None)
    diamond: Optional[tuple[SigmaField, ...]] = field(default=None)


def _sort_key(f: SigmaField):
    return (f.block_count, f.blocks)


def _closed_or_raise(fields: Sequence[SigmaField]) -> list[SigmaField]:
    elems = sorted(set(fields), key=_sort_key)
    members = set(elems)
    for a, b in itertools.combinations(elems, 2):
        if meet(a, b) not in members or join(a, b) not in members:
            raise ValueError("input list is not closed under meet and join")
    return elems


def _is_pentagon(five: Sequence[SigmaField], le) -> bool:
    """N5 test: bottom o, top i, chain o < p < q < i, side o < s < i,
    with s incomparable to both p and q."""
    for o in five:
        if not all(le(o, z) for z in five):
            continue
        for i in five:
            if i == o or not all(le(z, i) for z in five):
                continue
            mids = [z for z in five if z not in (o, i)]
            for s in mids:
                rest = [z for z in mids if z != s]
                p, q = rest
                if not le(p, q):
                    p, q = q, p
                if not le(p, q):
                    continue
                if le(s, p) or le(p, s) or le(s, q) or le(q, s):
                    continue
                return True
    return False


def _is_diamond(five: Sequence[SigmaField], le) -> bool:
    """M3 test: bottom, top, three pairwise-incomparable middles."""
    for o in five:
        if not all(le(o, z) for z in five):
            continue
        for i in five:
            if i == o or not all(le(z, i) for z in five):
                continue
            mids = [z for z in five if z not in (o, i)]
            if len(mids) != 3:
                continue
            ok = all(
                not le(a, b) and not le(b, a)
                for a, b in itertools.combinations(mids, 2)
            )
            if ok:
                return True
    return False


def check_modularity(lattice: Sequence[SigmaField]) -> ModularityReport:
    """Scan a meet/join-closed family for the modular and distributive laws.

    Also locates pentagon (N5) and diamond (M3) sublattices by exhaustive
    5-element search; by Dedekind/Birkhoff these witness the failures.
    """
    elems = _closed_or_raise(lattice)
    index = {f: k for k, f in enumerate(elems)}
    n = len(elems)
    meet_t = [[0] * n for _ in range(n)]
    join_t = [[0] * n for _ in range(n)]
    leq_t = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = index[meet(elems[a], elems[b])]
            j = index[join(elems[a], elems[b])]
            meet_t[a][b] = meet_t[b][a] = m
            join_t[a][b] = join_t[b][a] = j
    for a in range(n):
        for b in range(n):
            leq_t[a][b] = meet_t[a][b] == a

    modularity_witness = None
    for x, y, z in itertools.product(range(n), repeat=3):
        if leq_t[x][z] and join_t[x][meet_t[y][z]] != meet_t[join_t[x][y]][z]:
            modularity_witness = (elems[x], elems[y], elems[z])
            break

    distributivity_witness = None
    for x, y, z in itertools.product(range(n), repeat=3):
        if meet_t[x][join_t[y][z]] != join_t[meet_t[x][y]][meet_t[x][z]]:
            distributivity_witness = (elems[x], elems[y], elems[z])
            break

    def le(a: SigmaField, b: SigmaField) -> bool:
        return leq_t[index[a]][index[b]]

    def closed_in(subset: tuple[int, ...]) -> bool:
        s = set(subset)
        return all(
            meet_t[a][b] in s and join_t[a][b] in s
            for a, b in itertools.combinations(subset, 2)
        )

    pentagon = None
    diamond = None
    for subset in itertools.combinations(range(n), 5):
        if pentagon is not None and diamond is not None:
            break
        if not closed_in(subset):
            continue
        five = [elems[k] for k in subset]
        if pentagon is None and _is_pentagon(five, le):
            pentagon = tuple(five)
        if diamond is None and _is_diamond(five, le):
            diamond = tuple(five)

    return ModularityReport(
        modular=modularity_witness is None,
        distributive=distributivity_witness is None,
        modularity_witness=modularity_witness,
        distributivity_witness=distributivity_witness,
        pentagon=pentagon,
        diamond=diamond,
    )


def find_pentagons(lattice: Sequence[SigmaField]) -> list[tuple[SigmaField, ...]]:
    """All 5-element N5 sublattices of a closed family, in canonical order."""
    elems = _closed_or_raise(lattice)
    index = {f: k for k, f in enumerate(elems)}

    def le(a: SigmaField, b: SigmaField) -> bool:
        return meet(a, b) == a

    found = []
    for subset in itertools.combinations(elems, 5):
        members = set(subset)
        if any(
            meet(a, b) not in members or join(a, b) not in members
            for a, b in itertools.combinations(subset, 2)
        ):
            continue
        if _is_pentagon(subset, le):
            found.append(tuple(sorted(subset, key=lambda f: index[f])))
    return found
