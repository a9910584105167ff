"""Concrete scenario reproductions on finite spaces and dyadic towers.

The tower discretizes [0,1) into 2^N uniform atoms per level, an atom k
standing for the midpoint (k + 1/2) / 2^N.  Midpoints make both the
dyadic shift and the reflection act as atom bijections, so the classic
convergence pathologies of the lattice operations have exact finite
signatures here: joins that sit at top along a whole chain and then
drop, and meets that sit at bottom until a terminal jump.

Each scenario returns a deterministic report of named pass/fail
assertions plus optional float trajectories for plotting; all lattice
assertions are exact, floats are display-only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

from .independence import is_independent
from .lattice import (
    SigmaField,
    bottom,
    from_blocks,
    generated_by,
    join,
    leq,
    meet,
    top,
)
from .noise import (
    AlgebraCandidate,
    NoiseViolation,
    check_completion_maximality,
    check_de_morgan,
    check_mixed_distributivity,
    check_projection_products,
    check_splitting,
    closure,
    completion,
    validate_noise_type,
)
from .operators import commutes, op_distance, op_distance_profile
from .space import Event, Space, new_space, uniform_space


@lru_cache(maxsize=32)
def dyadic_space(level: int) -> Space:
    """Uniform space with 2^level atoms, atom k at midpoint (k+1/2)/2^level."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    return uniform_space(2**level)


@dataclass(frozen=True)
class Tower:
    """Dyadic discretizations of [0,1) with halving refinements."""

    depth: int
    levels: tuple[Space, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        object.__setattr__(
            self, "levels", tuple(dyadic_space(k) for k in range(self.depth + 1))
        )

    def level_of(self, x: SigmaField) -> int:
        n = x.space.atom_count
        k = n.bit_length() - 1
        if 2**k != n or k > self.depth or x.space != self.levels[k]:
            raise ValueError("field does not live on a tower level")
        return k

    def lift(self, x: SigmaField, to_level: int) -> SigmaField:
        """Re-express a field on a finer level by block preimage."""
        k = self.level_of(x)
        if to_level < k or to_level > self.depth:
            raise ValueError("target level out of range")
        for _ in range(to_level - k):
            x = lift_once(x)
        return x


def lift_once(x: SigmaField) -> SigmaField:
    """Refine one dyadic level: atom k becomes atoms 2k and 2k+1."""
    n = x.space.atom_count
    k = n.bit_length() - 1
    if 2**k != n or x.space != dyadic_space(k):
        raise ValueError("field does not live on a dyadic level")
    finer = dyadic_space(k + 1)
    blocks = tuple(
        tuple(sorted(i for a in b for i in (2 * a, 2 * a + 1))) for b in x.blocks
    )
    return SigmaField(finer, blocks)


def shift_invariant_field(big_n: int, n: int) -> SigmaField:
    """Events invariant under the dyadic shift by 2^{-n}, at level big_n.

    The shift moves atom k to k + 2^{big_n - n} mod 2^big_n, so the
    invariant field is the orbit partition: residues modulo the step,
    2^{big_n - n} blocks of 2^n atoms each.  Decreasing in n, bottom at
    n = big_n.
    """
    if not 1 <= n <= big_n:
        raise ValueError("need 1 <= n <= level")
    size = 2**big_n
    step = 2 ** (big_n - n)
    blocks = tuple(tuple(range(r, size, step)) for r in range(step))
    return SigmaField(dyadic_space(big_n), blocks)


def reflection_field(big_n: int) -> SigmaField:
    """Events invariant under reflection of [0,1), at level big_n.

    With the midpoint convention, reflection swaps atom k with
    2^big_n - 1 - k, giving 2^{big_n - 1} two-atom blocks.
    """
    if big_n < 1:
        raise ValueError("level must be at least 1")
    size = 2**big_n
    blocks = tuple((k, size - 1 - k) for k in range(size // 2))
    return SigmaField(dyadic_space(big_n), blocks)


@dataclass(frozen=True)
class ScenarioAssertion:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class Trajectory:
    name: str
    index: tuple[int, ...]
    values: tuple[float, ...]


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    params: dict
    assertions: tuple[ScenarioAssertion, ...]
    trajectories: tuple[Trajectory, ...] = ()

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "params": self.params,
            "assertions": [
                {"name": a.name, "pass": a.passed, "witness": a.witness}
                for a in self.assertions
            ],
            "trajectories": [
                {
                    "name": t.name,
                    "index": list(t.index),
                    "values": [round(v, 12) for v in t.values],
                }
                for t in self.trajectories
            ],
        }


class _Recorder:
    """Collects named assertions for a scenario report."""

    def __init__(self) -> None:
        self.items: list[ScenarioAssertion] = []

    def check(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        self.items.append(ScenarioAssertion(name, bool(passed), witness))

    def done(self) -> tuple[ScenarioAssertion, ...]:
        return tuple(self.items)


def _profile_strictly_below(
    after: Sequence[Fraction], before: Sequence[Fraction]
) -> bool:
    """Exact componentwise <=, with at least one strict drop."""
    return all(a <= b for a, b in zip(after, before)) and any(
        a < b for a, b in zip(after, before)
    )


def run_join_pathology(big_n: int) -> ScenarioReport:
    """Chain whose joins with a fixed field sit at top, then drop.

    x_n are the shift-invariant fields, y the reflection field.  A
    reflection pair {k, 2^big_n-1-k} always straddles two different
    residues modulo an even step, so join(x_n, y) separates everything
    while n < big_n; at n = big_n the chain hits bottom and the join
    collapses to y.  The distance trajectory to bottom is checked for
    strict decrease on exact squared profiles, floats are display-only.
    """
    if big_n < 2:
        raise ValueError("need level >= 2")
    rec = _Recorder()
    space = dyadic_space(big_n)
    topf, botf = top(space), bottom(space)
    xs = [shift_invariant_field(big_n, n) for n in range(1, big_n + 1)]
    y = reflection_field(big_n)

    bad = [n for n in range(1, big_n) if join(xs[n - 1], y) != topf]
    rec.check(
        "prefix_joins_are_top",
        not bad,
        witness=None if not bad else f"join fails to be top at n={bad[0]}",
    )
    strict = all(
        leq(xs[n], xs[n - 1]) and xs[n] != xs[n - 1] for n in range(1, big_n)
    )
    rec.check("chain_strictly_decreasing", strict)
    rec.check("terminal_is_bottom", xs[-1] == botf)
    final = join(xs[-1], y)
    rec.check(
        "terminal_join_drops_to_y",
        final == y and y != topf,
        witness=f"join(x_{big_n}, y) has {final.block_count} blocks",
    )

    profiles = [op_distance_profile(x, botf) for x in xs]
    monotone = all(
        _profile_strictly_below(profiles[i + 1], profiles[i])
        for i in range(len(profiles) - 1)
    )
    rec.check("distance_strictly_decreasing", monotone)
    rec.check("distance_ends_at_zero", all(r == 0 for r in profiles[-1]))

    traj = Trajectory(
        name="op_distance_to_bottom",
        index=tuple(range(1, big_n + 1)),
        values=tuple(op_distance(x, botf) for x in xs),
    )
    return ScenarioReport(
        scenario="join-pathology",
        params={"N": big_n},
        assertions=rec.done(),
        trajectories=(traj,),
    )


def run_meet_pathology(
    big_n: int, weights: Optional[Sequence[Fraction]] = None
) -> ScenarioReport:
    """Increasing chain whose meets with a fixed field stay at bottom.

    On big_n + 1 atoms, x_n is generated by the nested initial segments
    of sizes 1..n and y by the largest one alone.  While n < big_n - 1
    the tail block of x_n straddles both blocks of y, so the meet is
    trivial; at n = big_n - 1 it jumps to y itself.
    """
    if big_n < 3:
        raise ValueError("need N >= 3")
    if weights is None:
        space = uniform_space(big_n + 1)
    else:
        space = new_space(list(weights))
        if space.atom_count != big_n + 1:
            raise ValueError("need N + 1 weights")
    rec = _Recorder()
    botf = bottom(space)
    events = [Event(tuple(range(n))) for n in range(1, big_n)]
    xs = [generated_by(space, events[:n]) for n in range(1, big_n)]
    y = generated_by(space, [events[-1]])

    bad = [
        n
        for n in range(1, big_n - 1)
        if meet(xs[n - 1], y) != botf
    ]
    rec.check(
        "prefix_meets_are_bottom",
        not bad,
        witness=None if not bad else f"meet nontrivial at n={bad[0]}",
    )
    rec.check("terminal_meet_jumps_to_y", meet(xs[-1], y) == y and y != botf)
    strict = all(
        leq(xs[n - 1], xs[n]) and xs[n - 1] != xs[n]
        for n in range(1, len(xs))
    )
    rec.check("chain_strictly_increasing", strict)

    traj = Trajectory(
        name="op_distance_meet_to_bottom",
        index=tuple(range(1, big_n)),
        values=tuple(op_distance(meet(x, y), botf) for x in xs),
    )
    return ScenarioReport(
        scenario="meet-pathology",
        params={
            "N": big_n,
            "weights": [str(w) for w in space.weights],
        },
        assertions=rec.done(),
        trajectories=(traj,),
    )


def pentagon_fields(
    space: Space,
) -> tuple[SigmaField, SigmaField, SigmaField]:
    """The three 4-atom fields whose span with 0 and 1 is a pentagon.

    u separates atoms 0 and 2 and lumps {1,3}; v splits {0,1} from
    {2,3}; w pairs {0,2} against {1,3}.  Then w < u, both meet v at
    bottom and join v at top.
    """
    if space.atom_count != 4:
        raise ValueError("pentagon fields need a 4-atom space")
    u = from_blocks(space, [(0,), (2,), (1, 3)])
    v = from_blocks(space, [(0, 1), (2, 3)])
    w = from_blocks(space, [(0, 2), (1, 3)])
    return u, v, w


def run_pentagon_scenario(
    weights: Optional[Sequence[Union[Fraction, int, str]]] = None,
) -> ScenarioReport:
    """Pentagon sublattice plus the exact independence criterion.

    Asserts the five-element pentagon relations for {0, u, v, w, 1} and
    compares is_independent(v, w) against the weight identity
    w0*w3 = w1*w2; also records that u and w are never independent and
    that without independence v and w cannot commute.
    """
    space = (
        uniform_space(4) if weights is None else new_space(list(weights))
    )
    if space.atom_count != 4:
        raise ValueError("need exactly 4 weights")
    rec = _Recorder()
    u, v, w = pentagon_fields(space)
    botf, topf = bottom(space), top(space)

    rec.check(
        "pentagon_chain",
        leq(w, u) and w != u and botf != w and u != topf,
    )
    rec.check("pentagon_meets", meet(u, v) == botf and meet(w, v) == botf)
    rec.check("pentagon_joins", join(u, v) == topf and join(w, v) == topf)

    wt = space.weights
    criterion = wt[0] * wt[3] == wt[1] * wt[2]
    indep = is_independent(v, w)
    rec.check(
        "independence_matches_criterion",
        indep == criterion,
        witness=(
            f"independent={indep}, w0*w3={wt[0] * wt[3]}, w1*w2={wt[1] * wt[2]}"
        ),
    )
    rec.check("u_w_never_independent", not is_independent(u, w))
    rec.check(
        "commutation_matches_independence",
        commutes(v, w) == indep,
    )
    return ScenarioReport(
        scenario="pentagon",
        params={"weights": [str(x) for x in wt]},
        assertions=rec.done(),
    )


COIN_NOISE_CAP = 6


def coin_field(coins: int, subset: Sequence[int]) -> SigmaField:
    """Field generated by the listed coins on the 2^coins uniform space.

    Atom k encodes coin j (1-based) as bit j-1 of k; the field for a
    subset S groups atoms by their bits in S.
    """
    members = sorted(set(subset))
    if members and not (1 <= members[0] and members[-1] <= coins):
        raise ValueError("coin index out of range")
    space = dyadic_space(coins)
    groups: dict[tuple[int, ...], list[int]] = {}
    for k in range(2**coins):
        key = tuple((k >> (j - 1)) & 1 for j in members)
        groups.setdefault(key, []).append(k)
    return SigmaField(space, tuple(tuple(g) for g in groups.values()))


def coin_subsets(coins: int) -> list[tuple[int, ...]]:
    """All subsets of {1..coins} in (size, lexicographic) order."""
    out: list[tuple[int, ...]] = []
    for r in range(coins + 1):
        out.extend(itertools.combinations(range(1, coins + 1), r))
    return out


def build_coin_noise(coins: int) -> AlgebraCandidate:
    """The coordinate noise-type algebra of `coins` fair coins.

    One field per subset of coins; complement of a subset field is the
    complementary-subset field.  The returned algebra has passed full
    validation; a violation here would be a bug, so it raises.
    """
    if not 1 <= coins <= COIN_NOISE_CAP:
        raise ValueError(f"need 1 <= coins <= {COIN_NOISE_CAP}")
    space = dyadic_space(coins)
    elems = [coin_field(coins, s) for s in coin_subsets(coins)]
    result = validate_noise_type(space, elems)
    if isinstance(result, NoiseViolation):
        raise AssertionError(f"coin noise failed validation: {result}")
    return result


def run_coin_scenario(coins: int) -> ScenarioReport:
    """Validate the coin algebra and its completion behavior.

    Runs full validation at any size up to the cap; the exhaustive
    projection-product, distributivity, De Morgan, splitting, and
    completion cross-checks run at the sizes they stay exact-and-fast.
    """
    if not 1 <= coins <= COIN_NOISE_CAP:
        raise ValueError(f"need 1 <= coins <= {COIN_NOISE_CAP}")
    rec = _Recorder()
    algebra = build_coin_noise(coins)
    rec.check(
        "algebra_validates",
        True,
        witness=f"{len(algebra.elements)} elements",
    )
    comp_ok = all(
        algebra.complement_map[algebra.complement_map[x]] == x
        for x in algebra.elements
    )
    rec.check("complement_is_involutive", comp_ok)

    if coins <= 4:
        rec.check(
            "projection_products_collapse_to_meet",
            check_projection_products(algebra),
        )
    cl = closure(algebra)
    rec.check(
        "closure_collapses",
        set(cl.elements) == set(algebra.elements),
        witness="finite families are closed already",
    )
    comp = completion(cl)
    rec.check(
        "completion_collapses_to_base",
        set(comp.elements) == set(algebra.elements),
        witness="every element already has its complement",
    )
    if coins <= 4:
        rec.check("mixed_distributivity", check_mixed_distributivity(cl, algebra))
        demorgan = all(
            check_de_morgan(comp, x, y)
            for x in comp.elements
            for y in comp.elements
        )
        rec.check("de_morgan_all_pairs", demorgan)
        half = tuple(range(1, coins // 2 + 1))
        rest = tuple(range(coins // 2 + 1, coins + 1))
        rec.check(
            "splitting_along_complement_pair",
            check_splitting(cl, coin_field(coins, half), coin_field(coins, rest)),
        )
        cross = check_completion_maximality(cl)
        rec.check(
            "completion_matches_exhaustive_search",
            bool(cross.agree),
            witness=f"{cross.subsets_searched} subsets searched",
        )

    # A chain rising to top drags its complements down to bottom; the
    # drop is checked on exact distance profiles, floats are display-only.
    chain = [coin_field(coins, tuple(range(1, n + 1))) for n in range(1, coins + 1)]
    rec.check("chain_reaches_top", chain[-1] == algebra.top_element)
    comps = [algebra.complement_map[x] for x in chain]
    rec.check(
        "complement_chain_reaches_bottom",
        comps[-1] == algebra.bottom_element,
    )
    profiles = [op_distance_profile(c, algebra.bottom_element) for c in comps]
    monotone = all(
        _profile_strictly_below(profiles[i + 1], profiles[i])
        for i in range(len(profiles) - 1)
    )
    rec.check("complement_distance_strictly_decreasing", monotone)
    rec.check(
        "complement_distance_ends_at_zero", all(r == 0 for r in profiles[-1])
    )
    traj = Trajectory(
        name="complement_distance_to_bottom",
        index=tuple(range(1, coins + 1)),
        values=tuple(op_distance(c, algebra.bottom_element) for c in comps),
    )
    return ScenarioReport(
        scenario="coin-noise",
        params={"N": coins},
        assertions=rec.done(),
        trajectories=(traj,),
    )


def _run_pentagon(params: dict) -> ScenarioReport:
    return run_pentagon_scenario(params.get("weights"))


def _run_join(params: dict) -> ScenarioReport:
    return run_join_pathology(int(params.get("N", 6)))


def _run_meet(params: dict) -> ScenarioReport:
    return run_meet_pathology(int(params.get("N", 5)), params.get("weights"))


def _run_coin(params: dict) -> ScenarioReport:
    return run_coin_scenario(int(params.get("N", 3)))


SCENARIOS: dict[str, Callable[[dict], ScenarioReport]] = {
    "pentagon": _run_pentagon,
    "join-pathology": _run_join,
    "meet-pathology": _run_meet,
    "coin-noise": _run_coin,
}


def run_scenario(name: str, params: Optional[dict] = None) -> ScenarioReport:
    if name not in SCENARIOS:
        known = ", ".join(sorted(SCENARIOS))
        raise KeyError(f"unknown scenario {name!r} (known: {known})")
    return SCENARIOS[name](params or {})
