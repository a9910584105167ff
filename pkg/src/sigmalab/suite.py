"""Property suite: the invariants of every module, runnable from the CLI.

Each item draws from its own deterministically seeded generator, so a
given (seed, max_atoms) pair always replays the same checks.  Items
gate themselves on max_atoms and record zero checks when the cap rules
them out; max_atoms = 0 therefore yields an empty, passing suite.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .independence import (
    IndependentPair,
    check_independence_equivalence,
    check_restriction_homomorphism,
    check_tensor_intersection,
    embed,
    is_independent,
    split,
    tensor_factor_check,
)
from .lattice import (
    FieldSequence,
    SigmaField,
    bottom,
    check_modularity,
    enumerate_lattice,
    find_pentagons,
    from_blocks,
    generated_by,
    inf_family,
    join,
    leq,
    liminf_seq,
    limsup_seq,
    meet,
    sup_family,
    top,
)
from .noise import (
    AlgebraCandidate,
    ClosureSet,
    CompletionCrossCheck,
    check_completion_maximality,
    closure,
    completion,
)
from .operators import (
    Vec,
    cond_exp,
    commutes,
    indicator,
    liminf_subsequence,
    op_distance,
    op_distance_profile,
    projection_product,
)
from .scenarios import (
    Tower,
    build_coin_noise,
    coin_field,
    coin_subsets,
    dyadic_space,
    pentagon_fields,
    run_join_pathology,
    run_meet_pathology,
    run_pentagon_scenario,
    shift_invariant_field,
)
from .space import Event, Space, event_prob, new_space, product_space, uniform_space


class Check:
    """Counts checks and remembers the first failing label."""

    def __init__(self) -> None:
        self.checks = 0
        self.failures = 0
        self.first_failure: Optional[str] = None

    def __call__(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = label


@dataclass(frozen=True)
class ItemResult:
    name: str
    checks: int
    failures: int
    first_failure: Optional[str]


@dataclass(frozen=True)
class SuiteResult:
    seed: int
    max_atoms: int
    items: tuple[ItemResult, ...]

    @property
    def total_checks(self) -> int:
        return sum(i.checks for i in self.items)

    @property
    def total_failures(self) -> int:
        return sum(i.failures for i in self.items)

    @property
    def passed(self) -> bool:
        return self.total_failures == 0

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "max_atoms": self.max_atoms,
            "items": [
                {
                    "name": i.name,
                    "checks": i.checks,
                    "failures": i.failures,
                    "first_failure": i.first_failure,
                }
                for i in self.items
            ],
            "total_checks": self.total_checks,
            "total_failures": self.total_failures,
            "passed": self.passed,
        }


def rand_weights(rng: random.Random, n: int, distinct: bool = False) -> list[Fraction]:
    """Positive rational weights summing to one, from small random integers."""
    while True:
        counts = [rng.randint(1, 12) for _ in range(n)]
        if distinct and n > 1 and len(set(counts)) == 1:
            continue
        total = sum(counts)
        return [Fraction(c, total) for c in counts]


def rand_space(rng: random.Random, n: int, distinct: bool = False) -> Space:
    return Space(tuple(rand_weights(rng, n, distinct)))


def rand_field(space: Space, rng: random.Random) -> SigmaField:
    """Uniform-ish random partition via a random restricted growth string."""
    n = space.atom_count
    codes = [0]
    width = 1
    for _ in range(1, n):
        c = rng.randint(0, width)
        codes.append(c)
        width = max(width, c + 1)
    groups: dict[int, list[int]] = {}
    for atom, c in enumerate(codes):
        groups.setdefault(c, []).append(atom)
    return SigmaField(space, tuple(tuple(v) for v in groups.values()))


def coarsenings(x: SigmaField) -> list[SigmaField]:
    """All fields below x: merge x's blocks along every partition of them."""
    k = x.block_count
    out = []
    for pattern in _rgs_strings(k):
        groups: dict[int, list[int]] = {}
        for b, c in enumerate(pattern):
            groups.setdefault(c, []).extend(x.blocks[b])
        out.append(
            SigmaField(x.space, tuple(tuple(sorted(v)) for v in groups.values()))
        )
    return out


def _rgs_strings(n: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    codes = [0] * n

    def rec(i: int, width: int) -> None:
        if i == n:
            out.append(tuple(codes))
            return
        for c in range(width + 1):
            codes[i] = c
            rec(i + 1, max(width, c + 1))

    if n == 0:
        return [()]
    rec(1, 1)
    return out


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0))
            for j in range(n)
        )
        for i in range(n)
    )


def permute_field(f: SigmaField, perm: Sequence[int]) -> SigmaField:
    blocks = tuple(tuple(sorted(perm[i] for i in b)) for b in f.blocks)
    return SigmaField(f.space, blocks)


def build_closure_and_completion(
    coins: int,
) -> tuple[AlgebraCandidate, ClosureSet, AlgebraCandidate, CompletionCrossCheck]:
    """Coin algebra with its closure, completion, and the maximality cross-check."""
    algebra = build_coin_noise(coins)
    cl = closure(algebra)
    comp = completion(cl)
    cross = check_completion_maximality(cl)
    return algebra, cl, comp, cross


# ---------------------------------------------------------------- items


def item_space_products(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for trial in range(12):
        n1 = rng.randint(2, min(4, cap))
        n2 = rng.randint(2, min(4, cap))
        s1, s2 = rand_space(rng, n1), rand_space(rng, n2)
        prod = product_space(s1, s2)
        left_marginal = [Fraction(0)] * n1
        right_marginal = [Fraction(0)] * n2
        for idx, w in enumerate(prod.space.weights):
            left_marginal[prod.left[idx]] += w
            right_marginal[prod.right[idx]] += w
        check(left_marginal == list(s1.weights), f"left marginal, trial {trial}")
        check(right_marginal == list(s2.weights), f"right marginal, trial {trial}")

        atoms = list(range(prod.space.atom_count))
        rng.shuffle(atoms)
        cut = rng.randint(0, len(atoms))
        e1, e2 = Event(tuple(atoms[:cut])), Event(tuple(atoms[cut:]))
        total = event_prob(prod.space, e1) + event_prob(prod.space, e2)
        check(total == 1, f"additivity on a split, trial {trial}")


def item_lattice_axioms(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    n = min(cap, 4)
    space = uniform_space(n)
    fields = enumerate_lattice(space)
    for x, y in itertools.product(fields, repeat=2):
        check(meet(x, y) == meet(y, x), "meet commutative")
        check(join(x, y) == join(y, x), "join commutative")
        check(meet(x, join(x, y)) == x, "absorption meet-join")
        check(join(x, meet(x, y)) == x, "absorption join-meet")
        check(leq(x, y) == (meet(x, y) == x), "leq iff meet is x")
        check(leq(x, y) == (join(x, y) == y), "leq iff join is y")
    for x in fields:
        check(meet(x, x) == x and join(x, x) == x, "idempotence")
    trios = [
        (rng.choice(fields), rng.choice(fields), rng.choice(fields))
        for _ in range(150)
    ]
    for x, y, z in trios:
        check(meet(meet(x, y), z) == meet(x, meet(y, z)), "meet associative")
        check(join(join(x, y), z) == join(x, join(y, z)), "join associative")
        check(
            inf_family([x, y, z]) == meet(meet(x, y), z),
            "inf_family agrees with folds",
        )
        check(
            sup_family([x, y, z]) == join(join(x, y), z),
            "sup_family agrees with folds",
        )


def item_liminf_limsup(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for trial in range(25):
        n = rng.randint(2, min(5, cap))
        space = rand_space(rng, n)
        terms = tuple(rand_field(space, rng) for _ in range(rng.randint(1, 6)))
        seq = FieldSequence(terms)
        lo, hi = liminf_seq(seq), limsup_seq(seq)
        check(leq(lo, hi), f"liminf <= limsup, trial {trial}")
        check(
            lo == terms[-1] and hi == terms[-1],
            f"eventually-constant sequences settle at the last term, trial {trial}",
        )


def item_generated_roundtrip(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for trial in range(25):
        n = rng.randint(2, min(6, cap))
        space = rand_space(rng, n)
        x = rand_field(space, rng)
        events = [Event(b) for b in x.blocks]
        check(
            generated_by(space, events) == x,
            f"blocks regenerate their field, trial {trial}",
        )
        extra = [
            Event(tuple(i for i in range(n) if rng.random() < 0.5))
            for _ in range(2)
        ]
        smaller = generated_by(space, events)
        larger = generated_by(space, events + extra)
        check(
            leq(smaller, larger),
            f"generated_by is monotone in its events, trial {trial}",
        )


def item_modularity_shapes(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 3:
        return
    lam3 = enumerate_lattice(uniform_space(3))
    rep3 = check_modularity(lam3)
    check(rep3.modular, "3-atom lattice is modular")
    check(not rep3.distributive, "3-atom lattice is not distributive")
    check(rep3.diamond is not None, "3-atom lattice contains a diamond")
    check(rep3.pentagon is None, "3-atom lattice has no pentagon")
    if cap < 4:
        return
    space = uniform_space(4)
    lam4 = enumerate_lattice(space)
    rep4 = check_modularity(lam4)
    check(not rep4.modular, "4-atom lattice is not modular")
    check(rep4.pentagon is not None, "4-atom lattice contains a pentagon")

    u, v, w = pentagon_fields(space)
    canonical = {bottom(space), top(space), u, v, w}
    perms = list(itertools.permutations(range(4)))
    for found in find_pentagons(lam4):
        matched = any(
            {permute_field(f, p) for f in found} == canonical for p in perms
        )
        check(matched, f"pentagon {found} matches the canonical one")


def item_projection_invariants(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for trial in range(18):
        n = rng.randint(2, min(8, cap))
        space = rand_space(rng, n)
        x = rand_field(space, rng)
        q = cond_exp(x)
        m = q.matrix
        check(_matmul(m, m) == m, f"idempotent, trial {trial}")
        weighted = [
            [space.weights[i] * m[i][j] for j in range(n)] for i in range(n)
        ]
        sym = all(
            weighted[i][j] == weighted[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )
        check(sym, f"self-adjoint in the weighted inner product, trial {trial}")
        const = Vec(space, (Fraction(1),) * n)
        check(q.apply(const).values == const.values, f"fixes constants, trial {trial}")
        check(
            linalg.rank([list(r) for r in m]) == x.block_count,
            f"rank equals block count, trial {trial}",
        )
        for b in x.blocks[:2]:
            ind = indicator(space, b)
            check(
                q.apply(ind).values == ind.values,
                f"fixes its own block indicators, trial {trial}",
            )


def item_projection_order(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for trial in range(18):
        n = rng.randint(2, min(6, cap))
        space = rand_space(rng, n)
        x = rand_field(space, rng)
        y = rng.choice([rand_field(space, rng), rng.choice(coarsenings(x))])
        both = (
            projection_product(x, y) == projection_product(y, x) == cond_exp(x).matrix
        )
        check(
            leq(x, y) == both,
            f"x <= y iff QxQy = QyQx = Qx, trial {trial}",
        )


def _chain_profiles_shrink(chain: Sequence[SigmaField], check: Check, tag: str) -> None:
    target = chain[-1]
    profiles = [op_distance_profile(x, target) for x in chain]
    for i in range(len(profiles) - 1):
        check(
            all(b <= a for a, b in zip(profiles[i], profiles[i + 1])),
            f"{tag}: profile nonincreasing at step {i}",
        )
    check(all(r == 0 for r in profiles[-1]), f"{tag}: distance reaches zero")


def item_monotone_convergence(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    level = 4
    down = [shift_invariant_field(level, n) for n in range(1, level + 1)]
    _chain_profiles_shrink(down, check, "decreasing shift chain")
    up = list(reversed(down))
    _chain_profiles_shrink(up, check, "increasing shift chain")
    space = dyadic_space(level)
    seq = FieldSequence(tuple(down))
    check(liminf_seq(seq) == bottom(space), "decreasing chain liminf is bottom")
    d = op_distance(down[-1], bottom(space))
    check(d == 0.0, "distance to the limit vanishes at the end of the chain")


def item_liminf_subsequence(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    coins = 3
    subsets = coin_subsets(coins)
    for trial in range(10):
        length = rng.randint(2, 6)
        terms = tuple(
            coin_field(coins, rng.choice(subsets)) for _ in range(length)
        )
        seq = FieldSequence(terms)
        idx = liminf_subsequence(seq)
        check(idx is not None, f"a subsequence always exists, trial {trial}")
        if idx is not None:
            sub = FieldSequence(tuple(terms[i] for i in idx))
            check(
                liminf_seq(sub) == terms[-1],
                f"found subsequence has the right liminf, trial {trial}",
            )


def item_independence_symmetry(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 4:
        return
    for trial in range(12):
        n1, n2 = rng.randint(2, 3), rng.randint(2, 3)
        if n1 * n2 > max(cap, 4):
            continue
        prod = product_space(rand_space(rng, n1), rand_space(rng, n2))
        space = prod.space
        groups1: dict[int, list[int]] = {}
        groups2: dict[int, list[int]] = {}
        for idx in range(space.atom_count):
            groups1.setdefault(prod.left[idx], []).append(idx)
            groups2.setdefault(prod.right[idx], []).append(idx)
        x = SigmaField(space, tuple(tuple(v) for v in groups1.values()))
        y = SigmaField(space, tuple(tuple(v) for v in groups2.values()))
        check(is_independent(x, y), f"coordinate fields independent, trial {trial}")
        check(
            is_independent(y, x) == is_independent(x, y),
            f"independence is symmetric, trial {trial}",
        )
        xc = rng.choice(coarsenings(x))
        yc = rng.choice(coarsenings(y))
        check(
            is_independent(xc, yc),
            f"independence survives coarsening, trial {trial}",
        )


def item_equivalence_exhaustive(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for n in range(2, min(cap, 4) + 1):
        for _ in range(3):
            space = rand_space(rng, n, distinct=True)
            fields = enumerate_lattice(space)
            for x, y in itertools.combinations_with_replacement(fields, 2):
                rep = check_independence_equivalence(x, y)
                check(
                    rep.consistent,
                    f"equivalence on {n} atoms: {x} vs {y}",
                )


def item_embed_split(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for n in range(2, min(cap, 4) + 1):
        space = uniform_space(n)
        fields = enumerate_lattice(space)
        for x, y in itertools.product(fields, repeat=2):
            if not is_independent(x, y):
                continue
            pair = IndependentPair(x, y)
            for u in coarsenings(x):
                for v in coarsenings(y):
                    z = embed(pair, u, v)
                    back = split(pair, z)
                    check(
                        back.member
                        and back.x_part == u
                        and back.y_part == v,
                        f"split(embed) identity on {n} atoms",
                    )


def item_restriction_homomorphism(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 4:
        return
    space = uniform_space(4)
    u, v, w = pentagon_fields(space)
    pair = IndependentPair(v, w)
    members = [
        embed(pair, a, b) for a in coarsenings(v) for b in coarsenings(w)
    ]
    for z1, z2 in itertools.product(members, repeat=2):
        check(
            check_restriction_homomorphism(pair, z1, z2),
            "restriction homomorphism on the 4-atom pair",
        )
    coins = 2
    f1, f2 = coin_field(coins, (1,)), coin_field(coins, (2,))
    cpair = IndependentPair(f1, f2)
    cmembers = [
        embed(cpair, a, b) for a in coarsenings(f1) for b in coarsenings(f2)
    ]
    for _ in range(40):
        z1, z2 = rng.choice(cmembers), rng.choice(cmembers)
        check(
            check_restriction_homomorphism(cpair, z1, z2),
            "restriction homomorphism on the two-coin pair",
        )


def item_independence_closedness(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    tower = Tower(5)
    f1, f2 = coin_field(2, (1,)), coin_field(2, (2,))
    for lvl in range(3, 6):
        lx, ly = tower.lift(f1, lvl), tower.lift(f2, lvl)
        check(
            is_independent(lx, ly),
            f"lifting preserves independence at level {lvl}",
        )
    seq_pairs = [(f1, f2)] * 3 + [(tower.lift(f1, 3), tower.lift(f2, 3))]
    stable = seq_pairs[-1]
    check(
        is_independent(*stable),
        "the stabilized pair of a stabilizing sequence is independent",
    )


def item_tensor_intersection(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 3:
        return
    s = uniform_space(3)

    def rand_subspace() -> list[Vec]:
        dim = rng.randint(0, 2)
        return [
            Vec(s, tuple(Fraction(rng.randint(-3, 3)) for _ in range(3)))
            for _ in range(dim)
        ]

    for trial in range(20):
        ok = check_tensor_intersection(
            s, s, rand_subspace(), rand_subspace(), rand_subspace(), rand_subspace()
        )
        check(ok, f"tensor intersection identity, trial {trial}")


def item_tensor_factorization(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 4:
        return
    f1, f2 = coin_field(2, (1,)), coin_field(2, (2,))
    rep = tensor_factor_check(IndependentPair(f1, f2))
    check(rep.ok, "two-coin factorization")
    check(rep.product_count == 4, "two-coin factorization has 4 products")
    space = uniform_space(4)
    _, v, w = pentagon_fields(space)
    rep2 = tensor_factor_check(IndependentPair(v, w))
    check(rep2.ok and rep2.join_dim == 4, "uniform 4-atom pair spans everything")
    x = rand_field(rand_space(rng, 4), rng)
    rep3 = tensor_factor_check(IndependentPair(x, bottom(x.space)))
    check(
        rep3.ok and rep3.join_dim == x.block_count,
        "factorization against the trivial field",
    )


def item_noise_coin_full(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for coins in range(1, 4):
        result = build_closure_and_completion(coins)
        algebra, cl, comp, cross = result
        check(
            set(comp.elements) == set(algebra.elements),
            f"completion collapses to the algebra, {coins} coins",
        )
        check(
            bool(cross.agree),
            f"complement rule agrees with exhaustive search, {coins} coins",
        )
        for x in comp.elements:
            x1 = comp.complement_map[x]
            check(
                comp.complement_map[x1] == x,
                f"complement is involutive, {coins} coins",
            )
            check(
                meet(x, x1).is_bottom() and join(x, x1).is_top(),
                f"complements meet at bottom and join at top, {coins} coins",
            )


def item_noise_continuity(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    coins = 3
    algebra = build_coin_noise(coins)
    elems = list(algebra.elements)
    for trial in range(8):
        x = rng.choice(elems)
        z = rng.choice(elems)
        drifts = [rng.choice(elems) for _ in range(rng.randint(1, 3))]
        seq = drifts + [z, z]
        joined = [join(x, t) for t in seq]
        target = join(x, z)
        check(
            op_distance(joined[-1], target) == 0.0,
            f"join map settles exactly, trial {trial}",
        )
        profiles = [op_distance_profile(j, target) for j in joined[-2:]]
        check(
            all(r == 0 for p in profiles for r in p),
            f"stabilized tail has zero distance profile, trial {trial}",
        )


def item_noise_join_closure(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for coins in range(1, 4):
        algebra, cl, comp, _ = build_closure_and_completion(coins)
        members = set(cl.elements)
        for x in comp.elements:
            for z in cl.elements:
                check(
                    join(x, z) in members,
                    f"join of completion and closure elements stays inside, "
                    f"{coins} coins",
                )


def item_scenario_pathologies(check: Check, rng: random.Random, cap: int) -> None:
    if cap < 2:
        return
    for big_n in range(2, 6):
        rep = run_join_pathology(big_n)
        check(rep.passed, f"join pathology passes at N={big_n}")
    for big_n in range(3, 7):
        rep = run_meet_pathology(big_n)
        check(rep.passed, f"meet pathology passes at N={big_n}")
    check(run_pentagon_scenario().passed, "pentagon scenario, uniform")
    check(
        run_pentagon_scenario(
            [Fraction(1, 10), Fraction(2, 10), Fraction(3, 10), Fraction(4, 10)]
        ).passed,
        "pentagon scenario, skewed weights",
    )

    tower = Tower(5)
    space3 = dyadic_space(3)
    for trial in range(10):
        x = rand_field(space3, rng)
        y = rand_field(space3, rng)
        lx, ly = tower.lift(x, 5), tower.lift(y, 5)
        check(
            tower.lift(meet(x, y), 5) == meet(lx, ly),
            f"lifting commutes with meet, trial {trial}",
        )
        check(
            tower.lift(join(x, y), 5) == join(lx, ly),
            f"lifting commutes with join, trial {trial}",
        )
        check(
            leq(x, y) == leq(lx, ly),
            f"lifting preserves and reflects order, trial {trial}",
        )


ITEMS: list[tuple[str, Callable[[Check, random.Random, int], None]]] = [
    ("space-product-marginals", item_space_products),
    ("lattice-axioms", item_lattice_axioms),
    ("liminf-limsup", item_liminf_limsup),
    ("generated-roundtrip", item_generated_roundtrip),
    ("modularity-shapes", item_modularity_shapes),
    ("projection-invariants", item_projection_invariants),
    ("projection-order", item_projection_order),
    ("monotone-convergence", item_monotone_convergence),
    ("liminf-subsequence", item_liminf_subsequence),
    ("independence-symmetry", item_independence_symmetry),
    ("independence-commutation-equivalence", item_equivalence_exhaustive),
    ("embed-split-identity", item_embed_split),
    ("restriction-homomorphism", item_restriction_homomorphism),
    ("independence-closedness", item_independence_closedness),
    ("tensor-intersection", item_tensor_intersection),
    ("tensor-factorization", item_tensor_factorization),
    ("noise-coin-algebras", item_noise_coin_full),
    ("noise-join-continuity", item_noise_continuity),
    ("noise-join-closure", item_noise_join_closure),
    ("scenario-pathologies", item_scenario_pathologies),
]


def suite_item_names() -> list[str]:
    return [name for name, _ in ITEMS]


def run_suite(seed: int, max_atoms: int) -> SuiteResult:
    results = []
    for name, fn in ITEMS:
        rng = random.Random(f"{seed}:{name}")
        check = Check()
        fn(check, rng, max_atoms)
        results.append(
            ItemResult(
                name=name,
                checks=check.checks,
                failures=check.failures,
                first_failure=check.first_failure,
            )
        )
    return SuiteResult(seed=seed, max_atoms=max_atoms, items=tuple(results))
