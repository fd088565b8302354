"""Exact subgroup counting and the analytic oracles for cover enumeration.

All arithmetic uses Python's arbitrary-precision integers; the counts grow
like d * (d!)**(r-1) and overflow 64 bits almost immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .graph_core import Graph, euler_characteristic, is_connected

DEFAULT_BUDGET = 10_000_000


def hall_count(d: int, r: int) -> int:
    """Number of index-d subgroups of the free group of rank r.

    Classical recursion, exact:

        N(1, r) = 1
        N(d, r) = d * (d!)**(r-1) - sum_{i=1}^{d-1} ((d-i)!)**(r-1) * N(i, r)
    """
    if d < 1 or r < 1:
        raise ValueError("index d and rank r must both be at least 1")
    counts = [0] * (d + 1)
    counts[1] = 1
    for k in range(2, d + 1):
        value = k * factorial(k) ** (r - 1)
        value -= sum(factorial(k - i) ** (r - 1) * counts[i] for i in range(1, k))
        counts[k] = value
    return counts[d]


def lower_bound(d: int, r: int) -> int:
    """Guaranteed minimum number of non-isomorphic connected degree-d covers,
    d**(r-2) * ((d-1)!)**(r-1), valid for rank r >= 2."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if r < 2:
        raise ValueError("the lower bound is only claimed for rank r >= 2")
    return d ** (r - 2) * factorial(d - 1) ** (r - 1)


def rank_from_graph(g: Graph) -> int:
    """Rank of the free fundamental group of a connected graph: 1 - (|V| - |E|)."""
    if g.vertex_count == 0 or not is_connected(g):
        raise ValueError("rank is defined for non-empty connected graphs")
    return 1 - euler_characteristic(g)


def orbit_is_transitive(perms, d: int) -> bool:
    """Does the permutation group generated by ``perms`` act transitively on 0..d-1?

    Orbit closure under the generators suffices: every finite permutation's
    inverse is one of its powers.
    """
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == d


def transitive_tuple_count(d: int, r: int) -> int:
    """Brute-force count of r-tuples of degree-d permutations generating a
    transitive group. Equals (d-1)! times the index-d subgroup count; used as
    an independent check of hall_count."""
    if d < 1 or r < 1:
        raise ValueError("index d and rank r must both be at least 1")
    perms = list(permutations(range(d)))
    return sum(1 for tup in product(perms, repeat=r) if orbit_is_transitive(tup, d))


def _conjugate(p, tau, tau_inv):
    return tuple(tau[p[tau_inv[x]]] for x in range(len(p)))


def conjugacy_class_count(d: int, r: int) -> int:
    """Transitive r-tuples of degree-d permutations counted up to simultaneous
    conjugation. These orbits are exactly the isomorphism classes of connected
    degree-d covers of a rank-r base, so this is the dataset-size oracle."""
    if d < 1 or r < 1:
        raise ValueError("index d and rank r must both be at least 1")
    perms = list(permutations(range(d)))
    inverses = {p: tuple(sorted(range(d), key=p.__getitem__)) for p in perms}
    seen = set()
    classes = 0
    for tup in product(perms, repeat=r):
        if tup in seen or not orbit_is_transitive(tup, d):
            continue
        classes += 1
        for tau in perms:
            tau_inv = inverses[tau]
            seen.add(tuple(_conjugate(p, tau, tau_inv) for p in tup))
    return classes


@dataclass(frozen=True)
class CountingReport:
    degree: int
    rank: int
    class_count: int
    subgroup_count: int
    class_lower_bound: int | None
    connected_voltages: int
    predicted_connected: int
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def check_counting_consistency(
    base: Graph,
    degree: int,
    budget: int = DEFAULT_BUDGET,
    require_discrete: bool = True,
) -> CountingReport:
    """Generate the cover dataset for ``base`` and compare it with the counts.

    Checks, with C the number of generated classes and N the subgroup count:
      * d * C >= N
      * C >= lower_bound(d, r)            (rank >= 2 only)
      * connected voltages == (d-1)! * N  (transitive-tuple identity)
    """
    from .dataset_gen import generate_graphcovers  # deferred: dataset_gen uses this module

    rank = rank_from_graph(base)
    dataset = generate_graphcovers(
        base, degree, budget=budget, require_discrete=require_discrete
    )
    class_count = dataset.class_count
    subgroups = hall_count(degree, rank)
    predicted_connected = factorial(degree - 1) * subgroups
    bound = lower_bound(degree, rank) if rank >= 2 else None

    checks = [
        (
            "index inequality d*C >= N",
            degree * class_count >= subgroups,
            f"{degree}*{class_count} >= {subgroups}",
        )
    ]
    if bound is not None:
        checks.append(
            (
                "class lower bound",
                class_count >= bound,
                f"{class_count} >= {bound}",
            )
        )
    checks.append(
        (
            "connected voltage count",
            dataset.connected == predicted_connected,
            f"{dataset.connected} == ({degree}-1)! * {subgroups} = {predicted_connected}",
        )
    )
    return CountingReport(
        degree=degree,
        rank=rank,
        class_count=class_count,
        subgroup_count=subgroups,
        class_lower_bound=bound,
        connected_voltages=dataset.connected,
        predicted_connected=predicted_connected,
        checks=tuple(checks),
    )
