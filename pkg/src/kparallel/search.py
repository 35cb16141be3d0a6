"""Exact maximum number of pairwise disjoint spreads on tiny instances.

Two stages: all spreads of G_q(n, k) are listed by exact cover over the
nonzero vectors (branching on the least uncovered vector), then a maximum
packing of pairwise disjoint spreads is found by branch and bound, branching
on the least undecided subspace: either some spread through it is taken, or
it is left out of every chosen spread.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from kparallel.gf import field_of_order
from kparallel.linalg import Subspace, enumerate_grassmannian
from kparallel.oracle import VerificationReport, is_spread, pairwise_disjoint

DEFAULT_BUDGET = 10**7


class BudgetExhausted(Exception):
    pass


@dataclass
class SearchResult:
    value: int
    witness: list[list[Subspace]]
    optimal: bool
    nodes: int
    spreads_total: int | None = None
    report: VerificationReport = field(default_factory=VerificationReport)


class NodeCounter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted


def enumerate_spreads(subspaces: list[Subspace], q: int, n: int, counter: NodeCounter) -> list[int]:
    """Every spread as a bitmask over ``subspaces`` indices."""
    through: dict[int, list[int]] = {}
    for i, Y in enumerate(subspaces):
        for c in Y.codes:
            through.setdefault(c, []).append(i)
    codes = [Y.codes for Y in subspaces]
    total = q**n - 1
    found: list[int] = []

    def extend(covered: frozenset[int], chosen: int) -> None:
        counter.tick()
        if len(covered) == total:
            found.append(chosen)
            return
        v = next(c for c in range(1, q**n) if c not in covered)
        for i in through.get(v, ()):
            if not (codes[i] & covered):
                extend(covered | codes[i], chosen | (1 << i))

    extend(frozenset(), 0)
    return found


def _popcount(x: int) -> int:
    return bin(x).count("1")


def max_packing(spreads: list[int], size: int, counter: NodeCounter) -> tuple[int, list[int], bool]:
    """Largest set of pairwise disjoint masks.

    Returns (value, chosen, complete); when the budget runs out the best set
    found so far comes back with ``complete=False``.
    """
    best: list = [0, []]

    def search(avail: list[int], chosen: list[int]) -> None:
        counter.tick()
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), list(chosen)
        if not avail:
            return
        union = 0
        for s in avail:
            union |= s
        if len(chosen) + min(len(avail), _popcount(union) // size) <= best[0]:
            return
        low = union & -union  # least undecided subspace still usable
        for s in [s for s in avail if s & low]:
            search([t for t in avail if not t & s], chosen + [s])
        search([t for t in avail if not t & low], chosen)

    try:
        search(list(spreads), [])
    except BudgetExhausted:
        return best[0], best[1], False
    return best[0], best[1], True


def _solve_branch(args):
    spreads, size, first, budget = args
    counter = NodeCounter(budget)
    value, chosen, complete = max_packing([t for t in spreads if not t & first], size, counter)
    return value + 1, [first] + chosen, complete, counter.nodes


def exhaustive_max_family(q: int, n: int, k: int, limit: int = DEFAULT_BUDGET, workers: int = 1) -> SearchResult:
    """Maximum number of pairwise disjoint spreads in G_q(n, k), with a verified witness.

    ``limit`` bounds the number of search nodes.  When it is hit the best family
    found so far is returned with ``optimal=False``.  ``workers > 1`` splits the
    top-level branches across processes; the reported optimum does not change.
    """
    F = field_of_order(q)
    if k < 1 or n % k:
        return SearchResult(0, [], True, 0, 0)
    subspaces = list(enumerate_grassmannian(n, k, F))
    size = (q**n - 1) // (q**k - 1)
    counter = NodeCounter(limit)
    try:
        spreads = enumerate_spreads(subspaces, q, n, counter)
    except BudgetExhausted:
        return SearchResult(0, [], False, counter.nodes)

    if workers > 1 and spreads:
        low = min(s & -s for s in spreads)
        firsts = [s for s in spreads if s & low]
        remaining = max(limit - counter.nodes, 1)
        jobs = [(spreads, size, s, remaining // len(firsts) + 1) for s in firsts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_branch, jobs))
        # the branch that leaves the least subspace out is solved in-process
        value, chosen, optimal = max_packing([t for t in spreads if not t & low], size, counter)
        for v, c, done, nodes in results:
            counter.nodes += nodes
            optimal = optimal and done
            if v > value:
                value, chosen = v, c
    else:
        value, chosen, optimal = max_packing(spreads, size, counter)

    witness = [[subspaces[i] for i in range(len(subspaces)) if s >> i & 1] for s in chosen]
    report = VerificationReport()
    for i, S in enumerate(witness):
        report.merge(is_spread(S, n, k, F), prefix=f"witness[{i}].")
    report.merge(pairwise_disjoint(witness))
    return SearchResult(value, witness, optimal, counter.nodes, len(spreads), report)
