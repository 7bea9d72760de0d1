"""Maximum homogeneous member search with the value-based size guarantee.

A member of maximum cardinality is found by branch-and-bound over the
maximal antichain: the search state is a member, candidates are the maximal
sets containing it, and the bound is the size of the largest candidate.
Exploration is lexicographic and deterministic, with an explicit node budget
and a best-effort flag when the budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .families import HereditaryFamily, mask_to_tuple
from .game import delta_exact
from .rationals import format_rational


@dataclass(frozen=True)
class SearchResult:
    best: tuple[int, ...]
    size: int
    nodes_explored: int
    optimal: bool


def max_member(fam: HereditaryFamily, budget: Optional[int] = None) -> SearchResult:
    """Maximum-cardinality member; ties resolve to the lexicographically
    smallest set.  ``budget`` caps explored nodes; when it is hit the best
    member found so far is returned with ``optimal=False``.
    """
    n = fam.n
    masks = fam.masks
    sizes = [len(s) for s in fam.maximal]
    best: tuple[int, ...] = ()
    best_size = 0
    nodes = 0
    # stack of (member_mask, member_tuple, candidate row indices, next label)
    stack = [(0, (), list(range(len(masks))), 0)]
    truncated = False
    while stack:
        if budget is not None and nodes >= budget:
            truncated = True
            break
        cur_mask, cur, cand, start = stack.pop()
        nodes += 1
        if len(cur) > best_size:
            best, best_size = cur, len(cur)
        children = []
        for e in range(start, n):
            bit = 1 << e
            sub = [r for r in cand if masks[r] & bit]
            if not sub:
                continue
            bound = max(sizes[r] for r in sub)
            if bound <= best_size:
                continue
            children.append((cur_mask | bit, cur + (e,), sub, e + 1))
        stack.extend(reversed(children))  # visit smallest label first
    return SearchResult(best=best, size=best_size, nodes_explored=nodes,
                        optimal=not truncated)


def greedy_member(fam: HereditaryFamily, order: Sequence[int]) -> tuple[int, ...]:
    """Scan labels in the given order, keeping each one that preserves
    membership of the accumulated set."""
    if sorted(order) != list(range(fam.n)):
        raise ValueError("order must be a permutation of 0..n-1")
    acc = 0
    for e in order:
        cand = acc | (1 << e)
        if any(cand & ~m == 0 for m in fam.masks):
            acc = cand
    return mask_to_tuple(acc)


@dataclass(frozen=True)
class BoundReport:
    delta: Fraction
    n: int
    bound: int
    achieved: int
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "delta": format_rational(self.delta),
            "n": self.n,
            "bound": self.bound,
            "achieved": self.achieved,
            "ok": self.ok,
        }


def ptak_bound_check(fam: HereditaryFamily) -> BoundReport:
    """Size guarantee from the game value: the uniform mean forces a member
    of weight at least delta, hence of cardinality at least ceil(delta * n).
    A failure would indicate an implementation bug, never valid data.
    """
    delta = delta_exact(fam).delta
    bound = math.ceil(delta * fam.n)
    achieved = max_member(fam).size
    return BoundReport(delta=delta, n=fam.n, bound=bound, achieved=achieved,
                       ok=achieved >= bound)
