"""Hereditary (downward-closed) set families on finite ground sets.

A family is stored canonically as the antichain of its inclusion-maximal
members: each maximal set is an ascending tuple of labels in ``0..n-1``, the
antichain is sorted lexicographically, and the empty set is never listed (the
empty antichain denotes the family whose only member is the empty set).
Membership of ``A`` means ``A`` is empty or contained in some listed set, so
downward closure is implicit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

Label = int
ElementSet = Iterable[Label]

GENERATOR_ALGORITHM = "python-random-mt19937-v1"


def normalize_set(members: ElementSet, n: int) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of labels, validated against 0..n-1."""
    out = tuple(sorted(set(int(m) for m in members)))
    if out and (out[0] < 0 or out[-1] >= n):
        raise ValueError(f"label out of range for ground set of size {n}: {out}")
    return out


def set_mask(members: Iterable[int]) -> int:
    mask = 0
    for m in members:
        mask |= 1 << m
    return mask


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class HereditaryFamily:
    """Canonical antichain representation of a downward-closed family.

    Direct construction requires already-canonical data (use
    :func:`hereditary_closure` for arbitrary input); violations raise
    ValueError so a family object is trustworthy by construction.
    """

    n: int
    maximal: tuple[tuple[int, ...], ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must have at least one element")
        masks = []
        for s in self.maximal:
            if not s:
                raise ValueError("empty set is implicit, never listed as maximal")
            if list(s) != sorted(set(s)):
                raise ValueError(f"maximal set not in ascending form: {s}")
            if s[0] < 0 or s[-1] >= self.n:
                raise ValueError(f"label out of range: {s}")
            masks.append(set_mask(s))
        if list(self.maximal) != sorted(self.maximal):
            raise ValueError("maximal sets not in lexicographic order")
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                if i != j and a & ~b == 0:
                    raise ValueError(
                        f"not an antichain: {self.maximal[i]} within {self.maximal[j]}"
                    )
        object.__setattr__(self, "masks", tuple(masks))

    @property
    def max_size(self) -> int:
        return max((len(s) for s in self.maximal), default=0)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "maximal": [list(s) for s in self.maximal]}


def hereditary_closure(sets: Iterable[ElementSet], n: int) -> HereditaryFamily:
    """Canonical antichain of the downward closure of ``sets`` plus the empty set.

    Keeps exactly the containment-maximal inputs; idempotent.
    """
    normalized = {normalize_set(s, n) for s in sets}
    normalized.discard(())
    items = sorted(normalized)
    masks = [set_mask(s) for s in items]
    keep = [
        items[i] for i, a in enumerate(masks)
        if not any(a != b and a & ~b == 0 for b in masks)
    ]
    return HereditaryFamily(n=n, maximal=tuple(keep))


def membership(fam: HereditaryFamily, members: ElementSet) -> bool:
    """True iff the set is empty or contained in some maximal set."""
    a = set_mask(normalize_set(members, fam.n))
    if a == 0:
        return True
    return any(a & ~m == 0 for m in fam.masks)


@dataclass(frozen=True)
class TraceResult:
    """Trace of a family to a subset, relabeled densely.

    ``labels[i]`` is the original label carried by new label ``i``.
    """

    family: HereditaryFamily
    labels: tuple[int, ...]

    def original_sets(self) -> list[tuple[int, ...]]:
        return [tuple(self.labels[i] for i in s) for s in self.family.maximal]


def trace(fam: HereditaryFamily, subset: ElementSet) -> TraceResult:
    """Family of intersections with ``subset``, on the relabeled ground set.

    The members are exactly the intersections of members with the subset,
    equivalently the members lying inside it; the result is hereditary by
    construction.  The subset must be non-empty (a ground set needs at least
    one element).
    """
    h = normalize_set(subset, fam.n)
    if not h:
        raise ValueError("trace subset must be non-empty")
    pos = {old: new for new, old in enumerate(h)}
    hmask = set_mask(h)
    intersections = set()
    for m in fam.masks:
        inter = m & hmask
        intersections.add(tuple(pos[o] for o in mask_to_tuple(inter)))
    family = hereditary_closure(intersections, len(h))
    return TraceResult(family=family, labels=h)


def maximal_up_set(fam: HereditaryFamily, members: ElementSet) -> list[tuple[int, ...]]:
    """All members containing the given member, in lexicographic order.

    For a maximal member the result is the singleton ``[member]``.
    """
    m = normalize_set(members, fam.n)
    if not membership(fam, m):
        raise ValueError(f"{m} is not a member of the family")
    mmask = set_mask(m)
    found = set()
    for fmask in fam.masks:
        if mmask & ~fmask:
            continue
        rest = mask_to_tuple(fmask & ~mmask)
        for r in range(len(rest) + 1):
            for extra in combinations(rest, r):
                found.add(tuple(sorted(m + extra)))
    return sorted(found)


def is_full_powerset(fam: HereditaryFamily) -> bool:
    """True iff the whole ground set is a member."""
    return any(len(s) == fam.n for s in fam.maximal)


def all_members(fam: HereditaryFamily) -> list[tuple[int, ...]]:
    """Every member (including the empty set), lexicographically sorted.

    Exponential in member sizes; intended for desk-scale ground sets.
    """
    found = {()}
    for s in fam.maximal:
        for r in range(1, len(s) + 1):
            for sub in combinations(s, r):
                found.add(sub)
    return sorted(found)


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class FamilySpec:
    """Descriptor for generated families.

    Kinds: ``explicit`` (sets), ``cardinality_bound`` (k), ``graph_cliques``
    / ``graph_independent`` (edge list), ``interval_trace`` (interval system).
    """

    kind: str
    n: int = 0
    k: Optional[int] = None
    edges: Optional[tuple[tuple[int, int], ...]] = None
    sets: Optional[tuple[tuple[int, ...], ...]] = None
    system: Optional[object] = None  # IntervalSystem for interval_trace

    KINDS = ("explicit", "cardinality_bound", "graph_cliques", "graph_independent", "interval_trace")

    def to_json_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "interval_trace":
            d["system"] = self.system.to_json_dict()
            return d
        d["n"] = self.n
        if self.k is not None:
            d["k"] = self.k
        if self.edges is not None:
            d["edges"] = [list(e) for e in self.edges]
        if self.sets is not None:
            d["sets"] = [list(s) for s in self.sets]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "FamilySpec":
        kind = d.get("kind")
        if kind not in cls.KINDS:
            raise ValueError(f"spec field 'kind': unknown kind {kind!r}")
        if kind == "interval_trace":
            from .intervals import IntervalSystem

            if "system" not in d:
                raise ValueError("spec field 'system' missing for interval_trace")
            return cls(kind=kind, system=IntervalSystem.from_json_dict(d["system"]))
        try:
            n = int(d["n"])
        except KeyError:
            raise ValueError("spec field 'n' missing") from None
        k = int(d["k"]) if "k" in d else None
        edges = tuple(tuple(int(v) for v in e) for e in d["edges"]) if "edges" in d else None
        sets = tuple(tuple(int(v) for v in s) for s in d["sets"]) if "sets" in d else None
        return cls(kind=kind, n=n, k=k, edges=edges, sets=sets)


def _validated_edges(edges: Sequence[Sequence[int]], n: int) -> list[tuple[int, int]]:
    out = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {e} references labels outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"self-loop {e} not allowed")
        out.append((min(u, v), max(u, v)))
    return out


def maximal_cliques(n: int, edges: Sequence[Sequence[int]]) -> HereditaryFamily:
    """All maximal cliques via pivoting Bron-Kerbosch, deterministic order."""
    adj = [0] * n
    for u, v in _validated_edges(edges, n):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        # pivot: vertex of P|X with most neighbours in P, smallest label on ties
        best, best_deg = -1, -1
        pool = p | x
        u = 0
        while pool:
            if pool & 1:
                deg = bin(p & adj[u]).count("1")
                if deg > best_deg:
                    best, best_deg = u, deg
            pool >>= 1
            u += 1
        cand = p & ~adj[best]
        v = 0
        while cand >> v:
            if (cand >> v) & 1:
                vb = 1 << v
                expand(r | vb, p & adj[v], x & adj[v])
                p &= ~vb
                x |= vb
            v += 1

    expand(0, (1 << n) - 1, 0)
    return hereditary_closure([mask_to_tuple(m) for m in out], n)


def maximal_independent_sets(n: int, edges: Sequence[Sequence[int]]) -> HereditaryFamily:
    """Maximal independent sets, as maximal cliques of the complement graph."""
    present = {(u, v) for u, v in _validated_edges(edges, n)}
    complement = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    return maximal_cliques(n, complement)


def cardinality_bound_family(n: int, k: int) -> HereditaryFamily:
    """All subsets of size at most k: maximal sets are the k-subsets."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return hereditary_closure(combinations(range(n), k), n)


def realize(spec: FamilySpec) -> HereditaryFamily:
    """Build the family a spec describes."""
    if spec.kind == "explicit":
        if spec.sets is None:
            raise ValueError("explicit spec needs 'sets'")
        return hereditary_closure(spec.sets, spec.n)
    if spec.kind == "cardinality_bound":
        if spec.k is None:
            raise ValueError("cardinality_bound spec needs 'k'")
        return cardinality_bound_family(spec.n, spec.k)
    if spec.kind == "graph_cliques":
        return maximal_cliques(spec.n, spec.edges or ())
    if spec.kind == "graph_independent":
        return maximal_independent_sets(spec.n, spec.edges or ())
    if spec.kind == "interval_trace":
        from .intervals import trace_family

        return trace_family(spec.system)
    raise ValueError(f"unknown spec kind {spec.kind!r}")


def cycle_edges(n: int) -> list[tuple[int, int]]:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return [(i, (i + 1) % n) for i in range(n)]


def random_family(seed: int, n: Optional[int] = None, max_sets: int = 40) -> HereditaryFamily:
    """Seed-deterministic random family: up to ``max_sets`` maximal sets.

    Ground size defaults to a draw in 2..12.  Uncovered labels are possible
    (and wanted: they exercise the degenerate value-zero cases downstream).
    """
    rng = random.Random(seed)
    if n is None:
        n = rng.randint(2, 12)
    if n < 1 or max_sets < 1:
        raise ValueError("need n >= 1 and max_sets >= 1")
    count = rng.randint(1, max_sets)
    density = rng.choice((0.25, 0.4, 0.6))
    sets = []
    for _ in range(count):
        s = [v for v in range(n) if rng.random() < density]
        if not s:
            s = [rng.randrange(n)]
        sets.append(s)
    return hereditary_closure(sets, n)


# ---------------------------------------------------------------------------
# file format


def family_to_json_dict(fam: HereditaryFamily) -> dict:
    return fam.to_json_dict()


def family_from_json_dict(data: dict) -> HereditaryFamily:
    """Read the family file format: explicit antichain or generator spec."""
    if not isinstance(data, dict):
        raise ValueError("family file must contain a JSON object")
    if "maximal" in data:
        if "n" not in data:
            raise ValueError("family field 'n' missing")
        return hereditary_closure(data["maximal"], int(data["n"]))
    if "spec" in data:
        return realize(FamilySpec.from_json_dict(data["spec"]))
    raise ValueError("family file needs either 'maximal' or 'spec'")
