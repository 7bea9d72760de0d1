"""Adequate families as intersection traces of interval systems in [0,1].

Each ground-set label carries a finite union of closed rational
subintervals; a set of labels is a member exactly when the corresponding
interval sets share a common point.  The family is computed by an endpoint
sweep: stabilizer sets are read off at every endpoint and at the midpoint of
every gap between consecutive endpoints (closed intervals can meet in a
single shared endpoint, so endpoints must be sampled themselves).

The minimum Lebesgue measure of the interval sets lower-bounds the game
value of the traced family: any mean gives the indicator average
sum_s lambda(s) * |C_s| >= min measure, so some stabilizer carries at least
that much mass.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .families import HereditaryFamily, hereditary_closure
from .rationals import ONE, ZERO, as_fraction, format_rational


class NotApplicableError(ValueError):
    """Raised when a check's precondition excludes the given input."""


Piece = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of closed rational intervals within [0,1].

    Pieces are sorted, pairwise disjoint and non-touching (touching closed
    pieces merge); degenerate points [a,a] are allowed.  Non-canonical direct
    construction raises; use :meth:`from_pieces` to canonicalize.
    """

    pieces: tuple[Piece, ...]

    def __post_init__(self):
        pieces = tuple((as_fraction(a), as_fraction(b)) for a, b in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        prev_b = None
        for a, b in pieces:
            if not (0 <= a <= b <= 1):
                raise ValueError(f"piece [{a}, {b}] not within [0,1] or inverted")
            if prev_b is not None and a <= prev_b:
                raise ValueError("pieces must be sorted, disjoint and non-touching")
            prev_b = b

    @classmethod
    def from_pieces(cls, pieces: Iterable[Sequence]) -> "IntervalSet":
        """Sort and merge arbitrary closed pieces into canonical form."""
        items = sorted((as_fraction(p[0]), as_fraction(p[1])) for p in pieces)
        merged: list[list[Fraction]] = []
        for a, b in items:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return cls(tuple((a, b) for a, b in merged))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.pieces), ZERO)

    def contains_point(self, x: Fraction) -> bool:
        return any(a <= x <= b for a, b in self.pieces)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        p, q = self.pieces, other.pieces
        while i < len(p) and j < len(q):
            lo = max(p[i][0], q[j][0])
            hi = min(p[i][1], q[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if p[i][1] < q[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet.from_pieces(out)

    def to_json_list(self) -> list:
        return [[format_rational(a), format_rational(b)] for a, b in self.pieces]

    @classmethod
    def from_json_list(cls, data: Sequence) -> "IntervalSet":
        return cls.from_pieces([(as_fraction(p[0]), as_fraction(p[1])) for p in data])


def measure(c: IntervalSet) -> Fraction:
    """Total length of a canonical interval set (exact)."""
    return c.measure()


@dataclass(frozen=True)
class IntervalSystem:
    """One interval set per ground-set label."""

    sets: tuple[IntervalSet, ...]

    def __post_init__(self):
        if len(self.sets) < 1:
            raise ValueError("system needs at least one interval set")

    @property
    def n(self) -> int:
        return len(self.sets)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "sets": [s.to_json_list() for s in self.sets]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "IntervalSystem":
        if "sets" not in d:
            raise ValueError("system field 'sets' missing")
        sets = tuple(IntervalSet.from_json_list(s) for s in d["sets"])
        if "n" in d and int(d["n"]) != len(sets):
            raise ValueError("system field 'n' disagrees with number of sets")
        return cls(sets)


def direct_intersection(sys: IntervalSystem, labels: Iterable[int]) -> IntervalSet:
    """Intersection of the chosen labels' interval sets ([0,1] for none)."""
    acc = IntervalSet(((ZERO, ONE),))
    for s in labels:
        acc = acc.intersect(sys.sets[s])
        if acc.is_empty:
            break
    return acc


def _sample_points(sys: IntervalSystem) -> list[Fraction]:
    endpoints: set[Fraction] = set()
    for iset in sys.sets:
        for a, b in iset.pieces:
            endpoints.add(a)
            endpoints.add(b)
    pts = sorted(endpoints)
    samples = list(pts)
    for lo, hi in zip(pts, pts[1:]):
        samples.append((lo + hi) / 2)
    return samples


def trace_family(sys: IntervalSystem) -> HereditaryFamily:
    """Family of label sets whose interval sets share a point.

    Endpoint sweep: every stabilizer {s : x in C_s} for x an endpoint or a
    gap midpoint is collected; the family is the downward closure of these
    stabilizers.  Hereditary by construction, and adequate in the finite
    sense: a set belongs iff all its subsets do.
    """
    stabilizers = []
    for x in _sample_points(sys):
        stab = tuple(s for s in range(sys.n) if sys.sets[s].contains_point(x))
        if stab:
            stabilizers.append(stab)
    return hereditary_closure(stabilizers, sys.n)


@dataclass(frozen=True)
class MeasureBoundReport:
    bound: Fraction
    delta: Fraction
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "bound": format_rational(self.bound),
            "delta": format_rational(self.delta),
            "ok": self.ok,
        }


def measure_lower_bound(sys: IntervalSystem) -> MeasureBoundReport:
    """Averaging bound: the traced family's game value is at least the
    minimum measure among the interval sets."""
    from .game import delta_exact

    bound = min(s.measure() for s in sys.sets)
    delta = delta_exact(trace_family(sys)).delta
    return MeasureBoundReport(bound=bound, delta=delta, ok=delta >= bound)


def helly_check(sys: IntervalSystem) -> bool:
    """Exhaustive one-dimensional Helly check for single-interval systems:
    a label set is a member iff its pairs intersect pairwise.  Must hold for
    every single-interval system; multi-piece (or empty) sets are rejected as
    not applicable."""
    for iset in sys.sets:
        if len(iset.pieces) != 1:
            raise NotApplicableError(
                "helly check applies only to systems of single closed intervals"
            )
    n = sys.n
    if n > 16:
        raise ValueError("exhaustive check limited to n <= 16")
    pieces = [iset.pieces[0] for iset in sys.sets]

    def pair_ok(i: int, j: int) -> bool:
        return max(pieces[i][0], pieces[j][0]) <= min(pieces[i][1], pieces[j][1])

    fam = trace_family(sys)
    for mask in range(1 << n):
        labels = [s for s in range(n) if (mask >> s) & 1]
        member = any(all((m >> s) & 1 for s in labels) for m in fam.masks) or not labels
        pairwise = all(pair_ok(i, j) for a, i in enumerate(labels) for j in labels[a + 1:])
        if member != pairwise:
            return False
    return True


def random_system(seed: int, n: int, pieces_per_set: int,
                  min_measure) -> IntervalSystem:
    """Seed-deterministic interval system; every set has measure at least
    ``min_measure``.

    Endpoints live on the grid k/D with D = lcm(64, denominator), so
    denominators stay bounded.  Pieces are laid out left to right from random
    integer length and gap compositions; touching pieces merge without losing
    measure.
    """
    min_measure = as_fraction(min_measure)
    if n < 1:
        raise ValueError("infeasible parameters: n must be >= 1")
    if pieces_per_set < 1:
        raise ValueError("infeasible parameters: pieces_per_set must be >= 1")
    if not (0 <= min_measure <= 1):
        raise ValueError("infeasible parameters: min_measure must lie in [0,1]")
    rng = random.Random(seed)
    D = lcm(64, min_measure.denominator)
    L = int(min_measure * D)  # exact: denominator divides D
    sets = []
    for _ in range(n):
        total = L + rng.randint(0, D - L)
        len_cuts = sorted(rng.randint(0, total) for _ in range(pieces_per_set - 1))
        lengths = [b - a for a, b in zip([0] + len_cuts, len_cuts + [total])]
        slack = D - total
        gap_cuts = sorted(rng.randint(0, slack) for _ in range(pieces_per_set))
        gaps = [b - a for a, b in zip([0] + gap_cuts, gap_cuts + [slack])]
        pos = gaps[0]
        pieces = []
        for length, gap in zip(lengths, gaps[1:]):
            pieces.append((Fraction(pos, D), Fraction(pos + length, D)))
            pos += length + gap
        sets.append(IntervalSet.from_pieces(pieces))
    return IntervalSystem(tuple(sets))
