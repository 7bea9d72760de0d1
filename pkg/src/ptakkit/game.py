"""Exact value of the zero-sum covering game over a hereditary family.

The value is the minimum, over probability weightings of the ground set, of
the largest total weight carried by a single family member; equivalently (LP
duality) the best guaranteed coverage of a probability weighting of the
maximal sets.  Everything here is exact rational; the only floats live in
the independent fictitious-play oracle.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from . import accel
from .families import HereditaryFamily
from .lp import ONE, ZERO, solve_max_slack
from .rationals import as_fraction, format_rational


@dataclass(frozen=True)
class ConvexMean:
    """Finitely supported probability weighting of ground-set labels.

    Zero weights are dropped; with ``validate=True`` (the default) weights
    must be nonnegative and sum to exactly 1.
    """

    weights: Mapping[int, Fraction]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        cleaned = {int(s): as_fraction(w) for s, w in self.weights.items()}
        cleaned = {s: w for s, w in cleaned.items() if w != 0}
        object.__setattr__(self, "weights", cleaned)
        if validate:
            if any(w < 0 for w in cleaned.values()):
                raise ValueError("mean weights must be nonnegative")
            if sum(cleaned.values(), ZERO) != 1:
                raise ValueError("mean weights must sum to exactly 1")
            if any(s < 0 for s in cleaned):
                raise ValueError("negative label in mean support")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.weights)

    @classmethod
    def uniform(cls, labels) -> "ConvexMean":
        labels = list(labels)
        w = Fraction(1, len(labels))
        return cls({s: w for s in labels})

    @classmethod
    def point_mass(cls, label: int) -> "ConvexMean":
        return cls({label: ONE})

    def to_json_dict(self) -> dict:
        return {str(s): format_rational(w) for s, w in sorted(self.weights.items())}

    @classmethod
    def from_json_dict(cls, d: Mapping[str, str], validate: bool = True) -> "ConvexMean":
        return cls({int(s): as_fraction(w) for s, w in d.items()}, validate=validate)


@dataclass(frozen=True)
class FractionalCover:
    """Probability weighting of the maximal sets, keyed by antichain index.

    An empty cover is only meaningful for the family whose sole member is
    the empty set (there is nothing to weight); validation allows it.
    """

    weights: Mapping[int, Fraction]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        cleaned = {int(i): as_fraction(w) for i, w in self.weights.items()}
        cleaned = {i: w for i, w in cleaned.items() if w != 0}
        object.__setattr__(self, "weights", cleaned)
        if validate and cleaned:
            if any(w < 0 for w in cleaned.values()):
                raise ValueError("cover weights must be nonnegative")
            if sum(cleaned.values(), ZERO) != 1:
                raise ValueError("cover weights must sum to exactly 1")

    def to_json_dict(self) -> dict:
        return {str(i): format_rational(w) for i, w in sorted(self.weights.items())}

    @classmethod
    def from_json_dict(cls, d: Mapping[str, str], validate: bool = True) -> "FractionalCover":
        return cls({int(i): as_fraction(w) for i, w in d.items()}, validate=validate)


@dataclass(frozen=True)
class GameValueResult:
    delta: Fraction
    primal: ConvexMean
    dual: FractionalCover
    pivots: int = 0

    def to_json_dict(self) -> dict:
        return {
            "delta": format_rational(self.delta),
            "primal": self.primal.to_json_dict(),
            "dual": self.dual.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: Mapping, validate: bool = True) -> "GameValueResult":
        for key in ("delta", "primal", "dual"):
            if key not in d:
                raise ValueError(f"certificate field {key!r} missing")
        return cls(
            delta=as_fraction(d["delta"]),
            primal=ConvexMean.from_json_dict(d["primal"], validate=validate),
            dual=FractionalCover.from_json_dict(d["dual"], validate=validate),
        )


def _weights_of(mean: Union[ConvexMean, Mapping[int, Fraction]]) -> Mapping[int, Fraction]:
    return mean.weights if isinstance(mean, ConvexMean) else mean


def evaluate_mean(fam: HereditaryFamily, mean: ConvexMean) -> Fraction:
    """Largest member weight: max over maximal sets F of the mass inside F."""
    weights = _weights_of(mean)
    for s in weights:
        if not (0 <= s < fam.n):
            raise ValueError(f"mean supported outside ground set: label {s}")
    best = ZERO
    for fset in fam.maximal:
        total = sum((weights.get(s, ZERO) for s in fset), ZERO)
        if total > best:
            best = total
    return best


def best_response(fam: HereditaryFamily,
                  mean: Union[ConvexMean, Mapping[int, Fraction]]) -> tuple[int, ...]:
    """A maximal set of largest weight; ties go to the lexicographically
    smallest set.  Accepts unnormalized nonnegative weights, so the choice is
    invariant under positive rescaling.  Empty antichain: the empty set.
    """
    weights = _weights_of(mean)
    for s, w in weights.items():
        if not (0 <= s < fam.n):
            raise ValueError(f"weight on label {s} outside ground set")
        if w < 0:
            raise ValueError("weights must be nonnegative")
    best_set: tuple[int, ...] = ()
    best_val: Optional[Fraction] = None
    for fset in fam.maximal:  # stored in lexicographic order
        total = sum((weights.get(s, ZERO) for s in fset), ZERO)
        if best_val is None or total > best_val:
            best_val = total
            best_set = fset
    return best_set


def _min_coverage(fam: HereditaryFamily, cover: FractionalCover) -> Fraction:
    coverage = [ZERO] * fam.n
    for idx, w in cover.weights.items():
        for s in fam.maximal[idx]:
            coverage[s] += w
    return min(coverage)


def delta_exact(fam: HereditaryFamily) -> GameValueResult:
    """Exact minimax constant with optimal primal mean and dual cover.

    Solved as a matrix game by exact simplex (Bland's rule) on the shifted
    all-positive payoff, with delayed row generation: only maximal sets ever
    enter (smaller members are dominated), and rows are pulled in against the
    current optimal mean until none is violated.  The dual weights are scaled
    to sum to 1, so min-coverage equals the value exactly.
    """
    n = fam.n
    m = len(fam.maximal)
    if m == 0:
        return GameValueResult(
            delta=ZERO,
            primal=ConvexMean.point_mass(0),
            dual=FractionalCover({}),
            pivots=0,
        )

    sets = fam.maximal
    # start from the row the uniform mean loses most to: largest, ties lex
    start = max(range(m), key=lambda i: (len(sets[i]), [-v for v in sets[i]]))
    active = [start]
    active_flags = [False] * m
    active_flags[start] = True
    ones_n = [ONE] * n
    pivots = 0

    while True:
        A = []
        for idx in active:
            row = [ONE] * n
            for s in sets[idx]:
                row[s] = Fraction(2)
            A.append(row)
        res = solve_max_slack(ones_n, A, [ONE] * len(active))
        pivots += res.pivots
        zstar = res.objective  # equals 1/(delta+1), in [1/2, 1]
        delta = ONE / zstar - 1
        lam = {s: res.x[s] / zstar for s in range(n) if res.x[s] != 0}

        worst = delta
        worst_idx = -1
        for idx in range(m):
            if active_flags[idx]:
                continue
            val = sum((lam.get(s, ZERO) for s in sets[idx]), ZERO)
            if val > worst:
                worst = val
                worst_idx = idx
        if worst_idx < 0:
            mu = {active[r]: res.duals[r] / zstar for r in range(len(active))}
            primal = ConvexMean(lam)
            dual = FractionalCover(mu)
            return GameValueResult(delta=delta, primal=primal, dual=dual, pivots=pivots)
        active.append(worst_idx)
        active_flags[worst_idx] = True


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(fam: HereditaryFamily, res: GameValueResult) -> VerificationResult:
    """Exact check of a value certificate; never raises on bad certificates.

    The primal must be a genuine mean achieving the claimed value, the dual a
    genuine cover whose minimum coverage equals it.  Reason codes name the
    first failed check.
    """
    delta = res.delta
    pw = res.primal.weights
    if any(not (0 <= s < fam.n) for s in pw):
        return VerificationResult(False, "primal-support")
    if any(w < 0 for w in pw.values()):
        return VerificationResult(False, "primal-negative")
    if sum(pw.values(), ZERO) != 1:
        return VerificationResult(False, "primal-sum")
    if evaluate_mean(fam, res.primal) != delta:
        return VerificationResult(False, "primal-value")

    dw = res.dual.weights
    if any(not (0 <= i < len(fam.maximal)) for i in dw):
        return VerificationResult(False, "dual-index")
    if any(w < 0 for w in dw.values()):
        return VerificationResult(False, "dual-negative")
    total = sum(dw.values(), ZERO)
    if dw:
        if total != 1:
            return VerificationResult(False, "dual-sum")
    elif fam.maximal:
        return VerificationResult(False, "dual-sum")
    if _min_coverage(fam, res.dual) != delta:
        return VerificationResult(False, "dual-coverage")
    return VerificationResult(True, None)


@dataclass(frozen=True)
class FictitiousPlayResult:
    """Bracketing interval for the game value from best-response averaging."""

    lower: Fraction
    upper: Fraction
    iterations: int
    converged: bool

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.upper


def incidence_matrix(fam: HereditaryFamily) -> np.ndarray:
    """0/1 matrix, one row per maximal set, one column per label."""
    M = np.zeros((len(fam.maximal), fam.n), dtype=np.int64)
    for i, fset in enumerate(fam.maximal):
        for s in fset:
            M[i, s] = 1
    return M


def fictitious_play(fam: HereditaryFamily, max_iters: int,
                    epsilon: Fraction) -> FictitiousPlayResult:
    """Independent approximation oracle for the exact value.

    Both players repeatedly best-respond to the opponent's empirical average
    (alternating updates, first-index tie-breaking); the tightest certified
    bounds seen are kept.  Bounds are exact rationals, so the returned
    bracket genuinely contains the value; ``converged`` reports whether the
    width reached ``epsilon`` within the budget.
    """
    epsilon = as_fraction(epsilon)
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if max_iters > 10**9:
        raise ValueError("max_iters above 1e9 would overflow the int64 kernel")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not fam.maximal:
        return FictitiousPlayResult(lower=ZERO, upper=ZERO, iterations=0, converged=True)
    M = incidence_matrix(fam)
    lo_n, lo_d, up_n, up_d, iters = accel.fp_bracket(M, max_iters, float(epsilon))
    lower = Fraction(int(lo_n), int(lo_d))
    upper = Fraction(int(up_n), int(up_d))
    converged = (upper - lower) <= epsilon
    return FictitiousPlayResult(lower=lower, upper=upper, iterations=int(iters),
                                converged=converged)
