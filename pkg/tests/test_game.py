import json
import random
from fractions import Fraction

import pytest

from ptakkit.families import (
    cardinality_bound_family,
    cycle_edges,
    hereditary_closure,
    is_full_powerset,
    maximal_cliques,
    random_family,
    trace,
)
from ptakkit.game import (
    ConvexMean,
    FractionalCover,
    GameValueResult,
    best_response,
    delta_exact,
    evaluate_mean,
    fictitious_play,
    verify_certificate,
)
from ptakkit.norms import min_ratio_nonneg

F = Fraction
EPS = F(1, 10**6)


def c5():
    return maximal_cliques(5, cycle_edges(5))


# --- ConvexMean / FractionalCover validation -----------------------------------

def test_mean_validation():
    with pytest.raises(ValueError):
        ConvexMean({0: F(1, 2)})  # does not sum to 1
    with pytest.raises(ValueError):
        ConvexMean({0: F(3, 2), 1: F(-1, 2)})
    m = ConvexMean({0: F(1, 2), 1: F(1, 2), 2: F(0)})
    assert m.support == frozenset({0, 1})


def test_cover_validation():
    with pytest.raises(ValueError):
        FractionalCover({0: F(1, 2)})
    assert FractionalCover({}).weights == {}


# --- evaluate_mean ----------------------------------------------------------------

def test_evaluate_mean_uniform_pairs():
    fam = cardinality_bound_family(3, 2)
    assert evaluate_mean(fam, ConvexMean.uniform(range(3))) == F(2, 3)


def test_evaluate_mean_support_misses_family():
    fam = hereditary_closure([{0}], 2)
    assert evaluate_mean(fam, ConvexMean.point_mass(1)) == 0


def test_evaluate_mean_c5_uniform():
    fam = c5()
    lam = ConvexMean.uniform(range(5))
    # every edge weighs exactly 2/5; check by summing each maximal set directly
    edge_values = {sum(lam.weights[s] for s in e) for e in fam.maximal}
    assert edge_values == {F(2, 5)}
    assert evaluate_mean(fam, lam) == F(2, 5)


def test_evaluate_mean_empty_family_is_zero():
    assert evaluate_mean(hereditary_closure([], 3), ConvexMean.point_mass(0)) == 0


def test_evaluate_mean_outside_ground():
    with pytest.raises(ValueError):
        evaluate_mean(cardinality_bound_family(2, 1), ConvexMean.point_mass(5))


# --- delta_exact -------------------------------------------------------------------

def test_delta_cardinality_families_small():
    for n in range(1, 9):
        for k in range(0, n + 1):
            fam = cardinality_bound_family(n, k)
            res = delta_exact(fam)
            assert res.delta == F(k, n)
            assert verify_certificate(fam, res)
            # independent symmetric dual: uniform over all k-subsets covers
            # every label with weight exactly k/n
            if k >= 1:
                count = len(fam.maximal)
                mu = FractionalCover({i: F(1, count) for i in range(count)})
                coverage = [F(0)] * n
                for i, fs in enumerate(fam.maximal):
                    for s in fs:
                        coverage[s] += mu.weights[i]
                assert set(coverage) == {F(k, n)}
                sym = GameValueResult(delta=F(k, n), primal=res.primal, dual=mu)
                assert verify_certificate(fam, sym)


def test_delta_full_powerset_is_one():
    res = delta_exact(cardinality_bound_family(4, 4))
    assert res.delta == 1


def test_delta_c5():
    fam = c5()
    res = delta_exact(fam)
    assert res.delta == F(2, 5)
    fp = fictitious_play(fam, 10**6, EPS)
    assert fp.converged and fp.contains(F(2, 5))


def test_delta_disjoint_singletons():
    fam = hereditary_closure([{0}, {1}, {2}], 3)
    res = delta_exact(fam)
    assert res.delta == F(1, 3)
    assert res.dual.weights == {0: F(1, 3), 1: F(1, 3), 2: F(1, 3)}


def test_delta_zero_iff_uncovered_label():
    covered = hereditary_closure([{0, 1}, {2}], 3)
    assert delta_exact(covered).delta > 0
    uncovered = hereditary_closure([{0, 1}], 3)
    assert delta_exact(uncovered).delta == 0
    assert delta_exact(hereditary_closure([], 2)).delta == 0


def test_delta_bounds_and_extremes_on_seeded_families():
    for seed in range(40):
        fam = random_family(seed, n=None, max_sets=25)
        res = delta_exact(fam)
        assert 0 <= res.delta <= 1
        assert (res.delta == 1) == is_full_powerset(fam)
        covered = 0
        for m in fam.masks:
            covered |= m
        uncovered_exists = covered != (1 << fam.n) - 1
        assert (res.delta == 0) == uncovered_exists


def test_delta_monotone_under_family_growth():
    rng = random.Random(3)
    for seed in range(20):
        fam = random_family(seed, n=6, max_sets=8)
        d1 = delta_exact(fam).delta
        extra = {rng.randrange(6) for _ in range(rng.randint(1, 4))}
        bigger = hereditary_closure(list(fam.maximal) + [extra], 6)
        d2 = delta_exact(bigger).delta
        assert d2 >= d1


def test_delta_trace_consistency():
    # the value of the traced family is reproducible through the separate
    # LP code path and the play oracle
    rng = random.Random(5)
    for seed in range(10):
        fam = random_family(seed, n=7, max_sets=10)
        h = sorted(rng.sample(range(7), rng.randint(1, 6)))
        traced = trace(fam, h).family
        res = delta_exact(traced)
        assert min_ratio_nonneg(traced) == res.delta
        fp = fictitious_play(traced, 10**6, EPS)
        assert fp.contains(res.delta)


def test_delta_deterministic():
    fam = random_family(42, n=9, max_sets=20)
    a, b = delta_exact(fam), delta_exact(fam)
    assert a == b


# --- verify_certificate ---------------------------------------------------------

def test_verify_accepts_own_output(corpus, corpus_values):
    for fam, res in list(zip(corpus, corpus_values))[:50]:
        assert verify_certificate(fam, res)


def test_verify_rejects_tampered_delta():
    fam = cardinality_bound_family(4, 2)
    res = delta_exact(fam)
    bad = GameValueResult(delta=res.delta + F(1, 1000), primal=res.primal, dual=res.dual)
    check = verify_certificate(fam, bad)
    assert not check and check.reason == "primal-value"


def test_verify_uniform_primal_on_c5():
    fam = c5()
    res = delta_exact(fam)
    swapped = GameValueResult(delta=F(2, 5), primal=ConvexMean.uniform(range(5)),
                              dual=res.dual)
    assert verify_certificate(fam, swapped)


def test_verify_reason_codes():
    fam = hereditary_closure([{0}, {1}], 2)
    res = delta_exact(fam)
    bad_primal = ConvexMean({0: F(2), 1: F(-1)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, bad_primal, res.dual)).reason == "primal-negative"
    bad_sum = ConvexMean({0: F(1, 3)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, bad_sum, res.dual)).reason == "primal-sum"
    bad_support = ConvexMean({7: F(1)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, bad_support, res.dual)).reason == "primal-support"
    bad_dual = FractionalCover({0: F(1, 3)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, res.primal, bad_dual)).reason == "dual-sum"
    bad_idx = FractionalCover({9: F(1)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, res.primal, bad_idx)).reason == "dual-index"
    skew = FractionalCover({0: F(1)}, validate=False)
    assert verify_certificate(
        fam, GameValueResult(res.delta, res.primal, skew)).reason == "dual-coverage"


def test_verify_empty_family_certificate():
    fam = hereditary_closure([], 3)
    res = delta_exact(fam)
    assert res.delta == 0 and res.dual.weights == {}
    assert verify_certificate(fam, res)
    # an empty dual is rejected whenever maximal sets exist
    other = cardinality_bound_family(2, 1)
    rr = delta_exact(other)
    assert verify_certificate(
        other, GameValueResult(rr.delta, rr.primal, FractionalCover({}))).reason == "dual-sum"


# --- best_response ----------------------------------------------------------------

def test_best_response_point_mass_tie_lexicographic():
    assert best_response(c5(), ConvexMean.point_mass(0)) == (0, 1)


def test_best_response_full_powerset():
    fam = cardinality_bound_family(3, 3)
    assert best_response(fam, ConvexMean.uniform(range(3))) == (0, 1, 2)


def test_best_response_weighted():
    fam = hereditary_closure([{0}, {1}], 2)
    assert best_response(fam, ConvexMean({0: F(3, 4), 1: F(1, 4)})) == (0,)


def test_best_response_scale_free():
    fam = c5()
    rng = random.Random(1)
    for _ in range(20):
        w = {s: F(rng.randint(0, 9), rng.randint(1, 5)) for s in range(5)}
        picked = best_response(fam, w)
        for scale in (F(2), F(1, 7), F(13, 3)):
            assert best_response(fam, {s: v * scale for s, v in w.items()}) == picked


def test_best_response_empty_family():
    assert best_response(hereditary_closure([], 2), ConvexMean.point_mass(0)) == ()


# --- strong duality on the corpus ------------------------------------------------

def test_strong_duality_exact(corpus, corpus_values):
    for fam, res in zip(corpus, corpus_values):
        assert evaluate_mean(fam, res.primal) == res.delta
        coverage = [F(0)] * fam.n
        for i, w in res.dual.weights.items():
            for s in fam.maximal[i]:
                coverage[s] += w
        assert min(coverage) == res.delta


# --- fictitious_play --------------------------------------------------------------

def test_fp_cardinality_bracket():
    fam = cardinality_bound_family(5, 2)
    r = fictitious_play(fam, 10**6, EPS)
    assert r.converged and r.contains(F(2, 5))
    assert r.upper - r.lower <= EPS


def test_fp_full_powerset_single_iteration():
    r = fictitious_play(cardinality_bound_family(4, 4), 10**6, EPS)
    assert r.iterations == 1
    assert r.lower == r.upper == 1


def test_fp_disjoint_singletons():
    fam = hereditary_closure([{i} for i in range(4)], 4)
    r = fictitious_play(fam, 10**6, EPS)
    assert r.converged and r.contains(F(1, 4))


def test_fp_flags_non_convergence():
    r = fictitious_play(c5(), 3, EPS)
    assert not r.converged
    assert r.lower <= F(2, 5) <= r.upper  # bracket still valid


def test_fp_empty_family():
    r = fictitious_play(hereditary_closure([], 3), 10, EPS)
    assert r.converged and r.lower == r.upper == 0


def test_fp_midpoint_close_to_exact():
    fam = random_family(123, n=8, max_sets=15)
    d = delta_exact(fam).delta
    r = fictitious_play(fam, 10**6, EPS)
    assert r.converged
    assert abs(d - r.midpoint) <= EPS


def test_fp_argument_validation():
    fam = c5()
    with pytest.raises(ValueError):
        fictitious_play(fam, 0, EPS)
    with pytest.raises(ValueError):
        fictitious_play(fam, 10, F(0))
    with pytest.raises(ValueError):
        fictitious_play(fam, 10**10, EPS)


# --- serialization -----------------------------------------------------------------

def test_certificate_json_round_trip():
    fam = c5()
    res = delta_exact(fam)
    data = json.loads(json.dumps(res.to_json_dict()))
    back = GameValueResult.from_json_dict(data)
    assert back.delta == res.delta
    assert back.primal == res.primal
    assert back.dual == res.dual
    assert verify_certificate(fam, back)
    with pytest.raises(ValueError):
        GameValueResult.from_json_dict({"delta": "1/2"})
