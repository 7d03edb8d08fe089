import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from dethodge.errors import DomainViolation, InvalidInput
from dethodge.weights import (Box, MatrixShape, WeightMultiset, dominant_weights, enumerate_weights,
                              in_dpd, in_wp, is_dominant, lambda_p_map, rep_dim, schur_dim, w_index)


def ssyt_count(lam, N):
    """Count semistandard tableaux by filling the Young diagram cell by cell."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    t = {}

    def fill(k):
        if k == len(cells):
            return 1
        i, j = cells[k]
        lo = max(t.get((i, j - 1), 1), t.get((i - 1, j), 0) + 1)
        total = 0
        for v in range(lo, N + 1):
            t[(i, j)] = v
            total += fill(k + 1)
        return total

    return fill(0)


def brute_dominant(n, lo, hi):
    return sorted((v for v in itertools.product(range(lo, hi + 1), repeat=n)
                   if all(v[i] >= v[i + 1] for i in range(n - 1))), reverse=True)


shapes = st.integers(1, 6).flatmap(lambda n: st.tuples(st.integers(n, 6), st.just(n)))


def weights_for(n, lo=-8, hi=3):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(lambda v: tuple(sorted(v, reverse=True)))


# -- shapes, boxes -----------------------------------------------------------

def test_shape_constants():
    s = MatrixShape(5, 3)
    assert [s.dim(p) for p in range(4)] == [0, 7, 12, 15]
    assert [s.codim(p) for p in range(4)] == [15, 8, 3, 0]
    assert all(s.dim(p) + s.codim(p) == 15 for p in range(4))


@pytest.mark.parametrize("m,n", [(3, 4), (0, 0), (2, 0)])
def test_shape_rejects(m, n):
    with pytest.raises(InvalidInput):
        MatrixShape(m, n)


def test_box_rejects_inverted():
    with pytest.raises(InvalidInput):
        Box(2, 1)


# -- is_dominant ---------------------------------------------------------------

def test_is_dominant():
    assert is_dominant((3, 1, 0))
    assert is_dominant((0, 0, 0))
    assert not is_dominant((1, 2, 0))
    with pytest.raises(InvalidInput):
        is_dominant(())


# -- W^p -------------------------------------------------------------------------

def test_wp_boundary_examples():
    s = MatrixShape(4, 3)
    assert not in_wp((-3, -3, -3), 0, s)
    # lambda_3 >= 0 is needed for W^3, so this weight is in no W^p at all
    assert not in_wp((-3, -3, -3), 3, s)
    assert w_index((-3, -3, -3), s) is None
    assert in_wp((-4, -4, -4), 0, s)


def test_wp_rejects_bad_p():
    with pytest.raises(InvalidInput):
        in_wp((0, 0, 0), 4, MatrixShape(4, 3))


def test_wp_disjoint_box_example():
    s = MatrixShape(4, 3)
    w = dominant_weights(3, Box(-6, 2))
    hits = sum(in_wp(w, p, s).astype(int) for p in range(4))
    assert hits.max() == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_wp_partition_square(n):
    s = MatrixShape(n, n)
    w = dominant_weights(n, Box(-n - 3, 3))
    hits = sum(in_wp(w, p, s).astype(int) for p in range(n + 1))
    assert (hits == 1).all()


@pytest.mark.parametrize("m,n", [(m, n) for n in range(1, 6) for m in range(n + 1, 7)])
def test_wp_gap_characterisation(m, n):
    """For m > n a weight lies in no W^p iff lambda_{p+1} > p - m at the cut p < n."""
    s = MatrixShape(m, n)
    w = dominant_weights(n, Box(-m - 3, 3))
    hits = sum(in_wp(w, p, s).astype(int) for p in range(n + 1))
    assert hits.max() == 1
    # the cut p = #{i : lambda_i >= i - n}, so lambda_{p+1} < p + 1 - n automatically
    for lam, h in zip(w.tolist(), hits.tolist()):
        p = sum(1 for i, x in enumerate(lam, 1) if x >= i - n)
        in_gap = p < n and p - m < lam[p]
        assert (h == 0) == in_gap


@settings(max_examples=200, deadline=None)
@given(shapes.flatmap(lambda sh: st.tuples(st.just(sh), weights_for(sh[1]))))
def test_w_index_agrees_with_in_wp(data):
    (m, n), lam = data
    s = MatrixShape(m, n)
    found = [p for p in range(n + 1) if in_wp(lam, p, s)]
    assert len(found) <= 1
    assert w_index(lam, s) == (found[0] if found else None)


def test_vectorised_matches_scalar():
    s = MatrixShape(5, 3)
    w = dominant_weights(3, Box(-7, 2))
    idx = w_index(w, s)
    assert [int(i) if i >= 0 else None for i in idx] == [w_index(tuple(r), s) for r in w.tolist()]


# -- lambda(p) -------------------------------------------------------------------

def test_lambda_p_examples():
    assert lambda_p_map((2, 1, 0, 0), 4, MatrixShape(4, 4)) == (2, 1, 0, 0)
    assert lambda_p_map((0, 0, 0), 3, MatrixShape(5, 3)) == (0, 0, 0, 0, 0)
    assert lambda_p_map((-5, -5, -5), 0, MatrixShape(5, 3)) == (-3, -3, -3, -3, -3)


def test_lambda_p_outside_wp():
    with pytest.raises(DomainViolation):
        lambda_p_map((0, 0, 0), 0, MatrixShape(5, 3))


@pytest.mark.parametrize("m,n", [(4, 4), (5, 3), (6, 2), (5, 4)])
def test_lambda_p_is_dominant(m, n):
    s = MatrixShape(m, n)
    w = dominant_weights(n, Box(-m - 3, 3))
    for lam in w.tolist():
        p = w_index(lam, s)
        if p is not None:
            big = lambda_p_map(lam, p, s)
            assert len(big) == m and is_dominant(big)


# -- D^p_d -----------------------------------------------------------------------

def test_dpd_examples():
    s = MatrixShape(4, 3)
    # (0,-1,-2) fails lambda_3 >= 0, so it is not in W^3 and hence not in D^3_0
    assert not in_dpd((0, -1, -2), 3, 0, s)
    assert in_dpd((2, 1, 0), 3, 0, s)
    assert in_dpd((-4, -4, -4), 0, 0, s)
    assert not in_dpd((-4, -4, -5), 0, 0, s)


@pytest.mark.parametrize("m,n", [(3, 3), (4, 3), (5, 2), (4, 4)])
def test_dpd_empty_below_zero(m, n):
    s = MatrixShape(m, n)
    w = dominant_weights(n, Box(-m * n - 4, 4))
    for p in range(n + 1):
        assert not in_dpd(w, p, -1, s).any()
        # witness ((p-n)^p, (p-m)^{n-p}) is in D^p_0
        assert in_dpd((p - n,) * p + (p - m,) * (n - p), p, 0, s)


@pytest.mark.parametrize("m,n", [(3, 3), (5, 3), (4, 2)])
def test_dpd_monotone(m, n):
    s = MatrixShape(m, n)
    w = dominant_weights(n, Box(-m * n - 2, 2))
    for p in range(n + 1):
        for d in range(-1, 8):
            assert not (in_dpd(w, p, d, s) & ~in_dpd(w, p, d + 1, s)).any()


# -- enumeration -----------------------------------------------------------------

@pytest.mark.parametrize("n,lo,hi", [(1, -3, 2), (2, -2, 2), (3, -3, 1), (4, 0, 2)])
def test_dominant_weights_match_brute_force(n, lo, hi):
    assert [tuple(r) for r in dominant_weights(n, Box(lo, hi)).tolist()] == brute_dominant(n, lo, hi)


def test_enumerate_examples():
    assert len(enumerate_weights(MatrixShape(4, 4), Box(0, 2), lambda w: False)) == 0
    s44 = MatrixShape(4, 4)
    assert len(enumerate_weights(s44, Box(0, 2), lambda w: in_wp(w, 4, s44))) == 15
    s43 = MatrixShape(4, 3)
    assert len(enumerate_weights(s43, Box(-6, -4), lambda w: in_wp(w, 0, s43))) == 10


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_enumerate_parallel_is_identical(workers):
    s = MatrixShape(5, 3)
    pred = lambda w: in_dpd(w, 1, 3, s)
    a = enumerate_weights(s, Box(-12, 3), pred)
    b = enumerate_weights(s, Box(-12, 3), pred, workers=workers)
    assert a == b and a.dumps() == b.dumps()


# -- WeightMultiset --------------------------------------------------------------

def test_multiset_union_adds():
    box = Box(-2, 2)
    a = WeightMultiset(box, {(1, 0): 1, (0, 0): 2})
    b = WeightMultiset(box, {(1, 0): 3})
    u = a | b
    assert u.multiplicity((1, 0)) == 4 and u.multiplicity((0, 0)) == 2 and len(u) == 6


def test_multiset_validation():
    with pytest.raises(InvalidInput):
        WeightMultiset(Box(-2, 2), {(0, 1): 1})
    with pytest.raises(InvalidInput):
        WeightMultiset(Box(-2, 2), {(3, 0): 1})
    with pytest.raises(InvalidInput):
        WeightMultiset(Box(-2, 2), {(0, 0): 1}) | WeightMultiset(Box(-1, 2), {})


def test_multiset_json_round_trip_and_order():
    box = Box(-3, 3)
    ms = WeightMultiset(box, {(0, -1): 1, (2, 2): 3, (0, 0): 1})
    assert [e["lambda"] for e in ms.to_json()] == [[2, 2], [0, 0], [0, -1]]
    data = json.loads(ms.dumps())
    assert WeightMultiset.from_json(data["weights"], data["box"]) == ms


# -- dimensions ------------------------------------------------------------------

@pytest.mark.parametrize("N", range(1, 5))
def test_schur_dim_vs_tableaux(N):
    for lam in dominant_weights(N, Box(0, 4)).tolist():
        assert schur_dim(lam, N) == ssyt_count(lam, N)


def test_schur_dim_examples():
    for N in range(1, 7):
        assert schur_dim((1,) + (0,) * (N - 1), N) == N
        for c in (-3, 0, 5):
            assert schur_dim((c,) * N, N) == 1
    assert schur_dim((2, 1, 0), 3) == 8


def test_schur_dim_errors():
    with pytest.raises(InvalidInput):
        schur_dim((0, 1), 2)
    with pytest.raises(InvalidInput):
        schur_dim((1, 0), 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda N: st.tuples(st.just(N), weights_for(N, -4, 4))), st.integers(-3, 3))
def test_schur_dim_translation_invariant(data, c):
    N, lam = data
    assert schur_dim(tuple(x + c for x in lam), N) == schur_dim(lam, N) >= 1


def test_rep_dim_examples():
    assert rep_dim((0, 0, 0), 3, MatrixShape(3, 3)) == 1
    assert rep_dim((1, 0, 0), 3, MatrixShape(3, 3)) == 9
    assert rep_dim((1, 1, 1), 3, MatrixShape(4, 3)) == 4
    with pytest.raises(DomainViolation):
        rep_dim((0, 0, 0), 0, MatrixShape(3, 3))


def test_rep_dim_cauchy_degree_count():
    """Sum over the degree-d part of Cauchy's formula equals dim of degree-d polynomials."""
    from math import comb
    s = MatrixShape(3, 2)
    for d in range(5):
        total = sum(rep_dim(lam, 2, s) for lam in dominant_weights(2, Box(0, d)).tolist() if sum(lam) == d)
        assert total == comb(6 + d - 1, d)
