from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digiray.constructions import axis_order_cdr, greedy_weak_cdr
from digiray.grid import OutOfDomain, layer, path_to, random_proper_cdr, random_weak_cdr
from digiray.metrics import (
    POLYLINE,
    VERTICES,
    frontier,
    frontier_from_csv,
    frontier_to_csv,
    hausdorff_ray,
    hausdorff_tree,
    kappa2,
    log2_rational,
    witness_bound,
)
from oracles import hausdorff_polyline_sampled, hausdorff_vertices_oracle

GREEDY_ERROR = {
    4: Fraction(3, 4),
    8: Fraction(9, 8),
    16: Fraction(19, 13),
    32: Fraction(9, 5),
    64: Fraction(2),
}


def axis_order_error(n):
    return Fraction(n, 4) if n % 2 == 0 else Fraction(n * n - 1, 4 * n)


def test_axis_order_examples():
    t = axis_order_cdr(4)
    assert hausdorff_ray(t, (2, 2)) == 1
    res = hausdorff_tree(t)
    assert res.value == 1
    assert res.witness_ray == (2, 2)
    assert res.witness_location == "vertex (2, 0)"
    assert witness_bound(t, (2, 2), 2) == 1


@pytest.mark.parametrize("n", list(range(1, 25)) + [32, 48, 64])
def test_axis_order_closed_form(n):
    assert hausdorff_tree(axis_order_cdr(n)).value == axis_order_error(n)


@pytest.mark.parametrize("n", sorted(GREEDY_ERROR))
def test_greedy_errors(n):
    t = greedy_weak_cdr(n)
    assert hausdorff_tree(t, kind=POLYLINE).value == GREEDY_ERROR[n]
    assert hausdorff_tree(t, kind=VERTICES).value == GREEDY_ERROR[n]


def test_single_layer_trees_have_no_error():
    for seed in range(3):
        assert hausdorff_tree(random_weak_cdr(1, seed=seed)).value == 0
    assert hausdorff_tree(random_weak_cdr(0)).value == 0
    # the vertex set of a unit step still misses the middle of the segment
    assert hausdorff_tree(axis_order_cdr(1), kind=VERTICES).value == Fraction(1, 2)


@given(st.integers(1, 12), st.integers(0, 10**6))
def test_axis_rays_are_exact(n, seed):
    t = random_weak_cdr(n, seed=seed)
    for k in range(n + 1):
        assert hausdorff_ray(t, (k, 0)) == 0
        assert hausdorff_ray(t, (0, k)) == 0


@given(st.integers(1, 10), st.integers(0, 10**6), st.sampled_from([0.0, 0.4, 0.9]))
def test_vertices_kind_matches_envelope_oracle(n, seed, rate):
    t = random_weak_cdr(n, seed=seed, leaf_rate=rate)
    for p in t.vertices[1:]:
        assert hausdorff_ray(t, p, VERTICES) == hausdorff_vertices_oracle(path_to(t, p), p)


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_polyline_dense_sampling(n, seed):
    t = random_weak_cdr(n, seed=seed)
    step = Fraction(1, 8 * n)
    for p in t.vertices[1:]:
        exact = hausdorff_ray(t, p, POLYLINE)
        sampled = hausdorff_polyline_sampled(path_to(t, p), p, step)
        assert sampled <= exact
        assert exact - sampled <= Fraction(1, 4 * n)


def test_polyline_never_exceeds_vertices():
    t = greedy_weak_cdr(16)
    for p in t.vertices[1:]:
        poly = hausdorff_ray(t, p, POLYLINE)
        vert = hausdorff_ray(t, p, VERTICES)
        assert poly <= vert <= max(poly, Fraction(1, 2)) + Fraction(1, 2)


@given(st.integers(2, 14), st.integers(0, 10**6))
def test_witness_bound_below_error(n, seed):
    t = random_weak_cdr(n, seed=seed)
    for p in t.vertices[1:]:
        h = hausdorff_ray(t, p)
        for k in range(layer(p) + 1):
            assert witness_bound(t, p, k) <= h


def test_witness_bound_domain():
    t = axis_order_cdr(4)
    with pytest.raises(OutOfDomain):
        witness_bound(t, (2, 2), 5)
    assert all(witness_bound(t, (4, 0), k) == 0 for k in range(5))


@given(st.integers(1, 14), st.integers(0, 10**6))
def test_witness_reproduces_value(n, seed):
    t = random_weak_cdr(n, seed=seed)
    for kind in (POLYLINE, VERTICES):
        res = hausdorff_tree(t, kind=kind)
        assert hausdorff_ray(t, res.witness_ray, kind) == res.value
        assert res.value >= hausdorff_tree(t, "boundary", kind).value


def test_out_of_domain_ray():
    with pytest.raises(OutOfDomain):
        hausdorff_ray(axis_order_cdr(3), (3, 1))


def test_kappa2_of_proper_trees_is_zero():
    for seed in range(5):
        assert kappa2(random_proper_cdr(10, 2, seed)) == 0


def test_log2_rational():
    assert log2_rational(64) == 6
    assert abs(float(log2_rational(24)) - 4.584962500721156) < 1e-9


def test_frontier_round_trip():
    trees = [axis_order_cdr(8), greedy_weak_cdr(8), random_weak_cdr(12, seed=4)]
    recs = frontier(trees)
    assert frontier_from_csv(frontier_to_csv(recs)) == recs
    first = recs[0]
    assert (first.construction, first.error, first.kappa1, first.kappa2, first.bound_value) == ("axis-order", 2, 0, 0, 3)
    assert all(r.kappa2 <= r.kappa1 for r in recs)
    assert frontier([]) == []
    assert frontier_to_csv([]) == "construction,n,error_num,error_den,kappa1,kappa2,bound_num,bound_den\n"
