"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import os
import random
import time
from fractions import Fraction

import numpy as np

from acceptance_log import criterion
from conftest import DATA
from digiray.constructions import axis_order_cdr, greedy_weak_cdr, prune_inner_branches, tradeoff_weak_cdr
from digiray.discrepancy import discrepancy_star, discrepancy_star_bruteforce, prefix_count
from digiray.grid import WEAK, census, load_tree, random_proper_cdr, random_weak_cdr, restrict_to_plane, verify_axioms
from digiray.highdim import b_n_count, crossing_plane_error, packing_witness, plane_kappa2
from digiray.mapping import compute_aux, transform_pi, validate_mapping
from digiray.metrics import hausdorff_tree, kappa2
from digiray.staircase import k_star, point_counts, symmetric_staircases, symmetric_stairs
from oracles import discrepancy_cubic

F = Fraction
LEAF_RATES = (0.0, 0.2, 0.5, 0.8)


def test_criterion_1_greedy_bounds():
    with criterion(1, "GREEDY error <= 5/2 and inner leaves < N^2/12") as notes:
        start = time.perf_counter()
        for n in (4, 8, 16, 32, 64, 128, 256):
            t = greedy_weak_cdr(n)
            err = hausdorff_tree(t).value
            inner = len(census(t).inner_leaves)
            assert err <= F(5, 2), (n, err)
            assert 12 * inner < n * n, (n, inner)
            notes.append("N=%d error %s, %d inner" % (n, err, inner))
        assert time.perf_counter() - start <= 300


def test_criterion_2_mapping_suite():
    with criterion(2, "mapping checks on constructions and 200 random weak trees") as notes:
        trees = [greedy_weak_cdr(n) for n in (2, 4, 8, 16, 32, 64)]
        trees += [axis_order_cdr(n) for n in range(1, 65)]
        trees.append(tradeoff_weak_cdr(24, 3))
        trees += [random_weak_cdr(1 + s % 64, seed=s, leaf_rate=LEAF_RATES[s % 4]) for s in range(200)]
        for t in trees:
            rep = validate_mapping(t)
            assert rep.passed, (t.meta, rep.counterexamples)
        notes.append("%d trees" % len(trees))


def test_criterion_3_twelve_grid_regime():
    with criterion(3, "12x12 regime: pi((6,2)) = (10/12, 8/12), 11 blue, 3 red"):
        t = load_tree(os.path.join(DATA, "regime12_tree.json"))
        v = (6, 2)
        aux = compute_aux(t)
        x, y = aux.pi(v)
        assert (x, y) == (F(10, 12), F(8, 12))
        ps = transform_pi(t, aux)
        b, r = prefix_count(ps.blue, x, y), prefix_count(ps.red, x, y)
        assert (b, r) == (11, 3)
        assert b - r - 2 == 6 and v[0] == 6 and b - r == 8
        assert validate_mapping(t, aux).passed


def test_criterion_4_discrepancy_exactness():
    with criterion(4, "D* engine equals cubic oracle on 100 rational sets"):
        rng = random.Random(2024)
        for _ in range(100):
            total = rng.randint(1, 40)
            n_red = rng.randint(0, (total - 1) // 2)
            den = rng.choice((2, 3, 5, 7, 8, 12, 16, 30))
            pts = [(F(rng.randint(0, den), den), F(rng.randint(0, den), den)) for _ in range(total)]
            blue, red = pts[n_red:], pts[:n_red]
            exact = discrepancy_star(blue, red).value
            assert exact == discrepancy_cubic(blue, red)
            m = len(blue) - len(red)
            for res in (40, 160, 640):
                brute = discrepancy_star_bruteforce(blue, red, res)
                assert brute <= float(exact) + 1e-12
                assert float(exact) - brute <= m / res + 1e-12


def test_criterion_5_staircases():
    with criterion(5, "staircase sets have D* <= 1") as notes:
        start = time.perf_counter()
        worst = 0.0
        for m in list(range(1, 65)) + [128, 256, 512]:
            ps = symmetric_staircases(m)
            assert len(ps.blue) - len(ps.red) == m
            d = discrepancy_star(ps.blue, ps.red).value
            worst = max(worst, d)
            assert d <= 1 + 1e-9, (m, d)
            for stair in symmetric_stairs(m):
                k = k_star(m, stair.index)
                assert (len(stair.blue), len(stair.red)) == (2 * k + 1, 2 * k)
        for m in (64, 128, 256):
            ratio = point_counts(2 * m)[0] / point_counts(m)[0]
            assert 3.5 <= ratio <= 4.5, (m, ratio)
        assert time.perf_counter() - start <= 60
        notes.append("max D*=%.12f" % worst)


def test_criterion_6_restriction_and_packing():
    with criterion(6, "plane restrictions and packing witnesses in 3D") as notes:
        with_witness = 0
        for n in (16, 32):
            for seed in range(50):
                t = random_proper_cdr(n, 3, seed)
                assert verify_axioms(restrict_to_plane(t), WEAK).passed
                k2 = plane_kappa2(t)
                w = packing_witness(t)
                if k2 == 0:
                    continue
                with_witness += 1
                assert w is not None and w.satisfied
                assert b_n_count(k2, n, 3) < k2
                assert crossing_plane_error(t, w) >= w.threshold / 3 - 1
        notes.append("%d/100 with kappa2 > 0" % with_witness)


def test_criterion_7_pruned_greedy():
    with criterion(7, "pruned GREEDY is 1-dense and extendable"):
        for n in (8, 16, 32):
            pruned = prune_inner_branches(greedy_weak_cdr(n))
            assert pruned.max_snap_distance() <= 1
            assert pruned.non_extendable() == []


def test_criterion_8_axis_order_consistency():
    with criterion(8, "axis-order error N/4 and D* slope 1/4") as notes:
        ns = list(range(16, 129))
        for n in range(16, 129, 2):
            assert hausdorff_tree(axis_order_cdr(n)).value == F(n, 4)
        ds = []
        for n in ns:
            ps = transform_pi(axis_order_cdr(n))
            ds.append(float(discrepancy_star(ps.blue, ps.red).value))
        slope = np.polyfit(ns, ds, 1)[0]
        assert abs(slope - 0.25) <= 0.05, slope
        notes.append("slope=%.5f" % slope)


def test_criterion_9_frontier_sanity():
    with criterion(9, "no tree at N >= 16 has error < 1 and kappa2 = 0") as notes:
        trees = [greedy_weak_cdr(n) for n in (16, 32, 64)]
        trees += [axis_order_cdr(n) for n in (16, 24, 32, 48, 64)]
        trees += [tradeoff_weak_cdr(n, c) for n in (16, 32, 64) for c in (1, 2, 4, 8)]
        for n in (16, 24, 32):
            for seed in range(10):
                trees.append(random_proper_cdr(n, 2, seed))
                trees.append(restrict_to_plane(random_proper_cdr(n, 3, seed)))
                for rate in (0.0, 0.5):
                    trees.append(random_weak_cdr(n, seed, rate))
        smallest = None
        for t in trees:
            k2 = kappa2(t)
            err = hausdorff_tree(t).value
            if k2 == 0:
                smallest = err if smallest is None else min(smallest, err)
            assert not (err < 1 and k2 == 0), t.meta
        notes.append("%d trees, min error with kappa2=0: %s" % (len(trees), smallest))
