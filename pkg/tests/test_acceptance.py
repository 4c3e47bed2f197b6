"""Acceptance suite: one test per criterion, exact identities only.

Every check is exact rational equality (no tolerances anywhere); each test
prints a single PASS line with its runtime against the stated budget.
"""

import itertools
import random
import time
from fractions import Fraction as F

from borderlab import (
    BoundedFunction,
    ChowVector,
    Multigraph,
    PartitionInstance,
    PublicProject,
    WeightVector,
    affine_abs_mean,
    affine_positive_mean,
    affine_value,
    balanced_signings,
    border_check,
    chow_membership,
    chow_opt,
    chow_uniqueness_check,
    chow_vector,
    conditionals_to_chow,
    expected_max_with_zero,
    is_vertex,
    khintchine,
    majority,
    majority_extremality,
    matroid_gadget_check,
    membership_lp,
    myerson_single_item,
    opt_rev_lp,
    partition_count_via_khintchine,
    sign_plus,
    stconn_gadget,
    stconn_probability,
    stconn_recover,
    uniform_two_point,
    virtual_values,
)

from helpers import random_interim_rule, random_single_item_env


class Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.started
        if exc_type is None:
            print(f"PASS {self.name} ({elapsed:.2f}s < {self.seconds}s)")
            assert elapsed < self.seconds, f"{self.name} exceeded its runtime budget"
        else:
            print(f"FAIL {self.name} ({elapsed:.2f}s)")
        return False


def test_criterion_1_conditional_probability_puzzle():
    with Budget("criterion 1: conditional-probability puzzle via exact LP", 1):
        possible = conditionals_to_chow([F(1, 2), F(7, 10), F(7, 10)])
        impossible = conditionals_to_chow([F(1, 2), F(8, 10), F(8, 10)])
        assert chow_membership(possible).feasible
        assert not chow_membership(impossible).feasible


def test_criterion_2_border_equals_membership_lp():
    with Budget("criterion 2: inequality scan == ex-post LP on 200 random rules", 60):
        rng = random.Random(1001)
        feasible = infeasible = 0
        for _ in range(200):
            env = random_single_item_env(rng, max_players=3, max_support=3)
            y = random_interim_rule(rng, env)
            a = border_check(env, y)
            b = membership_lp(env, y)
            assert a.feasible == b.feasible
            if a.feasible:
                feasible += 1
            else:
                infeasible += 1
        assert feasible > 0 and infeasible > 0


def test_criterion_3_public_project_revenue_is_half_khintchine():
    with Budget("criterion 3: public-project optimum == K(a)/2, plus the symmetry identity", 60):
        for n in (1, 2, 3):
            for stakes in itertools.product(range(1, 5), repeat=n):
                env = uniform_two_point(list(stakes), PublicProject())
                value, _rf, _witness = opt_rev_lp(env)
                assert value == khintchine(stakes) / 2
        rng = random.Random(1003)
        for n in list(range(1, 13)) + [12, 12]:
            weights = [F(rng.randint(1, 9), rng.choice([1, 2, 3])) for _ in range(n)]
            assert expected_max_with_zero(weights) == khintchine(weights) / 2


def test_criterion_4_virtual_value_path_equals_lp():
    with Budget("criterion 4: virtual-valuation fast path == revenue LP on 100 regular", 60):
        rng = random.Random(1004)
        done = 0
        while done < 100:
            env = random_single_item_env(rng, max_players=3, max_support=3)
            if not virtual_values(env).regular:
                continue
            done += 1
            fast, _rule = myerson_single_item(env)
            exact, _rf, _w = opt_rev_lp(env)
            assert fast == exact


def test_criterion_5_partition_counts():
    with Budget("criterion 5: Khintchine-difference counting on 50 random instances", 30):
        assert partition_count_via_khintchine(PartitionInstance((1, 1))) == (F(1, 2), 2)
        rng = random.Random(1005)
        for _ in range(50):
            n = rng.randint(1, 12)
            w = PartitionInstance(tuple(rng.randint(1, 30) for _ in range(n)))
            probability, count = partition_count_via_khintchine(w)
            assert count == balanced_signings(w)
            assert probability == F(count, 2**n)


def test_criterion_6_matching_gadget_recovery_and_sandwich():
    with Budget("criterion 6: matching-gadget recovery on 20 random digraphs", 30):
        rng = random.Random(1006)
        done = 0
        while done < 20:
            v = rng.randint(2, 5)
            edges = tuple(
                (rng.randrange(v), rng.randrange(v)) for _ in range(rng.randint(1, 6))
            )
            g = Multigraph(v, edges, directed=True)
            gadget = stconn_gadget(g, 0, 1)
            if gadget.red_count == 0:
                continue
            done += 1
            p, check = stconn_recover(g, 0, 1)
            truth = stconn_probability(g, 0, 1)
            assert check and p == truth
            m, n, k = gadget.red_count, gadget.internal_count, gadget.multiplicity
            expected = gadget.expected_max_matching()
            assert n + truth - F(m * n, 2**k) <= expected <= n + truth


def test_criterion_7_component_gadget_identity():
    with Budget("criterion 7: component-count identity on 20 random graphs", 10):
        rng = random.Random(1007)
        for _ in range(20):
            v = rng.randint(2, 6)
            edges = tuple(
                (rng.randrange(v), rng.randrange(v)) for _ in range(rng.randint(0, 6))
            )
            report = matroid_gadget_check(Multigraph(v, edges), 0, 1)
            assert report.identity_holds
            assert report.c1 - report.c2 == (1 - report.p) / 2


def test_criterion_8_affine_optimum_closed_form():
    with Budget("criterion 8: affine optimum and absolute mean on 100 random forms", 30):
        rng = random.Random(1008)
        for _ in range(100):
            n = rng.randint(1, 10)
            a = WeightVector(
                tuple(F(rng.randint(-9, 9), rng.choice([1, 2, 4])) for _ in range(n)),
                a0=F(rng.randint(-9, 9), rng.choice([1, 2])),
            )
            a0 = a.a0
            folded = a.with_a0_folded_in()
            assert affine_positive_mean(a) == (khintchine(folded) + a0) / 2
            assert chow_opt(a).value == (khintchine(folded) + a0) / 2
            assert affine_abs_mean(a) == khintchine(folded)


def _grid_halfspaces(n):
    tables = {}
    grid = [F(v) for v in range(-2, 3)]
    bias = [F(v, 2) for v in (-5, -3, -1, 1, 3, 5)]
    for weights in itertools.product(grid, repeat=n):
        for a0 in bias:
            wv = WeightVector(weights, a0=a0)
            table = tuple(F(sign_plus(affine_value(wv, x))) for x in range(2**n))
            tables.setdefault(table, wv)
    return tables


def test_criterion_9_vertices_and_majority_extremality():
    with Budget("criterion 9: halfspace vertices, non-vertex midpoint, n=3 sweep", 60):
        for n in (1, 2, 3):
            halfspaces = _grid_halfspaces(n)
            for table in halfspaces:
                verdict = is_vertex(chow_vector(BoundedFunction(n, table)))
                assert verdict.is_vertex and verdict.unique_witness
            flat = ChowVector((F(1, 2),) + (F(0),) * n)
            assert not is_vertex(flat).is_vertex
        report = majority_extremality(3)
        assert report.sweep_performed
        assert report.sweep_max == F(3, 4) == report.sensitivity_sum
        assert report.ok


def test_criterion_10_halfspace_uniqueness():
    with Budget("criterion 10: halfspace uniqueness for majorities and dictators", 30):
        assert chow_uniqueness_check(majority(3), WeightVector((1, 1, 1), a0=F(1, 2))).unique
        assert chow_uniqueness_check(
            majority(5), WeightVector((1, 1, 1, 1, 1), a0=F(1, 2))
        ).unique
        for n in (1, 2, 3):
            dictator = BoundedFunction.from_predicate(n, lambda x: x & 1)
            weights = WeightVector((F(1),) + (F(0),) * (n - 1), a0=F(1, 2))
            assert chow_uniqueness_check(dictator, weights).unique
