"""Revenue/welfare optimizers: the LP ground truth and the fast path."""

import random
from fractions import Fraction as F

import pytest

from borderlab import (
    Environment,
    GraphicalMatroid,
    Multigraph,
    NotRegular,
    PublicProject,
    SingleItem,
    SingleMinded,
    WrongFamily,
    bic_iir_check,
    khintchine,
    membership_lp,
    myerson_single_item,
    opt_rev_lp,
    opt_wel,
    uniform_two_point,
    virtual_values,
)

from helpers import random_single_item_env


def test_virtual_values_two_point():
    env = uniform_two_point([3], PublicProject())
    table = virtual_values(env)
    assert table.phi == ((F(-3), F(3)),)
    assert table.regular


def test_virtual_values_uniform_thirds():
    env = Environment(1, ((F(0), F(1), F(2)),), ((F(1, 3),) * 3,), SingleItem())
    assert virtual_values(env).phi == ((F(-2), F(0), F(2)),)


def test_virtual_values_single_type():
    env = Environment(1, ((F(5),),), ((F(1),),), SingleItem())
    table = virtual_values(env)
    assert table.phi == ((F(5),),)
    assert table.regular


def test_virtual_values_non_regular_flag():
    env = Environment(1, ((F(0), F(1), F(100)),), ((F(1, 3),) * 3,), SingleItem())
    assert not virtual_values(env).regular


def test_myerson_two_bidders():
    env = uniform_two_point([1, 1], SingleItem())
    value, rule = myerson_single_item(env)
    assert value == F(3, 4)
    assert rule == ((F(0), F(1)), (F(0), F(1, 2)))


def test_myerson_single_bidder():
    env = uniform_two_point([1], SingleItem())
    value, _ = myerson_single_item(env)
    assert value == F(1, 2)


def test_myerson_rejects_wrong_family():
    with pytest.raises(WrongFamily):
        myerson_single_item(uniform_two_point([1], PublicProject()))


def test_myerson_rejects_non_regular():
    env = Environment(1, ((F(0), F(1), F(100)),), ((F(1, 3),) * 3,), SingleItem())
    with pytest.raises(NotRegular):
        myerson_single_item(env)


def test_opt_rev_public_project_pair():
    env = uniform_two_point([1, 1], PublicProject())
    value, rf, _ = opt_rev_lp(env)
    assert value == F(1, 2)
    assert value == khintchine([1, 1]) / 2


def test_opt_rev_single_item_pair():
    value, rf, witness = opt_rev_lp(uniform_two_point([1, 1], SingleItem()))
    assert value == F(3, 4)


def test_opt_rev_single_bidder_posted_price():
    assert opt_rev_lp(uniform_two_point([1], PublicProject()))[0] == F(1, 2)


def test_opt_wel_examples():
    assert opt_wel(uniform_two_point([1], PublicProject())) == F(1, 2)
    path = SingleMinded((frozenset("ab"), frozenset("bc")))
    assert opt_wel(uniform_two_point([1, 1], path)) == F(3, 4)
    edge = GraphicalMatroid(Multigraph(2, ((0, 1),)))
    assert opt_wel(uniform_two_point([1], edge)) == F(1, 2)


def test_myerson_equals_lp_on_random_regular_envs():
    rng = random.Random(20240917)
    done = 0
    while done < 25:
        env = random_single_item_env(rng)
        if not virtual_values(env).regular:
            continue
        done += 1
        fast, _ = myerson_single_item(env)
        exact, rf, _ = opt_rev_lp(env)
        assert fast == exact


def test_lp_optimum_is_incentive_compatible_and_feasible():
    rng = random.Random(31)
    for _ in range(10):
        env = random_single_item_env(rng)
        value, rf, _ = opt_rev_lp(env)
        assert bic_iir_check(env, rf).ok
        assert membership_lp(env, rf.y).feasible


def test_revenue_never_exceeds_welfare():
    rng = random.Random(32)
    for _ in range(10):
        env = random_single_item_env(rng)
        assert opt_rev_lp(env)[0] <= opt_wel(env)


def test_public_project_closed_form_small():
    for stakes in ([1], [2, 1], [1, 1, 2]):
        env = uniform_two_point(stakes, PublicProject())
        assert opt_rev_lp(env)[0] == khintchine(stakes) / 2


def test_interim_rule_matches_win_probability_product_when_distinct():
    # with all virtual values distinct across players, the winner's interim
    # probability factors into independent comparisons
    env = Environment(
        2,
        ((F(0), F(4)), (F(1), F(3))),
        ((F(1, 2), F(1, 2)), (F(1, 4), F(3, 4))),
        SingleItem(),
    )
    table = virtual_values(env)
    values = [v for row in table.phi for v in row]
    assert len(set(values)) == len(values)
    assert table.regular
    _, rule = myerson_single_item(env)
    for i in range(2):
        for k, phi in enumerate(table.phi[i]):
            if phi <= 0:
                assert rule[i][k] == 0
                continue
            expect = F(1)
            for j in range(2):
                if j == i:
                    continue
                expect *= sum(
                    env.priors[j][k2]
                    for k2 in range(len(env.supports[j]))
                    if table.phi[j][k2] < phi
                )
            assert rule[i][k] == expect
