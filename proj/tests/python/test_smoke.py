"""Smoke tests for the Python bindings: one pass over each exposed operation
with independently known values, not a re-run of the C++ suites."""

import json
import math

import pytest

import capgames as cg

LN15 = 0.4054651081081644
LN06 = -0.5108256237659907
COIN_GROWTH = -0.05268025782891315


def coin_flip(dynamics="multiplicative"):
    return cg.CapitalGame(
        action_counts=[2],
        payoffs=[[150.0, 60.0]],
        endowments=[100.0],
        dynamics=[cg.DynamicsSpec.by_name(dynamics)],
    )


def test_transform_matches_known_utilities():
    g_add = cg.to_standard_game(coin_flip("additive"))
    assert g_add.payoff(0, 0) == 50.0
    assert g_add.payoff(0, 1) == -40.0

    g_mult = cg.to_standard_game(coin_flip("multiplicative"))
    assert g_mult.payoff(0, 0) == pytest.approx(LN15, abs=1e-12)
    assert g_mult.payoff(0, 1) == pytest.approx(LN06, abs=1e-12)


def test_round_trip_through_from_standard_game():
    g = cg.StandardGame(action_counts=[2, 2],
                        payoffs=[[1, -1, -1, 1], [-1, 1, 1, -1]])
    G = cg.from_standard_game(
        g, endowments=[100.0, 7.0],
        dynamics=[cg.DynamicsSpec.multiplicative(),
                  cg.DynamicsSpec.additive()])
    back = cg.to_standard_game(G)
    for k in range(4):
        assert back.payoff(0, k) == pytest.approx(g.payoff(0, k), abs=1e-12)
        assert back.payoff(1, k) == pytest.approx(g.payoff(1, k), abs=1e-12)


def test_expected_utility_and_regret():
    pd = cg.StandardGame(action_counts=[2, 2],
                         payoffs=[[3, 0, 5, 1], [3, 5, 0, 1]])
    cc = cg.MixedStrategyProfile([[1.0, 0.0], [1.0, 0.0]])
    dd = cg.MixedStrategyProfile([[0.0, 1.0], [0.0, 1.0]])
    assert cg.expected_utility(pd, cc, 0) == 3.0
    assert cg.regret(pd, cc, 0) == 2.0
    assert not cg.is_nash(pd, cc)
    assert cg.is_nash(pd, dd)


def test_solve_matching_pennies():
    mp = cg.StandardGame(action_counts=[2, 2],
                         payoffs=[[1, -1, -1, 1], [-1, 1, 1, -1]])
    results = cg.solve(mp)
    assert len(results) == 1
    for row in results[0]["profile"]:
        assert row == pytest.approx([0.5, 0.5], abs=1e-9)
    assert not results[0]["pure"]
    assert cg.pure_nash(mp) == []


def test_growth_equilibria_and_verification():
    G = cg.CapitalGame(
        action_counts=[2, 2],
        payoffs=[[30, 5, 50, 10], [30, 50, 5, 10]],
        endowments=[10.0, 10.0],
        dynamics=[cg.DynamicsSpec.multiplicative(),
                  cg.DynamicsSpec.additive()],
    )
    report = cg.growth_equilibria(G)
    assert not report["pure_only"]
    assert len(report["equilibria"]) == 1
    eq = report["equilibria"][0]
    assert eq["pure"]
    assert eq["profile"] == [[0.0, 1.0], [0.0, 1.0]]

    dd = cg.MixedStrategyProfile([[0.0, 1.0], [0.0, 1.0]])
    cc = cg.MixedStrategyProfile([[1.0, 0.0], [1.0, 0.0]])
    assert cg.verify_growth_equilibrium(G, dd, 1e-9)["is_equilibrium"]
    bad = cg.verify_growth_equilibrium(G, cc, 1e-9)
    assert not bad["is_equilibrium"]
    assert bad["per_player_regret"][0] == pytest.approx(math.log(5.0 / 3.0))
    assert bad["per_player_regret"][1] == pytest.approx(20.0)


def test_dynamics_and_growth_helpers():
    d = cg.DynamicsSpec.by_name("sqrt")
    assert d.name == "sqrt"
    assert d.linearize(4.0) == 2.0
    assert d.delinearize(3.0) == 9.0
    assert d.in_domain(1.0) and not d.in_domain(-1.0)

    mult = cg.DynamicsSpec.multiplicative()
    assert cg.growth_rate(mult, 150.0, 100.0, 1.0) == pytest.approx(
        LN15, abs=1e-12)

    G = coin_flip()
    half = cg.MixedStrategyProfile([[0.5, 0.5]])
    assert cg.time_average_growth(G, half, 0) == pytest.approx(
        COIN_GROWTH, abs=1e-12)
    assert cg.is_positive(G)


def test_simulate_deterministic_and_ergodic():
    G = coin_flip()
    half = cg.MixedStrategyProfile([[0.5, 0.5]])
    a = cg.simulate(G, half, rounds=2000, trials=200, seed=7)
    b = cg.simulate(G, half, rounds=2000, trials=200, seed=7)
    assert a == b
    assert a["absorbed_trials"] == 0
    assert a["theoretical_growth"][0] == pytest.approx(COIN_GROWTH, abs=1e-12)
    est = a["time_avg_growth_estimate"][0]
    se = a["time_avg_growth_stderr"][0]
    assert abs(est - COIN_GROWTH) <= 3.0 * se
    assert a["checkpoint_rounds"][0] == 0
    assert a["checkpoint_rounds"][-1] == 2000
    assert a["ensemble_avg_capital"][0][0] == 100.0


def test_json_codec():
    G = coin_flip()
    text = cg.game_to_json(G)
    doc = json.loads(text)
    assert doc["kind"] == "capital"
    assert doc["payoffs"] == [[150.0, 60.0]]
    back = cg.parse_game_text(text)
    assert isinstance(back, cg.CapitalGame)
    assert back.endowments == [100.0]

    with pytest.raises(ValueError):
        cg.parse_game_text("{ not json")


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        cg.MixedStrategyProfile([[0.7, 0.7]])
    with pytest.raises(ValueError):
        cg.CapitalGame(action_counts=[2], payoffs=[[150.0, -60.0]],
                       endowments=[100.0],
                       dynamics=[cg.DynamicsSpec.multiplicative()])
