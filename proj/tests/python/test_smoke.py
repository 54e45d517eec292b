"""End-to-end smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import vetocore as vc


def test_profile_round_trip():
    profile = vc.parse_profile("2: 0,1,2\n1: 2,1,0\n")
    assert profile.num_voters == 3
    assert profile.num_alternatives == 3
    assert profile.rankings[2] == [2, 1, 0]
    text = vc.serialize_profile(profile)
    again = vc.parse_profile(text)
    assert again.rankings == profile.rankings


def test_profile_validation_errors():
    with pytest.raises(vc.VetocoreError):
        vc.parse_profile("1: 0,0,1\n")
    with pytest.raises(vc.VetocoreError):
        vc.Profile([[0, 1], [1]])


def test_distributions_are_exact_fractions():
    assert vc.uniform_distribution(4) == [Fraction(1, 4)] * 4
    weights = vc.btl_distribution([[1, 0], ["1/2", "1/2"]])
    assert weights == [Fraction(3, 4), Fraction(1, 4)]


def test_critical_epsilon_and_witness():
    profile = vc.Profile([[0, 1]])
    top = vc.critical_epsilon(profile, 0)
    assert top["value"] == 0
    assert top["witness"] is None

    bottom = vc.critical_epsilon(profile, 1)
    assert bottom["value"] == Fraction(1, 2)
    assert bottom["witness"]["coalition"] == [0]
    assert bottom["witness"]["blocking_set"] == [0]
    assert bottom["witness"]["slack"] == Fraction(1, 2)

    brute = vc.max_blocking_slack(profile, 1)
    assert brute["value"] == bottom["value"]


def test_core_enumeration_and_classic_core():
    profile = vc.Profile([[0, 1]])
    assert vc.epsilon_pvc(profile, 0) == [0]
    assert vc.epsilon_pvc(profile, "1/2") == [0, 1]
    assert vc.classic_pvc(profile) == [0]
    assert vc.veto_function(2, 4, 6) == 2


def test_weighted_distribution_argument():
    profile = vc.Profile([[0, 1], [1, 0]])
    tilted = ["13/20", "7/20"]
    assert vc.critical_epsilon(profile, 1, dist=tilted)["value"] == Fraction(
        3, 20
    )
    assert vc.epsilon_pvc(profile, "1/10", dist=tilted) == [0]


def test_voting_rules():
    profile = vc.Profile([[0, 1, 2], [0, 2, 1], [1, 2, 0]])
    assert vc.vote(profile, "borda")["winner"] == 0
    assert vc.vote(profile, "plurality")["winner"] == 0
    assert vc.vote(profile, "irv")["winner"] == 0
    assert vc.vote(profile, "schulze")["winner"] == 0
    assert vc.vote(profile, "vbc")["winner"] in (0, 1, 2)
    with pytest.raises(vc.VetocoreError):
        vc.vote(profile, "no-such-rule")


def test_gamma_veto():
    profile = vc.Profile([[0, 1, 2, 3], [3, 2, 1, 0]])
    result = vc.gamma_veto(profile, "1/2", [0, 1])
    assert result["survivors"] == [1, 2]
    assert result["remaining_mass"] == Fraction(1, 2)


def test_query_simulation():
    assert vc.compute_tau("1/2", "1/2") == 233
    profile = vc.two_bloc(10, "1/2", [0, 1, 2, 3], [3, 2, 1, 0])
    run = vc.simulate_run(profile, "1/2", "1/2", mode="min", seed=7)
    assert run["generative"] == 233
    assert run["min_queries"] == 232
    assert 0 <= run["survivor"] < 4

    paired = vc.simulate_run(profile, "1/2", "1/2", mode="pairwise", seed=7)
    assert paired["survivor"] == run["survivor"]
    assert paired["pairwise"] == 233 * 232 // 2


def test_generators_and_subsample():
    profile = vc.impartial_culture(12, 6, seed=3)
    sub, info = vc.subsample(profile, 5, 4, seed=8)
    assert sub.num_voters == 5
    assert sub.num_alternatives == 4
    assert sorted(info["alt_indices"]) == info["alt_indices"]

    mallows = vc.mallows(6, 4, 0.0, seed=1, reference=[3, 1, 0, 2])
    assert all(r == [3, 1, 0, 2] for r in mallows.rankings)

    assert vc.middle_out_ranking(5) == [2, 3, 1, 4, 0]
    center = vc.two_bloc_center(10, 5, "2/5", "3/10", 0.0, seed=4)
    assert center.rankings[0] == [0, 1, 2, 3, 4]
    assert center.rankings[4] == [4, 3, 2, 1, 0]
    assert center.rankings[9] == [2, 3, 1, 4, 0]


def test_insertion_evaluation():
    profile = vc.Profile([[0, 1], [1, 0]])
    last = vc.evaluate_insertion(profile, [2, 2])
    assert last["value"] == 1
    first = vc.evaluate_insertion(profile, [0, 0])
    assert first["value"] == 0
