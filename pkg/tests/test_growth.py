import pytest

from choix import growth
from choix.core import is_neighbor
from choix.growth import (
    check_greedy_recurrence,
    exact_max_reach,
    frontier_pattern_check,
    greedy_max_sequence,
    tau_verdict,
    threshold_frontiers,
    unpruned_maxima,
    verify_growth_bounds,
    verify_tau_bounds,
)

from oracles import brute_images

TABLE_3 = [1, 2, 4, 8, 16, 112, 224, 448, 4416, 44112, 88224, 816448, 8164416,
           81644112, 811288224, 8112816448, 81128164416, 811281644112,
           8112811288224, 81128112816448]


@pytest.fixture(scope="module")
def table():
    return exact_max_reach(40)


def test_greedy_table():
    assert greedy_max_sequence(19).r == TABLE_3
    assert greedy_max_sequence(0).r == [1]


def test_greedy_matches_brute_max():
    r = [1]
    for _ in range(44):
        r.append(max(brute_images(r[-1])))
    assert greedy_max_sequence(44).r == r


def test_recurrence_examples(table):
    assert str(table.r[14]) == "8112" + str(table.r[10])
    assert str(table.r[17]) == "8112" + str(table.r[13])
    verdicts = check_greedy_recurrence(greedy_max_sequence(44), 44)
    assert [v.n for v in verdicts] == list(range(10, 41))
    assert all(v.ok for v in verdicts)


def test_recurrence_needs_coverage():
    with pytest.raises(ValueError):
        check_greedy_recurrence(greedy_max_sequence(12), 20)


def test_exact_values(table):
    assert table.R[0] == 1
    assert table.R[7] == 512
    assert table.R[16] == 81128164416 == table.r[16]
    assert [n for n in range(41) if table.R[n] != table.r[n]] == [7]


def test_pruned_equals_unpruned(table):
    assert table.R[:11] == unpruned_maxima(10)


def test_unpruned_generation_7():
    walk = [1, 2, 4, 8, 16, 112, 56, 512]
    assert unpruned_maxima(7)[7] == 512
    assert all(is_neighbor(a, b) for a, b in zip(walk, walk[1:]))


def test_workers_do_not_change_result(table):
    other = exact_max_reach(40, workers=3)
    assert other.R == table.R
    assert other.frontiers == table.frontiers


def test_parent_chains(table):
    assert growth.chain_violations(table) == []
    chain = table.parent_chain(16, table.R[16])
    assert chain[0] == 1 and chain[-1] == table.R[16] and len(chain) == 17


def test_pattern(table):
    v = {p.generation: p for i in (1, 2) for p in frontier_pattern_check(table, i)}
    assert v[16].found == {81128164416}
    assert v[15].found == {8112816442, 8112816444, 8112816448}
    assert len(v[14].found) == 9 and all(str(x).endswith(t) for x, t in zip(
        sorted(v[14].found), ["81646", "81652", "81662", "81664", "84112", "88112", "88212", "88222", "88224"]))
    assert all(p.ok for p in v.values())


def test_pattern_third_repeat(table):
    assert all(p.ok for p in frontier_pattern_check(table, 3))


def test_pattern_needs_coverage():
    with pytest.raises(ValueError):
        frontier_pattern_check(exact_max_reach(17), 1)


def test_threshold_frontiers_generate_r(table):
    levels = threshold_frontiers(table)
    for g in range(1, len(levels)):
        best = max(y for x in levels[g - 1] for y in growth.images(x))
        assert best == table.r[g] or g == 7


def test_sound_frontier_is_superset(table):
    # the sound rule keeps numbers the per-generation cutoff would drop
    levels = threshold_frontiers(table)
    assert 811281712 in table.frontiers[14]
    assert 811281712 not in levels[14]
    bar = table.r[15]
    assert {x for x in table.frontiers[14] if 10 * x >= bar} >= levels[14]


def test_growth_bounds(table):
    vs = verify_growth_bounds(table, range(14, 41))
    assert all(v.ok for v in vs)
    v14 = vs[0]
    assert 811200000 < v14.value <= 811300000
    assert verify_growth_bounds(table, range(19, 20))[0].value == 81128112816448
    with pytest.raises(ValueError):
        verify_growth_bounds(table, range(13, 15))


def test_tau_verdict_examples():
    v = tau_verdict(9879, 16)
    assert v.reach_ok is True  # 9879000 <= 8113 * 10**10
    v = tau_verdict(3, 11)
    assert v.digit_ok and not v.literal_upper_ok and v.literal_lower_ok
    v = tau_verdict(2, 1)
    assert v.reach_ok is None and not v.literal_lower_ok and v.ok


def test_tau_bounds_table(table_1_cap7):
    vs = verify_tau_bounds(table_1_cap7)
    assert all(v.ok for v in vs)
    assert len(vs) == 8000
