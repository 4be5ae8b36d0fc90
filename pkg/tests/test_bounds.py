from fractions import Fraction

import pytest

from adesign.bounds import (
    adesign_block_window,
    covering_lower_bound,
    feasibility,
    horsley_covering,
    horsley_packing,
    is_minimal_covering,
    johnson,
    lemma_consistency,
    packing_upper_bound,
    schonheim,
)
from adesign.errors import BoundsError
from adesign.incidence import from_blocks


def test_classical_bounds():
    assert schonheim(7, 3, 1) == 7
    assert schonheim(25, 8, 4) == 44
    assert johnson(7, 3, 2) == 14
    assert johnson(6, 3, 1) == 4
    assert johnson(25, 8, 5) == 53


def test_horsley_packing():
    value = horsley_packing(7, 3, 2)
    assert (value.value, value.r, value.d) == (17, 6, 0)
    assert horsley_packing(8, 4, 3).value == 16
    assert horsley_packing(25, 8, 5).value == 57
    assert horsley_packing(9, 4, 1) is None


def test_horsley_covering():
    value = horsley_covering(24, 12, 6)
    assert (value.value, value.r, value.d) == (26, 13, 5)
    assert horsley_covering(7, 3, 1).value == 7
    # below Schönheim here, so the window keeps Schönheim
    assert horsley_covering(25, 8, 4).value == 42
    assert horsley_covering(25, 17, 11) is None


def test_combined_bounds_pick_the_tighter_value():
    assert covering_lower_bound(25, 8, 4) == 44
    assert covering_lower_bound(24, 12, 6) == 26
    assert packing_upper_bound(25, 8, 5) == 53
    assert packing_upper_bound(7, 3, 2) == 14


@pytest.mark.parametrize(
    "params, window",
    [
        ((25, 8, 4), (44, 53)),
        ((15, 3, 1), (35, 70)),
        ((8, 4, 2), (10, 14)),
        ((25, 17, 11), (25, 26)),
        ((25, 17, 22), (49, 50)),
    ],
)
def test_adesign_block_window(params, window):
    report = adesign_block_window(*params)
    assert (report.lower, report.upper) == window
    assert report.contains(window[0]) and not report.contains(window[1] + 1)
    assert not report.is_empty
    assert report.to_dict()["window"] == list(window)


def test_window_for_the_appendix_pair_contains_fifty():
    report = adesign_block_window(25, 8, 4)
    assert report.contains(50)
    assert report.to_dict()["horsley_covering"] == {"value": 42, "r": 14, "d": 2}


def test_bound_ranges():
    with pytest.raises(BoundsError):
        schonheim(5, 1, 1)
    with pytest.raises(BoundsError):
        johnson(5, 5, 1)
    with pytest.raises(BoundsError):
        schonheim(7, 3, 0)
    with pytest.raises(BoundsError):
        horsley_covering(7, 2, 1)
    with pytest.raises(BoundsError):
        adesign_block_window(7, 2, 1)


def test_feasibility_forced():
    report = feasibility(10, 7, 2, 3)
    assert report.applies and report.ratio == Fraction(5, 8)
    assert report.lam_prime == 5
    assert report.design_candidates == (5, 6)
    assert report.block_interval == (Fraction(360, 35), Fraction(480, 35))
    assert report.admits(11) and not report.admits(14) and not report.admits(10)
    assert report.to_dict()["design_lambda_prime"] == [5, 6]


def test_feasibility_not_forced():
    report = feasibility(13, 6, 2, 1)
    assert not report.applies
    assert "not necessary" in report.note
    assert report.lam_prime == 3


def test_feasibility_ranges():
    with pytest.raises(BoundsError):
        feasibility(10, 7, 0, 3)
    with pytest.raises(BoundsError):
        feasibility(10, 7, 2, -1)


def test_lemma_consistency():
    check = lemma_consistency(9, 4, 2, 9, 54)
    assert check.floor_identity and check.strict_blocks and check.holds
    assert lemma_consistency(15, 4, 2, 18, 315).holds
    assert not lemma_consistency(13, 6, 1, 5, 30).strict_blocks


def test_minimal_covering(fano):
    assert is_minimal_covering(fano, 1)
    padded = from_blocks(7, [*fano.blocks, (0, 1, 3)])
    assert not is_minimal_covering(padded, 1)
    with pytest.raises(BoundsError):
        is_minimal_covering(fano, 2)
    with pytest.raises(BoundsError):
        is_minimal_covering(from_blocks(4, [[0, 1], [0, 1, 2]]), 1)


GRID = [(v, k) for v in range(4, 31) for k in range(3, v)]


def test_classical_bounds_are_monotone_in_lambda():
    for v, k in GRID:
        for lam in range(1, 5):
            assert schonheim(v, k, lam) <= schonheim(v, k, lam + 1)
            assert johnson(v, k, lam) <= johnson(v, k, lam + 1)


def decompositions(total: int, k: int, sign: int) -> list[tuple[int, int]]:
    """Every (r, d) with total = r(k-1) + sign*d and 0 <= d < k-1, by search."""
    return [
        (r, d)
        for r in range(total // (k - 1) + 2)
        for d in range(k - 1)
        if r * (k - 1) + sign * d == total
    ]


def test_horsley_decompositions_are_unique():
    for v, k in GRID:
        for lam in range(1, 4):
            total = lam * (v - 1)
            for found, sign in ((horsley_covering(v, k, lam), -1), (horsley_packing(v, k, lam), 1)):
                pairs = decompositions(total, k, sign)
                assert len(pairs) == 1
                r, d = pairs[0]
                if found is None:
                    assert d >= r - lam
                else:
                    assert (found.r, found.d) == (r, d) and d < r - lam
