from __future__ import annotations

import csv
import io
from itertools import combinations

import pytest

from smallhull.bounds import (
    ConjectureTable,
    bound_is_sound,
    check_eigenvector_identities,
    colex_subsets,
    conjecture_row,
    conjecture_scan,
    conjecture_targets,
    conjectured_distance,
    independence_level,
    mu_nu_families,
)
from smallhull.construct import build_code
from smallhull.linalg import MatrixGF
from smallhull.params import PreconditionError, make_params


def sq(r, m, q, v=0):
    return make_params(r, m, 2, q, v=v, ordering="squares_first")


def brute_A_max(params, cap):
    """Check every subset of rows of both families by a rank computation."""
    fams = mu_nu_families(params)
    for size in range(1, cap + 1):
        for fam in fams:
            for rows in combinations(range(params.n_points), size):
                if MatrixGF(fam.field, fam.data[list(rows)]).rank() < size:
                    return size - 1
    return cap


def test_family_shapes():
    params = sq(7, 1, 13)
    mu, nu = mu_nu_families(params)
    assert mu.shape == nu.shape == (7, 3)
    assert mu.field is params.split_field


def test_family_row_at_zero_is_all_ones():
    mu, nu = mu_nu_families(sq(5, 1, 11))
    idx = sq(5, 1, 11).points.index(0)
    assert mu.rows()[idx] == [1, 1] and nu.rows()[idx] == [1, 1]


def test_colex_order():
    assert list(colex_subsets(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert list(colex_subsets(3, 0)) == [()]


def test_r3_q5():
    rep = independence_level(sq(3, 1, 5))
    assert rep.A_max == 1 and rep.certified_bound == 2


def test_cap_zero():
    rep = independence_level(sq(7, 1, 13), cap=0)
    assert rep.A_max == 0 and rep.certified_bound == 1


@pytest.mark.parametrize("q", [11, 13])
def test_r5_all_pairs(q):
    # A_max = 2 exactly when every pair in both families is independent
    params = sq(5, 1, q)
    assert independence_level(params).A_max == brute_A_max(params, 2) == 2


@pytest.mark.parametrize("r,m,q", [(5, 1, 11), (5, 1, 19), (7, 1, 13), (7, 1, 29), (3, 2, 5), (3, 2, 7), (13, 1, 3), (11, 1, 5)])
def test_search_matches_brute_force(r, m, q):
    params = sq(r, m, q)
    cap = min((params.n_points - 1) // 2, 5)
    assert independence_level(params, cap).A_max == brute_A_max(params, cap)


def test_bound_preconditions():
    with pytest.raises(PreconditionError):
        independence_level(make_params(7, 1, 3, 4, v=0))
    with pytest.raises(PreconditionError):
        independence_level(make_params(7, 1, 2, 13, v=0))  # natural ordering
    with pytest.raises(PreconditionError):
        independence_level(sq(7, 1, 13, v=1))
    with pytest.raises(PreconditionError):
        independence_level(sq(7, 1, 13), cap=4)
    with pytest.raises(PreconditionError):
        independence_level(sq(13, 1, 3), cap=6, limit=10)


def test_report_json():
    data = independence_level(sq(3, 1, 5)).to_json()
    assert data["certified_bound"] == 2 and data["cap"] == 1


@pytest.mark.parametrize("r,m,q", [(3, 1, 5), (5, 1, 11), (7, 1, 13), (3, 2, 5)])
def test_eigenvector_identities(r, m, q):
    check = check_eigenvector_identities(sq(r, m, q), samples=8)
    assert check.passed and check.checked_codewords == 8


@pytest.mark.parametrize("r,m,q", [(3, 1, 5), (5, 1, 11), (7, 1, 13), (13, 1, 3)])
def test_bound_is_sound(r, m, q):
    params = sq(r, m, q)
    assert bound_is_sound(build_code(params), independence_level(params))


def test_bound_unknown_under_tiny_budget():
    params = sq(13, 1, 3)
    assert bound_is_sound(build_code(params), independence_level(params, cap=1), budget=5) is None


def test_conjectured_distance():
    F = make_params(5, 1, 2, 11).code_field
    assert conjectured_distance(3, None) == 3
    assert conjectured_distance(5, F.zero) == 5
    assert conjectured_distance(13, F.zero) == 9
    assert conjectured_distance(13, F.one) == 7
    assert conjectured_distance(13, -F.one) == 7
    assert conjectured_distance(13, F.element(2)) == 9
    assert conjectured_distance(7, F.one) is None


def test_conjecture_targets_filter():
    targets = list(conjecture_targets(max_points=5, max_q=13))
    assert (3, 1, 5) in targets and (5, 1, 11) in targets
    assert all(q % 2 and q % 3 and q % r for r, _, q in targets)


@pytest.mark.parametrize("r,q,d", [(3, 5, 3), (5, 11, 5), (13, 5, 9)])
def test_conjecture_rows(r, q, d):
    row = conjecture_row(r, 1, q)
    assert row.measured == row.conjectured == d
    assert row.match and row.bound <= d


def test_remark_fails_for_nine_points():
    # found by the scan: A_max = 2 although (9 - 1) / 2 = 4
    row = conjecture_row(3, 2, 5)
    assert row.bound == 3 and row.remark_holds is False
    assert row.match


def test_scan_adds_extra_diagonals_when_one_mod_four():
    table = conjecture_scan([(5, 1, 11)])
    assert [row.v for row in table.rows] == [0, 1, 2, 10]
    assert not table.mismatches


def test_scan_csv_and_json():
    table = conjecture_scan([(3, 1, 5)])
    rows = list(csv.DictReader(io.StringIO(table.to_csv())))
    assert tuple(rows[0]) == ConjectureTable.FIELDS
    assert rows[0]["measured"] == "3" and rows[0]["match"] == "True"
    assert table.to_json()["rows"][0]["bound"] == 2
