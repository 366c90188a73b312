from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallhull.analysis import LinearCode, min_weight_by_enumeration
from smallhull.construct import build_code
from smallhull.distance import information_sets, level_size, min_distance
from smallhull.field import make_field
from smallhull.linalg import MatrixGF
from smallhull.params import make_params


def brute_force_distance(code: LinearCode) -> int:
    """Plain enumeration of every message with field ops one at a time."""
    F = code.field
    rows = code.G.rows()
    best = code.n
    for msg in product(range(F.order), repeat=code.k):
        if not any(msg):
            continue
        word = [0] * code.n
        for c, row in zip(msg, rows):
            if c:
                word = [F.add(w, F.mul(c, x)) for w, x in zip(word, row)]
        best = min(best, sum(1 for w in word if w))
    return best


def test_r3_q5():
    res = min_distance(build_code(make_params(3, 1, 2, 5, v=0)))
    assert res.exact and res.d == 3


def test_r13_q4_hull_one():
    res = min_distance(build_code(make_params(13, 1, 3, 4, v=1)))
    assert res.exact and res.d == 8
    assert res.strategy == "two-set"


def test_r3m2_q49():
    params = make_params(3, 2, 8, 49)
    res = min_distance(build_code(params.with_v(params.beta**12)))
    assert res.exact and res.d == 8
    # two sets through weight 3 certify d >= 8
    assert max(w for _, w in res.levels) <= 4


def test_identity_code():
    F = make_field(2)
    res = min_distance(LinearCode(F, MatrixGF.identity(F, 3)))
    assert res.exact and res.d == 1


def test_witness_is_a_codeword_of_weight_d():
    code = build_code(make_params(7, 1, 3, 4, v=0))
    res = min_distance(code)
    assert res.d == 5
    assert sum(1 for x in res.witness if x) == 5
    assert code.contains(res.witness)


def test_singular_P_still_gets_two_disjoint_sets():
    code = build_code(make_params(7, 1, 3, 4, v=0))
    assert code.P.rank() == 6
    sets = information_sets(code)
    assert len(sets) == 2 and sets[1].rank == code.k
    assert not set(sets[0].positions) & set(sets[1].positions)


def test_budget_gives_interval():
    code = build_code(make_params(13, 1, 3, 4, v=1))
    res = min_distance(code, budget=200)
    assert not res.exact
    assert res.lower <= 8 <= res.upper
    assert res.work <= 200


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        min_distance(build_code(make_params(3, 1, 2, 5, v=0)), budget=0)


def test_level_size():
    assert level_size(5, 4, 1) == 5
    assert level_size(5, 4, 3) == 10 * 9


def test_deterministic_output():
    code = build_code(make_params(11, 1, 5, 16, v=1))
    a, b = min_distance(code), min_distance(code)
    assert (a.d, a.work, a.witness) == (b.d, b.work, b.witness)


FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)]


@st.composite
def random_codes(draw):
    p, d = draw(st.sampled_from(FIELDS))
    F = make_field(p, d)
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k, 9))
    cells = st.lists(st.integers(0, F.order - 1), min_size=n, max_size=n)
    rows = draw(st.lists(cells, min_size=k, max_size=k))
    G = MatrixGF.from_rows(F, rows)
    if G.rank() < k:
        return None
    return LinearCode(F, G)


@settings(max_examples=120, deadline=None)
@given(random_codes())
def test_engine_matches_brute_force(code):
    if code is None:
        return
    want = brute_force_distance(code)
    res = min_distance(code)
    assert res.exact and res.d == want
    assert sum(1 for x in res.witness if x) == want
    assert min_weight_by_enumeration(code) == want


@pytest.mark.parametrize("tup,v", [((5, 1, 2, 11), 0), ((7, 1, 2, 3), 2), ((5, 1, 4, 9), 1), ((3, 2, 4, 5), 0)])
def test_engine_matches_enumeration_on_constructions(tup, v):
    code = build_code(make_params(*tup, v=v))
    assert min_distance(code).d == min_weight_by_enumeration(code)
