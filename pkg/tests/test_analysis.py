from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallhull.analysis import (
    CodeTooLargeError,
    LinearCode,
    dual,
    gram,
    hull,
    hull_dimension,
    weight_distribution,
)
from smallhull.construct import build_code
from smallhull.field import make_field
from smallhull.linalg import MatrixGF
from smallhull.params import make_params
from smallhull.report import admissible_tuples

# weight histograms frozen from a plain-Python enumeration oracle
R3_Q5_HIST = {0: 1, 3: 16, 4: 12, 5: 72, 6: 24}
R7_Q4_HIST = {0: 1, 5: 63, 6: 42, 7: 612, 8: 693, 9: 3738, 10: 1680, 11: 5796, 12: 1554, 13: 2079, 14: 126}


def test_gram_of_identity():
    F = make_field(3)
    code = LinearCode(F, MatrixGF.identity(F, 4))
    assert gram(code) == MatrixGF.identity(F, 4)


def test_gram_of_doubled_identity_over_f2_is_zero():
    F = make_field(2)
    I = MatrixGF.identity(F, 3)
    assert gram(LinearCode(F, I.hstack(I))).is_zero()


def test_gram_r3_q5_full_rank():
    assert gram(build_code(make_params(3, 1, 2, 5, v=0))).rank() == 3


def test_hull_r7_q4_is_trivial():
    rep = hull(build_code(make_params(7, 1, 3, 4, v=0)))
    assert rep.dimension == 0 and rep.classification == "LCD"


def test_hull_r13_q4_all_ones():
    rep = hull(build_code(make_params(13, 1, 3, 4, v=1)))
    assert rep.dimension == 1 and rep.classification == "one-dimensional"
    assert rep.basis.rows() == [[1] * 26]


def test_hull_r3m2_q49_basis():
    params = make_params(3, 2, 8, 49)
    b12 = (params.beta**12).value
    rep = hull(build_code(params.with_v(params.beta**12)))
    assert rep.basis.rows() == [[1] * 9 + [b12] * 9]


def test_other_classification():
    F = make_field(2)
    I = MatrixGF.identity(F, 3)
    rep = hull(LinearCode(F, I.hstack(I)))
    assert rep.dimension == 3 and rep.classification == "other(3)"


def test_dual_of_systematic_code():
    code = build_code(make_params(7, 1, 3, 4, v=0))
    d = dual(code)
    assert (d.n, d.k) == (14, 7)
    assert (d.G @ code.G.T).is_zero()
    P = code.P
    assert np.array_equal(d.G.data[:, :7], (-P.T).data)


def test_dual_of_non_systematic_code():
    F = make_field(5)
    code = LinearCode.from_rows(F, [[0, 1, 2, 3, 4], [1, 1, 0, 0, 1]])
    d = dual(code)
    assert d.k == 3
    assert (d.G @ code.G.T).is_zero()


@pytest.mark.parametrize("tup,v", [((7, 1, 3, 4), 0), ((3, 1, 2, 5), 0), ((13, 1, 3, 4), 1), ((5, 1, 4, 9), 1)])
def test_hull_of_dual_equals_hull(tup, v):
    code = build_code(make_params(*tup, v=v))
    assert hull(code).dimension == hull(dual(code)).dimension


def test_weight_distribution_r3_q5():
    assert weight_distribution(build_code(make_params(3, 1, 2, 5, v=0))) == R3_Q5_HIST


def test_weight_distribution_r7_q4():
    dist = weight_distribution(build_code(make_params(7, 1, 3, 4, v=0)))
    assert dist == R7_Q4_HIST
    assert sum(dist.values()) == 4**7


def test_weight_distribution_trivial():
    F = make_field(2)
    assert weight_distribution(LinearCode(F, MatrixGF.identity(F, 1))) == {0: 1, 1: 1}


def test_weight_distribution_refuses_large_codes():
    with pytest.raises(CodeTooLargeError):
        weight_distribution(build_code(make_params(13, 1, 3, 4, v=0)))


FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]


@st.composite
def random_codes(draw):
    p, d = draw(st.sampled_from(FIELDS))
    F = make_field(p, d)
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k, 8))
    rows = draw(
        st.lists(st.lists(st.integers(0, F.order - 1), min_size=n, max_size=n), min_size=k, max_size=k)
    )
    G = MatrixGF.from_rows(F, rows)
    red, piv = G.rref()
    if len(piv) < k:
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(k)]
        G = MatrixGF.from_rows(F, rows) + MatrixGF.from_rows(F, [[0] * k + r[k:] for r in G.rows()])
    return LinearCode(F, G)


@settings(max_examples=60, deadline=None)
@given(random_codes())
def test_hull_basis_properties(code):
    rep = hull(code)
    assert rep.dimension == hull_dimension(code)
    assert rep.dimension == hull(dual(code)).dimension
    if rep.dimension:
        assert (rep.basis @ code.G.T).is_zero()
        for row in rep.basis.rows():
            assert code.contains(row)


@settings(max_examples=40, deadline=None)
@given(random_codes())
def test_weight_distribution_sums(code):
    dist = weight_distribution(code)
    assert sum(dist.values()) == code.field.order**code.k
    assert dist[0] == 1


def test_sweep_hull_equals_dual_hull():
    for tup in admissible_tuples(max_points=9, max_q=16):
        code = build_code(make_params(*tup, v=1))
        assert hull_dimension(code) == hull_dimension(dual(code))
