from __future__ import annotations

import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import smallhull.charsums as cs
from smallhull.charsums import gauss_sum, gauss_sum_conjugate, gauss_table, make_chi, make_phi, verify_identities
from smallhull.params import make_params
from smallhull.report import admissible_tuples

SMALL_TUPLES = [t for t in admissible_tuples(max_points=13, max_q=25)]


def test_trivial_pair_gives_r_m_minus_one():
    params = make_params(7, 1, 3, 4)
    g = gauss_sum(make_phi(params, 0), make_chi(params, 0))
    assert g == params.split_field.from_int(6)


def test_trivial_phi_nontrivial_chi_gives_minus_one():
    params = make_params(7, 1, 3, 4)
    for a in range(1, 7):
        assert gauss_sum(make_phi(params, 0), make_chi(params, a)) == -1


def test_r3_q5_square_is_two():
    params = make_params(3, 1, 2, 5)
    g = gauss_sum(make_phi(params), make_chi(params, 1))
    assert g * g == 2
    # g = zeta - zeta^2 by expanding the sum over x = 1, 2
    z = params.zeta
    assert g == z - z * z


def test_r3_q5_conjugate_is_negative():
    params = make_params(3, 1, 2, 5)
    phi, chi = make_phi(params), make_chi(params, 1)
    assert gauss_sum_conjugate(phi, chi) == -gauss_sum(phi, chi)


def test_conjugate_of_trivial_pair():
    params = make_params(3, 1, 2, 5)
    assert gauss_sum_conjugate(make_phi(params, 0), make_chi(params, 0)) == 2


@pytest.mark.parametrize("r,m,N,q", [(3, 1, 2, 5), (7, 1, 3, 4), (13, 1, 3, 4)])
def test_verify_identities_examples(r, m, N, q):
    report = verify_identities(make_params(r, m, N, q))
    assert report.passed, [c.to_json() for c in report.checks if not c.passed]
    names = {c.name for c in report.checks}
    assert {"norm", "translation", "frobenius", "conj_chi", "conj_phi", "phi_orthogonality"} <= names
    assert all(c.checked_count > 0 for c in report.checks)


def test_identity_report_json_shape():
    data = verify_identities(make_params(3, 1, 2, 5)).to_json()
    for entry in data["checks"]:
        assert set(entry) >= {"name", "checked_count", "failures"}


def test_verify_identities_notices_a_corrupted_table(monkeypatch):
    params = make_params(7, 1, 3, 4)
    bad = copy.copy(gauss_table(params))
    bad.vecs = bad.vecs.copy()
    bad.vecs[1, 3, 0] ^= 1
    monkeypatch.setattr(cs, "gauss_table", lambda _p: bad)
    report = verify_identities(params)
    assert not report.passed
    assert report["norm"].failure_count > 0 or report["translation"].failure_count > 0


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_TUPLES), st.data())
def test_table_matches_literal_sum(tup, data):
    params = make_params(*tup)
    n = params.n_points
    j = data.draw(st.integers(0, params.N - 1))
    a = data.draw(st.integers(0, n - 1))
    assert gauss_table(params).g(j, a) == gauss_sum(make_phi(params, j), make_chi(params, a))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_TUPLES), st.data())
def test_norm_and_translation(tup, data):
    params = make_params(*tup)
    S = params.source
    a = data.draw(st.integers(1, S.order - 1))
    b = data.draw(st.integers(1, S.order - 1))
    phi = make_phi(params)
    g_a = gauss_sum(phi, make_chi(params, a))
    g_ab = gauss_sum(phi, make_chi(params, S.mul(a, b)))
    assert g_a * gauss_sum_conjugate(phi, make_chi(params, a)) == params.split_field.from_int(S.order)
    assert g_ab == params.embedding(phi.conj()(S.element(b))) * g_a


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_TUPLES), st.data())
def test_phi_multiplicative_and_order_n(tup, data):
    params = make_params(*tup)
    S = params.source
    phi = make_phi(params)
    x = S.element(data.draw(st.integers(1, S.order - 1)))
    y = S.element(data.draw(st.integers(1, S.order - 1)))
    assert phi(x * y) == phi(x) * phi(y)
    assert phi(x) ** params.N == 1
    assert phi(params.alpha) == params.u
