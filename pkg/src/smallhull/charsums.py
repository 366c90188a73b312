"""Multiplicative and additive homomorphisms into finite fields, and their sums.

``phi`` maps GF(r^m)^* into GF(q)^* by alpha^k -> u^k with u = beta^((q-1)/N);
``chi_a`` maps GF(r^m) into GF(q^t)^* by x -> zeta^Tr(a x) with zeta a
primitive r-th root of unity. The sum g(phi, chi) = sum_{x != 0} phi(x) chi(x)
lives in GF(q^t), with phi's values pushed through the fixed embedding.

All sums here are literal sums over the nonzero source elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from smallhull.field import (
    FieldDescriptor,
    FieldElement,
    FieldMismatchError,
    embed,
    trace_to_prime,
)
from smallhull.params import ConstructionParams

MAX_FAILURES = 20


@lru_cache(maxsize=None)
def trace_table(F: FieldDescriptor) -> tuple[int, ...]:
    """Absolute trace of every element of F, indexed by element code."""
    return tuple(trace_to_prime(F, x).value for x in F.elements())


@lru_cache(maxsize=None)
def _dlog_table(F: FieldDescriptor, alpha: int) -> tuple[int, ...]:
    table = [-1] * F.order
    x = 1
    for k in range(F.order - 1):
        table[x] = k
        x = F.mul(x, alpha)
    return tuple(table)


@dataclass(frozen=True)
class PhiHom:
    """x -> u^(exponent * dlog_alpha(x)); ``exponent`` selects a power of the base map."""

    source: FieldDescriptor
    target: FieldDescriptor
    N: int
    u: FieldElement
    alpha: FieldElement
    exponent: int = 1

    @property
    def dlog(self) -> tuple[int, ...]:
        return _dlog_table(self.source, self.alpha.value)

    @property
    def kernel_size(self) -> int:
        return (self.source.order - 1) // self.N

    def exponent_of(self, x: FieldElement) -> int:
        """e with phi(x) = u^e, 0 <= e < N."""
        if x.field != self.source:
            raise FieldMismatchError(f"{x!r} is not in {self.source!r}")
        if x.is_zero():
            raise ValueError("phi is undefined at 0")
        return self.exponent * self.dlog[x.value] % self.N

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.u ** self.exponent_of(x)

    def power(self, e: int) -> PhiHom:
        return PhiHom(self.source, self.target, self.N, self.u, self.alpha, self.exponent * e % self.N)

    def conj(self) -> PhiHom:
        """x -> phi(x^-1)."""
        return self.power(-1)

    def is_trivial(self) -> bool:
        return self.exponent % self.N == 0


@dataclass(frozen=True)
class ChiHom:
    """x -> zeta^Tr(a x)."""

    source: FieldDescriptor
    target: FieldDescriptor
    a: FieldElement
    zeta: FieldElement

    def trace_exponent(self, x: FieldElement) -> int:
        if x.field != self.source:
            raise FieldMismatchError(f"{x!r} is not in {self.source!r}")
        return trace_table(self.source)[(self.a * x).value]

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.zeta ** self.trace_exponent(x)

    def conj(self) -> ChiHom:
        """x -> chi(-x), which is chi_{-a}."""
        return ChiHom(self.source, self.target, -self.a, self.zeta)

    def with_a(self, a: FieldElement) -> ChiHom:
        return ChiHom(self.source, self.target, a, self.zeta)

    def is_trivial(self) -> bool:
        return self.a.is_zero()


def make_phi(params: ConstructionParams, exponent: int = 1) -> PhiHom:
    return PhiHom(params.source, params.code_field, params.N, params.u, params.alpha, exponent % params.N)


def make_chi(params: ConstructionParams, a: FieldElement | int) -> ChiHom:
    if not isinstance(a, FieldElement):
        a = params.source.element(int(a))
    return ChiHom(params.source, params.split_field, a, params.zeta)


def phi_eval(phi: PhiHom, x: FieldElement) -> FieldElement:
    return phi(x)


def chi_eval(chi: ChiHom, x: FieldElement) -> FieldElement:
    return chi(x)


def gauss_sum(phi: PhiHom, chi: ChiHom) -> FieldElement:
    """g(phi, chi) = sum over nonzero x of phi(x) chi(x), computed term by term."""
    if phi.source != chi.source:
        raise FieldMismatchError(f"{phi.source!r} vs {chi.source!r}")
    T = chi.target
    total = T.zero
    for x in phi.source.elements():
        if x.is_zero():
            continue
        total = total + embed(phi(x), T) * chi(x)
    return total


def gauss_sum_conjugate(phi: PhiHom, chi: ChiHom) -> FieldElement:
    """sum over nonzero x of phi(x^-1) chi(-x)."""
    if phi.source != chi.source:
        raise FieldMismatchError(f"{phi.source!r} vs {chi.source!r}")
    T = chi.target
    total = T.zero
    for x in phi.source.elements():
        if x.is_zero():
            continue
        total = total + embed(phi(x.inverse()), T) * chi(-x)
    return total


class GaussSumTable:
    """g(phi^j, chi_a) and its conjugate sum for every j mod N and every a.

    Each entry is summed over the nonzero source elements as coefficient
    vectors over GF(p); nothing is derived from closed forms.
    """

    def __init__(self, params: ConstructionParams):
        self.params = params
        S, T = params.source, params.split_field
        self.source, self.target = S, T
        N, r, n = params.N, params.r, S.order
        p = T.char

        dlog = params.dlog
        tr = trace_table(S)
        xs = np.arange(1, n)
        self.logs = np.array([dlog[x] for x in xs]) % N
        inv_logs = np.array([dlog[S.inv(int(x))] for x in xs]) % N
        # trace exponents Tr(a x) and Tr(-a x), shape (n, n-1)
        tr_ax = np.array([[tr[S.mul(a, int(x))] for x in xs] for a in range(n)], dtype=np.int64)
        self.trace_ax = tr_ax
        tr_neg = (-tr_ax) % r

        ue = params.embedding(params.u)
        u_pows = [ue**e for e in range(N)]
        z_pows = [params.zeta**t for t in range(r)]
        self.u_pows, self.z_pows = u_pows, z_pows
        terms = [[(up * zp).value for zp in z_pows] for up in u_pows]
        self.term_vecs = T.to_vectors([c for row in terms for c in row]).reshape(N, r, T.degree)

        js = np.arange(N)[:, None]
        e_direct = (js * self.logs[None, :]) % N  # (N, n-1)
        e_conj = (js * inv_logs[None, :]) % N
        direct = self.term_vecs[e_direct[:, None, :], tr_ax[None, :, :]].sum(axis=2) % p
        conj = self.term_vecs[e_conj[:, None, :], tr_neg[None, :, :]].sum(axis=2) % p
        self.vecs = direct  # (N, n, D)
        self.conj_vecs = conj

    def g(self, j: int, a: int) -> FieldElement:
        return self.target.element(self.target.from_digits(self.vecs[j % self.params.N, a].tolist()))

    def g_conj(self, j: int, a: int) -> FieldElement:
        return self.target.element(self.target.from_digits(self.conj_vecs[j % self.params.N, a].tolist()))


@lru_cache(maxsize=256)
def gauss_table(params: ConstructionParams) -> GaussSumTable:
    return GaussSumTable(params.with_v(None))


# -- identity verification ------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    checked_count: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0

    def record(self, ok: bool, where) -> None:
        self.checked_count += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(where)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> dict:
        return {"name": self.name, "checked_count": self.checked_count, "failures": list(self.failures)}


@dataclass
class IdentityReport:
    params: dict
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"params": self.params, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def verify_identities(params: ConstructionParams, *, exhaustive_limit: int = 49) -> IdentityReport:
    """Check every orthogonality relation and g-identity over all j, a, b.

    Homomorphism laws are checked pairwise only when r^m <= ``exhaustive_limit``.
    """
    tab = gauss_table(params)
    S, T, F = params.source, params.split_field, params.code_field
    N, r, n, p = params.N, params.r, S.order, T.char
    D = T.degree
    vecs, conj = tab.vecs, tab.conj_vecs
    checks: dict[str, IdentityCheck] = {}

    def check(name: str) -> IdentityCheck:
        return checks.setdefault(name, IdentityCheck(name))

    def vec_of(x: FieldElement) -> np.ndarray:
        return np.array(T.digits(x.value), dtype=np.int64)

    rm_T = T.from_int(n)
    minus_one_src = S.neg(1)
    neg_idx = [S.neg(a) for a in range(n)]

    # homomorphism laws
    chk = check("phi_multiplicative")
    chk_chi = check("chi_additive")
    if n <= exhaustive_limit:
        phi = make_phi(params)
        for x in range(1, n):
            for y in range(1, n):
                X, Y = S.element(x), S.element(y)
                chk.record(phi(X * Y) == phi(X) * phi(Y), [x, y])
        zp = tab.z_pows
        zprod = [[(a * b).value for b in zp] for a in zp]
        tr = trace_table(S)
        for a in range(n):
            ta = [tr[S.mul(a, x)] for x in range(n)]
            for x in range(n):
                for y in range(n):
                    lhs = zp[ta[S.add(x, y)]].value
                    chk_chi.record(lhs == zprod[ta[x]][ta[y]], [a, x, y])
    zeta = params.zeta
    check("zeta_root_of_unity").record(zeta**r == 1 and zeta != 1, [r])

    # orthogonality
    chk = check("phi_orthogonality")
    for j in range(N):
        total = F.zero
        phij = make_phi(params, j)
        for x in range(1, n):
            total = total + phij(S.element(x))
        want = F.from_int(n - 1) if j == 0 else F.zero
        chk.record(total == want, [j])
    chk = check("chi_orthogonality")
    zvecs = T.to_vectors([z.value for z in tab.z_pows])
    tr_full = np.concatenate([np.zeros((n, 1), dtype=np.int64), tab.trace_ax], axis=1)
    sums = zvecs[tr_full].sum(axis=1) % p
    for a in range(n):
        want = vec_of(rm_T) if a == 0 else np.zeros(D, dtype=np.int64)
        chk.record(np.array_equal(sums[a], want), [a])

    # values of g on trivial arguments
    chk = check("g_values")
    for j in range(N):
        for a in range(n):
            if j == 0 and a == 0:
                want = T.from_int(n - 1)
            elif j == 0:
                want = T.from_int(-1)
            elif a == 0:
                want = T.zero
            else:
                continue
            chk.record(np.array_equal(vecs[j, a], vec_of(want)), [j, a])

    # conj(g) computed by its own sum must match g(phi-bar, chi-bar)
    chk = check("conjugate_definition")
    for j in range(N):
        for a in range(n):
            chk.record(np.array_equal(conj[j, a], vecs[-j % N, neg_idx[a]]), [j, a])

    ue_minus1 = [make_phi(params, j)(S.element(minus_one_src)) for j in range(N)]
    sign_mats = [T.mul_matrix(params.embedding(s).value) for s in ue_minus1]
    chk_norm = check("norm")
    chk1 = check("conj_chi")
    chk2 = check("conj_phi")
    chk3 = check("product")
    for j in range(N):
        s_vecs = vecs[j] @ sign_mats[j] % p  # phi^j(-1) g(phi^j, chi_a), all a
        s_conj = conj[j] @ sign_mats[j] % p
        sign_T = params.embedding(ue_minus1[j])
        for a in range(n):
            chk1.record(np.array_equal(vecs[j, neg_idx[a]], s_vecs[a]), [j, a])
            chk2.record(np.array_equal(vecs[-j % N, a], s_conj[a]), [j, a])
            if j == 0 or a == 0:
                continue
            g = tab.g(j, a)
            chk_norm.record(g * tab.g_conj(j, a) == rm_T, [j, a])
            chk3.record(g * tab.g(-j, a) == sign_T * rm_T, [j, a])

    # Frobenius: g(phi, chi)^(p^s) = g(phi^(p^s), chi^(p^s))
    chk = check("frobenius")
    frob = T.frobenius_matrix
    cur = vecs.reshape(N * n, D)
    for s in range(1, D + 1):
        cur = cur @ frob % p
        ps_N = pow(p, s, N)
        ps_r = pow(p, s, r)
        lhs = cur.reshape(N, n, D)
        for j in range(N):
            jj = j * ps_N % N
            for a in range(n):
                aa = S.mul(a, ps_r)
                chk.record(np.array_equal(lhs[j, a], vecs[jj, aa]), [j, a, s])

    # translation: g(phi, chi_{ab}) = phi-bar(b) g(phi, chi_a)
    chk = check("translation")
    dlog = params.dlog
    u_mats = [T.mul_matrix(u.value) for u in tab.u_pows]
    for j in range(N):
        for b in range(1, n):
            e = (-j * dlog[b]) % N
            rhs = vecs[j] @ u_mats[e] % p
            ab = [S.mul(a, b) for a in range(n)]
            lhs = vecs[j, ab]
            ok = np.all(lhs == rhs, axis=1)
            for a in range(n):
                chk.record(bool(ok[a]), [j, a, b])

    return IdentityReport(params=params.with_v(None).to_json(), checks=list(checks.values()))
