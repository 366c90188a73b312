"""The matrix P, the code [I | P], the spectrum of P P^T and the sufficient
conditions that certify an LCD or one-dimensional hull.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from smallhull.analysis import LinearCode
from smallhull.charsums import gauss_table, make_phi
from smallhull.field import FieldElement
from smallhull.linalg import MatrixGF
from smallhull.params import ConstructionParams, InadmissibleError, PreconditionError

# certificate keys
LCD_ZERO_1 = "lcd-zero-diagonal-1"
LCD_ZERO_2 = "lcd-zero-diagonal-2"
LCD_ZERO_CONGRUENCE_1 = "lcd-zero-diagonal-congruence-1"
LCD_ZERO_CONGRUENCE_2 = "lcd-zero-diagonal-congruence-2"
LCD_FREE = "lcd-free-diagonal"
HULL1_CHAR2 = "hull1-char2"
HULL1_ODD = "hull1-odd-quotient"
HULL1_EVEN = "hull1-even-quotient"
HULL1_EVEN_FROBENIUS = "hull1-even-quotient-frobenius"

LCD_CERTIFICATES = {LCD_ZERO_1, LCD_ZERO_2, LCD_ZERO_CONGRUENCE_1, LCD_ZERO_CONGRUENCE_2, LCD_FREE}
HULL1_CERTIFICATES = {HULL1_CHAR2, HULL1_ODD, HULL1_EVEN, HULL1_EVEN_FROBENIUS}


class InternalInconsistencyError(RuntimeError):
    """A search that is guaranteed to succeed came back empty."""


def _require_v(params: ConstructionParams) -> FieldElement:
    if params.v is None:
        raise InadmissibleError("the diagonal value v is not set")
    return params.v


def build_P(params: ConstructionParams) -> MatrixGF:
    """p_ij = phi(x_j - x_i) off the diagonal and v on it."""
    v = _require_v(params)
    S, F = params.source, params.code_field
    phi = make_phi(params)
    pts = params.points
    u_pows = [(params.u**e).value for e in range(params.N)]
    dlog = params.dlog
    rows = []
    for i, xi in enumerate(pts):
        row = []
        for j, xj in enumerate(pts):
            if i == j:
                row.append(v.value)
            else:
                row.append(u_pows[phi.exponent * dlog[S.sub(xj, xi)] % params.N])
        rows.append(row)
    return MatrixGF.from_rows(F, rows)


def build_code(params: ConstructionParams) -> LinearCode:
    """The [2 r^m, r^m] code with generator [I | P]."""
    P = build_P(params)
    return LinearCode.systematic(P)


@dataclass
class EigenReport:
    lambdas: dict[int, FieldElement]  # keyed by the source element code a
    count_minus_one: int

    def to_json(self) -> dict:
        return {
            "lambdas": {str(a): lam.value for a, lam in sorted(self.lambdas.items())},
            "count_minus_one": self.count_minus_one,
        }


def phi_minus_one(params: ConstructionParams) -> FieldElement:
    S = params.source
    return make_phi(params)(S.element(S.neg(1)))


def eigenvalues(params: ConstructionParams) -> EigenReport:
    """lambda_a = v^2 + (1 + phi(-1)) v g_a + phi(-1) g_a^2 with g_a = g(phi, chi_a); lambda_0 = v^2."""
    v = params.embedding(_require_v(params))
    tab = gauss_table(params)
    T = params.split_field
    s = params.embedding(phi_minus_one(params))
    lambdas = {0: v * v}
    for a in range(1, params.source.order):
        g = tab.g(1, a)
        lambdas[a] = v * v + (1 + s) * v * g + s * g * g
    minus_one = T.from_int(-1)
    count = sum(1 for lam in lambdas.values() if lam == minus_one)
    return EigenReport(lambdas, count)


def nullity_I_plus_PPT(params: ConstructionParams) -> int:
    P = build_P(params)
    k = P.shape[0]
    M = MatrixGF.identity(P.field, k) + P @ P.T
    return k - M.rank()


def eigen_rank_crosscheck(params: ConstructionParams) -> bool:
    """Number of eigenvalues equal to -1 equals the nullity of I + P P^T over GF(q)."""
    return eigenvalues(params).count_minus_one == nullity_I_plus_PPT(params)


# -- zero diagonal ---------------------------------------------------------------


@dataclass
class PredicateResult:
    name: str
    holds: bool
    certificate: str | None
    certifying_s: dict[str, list[int]] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "certificate": self.certificate,
            "certifying_s": self.certifying_s,
            "details": self.details,
        }


def _zero_diagonal_only(params: ConstructionParams) -> None:
    if params.v is not None and not params.v.is_zero():
        raise PreconditionError("zero-diagonal conditions apply only to v = 0")


def _s_range(params: ConstructionParams, s: int | None, s_max: int | None) -> range:
    if s is not None:
        if s < 1:
            raise PreconditionError("s must be positive")
        return range(s, s + 1)
    return range(1, (s_max or 2 * params.N) + 1)


def check_thm_A(params: ConstructionParams, s: int | None = None, *, s_max: int | None = None) -> PredicateResult:
    """Zero-diagonal LCD conditions.

    Branch 1: N | p^s - 1 and phi(p^(2s)) != 1.
    Branch 2: N | p^s + 1 and phi(p^(-2s)) != r^(2m) in GF(q).
    Without ``s`` every s in 1..s_max (default 2N) is tried.
    """
    _zero_diagonal_only(params)
    S, F = params.source, params.code_field
    p, r, m, N = params.p, params.r, params.m, params.N
    phi = make_phi(params)
    r2m = F.from_int(pow(r, 2 * m, p))
    found: dict[str, list[int]] = {"1": [], "2": []}
    applicable = {"1": [], "2": []}
    for ss in _s_range(params, s, s_max):
        img = S.element(pow(p, 2 * ss, r))
        if (p**ss - 1) % N == 0:
            applicable["1"].append(ss)
            if phi(img) != 1:
                found["1"].append(ss)
        if (p**ss + 1) % N == 0:
            applicable["2"].append(ss)
            if phi(img.inverse()) != r2m:
                found["2"].append(ss)
    cert = LCD_ZERO_1 if found["1"] else LCD_ZERO_2 if found["2"] else None
    return PredicateResult(
        "zero-diagonal-lcd", cert is not None, cert, found, {"applicable_s": applicable}
    )


def check_coro_A(params: ConstructionParams, s: int | None = None, *, s_max: int | None = None) -> PredicateResult:
    """Integer-congruence versions of :func:`check_thm_A`.

    Branch 1: N | p^s - 1 and p^(2s(r^m-1)/N) != 1 (mod r).
    Branch 2: N | p^s + 1 and r^(2mN) != 1 (mod p).
    """
    _zero_diagonal_only(params)
    p, r, m, N = params.p, params.r, params.m, params.N
    found: dict[str, list[int]] = {"1": [], "2": []}
    applicable = {"1": [], "2": []}
    for ss in _s_range(params, s, s_max):
        if (p**ss - 1) % N == 0:
            applicable["1"].append(ss)
            if pow(p, 2 * ss * (r**m - 1) // N, r) != 1:
                found["1"].append(ss)
        if (p**ss + 1) % N == 0:
            applicable["2"].append(ss)
            if pow(r, 2 * m * N, p) != 1:
                found["2"].append(ss)
    cert = LCD_ZERO_CONGRUENCE_1 if found["1"] else LCD_ZERO_CONGRUENCE_2 if found["2"] else None
    return PredicateResult(
        "zero-diagonal-lcd-congruence",
        cert is not None,
        cert,
        found,
        {"applicable_s": applicable, "applicable": bool(applicable["1"] or applicable["2"])},
    )


# -- free diagonal ---------------------------------------------------------------


def f_values(params: ConstructionParams, v: FieldElement) -> dict[int, FieldElement]:
    """f_a(v) for every a, written through g(phi, chi_1) and phi-bar(a)."""
    tab = gauss_table(params)
    S = params.source
    emb = params.embedding
    vv = emb(v)
    s = emb(phi_minus_one(params))
    g1 = tab.g(1, 1)
    phi = make_phi(params)
    out = {0: vv * vv}
    for a in range(1, S.order):
        h = emb(phi.conj()(S.element(a))) * g1
        out[a] = vv * vv + (1 + s) * h * vv + s * h * h
    return out


def excluded_values(params: ConstructionParams) -> list[FieldElement]:
    """Every v in GF(q) for which some f_a(v) equals -1."""
    T = params.split_field
    minus_one = T.from_int(-1)
    return [
        v
        for v in params.code_field.elements()
        if any(val == minus_one for val in f_values(params, v).values())
    ]


def find_v_B(params: ConstructionParams) -> FieldElement:
    """Least v in GF(q) with f_a(v) != -1 for all a. Requires q > 2(N + 1)."""
    if params.q <= 2 * (params.N + 1):
        raise PreconditionError(f"q={params.q} does not exceed 2(N+1)={2 * (params.N + 1)}")
    minus_one = params.split_field.from_int(-1)
    for v in params.code_field.elements():
        if all(val != minus_one for val in f_values(params, v).values()):
            return v
    raise InternalInconsistencyError("no admissible v although q > 2(N+1)")


# -- one-dimensional hull ----------------------------------------------------------


@dataclass
class HullCertificate:
    certified: bool
    theorem: str | None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"certified": self.certified, "theorem": self.theorem, "details": self.details}


def phi_of_q(params: ConstructionParams) -> FieldElement:
    S = params.source
    return make_phi(params)(S.element(params.q % params.r))


def make_one_dim_hull(params: ConstructionParams) -> tuple[FieldElement, HullCertificate]:
    """Diagonal value and certificate for a one-dimensional hull.

    p = 2 uses v = 1. Odd p with 4 | q - 1 uses v = beta^((q-1)/4), so that
    v^2 = -1; the sign phi(-1) decides which condition applies. For odd r
    that sign is (-1)^((r^m - 1)/N), but for r = 2 it is always +1, so an odd
    quotient with r = 2 is handled by the direct 2v + g_a check.
    """
    F = params.code_field
    p, q = params.p, params.q
    if p == 2:
        return F.one, HullCertificate(True, HULL1_CHAR2, {"v_squared_is_minus_one": True})
    if (q - 1) % 4:
        raise PreconditionError(f"4 does not divide q-1={q - 1} and p={p} is odd")
    v = params.beta ** ((q - 1) // 4)
    quotient = (params.r**params.m - 1) // params.N
    details: dict = {"quotient": quotient, "quotient_parity": "odd" if quotient % 2 else "even"}
    phi_neg = phi_minus_one(params)
    details["phi_minus_one"] = phi_neg.value
    if phi_neg == -1:
        return v, HullCertificate(True, HULL1_ODD, details)
    tab = gauss_table(params)
    two_v = params.embedding(v) * 2
    bad = [a for a in range(1, params.source.order) if (two_v + tab.g(1, a)).is_zero()]
    # the Frobenius shortcut is only established for an even quotient
    phi_q_not_one = quotient % 2 == 0 and phi_of_q(params) != 1
    details.update(
        {"even_condition_holds": not bad, "violating_a": bad, "phi_q_not_one": phi_q_not_one}
    )
    if phi_q_not_one and bad:
        raise InternalInconsistencyError("phi(q) != 1 but 2v + g(phi, chi_a) vanishes")
    if bad:
        return v, HullCertificate(False, None, details)
    return v, HullCertificate(True, HULL1_EVEN_FROBENIUS if phi_q_not_one else HULL1_EVEN, details)


# -- policies ------------------------------------------------------------------------


@dataclass
class Construction:
    params: ConstructionParams
    code: LinearCode
    certificate: str | None
    predicates: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "certificate": self.certificate,
            "predicates": self.predicates,
        }


def construct(
    params: ConstructionParams, hull: int | None = None, *, s_max: int | None = None
) -> Construction:
    """Pick v (unless set), build the code and attach any certificate.

    ``hull=1`` uses the one-dimensional-hull diagonal; ``hull=0`` takes v = 0
    when the zero-diagonal conditions hold and the least free-diagonal v
    otherwise; with neither, v defaults to 0.
    """
    if hull not in (None, 0, 1):
        raise PreconditionError("hull must be 0 or 1")
    preds: dict = {}
    cert = None
    if hull == 1:
        v, hc = make_one_dim_hull(params)
        if params.v is not None and params.v != v:
            raise PreconditionError("explicit v conflicts with the one-dimensional-hull diagonal")
        params = params.with_v(v)
        preds["one_dim_hull"] = hc.to_json()
        cert = hc.theorem
    elif hull == 0 and params.v is None:
        zero = params.with_v(0)
        thm = check_thm_A(zero, s_max=s_max)
        preds["zero_diagonal"] = thm.to_json()
        if thm.holds:
            params, cert = zero, thm.certificate
        else:
            params = params.with_v(find_v_B(params))
            cert = LCD_FREE
    else:
        if params.v is None:
            params = params.with_v(0)
        cert = certify(params, preds, s_max=s_max)
    return Construction(params, build_code(params), cert, preds)


def certify(params: ConstructionParams, preds: dict | None = None, *, s_max: int | None = None) -> str | None:
    """Certificate that applies to an explicit v, if any."""
    preds = {} if preds is None else preds
    v = _require_v(params)
    if v.is_zero():
        thm = check_thm_A(params, s_max=s_max)
        coro = check_coro_A(params, s_max=s_max)
        preds["zero_diagonal"] = thm.to_json()
        preds["zero_diagonal_congruence"] = coro.to_json()
        if thm.holds:
            return thm.certificate
        if coro.holds:
            raise InternalInconsistencyError("congruence condition holds but the exact one fails")
    if params.p == 2 or (params.q - 1) % 4 == 0:
        hv, hc = make_one_dim_hull(params.with_v(None))
        preds["one_dim_hull"] = hc.to_json()
        if hv == v and hc.certified:
            return hc.theorem
    minus_one = params.split_field.from_int(-1)
    ok = all(val != minus_one for val in f_values(params, v).values())
    preds["free_diagonal_all_f_not_minus_one"] = ok
    return LCD_FREE if ok else None


def construct_free_diagonal(params: ConstructionParams) -> Construction:
    """Least v passing every f_a check; always certified when it exists."""
    params = params.with_v(find_v_B(params))
    preds = {"free_diagonal_v": params.v.value}
    return Construction(params, build_code(params), LCD_FREE, preds)
