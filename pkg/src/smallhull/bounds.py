"""Independence-level lower bound for N = 2 and an empirical conjecture scan.

With the quadratic phi and the points ordered squares first, P has the
vectors eta_a = (chi_a(x_1), ..., chi_a(x_n)) as eigenvectors. Splitting the
eta columns by whether a is a square gives two families of row vectors
mu_x and nu_x; if every A of them are independent in each family, every
nonzero codeword has weight at least A + 1.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

import numpy as np

from smallhull.analysis import LinearCode
from smallhull.charsums import gauss_table, trace_table
from smallhull.construct import build_code
from smallhull.distance import DEFAULT_BUDGET, min_distance
from smallhull.field import FieldElement
from smallhull.linalg import MatrixGF
from smallhull.params import ConstructionParams, PreconditionError, make_params

DEFAULT_SUBSET_LIMIT = 10**6
REMARK_GATE = 13


def _require_bound_params(params: ConstructionParams) -> None:
    if params.N != 2:
        raise PreconditionError(f"the independence bound needs N=2, got N={params.N}")
    if params.ordering != "squares_first":
        raise PreconditionError("the independence bound needs the squares_first ordering")


def _square_split(params: ConstructionParams) -> tuple[list[int], list[int]]:
    h = (params.n_points - 1) // 2
    pts = params.points
    return list(pts[:h]), list(pts[h : 2 * h])


def mu_nu_families(params: ConstructionParams) -> tuple[MatrixGF, MatrixGF]:
    """Rows mu_{x_i} and nu_{x_i}, i = 1..r^m, over the splitting field.

    mu_{x_i}[j] = chi_{s_j}(x_i) with s_j running over the nonzero squares in
    point order; nu uses the non-squares.
    """
    _require_bound_params(params)
    S, T = params.source, params.split_field
    tr = trace_table(S)
    z_pows = [(params.zeta**e).value for e in range(params.r)]
    squares, non_squares = _square_split(params)

    def family(cols: list[int]) -> MatrixGF:
        rows = [[z_pows[tr[S.mul(a, x)]] for a in cols] for x in params.points]
        return MatrixGF.from_rows(T, rows)

    return family(squares), family(non_squares)


def colex_subsets(n: int, size: int) -> Iterator[tuple[int, ...]]:
    """Subsets of range(n) of the given size in colexicographic order."""
    if size == 0:
        yield ()
        return
    for top in range(size - 1, n):
        for rest in colex_subsets(top, size - 1):
            yield (*rest, top)


@dataclass
class IndependenceReport:
    A_max: int
    checked_subsets: int
    cap: int
    first_dependent: tuple[str, tuple[int, ...]] | None = None

    @property
    def certified_bound(self) -> int:
        return self.A_max + 1

    def to_json(self) -> dict:
        return {
            "A_max": self.A_max,
            "certified_bound": self.certified_bound,
            "checked_subsets": self.checked_subsets,
            "cap": self.cap,
            "first_dependent": None
            if self.first_dependent is None
            else {"family": self.first_dependent[0], "subset": list(self.first_dependent[1])},
        }


def independence_level(
    params: ConstructionParams, cap: int | None = None, *, limit: int = DEFAULT_SUBSET_LIMIT
) -> IndependenceReport:
    """Largest A <= cap with every A-subset of both families independent.

    Sizes are tried in increasing order and the search stops at the first
    dependent subset. Only meaningful as a distance bound for v = 0.
    """
    _require_bound_params(params)
    if params.v is not None and not params.v.is_zero():
        raise PreconditionError("the independence bound is established only for v = 0")
    n = params.n_points
    h = (n - 1) // 2
    if cap is None:
        cap = h
    if cap < 0 or cap > h:
        raise PreconditionError(f"cap must lie in 0..{h}")
    if comb(n, cap) > limit:
        raise PreconditionError(f"C({n},{cap}) subsets exceed the limit {limit}")
    exps = _family_exponents(params)
    checked = 0
    best = cap
    first = None
    for name, E in zip(("mu", "nu"), exps):
        search = _DependentSearch(params, E, best)
        search.run()
        checked += search.checked
        if search.found is not None and len(search.found) - 1 < best:
            best, first = len(search.found) - 1, (name, search.found)
    return IndependenceReport(best, checked, cap, first)


def _family_exponents(params: ConstructionParams) -> tuple[np.ndarray, np.ndarray]:
    """Exponents e with mu/nu entries equal to zeta^e."""
    S = params.source
    tr = trace_table(S)
    squares, non_squares = _square_split(params)
    return tuple(
        np.array([[tr[S.mul(a, x)] for a in cols] for x in params.points], dtype=np.int64)
        for cols in (squares, non_squares)
    )


class _DependentSearch:
    """Depth-first search for the smallest dependent subset of one family.

    Work happens over GF(p) in the regular representation: each vector over
    the splitting field (degree D over GF(p)) becomes a D-row block. Reducing
    a block against the echelon basis of its prefix leaves either zero
    (dependent) or a block of full rank D, since the reduced span is a
    subspace over the extension. Subsets are explored in lexicographic order
    and only up to one less than the smallest dependent size found so far.
    """

    def __init__(self, params: ConstructionParams, E: np.ndarray, limit: int):
        T = params.split_field
        self.p = T.char
        self.Fp = T.prime_field
        D = T.degree
        zp = [(params.zeta**e).value for e in range(params.r)]
        blocks = np.stack([T.mul_matrix(c) for c in zp])  # (r, D, D)
        n, h = E.shape
        self.V = blocks[E].transpose(0, 2, 1, 3).reshape(n, D, h * D)
        self.n = n
        self.limit = limit
        self.checked = 0
        self.found: tuple[int, ...] | None = None

    def run(self) -> None:
        if self.limit > 0:
            self._dfs((), None, [])

    def _dfs(self, prefix: tuple[int, ...], R: np.ndarray | None, piv: list[int]) -> None:
        p = self.p
        start = prefix[-1] + 1 if prefix else 0
        for i in range(start, self.n):
            size = len(prefix) + 1
            if size > self.limit:
                return
            vec = self.V[i]
            if R is not None:
                vec = (vec - vec[:, piv] @ R) % p
            self.checked += 1
            if not vec.any():
                # the limit only shrinks, so this is the smallest so far
                self.found = (*prefix, i)
                self.limit = size - 1
                return
            if size < self.limit:
                red, pv = MatrixGF(self.Fp, vec).rref()
                Rv = red.data
                if R is None:
                    R2, piv2 = Rv, list(pv)
                else:
                    R2 = np.vstack([(R - R[:, pv] @ Rv) % p, Rv])
                    piv2 = piv + list(pv)
                self._dfs((*prefix, i), R2, piv2)


# -- eigenvector identities ---------------------------------------------------------


@dataclass
class EigenvectorCheck:
    checked_codewords: int
    failures: list[list[int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked_codewords": self.checked_codewords, "failures": self.failures}


def check_eigenvector_identities(
    params: ConstructionParams, samples: int = 32, seed: int = 0
) -> EigenvectorCheck:
    """For codewords (k | l) of the v = 0 code: (l - g k) kills eta_a for squares a,
    (l + g k) kills eta_a for non-squares a, and l sums to zero. g = g(phi, chi_1)."""
    _require_bound_params(params)
    params = params.with_v(0)
    code = build_code(params)
    T = params.split_field
    emb = params.embedding
    g = gauss_table(params).g(1, 1)
    squares, non_squares = _square_split(params)
    S = params.source
    tr = trace_table(S)
    z = [params.zeta**e for e in range(params.r)]
    eta = {a: [z[tr[S.mul(a, x)]] for x in params.points] for a in squares + non_squares}
    rng = random.Random(seed)
    k = code.k
    F = params.code_field
    report = EigenvectorCheck(0)
    for _ in range(samples):
        msg = [rng.randrange(F.order) for _ in range(k)]
        word = code.encode(msg)
        kk = [emb(F.element(c)) for c in word[:k]]
        ll = [emb(F.element(c)) for c in word[k:]]
        u = [b - g * a for a, b in zip(kk, ll)]
        w = [b + g * a for a, b in zip(kk, ll)]
        ok = sum(ll, T.zero) == 0
        for a in squares:
            ok &= sum((x * y for x, y in zip(u, eta[a])), T.zero) == 0
        for a in non_squares:
            ok &= sum((x * y for x, y in zip(w, eta[a])), T.zero) == 0
        report.checked_codewords += 1
        if not ok:
            report.failures.append(word)
    return report


# -- conjecture scan ---------------------------------------------------------------


def conjectured_distance(n_points: int, v: FieldElement | None) -> int | None:
    """Predicted d for N = 2; None where no prediction is made."""
    if v is None or v.is_zero():
        return 3 if n_points == 3 else (n_points + 5) // 2
    if n_points % 4 != 1:
        return None
    if v == 1 or v == -1:
        return (n_points + 1) // 2
    return (n_points + 5) // 2


@dataclass
class ConjectureRow:
    r: int
    m: int
    q: int
    v: int
    status: str  # "measured" or "skipped"
    measured: int | None
    conjectured: int | None
    bound: int | None
    remark_holds: bool | None

    @property
    def match(self) -> bool | None:
        if self.measured is None or self.conjectured is None:
            return None
        return self.measured == self.conjectured

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "q": self.q,
            "v": self.v,
            "status": self.status,
            "measured": self.measured,
            "conjectured": self.conjectured,
            "match": self.match,
            "bound": self.bound,
            "remark_holds": self.remark_holds,
        }


@dataclass
class ConjectureTable:
    rows: list[ConjectureRow]

    FIELDS = ("r", "m", "q", "v", "status", "measured", "conjectured", "match", "bound", "remark_holds")

    def to_json(self) -> dict:
        return {"rows": [row.to_json() for row in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: "" if v is None else v for k, v in row.to_json().items()})
        return buf.getvalue()

    @property
    def mismatches(self) -> list[ConjectureRow]:
        return [row for row in self.rows if row.match is False]


def conjecture_targets(max_points: int = 13, max_q: int = 49) -> Iterator[tuple[int, int, int]]:
    """(r, m, q) with odd r^m <= max_points, q <= max_q, p > 3 and p != r."""
    from sympy import factorint, isprime

    for r in range(3, max_points + 1):
        if not isprime(r):
            continue
        m = 1
        while r**m <= max_points:
            for q in range(5, max_q + 1):
                f = factorint(q)
                if len(f) != 1:
                    continue
                (p,) = f
                if p > 3 and p != r and (q - 1) % 2 == 0:
                    yield r, m, q
            m += 1


def conjecture_row(
    r: int, m: int, q: int, v: int = 0, *, budget: int = DEFAULT_BUDGET, remark_gate: int = REMARK_GATE
) -> ConjectureRow:
    params = make_params(r, m, 2, q, v=v, ordering="squares_first")
    n = params.n_points
    conj = conjectured_distance(n, params.v)
    result = min_distance(build_code(params), budget)
    measured = result.upper if result.exact else None
    bound = remark = None
    if params.v.is_zero():
        rep = independence_level(params)
        bound = rep.certified_bound
        if n <= remark_gate:
            remark = rep.A_max == (n - 1) // 2
    return ConjectureRow(
        r, m, q, params.v.value, "measured" if result.exact else "skipped", measured, conj, bound, remark
    )


def conjecture_scan(
    targets: Iterable[tuple[int, int, int]],
    *,
    vs: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ConjectureTable:
    """Measure d for N = 2 codes and compare with the predicted values.

    ``vs`` lists diagonal values as GF(q) element codes; by default v = 0,
    and additionally 1, -1 and the least primitive element when r^m = 1 mod 4.
    Mismatches are recorded, never raised.
    """
    rows = []
    for r, m, q in targets:
        if vs is not None:
            values = list(vs)
        else:
            values = [0]
            if (r**m) % 4 == 1:
                params = make_params(r, m, 2, q)
                F = params.code_field
                values += sorted({1, F.neg(1), params.beta.value})
        for v in values:
            rows.append(conjecture_row(r, m, q, v, budget=budget))
    return ConjectureTable(rows)


def bound_is_sound(code: LinearCode, report: IndependenceReport, budget: int = DEFAULT_BUDGET) -> bool | None:
    """certified_bound <= d, or None if d could not be pinned down."""
    result = min_distance(code, budget)
    return report.certified_bound <= result.upper if result.exact else None
