"""Parameter sweeps, reference reproduction and the combined analysis report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from sympy import factorint, isprime

from smallhull.analysis import dual, hull
from smallhull.charsums import verify_identities
from smallhull.construct import (
    HULL1_CERTIFICATES,
    LCD_CERTIFICATES,
    Construction,
    construct,
    construct_free_diagonal,
    eigen_rank_crosscheck,
    eigenvalues,
)
from smallhull.distance import DEFAULT_BUDGET, DistanceResult, min_distance
from smallhull.params import ConstructionParams, make_params
from smallhull.reference import FREE_DIAGONAL, HULL_ONE, ZERO_DIAGONAL, Reference

SWEEP_MAX_POINTS = 27
SWEEP_MAX_Q = 49


def admissible_tuples(max_points: int = SWEEP_MAX_POINTS, max_q: int = SWEEP_MAX_Q) -> Iterator[tuple[int, int, int, int]]:
    """Every (r, m, N, q) with r^m <= max_points and q <= max_q satisfying the standing assumptions."""
    for r in range(2, max_points + 1):
        if not isprime(r):
            continue
        m = 1
        while r**m <= max_points:
            n = r**m
            for q in range(2, max_q + 1):
                f = factorint(q)
                if len(f) != 1 or r in f:
                    continue
                for N in range(2, n):
                    if (n - 1) % N == 0 and (q - 1) % N == 0:
                        yield r, m, N, q
            m += 1


@dataclass
class SweepEntry:
    params: tuple[int, int, int, int]
    identities_passed: bool
    crosscheck: dict[str, bool]
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.identities_passed and all(self.crosscheck.values())

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "identities_passed": self.identities_passed,
            "crosscheck": self.crosscheck,
            "failures": self.failures,
        }


def sweep_diagonals(params: ConstructionParams) -> dict[str, ConstructionParams]:
    """The diagonal values exercised per tuple: 0, 1 and the hull-one choice when defined."""
    out = {"v=0": params.with_v(0), "v=1": params.with_v(1)}
    if params.p != 2 and (params.q - 1) % 4 == 0:
        out["v=hull1"] = params.with_v(params.beta ** ((params.q - 1) // 4))
    return out


def verify_tuple(r: int, m: int, N: int, q: int) -> SweepEntry:
    params = make_params(r, m, N, q)
    report = verify_identities(params)
    cross = {label: eigen_rank_crosscheck(p) for label, p in sweep_diagonals(params).items()}
    failed = [c.name for c in report.checks if not c.passed]
    return SweepEntry((r, m, N, q), report.passed, cross, failed)


def random_tuples(count: int, seed: int = 0, **limits) -> list[tuple[int, int, int, int]]:
    pool = list(admissible_tuples(**limits))
    rng = random.Random(seed)
    if count >= len(pool):
        return pool
    return rng.sample(pool, count)


# -- analysis ----------------------------------------------------------------------


@dataclass
class AnalysisReport:
    construction: Construction
    n: int
    k: int
    distance: DistanceResult | None
    hull_dimension: int
    hull_basis: list[list[int]]
    classification: str
    dual_distance: DistanceResult | None
    eigen_count_minus_one: int
    crosscheck: bool
    bound: dict | None = None

    @property
    def certificate_consistent(self) -> bool | None:
        """Whether a certificate, if issued, agrees with the measured hull."""
        cert = self.construction.certificate
        if cert is None:
            return None
        if cert in LCD_CERTIFICATES:
            return self.hull_dimension == 0
        if cert in HULL1_CERTIFICATES:
            return self.hull_dimension == 1
        return None

    def to_json(self) -> dict:
        return {
            "construction": self.construction.to_json(),
            "n": self.n,
            "k": self.k,
            "distance": None if self.distance is None else self.distance.to_json(),
            "d": None if self.distance is None or not self.distance.exact else self.distance.upper,
            "hull": self.hull_dimension,
            "hull_basis": self.hull_basis,
            "classification": self.classification,
            "dual": {
                "n": self.n,
                "k": self.n - self.k,
                "distance": None if self.dual_distance is None else self.dual_distance.to_json(),
            },
            "eigen_count_minus_one": self.eigen_count_minus_one,
            "crosscheck": self.crosscheck,
            "certificate_consistent": self.certificate_consistent,
            "bound": self.bound,
        }


def analyze(
    construction: Construction,
    budget: int = DEFAULT_BUDGET,
    *,
    distance: bool = True,
    dual_distance: bool = False,
    bound: bool = False,
) -> AnalysisReport:
    code = construction.code
    params = construction.params
    h = hull(code)
    eig = eigenvalues(params)
    d = min_distance(code, budget) if distance else None
    dd = min_distance(dual(code), budget) if dual_distance else None
    bound_json = None
    if bound and params.N == 2 and params.v is not None and params.v.is_zero():
        from smallhull.bounds import independence_level

        bound_json = independence_level(params.with_ordering("squares_first")).to_json()
    return AnalysisReport(
        construction,
        code.n,
        code.k,
        d,
        h.dimension,
        h.basis.rows(),
        h.classification,
        dd,
        eig.count_minus_one,
        eig.count_minus_one == h.dimension,
        bound_json,
    )


def build_reference(ref: Reference) -> Construction:
    """Build a reference entry with the method and diagonal it names."""
    params = make_params(ref.r, ref.m, ref.N, ref.q, ordering=ref.ordering)
    if ref.v_beta_power is not None:
        params = params.with_v(params.beta**ref.v_beta_power)
        return construct(params)
    if ref.method == ZERO_DIAGONAL:
        return construct(params.with_v(0))
    if ref.method == FREE_DIAGONAL:
        return construct_free_diagonal(params)
    if ref.method == HULL_ONE:
        return construct(params, hull=1)
    raise ValueError(f"unknown method {ref.method!r}")


@dataclass
class ReproductionRow:
    ref: Reference
    status: str  # match | mismatch | skipped-exact
    measured: dict
    certificate: str | None

    def to_json(self) -> dict:
        r = self.ref
        return {
            "key": r.key,
            "params": {"r": r.r, "m": r.m, "N": r.N, "q": r.q},
            "method": r.method,
            "expected": {"n": r.n, "k": r.k, "d": r.d, "hull": r.hull},
            "measured": self.measured,
            "certificate": self.certificate,
            "status": self.status,
        }


def reproduce(ref: Reference, budget: int = DEFAULT_BUDGET, *, dual_distance: bool = False) -> ReproductionRow:
    c = build_reference(ref)
    rep = analyze(c, budget, dual_distance=dual_distance and ref.dual_d is not None)
    d = rep.distance
    measured = {
        "n": rep.n,
        "k": rep.k,
        "d": d.upper if d.exact else None,
        "d_interval": [d.lower, d.upper],
        "hull": rep.hull_dimension,
        "v": c.params.v.value,
    }
    if rep.dual_distance is not None:
        measured["dual_d"] = rep.dual_distance.upper if rep.dual_distance.exact else None
    shape_ok = (rep.n, rep.k, rep.hull_dimension) == (ref.n, ref.k, ref.hull)
    cert_ok = rep.certificate_consistent is not False
    if d.exact:
        ok = shape_ok and cert_ok and d.upper == ref.d
        if ref.dual_d is not None and "dual_d" in measured:
            ok = ok and measured["dual_d"] == ref.dual_d
        status = "match" if ok else "mismatch"
    else:
        inside = d.lower <= ref.d <= d.upper
        status = "skipped-exact" if shape_ok and cert_ok and inside else "mismatch"
    return ReproductionRow(ref, status, measured, c.certificate)
