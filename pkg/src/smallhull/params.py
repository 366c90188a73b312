"""Construction parameters: the field tower, generators and point ordering."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from math import gcd
from typing import Mapping, Sequence

from sympy import factorint, isprime

from smallhull.field import (
    Embedding,
    FieldDescriptor,
    FieldElement,
    FieldError,
    embedding,
    make_field,
    splitting_degree,
)

ORDERINGS = ("natural", "log", "squares_first")


class InadmissibleError(ValueError):
    """Parameters violate a standing assumption of the construction."""


class PreconditionError(ValueError):
    """An operation was called outside the range where it is defined."""


@dataclass(frozen=True)
class GeneratorChoice:
    alpha: FieldElement  # primitive in the source field GF(r^m)
    beta: FieldElement  # primitive in the code alphabet GF(q)
    gamma: FieldElement  # primitive in the splitting field GF(q^t)

    def to_json(self) -> dict:
        return {"alpha": self.alpha.value, "beta": self.beta.value, "gamma": self.gamma.value}


@dataclass(frozen=True, eq=True)
class ConstructionParams:
    """Everything needed to define phi, chi_a and the matrix P.

    ``ordering`` is either a named ordering or an explicit tuple of source
    element codes giving x_1, ..., x_{r^m}.
    """

    r: int
    m: int
    N: int
    q: int
    source: FieldDescriptor
    code_field: FieldDescriptor
    split_field: FieldDescriptor
    generators: GeneratorChoice
    ordering: str | tuple[int, ...] = "natural"
    v: FieldElement | None = None

    @property
    def p(self) -> int:
        return self.code_field.char

    @property
    def n_points(self) -> int:
        return self.r**self.m

    @property
    def t(self) -> int:
        return self.split_field.degree // self.code_field.degree

    @property
    def alpha(self) -> FieldElement:
        return self.generators.alpha

    @property
    def beta(self) -> FieldElement:
        return self.generators.beta

    @property
    def gamma(self) -> FieldElement:
        return self.generators.gamma

    @cached_property
    def u(self) -> FieldElement:
        return self.beta ** ((self.q - 1) // self.N)

    @cached_property
    def zeta(self) -> FieldElement:
        return self.gamma ** ((self.split_field.order - 1) // self.r)

    @cached_property
    def embedding(self) -> Embedding:
        return embedding(self.code_field, self.split_field)

    @cached_property
    def dlog(self) -> list[int]:
        """dlog[x] = k with x = alpha^k, for every source code x (entry 0 unused)."""
        S = self.source
        table = [-1] * S.order
        x = 1
        for k in range(S.order - 1):
            table[x] = k
            x = S.mul(x, self.alpha.value)
        return table

    @cached_property
    def points(self) -> tuple[int, ...]:
        """Source element codes x_1, ..., x_{r^m} in matrix order."""
        S = self.source
        if isinstance(self.ordering, tuple):
            return self.ordering
        powers = []
        x = 1
        for _ in range(S.order - 1):
            powers.append(x)
            x = S.mul(x, self.alpha.value)
        if self.ordering == "natural":
            if self.m == 1:
                return tuple(range(S.order))
            return (0, *powers)
        if self.ordering == "log":
            return (*powers, 0)
        # squares_first: nonzero squares, then non-squares (each ascending), then 0
        squares = sorted(powers[0::2])
        non_squares = sorted(powers[1::2])
        return (*squares, *non_squares, 0)

    def with_v(self, v: FieldElement | int | None) -> ConstructionParams:
        if v is not None and not isinstance(v, FieldElement):
            v = self.code_field.element(int(v))
        if v is not None and v.field != self.code_field:
            raise InadmissibleError(f"v must lie in {self.code_field!r}")
        return replace(self, v=v)

    def with_ordering(self, ordering: str | Sequence[int]) -> ConstructionParams:
        return make_params(
            self.r,
            self.m,
            self.N,
            self.q,
            v=self.v,
            ordering=ordering,
            moduli=self.moduli,
            alpha=self.alpha.value,
            beta=self.beta.value,
            gamma=self.gamma.value,
        )

    @property
    def moduli(self) -> dict[str, tuple[int, ...]]:
        return {
            "source": self.source.modulus,
            "code": self.code_field.modulus,
            "split": self.split_field.modulus,
        }

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "N": self.N,
            "q": self.q,
            "ordering": self.ordering if isinstance(self.ordering, str) else list(self.ordering),
            "v": None if self.v is None else self.v.value,
            "moduli": {k: list(v) for k, v in self.moduli.items()},
            "generators": self.generators.to_json(),
        }


def _prime_power(n: int, what: str) -> tuple[int, int]:
    f = factorint(n) if n > 1 else {}
    if len(f) != 1:
        raise InadmissibleError(f"{what}={n} is not a prime power")
    ((p, k),) = f.items()
    return p, k


def _generator(F: FieldDescriptor, code: int | None, name: str) -> FieldElement:
    if code is None:
        return F.element(F.primitive_code)
    x = F.element(int(code))
    if x.is_zero() or x.multiplicative_order() != F.order - 1:
        raise InadmissibleError(f"{name}={code} is not primitive in {F!r}")
    return x


def make_params(
    r: int,
    m: int,
    N: int,
    q: int,
    *,
    v: FieldElement | int | None = None,
    ordering: str | Sequence[int] = "natural",
    moduli: Mapping[str, Sequence[int]] | None = None,
    alpha: int | None = None,
    beta: int | None = None,
    gamma: int | None = None,
) -> ConstructionParams:
    """Validate (r, m, N, q) and build the field tower with canonical choices.

    ``moduli`` may override the defining polynomial of the ``source``
    GF(r^m), the ``code`` alphabet GF(q) or the ``split`` field GF(q^t).
    Generator overrides are integer element codes and must be primitive.
    """
    moduli = dict(moduli or {})
    if not isprime(r):
        raise InadmissibleError(f"r={r} is not prime")
    if m < 1:
        raise InadmissibleError(f"m={m} must be positive")
    p, k = _prime_power(q, "q")
    if N <= 1:
        raise InadmissibleError(f"N={N} must exceed 1")
    if (r**m - 1) % N:
        raise InadmissibleError(f"N={N} does not divide r^m-1={r**m - 1}")
    if (q - 1) % N:
        raise InadmissibleError(f"N={N} does not divide q-1={q - 1}")
    if gcd(p, r) != 1:
        raise InadmissibleError(f"characteristic p={p} equals r; gcd(p, r) must be 1")
    try:
        source = make_field(r, m, moduli.get("source"))
        code = make_field(p, k, moduli.get("code"))
        t = splitting_degree(q, r)
        split = make_field(p, k * t, moduli.get("split"), fallback=True)
    except FieldError as exc:
        raise InadmissibleError(str(exc)) from exc
    gens = GeneratorChoice(
        _generator(source, alpha, "alpha"),
        _generator(code, beta, "beta"),
        _generator(split, gamma, "gamma"),
    )
    if isinstance(ordering, str):
        if ordering not in ORDERINGS:
            raise InadmissibleError(f"unknown ordering {ordering!r}")
        if ordering == "squares_first" and r == 2:
            raise InadmissibleError("squares_first needs odd r")
        order_key: str | tuple[int, ...] = ordering
    else:
        order_key = tuple(int(x) for x in ordering)
        if sorted(order_key) != list(range(source.order)):
            raise InadmissibleError("explicit ordering must list every source element once")
    params = ConstructionParams(r, m, N, q, source, code, split, gens, order_key)
    return params.with_v(v)
