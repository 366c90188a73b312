"""Finite fields GF(p^d) with integer-encoded elements.

An element with coefficient vector (c_0, ..., c_{d-1}) over the prime field,
taken modulo the defining polynomial, is stored as the integer
c_0 + c_1 p + ... + c_{d-1} p^{d-1}. That integer order is also the
enumeration order of the field: prime fields list 0..p-1, extension fields
list coefficient vectors lexicographically with the top coefficient most
significant.

Default moduli are Conway polynomials, so the root ``x`` is primitive and
subfield embeddings between Conway-defined fields are compatible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from math import gcd
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

# log/exp tables are built below this order, full add/mul tables below DENSE_LIMIT
TABLE_LIMIT = 1 << 16
DENSE_LIMIT = 1 << 10


class FieldError(ValueError):
    """Invalid field parameters."""


class FieldMismatchError(TypeError):
    """Operands live in different fields."""


@lru_cache(maxsize=None)
def _conway_table() -> dict[tuple[int, int], tuple[int, ...]]:
    raw = json.loads(resources.files("smallhull.data").joinpath("conway.json").read_text())
    table = {}
    for key, coeffs in raw["polys"].items():
        p, d = (int(s) for s in key.split(","))
        table[(p, d)] = tuple(coeffs)
    return table


def conway_polynomial(p: int, d: int) -> tuple[int, ...] | None:
    """Shipped Conway polynomial for GF(p^d), low degree first, or None."""
    return _conway_table().get((p, d))


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) of a polynomial given low degree first."""
    if len(coeffs) < 2 or coeffs[-1] % p == 0:
        return False
    return bool(gf_irreducible_p([c % p for c in reversed(coeffs)], p, ZZ))


def _least_irreducible(p: int, d: int) -> tuple[int, ...]:
    # monic, lower coefficients scanned in integer-encoding order
    for code in range(1, p**d):
        low = []
        c = code
        for _ in range(d):
            c, digit = divmod(c, p)
            low.append(digit)
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {d} over GF({p})")


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


@dataclass(frozen=True)
class FieldDescriptor:
    """GF(char^degree) defined by a monic irreducible ``modulus`` (low degree first)."""

    char: int
    degree: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.char**self.degree

    def __repr__(self) -> str:
        return f"GF({self.char}^{self.degree})" if self.degree > 1 else f"GF({self.char})"

    def to_json(self) -> dict:
        return {"char": self.char, "degree": self.degree, "modulus": list(self.modulus)}

    # -- element construction -------------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        return self.element(value)

    def element(self, value: int | Sequence[int]) -> FieldElement:
        """Element from its integer code or from a coefficient vector."""
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.order:
                raise FieldError(f"{value} is not an element code of {self!r}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) > self.degree:
            raise FieldError(f"coefficient vector longer than degree {self.degree}")
        return FieldElement(self, self.from_digits(coeffs))

    def from_int(self, n: int) -> FieldElement:
        """Image of the integer ``n`` in the prime subfield."""
        return FieldElement(self, n % self.char)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.order):
            yield FieldElement(self, v)

    @property
    def prime_field(self) -> FieldDescriptor:
        return make_field(self.char, 1)

    # -- digit encoding -------------------------------------------------------

    def digits(self, v: int) -> list[int]:
        p = self.char
        out = []
        for _ in range(self.degree):
            v, c = divmod(v, p)
            out.append(c)
        return out

    def from_digits(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.char + (c % self.char)
        return v

    def to_vectors(self, values: Sequence[int]) -> np.ndarray:
        """Coefficient vectors (one row per value) as an int64 array."""
        return np.array([self.digits(int(v)) for v in values], dtype=np.int64).reshape(
            len(values), self.degree
        )

    def from_vectors(self, vecs: np.ndarray) -> list[int]:
        vecs = np.asarray(vecs) % self.char
        return [self.from_digits([int(c) for c in row]) for row in vecs]

    # -- polynomial arithmetic (slow path) -----------------------------------

    def _polymul(self, a: list[int], b: list[int]) -> list[int]:
        p, d, mod = self.char, self.degree, self.modulus
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * mod[i]
        return [c % p for c in prod[:d]]

    def _mul_slow(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.char
        return self.from_digits(self._polymul(self.digits(a), self.digits(b)))

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    # -- tables ---------------------------------------------------------------

    @cached_property
    def _order_factors(self) -> tuple[int, ...]:
        return _factor(self.order - 1) if self.order > 2 else ()

    def _is_generator(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.order - 1
        return all(self._pow_slow(a, n // ell) != 1 for ell in self._order_factors)

    @cached_property
    def primitive_code(self) -> int:
        """Integer code of the least primitive element."""
        for a in range(1, self.order):
            if self._is_generator(a):
                return a
        raise FieldError(f"{self!r} has no primitive element")  # unreachable for a field

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]] | None:
        if self.order > TABLE_LIMIT:
            return None
        n = self.order - 1
        g = self.primitive_code
        exp = [0] * (2 * n)
        log = [-1] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        exp[n:] = exp[:n]
        return exp, log

    @cached_property
    def add_table(self) -> np.ndarray:
        """Dense addition table, only for order <= DENSE_LIMIT."""
        if self.order > DENSE_LIMIT:
            raise FieldError(f"{self!r} is too large for dense tables")
        vals = np.arange(self.order)
        if self.degree == 1:
            return (vals[:, None] + vals[None, :]) % self.char
        if self.char == 2:
            return vals[:, None] ^ vals[None, :]
        vecs = self.to_vectors(range(self.order))
        weights = self.char ** np.arange(self.degree)
        s = (vecs[:, None, :] + vecs[None, :, :]) % self.char
        return (s * weights).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.order > DENSE_LIMIT:
            raise FieldError(f"{self!r} is too large for dense tables")
        vals = np.arange(self.order)
        if self.degree == 1:
            return (vals[:, None] * vals[None, :]) % self.char
        exp, log = self._log_tables
        n = self.order - 1
        lg = np.array(log)
        ex = np.array(exp)
        out = ex[(lg[:, None] + lg[None, :]) % n]
        out[0, :] = 0
        out[:, 0] = 0
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(v) for v in range(self.order)])

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(v) for v in range(1, self.order)])

    @property
    def has_dense_tables(self) -> bool:
        return self.order <= DENSE_LIMIT

    # -- integer-level arithmetic --------------------------------------------

    @cached_property
    def _add_lists(self) -> list[list[int]] | None:
        if self.degree == 1 or self.char == 2 or self.order > DENSE_LIMIT:
            return None
        return self.add_table.tolist()

    def add(self, a: int, b: int) -> int:
        p = self.char
        if self.degree == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        lists = self._add_lists
        if lists is not None:
            return lists[a][b]
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([x + y for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.char
        if self.char == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return a * b % self.char
        tables = self._log_tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] + log[b]]
        return self._mul_slow(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.degree == 1:
            return pow(a, e, self.char)
        tables = self._log_tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] * e % (self.order - 1)]
        return self._pow_slow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self!r}")
        if self.degree == 1:
            return pow(a, -1, self.char)
        tables = self._log_tables
        if tables is not None:
            exp, log = tables
            n = self.order - 1
            return exp[(n - log[a]) % n]
        return self._pow_slow(a, self.order - 2)

    def log(self, a: int) -> int:
        """Discrete log of ``a`` to the canonical primitive element."""
        if a == 0:
            raise ValueError("log of zero")
        tables = self._log_tables
        if tables is None:
            raise FieldError(f"{self!r} is too large for a log table")
        return tables[1][a]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        if self._log_tables is not None:
            return n // gcd(n, self._log_tables[1][a])
        order = n
        for ell in self._order_factors:
            while order % ell == 0 and self._pow_slow(a, order // ell) == 1:
                order //= ell
        return order

    # -- linear-map views over the prime field --------------------------------

    def mul_matrix(self, c: int) -> np.ndarray:
        """Matrix M with vec(c*y) = vec(y) @ M over GF(char)."""
        rows = [self.digits(self.mul(c, self.char**i)) for i in range(self.degree)]
        return np.array(rows, dtype=np.int64).reshape(self.degree, self.degree)

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix F with vec(y^p) = vec(y) @ F over GF(char)."""
        rows = [self.digits(self.pow(self.char**i, self.char)) for i in range(self.degree)]
        return np.array(rows, dtype=np.int64).reshape(self.degree, self.degree)


class FieldElement:
    """An immutable element of a :class:`FieldDescriptor`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def rep(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.value))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field!r} with {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.char
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.value, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(o, self.field.inv(self.value)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, int(e)))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def multiplicative_order(self) -> int:
        return self.field.mult_order(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.char
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.char, self.field.modulus, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


@lru_cache(maxsize=None)
def _make_field(char: int, degree: int, modulus: tuple[int, ...] | None, fallback: bool) -> FieldDescriptor:
    if not isprime(char):
        raise FieldError(f"characteristic {char} is not prime")
    if degree < 1:
        raise FieldError("degree must be at least 1")
    if modulus is None:
        modulus = conway_polynomial(char, degree)
        if modulus is None:
            if not fallback:
                raise FieldError(f"no canonical polynomial shipped for GF({char}^{degree})")
            modulus = _least_irreducible(char, degree)
    else:
        modulus = tuple(c % char for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {degree}")
        if not is_irreducible(modulus, char):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({char})")
    return FieldDescriptor(char, degree, modulus)


def make_field(
    char: int, degree: int = 1, modulus: Sequence[int] | None = None, *, fallback: bool = False
) -> FieldDescriptor:
    """Build GF(char^degree).

    Without ``modulus`` the shipped Conway polynomial is used; when none is
    shipped a ``FieldError`` is raised unless ``fallback`` is set, in which
    case the least monic irreducible polynomial is taken instead.
    """
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _make_field(int(char), int(degree), mod, bool(fallback))


def field_of_order(q: int, modulus: Sequence[int] | None = None, *, fallback: bool = False) -> FieldDescriptor:
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, k),) = factors.items()
    return make_field(p, k, modulus, fallback=fallback)


def primitive_element(F: FieldDescriptor) -> FieldElement:
    """Least element (in integer order) of multiplicative order |F| - 1."""
    return F.element(F.primitive_code)


def trace_to_prime(F: FieldDescriptor, x: FieldElement) -> FieldElement:
    """Absolute trace x + x^p + ... + x^(p^(d-1)) as an element of GF(p)."""
    if x.field != F:
        raise FieldMismatchError(f"{x!r} does not belong to {F!r}")
    total = 0
    y = x.value
    for _ in range(F.degree):
        total = F.add(total, y)
        y = F.pow(y, F.char)
    if total >= F.char:
        raise FieldError("trace left the prime field")  # impossible for a valid modulus
    return F.prime_field.element(total)


def multiplicative_order_mod(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1")
    t, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        t += 1
    return t


def splitting_degree(q: int, r: int) -> int:
    """Least t >= 1 with r | q^t - 1."""
    if gcd(q, r) != 1:
        raise FieldError(f"gcd({q}, {r}) != 1")
    return multiplicative_order_mod(q, r)


class Embedding:
    """Ring embedding of ``source`` into an extension ``target``.

    The source generator x is sent to the root of the source modulus of the
    form y^j, y = gamma^((Q-1)/(q-1)), with the least admissible j; for
    Conway moduli that is j = 1.
    """

    def __init__(self, source: FieldDescriptor, target: FieldDescriptor):
        if source.char != target.char or target.degree % source.degree:
            raise FieldError(f"{target!r} is not an extension of {source!r}")
        self.source = source
        self.target = target
        self.root = self._find_root()
        self._images: dict[int, int] = {}

    def _find_root(self) -> int:
        S, T = self.source, self.target
        if S.degree == 1:
            return 0
        q = S.order
        y = T.pow(T.primitive_code, (T.order - 1) // (q - 1))
        for j in range(1, q - 1):
            if gcd(j, q - 1) != 1:
                continue
            z = T.pow(y, j)
            acc = 0
            for c in reversed(S.modulus):
                acc = T.add(T.mul(acc, z), c)
            if acc == 0:
                return z
        raise FieldError(f"no root of {S!r}'s modulus in {T!r}")  # unreachable

    def image(self, v: int) -> int:
        if self.source.degree == 1:
            return v
        hit = self._images.get(v)
        if hit is None:
            T = self.target
            acc = 0
            for c in reversed(self.source.digits(v)):
                acc = T.add(T.mul(acc, self.root), c)
            self._images[v] = hit = acc
        return hit

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.source:
            raise FieldMismatchError(f"{x!r} is not in {self.source!r}")
        return self.target.element(self.image(x.value))


@lru_cache(maxsize=None)
def embedding(source: FieldDescriptor, target: FieldDescriptor) -> Embedding:
    return Embedding(source, target)


def embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Image of ``x`` under the fixed embedding of its field into ``target``."""
    return embedding(x.field, target)(x)
