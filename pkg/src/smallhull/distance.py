"""Exact minimum distance by enumeration over disjoint information sets.

For each information set the code is put in systematic form on those
coordinates. Enumerating every message of weight w on a set finds every
codeword whose restriction to that set has weight w. Once all sets are done
through weight w, any codeword not yet seen has weight at least w + 1 on each
set, so the weights of the sets' contributions give a lower bound. The search
stops as soon as the best codeword found meets that bound.

Messages are enumerated projectively (first nonzero coefficient 1) since
scalar multiples share a weight. Supports are walked depth-first in
lexicographic order and partial sums are shared between supports with a
common prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from smallhull.analysis import CodeTooLargeError, LinearCode, weight_distribution
from smallhull.linalg import MatrixGF, ops_for

DEFAULT_BUDGET = 10**9


@dataclass
class DistanceResult:
    lower: int
    upper: int
    exact: bool
    witness: list[int] | None
    work: int
    strategy: str
    levels: list[tuple[int, int]] = field(default_factory=list)  # (set index, weight) completed

    @property
    def d(self) -> int | tuple[int, int]:
        return self.upper if self.exact else (self.lower, self.upper)

    def to_json(self) -> dict:
        return {
            "d": self.upper if self.exact else None,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "witness": self.witness,
            "work": self.work,
            "strategy": self.strategy,
        }


@dataclass
class InfoSet:
    """An information set with the code in systematic form on it.

    ``rank`` counts how many of ``positions`` are disjoint from the earlier
    sets; the rest were borrowed to complete a basis. Only the disjoint part
    contributes to the lower bound.
    """

    positions: list[int]
    G: np.ndarray  # k x n generator, identity on ``positions``
    redundancy: np.ndarray  # k x (n - k), the remaining columns
    rank: int

    @classmethod
    def from_generator(cls, G: MatrixGF, positions: list[int], rank: int | None = None) -> InfoSet:
        sub = MatrixGF(G.field, G.data[:, positions].copy())
        sysG = sub.inverse() @ G
        rest = [c for c in range(G.shape[1]) if c not in set(positions)]
        k = G.shape[0]
        return cls(positions, sysG.data, sysG.data[:, rest].copy(), k if rank is None else rank)

    def contribution(self, k: int, done: int) -> int:
        """Weight forced on the disjoint part once levels 1..done are enumerated."""
        return max(0, done + 1 - (k - self.rank))


def _cols_rank(G: MatrixGF, cols: list[int]) -> int:
    return MatrixGF(G.field, G.data[:, cols].copy()).rank()


def _pivots(G: MatrixGF, cols: list[int]) -> list[int]:
    _, piv = MatrixGF(G.field, G.data[:, cols].copy()).rref()
    return [cols[i] for i in piv]


def information_sets(code: LinearCode) -> list[InfoSet]:
    """Two information sets, disjoint when possible.

    The first is the set of pivot columns. If its complement is not of full
    rank, single column swaps between the two are tried in a fixed order. When
    no swap works the second set is the complement's pivots completed from the
    first set.
    """
    G = code.G
    k, n = code.k, code.n
    first = _pivots(G, list(range(n)))
    if len(first) < k:
        raise ValueError("generator rows are linearly dependent")
    rest = [c for c in range(n) if c not in set(first)]
    if len(rest) < k:
        return [InfoSet.from_generator(G, first)]
    if _cols_rank(G, rest) < k:
        for i in reversed(first):
            done = False
            for j in rest:
                a = sorted(set(first) - {i} | {j})
                b = sorted(set(rest) - {j} | {i})
                if _cols_rank(G, a) == k and _cols_rank(G, b) == k:
                    first, rest, done = a, b, True
                    break
            if done:
                break
    second = _pivots(G, rest)
    r2 = len(second)
    sets = [InfoSet.from_generator(G, first)]
    if r2 == 0:
        return sets
    if r2 < k:
        second = _pivots(G, second + first)
    sets.append(InfoSet.from_generator(G, second, r2))
    return sets


def level_size(k: int, q: int, w: int) -> int:
    """Projective messages of weight exactly w in GF(q)^k."""
    if w == 0:
        return 0
    return comb(k, w) * (q - 1) ** (w - 1)


class _LevelSearch:
    """Enumerate all projective messages of one weight on one information set."""

    def __init__(self, code: LinearCode, info: InfoSet):
        F = code.field
        ops = ops_for(F)
        q = F.order
        dtype = np.uint8 if q <= 256 else np.uint16
        self.add_t = ops.add_t.astype(dtype)
        self.k = code.k
        self.nonzero = np.arange(1, q)
        red = info.redundancy.astype(np.int64)
        # scaled[i, c-1] = c * redundancy row i
        self.scaled = ops.mul_t[self.nonzero[None, :, None], red[:, None, :]].astype(dtype)
        self.info = info
        self.q = q

    def run(self, w: int, best: int) -> tuple[int, tuple | None]:
        """Smallest total weight below ``best`` among weight-w messages, with its message."""
        self.best, self.found = best, None
        k = self.k
        for i in range(k - w + 1):
            base = self.scaled[i, :1]  # coefficient 1 at the leading position
            self._extend([i], [np.zeros(1, dtype=np.int64)], base, w)
        return self.best, self.found

    def _extend(self, support, coeff_idx, partial, w):
        depth = len(support)
        last = support[-1]
        if depth == w:
            self._score(support, coeff_idx, partial, w)
            return
        # every extension of this prefix by one more position and coefficient
        if depth == w - 1:
            nxt = self.scaled[last + 1 :]  # (s, q-1, r)
            if nxt.shape[0] == 0:
                return
            combo = self.add_t[partial[:, None, None, :], nxt[None, :, :, :]]  # (M, s, q-1, r)
            wts = np.count_nonzero(combo, axis=3) + w
            m = int(wts.min())
            if m < self.best:
                flat = int(np.argmin(wts))
                mi, si, ci = np.unravel_index(flat, wts.shape)
                coeffs = [int(idx[mi]) for idx in coeff_idx] + [int(ci)]
                self.best = m
                self.found = (support + [last + 1 + int(si)], coeffs)
            return
        for j in range(last + 1, self.k - (w - depth) + 1):
            combo = self.add_t[partial[:, None, :], self.scaled[j][None, :, :]]  # (M, q-1, r)
            M = partial.shape[0]
            new_partial = combo.reshape(M * (self.q - 1), -1)
            new_idx = [np.repeat(idx, self.q - 1) for idx in coeff_idx]
            new_idx.append(np.tile(np.arange(self.q - 1), M))
            self._extend(support + [j], new_idx, new_partial, w)

    def _score(self, support, coeff_idx, partial, w):
        wts = np.count_nonzero(partial, axis=1) + w
        m = int(wts.min())
        if m < self.best:
            mi = int(np.argmin(wts))
            self.best = m
            self.found = (list(support), [int(idx[mi]) for idx in coeff_idx])

    def codeword(self, found) -> list[int]:
        support, coeffs = found
        msg = [0] * self.k
        for pos, (s, c) in enumerate(zip(support, coeffs)):
            msg[s] = 1 if pos == 0 else int(self.nonzero[c])
        return msg


def _encode(code: LinearCode, G: np.ndarray, msg: list[int]) -> list[int]:
    return MatrixGF(code.field, G).vector_mul(msg)


def _full_enumeration(code: LinearCode, budget: int) -> DistanceResult:
    dist = weight_distribution(code, limit=budget)
    d = min(w for w in dist if w > 0)
    return DistanceResult(d, d, True, _find_word_of_weight(code, d), code.field.order**code.k, "full")


def _find_word_of_weight(code: LinearCode, d: int) -> list[int] | None:
    """A codeword of weight d via the single-set engine (used only for small codes)."""
    info = information_sets(code)[0]
    search = _LevelSearch(code, info)
    for w in range(1, code.k + 1):
        best, found = search.run(w, d + 1)
        if found is not None and best == d:
            return _encode(code, info.G, search.codeword(found))
    return None


def min_distance(code: LinearCode, budget: int = DEFAULT_BUDGET) -> DistanceResult:
    """Minimum distance, exact when the search completes within ``budget`` messages.

    With two disjoint information sets the engine runs both; with one it
    falls back to full enumeration when q^k fits in the budget and to a
    single-set search otherwise.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    q, k = code.field.order, code.k
    sets = information_sets(code)
    if len(sets) == 1:
        strategy = "single-set"
    else:
        strategy = "two-set" if sets[1].rank == k else "two-set-partial"
    if len(sets) == 1 and q**k <= budget:
        try:
            return _full_enumeration(code, budget)
        except CodeTooLargeError:
            pass

    searches = [_LevelSearch(code, s) for s in sets]
    best = code.n + 1
    witness = None
    work = 0
    lower = 1
    levels: list[tuple[int, int]] = []
    for w in range(1, k + 1):
        for j, search in enumerate(searches):
            size = level_size(k, q, w)
            if work + size > budget:
                return DistanceResult(min(lower, best), best, False, witness, work, strategy, levels)
            work += size
            b, found = search.run(w, best)
            if found is not None:
                best = b
                witness = _encode(code, sets[j].G, search.codeword(found))
            levels.append((j, w))
            if w == k:
                # every message was enumerated on this set
                return DistanceResult(best, best, True, witness, work, strategy, levels)
            lower = sum(
                st.contribution(k, w if i <= j else w - 1) for i, st in enumerate(sets)
            )
            if best <= lower:
                return DistanceResult(best, best, True, witness, work, strategy, levels)
    return DistanceResult(best, best, True, witness, work, strategy, levels)
