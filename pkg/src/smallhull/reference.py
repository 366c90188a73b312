"""Published comparison values: worked examples and the table of good codes.

Each entry says how to build the code and which [n, k, d] and hull dimension
to expect. Nothing here is computed.
"""

from __future__ import annotations

from dataclasses import dataclass

# construction methods
ZERO_DIAGONAL = "zero-diagonal"  # v = 0, certified by the zero-diagonal conditions
FREE_DIAGONAL = "free-diagonal"  # least v with every f_a(v) != -1
HULL_ONE = "hull-one"  # the one-dimensional-hull diagonal


@dataclass(frozen=True)
class Reference:
    key: str
    r: int
    m: int
    N: int
    q: int
    method: str
    n: int
    k: int
    d: int
    hull: int
    v_beta_power: int | None = None  # explicit v = beta^e, overriding the method's choice
    ordering: str = "natural"
    dual_d: int | None = None
    certificate: str | None = None  # the certificate the source cites, when it names one

    @property
    def params(self) -> tuple[int, int, int, int]:
        return self.r, self.m, self.N, self.q


EXAMPLES: tuple[Reference, ...] = (
    Reference("ex-r7-q4-lcd", 7, 1, 3, 4, ZERO_DIAGONAL, 14, 7, 5, 0, dual_d=5),
    Reference("ex-r3-q5-lcd", 3, 1, 2, 5, ZERO_DIAGONAL, 6, 3, 3, 0, certificate="lcd-zero-diagonal-2"),
    Reference(
        "ex-r2m2-q25-lcd", 2, 2, 3, 25, FREE_DIAGONAL, 8, 4, 4, 0, v_beta_power=2, ordering="log", dual_d=4
    ),
    Reference("ex-r13-q4-hull1", 13, 1, 3, 4, HULL_ONE, 26, 13, 8, 1, certificate="hull1-char2"),
    Reference("ex-r3m2-q49-hull1", 3, 2, 8, 49, HULL_ONE, 18, 9, 8, 1),
    Reference("ex-r7-n6-q25-hull1", 7, 1, 6, 25, HULL_ONE, 14, 7, 7, 1, certificate="hull1-odd-quotient"),
    Reference(
        "ex-r7-n3-q25-hull1", 7, 1, 3, 25, HULL_ONE, 14, 7, 6, 1, certificate="hull1-even-quotient-frobenius"
    ),
)

_Z1, _Z2 = "lcd-zero-diagonal-1", "lcd-zero-diagonal-2"

TABLE1: tuple[Reference, ...] = (
    Reference("t1-r13-n3-q7", 13, 1, 3, 7, ZERO_DIAGONAL, 26, 13, 9, 0, certificate=_Z1),
    Reference("t1-r13-n4-q5", 13, 1, 4, 5, ZERO_DIAGONAL, 26, 13, 9, 0, certificate=_Z1),
    Reference("t1-r17-n8-q9", 17, 1, 8, 9, ZERO_DIAGONAL, 34, 17, 12, 0, certificate=_Z1),
    Reference("t1-r17-n4-q5", 17, 1, 4, 5, ZERO_DIAGONAL, 34, 17, 11, 0, certificate=_Z1),
    Reference("t1-r5-n2-q7", 5, 1, 2, 7, ZERO_DIAGONAL, 10, 5, 5, 0, certificate=_Z2),
    Reference("t1-r7-n2-q5", 7, 1, 2, 5, ZERO_DIAGONAL, 14, 7, 6, 0, certificate=_Z2),
    Reference("t1-r11-n2-q7", 11, 1, 2, 7, ZERO_DIAGONAL, 22, 11, 8, 0, certificate=_Z2),
    Reference("t1-r13-n2-q5", 13, 1, 2, 5, ZERO_DIAGONAL, 26, 13, 9, 0, certificate=_Z2),
    Reference("t1-r17-n2-q7", 17, 1, 2, 7, ZERO_DIAGONAL, 34, 17, 11, 0, certificate=_Z2),
    Reference("t1-r17-n4-q9", 17, 1, 4, 9, ZERO_DIAGONAL, 34, 17, 11, 0, certificate=_Z2),
    Reference("t1-r17-n2-q5", 17, 1, 2, 5, ZERO_DIAGONAL, 34, 17, 11, 0, certificate=_Z2),
    Reference("t1-r3-n2-q7-free", 3, 1, 2, 7, FREE_DIAGONAL, 6, 3, 3, 0),
    Reference("t1-r3m2-n2-q7-free", 3, 2, 2, 7, FREE_DIAGONAL, 18, 9, 7, 0),
    Reference("t1-r5-n2-q7-free", 5, 1, 2, 7, FREE_DIAGONAL, 10, 5, 5, 0),
    Reference("t1-r11-n2-q7-free", 11, 1, 2, 7, FREE_DIAGONAL, 22, 11, 8, 0),
    Reference("t1-r7-n3-q4-hull1", 7, 1, 3, 4, HULL_ONE, 14, 7, 6, 1, certificate="hull1-char2"),
    Reference("t1-r3-n2-q5-hull1", 3, 1, 2, 5, HULL_ONE, 6, 3, 3, 1, certificate="hull1-odd-quotient"),
    Reference("t1-r7-n2-q5-hull1", 7, 1, 2, 5, HULL_ONE, 14, 7, 6, 1, certificate="hull1-odd-quotient"),
    Reference("t1-r11-n2-q9-hull1", 11, 1, 2, 9, HULL_ONE, 22, 11, 8, 1, certificate="hull1-odd-quotient"),
    Reference(
        "t1-r17-n4-q9-hull1", 17, 1, 4, 9, HULL_ONE, 34, 17, 11, 1, certificate="hull1-even-quotient-frobenius"
    ),
    Reference(
        "t1-r17-n8-q9-hull1", 17, 1, 8, 9, HULL_ONE, 34, 17, 11, 1, certificate="hull1-even-quotient-frobenius"
    ),
    Reference(
        "t1-r17-n2-q5-hull1", 17, 1, 2, 5, HULL_ONE, 34, 17, 11, 1, certificate="hull1-even-quotient-frobenius"
    ),
)

# predicted distances checked by the N = 2 scan
CONJECTURE_CHECKS = {3: 3, 5: 5, 13: 9}
