"""Exact integer and root-of-unity arithmetic, and an integer Smith normal form.

Everything here works on Python ints, so nothing overflows no matter how
large the pivoting products get.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotCoprime

__all__ = [
    "RootOfUnity",
    "IntMatrix",
    "SmithDecomposition",
    "power",
    "inverse",
    "gcd_bezout",
    "multi_bezout",
    "smith_normal_form",
    "enumerate_roots",
]


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The complex number ``exp(2*pi*i*angle)`` with ``angle`` kept in [0, 1).

    Angles are stored as reduced fractions, so equality and hashing are exact.

    >>> RootOfUnity.of(5, 4)
    RootOfUnity(1/4)
    >>> RootOfUnity.of(1, 4) ** 4
    RootOfUnity(0)
    """

    angle: Fraction

    def __post_init__(self):
        object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    @classmethod
    def of(cls, num: int, den: int = 1) -> RootOfUnity:
        return cls(Fraction(num, den))

    @property
    def num(self) -> int:
        return self.angle.numerator

    @property
    def den(self) -> int:
        return self.angle.denominator

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.angle * k)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.angle + other.angle)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.angle)

    @property
    def is_central(self) -> bool:
        """True for +1 and -1, the only scalars D(q) can collapse to in SL(2)."""
        return self.angle in (0, Fraction(1, 2))

    def to_complex(self) -> complex:
        # exact values on the quarter turns keep diagonal examples clean
        quarter = {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}
        if self.angle in quarter:
            return complex(quarter[self.angle])
        return cmath.exp(2j * math.pi * float(self.angle))

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @classmethod
    def from_json(cls, obj: dict) -> RootOfUnity:
        return cls.of(int(obj["num"]), int(obj["den"]))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.angle})"

    def __str__(self) -> str:
        return str(self.angle)


def power(q: RootOfUnity, k: int) -> RootOfUnity:
    return q**k


def inverse(q: RootOfUnity) -> RootOfUnity:
    return q.inverse()


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix must be nonempty, got {self.rows}x{self.cols}")
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ent) != self.rows or any(len(row) != self.cols for row in ent):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        return cls(len(rows), len(rows[0]), tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_diagonal_form(self) -> bool:
        return all(
            self.entries[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> IntMatrix:
        entries = [[int(x) for x in row] for row in obj["entries"]]
        return cls(int(obj["rows"]), int(obj["cols"]), tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class SmithDecomposition:
    """``P @ A @ Q == B`` with unimodular ``P``, ``Q`` and divisibility-chain diagonal ``B``."""

    P: IntMatrix
    B: IntMatrix
    Q: IntMatrix
    factors: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "B": self.B.to_json(),
            "Q": self.Q.to_json(),
            "factors": [str(a) for a in self.factors],
        }


def gcd_bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(|a|, |b|)`` and ``s*a + t*b == g``."""
    old_r, r = abs(a), abs(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    sa = -1 if a < 0 else 1
    sb = -1 if b < 0 else 1
    return old_r, sa * old_s, sb * old_t


def multi_bezout(ns: Sequence[int]) -> list[int]:
    """Coefficients ``b`` with ``sum(b_i * N // n_i) == 1``, ``N = prod(ns)``.

    Raises :class:`NotCoprime` when the cofactors ``N // n_i`` share a divisor,
    which happens exactly when some pair of the ``ns`` is not coprime.
    """
    if not ns:
        raise ValueError("ns must be nonempty")
    if any(n < 1 for n in ns):
        raise ValueError(f"entries must be positive, got {list(ns)}")
    total = math.prod(ns)
    cofactors = [total // n for n in ns]
    g, coeffs = cofactors[0], [1]
    for c in cofactors[1:]:
        g, s, t = gcd_bezout(g, c)
        coeffs = [s * x for x in coeffs] + [t]
    if g != 1:
        raise NotCoprime(f"gcd of cofactors of {list(ns)} is {g}")
    return coeffs


def _pick_pivot(b: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(b)):
        for j in range(t, len(b[0])):
            v = abs(b[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else best[1:]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form by repeated gcd reduction.

    The pivot is always the smallest nonzero ``|entry|`` of the trailing
    submatrix, ties broken by (row, col), so ``P`` and ``Q`` are reproducible.
    """
    m, n = A.rows, A.cols
    b = A.tolist()
    p = [[int(i == j) for j in range(m)] for i in range(m)]
    q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        b[i], b[k] = b[k], b[i]
        p[i], p[k] = p[k], p[i]

    def swap_cols(j, k):
        for row in b:
            row[j], row[k] = row[k], row[j]
        for row in q:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        b[dst] = [x + c * y for x, y in zip(b[dst], b[src])]
        p[dst] = [x + c * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, c):
        for row in b:
            row[dst] += c * row[src]
        for row in q:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            piv = _pick_pivot(b, t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            d = b[t][t]
            clean = True
            for i in range(t + 1, m):
                if b[i][t]:
                    add_row(i, t, -(b[i][t] // d))
                    clean = clean and b[i][t] == 0
            for j in range(t + 1, n):
                if b[t][j]:
                    add_col(j, t, -(b[t][j] // d))
                    clean = clean and b[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if b[i][j] % d),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if b[t][t] < 0:
            b[t] = [-x for x in b[t]]
            p[t] = [-x for x in p[t]]

    factors = tuple(b[k][k] for k in range(min(m, n)))
    return SmithDecomposition(
        P=IntMatrix.from_rows(p),
        B=IntMatrix.from_rows(b),
        Q=IntMatrix.from_rows(q),
        factors=factors,
    )


def enumerate_roots(n: int, sign: int = 1) -> list[RootOfUnity]:
    """All ``q`` with ``q**n == sign``, sorted by angle.

    >>> [str(q) for q in enumerate_roots(4, -1)]
    ['1/8', '3/8', '5/8', '7/8']
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    offset = 0 if sign == 1 else 1
    return [RootOfUnity.of(2 * k + offset, 2 * n) for k in range(n)]

