"""Group-level invariants of ``<g_1, ..., g_r | g_1^n_1 = ... = g_r^n_r>``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import NotCoprime, NotKnot
from .exact_arith import IntMatrix, multi_bezout, smith_normal_form

__all__ = [
    "GroupKind",
    "GroupSpec",
    "Abelianization",
    "AbelianGenerator",
    "classify",
    "presentation_matrix",
    "abelianize",
    "abelian_generator",
]


class GroupKind(str, enum.Enum):
    KNOT = "knot"
    LINK = "link"


@dataclass(frozen=True)
class GroupSpec:
    """Exponent tuple ``(n_1, ..., n_r)``; order is kept exactly as given."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(n) for n in self.exponents)
        if not exps:
            raise ValueError("need at least one exponent")
        if any(n < 1 for n in exps):
            raise ValueError(f"exponents must be >= 1, got {list(exps)}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, *ns: int) -> GroupSpec:
        return cls(tuple(ns))

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Parse ``"5,7"`` style input."""
        try:
            ns = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError:
            raise ValueError(f"exponent list must be comma-separated integers, got {text!r}") from None
        return cls(tuple(ns))

    @property
    def r(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def to_json(self) -> dict:
        return {"n": list(self.exponents)}

    @classmethod
    def from_json(cls, obj: dict) -> GroupSpec:
        return cls(tuple(obj["n"]))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.exponents)) + ")"


@dataclass(frozen=True)
class Abelianization:
    """``Z^free_rank + Z/d_1 + Z/d_2 + ...`` with ``d_1 | d_2 | ...``."""

    free_rank: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianGenerator:
    """``x = sum(b_i * g_i)`` generates the abelianization and ``g_j = (N/n_j) x``."""

    coefficients: tuple[int, ...]
    witness_multipliers: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "witness_multipliers": list(self.witness_multipliers),
        }


def _as_spec(spec) -> GroupSpec:
    return spec if isinstance(spec, GroupSpec) else GroupSpec(tuple(spec))


def classify(spec: GroupSpec | Sequence[int]) -> GroupKind:
    spec = _as_spec(spec)
    if all(math.gcd(a, b) == 1 for a, b in combinations(spec.exponents, 2)):
        return GroupKind.KNOT
    return GroupKind.LINK


def presentation_matrix(spec: GroupSpec | Sequence[int]) -> IntMatrix:
    """The ``r x (r-1)`` relation matrix: column j is ``-n_j e_j + n_{j+1} e_{j+1}``."""
    spec = _as_spec(spec)
    r = spec.r
    if r < 2:
        raise ValueError("a single generator has no relations; its abelianization is Z")
    rows = [[0] * (r - 1) for _ in range(r)]
    for j in range(r - 1):
        rows[j][j] = -spec[j]
        rows[j + 1][j] = spec[j + 1]
    return IntMatrix.from_rows(rows)


def abelianize(spec: GroupSpec | Sequence[int]) -> Abelianization:
    spec = _as_spec(spec)
    if spec.r == 1:
        return Abelianization(free_rank=1, torsion=())
    snf = smith_normal_form(presentation_matrix(spec))
    nonzero = [a for a in snf.factors if a != 0]
    return Abelianization(
        free_rank=spec.r - len(nonzero),
        torsion=tuple(a for a in nonzero if a > 1),
    )


def abelian_generator(spec: GroupSpec | Sequence[int]) -> AbelianGenerator:
    spec = _as_spec(spec)
    total = math.prod(spec.exponents)
    try:
        coeffs = multi_bezout(spec.exponents)
    except NotCoprime as exc:
        raise NotKnot(f"{spec} is a link group; its abelianization is not cyclic") from exc
    return AbelianGenerator(
        coefficients=tuple(coeffs),
        witness_multipliers=tuple(total // n for n in spec.exponents),
    )
