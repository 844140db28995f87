"""Counting irreducible components of representation varieties.

Each count is available through a closed formula and an explicit enumeration
of eigenvalue data. The enumerations count orbits by hashing canonical
representatives and recount them with Burnside's lemma as an internal audit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import NamedTuple, Sequence

from .errors import AuditMismatch, BudgetExceeded, NotApplicable
from .exact_arith import RootOfUnity, enumerate_roots
from .torus_groups import GroupKind, GroupSpec, classify

__all__ = [
    "DEFAULT_BUDGET",
    "EigenTuple",
    "SubsetTuple",
    "SignTally",
    "CensusReport",
    "RootClasses",
    "BoundCheck",
    "sl2_components_formula",
    "sl2_components_enumerate",
    "free_product_components_gl",
    "nth_root_classes",
    "de_components",
    "gl2_irr_components",
    "mccrudden_bound_check",
    "component_dimension",
]

DEFAULT_BUDGET = 10**7


def _as_spec(spec) -> GroupSpec:
    return spec if isinstance(spec, GroupSpec) else GroupSpec(tuple(spec))


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        raise BudgetExceeded(f"{what} needs {size} items, budget is {budget}")


@dataclass(frozen=True)
class EigenTuple:
    """Eigenvalue choice ``(l_1, ..., l_r)`` with every ``l_i ** n_i`` equal to ``sign``."""

    entries: tuple[RootOfUnity, ...]
    sign: int

    def noncentral_count(self) -> int:
        return sum(not q.is_central for q in self.entries)

    def to_json(self) -> dict:
        return {"sign": self.sign, "entries": [q.to_json() for q in self.entries]}


@dataclass(frozen=True)
class SubsetTuple:
    """One set of ``m`` distinct ``n_i``-th roots of unity per generator."""

    subsets: tuple[tuple[RootOfUnity, ...], ...]

    def to_json(self) -> dict:
        return {"subsets": [[q.to_json() for q in s] for s in self.subsets]}


@dataclass(frozen=True)
class SignTally:
    total_orbits: int
    exceptional_orbits: int
    component_count: int

    def to_json(self) -> dict:
        return {
            "total_orbits": self.total_orbits,
            "exceptional_orbits": self.exceptional_orbits,
            "component_count": self.component_count,
        }


@dataclass(frozen=True)
class CensusReport:
    total_orbits: int
    exceptional_orbits: int
    component_count: int
    per_sign: dict[int, SignTally] = field(default_factory=dict)
    pre_quotient: int | None = None
    witnesses: tuple | None = None

    def __post_init__(self):
        if self.component_count != self.total_orbits - self.exceptional_orbits:
            raise ValueError("component_count must equal total_orbits - exceptional_orbits")
        if min(self.total_orbits, self.exceptional_orbits, self.component_count) < 0:
            raise ValueError("counts must be nonnegative")

    def to_json(self, witness: bool = False) -> dict:
        out = {
            "total_orbits": self.total_orbits,
            "exceptional_orbits": self.exceptional_orbits,
            "component_count": self.component_count,
        }
        if self.per_sign:
            out["per_sign"] = {
                ("+1" if s > 0 else "-1"): tally.to_json() for s, tally in sorted(self.per_sign.items(), reverse=True)
            }
        if self.pre_quotient is not None:
            out["pre_quotient"] = self.pre_quotient
        if witness and self.witnesses is not None:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        return out


# -- SL(2, C) ---------------------------------------------------------------


def sl2_components_formula(spec: GroupSpec | Sequence[int]) -> int:
    """Closed-form component count of the irreducible SL(2, C) locus.

    Valid when at most one exponent is even; :class:`NotApplicable` otherwise.
    """
    spec = _as_spec(spec)
    if spec.r < 2:
        raise NotApplicable("need at least two generators")
    evens = sum(n % 2 == 0 for n in spec)
    if evens >= 2:
        raise NotApplicable(f"{spec} has {evens} even exponents; no closed formula")
    r = spec.r
    value = r - 2 - sum(spec) + Fraction(math.prod(n + 1 for n in spec), 2 ** (r - 1))
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"formula gave non-integral or negative value {value} for {spec}")
    return int(value)


def _fixed_by_inversion(k: int, modulus: int) -> bool:
    return (-k) % modulus == k


def _burnside_inversion_orbits(coords: list[list[int]], moduli: list[int]) -> int:
    # independent recount: sum over sigma in {+-1}^r of |Fix(sigma)| / 2^r
    per_coord = [
        (len(ks), sum(_fixed_by_inversion(k, mod) for k in ks)) for ks, mod in zip(coords, moduli)
    ]
    total = 0
    for sigma in product((0, 1), repeat=len(coords)):
        total += math.prod(fixed if s else size for (size, fixed), s in zip(per_coord, sigma))
    orbits, rem = divmod(total, 2 ** len(coords))
    if rem:
        raise AuditMismatch(f"Burnside sum {total} not divisible by {2 ** len(coords)}")
    return orbits


def sl2_components_enumerate(
    spec: GroupSpec | Sequence[int],
    budget: int = DEFAULT_BUDGET,
    witnesses: bool = False,
) -> CensusReport:
    """Enumerate eigenvalue tuples and count irreducible components.

    Coordinate ``i`` is encoded as ``k`` modulo ``2 n_i`` (angle ``k / 2n_i``);
    even ``k`` gives the ``+1`` tuples and odd ``k`` the ``-1`` tuples.
    Inverting an eigenvalue maps ``k`` to ``-k``, so the least of the two is a
    canonical orbit label per coordinate. An orbit counts as a component when
    at least two coordinates are different from +-1.
    """
    spec = _as_spec(spec)
    if spec.r < 2:
        raise ValueError("need at least two generators")
    moduli = [2 * n for n in spec]
    _check_budget(2 * math.prod(spec), budget, f"enumeration for {spec}")

    per_sign: dict[int, SignTally] = {}
    reps = []
    for sign, parity in ((1, 0), (-1, 1)):
        target = Fraction(0) if sign == 1 else Fraction(1, 2)
        coords = [[k for k in range(mod) if k % 2 == parity] for mod in moduli]
        orbits = set()
        for tup in product(*coords):
            orbits.add(tuple(min(k, (-k) % mod) for k, mod in zip(tup, moduli)))
        audit = _burnside_inversion_orbits(coords, moduli)
        if audit != len(orbits):
            raise AuditMismatch(f"{spec} sign {sign}: hashing found {len(orbits)} orbits, Burnside {audit}")
        exceptional = 0
        for label in sorted(orbits):
            tup = EigenTuple(tuple(RootOfUnity.of(k, mod) for k, mod in zip(label, moduli)), sign)
            if any((q**n).angle != target for q, n in zip(tup.entries, spec)):
                raise AuditMismatch(f"orbit label {label} mixes +1 and -1 powers")
            if tup.noncentral_count() < 2:
                exceptional += 1
            elif witnesses:
                reps.append(tup)
        per_sign[sign] = SignTally(len(orbits), exceptional, len(orbits) - exceptional)

    total = sum(t.total_orbits for t in per_sign.values())
    exceptional = sum(t.exceptional_orbits for t in per_sign.values())
    return CensusReport(
        total_orbits=total,
        exceptional_orbits=exceptional,
        component_count=total - exceptional,
        per_sign=per_sign,
        witnesses=tuple(reps) if witnesses else None,
    )


def component_dimension(m: int, r: int) -> int:
    """Stated dimension ``(m-1)(rm-m-1)`` of a top component; an annotation only."""
    return (m - 1) * (r * m - m - 1)


# -- GL(m, C) ----------------------------------------------------------------


def free_product_components_gl(m: int, spec: GroupSpec | Sequence[int]) -> int:
    """Component count ``prod_i C(m + n_i - 1, m)`` for a free product of cyclic groups."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    spec = _as_spec(spec)
    return math.prod(math.comb(m + n - 1, m) for n in spec)


class RootClasses(NamedTuple):
    count: int
    representatives: list[tuple[RootOfUnity, ...]]


def nth_root_classes(m: int, n: int) -> RootClasses:
    """Conjugacy classes of ``y`` in GL(m, C) with ``y ** n == I``.

    Each class is labelled by its eigenvalue multiset, given sorted by angle.
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    reps = list(combinations_with_replacement(enumerate_roots(n, 1), m))
    count = math.comb(m + n - 1, n - 1)
    if count != len(reps):
        raise AuditMismatch(f"binomial count {count} != enumerated {len(reps)}")
    return RootClasses(count, reps)


def _shift_fixes(subset: tuple[int, ...], k: int, n: int) -> bool:
    return tuple(sorted((j + k) % n for j in subset)) == subset


def de_components(
    m: int,
    spec: GroupSpec | Sequence[int],
    budget: int = DEFAULT_BUDGET,
    witnesses: bool = False,
) -> CensusReport | None:
    """Path components of the distinct-eigenvalue locus in GL(m, C).

    Returns ``None`` when ``m > min(n_i)``, where the locus is empty.
    Components of the cyclic free product are eigenvalue-subset tuples; the
    result is the number of orbits of those tuples under the cyclic shift
    ``k . S_i = exp(2 pi i k / n_i) S_i``, with ``k`` running over
    ``Z / lcm(n_i)``.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    spec = _as_spec(spec)
    if m > min(spec):
        return None
    ns = list(spec)
    period = math.lcm(*ns)
    pre = math.prod(math.comb(n, m) for n in ns)
    audit_work = period * sum(math.comb(n, m) for n in ns)
    _check_budget(max(pre, audit_work), budget, f"Z-orbit enumeration for m={m}, {spec}")

    coords = [list(combinations(range(n), m)) for n in ns]
    masks = [[sum(1 << j for j in c) for c in cs] for cs in coords]
    fulls = [(1 << n) - 1 for n in ns]

    def step(tup):
        # k = 1: rotate every subset one notch around its circle of roots
        return tuple(((x << 1) | (x >> (n - 1))) & full for x, n, full in zip(tup, ns, fulls))

    seen: set = set()
    orbits = []
    for tup in product(*masks):
        if tup in seen:
            continue
        orbit = [tup]
        cur = step(tup)
        while cur != tup:
            orbit.append(cur)
            cur = step(cur)
        if period % len(orbit):
            raise AuditMismatch(f"orbit length {len(orbit)} does not divide {period}")
        seen.update(orbit)
        orbits.append(min(orbit))
    if len(seen) != pre:
        raise AuditMismatch(f"enumerated {len(seen)} subset tuples, expected {pre}")

    fixed_total = sum(
        math.prod(sum(_shift_fixes(s, k, n) for s in cs) for cs, n in zip(coords, ns)) for k in range(period)
    )
    audit, rem = divmod(fixed_total, period)
    if rem or audit != len(orbits):
        raise AuditMismatch(f"orbit walk found {len(orbits)} orbits, Burnside {fixed_total}/{period}")

    reps = None
    if witnesses:
        reps = tuple(
            SubsetTuple(
                tuple(tuple(RootOfUnity.of(j, n) for j in range(n) if mask >> j & 1) for mask, n in zip(label, ns))
            )
            for label in sorted(orbits)
        )
    return CensusReport(
        total_orbits=len(orbits),
        exceptional_orbits=0,
        component_count=len(orbits),
        pre_quotient=pre,
        witnesses=reps,
    )


def gl2_irr_components(spec: GroupSpec | Sequence[int]) -> int:
    """``floor(n_1/2) * floor(n_2/2)`` for two coprime exponents.

    The same count holds for PGL(2, C).
    """
    spec = _as_spec(spec)
    if spec.r != 2:
        raise NotApplicable(f"needs exactly two generators, got {spec.r}")
    if classify(spec) is not GroupKind.KNOT:
        raise NotApplicable(f"exponents of {spec} are not coprime")
    n1, n2 = spec
    return (n1 // 2) * (n2 // 2)


class BoundCheck(NamedTuple):
    bound_ok: bool
    lhs: int
    rhs: int


def mccrudden_bound_check(m: int, n: int, budget: int = DEFAULT_BUDGET) -> BoundCheck:
    """Check the root-class bound at the identity of GL(m, C).

    ``lhs`` counts classes of n-th roots of I in GL(m); ``rhs`` is ``n`` (the
    central n-th roots) times the number of classes of n-th roots of I in
    SL(m), i.e. eigenvalue multisets whose angles sum to an integer.
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    _check_budget(math.comb(m + n - 1, m), budget, f"root classes for m={m}, n={n}")
    classes = nth_root_classes(m, n)
    special = sum(sum(q.angle for q in rep) % 1 == 0 for rep in classes.representatives)
    rhs = n * special
    return BoundCheck(classes.count <= rhs, classes.count, rhs)
