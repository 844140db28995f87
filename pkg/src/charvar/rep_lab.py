"""Explicit matrix representations in GL(m, C) and SL(m, C).

Floating point throughout. Tolerances follow a fixed ladder: construction
1e-12, verification 1e-9, path following 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    Ambiguous,
    DeterminantNotOne,
    IllConditioned,
    NonCentral,
    NotDiagonalizable,
    PathDeviation,
    SingularConjugator,
)
from .exact_arith import RootOfUnity
from .torus_groups import GroupSpec

__all__ = [
    "CONSTRUCTION_TOL",
    "VERIFY_TOL",
    "PATH_TOL",
    "Representation",
    "EigenConfig",
    "RelationCheck",
    "EigenSpan",
    "diag_root",
    "build_representation",
    "verify_relations",
    "commutator",
    "max_commutator_norm",
    "is_irreducible_sl2",
    "eigenspan_check",
    "sdr_step",
    "z_flow",
    "path_to_abelian",
    "double_coset_invariant",
]

CONSTRUCTION_TOL = 1e-12
VERIFY_TOL = 1e-9
PATH_TOL = 1e-8
MAX_EIGENBASIS_COND = 1e8


def _as_spec(spec) -> GroupSpec:
    return spec if isinstance(spec, GroupSpec) else GroupSpec(tuple(spec))


@dataclass(frozen=True, eq=False)
class Representation:
    """Generator images ``(A_1, ..., A_r)``, all ``m x m`` complex and invertible."""

    spec: GroupSpec
    matrices: tuple[np.ndarray, ...]
    tol: float = VERIFY_TOL

    def __post_init__(self):
        spec = _as_spec(self.spec)
        mats = tuple(np.array(a, dtype=complex) for a in self.matrices)
        if len(mats) != spec.r:
            raise ValueError(f"{spec} has {spec.r} generators but {len(mats)} matrices were given")
        m = mats[0].shape[0] if mats and mats[0].ndim == 2 else None
        for a in mats:
            if a.ndim != 2 or a.shape != (m, m):
                raise ValueError(f"matrices must all be square of the same size, got {a.shape}")
            if not np.all(np.isfinite(a)):
                raise ValueError("matrix entries must be finite")
            if abs(np.linalg.det(a)) <= self.tol:
                raise ValueError("matrices must be invertible")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        for a in mats:
            a.setflags(write=False)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "matrices", mats)

    @property
    def m(self) -> int:
        return self.matrices[0].shape[0]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.tol == other.tol
            and all(np.array_equal(a, b) for a, b in zip(self.matrices, other.matrices))
        )

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "n": list(self.spec.exponents),
            "m": self.m,
            "matrices": [[[float(z.real), float(z.imag)] for z in a.ravel()] for a in self.matrices],
            "tol": self.tol,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Representation:
        m = int(obj["m"])
        mats = []
        for raw in obj["matrices"]:
            arr = np.array(raw, dtype=float)
            # accept flat row-major [[re, im], ...] and nested rows [[[re, im], ...], ...]
            arr = arr.reshape(m, m, 2)
            mats.append(arr[..., 0] + 1j * arr[..., 1])
        return cls(GroupSpec(tuple(obj["n"])), tuple(mats), float(obj.get("tol", VERIFY_TOL)))


@dataclass(frozen=True)
class EigenConfig:
    """Diagonal data for each generator plus optional conjugators.

    ``roots[i]`` lists the ``m`` eigenvalues of generator ``i`` (with
    multiplicity); each must satisfy ``q ** n_i == sign``.
    """

    spec: GroupSpec
    roots: tuple[tuple[RootOfUnity, ...], ...]
    sign: int = 1
    conjugators: tuple[np.ndarray, ...] | None = None

    def __post_init__(self):
        spec = _as_spec(self.spec)
        roots = tuple(tuple(q if isinstance(q, RootOfUnity) else RootOfUnity(q) for q in qs) for qs in self.roots)
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if len(roots) != spec.r:
            raise ValueError(f"need {spec.r} root lists, got {len(roots)}")
        if len({len(qs) for qs in roots}) != 1 or not roots[0]:
            raise ValueError("every generator needs the same positive number of eigenvalues")
        target = RootOfUnity.of(0 if self.sign == 1 else 1, 2)
        for qs, n in zip(roots, spec):
            for q in qs:
                if q**n != target:
                    raise ValueError(f"{q} raised to {n} is not {'+1' if self.sign == 1 else '-1'}")
        conj = self.conjugators
        if conj is not None:
            conj = tuple(np.array(g, dtype=complex) for g in conj)
            m = len(roots[0])
            if len(conj) != spec.r or any(g.shape != (m, m) for g in conj):
                raise ValueError(f"need {spec.r} conjugators of shape {(m, m)}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "conjugators", conj)

    @property
    def m(self) -> int:
        return len(self.roots[0])

    @classmethod
    def from_json(cls, obj: dict) -> EigenConfig:
        roots = tuple(tuple(RootOfUnity.from_json(q) for q in qs) for qs in obj["roots"])
        conj = None
        if obj.get("conjugators") is not None:
            m = len(roots[0])
            conj = []
            for raw in obj["conjugators"]:
                arr = np.array(raw, dtype=float).reshape(m, m, 2)
                conj.append(arr[..., 0] + 1j * arr[..., 1])
            conj = tuple(conj)
        return cls(GroupSpec(tuple(obj["n"])), roots, int(obj.get("sign", 1)), conj)

    def to_json(self) -> dict:
        out = {
            "n": list(self.spec.exponents),
            "roots": [[q.to_json() for q in qs] for qs in self.roots],
            "sign": self.sign,
        }
        if self.conjugators is not None:
            out["conjugators"] = [[[float(z.real), float(z.imag)] for z in g.ravel()] for g in self.conjugators]
        return out


def diag_root(*angles: RootOfUnity | float) -> np.ndarray:
    """Diagonal matrix with entries ``exp(2 pi i q)``."""
    vals = [q.to_complex() if isinstance(q, RootOfUnity) else complex(np.exp(2j * np.pi * q)) for q in angles]
    return np.diag(np.array(vals, dtype=complex))


def _random_conjugator(rng: np.random.Generator, m: int) -> np.ndarray:
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return g / np.sqrt(2.0)


def build_representation(
    config: EigenConfig,
    seed: int | np.random.Generator | None = 0,
    tol: float = VERIFY_TOL,
    singular_threshold: float = 1e-8,
) -> Representation:
    """``A_i = g_i D_i g_i^-1`` from the configured eigenvalues.

    Missing conjugators are drawn as complex Gaussian matrices from ``seed``.
    """
    rng = np.random.default_rng(seed)
    m = config.m
    conj = config.conjugators
    if conj is None:
        conj = tuple(_random_conjugator(rng, m) for _ in range(config.spec.r))
    mats = []
    for i, (g, qs) in enumerate(zip(conj, config.roots)):
        if abs(np.linalg.det(g)) < singular_threshold:
            raise SingularConjugator(f"conjugator {i} has |det| below {singular_threshold}")
        d = diag_root(*qs)
        mats.append(g @ d @ np.linalg.inv(g))
    return Representation(config.spec, tuple(mats), tol)


class RelationCheck(NamedTuple):
    max_residual: float
    omega: complex | None  # None when the powers are not a common scalar

    @property
    def central(self) -> bool:
        return self.omega is not None


def verify_relations(rep: Representation) -> RelationCheck:
    """Residual of ``A_i^n_i == A_j^n_j`` and the central charge if there is one.

    ``omega`` is returned when every ``A_i ** n_i`` is within ``rep.tol``
    (relative to ``max(1, |omega|)``) of ``omega * I``; ``omega == 1`` means
    the tuple also represents the free product of the cyclic groups.
    """
    powers = [np.linalg.matrix_power(a, n) for a, n in zip(rep.matrices, rep.spec)]
    residual = 0.0
    for i in range(len(powers)):
        for j in range(i + 1, len(powers)):
            residual = max(residual, float(np.linalg.norm(powers[i] - powers[j])))
    m = rep.m
    omega = complex(np.mean([np.trace(p) / m for p in powers]))
    eye = np.eye(m)
    scale = max(1.0, abs(omega))
    dev = max(float(np.linalg.norm(p - omega * eye)) for p in powers)
    return RelationCheck(residual, omega if dev <= rep.tol * scale else None)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)


def max_commutator_norm(mats: Sequence[np.ndarray]) -> float:
    """Largest ``||[A_i, A_j] - I||_F`` over pairs."""
    eye = np.eye(mats[0].shape[0])
    norms = [
        float(np.linalg.norm(commutator(mats[i], mats[j]) - eye))
        for i in range(len(mats))
        for j in range(i + 1, len(mats))
    ]
    return max(norms, default=0.0)


def _has_common_eigenvector(mats: Sequence[np.ndarray], tol: float) -> bool:
    nonscalar = [a for a in mats if np.linalg.norm(a - np.trace(a) / 2 * np.eye(2)) > tol]
    if not nonscalar:
        return True
    _, vecs = np.linalg.eig(nonscalar[0])
    for v in vecs.T:
        v = v / np.linalg.norm(v)
        if all(np.linalg.norm(a @ v - (v.conj() @ a @ v) * v) <= tol * max(1.0, np.linalg.norm(a)) for a in nonscalar):
            return True
    return False


def is_irreducible_sl2(rep: Representation) -> bool:
    """Irreducibility test for a polystable 2-dimensional representation.

    Irreducible exactly when some commutator is nontrivial. The verdict is
    cross-checked against a search for a common eigenvector.
    """
    if rep.m != 2:
        raise ValueError(f"needs 2x2 matrices, got m={rep.m}")
    c = max_commutator_norm(rep.matrices)
    if rep.tol <= c <= 10 * rep.tol:
        raise Ambiguous(f"commutator norm {c:.3e} lies in [tol, 10 tol]; tighten the input")
    irreducible = c > rep.tol
    if irreducible == _has_common_eigenvector(rep.matrices, math.sqrt(rep.tol)):
        raise Ambiguous("commutator test and common-eigenvector test disagree; input may not be polystable")
    return irreducible


# -- eigenspaces ---------------------------------------------------------------


def _cluster(values: np.ndarray, radius: float) -> list[np.ndarray]:
    """Single-linkage clusters of complex numbers closer than ``radius``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) < radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [values[idx] for idx in groups.values()]


class _Eigenbasis(NamedTuple):
    eigenvalues: list[complex]  # one entry per basis column
    basis: np.ndarray


def _eigen_centers(a: np.ndarray) -> list[complex]:
    """Distinct eigenvalues of ``a``, one per cluster of computed values.

    A defective eigenvalue splits by roughly ``eps ** (1/size)``, so nearly
    equal values are merged; the cluster mean is accurate because the trace is.
    """
    m = a.shape[0]
    eps = np.finfo(float).eps
    vals = np.linalg.eigvals(a)
    radius = max(1e-6, 100 * eps ** (1.0 / m)) * max(1.0, float(np.max(np.abs(vals))))
    return [complex(np.mean(group)) for group in _cluster(vals, radius)]


def _eigenbasis(a: np.ndarray, rank_tol: float = 1e-7, centers: list[complex] | None = None) -> _Eigenbasis:
    """Orthonormal bases of every eigenspace, stacked column-wise."""
    m = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a, 2)))
    if centers is None:
        centers = _eigen_centers(a)
    lams, cols = [], []
    for lam in centers:
        shifted = a - lam * np.eye(m)
        _, s, vh = np.linalg.svd(shifted)
        null = vh[s <= rank_tol * scale].conj().T
        if null.shape[1] == 0:
            raise IllConditioned(f"no null vector near eigenvalue {lam:.6g} (smallest singular value {s[-1]:.3e})")
        resid = float(np.linalg.norm(shifted @ null))
        if resid > rank_tol * scale * math.sqrt(m):
            raise IllConditioned(f"eigenvector residual {resid:.3e} exceeds tolerance")
        lams.extend([lam] * null.shape[1])
        cols.append(null)
    return _Eigenbasis(lams, np.hstack(cols))


def _span_rank(basis: np.ndarray, tol: float) -> int:
    if basis.size == 0:
        return 0
    s = np.linalg.svd(basis, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


class EigenSpan(NamedTuple):
    dim_A: int
    dim_Ak: int
    equal: bool


def eigenspan_check(a: np.ndarray, k: int, rank_tol: float = 1e-7) -> EigenSpan:
    """Compare the span of eigenvectors of ``A`` with that of ``A ** k``.

    ``equal`` requires both equal dimensions and equal subspaces.
    """
    a = np.asarray(a, dtype=complex)
    if k == 0:
        raise ValueError("k must be nonzero")
    if abs(np.linalg.det(a)) == 0:
        raise ValueError("A must be invertible")
    ak = np.linalg.matrix_power(a, k)
    centers = _eigen_centers(a)
    # eigenvalues of A**k are the k-th powers of those of A; taking them from
    # the clusters of A avoids re-clustering the amplified splitting of A**k
    powered = np.array([c**k for c in centers])
    merged = _cluster(powered, 1e-6 * max(1.0, float(np.max(np.abs(powered)))))
    basis_a = _eigenbasis(a, rank_tol, centers).basis
    basis_ak = _eigenbasis(ak, rank_tol, [complex(np.mean(g)) for g in merged]).basis
    dim_a = _span_rank(basis_a, rank_tol)
    dim_ak = _span_rank(basis_ak, rank_tol)
    joint = _span_rank(np.hstack([basis_a, basis_ak]), rank_tol)
    return EigenSpan(dim_a, dim_ak, dim_a == dim_ak == joint)


# -- deformations --------------------------------------------------------------


def _central_charge(rep: Representation) -> complex:
    check = verify_relations(rep)
    if not check.central:
        raise NonCentral("generator powers are not a common scalar matrix")
    return check.omega


def sdr_step(rep: Representation, s: float) -> Representation:
    """Scale generator ``i`` by ``|omega| ** (-s / n_i)``.

    At ``s = 1`` the central charge lands on the unit circle; at ``s = 0``
    nothing moves.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    lam = abs(_central_charge(rep))
    mats = tuple(a * lam ** (-s / n) for a, n in zip(rep.matrices, rep.spec))
    return replace(rep, matrices=mats)


def z_flow(rep: Representation, k: int) -> Representation:
    """Multiply generator ``i`` by ``exp(2 pi i k / n_i)``; needs ``|omega| == 1``."""
    omega = _central_charge(rep)
    if abs(abs(omega) - 1.0) > rep.tol:
        raise NonCentral(f"|omega| = {abs(omega):.6g}; apply sdr_step first")
    mats = tuple(a * RootOfUnity.of(k, n).to_complex() for a, n in zip(rep.matrices, rep.spec))
    return replace(rep, matrices=mats)


def _principal_log_ok(g: np.ndarray) -> bool:
    vals = np.linalg.eigvals(g)
    return not np.any((vals.real < 0) & (np.abs(vals.imag) <= 1e-9 * np.abs(vals)))


def _diagonalizer(a: np.ndarray, rng: np.random.Generator, retries: int = 8) -> np.ndarray:
    """A matrix ``g`` with ``g^-1 A g`` diagonal and a principal log for ``g^-1``."""
    try:
        g = _eigenbasis(a).basis
    except IllConditioned as exc:
        raise NotDiagonalizable(str(exc)) from exc
    m = a.shape[0]
    if g.shape[1] != m:
        raise NotDiagonalizable(f"eigenvectors span only {g.shape[1]} of {m} dimensions")
    cond = np.linalg.cond(g)
    if cond > MAX_EIGENBASIS_COND:
        raise NotDiagonalizable(f"eigenvector basis condition number {cond:.3e}")
    for _ in range(retries + 1):
        if _principal_log_ok(np.linalg.inv(g)):
            return g
        # diagonal phases commute with the diagonal form; zero-sum keeps det fixed
        theta = rng.uniform(-np.pi / 2, np.pi / 2, size=m)
        theta -= theta.mean()
        g = g @ np.diag(np.exp(1j * theta))
    raise NotDiagonalizable("no conjugator with a principal logarithm after retries")


def path_to_abelian(
    rep: Representation,
    steps: int = 20,
    seed: int | np.random.Generator | None = 0,
) -> list[Representation]:
    """Deform ``rep`` to a tuple of commuting (diagonal) matrices.

    Generator ``i`` follows ``h_i(t) A_i h_i(t)^-1`` with
    ``h_i(t) = expm(t logm(g_i^-1))``, where ``g_i`` diagonalizes ``A_i``.
    Conjugation fixes the central charge, so the relations hold along the
    whole path.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if rep.m > 4:
        raise ValueError(f"path construction supports m <= 4, got m={rep.m}")
    rng = np.random.default_rng(seed)
    # diagonalizability first: a defective generator is never central anyway
    logs = []
    for a in rep.matrices:
        g = _diagonalizer(a, rng)
        logs.append(scipy.linalg.logm(np.linalg.inv(g)))
    base = verify_relations(rep)
    if not base.central:
        raise NonCentral("generator powers are not a common scalar matrix")

    budget = max(100 * base.max_residual, rep.tol)
    path = [rep]
    for step in range(1, steps + 1):
        t = step / steps
        mats = []
        for a, log in zip(rep.matrices, logs):
            h = scipy.linalg.expm(t * log)
            mats.append(h @ a @ np.linalg.inv(h))
        point = replace(rep, matrices=tuple(mats))
        res = verify_relations(point).max_residual
        if res > budget:
            raise PathDeviation(f"relation residual {res:.3e} at t={t:.3f} exceeds {budget:.3e}")
        path.append(point)
    return path


def double_coset_invariant(a: np.ndarray, tol: float = VERIFY_TOL) -> complex:
    """Entry product ``a * d`` of a determinant-one 2x2 matrix.

    It is unchanged by left and right multiplication with diagonal
    determinant-one matrices; ``b * c`` equals this value minus one.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"needs a 2x2 matrix, got shape {a.shape}")
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(det - 1) >= tol:
        raise DeterminantNotOne(f"det = {det:.6g}")
    return complex(a[0, 0] * a[1, 1])
