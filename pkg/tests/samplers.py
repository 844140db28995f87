"""Seeded generators of test inputs for the representation tools."""

import numpy as np

from charvar.exact_arith import RootOfUnity, enumerate_roots
from charvar.rep_lab import EigenConfig, build_representation
from charvar.torus_groups import GroupSpec

EIGENVALUE_POOL = [1, -1, 2, -2, 0.5, 1j, -1j, 3]


def random_config(rng, m=None, r=None, sign=None, max_n=7):
    m = int(rng.integers(1, 4)) if m is None else m
    r = int(rng.integers(2, 4)) if r is None else r
    sign = int(rng.choice([1, -1])) if sign is None else sign
    ns = tuple(int(x) for x in rng.integers(1, max_n + 1, size=r))
    roots = []
    for n in ns:
        pool = enumerate_roots(n, sign)
        roots.append(tuple(pool[int(i)] for i in rng.integers(0, n, size=m)))
    return EigenConfig(GroupSpec(ns), tuple(roots), sign)


def random_rep(rng, **kwargs):
    config = random_config(rng, **kwargs)
    return config, build_representation(config, seed=rng)


def jordan_matrix(rng, max_size=4):
    """Random conjugate of a Jordan form; returns (A, number_of_blocks)."""
    m = int(rng.integers(1, max_size + 1))
    blocks, left = [], m
    while left:
        size = int(rng.integers(1, left + 1))
        blocks.append(size)
        left -= size
    lams = rng.choice(len(EIGENVALUE_POOL), size=len(blocks))
    j = np.zeros((m, m), dtype=complex)
    pos = 0
    for size, li in zip(blocks, lams):
        lam = EIGENVALUE_POOL[int(li)]
        for t in range(size):
            j[pos + t, pos + t] = lam
            if t + 1 < size:
                j[pos + t, pos + t + 1] = 1
        pos += size
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)) + 2 * np.eye(m)
    return g @ j @ np.linalg.inv(g), len(blocks)


def unit_root(q: RootOfUnity) -> complex:
    return q.to_complex()
