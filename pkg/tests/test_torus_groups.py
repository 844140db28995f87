import math
from itertools import combinations, product

import pytest

from charvar.errors import NotKnot
from charvar.torus_groups import (
    GroupKind,
    GroupSpec,
    abelian_generator,
    abelianize,
    classify,
    presentation_matrix,
)
from oracles import determinantal_factors


@pytest.mark.parametrize(
    "ns, kind",
    [((2, 3), GroupKind.KNOT), ((2, 4), GroupKind.LINK), ((3, 5, 7), GroupKind.KNOT), ((6,), GroupKind.KNOT)],
)
def test_classify(ns, kind):
    assert classify(GroupSpec(ns)) is kind


def test_presentation_matrix_examples():
    assert presentation_matrix((2, 3)).tolist() == [[-2], [3]]
    assert presentation_matrix((2, 3, 4)).tolist() == [[-2, 0], [3, -3], [0, 4]]
    assert presentation_matrix((5, 7)).tolist() == [[-5], [7]]
    with pytest.raises(ValueError):
        presentation_matrix((5,))


def test_abelianize_examples():
    assert abelianize((5, 7)).to_json() == {"free_rank": 1, "torsion": []}
    assert abelianize((6, 10)).to_json() == {"free_rank": 1, "torsion": [2]}
    assert abelianize((7,)).to_json() == {"free_rank": 1, "torsion": []}


def test_abelianize_three_generators_against_minor_oracle():
    rows = presentation_matrix((2, 4, 3)).tolist()
    oracle = [a for a in determinantal_factors(rows) if a > 1]
    assert oracle == [2]
    assert list(abelianize((2, 4, 3)).torsion) == oracle


def test_two_generator_torsion_is_gcd():
    for n1, n2 in product(range(1, 25), repeat=2):
        g = math.gcd(n1, n2)
        assert abelianize((n1, n2)).torsion == ((g,) if g > 1 else ())


def test_torsion_free_iff_knot_exhaustive():
    for r in range(2, 5):
        for ns in product(range(1, 13), repeat=r):
            ab = abelianize(ns)
            assert ab.free_rank == 1
            assert (not ab.torsion) == (classify(ns) is GroupKind.KNOT), ns
            assert all(b % a == 0 for a, b in zip(ab.torsion, ab.torsion[1:]))


@pytest.mark.parametrize("ns", [(1, 4), (4, 6, 10), (2, 2, 2, 2), (6, 10, 15), (1, 1, 1)])
def test_abelianize_matches_minor_oracle(ns):
    oracle = tuple(a for a in determinantal_factors(presentation_matrix(ns).tolist()) if a > 1)
    assert abelianize(ns).torsion == oracle


@pytest.mark.parametrize("ns, multipliers", [((2, 3), (3, 2)), ((2, 3, 5), (15, 10, 6)), ((4, 9, 25, 7), None)])
def test_abelian_generator(ns, multipliers):
    gen = abelian_generator(ns)
    total = math.prod(ns)
    if multipliers is not None:
        assert gen.witness_multipliers == multipliers
    assert sum(b * (total // n) for b, n in zip(gen.coefficients, ns)) == 1


def test_abelian_generator_two_generators_value():
    assert abelian_generator((2, 3)).coefficients == (1, -1)


def test_abelian_generator_relations_hold_in_cokernel():
    # g_j = (N/n_j) x means n_j g_j = N x is the same element for every j
    for ns in [(2, 3), (3, 5, 7), (2, 9, 5, 7)]:
        gen = abelian_generator(ns)
        total = math.prod(ns)
        for n, mult in zip(ns, gen.witness_multipliers):
            assert n * mult == total


def test_abelian_generator_rejects_links():
    with pytest.raises(NotKnot):
        abelian_generator((2, 4))
    with pytest.raises(NotKnot):
        abelian_generator((3, 5, 9))


def test_groupspec_parse_and_validate():
    assert GroupSpec.parse("5, 7").exponents == (5, 7)
    assert GroupSpec.from_json({"n": [2, 3]}).to_json() == {"n": [2, 3]}
    with pytest.raises(ValueError):
        GroupSpec.parse("5,x")
    with pytest.raises(ValueError):
        GroupSpec((0, 3))
    with pytest.raises(ValueError):
        GroupSpec(())


def test_pairwise_definition_of_knot():
    for ns in product(range(1, 9), repeat=3):
        expected = all(math.gcd(a, b) == 1 for a, b in combinations(ns, 2))
        assert (classify(ns) is GroupKind.KNOT) == expected
