import math
from itertools import combinations, combinations_with_replacement, product

import pytest

from charvar.census import (
    CensusReport,
    de_components,
    free_product_components_gl,
    gl2_irr_components,
    mccrudden_bound_check,
    nth_root_classes,
    sl2_components_enumerate,
    sl2_components_formula,
)
from charvar.errors import BudgetExceeded, NotApplicable
from charvar.exact_arith import RootOfUnity
from oracles import de_orbits_by_closure, multisets, sl2_orbits_by_group_action


# -- SL(2, C) --------------------------------------------------------------------------


def test_sl2_five_seven():
    report = sl2_components_enumerate((5, 7))
    assert (report.total_orbits, report.exceptional_orbits, report.component_count) == (24, 12, 12)
    assert sl2_components_formula((5, 7)) == 12
    # each sign contributes (35 + 7 + 5 + 1) / 4 orbits
    assert report.per_sign[1].total_orbits == 12
    assert report.per_sign[-1].total_orbits == 12


def test_sl2_four_five_per_sign():
    report = sl2_components_enumerate((4, 5))
    assert report.per_sign[1].total_orbits == 9
    assert report.per_sign[-1].total_orbits == 6
    assert report.exceptional_orbits == 9
    assert report.component_count == 6
    assert sl2_components_formula((4, 5)) == 6


def test_sl2_three_three_hand_count():
    # X_+ orbits: {1, (w, w^2)}^2 -> 4, only (w, w) class has two non-central entries;
    # X_- is the image of X_+ under negation, so 1 + 1
    assert sl2_components_enumerate((3, 3)).component_count == 2
    assert sl2_components_formula((3, 3)) == 2


def test_sl2_three_generators():
    assert sl2_orbits_by_group_action((3, 5, 7)) == {1: (24, 17), -1: (24, 17)}
    assert sl2_components_enumerate((3, 5, 7)).component_count == 34
    assert sl2_components_formula((3, 5, 7)) == 34


@pytest.mark.parametrize("ns", [(2, 3), (4, 5), (3, 3), (5, 7), (2, 2), (4, 6), (2, 3, 5), (4, 4, 3), (1, 5), (6, 9, 2)])
def test_sl2_enumeration_matches_orbit_closure(ns):
    report = sl2_components_enumerate(ns)
    oracle = sl2_orbits_by_group_action(ns)
    for sign in (1, -1):
        assert (report.per_sign[sign].total_orbits, report.per_sign[sign].component_count) == oracle[sign]


def test_sl2_formula_matches_enumeration_all_odd():
    for r in (2, 3, 4):
        for ns in product(range(1, 12, 2), repeat=r):
            if r == 4 and max(ns) > 7:
                continue
            assert sl2_components_formula(ns) == sl2_components_enumerate(ns).component_count, ns


def test_sl2_formula_with_one_even_exponent():
    # the closed formula is claimed for one even exponent too; check rather than assume
    for r in (2, 3):
        for ns in product(range(1, 13), repeat=r):
            if sum(n % 2 == 0 for n in ns) == 1:
                assert sl2_components_formula(ns) == sl2_components_enumerate(ns).component_count, ns


def test_sl2_two_generator_count():
    for n1, n2 in product(range(1, 14, 2), repeat=2):
        if math.gcd(n1, n2) == 1:
            assert sl2_components_enumerate((n1, n2)).component_count == (n1 - 1) * (n2 - 1) // 2


def test_exceptional_criterion_matches_subtraction_list_for_odd():
    # 2 + sum(n_i - 1) exceptional orbits when every exponent is odd
    for ns in product(range(1, 10, 2), repeat=3):
        assert sl2_components_enumerate(ns).exceptional_orbits == 2 + sum(n - 1 for n in ns)


def test_sl2_formula_not_applicable():
    with pytest.raises(NotApplicable):
        sl2_components_formula((4, 4))
    with pytest.raises(NotApplicable):
        sl2_components_formula((2, 3, 6))
    with pytest.raises(NotApplicable):
        sl2_components_formula((5,))


def test_sl2_budget():
    with pytest.raises(BudgetExceeded):
        sl2_components_enumerate((5, 7), budget=50)
    assert sl2_components_enumerate((5, 7), budget=70).component_count == 12


def test_sl2_witnesses_are_uniform_sign_and_irreducible_type():
    report = sl2_components_enumerate((4, 5), witnesses=True)
    assert len(report.witnesses) == report.component_count
    for w in report.witnesses:
        target = RootOfUnity.of(0 if w.sign == 1 else 1, 2)
        assert all(q**n == target for q, n in zip(w.entries, (4, 5)))
        assert w.noncentral_count() >= 2


def test_report_is_deterministic():
    a = sl2_components_enumerate((3, 5, 7), witnesses=True)
    b = sl2_components_enumerate((3, 5, 7), witnesses=True)
    assert a == b
    assert a.to_json(witness=True) == b.to_json(witness=True)


def test_census_report_invariant():
    with pytest.raises(ValueError):
        CensusReport(total_orbits=5, exceptional_orbits=2, component_count=2)


# -- GL(m, C) ---------------------------------------------------------------------------


@pytest.mark.parametrize("m, ns, expected", [(2, (2, 3), 18), (2, (5, 7), 420), (1, (4, 9, 2), 72)])
def test_free_product_examples(m, ns, expected):
    assert free_product_components_gl(m, ns) == expected


def test_free_product_matches_multiset_enumeration():
    for m in (1, 2, 3):
        for ns in product(range(1, 6), repeat=2):
            brute = math.prod(len(multisets(n, m)) for n in ns)
            assert free_product_components_gl(m, ns) == brute


def test_nth_root_classes_examples():
    classes = nth_root_classes(2, 2)
    assert classes.count == 3
    assert [[str(q) for q in rep] for rep in classes.representatives] == [["0", "0"], ["0", "1/2"], ["1/2", "1/2"]]
    assert nth_root_classes(1, 5).count == 5
    assert nth_root_classes(3, 2).count == 4


def test_nth_root_classes_against_brute_force():
    for m in range(1, 13):
        for n in range(1, 14 - m):
            classes = nth_root_classes(m, n)
            assert classes.count == len(classes.representatives) == math.comb(m + n - 1, n - 1)
            if m <= 4 and n <= 6:
                got = {tuple(q.angle for q in rep) for rep in classes.representatives}
                assert got == multisets(n, m)


def test_de_components_examples():
    report = de_components(2, (4, 5))
    assert report.pre_quotient == 60
    assert report.component_count == 4
    assert de_components(3, (2, 5)) is None
    assert de_components(2, (5, 7)).component_count == 6


@pytest.mark.parametrize("m, ns", [(2, (4, 5)), (2, (5, 7)), (2, (6, 4)), (3, (3, 4, 5)), (2, (2, 2, 3)), (1, (6, 10))])
def test_de_components_match_orbit_closure(m, ns):
    pre, orbits = de_orbits_by_closure(m, ns)
    report = de_components(m, ns)
    assert report.pre_quotient == pre == math.prod(math.comb(n, m) for n in ns)
    assert report.component_count == orbits


def test_de_components_equal_gl2_formula():
    for n1, n2 in product(range(2, 16), repeat=2):
        if math.gcd(n1, n2) == 1:
            assert de_components(2, (n1, n2)).component_count == gl2_irr_components((n1, n2)), (n1, n2)


def test_de_components_witnesses():
    report = de_components(2, (4, 5), witnesses=True)
    assert len(report.witnesses) == 4
    for w in report.witnesses:
        assert [len(s) for s in w.subsets] == [2, 2]
        assert all(q**n == RootOfUnity.of(0) for s, n in zip(w.subsets, (4, 5)) for q in s)


def test_de_budget():
    with pytest.raises(BudgetExceeded):
        de_components(2, (5, 7), budget=100)


def test_gl2_irr_components():
    assert gl2_irr_components((4, 5)) == 4
    assert gl2_irr_components((3, 5)) == 2
    with pytest.raises(NotApplicable):
        gl2_irr_components((2, 2))
    with pytest.raises(NotApplicable):
        gl2_irr_components((2, 3, 5))


def test_bound_check_examples():
    assert mccrudden_bound_check(1, 3) == (True, 3, 3)
    check = mccrudden_bound_check(2, 2)
    assert check.lhs == 3 and check.bound_ok
    check = mccrudden_bound_check(2, 3)
    assert check.lhs == 6 and check.bound_ok


def test_bound_check_against_enumeration():
    for m in range(1, 5):
        for n in range(1, 8):
            roots = [k for k in range(n)]
            lhs = len({tuple(sorted(t)) for t in product(roots, repeat=m)})
            special = len({tuple(sorted(t)) for t in product(roots, repeat=m) if sum(t) % n == 0})
            check = mccrudden_bound_check(m, n)
            assert (check.lhs, check.rhs) == (lhs, n * special)
            assert check.bound_ok


def test_bound_check_budget():
    with pytest.raises(BudgetExceeded):
        mccrudden_bound_check(6, 30, budget=1000)


def test_combinations_helpers_consistent():
    # sanity for the oracle: sorted ordered tuples give exactly the multisets
    assert len(multisets(4, 2)) == len(list(combinations_with_replacement(range(4), 2)))
    assert len(list(combinations(range(5), 2))) == 10
