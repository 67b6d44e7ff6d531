import random

import pytest
from hypothesis import given, settings, strategies as st

from foliakit.algebra import MPoly
from foliakit.dicritical import (Case, FactoredPair, RestrictionKind, classify, count_strict_inequalities,
                                 normalize_ordering, restriction_integral)
from foliakit.errors import PreconditionError, StructuralError
from foliakit.models import INTEGRABLE_F, INTEGRABLE_G, INTEGRABLE_H, INTEGRABLE_PAIR, RADIAL_PAIR, SADDLE_PAIR, XYZ
from strategies import random_pair

x, y, z = MPoly.gens(*XYZ)


def verdict_or_error(fp):
    try:
        return classify(fp).case
    except PreconditionError:
        return "precondition"


def test_pair_reproduces_the_integrals():
    assert INTEGRABLE_PAIR.validate_against(INTEGRABLE_F, INTEGRABLE_G)
    assert (INTEGRABLE_PAIR.p, INTEGRABLE_PAIR.q, INTEGRABLE_PAIR.r) == (1, 1, 1)


def test_pair_validation():
    with pytest.raises(StructuralError):
        FactoredPair([(x, 1, 1)], [(2 * x, 1)], [(y, 1)])
    with pytest.raises(StructuralError):
        FactoredPair([(x, 0, 1)], [(y, 1)], [(z, 1)])
    with pytest.raises(StructuralError):
        FactoredPair([(x, 1, 1)])
    with pytest.raises(StructuralError):
        FactoredPair(only_f=[(x, 1)])
    with pytest.raises(StructuralError):
        FactoredPair([(MPoly.const(3, XYZ), 1, 1)], [(x, 1)], [(y, 1)])


def test_integrable_pair_witness_is_the_rational_integral():
    v = classify(INTEGRABLE_PAIR)
    assert v.case is Case.CASE3 and v.dicritical
    assert v.witness.surface == z
    assert v.witness.as_rational_function() == INTEGRABLE_H
    assert v.witness.kind is RestrictionKind.MEROMORPHIC


def test_saddle_pair_is_dicritical():
    v = classify(SADDLE_PAIR)
    assert v.dicritical and v.witness.as_rational_function() == x / y


def test_radial_pair_is_not_dicritical():
    assert classify(RADIAL_PAIR).case is Case.NONE


def test_one_jump_without_free_factors_is_not_dicritical():
    v = classify(FactoredPair([(x, 2, 1), (y, 1, 1)]))
    assert v.case is Case.NONE


def test_two_jumps_pick_the_middle_block():
    fp = FactoredPair([(z, 3, 1), (x, 1, 3), (y, 1, 1)])
    assert count_strict_inequalities(fp) == 2
    v = classify(fp)
    assert v.case is Case.CASE1 and v.witness.surface == y
    assert v.witness.indeterminate


def test_one_jump_with_free_factor():
    fp = FactoredPair([(x, 1, 1), (y, 2, 1)], [(z, 1)])
    v = classify(fp)
    assert v.case is Case.CASE2 and v.witness.surface == y
    only_g = FactoredPair([(x, 1, 1), (y, 2, 1)], only_g=[(z, 1)])
    w = classify(only_g)
    assert w.case is Case.CASE2 and w.witness.surface == x and w.witness.indeterminate


def test_simplified_form_is_enforced():
    with pytest.raises(PreconditionError):
        classify(FactoredPair([(x, 1, 1), (y, 1, 1)], [(z, 1)]))


def test_restriction_exponents():
    r = restriction_integral(normalize_ordering(FactoredPair([(x, 1, 2), (y, 2, 1)], [(z, 1)])), 0)
    assert r.surface == x
    assert dict((str(f), e) for f, e in r.factors) == {"y": 3, "z": 2}
    assert r.kind is RestrictionKind.HOLOMORPHIC


def test_normalization_breaks_ties_by_grlex():
    fp = normalize_ordering(FactoredPair([(y, 1, 1), (x, 1, 1)], [(z, 1)], [(x + y, 1)]))
    # x > y in graded-lex order, ties sort ascending
    assert [h for h, *_ in fp.common] == [y, x]


@settings(max_examples=200)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(1, 4))
def test_classification_invariant_under_powering_and_swapping(seed, nf, ng):
    fp = random_pair(random.Random(seed))
    base = verdict_or_error(fp)
    assert verdict_or_error(fp.power(nf, ng)) == base
    assert verdict_or_error(fp.swapped()) == base


@settings(max_examples=200)
@given(st.integers(0, 10 ** 6))
def test_dicritical_witnesses_have_points_of_indeterminacy(seed):
    fp = random_pair(random.Random(seed))
    try:
        v = classify(fp)
    except PreconditionError:
        return
    if v.dicritical:
        assert v.witness.indeterminate
