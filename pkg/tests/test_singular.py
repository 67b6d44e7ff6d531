from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from foliakit.algebra import MPoly
from foliakit.errors import DomainError
from foliakit.foliation import VectorField
from foliakit.models import INTEGRABLE_FIELD, SADDLE_FIELD, SUZUKI_FIELD, XYZ
from foliakit.singular import (BaumBottLedger, baum_bott, baum_bott_global_check, characteristic_polynomial,
                               eigenvalue_ratio_rationality, index_gap, linear_part, sign_pattern_claim,
                               singular_locus_on_curve)
from foliakit.univariate import QuadraticSurd
from strategies import small_rationals

x, y, z = MPoly.gens(*XYZ)
s = MPoly.var("s", ("s",))
zero_s = MPoly.zero(("s",))
F = Fraction


def test_saddle_linear_part():
    rep = linear_part(SADDLE_FIELD, (0, 0, 0))
    assert rep.eigenvalues == (F(-1), F(1), F(1))
    assert rep.simple
    assert eigenvalue_ratio_rationality(rep).ok
    assert sign_pattern_claim(rep, transverse=0) is True


def test_nilpotent_point_of_the_integrable_field():
    rep = linear_part(INTEGRABLE_FIELD, (0, 0, 1))
    assert rep.eigenvalues == (0, 0, 0)
    assert not rep.simple
    assert rep.linear_part[2] == (0, -2, 0)


def test_non_singular_point_is_rejected():
    with pytest.raises(DomainError):
        linear_part(SADDLE_FIELD, (1, 0, 0))


def test_irrational_eigenvalues_are_exact_surds():
    v = VectorField([y, 2 * x, -z])
    rep = linear_part(v, (0, 0, 0))
    surds = [e for e in rep.eigenvalues if isinstance(e, QuadraticSurd)]
    assert len(surds) == 2 and all(e * e == 2 for e in surds)
    check = eigenvalue_ratio_rationality(rep)
    assert not check.ok and {r for *_, r in check.violations} == {"irrational-ratio"}
    assert sign_pattern_claim(rep, 2) is None


def test_mixed_zero_eigenvalues_are_flagged():
    rep = linear_part(VectorField([x, MPoly.zero(XYZ), -z]), (0, 0, 0))
    assert "mixed-zero" in str(eigenvalue_ratio_rationality(rep))


def test_numeric_fallback_for_a_cubic():
    # x' = y, y' = z, z' = 2x: characteristic polynomial s^3 - 2
    rep = linear_part(VectorField([y, z, 2 * x]), (0, 0, 0))
    assert not any(rep.exact)
    for e in rep.eigenvalues:
        assert abs(e ** 3 - 2) < 1e-12
    assert {r for *_, r in eigenvalue_ratio_rationality(rep).violations} == {"undecidable-approximate"}


@given(st.lists(st.lists(small_rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_characteristic_polynomial_matches_sympy(rows):
    m = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows])
    lam = sympy.Symbol("lam")
    want = sympy.Poly(m.charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    got = characteristic_polynomial(rows)
    assert [sympy.Rational(c.numerator, c.denominator) for c in got] == want


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_eigenvalue_trace_and_determinant(rows):
    comps = [sum((c * MPoly.var(v, XYZ) for c, v in zip(r, XYZ)), MPoly.zero(XYZ)) for r in rows]
    if all(c.is_zero() for c in comps):
        return
    rep = linear_part(VectorField(comps), (0, 0, 0))
    tr = sum(complex(e) for e in rep.eigenvalues)
    det = complex(rep.eigenvalues[0]) * complex(rep.eigenvalues[1]) * complex(rep.eigenvalues[2])
    m = sympy.Matrix(rows)
    assert abs(tr - int(m.trace())) < 1e-8
    assert abs(det - int(m.det())) < 1e-7 * (1 + abs(int(m.det())))


def test_singular_locus_on_curves():
    z_axis = {"x": zero_s, "y": zero_s, "z": s}
    x_axis = {"x": s, "y": zero_s, "z": zero_s}
    assert singular_locus_on_curve(INTEGRABLE_FIELD, z_axis).everywhere
    assert singular_locus_on_curve(SUZUKI_FIELD, z_axis).everywhere
    locus = singular_locus_on_curve(INTEGRABLE_FIELD, x_axis)
    assert not locus.everywhere and set(locus.roots) == {0}
    assert str(locus) == "{s = 0}"


def test_baum_bott_values():
    assert baum_bott(1, 1) == 4
    assert baum_bott(F(1, 2), 2) == F(25, 4)
    assert baum_bott(1, -1) == 0
    with pytest.raises(DomainError):
        baum_bott(0, 1)


def test_baum_bott_of_conjugate_surds_is_rational():
    a = QuadraticSurd(1, 1, 2)
    assert baum_bott(a, a.conjugate_surd()) == -4


@given(small_rationals.filter(bool), small_rationals.filter(bool), small_rationals.filter(bool))
def test_baum_bott_symmetry_and_scaling(a, b, c):
    assert baum_bott(a, b) == baum_bott(b, a)
    assert baum_bott(c * a, c * b) == baum_bott(a, b)


@pytest.mark.parametrize("k", range(0, 51))
def test_index_gap_is_three_k_squared(k):
    assert index_gap(k) == 3 * k * k


def test_global_check_contradiction_and_equality():
    for k in range(1, 51):
        n = 1 + k + k * k
        check = baum_bott_global_check(BaumBottLedger(k, [(str(i), 1, 1) for i in range(n)]))
        assert check.contradiction and not check.consistent
        assert check.lower_bound - check.expected_total == 3 * k * k
    base = baum_bott_global_check(BaumBottLedger(0, [("0", 1, 1)]))
    assert base.consistent and base.total == 4 == base.expected_total


def test_global_check_report_text():
    text = str(baum_bott_global_check(BaumBottLedger(1, [("a", 1, 1)] * 3)))
    assert "12 > 9" in text and text.endswith("inconsistent")
