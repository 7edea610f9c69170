from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ramify.errors import AmbientMismatch, FieldMismatch, InsufficientPrecision
from ramify.fields import FieldSpec
from ramify.series import (
    Cut,
    LaurentSeries,
    ValueGroup,
    random_series,
    restrict_cut,
    series_in_cut,
    series_is_integral,
)

F2 = FieldSpec.finite(2)
F3 = FieldSpec.finite(3)
F2u = FieldSpec.rational(2)

Z = ValueGroup.discrete(1)
Z3 = ValueGroup.z_one_over_p(3)
DENSE = ValueGroup.dense()


def mono(field, e, c=1, prec=16):
    return LaurentSeries.monomial(field, e, c, prec)


# -- value groups and cuts -------------------------------------------------


def test_group_membership():
    assert Z.contains(Fraction(3))
    assert not Z.contains(Fraction(1, 2))
    assert Z3.contains(Fraction(5, 9))
    assert not Z3.contains(Fraction(1, 2))
    assert DENSE.contains(Fraction(22, 7))


def test_cut_mul_examples():
    assert Cut.at_least(Fraction(1, 2), DENSE) * Cut.at_least(Fraction(1, 2), DENSE) \
        == Cut.at_least(1, DENSE)
    assert Cut.above(Fraction(3, 4), DENSE) * Cut.at_least(Fraction(1, 4), DENSE) \
        == Cut.above(1, DENSE)
    # discrete normalization is eager for open cuts
    assert Cut.above(2, Z) * Cut.at_least(0, Z) == Cut.at_least(3, Z)


def test_cut_pow_examples():
    assert Cut.at_least(Fraction(1, 2), DENSE) ** 2 == Cut.at_least(1, DENSE)
    assert Cut.above(Fraction(1, 2), DENSE) ** 3 == Cut.above(Fraction(3, 2), DENSE)
    assert Cut.at_least(1, Z) ** 1 == Cut.at_least(1, Z)
    d = Cut.at_least(2, Z)
    assert d * d.inverse() == Cut.at_least(0, Z)
    # open cuts keep their bound under negative powers
    j = Cut.above(Fraction(1, 2), Z3)
    assert j ** -2 == Cut.above(-1, Z3)
    assert j ** 0 == Cut.at_least(0, Z3)


def test_cut_is_principal():
    assert Cut.at_least(1, Z).is_principal()
    assert not Cut.above(Fraction(3, 2), Z3).is_principal()
    assert not Cut.at_least(Fraction(1, 2), Z).is_principal()
    assert Cut.above(2, Z).is_principal()  # normalized to closed(3)


def test_cut_normalize_idempotent_and_restrict():
    c = Cut.at_least(Fraction(4, 3), Z)
    n1 = c.normalize()
    assert n1 == Cut.at_least(2, Z)
    assert n1.normalize() == n1
    fine = Cut.at_least(Fraction(2, 3), ValueGroup.discrete(Fraction(1, 3)))
    assert restrict_cut(fine, Z) == Cut.at_least(1, Z)


def test_cut_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Cut.at_least(1, Z) * Cut.at_least(1, DENSE)


@given(st.fractions(min_value=-4, max_value=4), st.fractions(min_value=-4, max_value=4),
       st.booleans(), st.booleans())
@settings(max_examples=80, deadline=None)
def test_cut_mul_commutative_associative(v1, v2, c1, c2):
    a = Cut(v1, c1, DENSE)
    b = Cut(v2, c2, DENSE)
    ident = Cut.at_least(0, DENSE)
    assert a * b == b * a
    assert (a * b) * a == a * (b * a)
    assert a * ident == a


def test_cut_contains_and_subset():
    c = Cut.above(Fraction(3, 2), Z3)
    assert c.contains(Fraction(5, 3))
    assert not c.contains(Fraction(3, 2))
    assert Cut.at_least(2, Z).subset_of(Cut.at_least(1, Z))
    assert Cut.above(1, DENSE).subset_of(Cut.at_least(1, DENSE))
    assert not Cut.at_least(1, DENSE).subset_of(Cut.above(1, DENSE))


# -- series arithmetic -------------------------------------------------------


def test_series_mul_inverse_monomials():
    t_inv = mono(F2, -1)
    t = mono(F2, 1)
    prod = t_inv * t
    assert prod.coeffs == {0: F2.one()}


def test_series_add_cancels():
    a = LaurentSeries(F2, {-3: F2.one(), -1: F2.one()}, 16)
    b = mono(F2, -3, 1)
    assert (a + (-b)).coeffs == {-1: F2.one()}


def test_series_mul_hand_convolution():
    a = LaurentSeries(F3, {0: F3.one(), 1: F3.one()}, 8)
    b = LaurentSeries(F3, {0: F3.one(), 1: F3.from_int(2)}, 8)
    prod = a * b
    # (1+t)(1+2t) = 1 + 3t + 2t^2 = 1 + 2t^2 over F_3
    assert prod.coeffs == {0: F3.one(), 2: F3.from_int(2)}
    assert prod.prec == 8


def test_series_mul_precision_rule():
    a = LaurentSeries(F2, {0: F2.one(), 1: F2.one()}, 8)
    b = mono(F2, -3, 1, prec=8)
    assert (a * b).prec == 5  # min(8 + (-3), 8 + 0)


def test_series_inverse_examples():
    t = mono(F2, 1)
    assert t.inverse(4).coeffs == {-1: F2.one()}
    a = LaurentSeries(F2, {0: F2.one(), 1: F2.one()}, 16)
    inv = a.inverse(4)
    assert inv.coeffs == {0: F2.one(), 1: F2.one(), 2: F2.one(), 3: F2.one()}
    assert inv.prec == 4
    empty = LaurentSeries.zero(F2, 6)
    with pytest.raises(InsufficientPrecision):
        empty.inverse()


def test_series_inverse_target_too_deep():
    a = mono(F2, -2, 1, prec=4)
    with pytest.raises(InsufficientPrecision):
        a.inverse(9)  # available is prec - 2v = 8


def test_valuation_examples():
    a = LaurentSeries(F2, {-3: F2.one(), -1: F2.one()}, 16)
    assert a.valuation() == -3
    b = mono(F2u, -2, F2u.generator())
    assert b.valuation() == -2
    with pytest.raises(InsufficientPrecision):
        LaurentSeries.zero(F2, 4).valuation()


def test_series_field_mismatch():
    with pytest.raises(FieldMismatch):
        mono(F2, 0) + mono(F3, 0)


@given(st.integers(1, 400), st.integers(1, 400))
@settings(max_examples=60, deadline=None)
def test_ultrametric_and_multiplicativity(i, j):
    import random as _r

    a = random_series(F3, _r.Random(i), -3, 3, 10)
    b = random_series(F3, _r.Random(j + 1000), -3, 3, 10)
    if a.is_zero_known() or b.is_zero_known():
        return
    va, vb = a.valuation(), b.valuation()
    assert (a * b).valuation() == va + vb
    s = a + b
    if not s.is_zero_known():
        assert s.valuation() >= min(va, vb)
        if va != vb:
            assert s.valuation() == min(va, vb)


@given(st.integers(1, 400))
@settings(max_examples=40, deadline=None)
def test_inverse_roundtrip(i):
    import random as _r

    a = random_series(F3, _r.Random(i), -2, 2, 12)
    if a.is_zero_known():
        return
    inv = a.inverse(6)
    prod = a * inv
    one = LaurentSeries.one(F3, prod.prec)
    assert (prod - one).is_zero_known()


def test_series_in_cut_semantics():
    s = mono(F3, 2, 1, prec=8)
    assert series_in_cut(s, Cut.at_least(2, Z))
    assert not series_in_cut(s, Cut.above(2, DENSE))
    assert series_in_cut(s, Cut.at_least(Fraction(4, 3), DENSE))
    # a visible pole decides membership even at low precision
    assert not series_in_cut(mono(F3, 2, 1, prec=3), Cut.at_least(5, Z))
    # a clean but short known range cannot certify membership
    with pytest.raises(InsufficientPrecision):
        series_in_cut(LaurentSeries.zero(F3, 3), Cut.at_least(5, Z))
    assert series_is_integral(s)
    assert not series_is_integral(mono(F3, -1))


def test_euler_and_u_derivatives():
    f = LaurentSeries(F3, {-2: F3.one(), 1: F3.from_int(2)}, 8)
    d = f.euler_derivative()
    assert d.coeffs == {-2: F3.from_int(-2 % 3), 1: F3.from_int(2)}
    u = F2u.generator()
    g = LaurentSeries(F2u, {-2: u * u, 0: u}, 8)
    dg = g.u_derivative()
    assert dg.coeffs == {0: F2u.one()}  # d(u^2)/du = 0 in char 2


def test_rendering():
    s = LaurentSeries(F2u, {-4: F2u.one(), -2: F2u.generator()}, 8)
    assert str(s) == "t^-4 + u*t^-2"
    assert str(LaurentSeries.zero(F2, 4)) == "0"
