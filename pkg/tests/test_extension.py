import random
from fractions import Fraction

import pytest

from ramify.errors import (
    DegenerateGenerator,
    ExtensionMismatch,
    InsufficientPrecision,
    NotApplicable,
    ZeroElement,
)
from ramify.extension import (
    ASExtension,
    BestCase,
    DifferenceOperators,
    RamificationType,
    classify,
    integral_basis,
    integral_sample,
    reduce_to_best,
    unit_sample,
)
from ramify.fields import FieldSpec
from ramify.series import Cut, LaurentSeries, ValueGroup, random_series

F2 = FieldSpec.finite(2)
F3 = FieldSpec.finite(3)
F5 = FieldSpec.finite(5)
F4 = FieldSpec.finite(2, 2)
F2u = FieldSpec.rational(2)
F3u = FieldSpec.rational(3)

Z = ValueGroup.discrete(1)


def mono(field, e, c=1, prec=32):
    return LaurentSeries.monomial(field, e, c, prec)


def ext_of(field, e, c=1, prec=32):
    return ASExtension(field, mono(field, e, c, prec))


# -- reduction to the best representative -----------------------------------


def test_reduce_deep_pole_two_steps():
    best = reduce_to_best(mono(F2, -4, 1, 8))
    assert best.swan == 1
    assert best.case is BestCase.WILD_POLE
    assert best.f_best.coeffs == {-1: F2.one()}
    assert len(best.reduction_log) == 2  # t^-4 -> t^-2 -> t^-1


def test_reduce_ferocious_is_untouched():
    f = mono(F3u, -3, F3u.generator(), 8)
    best = reduce_to_best(f)
    assert best.case is BestCase.FEROCIOUS_POLE
    assert best.swan == 3
    assert best.reduction_log == ()
    assert best.f_best == f


def test_reduce_merges_coefficients():
    # t^-6 + t^-2 over F_3: the cube root of 1 lands on the existing t^-2
    f = LaurentSeries(F3, {-6: F3.one(), -2: F3.one()}, 8)
    best = reduce_to_best(f)
    assert best.swan == 2
    assert best.f_best.coeffs == {-2: F3.from_int(2)}


def test_reduce_brute_force_spot_check():
    # same case, against the full shift search over span t^-1..t^-3
    f = LaurentSeries(F3, {-6: F3.one(), -2: F3.one()}, 8)
    best = None
    elems = list(F3.elements())
    for c1 in elems:
        for c2 in elems:
            for c3 in elems:
                h = LaurentSeries(F3, {-1: c1, -2: c2, -3: c3}, 20)
                g = f + (h ** 3 - h)
                negs = [e for e in g.coeffs if e < 0]
                cand = -min(negs) if negs else 0
                best = cand if best is None else min(best, cand)
    assert best == reduce_to_best(f).swan == 2


def test_reduce_integral_case():
    best = reduce_to_best(LaurentSeries(F3, {0: F3.one(), 1: F3.one()}, 4))
    assert best.case is BestCase.INTEGRAL
    assert best.swan == 0


def test_reduce_normal_form_has_no_reducible_term():
    rng = random.Random(9)
    from ramify.fields import is_pth_power

    for _ in range(40):
        f = random_series(F2, rng, -8, 2, 8)
        if f.is_zero_known():
            continue
        best = reduce_to_best(f)
        for e, c in best.f_best.coeffs.items():
            assert not (e < 0 and e % 2 == 0 and is_pth_power(c))


def test_reduce_log_soundness_and_swan_invariance():
    rng = random.Random(4)
    for p, field in ((2, F2), (3, F3)):
        for _ in range(30):
            f = random_series(field, rng, -7, 1, 8)
            if f.is_zero_known():
                continue
            best = reduce_to_best(f)
            recon = f
            for h in best.reduction_log:
                recon = recon - (h ** p - h)
            assert recon.agrees_with(best.f_best)
            h = random_series(field, rng, -2, 2, 8)
            assert reduce_to_best(f + (h ** p - h)).swan == best.swan


def test_reduce_precision_precondition():
    with pytest.raises(InsufficientPrecision):
        reduce_to_best(mono(F2, -2, 1, prec=0))


def test_finite_fields_never_ferocious():
    # perfect residue fields reduce every p-divisible pole
    best = reduce_to_best(mono(F4, -2, F4.generator(), 8))
    assert best.case is not BestCase.FEROCIOUS_POLE
    assert best.swan == 1


# -- classification -----------------------------------------------------------


def test_classify_examples():
    assert classify(ext_of(F3, -1)) is RamificationType.WILD
    assert classify(ext_of(F2u, -2, F2u.generator())) is RamificationType.FEROCIOUS
    # x^2 + x = 1 has no root in F_2, so f = 1 gives the unramified extension
    one = ASExtension(F2, LaurentSeries.one(F2, 4))
    assert classify(one) is RamificationType.UNRAMIFIED
    trivial = ASExtension(F2, mono(F2, 1, 1, 4))
    assert classify(trivial) is RamificationType.TRIVIAL


def test_classify_rational_constant():
    u = F3u.generator()
    ext = ASExtension(F3u, LaurentSeries.constant(u, 4))
    assert classify(ext) is RamificationType.UNRAMIFIED
    solvable = ASExtension(F3u, LaurentSeries.constant(u ** 3 - u, 4) + mono(F3u, 1, 1, 4))
    assert classify(solvable) is RamificationType.TRIVIAL


# -- arithmetic in L ----------------------------------------------------------


def test_defining_relation():
    for ext in (ext_of(F3, -1), ext_of(F2, -1)):
        a = ext.alpha()
        lhs = a ** ext.p
        rhs = a + ext.f
        assert lhs.agrees_with(rhs)
        # alpha * alpha^(p-1) written as a coefficient vector: (f, 1, 0, ...)
        prod = a * (a ** (ext.p - 1))
        assert prod.coeffs[0].agrees_with(ext.f)
        assert prod.coeffs[1].agrees_with(LaurentSeries.one(ext.field, 32))


def test_additive_identity_and_mismatch():
    ext = ext_of(F3, -2)
    x = integral_sample(ext, random.Random(0))
    assert (x + ext.zero()).agrees_with(x)
    other = ext_of(F3, -1)
    with pytest.raises(ExtensionMismatch):
        x + other.alpha()


def test_sigma_action():
    ext = ext_of(F3, -2)
    a = ext.alpha()
    sa = a.sigma(1)
    assert sa.coeffs[0].agrees_with(LaurentSeries.one(F3, 32))
    assert sa.coeffs[1].agrees_with(LaurentSeries.one(F3, 32))
    # sigma(alpha^2) = alpha^2 + 2 alpha + 1
    sq = (a * a).sigma(1)
    expect = a * a + a.scale_int(2) + ext.one()
    assert sq.agrees_with(expect)
    rng = random.Random(3)
    for _ in range(10):
        x = integral_sample(ext, rng)
        assert x.sigma(1).sigma(1).sigma(1).agrees_with(x)


def test_norm_and_trace_values():
    ext3 = ext_of(F3, -1)
    a = ext3.alpha()
    assert a.norm().coeffs == {-1: F3.one()}
    assert a.trace().is_zero_known()
    assert (a * a).trace().coeffs == {0: F3.from_int(-1 % 3)}
    ext2 = ext_of(F2, -1)
    assert ext2.alpha().trace().coeffs == {0: F2.one()}


def test_trace_identities_exact():
    for field, n in ((F2, 1), (F3, 1), (F3, 2), (F5, 1), (F5, 2)):
        ext = ext_of(field, -n)
        a = ext.alpha()
        power = ext.one()
        for m in range(1, field.p):
            power = power * a
            tr = power.trace()
            if m == field.p - 1:
                assert tr.coeffs == {0: field.from_int(-1)}
            else:
                assert tr.is_zero_known()


def test_norm_multiplicative_trace_additive_sigma_invariant():
    ext = ext_of(F3, -2)
    rng = random.Random(7)
    for _ in range(8):
        x = integral_sample(ext, rng)
        y = integral_sample(ext, rng)
        assert (x * y).norm().agrees_with(x.norm() * y.norm())
        assert (x + y).trace().agrees_with(x.trace() + y.trace())
        sx = x.sigma(1)
        assert sx.norm().agrees_with(x.norm())
        assert sx.trace().agrees_with(x.trace())


def test_norm_trace_match_conjugate_product_and_sum():
    # two independent routes: multiplication-matrix determinant/trace
    # versus explicit products/sums over the Galois orbit
    for ext in (ext_of(F3, -2), ext_of(F5, -2, prec=24),
                ext_of(F2u, -2, F2u.generator())):
        rng = random.Random(1)
        for _ in range(6):
            x = unit_sample(ext, rng)
            orbit_sum = ext.zero()
            orbit_prod = None
            for i in range(ext.p):
                s = x.sigma(i)
                orbit_sum = orbit_sum + s
                orbit_prod = s if orbit_prod is None else orbit_prod * s
            assert orbit_sum.coeffs[0].agrees_with(x.trace())
            assert all(c.is_zero_known() for c in orbit_sum.coeffs[1:])
            assert orbit_prod.coeffs[0].agrees_with(x.norm())
            assert all(c.is_zero_known() for c in orbit_prod.coeffs[1:])


def test_sigma_difference_power_equals_trace():
    # (sigma - 1)^(p-1) acts as the trace
    for ext in (ext_of(F3, -2), ext_of(F2, -3)):
        rng = random.Random(11)
        for _ in range(8):
            x = integral_sample(ext, rng)
            acc = x
            for _ in range(ext.p - 1):
                acc = acc.sigma(1) - acc
            assert acc.coeffs[0].agrees_with(x.trace())
            for c in acc.coeffs[1:]:
                assert c.is_zero_known()


def test_valuation_examples():
    ext = ext_of(F3, -2)
    assert ext.alpha().valuation() == Fraction(-2, 3)
    assert ext.from_series(mono(F3, 1)).valuation() == 1
    rng = random.Random(5)
    for _ in range(8):
        x = unit_sample(ext, rng)
        y = unit_sample(ext, rng)
        assert (x * y).valuation() == x.valuation() + y.valuation()
        assert x.valuation() == x.valuation_coeffwise()
    with pytest.raises(ZeroElement):
        ext.zero().valuation()


def test_integrality():
    ext = ext_of(F3, -2)
    assert not ext.alpha().is_integral()
    t_alpha = ext.alpha() * mono(F3, 1)
    assert t_alpha.is_integral()  # v = 1 - 2/3 > 0
    assert ext.one().is_integral()


def test_sigma_difference_valuation_independent_of_power():
    # v(sigma^i(b) - b) does not depend on i
    for ext in (ext_of(F3, -2), ext_of(F5, -2, prec=24)):
        rng = random.Random(13)
        for _ in range(6):
            b = integral_sample(ext, rng)
            diffs = []
            for i in range(1, ext.p):
                d = b.sigma(i) - b
                if d.is_zero_known():
                    diffs.append(None)
                else:
                    diffs.append(d.valuation_coeffwise())
            assert len(set(diffs)) == 1


# -- difference operators ------------------------------------------------------


def test_difference_operator_laws():
    ext = ext_of(F3, -2)
    basis = integral_basis(ext)
    b = ext.alpha() * mono(F3, 1)  # t*alpha, the boundary of A_1
    ops = DifferenceOperators(ext, b)
    one, zero = ext.one(), ext.zero()
    assert ops.apply(0, b).agrees_with(b)  # D_0 = id
    for i in range(ext.p):
        assert ops.apply(i, b ** i).agrees_with(one)
        for j in range(i):
            assert ops.apply(i, b ** j).agrees_with(zero)
    # D_1(b^2) = b + sigma(b)
    assert ops.apply(1, b * b).agrees_with(b + b.sigma(1))
    rng = random.Random(2)
    zero_cut = Cut.at_least(0, Z)
    for _ in range(10):
        x = integral_sample(ext, rng)
        for i in range(1, ext.p):
            lhs = ops.apply(i, x * b)
            rhs = b.sigma(i) * ops.apply(i, x) + ops.apply(i - 1, x)
            assert lhs.agrees_with(rhs)
            assert ops.apply(i, x).in_cut(zero_cut)


def test_difference_operator_degenerate():
    ext = ext_of(F3, -2)
    with pytest.raises(DegenerateGenerator):
        DifferenceOperators(ext, ext.one())  # sigma fixes 1


# -- integral closure description ---------------------------------------------


def test_integral_basis_wild():
    basis = integral_basis(ext_of(F3, -2))
    assert basis.kind == "wild"
    assert basis.cuts[0] == Cut.at_least(0, Z)
    assert basis.cuts[1] == Cut.at_least(1, Z)  # {v > 2/3} normalized
    assert basis.cuts[2] == Cut.at_least(2, Z)  # {v > 4/3} normalized


def test_integral_basis_ferocious():
    basis = integral_basis(ext_of(F2u, -2, F2u.generator()))
    assert basis.kind == "ferocious"
    assert basis.gamma.coeffs == {1: F2u.one()}  # gamma = t
    unit = basis.ext.alpha() * basis.gamma
    assert unit.valuation() == 0


def test_integral_basis_not_applicable():
    with pytest.raises(NotApplicable):
        integral_basis(ASExtension(F2, LaurentSeries.one(F2, 4)))


def test_with_best_f_shares_invariants():
    ext = ext_of(F2, -4, prec=16)
    best = ext.with_best_f()
    assert best.f.coeffs == {-1: F2.one()}
    assert best.swan == ext.swan == 1


def test_coeffwise_valuation_needs_reduced_presentation():
    # over the raw presentation alpha^p - alpha = t^-4 the valuation of
    # alpha is -2, inside the base group, so coordinatewise minima are
    # not available; the norm route still works
    ext = ext_of(F2, -4, prec=16)
    assert ext.alpha().valuation() == -2
    with pytest.raises(NotApplicable):
        ext.alpha().valuation_coeffwise()
    reduced = ext.with_best_f()
    assert reduced.alpha().valuation() == reduced.alpha().valuation_coeffwise()
