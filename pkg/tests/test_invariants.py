from fractions import Fraction

import pytest

from ramify.errors import NotApplicable, SwanZero, TrivialExtension
from ramify.extension import ASExtension, RamificationType
from ramify.fields import FieldSpec
from ramify.invariants import (
    boundary_generator,
    build_report,
    check_diagram_commutativity,
    check_difference_product_rules,
    check_norm_additivity,
    check_norm_ideal_identity,
    check_refined_swan_stability,
    different_ideal,
    ideal_h,
    ideal_i_sigma,
    ideal_j,
    lefschetz_minimum,
    norm_of_j,
    refined_swan,
    restrict_cut,
    rsw_modulus,
    trace_dual_cut,
    value_group_of_l,
)
from ramify.series import Cut, LaurentSeries, ValueGroup, series_in_cut

F2 = FieldSpec.finite(2)
F3 = FieldSpec.finite(3)
F5 = FieldSpec.finite(5)
F2u = FieldSpec.rational(2)
F3u = FieldSpec.rational(3)

Z = ValueGroup.discrete(1)


def mono(field, e, c=1, prec=32):
    return LaurentSeries.monomial(field, e, c, prec)


def ext_of(field, e, c=1, prec=32):
    return ASExtension(field, mono(field, e, c, prec))


GRID = [
    ext_of(F2, -1),
    ext_of(F2, -3),
    ext_of(F3, -1),
    ext_of(F3, -2),
    ext_of(F2u, -2, F2u.generator()),
    ext_of(F3u, -3, F3u.generator()),
    ext_of(F5, -2, prec=24),
]


def test_ideal_values_wild():
    ext = ext_of(F3, -2)
    assert ideal_h(ext) == Cut.at_least(2, Z)
    assert ideal_j(ext) == Cut.at_least(Fraction(2, 3), value_group_of_l(ext))
    assert ideal_i_sigma(ext).value == 1
    assert norm_of_j(ext) == Cut.at_least(2, Z)


def test_ideal_values_ferocious():
    ext = ext_of(F2u, -2, F2u.generator())
    j = ideal_j(ext)
    assert j == Cut.at_least(1, value_group_of_l(ext))
    assert ideal_i_sigma(ext) == j


def test_ideal_h_trivial_extension():
    trivial = ASExtension(F2, mono(F2, 1, 1, 4))
    with pytest.raises(TrivialExtension):
        ideal_h(trivial)
    with pytest.raises(NotApplicable):
        ideal_j(trivial)


def test_i_sigma_matches_sampling_oracle():
    for ext in (ext_of(F3, -2), ext_of(F3, -1), ext_of(F5, -2, prec=24),
                ext_of(F2u, -2, F2u.generator())):
        formula = ideal_i_sigma(ext).value
        sampled = lefschetz_minimum(ext, samples=60, seed=5)
        assert sampled == formula


def test_boundary_generator_attains_minimum():
    for ext in GRID:
        b = boundary_generator(ext)
        bext = ext.with_best_f()
        d = b.sigma(1) - b
        assert d.valuation_coeffwise() == ideal_i_sigma(bext).value


def test_norm_ideal_identity_grid():
    for ext in GRID:
        res = check_norm_ideal_identity(ext)
        assert res.ok, res.detail
        assert res.detail["generator_sign"] == 1


def test_norm_ideal_identity_unramified():
    ext = ASExtension(F2, LaurentSeries.one(F2, 8))
    assert check_norm_ideal_identity(ext).ok


def test_refined_swan_wild():
    form = refined_swan(ext_of(F3, -2))
    # t d(t^-2)/dt / t^-2 = -2 = 1 mod 3
    assert form.dlog_t.coeffs == {0: F3.one()}
    assert form.du is None
    assert form.modulus == Cut.at_least(2, Z)  # (p-1)/p * 2 = 4/3 lifted


def test_refined_swan_ferocious():
    form = refined_swan(ext_of(F2u, -2, F2u.generator()))
    u = F2u.generator()
    assert form.dlog_t.is_zero_known()  # -2 = 0 in characteristic 2
    assert form.du.coeffs == {0: 1 / u}
    assert form.modulus == Cut.at_least(1, Z)


def test_refined_swan_zero_raises():
    with pytest.raises(SwanZero):
        refined_swan(ASExtension(F2, LaurentSeries.one(F2, 8)))


def test_refined_swan_stability_grid():
    for ext in GRID:
        assert check_refined_swan_stability(ext, shifts=25, seed=8).ok


def test_refined_swan_comparison_is_at_the_common_generator():
    # f = t^-3, a = t^-1 + t^2 over F_2: the raw forms dlog f and
    # dlog g differ already at valuation 1, below the comparison ideal
    # at 2; the invariant maps still agree when both are evaluated
    # against 1/f.  This pins the comparison convention.
    f = mono(F2, -3, 1, prec=32)
    a = LaurentSeries(F2, {-1: F2.one(), 2: F2.one()}, 32)
    g = f + (a ** 2 - a)
    assert g.valuation() == -3
    ext = ASExtension(F2, f)
    modulus = rsw_modulus(ext)
    assert modulus == Cut.at_least(2, Z)
    raw_f = f.euler_derivative() * f.inverse()
    raw_g = g.euler_derivative() * g.inverse()
    assert (raw_f - raw_g).valuation() == 1  # naive comparison fails
    assert not series_in_cut(raw_f - raw_g, modulus)
    inv_f = f.inverse()
    at_generator_f = f.euler_derivative() * inv_f
    at_generator_g = g.euler_derivative() * inv_f
    assert series_in_cut(at_generator_f - at_generator_g, modulus)
    assert check_refined_swan_stability(ext, shifts=40, seed=1).ok


def test_different_examples():
    fero = ext_of(F2u, -2, F2u.generator())
    d = different_ideal(fero)
    assert d == Cut.at_least(1, value_group_of_l(fero))
    assert d == ideal_j(fero) ** (fero.p - 1)
    wild = ext_of(F3, -2)
    dw = different_ideal(wild)
    assert dw.value == 2  # from the coefficient-ideal trace conditions
    assert dw * dw.inverse() == Cut.at_least(0, value_group_of_l(wild))


def test_different_matches_trace_dual():
    for ext in (ext_of(F2, -1), ext_of(F3, -2), ext_of(F2u, -2, F2u.generator())):
        assert different_ideal(ext) == trace_dual_cut(ext, seed=3)


def test_norm_additivity_grid():
    for ext in GRID[:4]:
        assert check_norm_additivity(ext, samples=40, seed=2).ok


def test_diagram_unit_case():
    # b = 1 reduces the square to the generator identity
    ext = ext_of(F3, -2)
    f = ext.best.f_best
    one = ext.one()
    z = one * (ext.alpha().sigma(1) * ext.inverse_alpha() - one)
    prod = z.norm() * f
    target = LaurentSeries.one(F3, prod.prec)
    assert (prod - target).is_zero_known()


def test_diagram_grid():
    for ext in (ext_of(F3, -2), ext_of(F2u, -2, F2u.generator())):
        assert check_diagram_commutativity(ext, samples=50, seed=6).ok


def test_difference_product_rules():
    ext = ext_of(F3, -2)
    assert check_difference_product_rules(ext, samples=12, seed=4).ok
    # elements of K are fixed: sigma(b) - b = 0 exactly
    b = ext.from_series(mono(F3, 2))
    assert (b.sigma(1) - b).is_zero_known()


def test_product_rule_alpha_expansion():
    # x = y = alpha: sigma(a^2)/a^2 - 1 against 2*(sigma(a)/a - 1) mod J^2
    ext = ext_of(F3, -2)
    a = ext.alpha()
    ia = ext.inverse_alpha()
    j_sq = ideal_j(ext) ** 2
    lhs = (a * a).sigma(1) * (ia * ia) - 1
    rhs = (a.sigma(1) * ia - 1) + (a.sigma(1) * ia - 1)
    assert (lhs - rhs).in_cut(j_sq)


def test_ideal_chain_h_in_iota_in_i_sigma():
    for ext in GRID:
        bext = ext.with_best_f()
        h = ideal_h(bext).normalize()
        iota = rsw_modulus(bext)
        i_in_a = restrict_cut(ideal_i_sigma(bext), Z)
        assert h.subset_of(iota)
        assert iota.subset_of(i_in_a)


def test_lefschetz_inequality():
    for ext in GRID:
        bext = ext.with_best_f()
        i_v = ideal_i_sigma(bext).value
        j_v = ideal_j(bext).value
        assert i_v >= j_v
        if bext.classification() is RamificationType.FEROCIOUS:
            assert i_v == j_v


def test_principality_chain_dvr():
    from ramify.invariants import principality_chain

    for ext in GRID:
        flags = principality_chain(ext)
        assert all(flags.values()), flags


def test_report_json_shape():
    rep = build_report(ext_of(F3, -2), samples=10, seed=1)
    data = rep.to_json()
    assert data["swan"] == "2/1"
    assert data["classification"] == "wild"
    assert data["e"] == 3 and data["f_inertia"] == 1 and data["defect"] == 1
    assert data["j_sigma"] == {"value": "2/3", "bound": "closed"}
    assert data["h"] == {"value": "2/1", "bound": "closed"}
    assert data["rsw"]["modulus"] == {"value": "2/1", "bound": "closed"}
    assert data["i_lefschetz"] == "1/1"
    assert set(data["checks"]) == {
        "norm_ideal_identity", "refined_swan_stability", "norm_additivity",
        "diagram_commutativity", "difference_product_rules",
        "different_vs_trace_dual",
    }
    assert rep.all_checks_pass()


def test_report_trivial_and_unramified():
    trivial = build_report(ASExtension(F2, mono(F2, 1, 1, 4)), run_checks=False)
    assert trivial.classification is RamificationType.TRIVIAL
    assert trivial.h is None
    unram = build_report(ASExtension(F2, LaurentSeries.one(F2, 8)), samples=10, seed=1)
    assert unram.classification is RamificationType.UNRAMIFIED
    assert unram.h == Cut.at_least(0, Z)
    assert unram.e * unram.f_inertia * unram.defect == 2
    assert unram.all_checks_pass()


def test_e_f_defect_product():
    for ext in GRID:
        rep = build_report(ext, run_checks=False)
        assert rep.e * rep.f_inertia * rep.defect == ext.p
