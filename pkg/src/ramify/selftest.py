"""The acceptance grid: every headline identity of the library, run at
fixed seeds and exact tolerances.

Each criterion returns a CriterionResult; ``run_all`` executes the full
grid.  The same functions back the command line ``selftest`` and the
acceptance test module, so the shipped binary can re-verify itself.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .extension import (
    ASExtension,
    DifferenceOperators,
    LaurentSeries,
    integral_sample,
    reduce_to_best,
)
from .fields import FieldSpec
from .invariants import (
    boundary_generator,
    check_diagram_commutativity,
    check_norm_additivity,
    check_norm_ideal_identity,
    check_refined_swan_stability,
    different_ideal,
    ideal_i_sigma,
    ideal_j,
    principality_chain,
    trace_dual_cut,
)
from .series import Cut, ValueGroup
from .tower import (
    TowerSpec,
    best_f_descent,
    check_step_identity,
    closed_form_n,
    closed_form_neg_v_f,
    principality_chain as tower_chain,
    tower_levels,
    tower_report,
)

DEFAULT_SEED = 1729

#: (p, coefficient kind, pole order, precision) for the discretely
#: valued grid; "u" marks the imperfect-residue cases over F_p(u).
DVR_GRID = [
    (2, None, 1, 32),
    (2, None, 3, 32),
    (3, None, 1, 32),
    (3, None, 2, 32),
    (2, "u", 2, 32),
    (3, "u", 3, 32),
    (5, None, 2, 24),
]

TOWER_GRID = [(2, 3), (2, 5), (3, 2), (3, 4), (5, 2)]

STEP_IDENTITY_GRID = [(3, 2, 9), (2, 3, 4), (5, 2, 25)]


class CriterionResult:
    __slots__ = ("ident", "name", "ok", "detail")

    def __init__(self, ident, name, ok, detail=""):
        self.ident = ident
        self.name = name
        self.ok = ok
        self.detail = detail

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        suffix = f"  [{self.detail}]" if self.detail else ""
        return f"criterion {self.ident:02d} {self.name}: {status}{suffix}"

    def to_json(self):
        return {
            "id": self.ident,
            "name": self.name,
            "ok": self.ok,
            "detail": self.detail,
        }


def grid_extension(p, coeff_kind, n, prec):
    if coeff_kind == "u":
        field = FieldSpec.rational(p)
        c = field.generator()
    else:
        field = FieldSpec.finite(p)
        c = field.one()
    return ASExtension(field, LaurentSeries.monomial(field, -n, c, prec))


def _grid_label(p, coeff_kind, n):
    c = "u*" if coeff_kind == "u" else ""
    return f"(p={p}, f={c}t^-{n})"


def criterion_swan_table(seed=DEFAULT_SEED):
    """Pole order n*p^m always reduces to Swan conductor n."""
    failures = []
    cases = 0
    for p in (2, 3, 5):
        field = FieldSpec.finite(p)
        for n in range(1, 8):
            if math.gcd(n, p) != 1:
                continue
            for m in range(3):
                cases += 1
                f = LaurentSeries.monomial(field, -n * p ** m, 1, 8)
                got = reduce_to_best(f).swan
                if got != n:
                    failures.append(f"p={p} n={n} m={m} -> {got}")
    return CriterionResult(
        1, "swan_conductor_table", not failures, "; ".join(failures) or f"{cases} cases"
    )


def _oracle_best_pole(f, field):
    """Brute force: minimize the pole order of f + h^p - h over all h
    supported on t^-1..t^-3.

    The shifts are exact polynomials, so they carry a generous
    precision; the sum inherits the (possibly minimal) precision of f,
    which still covers the whole negative range.
    """
    p = field.p
    elems = list(field.elements())
    best = None
    for c1 in elems:
        for c2 in elems:
            for c3 in elems:
                h = LaurentSeries(field, {-1: c1, -2: c2, -3: c3}, f.prec + 9)
                g = f + (h ** p - h)
                negs = [e for e in g.coeffs if e < 0]
                cand = Fraction(-min(negs)) if negs else Fraction(0)
                if best is None or cand < best:
                    best = cand
    return best


def criterion_best_f_oracle(seed=DEFAULT_SEED):
    """Reduction agrees with the brute-force minimum over shifts."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    for p in (2, 3):
        field = FieldSpec.finite(p)
        elems = list(field.elements())
        all_vectors = []
        total = p ** 6
        for idx in range(1, total):
            vec = []
            k = idx
            for _ in range(6):
                k, d = divmod(k, p)
                vec.append(d)
            all_vectors.append(vec)
        if len(all_vectors) > 500:
            all_vectors = rng.sample(all_vectors, 500)
        for vec in all_vectors:
            coeffs = {-(i + 1): elems[d] for i, d in enumerate(vec) if d}
            if not coeffs:
                continue
            f = LaurentSeries(field, coeffs, 1)
            got = reduce_to_best(f).swan
            want = _oracle_best_pole(f, field)
            checked += 1
            if got != want:
                failures.append(f"p={p} f={f}: reduced {got}, oracle {want}")
    return CriterionResult(
        2, "best_f_oracle_agreement", not failures,
        "; ".join(failures[:3]) or f"{checked} cases",
    )


def criterion_norm_ideal_defectless(extensions, seed=DEFAULT_SEED):
    failures = []
    for label, ext in extensions:
        res = check_norm_ideal_identity(ext)
        if not res.ok:
            failures.append(f"{label}: {res.detail}")
    return CriterionResult(
        3, "norm_ideal_identity_defectless", not failures, "; ".join(failures)
    )


def criterion_norm_ideal_tower(seed=DEFAULT_SEED):
    failures = []
    group_checks = 0
    for p, n in TOWER_GRID:
        spec = TowerSpec(FieldSpec.finite(p, 2), n, 8)
        rep = tower_report(spec)
        expect = Cut.above(n - Fraction(1, p - 1), ValueGroup.z_one_over_p(p))
        if not (rep.h_cut == rep.n_of_j_cut == expect):
            failures.append(f"(p={p}, n={n}): H={rep.h_cut!r} N(J)={rep.n_of_j_cut!r}")
        group_checks += 1
    return CriterionResult(
        4, "norm_ideal_identity_defect_tower", not failures,
        "; ".join(failures) or f"{group_checks} towers",
    )


def criterion_tower_recursions(seed=DEFAULT_SEED):
    failures = []
    for p, n in TOWER_GRID:
        spec = TowerSpec(FieldSpec.finite(p, 2), n, 8)
        levels = tower_levels(spec)
        for lv in levels:
            if lv.n_i != closed_form_n(spec, lv.index):
                failures.append(f"(p={p},n={n}) level {lv.index}: n_i mismatch")
            if lv.neg_v_f != closed_form_neg_v_f(spec, lv.index):
                failures.append(f"(p={p},n={n}) level {lv.index}: pole magnitude mismatch")
        descent = best_f_descent(spec)
        if not descent.monotone or descent.infimum_attained:
            failures.append(f"(p={p},n={n}): descent not strict")
        if descent.infimum != n - Fraction(1, p - 1):
            failures.append(f"(p={p},n={n}): wrong infimum")
    return CriterionResult(
        5, "tower_recursion_closed_form", not failures, "; ".join(failures[:3])
    )


def criterion_step_identity(seed=DEFAULT_SEED):
    failures = []
    bounds = []
    for p, n, q in STEP_IDENTITY_GRID:
        spec = TowerSpec(FieldSpec.finite(p, 2), n, 4)
        if spec.field.order != q:
            failures.append(f"grid mismatch for (p={p}, n={n})")
            continue
        res = check_step_identity(spec, trials=32, seed=seed)
        bounds.append(f"q={q}: d/q={res.degree_bound}/{res.sample_space}")
        if not res.ok:
            failures.append(f"(p={p},n={n},q={q}) witness {res.witness}")
    return CriterionResult(
        6, "rewrite_step_identity", not failures,
        "; ".join(failures) or "; ".join(bounds),
    )


def criterion_trace_identities(seed=DEFAULT_SEED):
    failures = []
    cases = 0
    for p in (2, 3, 5):
        field = FieldSpec.finite(p)
        poles = [1] if p == 2 else [1, 2]
        for n in poles:
            ext = ASExtension(field, LaurentSeries.monomial(field, -n, 1, 24))
            alpha = ext.alpha()
            power = ext.one()
            for m in range(1, p):
                power = power * alpha
                tr = power.trace()
                want = LaurentSeries.constant(field.from_int(-1 if m == p - 1 else 0), tr.prec)
                cases += 1
                if not tr.agrees_with(want):
                    failures.append(f"p={p} f=t^-{n}: Tr(a^{m}) = {tr}")
    return CriterionResult(
        7, "trace_identities", not failures, "; ".join(failures) or f"{cases} traces"
    )


def _difference_operator_failure(ext, seed, samples):
    """First violated operator law for one extension, or None."""
    bext = ext.with_best_f()
    rng = random.Random(seed)
    b = boundary_generator(bext)
    i_value = ideal_i_sigma(bext).value
    if (b.sigma(1) - b).valuation_coeffwise() != i_value:
        return "chosen b does not generate the difference ideal"
    ops = DifferenceOperators(bext, b)
    one = bext.one()
    zero = bext.zero()
    p = bext.p
    for i in range(p):
        if not ops.apply(i, b ** i).agrees_with(one):
            return f"D_{i}(b^{i}) != 1"
        for j in range(i):
            if not ops.apply(i, b ** j).agrees_with(zero):
                return f"D_{i}(b^{j}) != 0"
        tele = zero
        for j in range(i + 1):
            tele = tele + b.sigma(j)
        if not ops.apply(i, b ** (i + 1)).agrees_with(tele):
            return f"D_{i}(b^{i + 1}) != sum of conjugates"
        if i <= p - 2:
            lhs = ops.apply(i, b ** (i + 1))
            step = lhs.sigma(1) - lhs
            if not step.agrees_with(b.sigma(i + 1) - b):
                return f"difference of D_{i}(b^{i + 1}) is off"
            if step.valuation_coeffwise() != i_value:
                return f"D_{i}(b^{i + 1}) difference is not a generator"
    zero_cut = Cut.at_least(0, ValueGroup.discrete(1))
    for trial in range(samples):
        x = integral_sample(bext, rng)
        for i in range(1, p):
            di_x = ops.apply(i, x)
            if not ops.apply(i, x * b).agrees_with(b.sigma(i) * di_x + ops.apply(i - 1, x)):
                return f"product rule failed at trial {trial}, i={i}"
            if not di_x.in_cut(zero_cut):
                return f"D_{i} left the integers at trial {trial}"
    return None


def criterion_difference_operators(extensions, seed=DEFAULT_SEED, samples=100):
    failures = []
    for label, ext in extensions:
        problem = _difference_operator_failure(ext, seed, samples)
        if problem is not None:
            failures.append(f"{label}: {problem}")
    return CriterionResult(
        8, "difference_operator_laws", not failures, "; ".join(failures[:3])
    )


def criterion_refined_swan_stability(extensions, seed=DEFAULT_SEED):
    failures = []
    for label, ext in extensions:
        res = check_refined_swan_stability(ext, shifts=50, seed=seed)
        if not res.ok:
            failures.append(f"{label}: {res.detail}")
    return CriterionResult(
        9, "refined_swan_stability", not failures, "; ".join(failures[:3])
    )


def criterion_norm_additivity_diagram(extensions, seed=DEFAULT_SEED, samples=100):
    failures = []
    for label, ext in extensions:
        res = check_norm_additivity(ext, samples=samples, seed=seed)
        if not res.ok:
            failures.append(f"{label} additivity: {res.detail}")
        res = check_diagram_commutativity(ext, samples=samples, seed=seed)
        if not res.ok:
            failures.append(f"{label} diagram: {res.detail}")
    return CriterionResult(
        10, "norm_additivity_and_diagram", not failures, "; ".join(failures[:3])
    )


def criterion_different_cross_check(extensions, seed=DEFAULT_SEED):
    failures = []
    for label, ext in extensions:
        d = different_ideal(ext)
        oracle = trace_dual_cut(ext, seed=seed)
        if d != oracle:
            failures.append(f"{label}: formula {d!r}, trace dual {oracle!r}")
        bext = ext.with_best_f()
        if bext.classification().value == "ferocious":
            if d != ideal_j(bext) ** (bext.p - 1):
                failures.append(f"{label}: ferocious different is not J^(p-1)")
    return CriterionResult(
        11, "different_vs_trace_dual", not failures, "; ".join(failures[:3])
    )


def criterion_principality_chain(extensions, seed=DEFAULT_SEED):
    failures = []
    for label, ext in extensions:
        flags = principality_chain(ext)
        if not all(flags.values()):
            failures.append(f"{label}: {flags}")
    for p, n in TOWER_GRID:
        rep = tower_report(TowerSpec(FieldSpec.finite(p, 2), n, 4))
        flags = tower_chain(rep)
        if any(flags.values()):
            failures.append(f"tower (p={p},n={n}): {flags}")
    return CriterionResult(
        12, "principality_chain", not failures, "; ".join(failures[:3])
    )


def run_all(seed=DEFAULT_SEED):
    """Execute every criterion; the shared grid extensions are built once."""
    extensions = [
        (_grid_label(p, kind, n), grid_extension(p, kind, n, prec))
        for p, kind, n, prec in DVR_GRID
    ]
    results = [
        criterion_swan_table(seed),
        criterion_best_f_oracle(seed),
        criterion_norm_ideal_defectless(extensions, seed),
        criterion_norm_ideal_tower(seed),
        criterion_tower_recursions(seed),
        criterion_step_identity(seed),
        criterion_trace_identities(seed),
        criterion_difference_operators(extensions, seed),
        criterion_refined_swan_stability(extensions, seed),
        criterion_norm_additivity_diagram(extensions, seed),
        criterion_different_cross_check(extensions, seed),
        criterion_principality_chain(extensions, seed),
    ]
    return results
