"""Degree-p Artin-Schreier extensions L = K[T]/(T^p - T - f) of K = k((t)).

Provides the reduction of f to its best representative modulo the map
x -> x^p - x, the Swan conductor, the ramification classification,
arithmetic in L with the Galois action, norm and trace through the
multiplication matrix, valuations on L, the inductive difference
operators, and the shape of the integral closure.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .errors import (
    DegenerateGenerator,
    ExtensionMismatch,
    FieldMismatch,
    InsufficientPrecision,
    NotApplicable,
    ZeroElement,
)
from .fields import artin_schreier_solvable, frobenius_root, is_pth_power
from .series import Cut, LaurentSeries, ValueGroup, series_in_cut


class BestCase(Enum):
    """Shape of the reduced (best) representative."""

    INTEGRAL = "integral"                  # no pole: f in k[[t]]
    WILD_POLE = "wild_pole"                # pole order coprime to p
    FEROCIOUS_POLE = "ferocious_pole"      # p | pole order, residue not a p-th power


class RamificationType(Enum):
    TRIVIAL = "trivial"
    UNRAMIFIED = "unramified"
    WILD = "wild"
    FEROCIOUS = "ferocious"
    UNKNOWN = "unknown"


class BestForm:
    """Result of the reduction: the normal form, its case, the Swan
    conductor, and the elements h used (f_best = f - sum(h^p - h))."""

    __slots__ = ("f_best", "case", "swan", "reduction_log")

    def __init__(self, f_best, case, swan, reduction_log):
        self.f_best = f_best
        self.case = case
        self.swan = swan
        self.reduction_log = tuple(reduction_log)

    def __repr__(self):
        return f"BestForm({self.f_best!r}, {self.case.value}, swan={self.swan})"


def reduce_to_best(f):
    """Reduce f modulo x^p - x until no negative term can be absorbed.

    A term c*t^(-m) with m > 0, p | m and c a p-th power is replaced by
    root(c)*t^(-m/p), which subtracts h^p - h for h = root(c)*t^(-m/p).
    Each step shrinks the multiset of negative exponents, so the loop
    terminates.  Precision must be at least 1 so the whole negative
    range and the constant term are known.
    """
    field = f.field
    p = field.p
    if f.prec < 1:
        raise InsufficientPrecision("best-form reduction needs precision >= 1")
    coeffs = dict(f.coeffs)
    log = []
    while True:
        target = None
        for e in sorted(coeffs):
            if e >= 0:
                break
            if e % p == 0 and is_pth_power(coeffs[e]):
                target = e
                break
        if target is None:
            break
        c = coeffs.pop(target)
        root = frobenius_root(c)
        log.append(LaurentSeries(field, {target // p: root}, f.prec))
        dest = target // p
        cur = coeffs.get(dest)
        new = root if cur is None else cur + root
        if new.is_zero():
            coeffs.pop(dest, None)
        else:
            coeffs[dest] = new
    f_best = LaurentSeries(field, coeffs, f.prec)
    negatives = [e for e in coeffs if e < 0]
    if not negatives:
        return BestForm(f_best, BestCase.INTEGRAL, Fraction(0), log)
    n = -min(negatives)
    case = BestCase.WILD_POLE if n % p else BestCase.FEROCIOUS_POLE
    return BestForm(f_best, case, Fraction(n), log)


class ASExtension:
    """The extension defined by alpha^p - alpha = f, with its best form
    computed eagerly.  Immutable; safe to share."""

    __slots__ = ("field", "p", "f", "best", "_cache")

    def __init__(self, field, f):
        if f.field != field:
            raise FieldMismatch("defining series must live over the declared field")
        if f.is_zero_known():
            raise ZeroElement("the defining series is zero on its known range")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "p", field.p)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "best", reduce_to_best(f))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("ASExtension is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ASExtension)
            and self.field == other.field
            and self.f == other.f
        )

    def __hash__(self):
        return hash((self.field, self.f))

    def __repr__(self):
        return f"AS({self.field!r}, f={self.f})"

    @property
    def swan(self):
        return self.best.swan

    def with_best_f(self):
        """The same extension presented by its best representative."""
        if self.f == self.best.f_best:
            return self
        key = "best_ext"
        if key not in self._cache:
            self._cache[key] = ASExtension(self.field, self.best.f_best)
        return self._cache[key]

    def classification(self):
        key = "classification"
        if key not in self._cache:
            self._cache[key] = classify(self)
        return self._cache[key]

    # -- elements ---------------------------------------------------------

    def zero(self):
        z = LaurentSeries.zero(self.field, self.f.prec)
        return LElement(self, (z,) * self.p)

    def one(self):
        return self.from_series(LaurentSeries.one(self.field, self.f.prec))

    def alpha(self):
        key = "alpha"
        if key not in self._cache:
            z = LaurentSeries.zero(self.field, self.f.prec)
            coeffs = [z] * self.p
            coeffs[1] = LaurentSeries.one(self.field, self.f.prec)
            self._cache[key] = LElement(self, tuple(coeffs))
        return self._cache[key]

    def from_series(self, s):
        if s.field != self.field:
            raise FieldMismatch("series over a different coefficient field")
        z = LaurentSeries.zero(self.field, s.prec)
        return LElement(self, (s,) + (z,) * (self.p - 1))

    def element(self, coeff_list):
        coeffs = []
        for c in coeff_list:
            if isinstance(c, int):
                c = LaurentSeries.constant(self.field.from_int(c), self.f.prec)
            coeffs.append(c)
        if len(coeffs) != self.p:
            raise ExtensionMismatch(f"need exactly {self.p} coefficients")
        return LElement(self, tuple(coeffs))

    def inverse_alpha(self):
        key = "inverse_alpha"
        if key not in self._cache:
            self._cache[key] = self.alpha().inverse()
        return self._cache[key]


class LElement:
    """An element of L as a coefficient vector over K in the basis
    1, alpha, ..., alpha^(p-1)."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext, coeffs):
        self.ext = ext
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, (int, LaurentSeries)):
            if isinstance(other, int):
                other = LaurentSeries.constant(
                    self.ext.field.from_int(other), self.ext.f.prec
                )
            return self.ext.from_series(other)
        if not isinstance(other, LElement):
            raise ExtensionMismatch(f"cannot combine LElement with {type(other).__name__}")
        if other.ext != self.ext:
            raise ExtensionMismatch("elements of different extensions")
        return other

    def __add__(self, other):
        other = self._check(other)
        return LElement(self.ext, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return LElement(self.ext, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def mul_alpha(self):
        """Multiply by alpha using alpha^p = alpha + f."""
        p = self.ext.p
        f = self.ext.f
        top = self.coeffs[p - 1]
        out = [top * f]
        for i in range(1, p):
            c = self.coeffs[i - 1]
            if i == 1:
                c = c + top
            out.append(c)
        return LElement(self.ext, tuple(out))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentSeries)):
            if isinstance(other, int):
                return self.scale_int(other)
            return LElement(self.ext, tuple(c * other for c in self.coeffs))
        other = self._check(other)
        acc = self.ext.zero()
        power = self
        for i in range(self.ext.p):
            ci = other.coeffs[i]
            acc = acc + LElement(self.ext, tuple(c * ci for c in power.coeffs))
            if i < self.ext.p - 1:
                power = power.mul_alpha()
        return acc

    __rmul__ = __mul__

    def scale_int(self, n):
        n %= self.ext.p
        c = self.ext.field.from_int(n)
        return LElement(self.ext, tuple(s.scale(c) for s in self.coeffs))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.ext.one()
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def sigma(self, k=1):
        """The Galois action determined by alpha -> alpha + k."""
        p = self.ext.p
        k %= p
        if k == 0:
            return self
        field = self.ext.field
        z = LaurentSeries.zero(field, min(c.prec for c in self.coeffs))
        out = [z] * p
        for i, ci in enumerate(self.coeffs):
            # (alpha + k)^i expanded binomially; coefficients live in F_p
            for j in range(i + 1):
                scalar = (_binom(i, j) * pow(k, i - j, p)) % p
                if scalar:
                    out[j] = out[j] + ci.scale(field.from_int(scalar))
        return LElement(self.ext, tuple(out))

    def multiplication_matrix(self):
        """Columns are self * alpha^j in the power basis."""
        cols = []
        cur = self
        for j in range(self.ext.p):
            cols.append(cur.coeffs)
            if j < self.ext.p - 1:
                cur = cur.mul_alpha()
        # entry [i][j] = coefficient of alpha^i in self*alpha^j
        return [[cols[j][i] for j in range(self.ext.p)] for i in range(self.ext.p)]

    def trace(self):
        m = self.multiplication_matrix()
        acc = m[0][0]
        for i in range(1, self.ext.p):
            acc = acc + m[i][i]
        return acc

    def norm(self):
        return _det(self.multiplication_matrix(), self.ext.field)

    def conjugate_product(self):
        """Product of sigma^i(self) over i = 1..p-1."""
        acc = None
        for i in range(1, self.ext.p):
            s = self.sigma(i)
            acc = s if acc is None else acc * s
        return acc if acc is not None else self.ext.one()

    def inverse(self, window=None):
        """1/x = (prod of the other conjugates) / N(x).

        ``window`` caps how many terms above its leading exponent the
        norm inverse carries; callers that only read the result below a
        bound should pass one, since inverting to full available
        precision can be much denser.  Membership checks downstream
        still detect a window that was too tight, so this trades work,
        never soundness.
        """
        n = self.norm()
        target = None
        if window is not None:
            v = n.valuation()
            target = min(n.prec - 2 * v, -v + window)
        inv_n = n.inverse(target)
        conj = self.conjugate_product()
        return conj * inv_n

    def truncate(self, prec):
        """Forget knowledge above the given precision (cheapens inverses)."""
        return LElement(self.ext, tuple(c.truncate(prec) for c in self.coeffs))

    def is_zero_known(self):
        return all(c.is_zero_known() for c in self.coeffs)

    def agrees_with(self, other):
        return (self - other).is_zero_known()

    def valuation(self):
        """v_L in v_K units, computed through the norm."""
        if self.is_zero_known():
            raise ZeroElement("element is zero on its known range")
        return self.norm().valuation() / self.ext.p

    def _coeffwise_valid(self):
        """Coefficientwise valuations need the reduced presentation: the
        powers of alpha then have pairwise distinct valuations modulo
        the base group (wild) or independent residues (ferocious and
        unramified), so minima distribute over the coordinates."""
        ext = self.ext
        return (
            ext.f == ext.best.f_best
            and ext.classification() is not RamificationType.TRIVIAL
        )

    def valuation_coeffwise(self):
        """v_L via min over the basis coefficients:
        v_L(sum c_i alpha^i) = min_i (v(c_i) - i*swan/p)."""
        if self.is_zero_known():
            raise ZeroElement("element is zero on its known range")
        if not self._coeffwise_valid():
            raise NotApplicable(
                "coefficientwise valuation needs the reduced, nontrivial presentation"
            )
        shift = self.ext.swan / self.ext.p
        vals = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero_known():
                vals.append(c.valuation() - i * shift)
        return min(vals)

    def in_cut(self, cut):
        """Membership of the element in a fractional ideal of L given as
        a cut in v_K units, decided coefficientwise."""
        if not self._coeffwise_valid():
            raise NotApplicable(
                "coefficientwise membership needs the reduced, nontrivial presentation"
            )
        shift = self.ext.swan / self.ext.p
        for i, c in enumerate(self.coeffs):
            shifted = Cut(cut.value + i * shift, cut.closed, ValueGroup.dense())
            if not series_in_cut(c, shifted):
                return False
        return True

    def is_integral(self):
        try:
            return self.valuation() >= 0
        except InsufficientPrecision:
            if self._coeffwise_valid():
                return self.valuation_coeffwise() >= 0
            raise

    def __eq__(self, other):
        return (
            isinstance(other, LElement)
            and self.ext == other.ext
            and self.coeffs == other.coeffs
        )

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero_known():
                continue
            base = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
            parts.append(f"({c})*{base}" if i else f"({c})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<L| {self}>"


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _det(matrix, field):
    """Determinant by expansion over column subsets (Laplace with memo)."""
    p = len(matrix)
    if p == 1:
        return matrix[0][0]
    cols = tuple(range(p))

    def minor(row, remaining):
        if row == p:
            return None
        key = (row, remaining)
        if key in memo:
            return memo[key]
        acc = None
        sign = 1
        for idx, j in enumerate(remaining):
            entry = matrix[row][j]
            rest = remaining[:idx] + remaining[idx + 1 :]
            sub = minor(row + 1, rest)
            term = entry if sub is None else entry * sub
            if sign < 0:
                term = -term
            acc = term if acc is None else acc + term
            sign = -sign
        memo[key] = acc
        return acc

    memo = {}
    return minor(0, cols)


def classify(ext):
    """Ramification type of the extension, from the best form.

    A pole of order coprime to p is wild; a p-divisible pole with a
    non-p-th-power residue is ferocious.  With no pole the extension is
    unramified or trivial according to whether the constant residue lies
    in the image of x -> x^p - x, which is decided exactly for both
    supported residue fields.
    """
    best = ext.best
    if best.case is BestCase.WILD_POLE:
        return RamificationType.WILD
    if best.case is BestCase.FEROCIOUS_POLE:
        return RamificationType.FEROCIOUS
    c0 = best.f_best.coeff(0)
    if artin_schreier_solvable(c0):
        return RamificationType.TRIVIAL
    return RamificationType.UNRAMIFIED


class BasisDescription:
    """Shape of the integral closure B over A = k[[t]].

    Wild: B = sum A_i alpha^i with A_i the coefficient ideal, recorded
    as cuts over the value group of K.  Ferocious: B = A[alpha*gamma]
    for the recorded scaling gamma in K.
    """

    __slots__ = ("kind", "cuts", "gamma", "ext")

    def __init__(self, kind, ext, cuts=None, gamma=None):
        self.kind = kind
        self.ext = ext
        self.cuts = cuts
        self.gamma = gamma

    def generators(self):
        """Boundary generators of the A_i alpha^i (wild) or the powers
        of the unit alpha*gamma (ferocious)."""
        ext = self.ext
        field = ext.field
        prec = ext.f.prec
        alpha = ext.alpha()
        out = []
        if self.kind == "wild":
            for i in range(ext.p):
                a_i = self.cuts[i].value
                g = LaurentSeries.monomial(field, int(a_i), 1, prec)
                out.append((alpha ** i) * g)
        else:
            unit = alpha * self.gamma
            for i in range(ext.p):
                out.append(unit ** i)
        return out


def integral_basis(ext):
    """Describe B per the ramification type; Swan-positive cases only."""
    kind = ext.classification()
    ext = ext.with_best_f()
    n = ext.swan
    p = ext.p
    zgroup = ValueGroup.discrete(1)
    if kind is RamificationType.WILD:
        cuts = [Cut.at_least(0, zgroup)]
        for i in range(1, p):
            cuts.append(Cut.above(Fraction(i) * n / p, zgroup))
        return BasisDescription("wild", ext, cuts=tuple(cuts))
    if kind is RamificationType.FEROCIOUS:
        gamma = LaurentSeries.monomial(ext.field, int(n / p), 1, ext.f.prec)
        return BasisDescription("ferocious", ext, gamma=gamma)
    raise NotApplicable(f"no integral basis description for {kind.value} extensions")


class DifferenceOperators:
    """The inductive operators D_0 = id, D_i = (s-1)D_{i-1} scaled by the
    inverse of (s-1)(D_{i-1}(b^i)), for a fixed b whose difference
    generates the difference ideal.

    The denominators depend only on b; their inverses are cached so
    applying the tower to many elements stays cheap.
    """

    def __init__(self, ext, b):
        self.ext = ext
        self.b = b
        self._den_inv = [None]  # index i holds 1/(s-1)(D_{i-1}(b^i))
        for i in range(1, ext.p):
            power = b ** i
            num = self.apply(i - 1, power)
            den = num.sigma(1) - num
            if den.is_zero_known():
                raise DegenerateGenerator(
                    f"(sigma-1)(D_{i-1}(b^{i})) vanishes; b does not qualify"
                )
            self._den_inv.append(den.inverse())

    def denominator_inverse(self, i):
        return self._den_inv[i]

    def apply(self, i, x):
        if i == 0:
            return x
        if i >= self.ext.p:
            raise ValueError("index must be below p")
        cur = x
        for j in range(1, i + 1):
            diff = cur.sigma(1) - cur
            cur = diff * self._den_inv[j]
        return cur


def integral_sample(ext, rng, span=2, terms=2):
    """A random integral element of the reduced presentation, built
    from the shape of B.

    Unramified extensions have B = A[alpha] with alpha a unit, so the
    plain alpha powers serve as generators there.
    """
    ext = ext.with_best_f()
    field = ext.field
    prec = ext.f.prec
    if ext.classification() is RamificationType.UNRAMIFIED:
        alpha = ext.alpha()
        gens = [alpha ** i for i in range(ext.p)]
    else:
        gens = integral_basis(ext).generators()
    acc = ext.zero()
    for g in gens:
        picks = {}
        for _ in range(terms):
            e = rng.randrange(0, span + 1)
            c = field.sample_point(rng, max_degree=1)
            if not c.is_zero():
                picks[e] = c
        if picks:
            acc = acc + g * LaurentSeries(field, picks, prec)
    if acc.is_zero_known():
        return gens[rng.randrange(len(gens))]
    return acc


def unit_sample(ext, rng, span=2):
    """A random element of L^x (nonzero on the known range), in the
    reduced presentation."""
    ext = ext.with_best_f()
    x = integral_sample(ext, rng, span=span)
    shift = rng.randrange(-span, span + 1)
    g = LaurentSeries.monomial(ext.field, shift, 1, ext.f.prec)
    out = x * g
    if out.is_zero_known():
        return ext.alpha()
    return out
