"""Value groups, cuts, and truncated Laurent series over k((t)).

The precision model is half-open: a series with precision N has every
coefficient at exponents e < N determined (absent means zero), and
knows nothing at exponents >= N.  All values are exact rationals; a Cut
records a fractional ideal of a valued field as a (value, bound) pair
relative to a declared value group.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    AmbientMismatch,
    FieldMismatch,
    InsufficientPrecision,
    ZeroSeries,
)
from .fields import ResidueElem


class ValueGroup:
    """The value group of a valued field.

    Three shapes are supported: g*Z for a positive rational granularity
    g, Z[1/p], and a dense group (any rational allowed).
    """

    __slots__ = ("kind", "granularity", "p")

    DISCRETE = "discrete"
    P_DIVISIBLE = "p_divisible"
    DENSE = "dense"

    def __init__(self, kind, granularity=None, p=None):
        self.kind = kind
        self.granularity = granularity
        self.p = p

    @classmethod
    def discrete(cls, granularity=1):
        g = Fraction(granularity)
        if g <= 0:
            raise ValueError("granularity must be positive")
        return cls(cls.DISCRETE, granularity=g)

    @classmethod
    def z_one_over_p(cls, p):
        return cls(cls.P_DIVISIBLE, p=p)

    @classmethod
    def dense(cls):
        return cls(cls.DENSE)

    def contains(self, value):
        value = Fraction(value)
        if self.kind == self.DISCRETE:
            return (value / self.granularity).denominator == 1
        if self.kind == self.P_DIVISIBLE:
            den = value.denominator
            while den % self.p == 0:
                den //= self.p
            return den == 1
        return True

    def least_element_above(self, value):
        """Smallest group element strictly greater than value (discrete only)."""
        if self.kind != self.DISCRETE:
            raise AmbientMismatch("only discrete groups have successors")
        g = self.granularity
        q = value / g
        n = q.numerator // q.denominator  # floor
        return g * (n + 1)

    def least_element_at_least(self, value):
        if self.kind != self.DISCRETE:
            raise AmbientMismatch("only discrete groups have successors")
        if self.contains(value):
            return Fraction(value)
        return self.least_element_above(value)

    def __eq__(self, other):
        return (
            isinstance(other, ValueGroup)
            and self.kind == other.kind
            and self.granularity == other.granularity
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.granularity, self.p))

    def __repr__(self):
        if self.kind == self.DISCRETE:
            return f"{self.granularity}*Z" if self.granularity != 1 else "Z"
        if self.kind == self.P_DIVISIBLE:
            return f"Z[1/{self.p}]"
        return "dense"


class Cut:
    """A fractional ideal {v >= value} (closed) or {v > value} (open).

    Over a discrete group an open cut is normalized eagerly to the
    closed cut at the next group element, which encodes that the two
    describe the same set of field elements.  A closed cut whose value
    lies outside the group is representable; ``normalize`` lifts it to
    the equivalent closed cut at a group element.
    """

    __slots__ = ("value", "closed", "group")

    def __init__(self, value, closed, group):
        value = Fraction(value)
        if group.kind == ValueGroup.DISCRETE and not closed:
            value = group.least_element_above(value)
            closed = True
        self.value = value
        self.closed = closed
        self.group = group

    @classmethod
    def at_least(cls, value, group):
        return cls(value, True, group)

    @classmethod
    def above(cls, value, group):
        return cls(value, False, group)

    def normalize(self):
        if self.group.kind == ValueGroup.DISCRETE and self.closed:
            lifted = self.group.least_element_at_least(self.value)
            if lifted != self.value:
                return Cut(lifted, True, self.group)
        return self

    def _check(self, other):
        if self.group != other.group:
            raise AmbientMismatch(f"{self.group!r} vs {other.group!r}")

    def __mul__(self, other):
        self._check(other)
        return Cut(self.value + other.value, self.closed and other.closed, self.group)

    def __pow__(self, n):
        if n == 0:
            return Cut(0, True, self.group)
        return Cut(self.value * n, self.closed, self.group)

    def inverse(self):
        return self ** (-1)

    def is_principal(self):
        return self.closed and self.group.contains(self.value)

    def contains(self, value):
        """Whether an element of valuation ``value`` lies in the ideal."""
        if self.closed:
            return value >= self.value
        return value > self.value

    def subset_of(self, other):
        """Ideal containment: every valuation this cut admits, other admits."""
        if self.value > other.value:
            return True
        if self.value < other.value:
            return False
        return other.closed or not self.closed

    def __eq__(self, other):
        return (
            isinstance(other, Cut)
            and self.value == other.value
            and self.closed == other.closed
            and self.group == other.group
        )

    def __hash__(self):
        return hash((self.value, self.closed, self.group))

    def __repr__(self):
        op = ">=" if self.closed else ">"
        return f"{{v {op} {self.value}}}"

    def to_json(self):
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "bound": "closed" if self.closed else "open",
        }


def restrict_cut(cut, group):
    """The same valuation bound read in another value group.

    Used for intersections such as (ideal of B) with A: membership of a
    group element is preserved, and the result is normalized.
    """
    return Cut(cut.value, cut.closed, group).normalize()


class LaurentSeries:
    """A truncated element of k((t)).

    ``coeffs`` maps exponents to nonzero ResidueElems; ``prec`` is the
    half-open knowledge bound (exponents < prec are determined).
    Instances are treated as immutable; operations return fresh objects.
    """

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field, coeffs, prec):
        clean = {}
        for e, c in coeffs.items():
            if e < prec and not c.is_zero():
                clean[e] = c
        self.field = field
        self.coeffs = clean
        self.prec = prec

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, prec):
        return cls(field, {}, prec)

    @classmethod
    def one(cls, field, prec):
        return cls(field, {0: field.one()}, prec)

    @classmethod
    def monomial(cls, field, exponent, coeff=1, prec=None):
        if isinstance(coeff, int):
            coeff = field.from_int(coeff)
        if prec is None:
            raise ValueError("monomial needs an explicit precision")
        return cls(field, {exponent: coeff}, prec)

    @classmethod
    def constant(cls, coeff, prec):
        return cls(coeff.field, {0: coeff}, prec)

    # -- inspection ----------------------------------------------------------

    def support(self):
        return sorted(self.coeffs)

    def coeff(self, e):
        if e >= self.prec:
            raise InsufficientPrecision(f"coefficient at t^{e} is beyond precision {self.prec}")
        return self.coeffs.get(e, self.field.zero())

    def is_zero_known(self):
        """Zero on the whole known range (says nothing beyond prec)."""
        return not self.coeffs

    def low_bound(self):
        """min(support), or prec when the known range is all zero."""
        return min(self.coeffs) if self.coeffs else self.prec

    def valuation(self):
        if not self.coeffs:
            raise InsufficientPrecision(
                f"all known coefficients vanish; only v >= {self.prec} is certain"
            )
        return Fraction(min(self.coeffs))

    def leading(self):
        v = min(self.coeffs)
        return v, self.coeffs[v]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return LaurentSeries.constant(self.field.from_int(other), self.prec)
        if isinstance(other, ResidueElem):
            return LaurentSeries.constant(other, self.prec)
        if not isinstance(other, LaurentSeries):
            raise FieldMismatch(f"cannot combine series with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return LaurentSeries(self.field, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, {e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        va, vb = self.low_bound(), other.low_bound()
        prec = min(self.prec + vb, other.prec + va)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= prec:
                    continue
                c = c1 * c2
                cur = out.get(e)
                out[e] = c if cur is None else cur + c
        return LaurentSeries(self.field, out, prec)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a field element (precision preserved)."""
        if isinstance(c, int):
            c = self.field.from_int(c)
        return LaurentSeries(self.field, {e: x * c for e, x in self.coeffs.items()}, self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentSeries(
            self.field, {e + k: c for e, c in self.coeffs.items()}, self.prec + k
        )

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.one(self.field, self.prec - 2 * min(0, self.low_bound()))
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def inverse(self, target_prec=None):
        """Multiplicative inverse via the geometric series.

        The best achievable precision is prec - 2v where v is the
        valuation; asking for more raises InsufficientPrecision.
        """
        if not self.coeffs:
            raise ZeroSeries(
                f"cannot invert a series with no known nonzero coefficient (prec {self.prec})"
            )
        v, lead = self.leading()
        avail = self.prec - 2 * v
        if target_prec is None:
            target_prec = avail
        elif target_prec > avail:
            raise InsufficientPrecision(
                f"inverse known below {avail}, requested {target_prec}"
            )
        lead_inv = lead.inverse()
        # self = lead*t^v * (1 + r), val(r) >= 1
        r = LaurentSeries(
            self.field,
            {e - v: c * lead_inv for e, c in self.coeffs.items() if e != v},
            self.prec - v,
        )
        inv_unit = LaurentSeries.one(self.field, target_prec + v)
        term = LaurentSeries.one(self.field, target_prec + v)
        if r.coeffs:
            step = -r
            while True:
                term = term * step
                term = term.truncate(target_prec + v)
                if term.is_zero_known():
                    break
                inv_unit = inv_unit + term
        return inv_unit.scale(lead_inv).shift(-v).truncate(target_prec)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.coeffs, prec)

    def euler_derivative(self):
        """t * d/dt, i.e. multiply each coefficient by its exponent."""
        out = {e: c * (e % self.field.p) for e, c in self.coeffs.items()}
        return LaurentSeries(self.field, out, self.prec)

    def u_derivative(self):
        """Coefficientwise d/du (rational function coefficients only)."""
        from .fields import derivative_u

        out = {e: derivative_u(c) for e, c in self.coeffs.items()}
        return LaurentSeries(self.field, out, self.prec)

    # -- comparison and rendering -------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items()), self.prec))

    def agrees_with(self, other):
        """Equality on the overlapping known range."""
        return (self - other).is_zero_known()

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in self.support():
            c = self.coeffs[e]
            cs = str(c)
            if e == 0:
                parts.append(cs)
                continue
            t = "t" if e == 1 else f"t^{e}"
            if cs == "1":
                parts.append(t)
            else:
                if c.needs_parens():
                    cs = f"({cs})"
                parts.append(f"{cs}*{t}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} + O(t^{self.prec})>"


def series_in_cut(s, cut):
    """Whether the series lies in the fractional ideal the cut denotes.

    Requires the known range to cover every exponent outside the cut;
    otherwise membership cannot be certified and InsufficientPrecision
    is raised (unless an offending coefficient is already visible).
    """
    for e in s.coeffs:
        if not cut.contains(Fraction(e)):
            return False
    v = cut.value
    if cut.closed:
        # excluded integer exponents are those < value
        top_excluded = v.numerator // v.denominator  # floor
        if Fraction(top_excluded) == v:
            top_excluded -= 1
    else:
        top_excluded = v.numerator // v.denominator
    if s.prec <= top_excluded:
        raise InsufficientPrecision(
            f"membership in {cut!r} needs knowledge below t^{top_excluded + 1}, "
            f"series known below t^{s.prec}"
        )
    return True


def series_is_integral(s):
    """No pole on the known range; needs the full negative range known."""
    if any(e < 0 for e in s.coeffs):
        return False
    if s.prec < 0:
        raise InsufficientPrecision(
            f"integrality needs precision >= 0, series known below t^{s.prec}"
        )
    return True


def random_series(field, rng, lo, hi, prec, density=0.7):
    """A random series supported in [lo, hi] (test/verifier sampling)."""
    coeffs = {}
    for e in range(lo, hi + 1):
        if rng.random() < density:
            c = field.sample_point(rng, max_degree=1)
            if not c.is_zero():
                coeffs[e] = c
    return LaurentSeries(field, coeffs, prec)
