"""Exact arithmetic in the supported residue fields.

Two families are supported: the finite fields F_q, q = p^m, realised as
F_p[w] modulo a fixed irreducible polynomial, and the rational function
field F_p(u).  The distinction that matters downstream is perfectness:
every element of F_q is a p-th power, while F_p(u) has elements (such
as u) that are not.  Elements are immutable and written in a canonical
form, so equality of representations is equality in the field.

Polynomials over F_p are tuples of ints in [0, p), lowest degree first,
with no trailing zeros; () is the zero polynomial.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooSmall,
    NotAPthPower,
    NotRationalFunctionField,
    ZeroInput,
)

_ONE = (1,)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _trim(cs):
    i = len(cs)
    while i and cs[i - 1] == 0:
        i -= 1
    return tuple(cs[:i])


def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _pneg(a, p):
    return tuple((-c) % p for c in a)


def _psub(a, b, p):
    return _padd(a, _pneg(b, p), p)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _pdivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    rem = list(a)
    if len(rem) < len(b):
        return (), _trim(rem)
    quot = [0] * (len(rem) - len(b) + 1)
    for i in range(len(rem) - len(b), -1, -1):
        c = (rem[i + len(b) - 1] * inv_lead) % p
        if c:
            quot[i] = c
            for j, cb in enumerate(b):
                rem[i + j] = (rem[i + j] - c * cb) % p
    return _trim(quot), _trim(rem)


def _pmonic(a, p):
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple((c * inv) % p for c in a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p)


def _pderiv(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def _ppow_mod(base, e, mod, p):
    result = _ONE
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pirreducible(f, p):
    """Rabin test: f of degree m is irreducible over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    x = (0, 1)
    xq = x
    for _ in range(m):
        xq = _ppow_mod(xq, p, f, p)
    if _psub(xq, _pdivmod(x, f, p)[1], p):
        return False
    for d in _prime_divisors(m):
        xq = x
        for _ in range(m // d):
            xq = _ppow_mod(xq, p, f, p)
        if _pgcd(_psub(xq, x, p), f, p) != _ONE:
            return False
    return True


def _ppoly_str(cs, var):
    if not cs:
        return "0"
    parts = []
    for e in range(len(cs) - 1, -1, -1):
        c = cs[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            tail = var if e == 1 else f"{var}^{e}"
            parts.append(head + tail)
    return "+".join(parts)


# Fixed moduli used when a field is requested by its order alone (the
# CLI tower command).  These are constants of the artifact, not
# discovered at runtime.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),          # w^2+w+1
    (2, 3): (1, 1, 0, 1),       # w^3+w+1
    (2, 4): (1, 1, 0, 0, 1),    # w^4+w+1
    (2, 6): (1, 0, 0, 0, 0, 1, 1),  # w^6+w^5+1
    (3, 2): (1, 0, 1),          # w^2+1
    (3, 3): (1, 2, 0, 1),       # w^3+2w+1
    (3, 4): (1, 0, 1, 1, 1),    # w^4+w^3+w^2+1
    (5, 2): (1, 1, 1),          # w^2+w+1
    (5, 3): (1, 1, 0, 1),       # w^3+w+1
    (7, 2): (1, 0, 1),          # w^2+1
}


class FieldSpec:
    """Description of a coefficient field: F_q or F_p(u).

    Finite fields are F_p[w]/(modulus) for a fixed monic irreducible
    modulus of degree m supplied at construction time.  Instances are
    immutable and hashable; two specs are equal when they describe the
    same field presentation.
    """

    __slots__ = ("p", "kind", "degree", "modulus", "var")

    FINITE = "finite"
    RATIONAL = "rational"

    def __init__(self, p, kind, degree=1, modulus=None, var=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if kind not in (self.FINITE, self.RATIONAL):
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == self.FINITE:
            if degree < 1:
                raise ValueError("extension degree must be at least 1")
            if degree == 1:
                modulus = None
            else:
                if modulus is None:
                    raise ValueError("degree > 1 needs an explicit modulus")
                modulus = _trim(tuple(c % p for c in modulus))
                if len(modulus) != degree + 1:
                    raise ValueError("modulus degree does not match field degree")
                if modulus[-1] != 1:
                    raise ValueError("modulus must be monic")
                if not _pirreducible(modulus, p):
                    raise ValueError("modulus is reducible over F_p")
            var = var or "w"
        else:
            degree = 1
            modulus = None
            var = var or "u"
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def finite(cls, p, degree=1, modulus=None, var="w"):
        if degree > 1 and modulus is None:
            modulus = DEFAULT_MODULI.get((p, degree))
            if modulus is None:
                raise ValueError(f"no built-in modulus for F_{p**degree}")
        return cls(p, cls.FINITE, degree, modulus, var)

    @classmethod
    def rational(cls, p, var="u"):
        return cls(p, cls.RATIONAL, var=var)

    # -- basic structure ------------------------------------------------

    @property
    def is_finite(self):
        return self.kind == self.FINITE

    @property
    def order(self):
        return self.p ** self.degree if self.is_finite else None

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.kind == other.kind
            and self.degree == other.degree
            and self.modulus == other.modulus
            and self.var == other.var
        )

    def __hash__(self):
        return hash((self.p, self.kind, self.degree, self.modulus, self.var))

    def __repr__(self):
        if self.is_finite:
            return f"F{self.order}"
        return f"F{self.p}({self.var})"

    # -- element constructors -------------------------------------------

    def _fin(self, vec):
        return ResidueElem(self, tuple(vec), None)

    def _rat(self, num, den):
        num, den = _trim(num), _trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return ResidueElem(self, (), _ONE)
        if len(den) == 1:
            if den[0] != 1:
                inv = pow(den[0], -1, self.p)
                num = tuple((c * inv) % self.p for c in num)
            return ResidueElem(self, num, _ONE)
        g = _pgcd(num, den, self.p)
        if len(g) > 1:
            num = _pdivmod(num, g, self.p)[0]
            den = _pdivmod(den, g, self.p)[0]
        if len(den) == 1:
            if den[0] != 1:
                inv = pow(den[0], -1, self.p)
                num = tuple((c * inv) % self.p for c in num)
            return ResidueElem(self, num, _ONE)
        inv = pow(den[-1], -1, self.p)
        num = tuple((c * inv) % self.p for c in num)
        den = tuple((c * inv) % self.p for c in den)
        return ResidueElem(self, num, den)

    def zero(self):
        return self._fin((0,) * self.degree) if self.is_finite else self._rat((), _ONE)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        n %= self.p
        if self.is_finite:
            return self._fin((n,) + (0,) * (self.degree - 1))
        return self._rat((n,), _ONE)

    def from_vector(self, vec):
        if not self.is_finite:
            raise FieldMismatch("coefficient vectors describe finite fields only")
        vec = [c % self.p for c in vec]
        if len(vec) > self.degree:
            raise ValueError("vector longer than field degree")
        vec += [0] * (self.degree - len(vec))
        return self._fin(vec)

    def from_polys(self, num, den=_ONE):
        if self.is_finite:
            raise FieldMismatch("numerator/denominator pairs describe F_p(u) only")
        return self._rat(tuple(c % self.p for c in num), tuple(c % self.p for c in den))

    def generator(self):
        """w for F_q with m >= 2, u for F_p(u)."""
        if self.is_finite:
            if self.degree < 2:
                raise ValueError("prime fields have no distinguished generator")
            return self.from_vector((0, 1))
        return self.from_polys((0, 1))

    # -- enumeration and sampling ----------------------------------------

    def element_at(self, index):
        """The index-th element of F_q in base-p digit order."""
        if not self.is_finite:
            raise FieldMismatch("enumeration is for finite fields")
        vec = []
        for _ in range(self.degree):
            index, digit = divmod(index, self.p)
            vec.append(digit)
        return self._fin(vec)

    def elements(self):
        if not self.is_finite:
            raise FieldMismatch("enumeration is for finite fields")
        return (self.element_at(i) for i in range(self.order))

    def sample_point(self, rng, max_degree=3):
        """A random element for identity testing.

        Finite fields sample uniformly from all q elements; F_p(u)
        samples a uniform polynomial of degree <= max_degree, giving a
        sampling set of size p^(max_degree+1).
        """
        if self.is_finite:
            return self.element_at(rng.randrange(self.order))
        coeffs = [rng.randrange(self.p) for _ in range(max_degree + 1)]
        return self.from_polys(coeffs)

    def sample_space_size(self, max_degree=3):
        return self.order if self.is_finite else self.p ** (max_degree + 1)


class ResidueElem:
    """An element of F_q (coefficient vector) or F_p(u) (num/den pair).

    Canonical form: F_p(u) elements are in lowest terms with a monic
    denominator, so ``==`` on representations decides field equality.
    """

    __slots__ = ("field", "_a", "_b")

    def __init__(self, field, a, b):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueElem is immutable")

    # -- helpers ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, ResidueElem):
            if isinstance(other, int):
                return self.field.from_int(other)
            raise FieldMismatch(f"cannot combine ResidueElem with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def is_zero(self):
        if self.field.is_finite:
            return all(c == 0 for c in self._a)
        return not self._a

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        if f.is_finite:
            return f._fin((x + y) % f.p for x, y in zip(self._a, other._a))
        if self._b == _ONE and other._b == _ONE:
            return ResidueElem(f, _padd(self._a, other._a, f.p), _ONE)
        num = _padd(_pmul(self._a, other._b, f.p), _pmul(other._a, self._b, f.p), f.p)
        return f._rat(num, _pmul(self._b, other._b, f.p))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.is_finite:
            return f._fin((-c) % f.p for c in self._a)
        return ResidueElem(f, _pneg(self._a, f.p), self._b)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + self.field.from_int(other)

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        if f.is_finite:
            if f.degree == 1:
                return f._fin(((self._a[0] * other._a[0]) % f.p,))
            prod = _pmul(self._a, other._a, f.p)
            rem = _pdivmod(prod, f.modulus, f.p)[1]
            return f._fin(tuple(rem) + (0,) * (f.degree - len(rem)))
        if self._b == _ONE and other._b == _ONE:
            return ResidueElem(f, _pmul(self._a, other._a, f.p), _ONE)
        return f._rat(_pmul(self._a, other._a, f.p), _pmul(self._b, other._b, f.p))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if not f.is_finite:
            return f._rat(self._b, self._a)
        if f.degree == 1:
            return f._fin((pow(self._a[0], -1, f.p),))
        # extended Euclid in F_p[w] against the modulus
        r0, r1 = f.modulus, _trim(self._a)
        s0, s1 = (), _ONE
        while r1:
            q, r = _pdivmod(r0, r1, f.p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, f.p), f.p)
        inv_c = pow(r0[-1], -1, f.p)
        inv = tuple((c * inv_c) % f.p for c in s0)
        return f._fin(inv + (0,) * (f.degree - len(inv)))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self.field.from_int(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, ResidueElem)
            and self.field == other.field
            and self._a == other._a
            and self._b == other._b
        )

    def __hash__(self):
        return hash((self.field, self._a, self._b))

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        f = self.field
        if f.is_finite:
            return _ppoly_str(_trim(self._a), f.var)
        num = _ppoly_str(self._a, f.var)
        if self._b == _ONE:
            return num
        den = _ppoly_str(self._b, f.var)
        if "+" in num or "-" in num:
            num = f"({num})"
        if "+" in den or "-" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"{self.field!r}:{self}"

    def needs_parens(self):
        """Whether the rendering must be wrapped when used as a factor."""
        s = str(self)
        depth = 0
        for ch in s:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif depth == 0 and ch in "+-/":
                return True
        return False


def field_arith(a, b, op):
    """Named dispatch over the basic field operations.

    ``op`` is one of add/mul/neg/inv/pow; ``b`` is ignored for the unary
    operations and must be an integer exponent for ``pow``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        if not isinstance(b, int):
            raise FieldMismatch("pow takes an integer exponent")
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def is_pth_power(c):
    """Whether c lies in k^p; requires c != 0.

    Finite fields are perfect, so the answer is always True there.  In
    F_p(u) the element is a p-th power exactly when every exponent of
    the reduced numerator and denominator is divisible by p (the
    coefficients live in F_p, which is perfect).
    """
    if c.is_zero():
        raise ZeroInput("zero has no meaningful k^p membership here")
    if c.field.is_finite:
        return True
    p = c.field.p
    return all(
        x == 0 for i, x in enumerate(c._a) if i % p
    ) and all(x == 0 for i, x in enumerate(c._b) if i % p)


def frobenius_root(c):
    """The unique r with r^p = c, for c in k^p."""
    f = c.field
    if f.is_finite:
        if c.is_zero():
            return c
        return c ** (f.order // f.p)
    if c.is_zero():
        return c
    if not is_pth_power(c):
        raise NotAPthPower(f"{c} is not a p-th power in {f!r}")
    p = f.p
    num = [0] * ((len(c._a) - 1) // p + 1) if c._a else []
    for i, x in enumerate(c._a):
        if x:
            num[i // p] = x
    den = [0] * ((len(c._b) - 1) // p + 1)
    for i, x in enumerate(c._b):
        if x:
            den[i // p] = x
    return f.from_polys(num, den)


def derivative_u(c):
    """Formal d/du on F_p(u), by the quotient rule."""
    f = c.field
    if f.is_finite:
        raise NotRationalFunctionField("d/du needs the rational function field")
    p = f.p
    num = _psub(
        _pmul(_pderiv(c._a, p), c._b, p),
        _pmul(c._a, _pderiv(c._b, p), p),
        p,
    )
    return f.from_polys(num, _pmul(c._b, c._b, p))


def trace_to_prime(c):
    """Trace from F_q down to F_p, as an integer in [0, p)."""
    f = c.field
    if not f.is_finite:
        raise FieldMismatch("absolute trace is defined on finite fields")
    acc = f.zero()
    x = c
    for _ in range(f.degree):
        acc = acc + x
        x = x ** f.p
    return acc._a[0]


def artin_schreier_solvable(c):
    """Whether x^p - x = c has a solution x in the coefficient field.

    For F_q this is the absolute-trace criterion.  For F_p(u) any
    solution P/Q in lowest terms satisfies (P/Q)^p - P/Q =
    (P^p - P Q^(p-1)) / Q^p in lowest terms, so the denominator of c
    must be a p-th power Q^p and P solves an F_p-linear system.
    """
    f = c.field
    p = f.p
    if f.is_finite:
        return trace_to_prime(c) == 0
    if c.is_zero():
        return True
    den = c._b
    if any(x and i % p for i, x in enumerate(den)):
        return False
    q_poly = [0] * ((len(den) - 1) // p + 1)
    for i, x in enumerate(den):
        if x:
            q_poly[i // p] = x
    q_poly = _trim(q_poly)
    g_poly = c._a
    deg_q = len(q_poly) - 1
    deg_g = len(g_poly) - 1
    bound = max(deg_q, -(-(deg_g) // p), 0)
    qp1 = _ONE
    for _ in range(p - 1):
        qp1 = _pmul(qp1, q_poly, p)
    rows = max(p * bound, bound + len(qp1) - 1, deg_g) + 1
    # unknowns: coefficients P_0..P_bound; equation P^p - P*Q^(p-1) = G
    matrix = [[0] * (bound + 1) for _ in range(rows)]
    for j in range(bound + 1):
        if p * j < rows:
            matrix[p * j][j] = (matrix[p * j][j] + 1) % p
        for i, qc in enumerate(qp1):
            if qc and i + j < rows:
                matrix[i + j][j] = (matrix[i + j][j] - qc) % p
    rhs = [g_poly[i] if i <= deg_g else 0 for i in range(rows)]
    # Gaussian elimination over F_p
    pivot_row = 0
    for col in range(bound + 1):
        sel = None
        for r in range(pivot_row, rows):
            if matrix[r][col]:
                sel = r
                break
        if sel is None:
            continue
        matrix[pivot_row], matrix[sel] = matrix[sel], matrix[pivot_row]
        rhs[pivot_row], rhs[sel] = rhs[sel], rhs[pivot_row]
        inv = pow(matrix[pivot_row][col], -1, p)
        matrix[pivot_row] = [(x * inv) % p for x in matrix[pivot_row]]
        rhs[pivot_row] = (rhs[pivot_row] * inv) % p
        for r in range(rows):
            if r != pivot_row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [
                    (x - factor * y) % p for x, y in zip(matrix[r], matrix[pivot_row])
                ]
                rhs[r] = (rhs[r] - factor * rhs[pivot_row]) % p
        pivot_row += 1
    return not any(rhs[r] and not any(matrix[r]) for r in range(rows))


# ---------------------------------------------------------------------------
# Multivariate expressions and randomized identity testing
# ---------------------------------------------------------------------------


class Expr:
    """Expression tree over a residue field: constants, variables,
    +, -, *, /, integer powers.

    Division nodes carry a nonzero-denominator obligation that is
    checked at evaluation time (DivisionByZero propagates and the
    identity checker resamples the point).
    """

    __slots__ = ("op", "args", "payload")

    def __init__(self, op, args=(), payload=None):
        self.op = op
        self.args = args
        self.payload = payload

    @classmethod
    def const(cls, value):
        return cls("const", payload=value)

    @classmethod
    def var(cls, name):
        return cls("var", payload=name)

    def _lift(self, other):
        if isinstance(other, Expr):
            return other
        if isinstance(other, (int, ResidueElem)):
            return Expr.const(other)
        raise TypeError(f"cannot use {type(other).__name__} in an Expr")

    def __add__(self, other):
        return Expr("add", (self, self._lift(other)))

    def __radd__(self, other):
        return self._lift(other) + self

    def __sub__(self, other):
        return Expr("sub", (self, self._lift(other)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return Expr("mul", (self, self._lift(other)))

    def __rmul__(self, other):
        return self._lift(other) * self

    def __truediv__(self, other):
        return Expr("div", (self, self._lift(other)))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        return Expr("pow", (self,), payload=n)

    def __neg__(self):
        return Expr("neg", (self,))

    def variables(self):
        if self.op == "var":
            return {self.payload}
        out = set()
        for a in self.args:
            out |= a.variables()
        return out

    def evaluate(self, env, field):
        if self.op == "const":
            v = self.payload
            if isinstance(v, int):
                return field.from_int(v)
            if v.field != field:
                raise FieldMismatch("constant from a different field")
            return v
        if self.op == "var":
            return env[self.payload]
        vals = [a.evaluate(env, field) for a in self.args]
        if self.op == "add":
            return vals[0] + vals[1]
        if self.op == "sub":
            return vals[0] - vals[1]
        if self.op == "mul":
            return vals[0] * vals[1]
        if self.op == "div":
            if vals[1].is_zero():
                raise DivisionByZero("expression denominator vanished")
            return vals[0] / vals[1]
        if self.op == "pow":
            return vals[0] ** self.payload
        if self.op == "neg":
            return -vals[0]
        raise ValueError(f"unknown node {self.op!r}")

    def degree_pair(self):
        """(numerator degree, denominator degree) upper bounds."""
        if self.op == "const":
            return (0, 0)
        if self.op == "var":
            return (1, 0)
        if self.op in ("add", "sub"):
            (n1, d1), (n2, d2) = (a.degree_pair() for a in self.args)
            return (max(n1 + d2, n2 + d1), d1 + d2)
        if self.op == "mul":
            (n1, d1), (n2, d2) = (a.degree_pair() for a in self.args)
            return (n1 + n2, d1 + d2)
        if self.op == "div":
            (n1, d1), (n2, d2) = (a.degree_pair() for a in self.args)
            return (n1 + d2, d1 + n2)
        if self.op == "pow":
            n, d = self.args[0].degree_pair()
            return (n * self.payload, d * self.payload)
        return self.args[0].degree_pair()


class IdentityCheck:
    """Outcome of a randomized identity test."""

    __slots__ = ("ok", "witness", "trials", "degree_bound", "sample_space")

    def __init__(self, ok, witness, trials, degree_bound, sample_space):
        self.ok = ok
        self.witness = witness
        self.trials = trials
        self.degree_bound = degree_bound
        self.sample_space = sample_space

    @property
    def false_pass_bound(self):
        """Per-trial probability bound for accepting a false identity."""
        return min(Fraction(1), Fraction(self.degree_bound, self.sample_space))

    def __repr__(self):
        state = "pass" if self.ok else f"fail at {self.witness}"
        return f"IdentityCheck({state}, trials={self.trials})"


def check_identity(lhs, rhs, field, trials, seed, max_attempts=64):
    """Randomized equality test of two rational expressions.

    Points are sampled with rejection past denominator zeros; after
    ``max_attempts`` failed samples in a single trial the field is
    declared too small.  A pass after t trials is wrong with
    probability at most (degree_bound / sample_space)^t when the two
    sides differ.
    """
    import random

    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    names = sorted(lhs.variables() | rhs.variables())
    n1, d1 = lhs.degree_pair()
    n2, d2 = rhs.degree_pair()
    degree_bound = max(n1 + d2, n2 + d1)
    space = field.sample_space_size()
    for _ in range(trials):
        for attempt in range(max_attempts):
            env = {name: field.sample_point(rng) for name in names}
            try:
                a = lhs.evaluate(env, field)
                b = rhs.evaluate(env, field)
            except DivisionByZero:
                continue
            if a != b:
                witness = {name: str(v) for name, v in env.items()}
                return IdentityCheck(False, witness, trials, degree_bound, space)
            break
        else:
            raise FieldTooSmall(
                f"no valid evaluation point in {max_attempts} attempts over {field!r}"
            )
    return IdentityCheck(True, None, trials, degree_bound, space)


def exhaustive_identity(lhs, rhs, field):
    """Check an identity on every point of a finite field (test oracle)."""
    names = sorted(lhs.variables() | rhs.variables())
    for point in itertools.product(field.elements(), repeat=len(names)):
        env = dict(zip(names, point))
        try:
            a = lhs.evaluate(env, field)
            b = rhs.evaluate(env, field)
        except DivisionByZero:
            continue
        if a != b:
            return False
    return True
