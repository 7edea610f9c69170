"""Textual input: field specifications and Laurent-series expressions.

Field specs: ``Fp:3``, ``Fq:9:w^2+1`` (modulus over F_p), ``Fp(u):3``.
Series: signed sums of terms, each a product of coefficient literals
and powers of t, e.g. ``t^-4 + u*t^-2`` or ``(w+1)*t^2 + 2``.
Coefficient literals use +, -, *, /, integer powers and parentheses
over integers and the field variable.  Whitespace is ignored.
"""

from __future__ import annotations

import re

from .errors import FieldLiteralError, ParseError
from .fields import FieldSpec
from .series import LaurentSeries

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind == "op" and val == op:
            return self.next()
        raise ParseError(f"expected {op!r}", pos)

    def fail(self, message):
        raise ParseError(message, self.peek()[2])

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def signed_int(self):
        sign = 1
        if self.at_op("-"):
            self.next()
            sign = -1
        kind, val, pos = self.peek()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        self.next()
        return sign * val


class _SeriesParser(_Parser):
    """Evaluates the restricted grammar directly: coefficients are exact
    field elements and t-exponents are integers, so precision plays no
    role until the final assembly."""

    def __init__(self, text, field):
        super().__init__(text)
        self.field = field

    def parse(self, prec):
        coeffs = {}
        if self.peek()[0] == "end":
            self.fail("empty series expression")
        negate = False
        if self.at_op("+", "-"):
            negate = self.next()[1] == "-"
        while True:
            exp, coef = self.term()
            if negate:
                coef = -coef
            cur = coeffs.get(exp)
            coeffs[exp] = coef if cur is None else cur + coef
            kind, val, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.next()
                negate = val == "-"
                continue
            raise ParseError("expected '+', '-' or end of expression", pos)
        return LaurentSeries(self.field, coeffs, prec)

    def term(self):
        """One product of t-powers and coefficient factors."""
        exp = 0
        coef = self.field.one()
        invert = False
        while True:
            kind, val, pos = self.peek()
            if kind == "name" and val == "t":
                self.next()
                e = 1
                if self.at_op("^"):
                    self.next()
                    e = self.signed_int()
                exp += -e if invert else e
            else:
                factor = self.coef_factor()
                coef = coef / factor if invert else coef * factor
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                invert = val == "/"
                continue
            return exp, coef

    def coef_factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.next()
            out = self.coef_expr()
            self.expect_op(")")
        elif kind == "int":
            self.next()
            out = self.field.from_int(val)
        elif kind == "name":
            if val != self.field.var:
                raise FieldLiteralError(
                    f"unknown symbol {val!r}; this field uses {self.field.var!r}", pos
                )
            self.next()
            out = self.field.generator() if not self.field.is_finite else self._finite_gen(pos)
        else:
            raise ParseError("expected a coefficient or t-power", pos)
        if self.at_op("^"):
            self.next()
            out = out ** self.signed_int()
        return out

    def _finite_gen(self, pos):
        if self.field.degree < 2:
            raise FieldLiteralError(
                f"the prime field F_{self.field.p} has no symbol {self.field.var!r}", pos
            )
        return self.field.generator()

    def coef_expr(self):
        acc = self.coef_term()
        while self.at_op("+", "-"):
            op = self.next()[1]
            rhs = self.coef_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def coef_term(self):
        negate = False
        while self.at_op("-"):
            self.next()
            negate = not negate
        acc = self.coef_factor()
        while self.at_op("*", "/"):
            op = self.next()[1]
            rhs = self.coef_factor()
            acc = acc * rhs if op == "*" else acc / rhs
        return -acc if negate else acc


def parse_series(text, field, prec):
    """Parse a series expression over the given field at the given
    precision; raises ParseError/FieldLiteralError with offsets."""
    if prec < 1:
        raise ParseError("precision must be at least 1")
    return _SeriesParser(text, field).parse(prec)


def _parse_modulus(text, p):
    """A monic polynomial literal like ``w^2+1`` into (coeffs, var)."""
    parser = _Parser(text)
    coeffs = {}
    var = None
    negate = False
    if parser.at_op("+", "-"):
        negate = parser.next()[1] == "-"
    while True:
        c = 1
        e = 0
        kind, val, pos = parser.peek()
        if kind == "int":
            parser.next()
            c = val
            if parser.at_op("*"):
                parser.next()
                kind, val, pos = parser.peek()
                if kind != "name":
                    raise ParseError("expected the modulus variable", pos)
        kind, val, pos = parser.peek()
        if kind == "name":
            if var is None:
                var = val
            elif var != val:
                raise ParseError(f"mixed variables {var!r} and {val!r}", pos)
            parser.next()
            e = 1
            if parser.at_op("^"):
                parser.next()
                e = parser.signed_int()
                if e < 0:
                    raise ParseError("modulus exponents must be nonnegative", pos)
        coeffs[e] = (coeffs.get(e, 0) + (-c if negate else c)) % p
        kind, val, pos = parser.peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            parser.next()
            negate = val == "-"
            continue
        raise ParseError("expected '+', '-' or end of modulus", pos)
    if not coeffs:
        raise ParseError("empty modulus")
    degree = max(coeffs)
    return [coeffs.get(i, 0) for i in range(degree + 1)], (var or "w")


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                return None
            return p, m
    return None


def parse_field_spec(text):
    """``Fp:3`` | ``Fq:9:w^2+1`` | ``Fp(u):3`` into a FieldSpec."""
    text = text.strip()
    m = re.fullmatch(r"Fp:(\d+)", text)
    if m:
        return FieldSpec.finite(int(m.group(1)))
    m = re.fullmatch(r"Fp\((\w+)\):(\d+)", text)
    if m:
        return FieldSpec.rational(int(m.group(2)), var=m.group(1))
    m = re.fullmatch(r"Fq:(\d+):(.+)", text)
    if m:
        q = int(m.group(1))
        pm = _factor_prime_power(q)
        if pm is None:
            raise ParseError(f"{q} is not a prime power")
        p, deg = pm
        coeffs, var = _parse_modulus(m.group(2), p)
        if deg == 1:
            return FieldSpec.finite(p)
        try:
            return FieldSpec.finite(p, deg, coeffs, var=var)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    m = re.fullmatch(r"Fq:(\d+)", text)
    if m:
        q = int(m.group(1))
        pm = _factor_prime_power(q)
        if pm is None:
            raise ParseError(f"{q} is not a prime power")
        p, deg = pm
        try:
            return FieldSpec.finite(p, deg)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(
        "field spec must look like Fp:3, Fq:9:w^2+1 or Fp(u):3"
    )
