"""Monomials, homogeneous sparse polynomials and the ring context.

Monomials are plain tuples of exponents.  All enumerations of monomials use
lex order with x_1 > x_2 > ... > x_n, largest monomial first.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field

Monomial = tuple


class HomogeneityError(ValueError):
    """Raised when terms of different degrees are combined."""


class PolynomialSyntaxError(ValueError):
    pass


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(b: Monomial, a: Monomial) -> Monomial:
    """Return ``b / a``; ``a`` must divide ``b``."""
    q = tuple(y - x for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError(f"{a} does not divide {b}")
    return q


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, e: int) -> tuple[Monomial, ...]:
    """All degree-``e`` monomials in ``n`` variables, lex-descending."""
    if e < 0:
        return ()
    if n == 0:
        return ((),) if e == 0 else ()
    if n == 1:
        return ((e,),)
    out = []
    for first in range(e, -1, -1):
        for rest in monomials_of_degree(n - 1, e - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, e: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(n, e))}


class Ring:
    """Polynomial ring K[x_1..x_n] with named variables."""

    def __init__(self, variables: Sequence[str] | int, field: Field = QQ):
        if isinstance(variables, int):
            variables = default_variable_names(variables)
        names = tuple(variables)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.names = names
        self.n = len(names)
        self.field = field
        self._index = {v: i for i, v in enumerate(names)}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"Ring({list(self.names)}, {self.field!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: self.field.one})

    def var(self, i: int) -> "Polynomial":
        return self.monomial(tuple(int(j == i) for j in range(self.n)))

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def monomials(self, e: int) -> tuple[Monomial, ...]:
        return monomials_of_degree(self.n, e)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        return Polynomial(
            self,
            {tuple(int(j == i) for j in range(self.n)): c for i, c in enumerate(coeffs)},
        )

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.names, field)


def default_variable_names(n: int) -> list[str]:
    if n <= 3:
        return list("xyz"[:n])
    if n == 4:
        return list("xyzw")
    return [f"x{i + 1}" for i in range(n)]


class Polynomial:
    """Homogeneous polynomial stored as ``{monomial: coefficient}``.

    Instances are immutable.  The zero polynomial has ``degree is None``.
    """

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: Ring, terms: Mapping, *, _normalized: bool = False):
        self.ring = ring
        if _normalized:
            clean = dict(terms)
        else:
            f = ring.field
            acc: dict = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != ring.n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m}")
                acc[m] = acc.get(m, f.zero) + f(c)
            clean = {m: f(c) for m, c in acc.items() if f(c)}
        degree = None
        for m in clean:
            dm = sum(m)
            if degree is None:
                degree = dm
            elif dm != degree:
                raise HomogeneityError("polynomial is not homogeneous")
        self.terms = clean
        self.degree = degree

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return self.degree == 0

    def coeff(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.field.zero)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_monomial(self) -> Monomial:
        return max(self.terms)

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise HomogeneityError(
                f"cannot add degree {self.degree} and degree {other.degree}"
            )
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field(out.get(m, field.zero) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _normalized=True)

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: f(-c) for m, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {m: f(v * c) for m, v in self.terms.items()}, _normalized=True
        )

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {mono_mul(m, mono): f(v * c) for m, v in self.terms.items()},
            _normalized=True,
        )

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        f = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, f.zero) + c1 * c2
        return Polynomial(
            self.ring, {m: f(c) for m, c in out.items() if f(c)}, _normalized=True
        )

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def linear_coefficients(self) -> list:
        """Coefficient vector of a linear form (degree 1 or zero)."""
        if self.degree not in (None, 1):
            raise ValueError("not a linear form")
        f = self.ring.field
        out = [f.zero] * self.ring.n
        for m, c in self.terms.items():
            out[m.index(1)] = c
        return out


def _format_monomial(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for v, e in zip(names, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m in p.monomials():
        c = p.terms[m]
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(p.ring.names, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_NUMBER = re.compile(r"\d+(?:/\d+)?")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse ``3/2*x1^2*x3 - y`` style input; whitespace is ignored."""
    s = re.sub(r"\s+", "", text.replace("−", "-"))
    if not s:
        raise PolynomialSyntaxError("empty polynomial")
    terms: dict = {}
    field = ring.field
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialSyntaxError(f"expected + or - at {pos} in {text!r}")
        first = False
        end = pos
        while end < len(s) and s[end] not in "+-":
            end += 1
        term = s[pos:end]
        if not term:
            raise PolynomialSyntaxError(f"empty term in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * ring.n
        for factor in term.split("*"):
            if not factor:
                raise PolynomialSyntaxError(f"empty factor in {text!r}")
            if _NUMBER.fullmatch(factor):
                coeff *= Fraction(factor)
                continue
            name, caret, power = factor.partition("^")
            if name not in ring._index:
                raise PolynomialSyntaxError(f"unknown variable {name!r} in {text!r}")
            if caret and not power.isdigit():
                raise PolynomialSyntaxError(f"bad exponent in {factor!r}")
            exps[ring._index[name]] += int(power) if power else 1
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
        pos = end
    return Polynomial(ring, terms)
