"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import re
from fractions import Fraction

DEFAULT_PRIME = 32003


class Rationals:
    """The field QQ, elements are :class:`fractions.Fraction`."""

    name = "QQ"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for an odd prime p, elements are ints in ``range(p)``."""

    def __init__(self, p: int):
        if p <= 2 or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        if p >= 1 << 31:
            raise ValueError("modulus must be below 2**31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        p = self.p
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = Fraction(value.strip())
        value = Fraction(value)
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return value.numerator * pow(den, -1, p) % p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()

Field = Rationals | PrimeField


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def parse_field(spec: str | None) -> Field:
    """Accepts ``QQ``, ``rationals``, ``GF(p)``, ``p`` or ``prime``."""
    if spec is None:
        return QQ
    s = spec.strip()
    if s.upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    if s.lower() == "prime":
        return PrimeField(DEFAULT_PRIME)
    m = re.fullmatch(r"(?:GF|ZZ/|F)?\(?(\d+)\)?", s, flags=re.IGNORECASE)
    if m:
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field {spec!r}")
