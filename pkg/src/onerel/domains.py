"""Exact coefficient domains: integers, rationals and prime fields.

Domain objects bundle the arithmetic so that group-ring code can stay
generic.  Elements are plain Python values (``int`` for the integers and
prime fields, ``fractions.Fraction`` for the rationals); all arithmetic is
exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


class Domain:
    name = "?"
    is_field = False

    def coerce(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        raise NotImplementedError

    def is_zero(self, x):
        return x == self.zero

    def is_unit(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Domain) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class IntegerDomain(Domain):
    name = "Z"

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InputError(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_unit(self, x):
        return x in (1, -1)

    def inv(self, x):
        if not self.is_unit(x):
            raise InputError(f"{x} is not a unit in Z")
        return x


class RationalDomain(Domain):
    name = "Q"
    is_field = True

    def coerce(self, value):
        return Fraction(value)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise InputError("0 is not a unit")
        return Fraction(1) / x


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeFieldDomain(Domain):
    is_field = True

    def __init__(self, p):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, value):
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = value.denominator % self.p
            return num * pow(den, self.p - 2, self.p) % self.p
        return int(value) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def is_unit(self, x):
        return x % self.p != 0

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise InputError("0 is not a unit")
        return pow(x, self.p - 2, self.p)


ZZ = IntegerDomain()
QQ = RationalDomain()


def parse_domain(spec):
    """Parse a domain name: ``Z``, ``Q`` or a prime ``p`` for F_p."""
    s = str(spec).strip()
    if s in ("Z", "ZZ", "int"):
        return ZZ
    if s in ("Q", "QQ", "rational"):
        return QQ
    if s.startswith("F"):
        s = s[1:]
    try:
        return PrimeFieldDomain(int(s))
    except ValueError as exc:
        raise InputError(f"unknown coefficient domain {spec!r}") from exc
