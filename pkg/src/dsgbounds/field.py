"""Coefficient fields: the rationals (via ``fractions.Fraction``) and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
import random


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@total_ordering
class Mod:
    """Element of F_p.  Interoperates with plain ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(self.v, -1, self.p), self.p) ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __lt__(self, other):
        # only for deterministic sorting
        return self.v < self._coerce(other) % self.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class CoefficientField:
    """Either the rationals (``characteristic == 0``) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"F_p needs a prime p, got {c}")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "CoefficientField":
        """Accept ``QQ`` or ``Fp:<prime>``."""
        t = text.strip()
        if t in ("QQ", "Q"):
            return cls.rationals()
        if t.startswith("Fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field spec {text!r}; expected QQ or Fp:<prime>")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def is_infinite(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "QQ" if self.is_rational else f"Fp:{self.characteristic}"

    def __call__(self, value):
        """Coerce an int, Fraction or element of this field."""
        p = self.characteristic
        if isinstance(value, float):
            raise TypeError("floats are not exact field elements")
        if p == 0:
            if isinstance(value, Mod):
                raise ValueError("cannot coerce an F_p element into QQ")
            v = Fraction(value)
            return v.numerator if v.denominator == 1 else v
        if isinstance(value, Mod):
            if value.p != p:
                raise ValueError(f"cannot coerce F_{value.p} element into F_{p}")
            return value
        if isinstance(value, Fraction):
            return Mod(value.numerator, p) / value.denominator
        return Mod(int(value), p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def div(self, a, b):
        """Exact quotient a / b in the field."""
        if not b:
            raise ZeroDivisionError("division by zero in the coefficient field")
        if self.is_rational:
            return self(Fraction(a) / Fraction(b))
        return self(a) / self(b)

    def random_element(self, rng: random.Random, low: int = 1, high: int = 1000):
        """Uniform from ``{low..high}`` over QQ, from all of F_p otherwise."""
        if self.is_rational:
            return rng.randint(low, high)
        return Mod(rng.randrange(self.characteristic), self.characteristic)

    def format(self, c) -> str:
        if isinstance(c, Fraction) and c.denominator != 1:
            return f"{c.numerator}/{c.denominator}"
        return str(int(c)) if not isinstance(c, Fraction) else str(c.numerator)

    def to_int_parts(self, c) -> tuple[int, int]:
        """(numerator, denominator) with denominator > 0; for F_p the denominator is 1."""
        if self.is_rational:
            f = Fraction(c)
            return f.numerator, f.denominator
        return int(c), 1

    def __str__(self):
        return self.name


QQ = CoefficientField.rationals()
