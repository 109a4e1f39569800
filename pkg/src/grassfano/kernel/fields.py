"""Ground fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` objects (always in
lowest terms with positive denominator). Prime field scalars are
:class:`Fp` instances holding the canonical residue in ``[0, p)``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from grassfano.errors import FieldError

DEFAULT_PRIME = 10007


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> Fp:
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by 0 in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class PrimeField:
    """F_p for an odd prime p."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p == 2 or not is_prime(p):
            raise FieldError(f"{p!r} is not an odd prime")
        self.p = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    characteristic = property(lambda self: self.p)

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldError(f"element of F_{x.p} is not in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def random(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(1, self.p), self.p)

    def elements(self):
        return [Fp(i, self.p) for i in range(self.p)]

    def check_dimension(self, n: int) -> None:
        """Session primes must exceed n + 2."""
        if self.p <= n + 2:
            raise FieldError(f"prime {self.p} must exceed n+2 = {n + 2}")

    def format(self, x) -> str:
        return str(self(x).v)

    def parse(self, text: str) -> Fp:
        v = int(text)
        if not 0 <= v < self.p:
            raise ValueError(f"coefficient {text} not reduced mod {self.p}")
        return Fp(v, self.p)

    @property
    def descriptor(self) -> str:
        return f"p:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    # bound for random entries; keeps exact arithmetic cheap
    random_bound = 9

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise FieldError("cannot lift an F_p element to Q")
        return Fraction(x)

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.random_bound, self.random_bound))

    def random_nonzero(self, rng: random.Random) -> Fraction:
        while True:
            x = self.random(rng)
            if x:
                return x

    def check_dimension(self, n: int) -> None:
        pass

    def format(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str) -> Fraction:
        if "/" in text:
            num, den = text.split("/")
            num, den = int(num), int(den)
            if den <= 0:
                raise ValueError(f"denominator of {text} must be positive")
            x = Fraction(num, den)
            if x.numerator != num or x.denominator != den:
                raise ValueError(f"rational {text} is not in lowest terms")
            return x
        return Fraction(int(text))

    @property
    def descriptor(self) -> str:
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(text: str):
    """Parse ``q`` or ``p:PRIME``."""
    if text == "q":
        return QQ
    if text.startswith("p:"):
        return GF(int(text[2:]))
    raise FieldError(f"unknown field descriptor {text!r}")
