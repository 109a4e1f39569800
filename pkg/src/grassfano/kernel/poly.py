"""Sparse multivariate polynomials with exact coefficients.

Coefficients may be ints, Fractions or :class:`Fp` elements; the class does
not care as long as they support ring operators and compare equal to 0 when
zero. Terms are kept in a dict ``{exponent tuple: coefficient}`` with no zero
coefficients stored.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from grassfano.errors import DimensionError

# degree of the zero polynomial
MINUS_INFINITY = float("-inf")


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise DimensionError(f"exponent {e} has wrong length for {nvars} variables")
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, one=1) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): one})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> Poly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def univariate(cls, coeffs: Sequence) -> Poly:
        """From ascending coefficients ``[c0, c1, ...]`` in one variable."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exps, default=0):
        return self.terms.get(tuple(exps), default)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def univariate_coeffs(self) -> list:
        """Ascending coefficients of a one-variable polynomial."""
        if self.nvars != 1:
            raise DimensionError("not a univariate polynomial")
        if not self.terms:
            return []
        d = self.degree()
        return [self.terms.get((k,), 0) for k in range(d + 1)]

    def leading_coefficient(self):
        if not self.terms:
            return 0
        return self.sorted_terms()[0][1]

    def _check(self, other: Poly):
        if other.nvars != self.nvars:
            raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly._raw(self.nvars, {})
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return Poly(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Poly.constant(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionError(f"need {self.nvars} values, got {len(point)}")
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    def derivative(self, i: int = 0) -> Poly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def map_coefficients(self, f) -> Poly:
        return Poly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)
