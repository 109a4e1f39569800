"""Truncated bivariate power series over Q."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

from grassfano.errors import DimensionError, NonInvertibleError
from grassfano.kernel.poly import Poly


class BivariateSeries:
    """Power series in x, y known up to total degree ``bound`` inclusive."""

    __slots__ = ("bound", "coeffs")

    def __init__(self, bound: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        self.bound = bound
        self.coeffs = {
            (i, j): Fraction(c)
            for (i, j), c in (coeffs or {}).items()
            if c != 0 and i + j <= bound
        }

    @classmethod
    def from_poly(cls, poly: Poly, bound: int) -> BivariateSeries:
        if poly.nvars != 2:
            raise DimensionError("bivariate series need a two-variable polynomial")
        return cls(bound, poly.terms)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if i + j > self.bound:
            raise IndexError(f"x^{i} y^{j} is beyond the truncation degree {self.bound}")
        return self.coeffs.get((i, j), Fraction(0))

    def degree_part(self, k: int) -> dict[tuple[int, int], Fraction]:
        return {ij: c for ij, c in self.coeffs.items() if sum(ij) == k}

    def _common(self, other):
        if not isinstance(other, BivariateSeries):
            other = BivariateSeries(self.bound, {(0, 0): other})
        return other, min(self.bound, other.bound)

    def __add__(self, other):
        other, bound = self._common(other)
        out = dict(self.coeffs)
        for ij, c in other.coeffs.items():
            out[ij] = out.get(ij, 0) + c
        return BivariateSeries(bound, out)

    __radd__ = __add__

    def __neg__(self):
        return BivariateSeries(self.bound, {ij: -c for ij, c in self.coeffs.items()})

    def __sub__(self, other):
        other, _ = self._common(other)
        return self + (-other)

    def __mul__(self, other):
        other, bound = self._common(other)
        out: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                if i1 + j1 + i2 + j2 <= bound:
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, 0) + c1 * c2
        return BivariateSeries(bound, out)

    __rmul__ = __mul__

    def inverse(self) -> BivariateSeries:
        c0 = self.coeffs.get((0, 0), 0)
        if c0 == 0:
            raise NonInvertibleError("series with zero constant term is not invertible")
        inv0 = 1 / Fraction(c0)
        g: dict[tuple[int, int], Fraction] = {(0, 0): inv0}
        rest = [(ij, c) for ij, c in self.coeffs.items() if ij != (0, 0)]
        for total in range(1, self.bound + 1):
            for i in range(total + 1):
                j = total - i
                s = Fraction(0)
                for (a, b), c in rest:
                    if a <= i and b <= j:
                        s += c * g.get((i - a, j - b), 0)
                if s:
                    g[(i, j)] = -s * inv0
        return BivariateSeries(self.bound, g)

    def __eq__(self, other):
        return (
            isinstance(other, BivariateSeries)
            and self.bound == other.bound
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"BivariateSeries({self.bound}, {dict(sorted(self.coeffs.items()))})"


def series_expand(numerator: Poly, denominator: Poly, bound: int) -> BivariateSeries:
    """Taylor expansion at the origin of ``numerator / denominator`` to total degree ``bound``."""
    num = BivariateSeries.from_poly(numerator, bound)
    den = BivariateSeries.from_poly(denominator, bound)
    return num * den.inverse()
