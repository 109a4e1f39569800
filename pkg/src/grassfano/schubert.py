"""Chow ring of G(2, m) and the enumerative invariants built on it.

The ring is modelled as symmetric polynomials in two Chern roots ``x1, x2``
of the dual tautological bundle, modulo the ideal (h_{m-1}, h_m). The Schubert
class sigma_{a,b} corresponds to the Schur polynomial s_{a,b}; the ideal is
spanned by the Schur polynomials whose first part exceeds m - 2, so reducing a
class amounts to dropping those terms.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from grassfano.errors import AmbientError, ConsistencyError, InputError
from grassfano.kernel.poly import Poly
from grassfano.kernel.series import series_expand

Partition = tuple[int, int]


class ChowClass:
    """Integer combination of Schubert classes on G(2, m), possibly of mixed degree."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Partition, int] | None = None):
        if m < 2:
            raise InputError(f"G(2,{m}) is empty")
        clean = {}
        for (a, b), c in (terms or {}).items():
            if not m - 2 >= a >= b >= 0:
                raise InputError(f"partition ({a},{b}) does not fit G(2,{m})")
            if c:
                clean[(a, b)] = int(c)
        self.m = m
        self.terms = clean

    @classmethod
    def reduced(cls, m: int, terms: Mapping[Partition, int]) -> ChowClass:
        """Build from a Schur expansion, discarding terms in the ideal."""
        return cls(m, {(a, b): c for (a, b), c in terms.items() if a <= m - 2})

    @classmethod
    def sigma(cls, m: int, a: int, b: int = 0) -> ChowClass:
        return cls.reduced(m, {(a, b): 1})

    @classmethod
    def one(cls, m: int) -> ChowClass:
        return cls(m, {(0, 0): 1})

    @property
    def dimension(self) -> int:
        return 2 * (self.m - 2)

    def degrees(self) -> set[int]:
        return {a + b for a, b in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def graded_piece(self, k: int) -> ChowClass:
        return ChowClass(self.m, {ab: c for ab, c in self.terms.items() if sum(ab) == k})

    def truncate(self, k: int) -> ChowClass:
        """Drop every piece of degree above k."""
        return ChowClass(self.m, {ab: c for ab, c in self.terms.items() if sum(ab) <= k})

    def _same(self, other: ChowClass):
        if other.m != self.m:
            raise AmbientError(f"classes on G(2,{self.m}) and G(2,{other.m})")

    def __add__(self, other):
        if isinstance(other, int):
            other = ChowClass.one(self.m) * other
        self._same(other)
        out = dict(self.terms)
        for ab, c in other.terms.items():
            out[ab] = out.get(ab, 0) + c
        return ChowClass(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.m, {ab: -c for ab, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.m, {ab: c * other for ab, c in self.terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ChowClass:
        result = ChowClass.one(self.m)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = ChowClass.one(self.m) * other
        return isinstance(other, ChowClass) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"0 [G(2,{self.m})]"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            name = f"s{a}" if b == 0 else f"s{a},{b}"
            parts.append(f"{c}*{name}")
        return " + ".join(parts) + f" [G(2,{self.m})]"


def schur_product(lam: Partition, mu: Partition) -> dict[Partition, int]:
    """s_lam * s_mu in two variables, before any reduction.

    In two variables s_{a,b} = e2^b h_{a-b} and h_i h_j = sum_k e2^k h_{i+j-2k},
    which gives s_{a,b} s_{c,d} = sum_{k=0}^{min(a-b, c-d)} s_{a+c-k, b+d+k}.
    """
    a, b = lam
    c, d = mu
    return {(a + c - k, b + d + k): 1 for k in range(min(a - b, c - d) + 1)}


def multiply(alpha: ChowClass, beta: ChowClass) -> ChowClass:
    if alpha.m != beta.m:
        raise AmbientError(f"classes on G(2,{alpha.m}) and G(2,{beta.m})")
    top = alpha.m - 2
    out: dict[Partition, int] = {}
    for lam, c1 in alpha.terms.items():
        for mu, c2 in beta.terms.items():
            if lam[0] + mu[0] - min(lam[0] - lam[1], mu[0] - mu[1]) > top:
                continue
            for nu in schur_product(lam, mu):
                if nu[0] <= top:
                    out[nu] = out.get(nu, 0) + c1 * c2
    return ChowClass(alpha.m, out)


def integrate(alpha: ChowClass) -> int:
    top = alpha.m - 2
    return alpha.terms.get((top, top), 0)


def catalan(k: int) -> int:
    if k < 0:
        raise InputError("catalan needs k >= 0")
    return comb(2 * k, k) // (k + 1)


def inverse(alpha: ChowClass) -> ChowClass:
    """Multiplicative inverse of a class with constant term +-1 (nilpotent tail)."""
    c0 = alpha.terms.get((0, 0), 0)
    if c0 not in (1, -1):
        raise InputError("only classes with constant term 1 or -1 are invertible over Z")
    one = ChowClass.one(alpha.m)
    # alpha = c0 (1 - t); 1/alpha = c0 (1 + t + t^2 + ...) with t nilpotent
    t = one - alpha * c0
    result, power = one, one
    for _ in range(alpha.dimension):
        power = power * t
        if not power.terms:
            break
        result = result + power
    return result * c0


def chern_tautological(m: int) -> ChowClass:
    """c(U) = 1 - sigma_1 + sigma_{1,1}."""
    return ChowClass(m, {(0, 0): 1, (1, 0): -1, (1, 1): 1})


def chern_quotient(m: int) -> ChowClass:
    """c(Q) = 1 / c(U)."""
    return inverse(chern_tautological(m))


def _chern_shifted_quotient(m: int) -> list[ChowClass]:
    """Coefficients f_r of f(t) = prod_j (1 + t + q_j) = sum_k c_k(Q) (1+t)^(m-2-k)."""
    cq = chern_quotient(m)
    rank = m - 2
    f = []
    for r in range(rank + 1):
        acc = ChowClass(m)
        for k in range(rank - r + 1):
            acc = acc + cq.graded_piece(k) * comb(rank - k, r)
        f.append(acc)
    return f


def power_sum(m: int, j: int) -> ChowClass:
    """x1^j + x2^j in the Schubert basis."""
    if j == 0:
        return ChowClass.one(m) * 2
    if j == 1:
        return ChowClass.sigma(m, 1)
    return ChowClass.reduced(m, {(j, 0): 1}) - ChowClass.reduced(m, {(j - 1, 1): 1})


def chern_tangent(m: int) -> ChowClass:
    """Total Chern class of TG(2,m) = Hom(U, Q) = U* (x) Q.

    With U* having roots x1, x2, c(U* (x) Q) = f(x1) f(x2) where f is the
    polynomial of :func:`_chern_shifted_quotient`; the symmetric combination
    f_r f_s (x1^r x2^s + x1^s x2^r) equals f_r f_s e2^r p_{s-r}.
    """
    if m < 4:
        raise InputError("chern_tangent needs m >= 4")
    f = _chern_shifted_quotient(m)
    e2 = ChowClass.sigma(m, 1, 1)
    total = ChowClass(m)
    for r in range(len(f)):
        e2r = e2 ** r
        total = total + f[r] * f[r] * e2r
        for s in range(r + 1, len(f)):
            total = total + f[r] * f[s] * e2r * power_sum(m, s - r)
    return total


def chern_quotient_twisted(m: int) -> ChowClass:
    """Total Chern class of Q(1) = Q (x) det U*: roots q_j + h."""
    if m < 4:
        raise InputError("chern_quotient_twisted needs m >= 4")
    cq = chern_quotient(m)
    rank = m - 2
    h1 = ChowClass.one(m) + ChowClass.sigma(m, 1)
    total = ChowClass(m)
    for k in range(rank + 1):
        total = total + cq.graded_piece(k) * h1 ** (rank - k)
    return total


def euler_schubert(n: int) -> int:
    """Euler characteristic of a smooth codimension-(n+2) linear section of G(2, n+3)."""
    if n < 2:
        raise InputError("euler_schubert needs n >= 2")
    m = n + 3
    h = ChowClass.sigma(m, 1)
    # (1+h)^{-(n+2)} up to degree n
    inv = ChowClass(m)
    for j in range(n + 1):
        inv = inv + h ** j * ((-1) ** j * comb(n + 1 + j, j))
    tx = (chern_tangent(m).truncate(n) * inv).graded_piece(n)
    return integrate(tx * h ** (n + 2))


def _pn_rational_function(n: int) -> tuple[Poly, Poly]:
    x = Poly.var(2, 0)
    y = Poly.var(2, 1)
    one = Poly.constant(2, 1)
    num = x ** (n + 2) * (one + x + y * y) ** (n + 3)
    den = (one + x) ** (n + 2) * (one - x * x + y * y * 4)
    return num, den


def pn_coefficients(n: int) -> list[int]:
    """p_{n,0..n+1}: coefficients of x^{2k} y^{2n+2-2k} in the degree 2n+2 Taylor part."""
    if n < 2:
        raise InputError("pn_coefficients needs n >= 2")
    num, den = _pn_rational_function(n)
    s = series_expand(num, den, 2 * n + 2)
    part = s.degree_part(2 * n + 2)
    coeffs = []
    for k in range(n + 2):
        c = part.pop((2 * k, 2 * n + 2 - 2 * k), Fraction(0))
        if c.denominator != 1:
            raise ConsistencyError(f"p_{{{n},{k}}} = {c} is not an integer")
        coeffs.append(int(c))
    if part:
        raise ConsistencyError(f"unexpected monomials in degree {2 * n + 2}: {sorted(part)}")
    return coeffs


def euler_series(n: int) -> int:
    return sum(p * catalan(k) for k, p in enumerate(pn_coefficients(n)))


def hodge_low(n: int, p: int, q: int) -> int:
    if p < 0 or q < 0:
        raise InputError("Hodge indices must be non-negative")
    if p + q >= n:
        raise InputError(f"h^{{{p},{q}}} is only known for p+q < n = {n}")
    return (p + 2) // 2 if p == q else 0


def betti_numbers(n: int) -> list[int]:
    """All Betti numbers b_0..b_{2n} of X."""
    b = [0] * (2 * n + 1)
    for k in range(n):
        if k % 2 == 0:
            b[k] = b[2 * n - k] = hodge_low(n, k // 2, k // 2)
    b[n] = middle_betti(n)
    return b


def middle_betti(n: int) -> int:
    if n < 2:
        raise InputError("middle_betti needs n >= 2")
    e = euler_schubert(n)
    below = sum(hodge_low(n, p, p) for p in range(n) if 2 * p < n)
    return (-1) ** n * (e - 2 * below)


def moduli_dimension(n: int) -> int:
    if n < 2:
        raise InputError("moduli_dimension needs n >= 2")
    return (n + 3) * (n * n - 4) // 2


def degree_congruence_variety(n: int) -> int:
    """Plücker degree of the zero locus of a section of Q(1) on G(2, n+2)."""
    if n < 2:
        raise InputError("degree_congruence_variety needs n >= 2")
    m = n + 2
    cn = chern_quotient_twisted(m).graded_piece(n)
    return integrate(cn * ChowClass.sigma(m, 1) ** n)


@dataclass
class EnumerativeReport:
    n: int
    pn_coeffs: list[int]
    euler_series: int
    euler_schubert: int
    middle_betti: int
    low_hodge: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.euler_series != self.euler_schubert:
            raise ConsistencyError(
                f"n={self.n}: series route gives {self.euler_series}, "
                f"Schubert route gives {self.euler_schubert}"
            )
        if self.middle_betti < 0:
            raise ConsistencyError(f"negative middle Betti number {self.middle_betti}")


def enumerative_report(n: int) -> EnumerativeReport:
    pn = pn_coefficients(n)
    return EnumerativeReport(
        n=n,
        pn_coeffs=pn,
        euler_series=sum(p * catalan(k) for k, p in enumerate(pn)),
        euler_schubert=euler_schubert(n),
        middle_betti=middle_betti(n),
        low_hodge={(p, q): hodge_low(n, p, q) for p in range(n) for q in range(n) if p + q < n},
    )
