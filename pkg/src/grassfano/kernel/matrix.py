"""Dense matrices over an exact field (or a commutative ring, for char_poly).

Elimination routines need a field (entries supporting ``/``). The
characteristic polynomial uses Berkowitz's division-free algorithm so it also
works for matrices whose entries are polynomials.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from grassfano.errors import DimensionError
from grassfano.kernel.fields import Fp
from grassfano.kernel.poly import Poly


def unit_like(x):
    """The multiplicative identity of the ring ``x`` lives in."""
    if isinstance(x, Fp):
        return Fp(1, x.p)
    if isinstance(x, Poly):
        c = next(iter(x.terms.values()), 1)
        return Poly.constant(x.nvars, unit_like(c))
    if isinstance(x, int):
        return 1
    return type(x)(1)


class Matrix:
    """Immutable rows x cols matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        data = [tuple(r) for r in data]
        if cols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self.entries = tuple(x for r in data for x in r)

    @classmethod
    def identity(cls, n: int, one) -> Matrix:
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Matrix:
        return cls([list(r) for r in zip(*columns)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> Matrix:
        return Matrix([self.column(j) for j in range(self.cols)], self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._flat(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._flat(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix._flat(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, s) -> Matrix:
        return Matrix._flat(self.rows, self.cols, [s * a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return Matrix([[_dot(self.row(i), c) for c in cols] for i in range(self.rows)], other.cols)
        if len(other) != self.cols:
            raise DimensionError(f"vector of length {len(other)} for {self.shape} matrix")
        return [_dot(self.row(i), other) for i in range(self.rows)]

    @classmethod
    def _flat(cls, rows, cols, flat):
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries = rows, cols, tuple(flat)
        return m

    def __repr__(self):
        return f"Matrix({self.to_lists()!r})"

    # -- field elimination --------------------------------------------------

    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = self.to_lists()
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            piv = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return Matrix(a, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list]:
        R, pivots = self.rref()
        if not self.entries:
            return []
        one = unit_like(self.entries[0])
        zero = one - one
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for i, pc in enumerate(pivots):
                v[pc] = -R[i, f]
            basis.append(v)
        return basis

    def det(self):
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        x = self.entries[0]
        if isinstance(x, Poly):
            c = charpoly_coeffs(self)
            return c[-1] if self.rows % 2 == 0 else -c[-1]
        a = self.to_lists()
        n = self.rows
        det = unit_like(x)
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return det - det
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c]
            inv = 1 / a[c][c] if not isinstance(a[c][c], int) else Fraction(1, a[c][c])
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def solve(self, b: Sequence) -> list | None:
        """One solution of ``self @ x = b``, or None if inconsistent."""
        aug = Matrix([list(self.row(i)) + [b[i]] for i in range(self.rows)], self.cols + 1)
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        zero = unit_like(self.entries[0]) * 0
        x = [zero] * self.cols
        for i, pc in enumerate(pivots):
            x[pc] = R[i, self.cols]
        return x

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        one = unit_like(self.entries[0])
        zero = one - one
        aug = Matrix([list(self.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)], 2 * n)
        R, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix([R.row(i)[n:] for i in range(n)], n)

    def char_poly(self) -> Poly:
        return char_poly(self)


def _dot(u, v):
    total = u[0] * v[0] if u else 0
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def charpoly_coeffs(M: Matrix) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(tI - M) = t^n + c1 t^(n-1) + ... + cn``.

    Berkowitz's algorithm: only ring operations, so entries may be polynomials.
    """
    if not M.is_square():
        raise DimensionError(f"characteristic polynomial of a {M.rows}x{M.cols} matrix")
    N = M.rows
    if N == 0:
        return [1]
    one = unit_like(M.entries[0])
    zero = one - one
    A = M.to_lists()
    transforms = []
    for n in range(N, 1, -1):
        k = n - 1
        R = [-A[k][j] for j in range(k)]
        C = [A[i][k] for i in range(k)]
        a = -A[k][k]
        A = [row[:k] for row in A[:k]]
        vecs = [C]
        for _ in range(n - 2):
            v = vecs[-1]
            vecs.append([_dot(A[i], v) for i in range(k)])
        transforms.append([one, a] + [_dot(R, v) for v in vecs])
    poly = [one, -A[0][0]]
    # each step multiplies by a lower-triangular Toeplitz matrix built from items
    for items in reversed(transforms):
        n = len(items) - 1
        new = [zero] * (n + 1)
        for j in range(n):
            pj = poly[j]
            for i in range(n + 1 - j):
                new[i + j] = new[i + j] + items[i] * pj
        poly = new
    return poly


def char_poly(M: Matrix) -> Poly:
    """det(tI - M) as a univariate polynomial in t."""
    c = charpoly_coeffs(M)
    return Poly.univariate(list(reversed(c)))


def kernel_basis(M: Matrix) -> list[list]:
    return M.kernel_basis()


def normalize_projective(v: Sequence):
    """Scale so the first nonzero coordinate is 1; zero vectors come back unchanged."""
    for x in v:
        if x != 0:
            inv = 1 / x if not isinstance(x, int) else Fraction(1, x)
            return tuple(y * inv for y in v)
    return tuple(v)


# -- univariate polynomials over F_p as ascending int lists -----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _divmod(a, b, p):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db] if db else [])


def _mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _divmod(_trim(out), f, p)[1]


def _powmod(base, e, f, p):
    result = [1]
    base = _divmod(base, f, p)[1]
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p)


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _split(g, p, out):
    """Collect the roots of a monic product of distinct linear factors."""
    d = len(g) - 1
    if d <= 0:
        return
    if d == 1:
        out.append((-g[0]) % p)
        return
    for shift in range(p):
        h = _powmod([shift, 1], (p - 1) // 2, g, p)
        h = _gcd(g, _sub(h, [1], p), p)
        if 0 < len(h) - 1 < d:
            _split(h, p, out)
            _split(_monic(_divmod(g, h, p)[0], p), p, out)
            return
    # every shift failed; only possible for tiny p
    out.extend(r for r in range(p) if sum(c * pow(r, k, p) for k, c in enumerate(g)) % p == 0)


def roots_mod_p(coeffs: Sequence[int], p: int) -> list[int]:
    """Distinct roots in F_p of the polynomial with ascending coefficients."""
    f = _trim([int(c) % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    f = _monic(f, p)
    if len(f) == 1:
        return []
    xp = _powmod([0, 1], p, f, p)
    g = _gcd(f, _sub(xp, [0, 1], p), p)
    roots: list[int] = []
    _split(g, p, roots)
    return sorted(roots)


def is_squarefree_mod_p(coeffs: Sequence[int], p: int) -> bool:
    f = _trim([int(c) % p for c in coeffs])
    df = _trim([k * c % p for k, c in enumerate(f)][1:])
    if not df:
        return len(f) <= 1
    return len(_gcd(f, df, p)) == 1


@dataclass(frozen=True)
class EigenLines:
    """Eigenvalues of a matrix that lie in F_p, one eigenvector each."""

    lines: tuple[tuple[Fp, tuple[Fp, ...]], ...]
    total_degree: int
    squarefree: bool

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)


def eigen_lines(M: Matrix) -> EigenLines:
    if not M.is_square():
        raise DimensionError("eigen-lines of a non-square matrix")
    n = M.rows
    if n == 0:
        return EigenLines((), 0, True)
    x0 = M.entries[0]
    if not isinstance(x0, Fp):
        raise DimensionError("eigen_lines needs a matrix over a prime field")
    p = x0.p
    coeffs = [int(c) for c in char_poly(M).univariate_coeffs()]
    lines = []
    for r in roots_mod_p(coeffs, p):
        lam = Fp(r, p)
        shifted = M - Matrix.identity(n, lam)
        vec = shifted.kernel_basis()[0]
        lines.append((lam, normalize_projective(vec)))
    return EigenLines(tuple(lines), n, is_squarefree_mod_p(coeffs, p))
