"""Lines of the congruence Y_omega through a point, and the hypersurface Z.

For a point [c] of P(V), a plane <c, d> lies in Y_omega exactly when
omega(c, d) lies in <c, d>, i.e. when the class of d in V/<c> is an
eigenvector of phi_c: V/<c> -> V/<c>, d -> omega(c, d) mod c. Lines through
[c] therefore correspond to eigen-lines of phi_c, and there are n + 1 of them
counted over the algebraic closure.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import comb

from grassfano.errors import ConsistencyError, DimensionError, FieldError, GenericityError, InputError, ParseError
from grassfano.kernel.fields import GF, PrimeField
from grassfano.kernel.matrix import Matrix, charpoly_coeffs, eigen_lines, normalize_projective
from grassfano.kernel.poly import Poly
from grassfano.omega import OmegaTensor, apply
from grassfano.plucker import PlaneRep, in_span
from grassfano.seeding import MAX_RETRIES, SEED_MIXING, rng_for

log = logging.getLogger(__name__)


def _require_prime_field(omega: OmegaTensor) -> PrimeField:
    if not isinstance(omega.field, PrimeField):
        raise FieldError("this operation needs omega over a prime field")
    return omega.field


@dataclass(frozen=True)
class InducedEndo:
    center: tuple
    pivot: int
    matrix: Matrix

    def lift(self, dbar: Sequence) -> tuple:
        """A representative in V of a class in V/<c> given in complement coordinates."""
        d = list(dbar)
        d.insert(self.pivot, dbar[0] * 0)
        return tuple(d)


def induced_endomorphism(omega: OmegaTensor, c: Sequence) -> InducedEndo:
    if len(c) != omega.dim:
        raise DimensionError(f"center must have length {omega.dim}")
    if all(x == 0 for x in c):
        raise InputError("center must be nonzero")
    c = normalize_projective([omega.field(x) for x in c])
    pivot = next(i for i, x in enumerate(c) if x != 0)
    rest = [i for i in range(omega.dim) if i != pivot]
    e = [omega.field.zero] * omega.dim
    cols = []
    for j in rest:
        basis = list(e)
        basis[j] = omega.field.one
        v = apply(omega, c, basis)
        f = v[pivot]  # c[pivot] == 1
        cols.append([v[i] - f * c[i] for i in rest])
    return InducedEndo(c, pivot, Matrix.from_columns(cols))


@dataclass(frozen=True)
class LinesThrough:
    center: tuple
    planes: tuple[PlaneRep, ...]
    algebraic_count: int
    squarefree: bool


def lines_through(omega: OmegaTensor, c: Sequence) -> LinesThrough:
    _require_prime_field(omega)
    endo = induced_endomorphism(omega, c)
    eig = eigen_lines(endo.matrix)
    planes = []
    for _, dbar in eig.lines:
        plane = PlaneRep(endo.center, endo.lift(dbar))
        if not in_span(apply(omega, plane.a, plane.b), plane.a, plane.b):
            raise ConsistencyError(f"eigen-line plane {plane} is not in Y_omega")
        planes.append(plane)
    return LinesThrough(endo.center, tuple(planes), eig.total_degree, eig.squarefree)


def omega_map(omega: OmegaTensor, plane: PlaneRep):
    """[omega(a, b)] as a normalized point, or None when the plane lies in S_omega."""
    v = apply(omega, plane.a, plane.b)
    if all(x == 0 for x in v):
        return None
    return normalize_projective(v)


def member_S(omega: OmegaTensor, plane: PlaneRep) -> bool:
    return all(x == 0 for x in apply(omega, plane.a, plane.b))


def _random_center(rng, field, dim):
    while True:
        c = [field.random(rng) for _ in range(dim)]
        if any(x != 0 for x in c):
            return c


def sample_Y(omega: OmegaTensor, count: int, seed: int) -> list[PlaneRep]:
    """Exact points of Y_omega, drawn as eigen-line planes through random centers.

    Centers whose phi_c has a repeated eigenvalue are skipped (and logged), as are
    centers with no eigenvalue in the field.
    """
    field_ = _require_prime_field(omega)
    out: list[PlaneRep] = []
    misses = 0
    trial = 0
    last = None
    while len(out) < count:
        c = _random_center(rng_for(seed, "center", trial), field_, omega.dim)
        trial += 1
        lt = lines_through(omega, c)
        if not lt.squarefree or not lt.planes:
            if not lt.squarefree:
                log.debug("trial %d: phi_c not squarefree at c=%s, resampling", trial - 1, lt.center)
            misses += 1
            last = lt.center
            if misses >= MAX_RETRIES * count:
                raise GenericityError(
                    f"{misses} consecutive degenerate centers; omega looks non-generic",
                    certificate=[int(x) for x in last],
                )
            continue
        misses = 0
        out.extend(lt.planes[: count - len(out)])
    return out


@dataclass
class OrderReport:
    n: int
    p: int
    seed: int
    trials: int
    records: list[tuple[int, int, bool]]  # (rational lines, algebraic count, squarefree)
    seed_mixing: str = SEED_MIXING

    @property
    def squarefree_count(self) -> int:
        return sum(1 for r in self.records if r[2])

    @property
    def rational_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(r[0] for r in self.records).items()))

    @property
    def all_degree_ok(self) -> bool:
        return all(r[1] == self.n + 1 for r in self.records)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "trials": self.trials,
            "order": self.n + 1,
            "all_degree_ok": self.all_degree_ok,
            "squarefree": self.squarefree_count,
            "rational_lines_histogram": {str(k): v for k, v in self.rational_histogram.items()},
            "mean_rational_lines": sum(r[0] for r in self.records) / max(len(self.records), 1),
            "seed_mixing": self.seed_mixing,
        }


def order_statistic(omega: OmegaTensor, trials: int, seed: int) -> OrderReport:
    if trials < 1:
        raise InputError("trials must be >= 1")
    field_ = _require_prime_field(omega)
    records = []
    for t in range(trials):
        c = _random_center(rng_for(seed, "order", t), field_, omega.dim)
        lt = lines_through(omega, c)
        records.append((len(lt.planes), lt.algebraic_count, lt.squarefree))
    report = OrderReport(omega.n, field_.p, seed, trials, records)
    if not report.all_degree_ok:
        raise ConsistencyError(f"a characteristic polynomial had degree != {omega.n + 1}")
    return report


# -- the hypersurface Z ------------------------------------------------------

@dataclass(frozen=True)
class HypersurfaceZ:
    n: int
    p: int
    F: Poly

    @property
    def degree(self):
        return self.F.degree()

    def __call__(self, point: Sequence):
        return self.F.evaluate(list(point))

    def to_text(self) -> str:
        lines = [f"hypersurface n={self.n} p={self.p} degree={self.degree}"]
        for e, c in self.F.sorted_terms():
            lines.append(f"{','.join(map(str, e))} {int(c)}")
        return "\n".join(lines) + "\n"


def parse_hypersurface(text: str) -> HypersurfaceZ:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head = lines[0].split() if lines else []
    if not head or head[0] != "hypersurface":
        raise ParseError("expected a 'hypersurface' header")
    meta = dict(tok.split("=", 1) for tok in head[1:])
    n, p, deg = int(meta["n"]), int(meta["p"]), int(meta["degree"])
    F = GF(p)
    terms = {}
    for ln in lines[1:]:
        exps, coeff = ln.split()
        e = tuple(int(x) for x in exps.split(","))
        if len(e) != n + 2 or sum(e) != deg:
            raise ParseError(f"bad exponent vector {exps!r}")
        terms[e] = F.parse(coeff)
    return HypersurfaceZ(n, p, Poly(n + 2, terms))


def degeneracy_matrix(omega: OmegaTensor) -> Matrix:
    """N(c) with N(c)_{jk} = [e_j] omega(c, e_k), entries linear forms in c."""
    d = omega.dim
    rows = []
    for j in range(d):
        row = []
        for k in range(d):
            row.append(Poly.linear_form([omega.on_basis(i, k)[j] for i in range(d)]))
        rows.append(row)
    return Matrix(rows, d)


def numeric_degeneracy_matrix(omega: OmegaTensor, c: Sequence) -> Matrix:
    d = omega.dim
    cols = []
    for k in range(d):
        basis = [omega.field.zero] * d
        basis[k] = omega.field.one
        cols.append(apply(omega, list(c), basis))
    return Matrix.from_columns(cols)


def z_value(omega: OmegaTensor, c: Sequence):
    """F(c): the t^1 coefficient of det(tI - N(c))."""
    return charpoly_coeffs(numeric_degeneracy_matrix(omega, c))[omega.n + 1]


def _symbolic_F(omega: OmegaTensor) -> Poly:
    coeffs = charpoly_coeffs(degeneracy_matrix(omega))
    return coeffs[omega.n + 1]


def _binomial_poly(a: int, F) -> list:
    """Ascending coefficients of C(x, a) = x (x-1) ... (x-a+1) / a!."""
    poly = [F.one]
    for r in range(a):
        # multiply by (x - r)
        nxt = [F.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        poly = nxt
    fact = F.one
    for r in range(1, a + 1):
        fact = fact * r
    inv = F.one / fact
    return [c * inv for c in poly]


def _simplex(k: int, d: int):
    """All exponent vectors of length k with sum <= d."""
    if k == 0:
        yield ()
        return
    for first in range(d + 1):
        for rest in _simplex(k - 1, d - first):
            yield (first,) + rest


def _interpolated_F(omega: OmegaTensor) -> Poly:
    """Recover F from values on the lattice {x : |x| <= n+1} in the chart c_last = 1.

    Uses the multivariate Newton forward-difference formula
    g(x) = sum_alpha (Delta^alpha g)(0) prod_i C(x_i, alpha_i).
    """
    F = omega.field
    deg = omega.n + 1
    k = omega.dim - 1
    pts = list(_simplex(k, deg))
    table = {a: z_value(omega, [F(x) for x in a] + [F.one]) for a in pts}
    for axis in range(k):
        new = {}
        for a in pts:
            s = F.zero
            top = a[axis]
            for j in range(top + 1):
                b = a[:axis] + (j,) + a[axis + 1:]
                term = table[b] * comb(top, j)
                s = s + term if (top - j) % 2 == 0 else s - term
            new[a] = s
        table = new
    binom = [_binomial_poly(a, F) for a in range(deg + 1)]
    terms: dict[tuple, object] = {}
    for a, coeff in table.items():
        if coeff == 0:
            continue
        partial = {(): coeff}
        for ai in a:
            bp = binom[ai]
            nxt = {}
            for e, c in partial.items():
                for power, bc in enumerate(bp):
                    if bc != 0:
                        key = e + (power,)
                        nxt[key] = nxt.get(key, F.zero) + c * bc
            partial = nxt
        for e, c in partial.items():
            key = e + (deg - sum(e),)
            terms[key] = terms.get(key, F.zero) + c
    return Poly(omega.dim, terms)


def det_hypersurface(omega: OmegaTensor, method: str = "symbolic") -> HypersurfaceZ:
    field_ = _require_prime_field(omega)
    field_.check_dimension(omega.n)
    if method == "symbolic":
        F = _symbolic_F(omega)
    elif method == "interpolated":
        F = _interpolated_F(omega)
    else:
        raise InputError(f"unknown method {method!r}")
    if F.is_zero():
        raise GenericityError("determinantal equation vanishes identically")
    if not F.is_homogeneous() or F.degree() != omega.n + 1:
        raise ConsistencyError(f"F is not homogeneous of degree {omega.n + 1}")
    return HypersurfaceZ(omega.n, field_.p, F)


@dataclass
class HypersurfaceCheck:
    n: int
    p: int
    degree: int
    terms: int
    image_points: int
    image_zeros: int
    random_nonzero: bool
    methods_agree: bool | None = None
    certificate: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.degree == self.n + 1
            and self.image_zeros == self.image_points
            and self.random_nonzero
            and self.methods_agree is not False
        )


def check_hypersurface(omega: OmegaTensor, samples: int, seed: int, compare_methods: bool = True) -> HypersurfaceCheck:
    """F vanishes on Omega(Y) samples, is nonzero at a random point, and both constructions agree."""
    Z = det_hypersurface(omega, "symbolic")
    F = omega.field
    zeros = 0
    images = 0
    certificate = []
    planes = sample_Y(omega, samples * 2, seed)
    for plane in planes:
        if images == samples:
            break
        img = omega_map(omega, plane)
        if img is None:
            continue
        images += 1
        if Z(img) == 0:
            zeros += 1
        elif not certificate:
            certificate = [int(x) for x in img]
    nonzero = False
    for trial in range(MAX_RETRIES):
        rng = rng_for(seed, "z-random", trial)
        if Z([F.random(rng) for _ in range(omega.dim)]) != 0:
            nonzero = True
            break
    agree = None
    if compare_methods:
        Zi = det_hypersurface(omega, "interpolated")
        rng = rng_for(seed, "z-compare")
        pts = [[F.random(rng) for _ in range(omega.dim)] for _ in range(10)]
        agree = all(Z(x) == Zi(x) for x in pts) and Z.F == Zi.F
    return HypersurfaceCheck(
        omega.n, F.p, Z.degree, len(Z.F.terms), images, zeros, nonzero, agree, certificate
    )
