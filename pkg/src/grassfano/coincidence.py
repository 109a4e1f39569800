"""Linear sections of G(2, n+3) versus zero loci Y_omega in G(2, n+2).

V_{n+3} = V_{n+2} + <v> with v = e_{n+2}. The section X is cut out by the
n+2 forms ``omega(u) + v* ^ u`` for u = e_0*, ..., e_{n+1}*. The linear map

    lift: T -> T + omega(T) ^ v

sends Λ²V_{n+2} onto the common zero set of those forms, and the projection
dropping every coordinate involving v inverts it. Decomposable bivectors go to
decomposable bivectors exactly on Y_omega, which makes X and Y_omega
projectively equivalent.
"""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from grassfano.errors import CenterError, DimensionError, InputError
from grassfano.kernel.fields import PrimeField
from grassfano.kernel.matrix import Matrix
from grassfano.omega import OmegaTensor, apply, apply_bivector, project_Sn
from grassfano.plucker import PlaneRep, PluckerVector, in_span, pair_index, pairs
from grassfano.seeding import SEED_MIXING


@dataclass(frozen=True)
class LinearSystemH:
    """n+2 linear forms on Λ²V_{n+3}, each as coefficients on Plücker coordinates."""

    dim: int
    forms: tuple[tuple, ...]

    def evaluate(self, T3: PluckerVector) -> list:
        if T3.dim != self.dim:
            raise DimensionError(f"bivector on a {T3.dim}-space, forms on a {self.dim}-space")
        return [_dot(f, T3.coords) for f in self.forms]

    def rank(self) -> int:
        return Matrix(self.forms).rank()

    def as_antisymmetric(self) -> list[Matrix]:
        out = []
        for f in self.forms:
            zero = f[0] * 0
            B = [[zero] * self.dim for _ in range(self.dim)]
            for (i, j), c in zip(pairs(self.dim), f):
                B[i][j] = c
                B[j][i] = -c
            out.append(Matrix(B, self.dim))
        return out


def _dot(u, v):
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def h_forms(omega: OmegaTensor) -> LinearSystemH:
    """Form i takes x ^ y to e_i*(omega(x', y')) + v*(x) e_i*(y) - v*(y) e_i*(x)."""
    d = omega.dim
    big = d + 1
    idx = pair_index(big)
    zero = omega.field.zero
    forms = []
    for i in range(d):
        f = [zero] * (big * (big - 1) // 2)
        for (j, k), vec in zip(pairs(d), omega.values):
            f[idx[(j, k)]] = vec[i]
        # on e_i ^ v the form evaluates to -1
        f[idx[(i, d)]] = -omega.field.one
        forms.append(tuple(f))
    return LinearSystemH(big, tuple(forms))


def member_Y(omega: OmegaTensor, plane: PlaneRep) -> bool:
    """omega(a, b) lies in <a, b>."""
    if plane.dim != omega.dim:
        raise DimensionError(f"plane in a {plane.dim}-space, omega on a {omega.dim}-space")
    return in_span(apply(omega, plane.a, plane.b), plane.a, plane.b)


def lift(omega: OmegaTensor, T: PluckerVector) -> PluckerVector:
    """T + omega(T) ^ v as a bivector on V_{n+3}."""
    d = omega.dim
    if T.dim != d:
        raise DimensionError(f"bivector on a {T.dim}-space, omega on a {d}-space")
    c = apply_bivector(omega, T)
    big = d + 1
    src = pair_index(d)
    coords = []
    for i, j in pairs(big):
        if j == d:
            coords.append(c[i])
        else:
            coords.append(T.coords[src[(i, j)]])
    return PluckerVector(big, coords)


def project_down(T3: PluckerVector) -> PluckerVector:
    """Drop every coordinate involving the last basis vector."""
    d = T3.dim - 1
    return PluckerVector(d, [x for (i, j), x in zip(pairs(T3.dim), T3.coords) if j != d])


def member_X(omega: OmegaTensor, T3: PluckerVector, forms: LinearSystemH | None = None) -> bool:
    if T3.is_zero():
        raise InputError("the zero bivector is not a projective point")
    forms = forms or h_forms(omega)
    return all(x == 0 for x in forms.evaluate(T3)) and T3.is_decomposable()


def _certificate(T: PluckerVector) -> list[int | str]:
    return [int(x) if hasattr(x, "p") else str(x) for x in T.normalized().coords]


@dataclass
class EquivalenceReport:
    n: int
    p: int
    seed: int | None
    samples: int
    passes: int
    failures: int
    certificates: list = field(default_factory=list)
    elapsed: float = 0.0
    seed_mixing: str = SEED_MIXING

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.passes == self.samples

    @property
    def first_failure_certificate(self):
        return self.certificates[0] if self.certificates else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "samples": self.samples,
            "passes": self.passes,
            "failures": self.failures,
            "firstFailureCertificate": self.first_failure_certificate,
            "seed_mixing": self.seed_mixing,
            "elapsed": round(self.elapsed, 3),
        }


def check_point(omega: OmegaTensor, plane: PlaneRep, forms: LinearSystemH) -> bool:
    T = plane.plucker()
    T3 = lift(omega, T)
    return (
        member_X(omega, T3, forms)
        and project_down(T3) == T
        and lift(omega, project_down(T3)) == T3
    )


def verify_equivalence(omega: OmegaTensor, sample_count: int, seed: int) -> EquivalenceReport:
    """Lift sampled points of Y_omega into X and check both round trips."""
    from grassfano.congruence import sample_Y

    start = time.perf_counter()
    planes = sample_Y(omega, sample_count, seed)
    forms = h_forms(omega)
    passes = 0
    certs = []
    for plane in planes:
        if check_point(omega, plane, forms):
            passes += 1
        else:
            certs.append(_certificate(plane.plucker()))
    p = omega.field.p if isinstance(omega.field, PrimeField) else 0
    return EquivalenceReport(
        omega.n, p, seed, len(planes), passes, len(certs), sorted(certs),
        time.perf_counter() - start,
    )


# -- changing the splitting V_{n+3} = V_{n+2} + <v> ---------------------------

def change_hyperplane(omega: OmegaTensor, e: Sequence) -> OmegaTensor:
    """Replace v* by v* - e*: omega becomes u -> omega(u) + e* ^ u.

    In coordinates omega'^k_{ij} = omega^k_{ij} + e_i [j == k] - e_j [i == k].
    """
    d = omega.dim
    if len(e) != d:
        raise DimensionError(f"covector must have length {d}")
    e = [omega.field(x) for x in e]
    vals = []
    for (i, j), vec in zip(pairs(d), omega.values):
        v = list(vec)
        v[j] = v[j] + e[i]
        v[i] = v[i] - e[j]
        vals.append(v)
    return OmegaTensor(omega.n, omega.field, vals, seed=omega.seed)


def splitting_basis(center: Sequence, field_) -> Matrix:
    """Columns: e_j for j != pivot (in order), then the new center.

    The pivot is the last nonzero coordinate of the center, so a center with
    nonzero last coordinate keeps the hyperplane V_{n+2}.
    """
    big = len(center)
    c = [field_(x) for x in center]
    nz = [i for i, x in enumerate(c) if x != 0]
    if not nz:
        raise InputError("new center must be nonzero")
    pivot = nz[-1]
    cols = []
    for j in range(big):
        if j != pivot:
            col = [field_.zero] * big
            col[j] = field_.one
            cols.append(col)
    cols.append(c)
    return Matrix.from_columns(cols)


def transform_bivector(T3: PluckerVector, g_inv: Matrix) -> PluckerVector:
    """Coordinates of T3 in the basis whose change-of-basis inverse is g_inv."""
    A = T3.antisymmetric_matrix()
    B = g_inv @ A @ g_inv.transpose()
    return PluckerVector(T3.dim, [B[i, j] for i, j in pairs(T3.dim)])


def resplit(omega: OmegaTensor, g: Matrix) -> OmegaTensor:
    """The omega' describing the same X after the change of basis g of V_{n+3}.

    Columns of g are the new basis in old coordinates; the last one is the new
    center. Raises CenterError when the center lies on a line of X, which is
    exactly when the forms fail to project isomorphically onto v'* ^ V*.
    """
    d = omega.dim
    big = d + 1
    if g.shape != (big, big):
        raise DimensionError(f"basis change must be {big}x{big}")
    new_forms = [g.transpose() @ B @ g for B in h_forms(omega).as_antisymmetric()]
    # coefficient of p'_{k, big-1}, k < big-1
    M = Matrix([[B[k, d] for k in range(d)] for B in new_forms], d)
    try:
        Minv = M.inverse()
    except ZeroDivisionError:
        raise CenterError("the new center lies on a line of X") from None
    C = Minv.scale(-1)
    vals = []
    for j, k in pairs(d):
        vals.append([_dot(C.row(r), [B[j, k] for B in new_forms]) for r in range(d)])
    return OmegaTensor(omega.n, omega.field, vals)


@dataclass
class LineChangeReport:
    n: int
    p: int
    seed: int
    center: list
    class_changed: bool
    samples: int
    passes: int
    failures: int
    certificates: list = field(default_factory=list)
    omega_prime: OmegaTensor | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.passes == self.samples

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "center": self.center,
            "classChanged": self.class_changed,
            "samples": self.samples,
            "passes": self.passes,
            "failures": self.failures,
            "firstFailureCertificate": self.certificates[0] if self.certificates else None,
            "seed_mixing": SEED_MIXING,
            "elapsed": round(self.elapsed, 3),
        }


def change_line_experiment(omega: OmegaTensor, new_center: Sequence, sample_count: int, seed: int) -> LineChangeReport:
    """Re-split V_{n+3} with a new center, extract omega', and map Y_omega into Y_omega'.

    Each sampled plane T of Y_omega is lifted into X, rewritten in the new
    coordinates and projected from the new center; the result must be a point
    of Y_omega' whose lift by omega' gives back the same point of X.
    """
    from grassfano.congruence import sample_Y

    start = time.perf_counter()
    big = omega.dim + 1
    if len(new_center) != big:
        raise DimensionError(f"new center must have length {big}")
    g = splitting_basis(new_center, omega.field)
    omega2 = resplit(omega, g)
    g_inv = g.inverse()
    changed = project_Sn(omega2) != project_Sn(omega)
    planes = sample_Y(omega, sample_count, seed)
    passes = 0
    certs = []
    for plane in planes:
        T3 = transform_bivector(lift(omega, plane.plucker()), g_inv)
        T2 = project_down(T3)
        good = (
            not T2.is_zero()
            and T2.is_decomposable()
            and member_Y(omega2, T2.plane())
            and lift(omega2, T2) == T3
        )
        if good:
            passes += 1
        else:
            certs.append(_certificate(plane.plucker()))
    p = omega.field.p if isinstance(omega.field, PrimeField) else 0
    return LineChangeReport(
        omega.n, p, seed, [int(x) for x in g.column(big - 1)], changed,
        len(planes), passes, len(certs), sorted(certs), omega2,
        time.perf_counter() - start,
    )
