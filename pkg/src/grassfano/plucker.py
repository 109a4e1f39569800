"""Plücker coordinates for 2-planes and bivectors.

Coordinates of a bivector on a space of dimension d are indexed by pairs
``(i, j)`` with ``i < j`` in lexicographic order; the ``(i, j)`` coordinate of
``a ^ b`` is ``a_i b_j - a_j b_i``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from grassfano.errors import DimensionError, InputError
from grassfano.kernel.matrix import Matrix, normalize_projective


@lru_cache(maxsize=None)
def pairs(dim: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(dim), 2))


@lru_cache(maxsize=None)
def pair_index(dim: int) -> dict[tuple[int, int], int]:
    return {ij: k for k, ij in enumerate(pairs(dim))}


def wedge(a: Sequence, b: Sequence) -> PluckerVector:
    if len(a) != len(b):
        raise DimensionError("wedge of vectors of different lengths")
    return PluckerVector(len(a), [a[i] * b[j] - a[j] * b[i] for i, j in pairs(len(a))])


class PluckerVector:
    """A bivector in Λ²V, dim V = ``dim``, by its coordinates."""

    __slots__ = ("dim", "coords")

    def __init__(self, dim: int, coords: Sequence):
        if len(coords) != dim * (dim - 1) // 2:
            raise DimensionError(f"{len(coords)} coordinates for a bivector on a {dim}-space")
        self.dim = dim
        self.coords = tuple(coords)

    def __getitem__(self, ij):
        i, j = ij
        if i == j:
            return self.coords[0] * 0
        if i > j:
            return -self.coords[pair_index(self.dim)[(j, i)]]
        return self.coords[pair_index(self.dim)[(i, j)]]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: PluckerVector) -> PluckerVector:
        if other.dim != self.dim:
            raise DimensionError("bivectors on spaces of different dimension")
        return PluckerVector(self.dim, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: PluckerVector) -> PluckerVector:
        return self + other.scale(-1)

    def scale(self, s) -> PluckerVector:
        return PluckerVector(self.dim, [s * c for c in self.coords])

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, PluckerVector) and self.dim == other.dim and self.coords == other.coords

    def __hash__(self):
        return hash((self.dim, self.coords))

    def normalized(self) -> PluckerVector:
        """Projective representative with first nonzero coordinate 1."""
        return PluckerVector(self.dim, normalize_projective(self.coords))

    def same_point(self, other: PluckerVector) -> bool:
        return self.normalized() == other.normalized()

    def pfaffians(self):
        """All 4x4 Pfaffians p_ij p_kl - p_ik p_jl + p_il p_jk."""
        p = self.__getitem__
        for i, j, k, l in combinations(range(self.dim), 4):
            yield p((i, j)) * p((k, l)) - p((i, k)) * p((j, l)) + p((i, l)) * p((j, k))

    def is_decomposable(self) -> bool:
        return all(f == 0 for f in self.pfaffians())

    def antisymmetric_matrix(self) -> Matrix:
        return Matrix([[self[(i, j)] for j in range(self.dim)] for i in range(self.dim)], self.dim)

    def plane(self) -> PlaneRep:
        """A spanning pair for a nonzero decomposable bivector."""
        if self.is_zero() or not self.is_decomposable():
            raise InputError("only nonzero decomposable bivectors span a plane")
        # rows of the antisymmetric matrix span the plane
        rows = self.antisymmetric_matrix()
        R, pivots = rows.rref()
        return PlaneRep(R.row(0), R.row(1))

    def __repr__(self):
        return f"PluckerVector({self.dim}, {[str(c) for c in self.coords]})"


@dataclass(frozen=True)
class PlaneRep:
    """A 2-plane given by a spanning pair."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise DimensionError("spanning vectors of different lengths")
        if wedge(self.a, self.b).is_zero():
            raise InputError("spanning vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.a)

    def plucker(self) -> PluckerVector:
        return wedge(self.a, self.b)

    def point(self) -> PluckerVector:
        return self.plucker().normalized()

    def contains(self, v: Sequence) -> bool:
        return in_span(v, self.a, self.b)


def in_span(v: Sequence, a: Sequence, b: Sequence) -> bool:
    """True iff the rows a, b, v have rank <= 2, i.e. v in <a, b> when a, b independent."""
    return Matrix([a, b, v]).rank() <= 2
