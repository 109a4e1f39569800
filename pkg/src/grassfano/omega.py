"""Alternating maps omega: Λ²V -> V with dim V = n + 2.

``Hom(Λ²V, V)`` splits as the kernel S_n of the contraction map plus a copy
of V*, embedded by ``iota(e)(a, b) = e(b) a - e(a) b``. Since
``contraction(iota(e)) = (n + 1) e``, subtracting ``iota(contraction(w)) / (n+1)``
projects onto S_n.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from grassfano.errors import DimensionError, FieldError, ParseError
from grassfano.kernel.fields import QQ, PrimeField, field_from_descriptor
from grassfano.kernel.matrix import Matrix
from grassfano.plucker import PluckerVector, pair_index, pairs
from grassfano.seeding import rng_for


class OmegaTensor:
    """Coefficients omega^k_{ij} with omega(e_i, e_j) = sum_k omega^k_{ij} e_k, i < j.

    ``seed`` is metadata only (ignored by equality).
    """

    __slots__ = ("n", "field", "values", "seed")

    def __init__(self, n: int, field, values: Sequence[Sequence], seed: int | None = None):
        d = n + 2
        if len(values) != d * (d - 1) // 2 or any(len(v) != d for v in values):
            raise DimensionError(f"omega for n={n} needs {d * (d - 1) // 2} vectors of length {d}")
        self.n = n
        self.field = field
        self.values = tuple(tuple(field(c) for c in v) for v in values)
        self.seed = seed

    @classmethod
    def from_entries(cls, n: int, field, entries: Mapping[tuple[int, int, int], object], seed=None):
        d = n + 2
        idx = pair_index(d)
        vals = [[field.zero] * d for _ in pairs(d)]
        for (i, j, k), c in entries.items():
            if not (0 <= i < j < d and 0 <= k < d):
                raise DimensionError(f"bad omega index ({i},{j},{k}) for n={n}")
            vals[idx[(i, j)]][k] = field(c)
        return cls(n, field, vals, seed)

    @classmethod
    def zero(cls, n: int, field) -> OmegaTensor:
        d = n + 2
        return cls(n, field, [[field.zero] * d for _ in pairs(d)])

    @property
    def dim(self) -> int:
        return self.n + 2

    def entries(self) -> dict[tuple[int, int, int], object]:
        """Nonzero coefficients keyed by (i, j, k)."""
        out = {}
        for (i, j), v in zip(pairs(self.dim), self.values):
            for k, c in enumerate(v):
                if c != 0:
                    out[(i, j, k)] = c
        return out

    def on_basis(self, i: int, j: int) -> tuple:
        """omega(e_i, e_j) for any i, j."""
        if i == j:
            return (self.field.zero,) * self.dim
        if i < j:
            return self.values[pair_index(self.dim)[(i, j)]]
        return tuple(-c for c in self.values[pair_index(self.dim)[(j, i)]])

    def _like(self, other: OmegaTensor):
        if other.n != self.n or other.field != self.field:
            raise DimensionError("omega tensors of different shape or field")

    def __add__(self, other: OmegaTensor) -> OmegaTensor:
        self._like(other)
        return OmegaTensor(self.n, self.field, [
            [a + b for a, b in zip(u, v)] for u, v in zip(self.values, other.values)
        ])

    def __sub__(self, other: OmegaTensor) -> OmegaTensor:
        return self + other.scale(-1)

    def scale(self, s) -> OmegaTensor:
        return OmegaTensor(self.n, self.field, [[s * c for c in v] for v in self.values])

    def is_zero(self) -> bool:
        return all(c == 0 for v in self.values for c in v)

    def __eq__(self, other):
        return (
            isinstance(other, OmegaTensor)
            and self.n == other.n
            and self.field == other.field
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return f"OmegaTensor(n={self.n}, field={self.field!r}, nonzero={len(self.entries())})"

    def to_text(self) -> str:
        return format_omega(self)


def apply(omega: OmegaTensor, a: Sequence, b: Sequence) -> list:
    """omega(a, b) = sum_{i<j} (a_i b_j - a_j b_i) omega(e_i, e_j)."""
    d = omega.dim
    if len(a) != d or len(b) != d:
        raise DimensionError(f"vectors must have length {d}")
    out = [omega.field.zero] * d
    for (i, j), v in zip(pairs(d), omega.values):
        w = a[i] * b[j] - a[j] * b[i]
        if w != 0:
            for k in range(d):
                if v[k] != 0:
                    out[k] = out[k] + w * v[k]
    return out


def apply_bivector(omega: OmegaTensor, T: PluckerVector) -> list:
    """The linear extension of omega to an arbitrary bivector."""
    d = omega.dim
    if T.dim != d:
        raise DimensionError(f"bivector on a {T.dim}-space, omega on a {d}-space")
    out = [omega.field.zero] * d
    for t, v in zip(T.coords, omega.values):
        if t != 0:
            for k in range(d):
                out[k] = out[k] + t * v[k]
    return out


def contraction(omega: OmegaTensor) -> tuple:
    """theta_j = trace of u -> omega(u, e_j) = sum_i [e_i] omega(e_i, e_j)."""
    d = omega.dim
    theta = []
    for j in range(d):
        s = omega.field.zero
        for i in range(d):
            s = s + omega.on_basis(i, j)[i]
        theta.append(s)
    return tuple(theta)


def iota(n: int, field, covector: Sequence) -> OmegaTensor:
    """The tensor (a, b) -> e(b) a - e(a) b."""
    d = n + 2
    if len(covector) != d:
        raise DimensionError(f"covector must have length {d}")
    e = [field(c) for c in covector]
    vals = []
    for i, j in pairs(d):
        v = [field.zero] * d
        # e(e_j) e_i - e(e_i) e_j
        v[i] = v[i] + e[j]
        v[j] = v[j] - e[i]
        vals.append(v)
    return OmegaTensor(n, field, vals)


def _check_projectable(n: int, field) -> None:
    if field.characteristic and (n + 1) % field.characteristic == 0:
        raise FieldError(f"characteristic {field.characteristic} divides n+1 = {n + 1}")


def project_Sn(omega: OmegaTensor) -> OmegaTensor:
    _check_projectable(omega.n, omega.field)
    theta = contraction(omega)
    scale = omega.field.one / (omega.n + 1)
    out = omega - iota(omega.n, omega.field, theta).scale(scale)
    out.seed = omega.seed
    return out


def contraction_matrix(n: int, field) -> Matrix:
    """Matrix of the contraction map in the coordinates (pair, k)."""
    d = n + 2
    cols = []
    for idx in range(len(pairs(d))):
        for k in range(d):
            vals = [[field.zero] * d for _ in pairs(d)]
            vals[idx][k] = field.one
            cols.append(contraction(OmegaTensor(n, field, vals)))
    return Matrix.from_columns(cols)


def dim_Sn(n: int, field=QQ) -> int:
    _check_projectable(n, field)
    M = contraction_matrix(n, field)
    return M.cols - M.rank()


def random_omega(n: int, field, seed: int) -> OmegaTensor:
    """Uniform random element of Hom(Λ²V, V), no projection."""
    rng = rng_for(seed, "omega")
    d = n + 2
    vals = [[field.random(rng) for _ in range(d)] for _ in pairs(d)]
    return OmegaTensor(n, field, vals, seed=seed)


def random_Sn(n: int, field, seed: int) -> OmegaTensor:
    if isinstance(field, PrimeField):
        field.check_dimension(n)
    return project_Sn(random_omega(n, field, seed))


def format_omega(omega: OmegaTensor) -> str:
    head = f"omega n={omega.n} field={omega.field.descriptor}"
    if omega.seed is not None:
        head += f" seed={omega.seed}"
    lines = [head]
    for (i, j, k), c in sorted(omega.entries().items()):
        lines.append(f"{i} {j} {k} {omega.field.format(c)}")
    return "\n".join(lines) + "\n"


def parse_omega(text: str) -> OmegaTensor:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty omega document")
    head = lines[0].split()
    if head[0] != "omega":
        raise ParseError(f"expected 'omega' header, got {lines[0]!r}")
    meta = {}
    for tok in head[1:]:
        key, sep, val = tok.partition("=")
        if not sep or key not in ("n", "field", "seed") or key in meta:
            raise ParseError(f"bad header token {tok!r}")
        meta[key] = val
    if "n" not in meta or "field" not in meta:
        raise ParseError("header needs n= and field=")
    try:
        n = int(meta["n"])
        field = field_from_descriptor(meta["field"])
        seed = int(meta["seed"]) if "seed" in meta else None
    except (ValueError, FieldError) as exc:
        raise ParseError(str(exc)) from exc
    if n < 1:
        raise ParseError(f"n={n} out of range")
    d = n + 2
    entries = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 4:
            raise ParseError(f"expected 'i j k coeff', got {ln!r}")
        try:
            i, j, k = (int(t) for t in toks[:3])
            c = field.parse(toks[3])
        except ValueError as exc:
            raise ParseError(f"{ln!r}: {exc}") from exc
        if not i < j:
            raise ParseError(f"{ln!r}: need i < j")
        if not (0 <= i and j < d and 0 <= k < d):
            raise ParseError(f"{ln!r}: index out of range for n={n}")
        if (i, j, k) in entries:
            raise ParseError(f"{ln!r}: duplicate entry")
        if c == 0:
            raise ParseError(f"{ln!r}: zero entries are not listed")
        entries[(i, j, k)] = c
    return OmegaTensor.from_entries(n, field, entries, seed=seed)
