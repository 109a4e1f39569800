import itertools
import random

import pytest

from grassfano.coincidence import (
    change_hyperplane, change_line_experiment, h_forms, lift, member_X, member_Y, project_down,
    resplit, splitting_basis, verify_equivalence,
)
from grassfano.congruence import sample_Y
from grassfano.errors import CenterError, GenericityError, InputError
from grassfano.kernel import GF, Matrix
from grassfano.omega import OmegaTensor, project_Sn, random_omega, random_Sn
from grassfano.plucker import PlaneRep, PluckerVector, pairs, wedge

F = GF(10007)


def rand_bivector(field, d, rng):
    return PluckerVector(d, [field.random(rng) for _ in pairs(d)])


def rand_vec(field, d, rng):
    return [field.random(rng) for _ in range(d)]


def test_forms_for_zero_omega_are_pure_wedges():
    H = h_forms(OmegaTensor.zero(3, F))
    assert len(H.forms) == 5
    for i, f in enumerate(H.forms):
        nz = [k for k, c in enumerate(f) if c != 0]
        assert len(nz) == 1
        assert pairs(6)[nz[0]] == (i, 5)
        B = H.as_antisymmetric()[i]
        assert sum(1 for x in B.entries if x != 0) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_forms_are_independent(n):
    assert h_forms(random_Sn(n, F, n)).rank() == n + 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_forms_vanish_on_lifts(n):
    w = random_Sn(n, F, 1)
    H = h_forms(w)
    rng = random.Random(n)
    for _ in range(100):
        T = rand_bivector(F, n + 2, rng)
        assert all(x == 0 for x in H.evaluate(lift(w, T)))


def test_lift_of_zero_omega_pads():
    rng = random.Random(0)
    T = rand_bivector(F, 4, rng)
    L = lift(OmegaTensor.zero(2, F), T)
    for (i, j), x in zip(pairs(5), L.coords):
        assert x == (0 if j == 4 else T[i, j])


def test_lift_is_linear():
    w = random_Sn(3, F, 2)
    rng = random.Random(2)
    for _ in range(30):
        T, U = rand_bivector(F, 5, rng), rand_bivector(F, 5, rng)
        a, b = F.random(rng), F.random(rng)
        assert lift(w, T.scale(a) + U.scale(b)) == lift(w, T).scale(a) + lift(w, U).scale(b)


@pytest.mark.parametrize("n", [2, 3])
def test_lift_decomposable_exactly_on_Y(n):
    w = random_Sn(n, F, 3)
    rng = random.Random(n)
    for pl in sample_Y(w, 20, 1):
        assert lift(w, pl.plucker()).is_decomposable()
    off = 0
    for _ in range(20):
        pl = PlaneRep(rand_vec(F, n + 2, rng), rand_vec(F, n + 2, rng))
        assert lift(w, pl.plucker()).is_decomposable() == member_Y(w, pl)
        off += not member_Y(w, pl)
    assert off > 0


def test_project_down():
    w = random_Sn(2, F, 4)
    rng = random.Random(4)
    for _ in range(20):
        T = rand_bivector(F, 4, rng)
        assert project_down(lift(w, T)) == T
    e0 = [F.one] + [F.zero] * 4
    v = [F.zero] * 4 + [F.one]
    assert project_down(wedge(e0, v)).is_zero()


def test_member_X():
    w = random_Sn(3, F, 5)
    H = h_forms(w)
    for pl in sample_Y(w, 10, 2):
        assert member_X(w, lift(w, pl.plucker()), H)
    rng = random.Random(5)
    while True:
        pl = PlaneRep(rand_vec(F, 5, rng), rand_vec(F, 5, rng))
        if not member_Y(w, pl):
            break
    padded = lift(OmegaTensor.zero(3, F), pl.plucker())
    assert not member_X(w, padded)
    with pytest.raises(InputError):
        member_X(w, PluckerVector(6, [F.zero] * 15))


def test_round_trip_from_X():
    w = random_Sn(2, F, 6)
    for pl in sample_Y(w, 20, 3):
        T3 = lift(w, pl.plucker())
        assert lift(w, project_down(T3)) == T3


def test_member_Y_representative_change():
    w = random_Sn(2, F, 7)
    for pl in sample_Y(w, 5, 1):
        ab = [x + y for x, y in zip(pl.a, pl.b)]
        assert member_Y(w, PlaneRep(ab, pl.b))


# -- exhaustive check over F_3 ----------------------------------------------

def _planes_F3():
    field = GF(3)
    seen = {}
    for a in itertools.product(range(3), repeat=4):
        for b in itertools.product(range(3), repeat=4):
            T = wedge([field(x) for x in a], [field(x) for x in b])
            if not T.is_zero():
                seen.setdefault(T.normalized().coords, T)
    return seen


def _X_points_in_kernel(w):
    """Normalized decomposable points in the common kernel of the forms."""
    field = w.field
    K = Matrix(list(h_forms(w).forms)).kernel_basis()
    pts = set()
    for coeffs in itertools.product(range(3), repeat=len(K)):
        v = [sum((field(c) * vec[i] for c, vec in zip(coeffs, K)), field.zero) for i in range(10)]
        T = PluckerVector(5, v)
        if not T.is_zero() and T.is_decomposable():
            pts.add(T.normalized().coords)
    return pts


@pytest.mark.parametrize("seed", range(5))
def test_bijection_over_F3(seed):
    w = random_omega(2, GF(3), seed)
    planes = _planes_F3()
    assert len(planes) == 130
    in_Y = [T for T in planes.values() if member_Y(w, T.plane())]
    lifted = {lift(w, T).normalized().coords for T in in_Y}
    assert lifted == _X_points_in_kernel(w)
    for T in planes.values():
        assert lift(w, T).is_decomposable() == member_Y(w, T.plane())


# -- the equivalence harness -------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_verify_equivalence(n):
    r = verify_equivalence(random_Sn(n, F, 2016), 100, 42)
    assert r.ok and r.passes == 100 and r.first_failure_certificate is None
    d = r.to_dict()
    assert set(d) >= {"n", "p", "seed", "samples", "passes", "failures", "firstFailureCertificate", "elapsed"}


def test_verify_equivalence_zero_omega():
    with pytest.raises(GenericityError):
        verify_equivalence(OmegaTensor.zero(2, F), 10, 1)


# -- changing the splitting --------------------------------------------------

def test_change_hyperplane_examples():
    rng = random.Random(8)
    w = random_Sn(3, F, 8)
    assert change_hyperplane(w, [0] * 5) == w
    e = rand_vec(F, 5, rng)
    w2 = change_hyperplane(w, e)
    assert project_Sn(w2) == project_Sn(w)
    assert change_hyperplane(w2, [-x for x in e]) == w


def test_change_hyperplane_is_a_resplit():
    rng = random.Random(9)
    w = random_Sn(3, F, 9)
    e = rand_vec(F, 5, rng)
    assert resplit(w, splitting_basis([F.zero] * 5 + [F.one], F)) == w
    # basis e_j + e*(e_j) v keeps v as the center and tilts the hyperplane
    rows = [[F.one if i == j else F.zero for j in range(6)] for i in range(6)]
    rows[5][:5] = e
    assert resplit(w, Matrix(rows)) == change_hyperplane(w, e)


def test_change_line_no_change():
    w = random_Sn(2, F, 10)
    r = change_line_experiment(w, [0, 0, 0, 0, 1], 20, 1)
    assert r.omega_prime == w and not r.class_changed and r.ok


@pytest.mark.parametrize("n", [2, 3])
def test_change_line_generic(n):
    rng = random.Random(n)
    w = random_Sn(n, F, 11)
    center = rand_vec(F, n + 3, rng)
    r = change_line_experiment(w, center, 50, 2)
    assert r.class_changed
    assert r.passes == 50 and r.failures == 0


def test_center_on_a_line_of_X_is_rejected():
    w = random_Sn(2, F, 12)
    pl = sample_Y(w, 1, 1)[0]
    plane3 = lift(w, pl.plucker()).plane()
    with pytest.raises(CenterError):
        change_line_experiment(w, list(plane3.a), 5, 1)
