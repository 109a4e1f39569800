"""End-to-end acceptance checks, one test per criterion, all at zero tolerance."""

import contextlib
import io
import itertools
import random
import time
from math import comb

from grassfano import cli, schubert
from grassfano.coincidence import change_line_experiment, change_hyperplane, h_forms, member_Y, verify_equivalence
from grassfano.congruence import check_hypersurface, order_statistic
from grassfano.kernel import GF
from grassfano.omega import dim_Sn, project_Sn, random_omega, random_Sn
from grassfano.plucker import PluckerVector, wedge
from grassfano.seeding import derive_seed

P = 10007
F = GF(P)


def cli_stdout(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.dispatch(list(argv))
    return code, buf.getvalue()


def test_criterion_01_betti_table(acceptance):
    expected = {2: 5, 3: 10, 4: 69, 5: 380, 6: 2321, 7: 9442}
    start = time.perf_counter()
    got = {}
    for k in expected:
        code, out = cli_stdout("betti", "--n", str(k))
        got[k] = int(out) if code == 0 else None
    elapsed = time.perf_counter() - start
    mismatches = {k: (got[k], v) for k, v in expected.items() if got[k] != v}
    ok = not mismatches and elapsed < 10
    detail = f"b_2..b_7 = {[got[k] for k in expected]} in {elapsed:.2f}s"
    if mismatches:
        detail += f"; mismatches (got, expected): {mismatches}"
    assert acceptance(1, ok, detail)


def test_criterion_02_euler_two_routes(acceptance):
    pairs_ = {n: (schubert.euler_series(n), schubert.euler_schubert(n)) for n in range(2, 9)}
    ok = all(a == b for a, b in pairs_.values())
    assert acceptance(2, ok, f"e(X) for n=2..8: {[a for a, _ in pairs_.values()]}, routes agree={ok}")


def test_criterion_03_catalan_degrees(acceptance):
    bad = []
    for m in range(4, 10):
        deg = schubert.integrate(schubert.ChowClass.sigma(m, 1) ** (2 * (m - 2)))
        target = comb(2 * m - 4, m - 2) // (m - 1)
        assert comb(2 * m - 4, m - 2) % (m - 1) == 0
        if deg != target:
            bad.append((m, deg, target))
    assert acceptance(3, not bad, f"deg G(2,m) for m=4..9, mismatches={bad}")


def test_criterion_04_dim_Sn(acceptance):
    got = {n: dim_Sn(n) for n in range(2, 9)}
    ok = all(d == n * (n + 2) * (n + 3) // 2 for n, d in got.items())
    assert acceptance(4, ok, f"kernel dimensions {list(got.values())}")


def test_criterion_05_equivalence(acceptance):
    lines = []
    ok = True
    for n in (2, 3, 4, 5):
        start = time.perf_counter()
        passes = 0
        for seed in range(1, 6):
            rep = verify_equivalence(random_Sn(n, F, seed), 100, seed)
            ok &= rep.ok and rep.passes == 100
            passes += rep.passes
        elapsed = time.perf_counter() - start
        ok &= elapsed < 60
        lines.append(f"n={n}: {passes}/500 in {elapsed:.1f}s")
    assert acceptance(5, ok, "; ".join(lines))


def _x_points_by_exhaustion(omega):
    """Points of P(Λ²F_3^5) killed by the forms and decomposable, over every normalized vector."""
    forms = h_forms(omega)
    count = 0
    for tail in itertools.product(range(3), repeat=10):
        lead = next((x for x in tail if x), 0)
        if lead != 1:
            continue
        T = PluckerVector(5, [GF(3)(x) for x in tail])
        if all(v == 0 for v in forms.evaluate(T)) and T.is_decomposable():
            count += 1
    return count


def test_criterion_06_bruteforce_F3(acceptance):
    field = GF(3)
    planes = {}
    for a in itertools.product(range(3), repeat=4):
        for b in itertools.product(range(3), repeat=4):
            T = wedge([field(x) for x in a], [field(x) for x in b])
            if not T.is_zero():
                planes.setdefault(T.normalized().coords, T)
    omega = random_omega(2, field, 2016)
    y_count = sum(member_Y(omega, T.plane()) for T in planes.values())
    x_count = _x_points_by_exhaustion(omega)
    ok = len(planes) == 130 and y_count == x_count
    assert acceptance(6, ok, f"{len(planes)} planes, |Y(F_3)|={y_count}, |X(F_3)|={x_count}")


def test_criterion_07_congruence_order(acceptance):
    ok = True
    parts = []
    for n in range(2, 8):
        rep = order_statistic(random_Sn(n, F, 2016 + n), 100, n)
        ok &= rep.all_degree_ok and rep.squarefree_count >= 95
        parts.append(f"n={n}: sqfree {rep.squarefree_count}/100")
    assert acceptance(7, ok, "degree n+1 in every trial; " + ", ".join(parts))


def test_criterion_08_hypersurface(acceptance):
    ok = True
    parts = []
    for n in range(2, 6):
        chk = check_hypersurface(random_Sn(n, F, 2016), 100, n)
        ok &= chk.ok and chk.degree == n + 1 and chk.image_zeros == 100 and bool(chk.methods_agree)
        parts.append(f"n={n}: deg {chk.degree}, zeros {chk.image_zeros}/100, agree={chk.methods_agree}")
    assert acceptance(8, ok, "; ".join(parts))


def test_criterion_09_degree_coincidence(acceptance):
    got = {n: schubert.degree_congruence_variety(n) for n in range(2, 8)}
    ok = all(d == schubert.catalan(n + 1) for n, d in got.items())
    assert acceptance(9, ok, f"degrees {list(got.values())}")


def test_criterion_10_splitting_changes(acceptance):
    ok = True
    for n in (2, 3, 4):
        for t in range(20):
            s = derive_seed(2016, "hyperplane", n, t)
            w = random_Sn(n, F, s)
            rng = random.Random(s)
            e = [F.random(rng) for _ in range(n + 2)]
            ok &= project_Sn(change_hyperplane(w, e)) == project_Sn(w)
    parts = [f"hyperplane class fixed on 60 pairs: {ok}"]
    for n in (2, 3):
        rng = random.Random(n)
        center = [F.random(rng) for _ in range(n + 3)]
        rep = change_line_experiment(random_Sn(n, F, 2016), center, 50, n)
        ok &= rep.ok and rep.passes == 50
        parts.append(f"line change n={n}: {rep.passes}/50")
    assert acceptance(10, ok, "; ".join(parts))
