import random

import pytest

from conftest import FIXTURES, bundle, complex_of
from equicohom import classify as cl
from equicohom.cohomology import EquivariantComplex
from equicohom.equivariant import FinGroup, orbit_times_simplex
from equicohom.errors import NotCohomologous
from equicohom.simplicial import check_simplicial_identities


def pi_groups(name):
    b = bundle(name)
    return [(H, b.coeffs.pi[H]) for H in b.X.O.objects]


@pytest.mark.parametrize("name", FIXTURES)
def test_wbar_audit(name):
    for H, P in pi_groups(name):
        report = cl.audit_wbar(P, H, 4 if P.order <= 3 else 3)
        assert report == {"simplicial": [], "twisting": []}


def test_wbar_face_convention():
    P = FinGroup.symmetric(3)
    w = cl.WBarSimplex(frozenset(), (1, 2, 3), P)
    assert cl.wbar_face(w, 0).elems == (2, 3)
    assert cl.wbar_face(w, 3).elems == (1, 2)
    assert cl.wbar_face(w, 1).elems == (P.mul(2, 1), 3)
    assert cl.kappa_pi(w) == 1


@pytest.mark.parametrize("name", ["theta_z4", "s3_cone", "delta2_z3"])
def test_tcp_simplicial_identities(name):
    b = bundle(name)
    phi = b.coeffs.phi
    rng = random.Random(5)
    for H in b.X.O.objects:
        P, A = b.coeffs.pi[H], b.coeffs.M0[H]
        for n in (1, 2):
            sample = {q: [cl.random_tcp_simplex(P, A, H, n, q, rng) for _ in range(4)] for q in range(4)}
            problems = check_simplicial_identities(
                lambda q: sample.get(q, []), lambda t, i: cl.tcp_face(t, i, phi), cl.tcp_degeneracy, 3,
                eq=lambda s, t: s.equals(t))
            assert problems == []


def test_em_coboundary():
    A = bundle("theta_z4").coeffs.M0[bundle("theta_z4").X.O.objects[0]]
    rng = random.Random(0)
    for n in (0, 1, 2):
        c = cl.EMCochain.from_function(frozenset(), A, n, 3, lambda a: [rng.randint(-3, 3) for _ in range(A.ngens)])
        assert cl.em_delta(cl.em_delta(c)).is_zero()


def orbit_cases(name, q_max=3, n_max=2):
    """(complex on G/K × Δ[q], morphism m: G/H -> G/K, G/H × Δ[q], n) for every morphism."""
    b = bundle(name)
    O = b.X.O
    rng = random.Random(f"{name}-orbit")
    for m in O.morphisms():
        for q in range(q_max + 1):
            YK = orbit_times_simplex(b.X.G, m.target, q, O)
            kappa = cl.random_orbit_simplex_twisting(YK, b.coeffs.pi, rng)
            CK = EquivariantComplex(YK, b.coeffs, kappa=kappa)
            YH = orbit_times_simplex(b.X.G, m.source, q, O)
            for n in range(min(q, n_max) + 1):
                yield CK, m, YH, n, rng


@pytest.mark.parametrize("name", ["theta_z2", "s3_cone", "theta_sign"])
def test_orbit_simplex_isomorphism(name):
    for CK, m, YH, n, rng in orbit_cases(name):
        f = CK.random_cochain(n, rng)
        c = cl.e_iso(CK, f)
        assert cl.e_iso_inverse(CK, c).equals(f)
        assert cl.e_iso(CK, cl.e_iso_inverse(CK, c)).equals(c)
        assert cl.orbit_simplex_naturality(CK, YH, m, f)
        if n + 1 <= CK.max_dim:
            assert cl.e_iso(CK, CK.coboundary(f)).equals(cl.em_delta(c))


@pytest.mark.parametrize("name", FIXTURES)
def test_lifts(name):
    C = complex_of(name)
    rng = random.Random(f"{name}-lift")
    for n in range(C.max_dim):
        for k in range(4):
            T = cl.random_cocycle(C, n, rng) if k % 2 and n + 1 <= C.max_dim else C.random_cochain(n, rng)
            lift = cl.lift_cochain(T, "orbit")
            assert lift.equals(cl.lift_cochain(T, "direct"))
            assert cl.check_lift(lift) == []
            assert cl.check_lift_roundtrip(lift) == []
            assert cl.cochain_of_lift(lift).equals(T)
            assert cl.lift_cochain(cl.cochain_of_lift(lift)).equals(lift)
            if n + 1 <= C.max_dim:
                assert C.coboundary(T).is_zero() == lift.in_L()
                assert cl.cochain_of_lift(lift.delta()).equals(C.coboundary(T))


def test_broken_lift_is_detected():
    C = complex_of("theta_z2")
    lift = cl.lift_cochain(C.random_cochain(1, random.Random(0)))
    (H, b), c = next((k, v) for k, v in lift.values.items() if v.q == 1)
    bumped = cl.EMCochain.from_function(c.H, c.group, c.n, c.q, lambda a: [x + 1 for x in c.value(a)])
    assert cl.check_lift(lift.with_value(H, b, bumped))


@pytest.mark.parametrize("name", ["theta_z2", "circle_twisted", "cone_z2", "s3_cone"])
def test_vertical_homotopy(name):
    C = complex_of(name)
    rng = random.Random(f"{name}-htpy")
    for n in range(C.max_dim):
        for _ in range(3):
            f0 = cl.random_cocycle(C, n, rng)
            h = C.random_cochain(n - 1, rng) if n else None
            f1 = f0 - C.coboundary(h) if h is not None else f0
            V = cl.vertical_homotopy(f0, f1, h)
            assert cl.check_vertical_homotopy(V, f0, f1) == {"lift": [], "endpoints": [], "projection": []}


def test_not_cohomologous():
    C = complex_of("theta_z4")
    rng = random.Random(1)
    f0 = cl.random_cocycle(C, 1, rng)
    h = C.random_cochain(0, rng)
    with pytest.raises(NotCohomologous):
        cl.vertical_homotopy(f0, f0 + f0, h)
