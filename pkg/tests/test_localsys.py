import random

import pytest

from conftest import FIXTURES, bundle, hypotheses_hold
from equicohom.localsys import TwistingCocycle, holonomy, path_endpoints, validate_twisting
from equicohom.zmodule import IntMatrix

GOOD = [n for n in FIXTURES if hypotheses_hold(n)]


@pytest.mark.parametrize("name", FIXTURES)
def test_coefficient_functors(name):
    c = bundle(name).coeffs
    assert c.M0.validate() == []
    assert c.pi.validate() == []
    assert c.phi.validate() == []


@pytest.mark.parametrize("name", FIXTURES)
def test_raw_twisting_passes_audit(name):
    b = bundle(name)
    report = validate_twisting(b.X, b.coeffs.pi, b.raw)
    assert report.ok, report.violations[:3]


@pytest.mark.parametrize("name", GOOD)
def test_based_twisting(name):
    b = bundle(name)
    L = b.local_system()
    assert b.path_system().validate() == []
    kappa = L.based_kappa
    assert validate_twisting(b.X, b.coeffs.pi, kappa).ok
    # ω paths are flat for the based labels
    for orb in b.X.orbits(0):
        for H in b.X.O.objects:
            if H <= orb.stabilizer:
                P = b.coeffs.pi[H]
                assert holonomy(kappa, H, L.xi.path(orb.rep)) == P.identity


def test_hypothesis_failures_are_reported():
    assert bundle("free_z3_cycle").hypotheses()
    assert bundle("free_z3_cycle").local_system() is None


def test_corrupted_twisting_is_caught():
    b = bundle("delta2_z3")
    P = b.coeffs.pi[b.X.O.objects[0]]
    labels = dict(b.raw.labels)
    key = next(k for k in labels if k[1] == "02")
    labels[key] = P.mul(labels[key], P.index("r"))
    report = validate_twisting(b.X, b.coeffs.pi, TwistingCocycle(b.X, b.coeffs.pi, labels))
    assert not report.ok


def _random_path(XH, start, rng, steps):
    path, cur = [], start
    for _ in range(steps):
        moves = [(e, 1) for e in XH.nondeg[1] if XH.faces[e][1].base == cur]
        moves += [(e, -1) for e in XH.nondeg[1] if XH.faces[e][0].base == cur]
        if not moves:
            break
        e, d = rng.choice(moves)
        path.append((e, d))
        cur = XH.faces[e][0 if d > 0 else 1].base
    return tuple(path), cur


@pytest.mark.parametrize("name", GOOD)
def test_coefficient_morphism_respects_concatenation(name):
    """M(p·q) = M(p)∘M(q) for consecutive paths inside a fixed complex."""
    b = bundle(name)
    L = b.local_system()
    rng = random.Random(7)
    for H in b.X.O.objects:
        XH = b.X.fixed_points(H)
        if XH.max_dim < 1 or not XH.nondeg[1]:
            continue
        ident = b.X.O.identity(H)
        for _ in range(10):
            x = rng.choice(XH.nondeg[0])
            p, y = _random_path(XH, x, rng, rng.randint(0, 3))
            q, z = _random_path(XH, y, rng, rng.randint(0, 3))
            assert path_endpoints(XH, p + q, x)[-1] == z
            lhs = L.coefficient_morphism(ident, x, z, p + q)
            rhs = L.coefficient_morphism(ident, x, y, p) @ L.coefficient_morphism(ident, y, z, q)
            assert lhs.equals(rhs)


def test_circle_loop_acts_by_minus_one():
    b = bundle("circle_twisted")
    L = b.local_system()
    O = b.X.O
    M = L.coefficient_morphism(O.identity(O.objects[0]), "v", "v", (("e", 1),))
    assert M.matrix == IntMatrix([[-1]])


def test_explicit_paths():
    import json
    from equicohom.bundle import fixture_path, parse_bundle, validate_bundle
    data = json.loads(fixture_path("theta_z2").read_text())
    data["paths"] = {"b": [["f", 1]]}
    b = parse_bundle(data)
    assert b.path_system().validate() == []
    assert [str(g) for g in b.complex().cohomology("bredon")] == ["0", "Z/2"]
    data["paths"] = {"b": [["e1", 1]]}
    checks = validate_bundle(parse_bundle(data))
    assert not checks["path_system"]["pass"]
