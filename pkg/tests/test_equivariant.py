import pytest

from conftest import FIXTURES, bundle
from equicohom.equivariant import FinGroup, OrbitCategory, cosets, orbit_times_simplex, subgroups
from equicohom.errors import ValidationError

GROUPS = {"Z2": FinGroup.cyclic(2), "Z4": FinGroup.cyclic(4), "Z6": FinGroup.cyclic(6),
          "S3": FinGroup.symmetric(3)}


def brute_subgroups(G):
    from itertools import combinations
    out = set()
    for k in range(1, G.order + 1):
        if G.order % k:
            continue
        for s in combinations(G.elements(), k):
            if G.is_subgroup(s):
                out.add(frozenset(s))
    return out


@pytest.mark.parametrize("name", GROUPS)
def test_subgroup_lattice(name):
    G = GROUPS[name]
    assert set(subgroups(G)) == brute_subgroups(G)


@pytest.mark.parametrize("name", GROUPS)
def test_orbit_category_hom_sets(name):
    G = GROUPS[name]
    O = OrbitCategory(G)
    for H in O.objects:
        for K in O.objects:
            # G-maps G/H -> G/K correspond to H-fixed cosets gK
            fixed = [c for c in cosets(G, K) if all(frozenset(G.mul(h, x) for x in c) == c for h in H)]
            assert len(O.hom(H, K)) == len(fixed)
    for a, b in O.composable_pairs():
        for c in O.hom(b.target, b.target):
            assert O.compose(c, O.compose(b, a)).coset == O.compose(O.compose(c, b), a).coset
    for m in O.morphisms():
        assert O.compose(m, O.identity(m.source)).coset == m.coset


def test_known_orbit_category_sizes():
    O = OrbitCategory(GROUPS["Z2"])
    e, G = O.objects[0], O.objects[-1]
    assert [len(O.hom(a, b)) for a in (e, G) for b in (e, G)] == [2, 1, 0, 1]
    S = OrbitCategory(GROUPS["S3"])
    assert len(S.objects) == 6
    assert len(S.hom(S.objects[0], S.objects[0])) == 6


def test_group_validation():
    with pytest.raises(ValidationError):
        FinGroup([[0, 1], [0, 1]])
    S3 = GROUPS["S3"]
    a, b = S3.index("102"), S3.index("021")
    assert S3.mul(a, b) != S3.mul(b, a)
    assert S3.mul(a, S3.inv(a)) == S3.identity


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_actions(name):
    X = bundle(name).X
    assert X.validate() == []
    G = X.G
    for q in range(X.max_dim + 1):
        seen = set()
        for orb in X.orbits(q):
            assert len(orb.members) * len(orb.stabilizer) == G.order
            assert not seen & set(orb.members)
            seen |= set(orb.members)
        assert seen == set(X.base.nondeg[q])
    for H in X.O.objects:
        XH = X.fixed_points(H)
        assert XH.validate() == []
        for level in XH.nondeg:
            for b in level:
                assert all(X.act_id(h, b) == b for h in H)


def test_theta_fixed_points():
    X = bundle("theta_z2").X
    XG = X.fixed_points(X.O.objects[-1])
    assert (tuple(XG.nondeg[0]), tuple(XG.nondeg[1])) == (("a", "b"), ("f",))


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_orbit_times_simplex(name):
    G = GROUPS[name]
    O = OrbitCategory(G)
    for H in O.objects:
        Y = orbit_times_simplex(G, H, 2, O)
        assert Y.validate() == []
        assert Y.base.counts == tuple(len(cosets(G, H)) * c for c in (3, 3, 1))
        for K in O.objects:
            fixed = Y.fixed_points(K)
            assert fixed.counts[0] == 3 * len(O.hom(K, H))
