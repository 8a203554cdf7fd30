"""Finite groups, the orbit category and G-simplicial sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Hashable, Mapping, Sequence

from .errors import ValidationError
from .simplicial import FormalSimplex, SimplicialMap, SimplicialSet, standard_simplex

Subgroup = frozenset


class FinGroup:
    """Finite group on elements ``0..n-1`` given by a multiplication table."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        n = self.order
        if n == 0 or any(len(r) != n for r in self.table):
            raise ValidationError("multiplication table must be a nonempty square")
        if any(not 0 <= v < n for r in self.table for v in r):
            raise ValidationError("multiplication table has out-of-range entries")
        ids = [e for e in range(n) if all(self.table[e][a] == a == self.table[a][e] for a in range(n))]
        if not ids:
            raise ValidationError("no identity element")
        self.identity = ids[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(bs) != 1 or self.table[bs[0]][a] != self.identity:
                raise ValidationError(f"element {self.names[a]} has no two-sided inverse")
            inv.append(bs[0])
        self.inverse_table = tuple(inv)
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValidationError("multiplication is not associative",
                                              witness=(a, b, c))
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def cyclic(cls, n: int, names: Sequence[str] | None = None) -> "FinGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], names)

    @classmethod
    def trivial(cls) -> "FinGroup":
        return cls([[0]], ["e"])

    @classmethod
    def symmetric(cls, k: int) -> "FinGroup":
        perms = sorted(permutations(range(k)))
        index = {p: i for i, p in enumerate(perms)}
        # (p*q)(i) = p(q(i))
        table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
        names = ["".join(map(str, p)) for p in perms]
        return cls(table, names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def prod(self, elems: Sequence[int]) -> int:
        out = self.identity
        for a in elems:
            out = self.table[out][a]
        return out

    def conj(self, g: int, a: int) -> int:
        """``g a g^-1``."""
        return self.table[self.table[g][a]][self.inverse_table[g]]

    def index(self, name: str) -> int:
        return self._index[name]

    def elements(self) -> range:
        return range(self.order)

    def closure(self, gens) -> Subgroup:
        elems = {self.identity}
        frontier = list(elems)
        gens = list(gens)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = self.table[a][g]
                if b not in elems:
                    elems.add(b)
                    frontier.append(b)
        return frozenset(elems)

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        return (self.identity in s and
                all(self.table[a][b] in s for a in s for b in s) and
                all(self.inverse_table[a] in s for a in s))

    def conjugate_subgroup(self, g: int, H: Subgroup) -> Subgroup:
        """``g H g^-1``."""
        return frozenset(self.conj(g, h) for h in H)

    def is_homomorphism(self, target: "FinGroup", mapping: Sequence[int]) -> bool:
        return all(mapping[self.table[a][b]] == target.table[mapping[a]][mapping[b]]
                   for a in range(self.order) for b in range(self.order))


def subgroup_key(H: Subgroup):
    return (len(H), tuple(sorted(H)))


def subgroups(G: FinGroup) -> list[Subgroup]:
    """All subgroups of G, ordered by size then element list."""
    found = {G.closure([a]) for a in G.elements()}
    frontier = list(found)
    cyclic = list(found)
    while frontier:
        new = []
        for H in frontier:
            for C in cyclic:
                if not C <= H:
                    J = G.closure(H | C)
                    if J not in found:
                        found.add(J)
                        new.append(J)
        frontier = new
    return sorted(found, key=subgroup_key)


@dataclass(frozen=True)
class Morphism:
    """The G-map ``G/H -> G/K``, ``eH -> gK``, identified by the coset ``gK``."""

    source: Subgroup
    target: Subgroup
    coset: frozenset

    @property
    def rep(self) -> int:
        return min(self.coset)


class OrbitCategory:
    """Orbit category of a finite group, objects being all subgroups."""

    def __init__(self, G: FinGroup):
        self.G = G
        self.objects: list[Subgroup] = subgroups(G)
        self._obj_index = {H: i for i, H in enumerate(self.objects)}
        self._hom: dict[tuple[Subgroup, Subgroup], list[Morphism]] = {}
        for H in self.objects:
            for K in self.objects:
                self._hom[H, K] = self._enumerate_hom(H, K)

    def _coset(self, g: int, K: Subgroup) -> frozenset:
        return frozenset(self.G.mul(g, k) for k in K)

    def _enumerate_hom(self, H: Subgroup, K: Subgroup) -> list[Morphism]:
        G = self.G
        seen = set()
        out = []
        for g in G.elements():
            ginv = G.inv(g)
            if all(G.prod([ginv, h, g]) in K for h in H):
                c = self._coset(g, K)
                if c not in seen:
                    seen.add(c)
                    out.append(Morphism(H, K, c))
        return sorted(out, key=lambda m: m.rep)

    def object_index(self, H: Subgroup) -> int:
        return self._obj_index[H]

    def subgroup(self, elems) -> Subgroup:
        H = frozenset(elems)
        if H not in self._obj_index:
            raise ValidationError(f"{sorted(elems)} is not a subgroup", witness=sorted(elems))
        return H

    def hom(self, H: Subgroup, K: Subgroup) -> list[Morphism]:
        return self._hom[H, K]

    def morphisms(self):
        for H in self.objects:
            for K in self.objects:
                yield from self._hom[H, K]

    def morphism(self, H: Subgroup, K: Subgroup, g: int) -> Morphism:
        G = self.G
        ginv = G.inv(g)
        if not all(G.prod([ginv, h, g]) in K for h in H):
            raise ValidationError(f"g^-1 H g is not contained in K for g={G.names[g]}")
        return Morphism(H, K, self._coset(g, K))

    def identity(self, H: Subgroup) -> Morphism:
        return Morphism(H, H, H)

    def compose(self, second: Morphism, first: Morphism) -> Morphism:
        """``second ∘ first``: G/H -> G/K -> G/L is the coset g1 g2 L."""
        if first.target != second.source:
            raise ValueError("morphisms are not composable")
        g = self.G.mul(first.rep, second.rep)
        return Morphism(first.source, second.target, self._coset(g, second.target))

    def composable_pairs(self):
        for H in self.objects:
            for K in self.objects:
                for m1 in self._hom[H, K]:
                    for L in self.objects:
                        for m2 in self._hom[K, L]:
                            yield m1, m2


class GSimplicialSet:
    """Simplicial set with an action of a finite group on nondegenerate simplices.

    ``action[g]`` maps each nondegenerate identifier to its translate; the
    identity element may be omitted.
    """

    def __init__(self, base: SimplicialSet, G: FinGroup,
                 action: Mapping[int, Mapping[Hashable, Hashable]] | None = None,
                 orbit_category: OrbitCategory | None = None):
        self.base = base
        self.G = G
        self.O = orbit_category or OrbitCategory(G)
        ids = [x for level in base.nondeg for x in level]
        action = dict(action or {})
        self.action = {}
        for g in G.elements():
            perm = action.get(g)
            if perm is None:
                if g != G.identity:
                    raise ValidationError(f"no action given for {G.names[g]}")
                perm = {x: x for x in ids}
            self.action[g] = dict(perm)
        self._fixed_cache: dict = {}

    @property
    def max_dim(self) -> int:
        return self.base.max_dim

    def act(self, g: int, x: FormalSimplex) -> FormalSimplex:
        return FormalSimplex(self.action[g][x.base], x.word, x.dim)

    def act_id(self, g: int, b):
        return self.action[g][b]

    def validate(self) -> list[str]:
        problems = list(self.base.validate())
        if problems:
            return problems
        G, X = self.G, self.base
        ids = [x for level in X.nondeg for x in level]
        for g in G.elements():
            perm = self.action[g]
            if set(perm) != set(ids) or set(perm.values()) != set(ids):
                problems.append(f"action of {G.names[g]} is not a permutation of the simplices")
                continue
            for x in ids:
                if X.dim_of[perm[x]] != X.dim_of[x]:
                    problems.append(f"{G.names[g]} changes the dimension of {x!r}")
        if problems:
            return problems
        for x in ids:
            if self.action[G.identity][x] != x:
                problems.append(f"identity moves {x!r}")
            for a in G.elements():
                for b in G.elements():
                    if self.action[a][self.action[b][x]] != self.action[G.mul(a, b)][x]:
                        problems.append(
                            f"action is not a homomorphism at ({G.names[a]}, {G.names[b]}, {x!r})")
        for q in range(1, X.max_dim + 1):
            for x in X.nondeg[q]:
                sx = X.simplex(x)
                for g in G.elements():
                    gx = self.act(g, sx)
                    for i in range(q + 1):
                        if X.face(gx, i) != self.act(g, X.face(sx, i)):
                            problems.append(
                                f"action of {G.names[g]} does not commute with ∂_{i} at {x!r}")
        return problems

    def is_fixed(self, H: Subgroup, x: FormalSimplex) -> bool:
        return all(self.action[h][x.base] == x.base for h in H)

    def stabilizer(self, b) -> Subgroup:
        return frozenset(g for g in self.G.elements() if self.action[g][b] == b)

    def fixed_points(self, H: Subgroup) -> SimplicialSet:
        H = frozenset(H)
        if H not in self._fixed_cache:
            keep = [x for level in self.base.nondeg for x in level
                    if all(self.action[h][x] == x for h in H)]
            self._fixed_cache[H] = self.base.subcomplex(keep, name=f"{self.base.name}^H")
        return self._fixed_cache[H]

    @cached_property
    def _orbits(self) -> list[list["Orbit"]]:
        X, G = self.base, self.G
        out = []
        for q in range(X.max_dim + 1):
            seen = set()
            level = []
            for b in X.nondeg[q]:
                if b in seen:
                    continue
                members = {}
                for g in G.elements():
                    y = self.action[g][b]
                    if y not in members:
                        members[y] = g
                seen.update(members)
                stab = self.stabilizer(b)
                level.append(Orbit(b, self.O.subgroup(stab), members))
            out.append(level)
        return out

    def orbits(self, q: int) -> list["Orbit"]:
        return self._orbits[q]

    def orbit_of(self, b) -> tuple[int, "Orbit"]:
        q = self.base.dim_of[b]
        for k, orb in enumerate(self._orbits[q]):
            if b in orb.members:
                return k, orb
        raise KeyError(b)

    @cached_property
    def _orbit_lookup(self) -> dict:
        table = {}
        for q, level in enumerate(self._orbits):
            for k, orb in enumerate(level):
                for y in orb.members:
                    table[y] = (k, orb)
        return table

    def locate(self, b) -> tuple[int, "Orbit", int]:
        """Orbit index, orbit, and the chosen g with ``g · rep = b``."""
        k, orb = self._orbit_lookup[b]
        return k, orb, orb.members[b]

    def is_G_connected(self) -> bool:
        return all(self.fixed_points(H).nondeg[0] and len(self.fixed_points(H).components()) == 1
                   for H in self.O.objects)

    def fixed_vertices(self) -> list:
        return [v for v in self.base.nondeg[0] if self.stabilizer(v) == frozenset(self.G.elements())]

    def translation_map(self, m: Morphism) -> SimplicialMap:
        """ΦX(ĝ): X^K -> X^H, x -> g x."""
        XK, XH = self.fixed_points(m.target), self.fixed_points(m.source)
        g = m.rep
        return SimplicialMap(XK, XH, {b: self.act(g, XK.simplex(b))
                                      for level in XK.nondeg for b in level})

    def truncate(self, max_dim: int) -> "GSimplicialSet":
        base = self.base.truncate(max_dim)
        keep = set(base.dim_of)
        return GSimplicialSet(base, self.G, {g: {x: y for x, y in p.items() if x in keep}
                                             for g, p in self.action.items()}, self.O)


@dataclass(frozen=True)
class Orbit:
    rep: Hashable
    stabilizer: Subgroup
    members: Mapping[Hashable, int]

    def __len__(self):
        return len(self.members)


def fixed_points(X: GSimplicialSet, H) -> SimplicialSet:
    return X.fixed_points(frozenset(H))


@dataclass
class OGSimplicialSetDiagram:
    orbit_category: OrbitCategory
    objects: dict
    maps: dict

    def __call__(self, m: Morphism) -> SimplicialMap:
        return self.maps[m]


def phi(X: GSimplicialSet) -> OGSimplicialSetDiagram:
    """The diagram of fixed point sets, G/H -> X^H, with translation maps."""
    O = X.O
    return OGSimplicialSetDiagram(O, {H: X.fixed_points(H) for H in O.objects},
                                  {m: X.translation_map(m) for m in O.morphisms()})


def orbits_stabilizers(X: GSimplicialSet, q: int) -> list[tuple]:
    return [(o.rep, o.stabilizer, tuple(o.members)) for o in X.orbits(q)]


def cosets(G: FinGroup, H: Subgroup) -> list[frozenset]:
    """Left cosets aH, the coset eH first, the rest by smallest element."""
    out = {frozenset(G.mul(a, h) for h in H) for a in G.elements()}
    return sorted(out, key=lambda c: (G.identity not in c, min(c)))


def orbit_times_simplex(X_or_G, H: Subgroup, q: int, orbit_category: OrbitCategory | None = None,
                        max_dim: int | None = None) -> GSimplicialSet:
    """The G-simplicial set G/H × Δ[q], G acting by left translation on the first factor.

    Nondegenerate simplices are ``(k, alpha)`` with ``k`` the index of the
    coset in :func:`cosets` (0 is eH) and ``alpha`` a strictly increasing tuple.
    """
    G = X_or_G.G if isinstance(X_or_G, GSimplicialSet) else X_or_G
    O = orbit_category or (X_or_G.O if isinstance(X_or_G, GSimplicialSet) else OrbitCategory(G))
    H = frozenset(H)
    cs = cosets(G, H)
    index = {c: k for k, c in enumerate(cs)}
    D = standard_simplex(q, q if max_dim is None else max_dim)
    nondeg = [[(k, a) for a in level for k in range(len(cs))] for level in D.nondeg]
    faces = {}
    for level in nondeg[1:]:
        for k, a in level:
            faces[(k, a)] = tuple(FormalSimplex((k, f.base), (), f.dim) for f in D.faces[a])
    base = SimplicialSet(nondeg, faces, D.max_dim, name=f"G/H×Δ[{q}]")
    action = {}
    for g in G.elements():
        perm = [index[frozenset(G.mul(g, x) for x in c)] for c in cs]
        action[g] = {(k, a): (perm[k], a) for level in nondeg for k, a in level}
    Y = GSimplicialSet(base, G, action, O)
    Y.cosets = cs
    Y.coset_index = index
    Y.H = H
    return Y


def is_G_connected(X: GSimplicialSet) -> bool:
    return X.is_G_connected()
