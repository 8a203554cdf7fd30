"""Coefficient data over the orbit category.

An abelian O_G-group M0, an O_G-group pi acting on it through phi, twisting
cocycles kappa on the fixed point diagram, path systems from a G-fixed base
vertex, and the local coefficient system M these data determine.

Group-valued composition follows the groupoid order: the label of a path
``e1`` then ``e2`` is ``label(e2) * label(e1)``.  For a 2-simplex y the
cocycle condition reads ``kappa(∂1 y) = kappa(∂0 y) * kappa(∂2 y)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .equivariant import FinGroup, GSimplicialSet, Morphism, OrbitCategory, Subgroup
from .errors import PathMissing, ValidationError
from .simplicial import FormalSimplex, SimplicialSet
from .zmodule import AbHom, FGAbelianGroup, hom_is_well_defined


class OGAbelianGroup:
    """Contravariant functor O_G -> Ab; ``homs[m]`` maps M0(G/K) to M0(G/H) for m: G/H -> G/K."""

    def __init__(self, O: OrbitCategory, groups: Mapping[Subgroup, FGAbelianGroup],
                 homs: Mapping[Morphism, AbHom]):
        self.O = O
        self.groups = dict(groups)
        self.homs = dict(homs)

    @classmethod
    def constant(cls, O: OrbitCategory, A: FGAbelianGroup) -> "OGAbelianGroup":
        return cls(O, {H: A for H in O.objects}, {m: AbHom.identity(A) for m in O.morphisms()})

    def __getitem__(self, H: Subgroup) -> FGAbelianGroup:
        return self.groups[H]

    def hom(self, m: Morphism) -> AbHom:
        return self.homs[m]

    def validate(self) -> list[str]:
        problems = []
        for H in self.O.objects:
            if H not in self.groups:
                problems.append(f"M0 missing for subgroup {sorted(H)}")
        for m in self.O.morphisms():
            h = self.homs.get(m)
            if h is None:
                problems.append(f"M0 missing for morphism {_mname(self.O, m)}")
                continue
            if h.domain is not self.groups.get(m.target) or h.codomain is not self.groups.get(m.source):
                if (h.domain.ngens, h.codomain.ngens) != (self.groups[m.target].ngens,
                                                          self.groups[m.source].ngens):
                    problems.append(f"M0{_mname(self.O, m)} has the wrong shape")
                    continue
            if not hom_is_well_defined(h):
                problems.append(f"M0{_mname(self.O, m)} does not respect relations")
        if problems:
            return problems
        for H in self.O.objects:
            if not self.homs[self.O.identity(H)].equals(AbHom.identity(self.groups[H])):
                problems.append(f"M0 of the identity of G/{sorted(H)} is not the identity")
        for m1, m2 in self.O.composable_pairs():
            lhs = self.homs[self.O.compose(m2, m1)]
            rhs = self.homs[m1] @ self.homs[m2]
            if not lhs.equals(rhs):
                problems.append(f"M0 is not functorial on {_mname(self.O, m2)}∘{_mname(self.O, m1)}")
        return problems


class OGGroup:
    """Contravariant functor O_G -> Grp of finite groups; ``homs[m]`` is a tuple map pi(G/K) -> pi(G/H)."""

    def __init__(self, O: OrbitCategory, groups: Mapping[Subgroup, FinGroup],
                 homs: Mapping[Morphism, Sequence[int]]):
        self.O = O
        self.groups = dict(groups)
        self.homs = {m: tuple(v) for m, v in homs.items()}

    @classmethod
    def constant(cls, O: OrbitCategory, P: FinGroup) -> "OGGroup":
        ident = tuple(range(P.order))
        return cls(O, {H: P for H in O.objects}, {m: ident for m in O.morphisms()})

    def __getitem__(self, H: Subgroup) -> FinGroup:
        return self.groups[H]

    def map(self, m: Morphism, a: int) -> int:
        return self.homs[m][a]

    def validate(self) -> list[str]:
        problems = []
        for H in self.O.objects:
            if H not in self.groups:
                problems.append(f"pi missing for subgroup {sorted(H)}")
        for m in self.O.morphisms():
            f = self.homs.get(m)
            if f is None:
                problems.append(f"pi missing for morphism {_mname(self.O, m)}")
                continue
            src, dst = self.groups[m.target], self.groups[m.source]
            if len(f) != src.order or any(not 0 <= v < dst.order for v in f):
                problems.append(f"pi{_mname(self.O, m)} has the wrong shape")
            elif not src.is_homomorphism(dst, f):
                problems.append(f"pi{_mname(self.O, m)} is not a homomorphism")
        if problems:
            return problems
        for H in self.O.objects:
            if self.homs[self.O.identity(H)] != tuple(range(self.groups[H].order)):
                problems.append(f"pi of the identity of G/{sorted(H)} is not the identity")
        for m1, m2 in self.O.composable_pairs():
            comp = self.homs[self.O.compose(m2, m1)]
            f1, f2 = self.homs[m1], self.homs[m2]
            if comp != tuple(f1[f2[a]] for a in range(len(f2))):
                problems.append(f"pi is not functorial on {_mname(self.O, m2)}∘{_mname(self.O, m1)}")
        return problems


class OGAction:
    """Action phi of pi on M0: ``matrices[H][a]`` is the automorphism phi(a) of M0(G/H)."""

    def __init__(self, M0: OGAbelianGroup, pi: OGGroup, matrices: Mapping[Subgroup, Sequence[AbHom]]):
        self.M0 = M0
        self.pi = pi
        self.matrices = {H: tuple(v) for H, v in matrices.items()}

    @classmethod
    def trivial(cls, M0: OGAbelianGroup, pi: OGGroup) -> "OGAction":
        return cls(M0, pi, {H: tuple(AbHom.identity(M0[H]) for _ in range(pi[H].order))
                            for H in M0.O.objects})

    def hom(self, H: Subgroup, a: int) -> AbHom:
        return self.matrices[H][a]

    def act(self, H: Subgroup, a: int, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrices[H][a](x)

    def act_inverse(self, H: Subgroup, a: int, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrices[H][self.pi[H].inv(a)](x)

    def validate(self) -> list[str]:
        O = self.M0.O
        problems = []
        for H in O.objects:
            P, A = self.pi[H], self.M0[H]
            mats = self.matrices.get(H)
            if mats is None or len(mats) != P.order:
                problems.append(f"phi missing or incomplete for subgroup {sorted(H)}")
                continue
            for a, h in enumerate(mats):
                if (h.matrix.rows, h.matrix.cols) != (A.ngens, A.ngens) or not hom_is_well_defined(h):
                    problems.append(f"phi({P.names[a]}) at G/{sorted(H)} is not an endomorphism")
        if problems:
            return problems
        for H in O.objects:
            P, A = self.pi[H], self.M0[H]
            mats = self.matrices[H]
            if not mats[P.identity].equals(AbHom.identity(A)):
                problems.append(f"phi(e) at G/{sorted(H)} is not the identity")
            for a in P.elements():
                for b in P.elements():
                    if not mats[P.mul(a, b)].equals(mats[a] @ mats[b]):
                        problems.append(f"phi at G/{sorted(H)} is not a homomorphism at "
                                        f"({P.names[a]}, {P.names[b]})")
        for m in O.morphisms():
            H, K = m.source, m.target
            M0g = self.M0.hom(m)
            for a in self.pi[K].elements():
                lhs = self.matrices[H][self.pi.map(m, a)] @ M0g
                rhs = M0g @ self.matrices[K][a]
                if not lhs.equals(rhs):
                    problems.append(f"phi is not natural for {_mname(O, m)} at {self.pi[K].names[a]}")
        return problems


@dataclass
class CoefficientSystem:
    """The triple (M0, pi, phi)."""

    M0: OGAbelianGroup
    pi: OGGroup
    phi: OGAction

    @property
    def O(self) -> OrbitCategory:
        return self.M0.O

    def validate(self) -> list[str]:
        return self.M0.validate() or self.pi.validate() or self.phi.validate()


def _mname(O: OrbitCategory, m: Morphism) -> str:
    return f"(G/{sorted(m.source)} -> G/{sorted(m.target)} via {O.G.names[m.rep]})"


class TwistingCocycle:
    """Group-valued labels on nondegenerate edges of every fixed complex X^H."""

    def __init__(self, X: GSimplicialSet, pi: OGGroup, labels: Mapping[tuple[Subgroup, Hashable], int]):
        self.X = X
        self.pi = pi
        self.labels = dict(labels)

    @classmethod
    def uniform(cls, X: GSimplicialSet, pi: OGGroup, labels: Mapping[Hashable, int]) -> "TwistingCocycle":
        """Same label at every level (meaningful when pi is constant)."""
        out = {}
        for H in X.O.objects:
            XH = X.fixed_points(H)
            if XH.max_dim >= 1:
                for e in XH.nondeg[1]:
                    out[H, e] = labels[e]
        return cls(X, pi, out)

    @classmethod
    def trivial(cls, X: GSimplicialSet, pi: OGGroup) -> "TwistingCocycle":
        out = {}
        for H in X.O.objects:
            XH = X.fixed_points(H)
            if XH.max_dim >= 1:
                for e in XH.nondeg[1]:
                    out[H, e] = pi[H].identity
        return cls(X, pi, out)

    def value(self, H: Subgroup, edge: FormalSimplex) -> int:
        if edge.dim != 1:
            raise ValueError("twisting labels live on 1-simplices")
        if edge.word:
            return self.pi[H].identity
        return self.labels[H, edge.base]


def derive_kappa_q(kappa: TwistingCocycle, H: Subgroup, y: FormalSimplex) -> int:
    """κ_q(y): the label of the 01-edge ``∂_{(2..q)} y`` (identity on degenerate edges)."""
    if y.dim < 1:
        raise ValueError("κ_q is defined for q >= 1")
    return kappa.value(H, kappa.X.base.edge01(y))


def twisting_identity_violations(simplices: Callable[[int], Iterable], face: Callable,
                                 degeneracy: Callable, kappa: Callable, group: FinGroup,
                                 max_dim: int) -> list[tuple[str, object]]:
    """Audit the four twisting-function identities against a constant group complex.

    Returns ``(identity, simplex)`` pairs for every violation.
    """
    P = group
    bad = []
    for q in range(1, max_dim + 1):
        for b in simplices(q):
            k = kappa(b)
            if q >= 2:
                if k != P.mul(P.inv(kappa(face(b, 0))), kappa(face(b, 1))):
                    bad.append(("∂0κ(b) = κ(∂0b)^-1 κ(∂1b)", b))
                for i in range(1, q):
                    if k != kappa(face(b, i + 1)):
                        bad.append((f"∂{i}κ(b) = κ(∂{i + 1}b)", b))
            if q + 1 <= max_dim:
                for i in range(q):
                    if k != kappa(degeneracy(b, i + 1)):
                        bad.append((f"s{i}κ(b) = κ(s{i + 1}b)", b))
    for q in range(0, max_dim):
        for b in simplices(q):
            if kappa(degeneracy(b, 0)) != P.identity:
                bad.append(("κ(s0 b) = e", b))
    return bad


@dataclass
class TwistingReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_twisting(X: GSimplicialSet, pi: OGGroup, kappa: TwistingCocycle,
                      max_dim: int | None = None) -> TwistingReport:
    """Check the cocycle, normalization and naturality conditions plus the four identities."""
    O = X.O
    D = X.max_dim if max_dim is None else min(max_dim, X.max_dim)
    report = TwistingReport()
    for H in O.objects:
        XH = X.fixed_points(H)
        edges = XH.nondeg[1] if XH.max_dim >= 1 else ()
        P = pi[H]
        for e in edges:
            if (H, e) not in kappa.labels:
                report.violations.append(("missing label", (sorted(H), e)))
            elif not 0 <= kappa.labels[H, e] < P.order:
                report.violations.append(("label outside pi(G/H)", (sorted(H), e)))
    for (H, e) in kappa.labels:
        XH = X.fixed_points(H)
        if XH.max_dim < 1 or e not in XH.nondeg[1]:
            report.violations.append(("label on an edge outside X^H", (sorted(H), e)))
    if report.violations:
        return report
    for H in O.objects:
        XH = X.fixed_points(H)
        P = pi[H]
        if XH.max_dim >= 2:
            for y in XH.nondeg[2]:
                s = XH.simplex(y)
                k = [kappa.value(H, XH.face(s, i)) for i in range(3)]
                if k[1] != P.mul(k[0], k[2]):
                    report.violations.append(("cocycle κ(∂1y) = κ(∂0y)κ(∂2y)", (sorted(H), y)))
    for m in O.morphisms():
        H, K = m.source, m.target
        XK = X.fixed_points(K)
        if XK.max_dim < 1:
            continue
        for z in XK.nondeg[1]:
            gz = X.act(m.rep, XK.simplex(z))
            if kappa.value(H, gz) != pi.map(m, kappa.value(K, XK.simplex(z))):
                report.violations.append(("naturality κ(gz) = π(ĝ)κ(z)",
                                          (_mname(O, m), z)))
    for H in O.objects:
        XH = X.fixed_points(H)
        for ident, b in twisting_identity_violations(
                XH.simplices, XH.face, XH.degeneracy,
                lambda y, H=H: derive_kappa_q(kappa, H, y), pi[H], D):
            report.violations.append((ident, (sorted(H), b)))
    return report


Path = tuple  # sequence of (edge id, +1 forward | -1 backward)


def path_endpoints(X: SimplicialSet, path: Sequence[tuple[Hashable, int]], start) -> list:
    """Vertices visited by ``path`` from ``start``; raises ValidationError on a break."""
    out = [start]
    cur = start
    for e, d in path:
        src, dst = X.faces[e][1].base, X.faces[e][0].base
        if d < 0:
            src, dst = dst, src
        if src != cur:
            raise ValidationError(f"path breaks at edge {e!r}", witness=e)
        cur = dst
        out.append(cur)
    return out


class PathSystem:
    """Edge-paths ω_x from a G-fixed vertex v to each orbit representative x, inside X^{G_x}."""

    def __init__(self, X: GSimplicialSet, base, paths: Mapping[Hashable, Sequence[tuple[Hashable, int]]]):
        self.X = X
        self.base = base
        self.paths = {x: tuple((e, int(d)) for e, d in p) for x, p in paths.items()}

    @classmethod
    def from_bfs(cls, X: GSimplicialSet, base) -> "PathSystem":
        """Shortest edge-paths, edges tried in declaration order."""
        paths = {}
        for orb in X.orbits(0):
            x = orb.rep
            XH = X.fixed_points(orb.stabilizer)
            paths[x] = _bfs_path(XH, base, x)
        return cls(X, base, paths)

    def validate(self) -> list[str]:
        X = self.X
        problems = []
        if self.base not in X.base.dim_of or X.base.dim_of[self.base] != 0:
            return [f"base vertex {self.base!r} is not a vertex"]
        if X.stabilizer(self.base) != frozenset(X.G.elements()):
            problems.append(f"base vertex {self.base!r} is not G-fixed")
        for orb in X.orbits(0):
            x = orb.rep
            if x not in self.paths:
                problems.append(f"no path to orbit representative {x!r}")
                continue
            XH = X.fixed_points(orb.stabilizer)
            p = self.paths[x]
            if any(e not in XH.dim_of or XH.dim_of[e] != 1 for e, _ in p):
                problems.append(f"path to {x!r} leaves the fixed complex of its stabilizer")
                continue
            try:
                ends = path_endpoints(XH, p, self.base)
            except ValidationError as exc:
                problems.append(f"path to {x!r}: {exc}")
                continue
            if ends[-1] != x:
                problems.append(f"path to {x!r} ends at {ends[-1]!r}")
        if not problems:
            problems.extend(self.translation_ambiguities())
        return problems

    def translation_ambiguities(self) -> list[str]:
        """Every g with g·x0 = x must give the same translated path."""
        X = self.X
        problems = []
        for orb in X.orbits(0):
            p = self.paths[orb.rep]
            for y in orb.members:
                variants = {tuple((X.act_id(g, e), d) for e, d in p)
                            for g in X.G.elements() if X.act_id(g, orb.rep) == y}
                if len(variants) != 1:
                    problems.append(f"translated path to {y!r} depends on the chosen group element")
        return problems

    def path(self, x) -> Path:
        """ω_x = g·ω_{x0} where x = g·x0 and x0 is the orbit representative."""
        _, orb, g = self.X.locate(x)
        return tuple((self.X.act_id(g, e), d) for e, d in self.paths[orb.rep])


def _bfs_path(XH: SimplicialSet, start, goal) -> Path:
    if start not in XH.dim_of:
        raise PathMissing(f"base vertex {start!r} is not in the fixed complex")
    adj: dict = {v: [] for v in XH.nondeg[0]}
    if XH.max_dim >= 1:
        for e in XH.nondeg[1]:
            a, b = XH.faces[e][1].base, XH.faces[e][0].base
            adj[a].append((e, 1, b))
            adj[b].append((e, -1, a))
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for e, d, w in adj[v]:
            if w not in prev:
                prev[w] = (v, e, d)
                queue.append(w)
    if goal not in prev:
        raise PathMissing(f"{goal!r} is unreachable from {start!r} inside its fixed complex")
    out = []
    v = goal
    while prev[v] is not None:
        u, e, d = prev[v]
        out.append((e, d))
        v = u
    return tuple(reversed(out))


def holonomy(kappa: TwistingCocycle, H: Subgroup, path: Sequence[tuple[Hashable, int]]) -> int:
    """Product of labels along ``path`` at level H (later edges multiply on the left)."""
    P = kappa.pi[H]
    out = P.identity
    for e, d in path:
        a = kappa.labels[H, e]
        out = P.mul(a if d > 0 else P.inv(a), out)
    return out


def based_twisting_labels(raw: TwistingCocycle, xi: PathSystem) -> TwistingCocycle:
    """Based twisting κ(e) = hol(ω_target)^-1 · raw(e) · hol(ω_source)."""
    X = raw.X
    out = {}
    for (H, e), a in raw.labels.items():
        P = raw.pi[H]
        src, dst = X.base.faces[e][1].base, X.base.faces[e][0].base
        h_src = holonomy(raw, H, xi.path(src))
        h_dst = holonomy(raw, H, xi.path(dst))
        out[H, e] = P.prod([P.inv(h_dst), a, h_src])
    return TwistingCocycle(X, raw.pi, out)


class LocalSystem:
    """The equivariant local coefficient system M built from (M0, phi) and a path system.

    ``raw`` supplies the groupoid data: the class of an edge-path inside X^H
    is the product of its raw labels.
    """

    def __init__(self, coeffs: CoefficientSystem, raw: TwistingCocycle, xi: PathSystem):
        self.coeffs = coeffs
        self.raw = raw
        self.xi = xi
        self.X = raw.X

    @cached_property
    def based_kappa(self) -> TwistingCocycle:
        return based_twisting_labels(self.raw, self.xi)

    def check_hypotheses(self) -> list[str]:
        X = self.X
        problems = []
        if not X.is_G_connected():
            problems.append("X is not G-connected")
        if X.stabilizer(self.xi.base) != frozenset(X.G.elements()):
            problems.append(f"base vertex {self.xi.base!r} is not G-fixed")
        return problems

    def loop_class(self, H: Subgroup, x, path: Sequence[tuple[Hashable, int]], y) -> int:
        """α = [ω_y]^-1 ∘ [path] ∘ [ω_x] in pi(G/H) for a path from x to y inside X^H."""
        P = self.coeffs.pi[H]
        return P.prod([P.inv(holonomy(self.raw, H, self.xi.path(y))),
                       holonomy(self.raw, H, path),
                       holonomy(self.raw, H, self.xi.path(x))])

    def coefficient_morphism(self, m: Morphism, x, y, path: Sequence[tuple[Hashable, int]]) -> AbHom:
        """M([ĝ, φ]) : M0(G/K) -> M0(G/H) for x in X^H, y in X^K and φ̄ a path x -> g·y in X^H."""
        X = self.X
        H = m.source
        gy = X.act_id(m.rep, y)
        XH = X.fixed_points(H)
        ends = path_endpoints(XH, path, x)
        if ends[-1] != gy:
            raise ValidationError(f"connecting path ends at {ends[-1]!r}, expected {gy!r}")
        alpha = self.loop_class(H, x, path, gy)
        inv = self.coeffs.phi.hom(H, self.coeffs.pi[H].inv(alpha))
        return inv @ self.coeffs.M0.hom(m)

    def edge_path(self, edge: FormalSimplex) -> Path:
        """A 1-simplex as a path: empty when degenerate."""
        return () if edge.word else ((edge.base, 1),)


def coefficient_morphism(system: LocalSystem, m: Morphism, x, y, path) -> AbHom:
    return system.coefficient_morphism(m, x, y, path)
