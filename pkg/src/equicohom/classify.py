"""Eilenberg-MacLane diagrams, the W-bar construction and lifts of θ(κ).

Nothing infinite is materialized: cochains on Δ[q], W-bar simplices and
twisted-product simplices are built pointwise.  A lift of θ(κ) stores only
its cochain component on nondegenerate simplices; the W-bar component is
always θ(κ) and degenerate values come from the degeneracies.

W-bar convention (0-indexed tuples): ∂0 drops g1, ∂_q drops g_q, an inner
∂_i replaces (g_i, g_{i+1}) by g_{i+1}·g_i, and s_j inserts the identity at
index j.  κ(π) returns g1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Callable, Hashable, Iterable, Sequence

from .cohomology import TWISTED, EquivariantCochain, EquivariantComplex
from .equivariant import FinGroup, GSimplicialSet, Morphism, Subgroup, orbit_times_simplex
from .errors import (DimensionMismatch, IndexOutOfRange, LiftInvariantViolation,
                     NotCohomologous)
from .localsys import (CoefficientSystem, OGAction, TwistingCocycle, derive_kappa_q,
                       twisting_identity_violations)
from .simplicial import (FormalSimplex, SimplicialSet, check_simplicial_identities, normalize_pair, product,
                         simplex_to_tuple, standard_simplex, tuple_to_simplex)
from .zmodule import AbHom, FGAbelianGroup, kernel_basis


# --- cochains on Δ[q] -----------------------------------------------------

@lru_cache(maxsize=None)
def em_tuples(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Nondegenerate n-simplices of Δ[q] in lexicographic order."""
    if n < 0:
        return ()
    return tuple(combinations(range(q + 1), n + 1))


@lru_cache(maxsize=None)
def _tuple_index(n: int, q: int) -> dict:
    return {t: k for k, t in enumerate(em_tuples(n, q))}


@dataclass(frozen=True)
class EMCochain:
    """A normalized n-cochain on Δ[q] with values in ``group`` (= M0(G/H))."""

    H: Subgroup
    n: int
    q: int
    values: tuple
    group: FGAbelianGroup = field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.values) != len(em_tuples(self.n, self.q)):
            raise DimensionMismatch(f"{len(self.values)} values for C^{self.n}(Δ[{self.q}])")

    @classmethod
    def from_function(cls, H, group, n, q, fn: Callable[[tuple], Sequence[int]]) -> "EMCochain":
        return cls(frozenset(H), n, q, tuple(tuple(fn(a)) for a in em_tuples(n, q)), group)

    @classmethod
    def zero(cls, H, group, n, q) -> "EMCochain":
        return cls.from_function(H, group, n, q, lambda a: group.zero())

    def value(self, alpha: Sequence[int]) -> tuple[int, ...]:
        """c(α); zero on degenerate (non strictly increasing) tuples."""
        alpha = tuple(alpha)
        k = _tuple_index(self.n, self.q).get(alpha)
        if k is None:
            if len(alpha) != self.n + 1 or any(not 0 <= a <= self.q for a in alpha):
                raise IndexOutOfRange(f"{alpha} is not an {self.n}-simplex of Δ[{self.q}]")
            return self.group.zero()
        return self.values[k]

    def normalized(self) -> tuple:
        return tuple(self.group.normalize(v) for v in self.values)

    def equals(self, other: "EMCochain") -> bool:
        return ((self.H, self.n, self.q) == (other.H, other.n, other.q)
                and self.normalized() == other.normalized())

    def is_zero(self) -> bool:
        return all(self.group.is_zero(v) for v in self.values)

    def __add__(self, other: "EMCochain") -> "EMCochain":
        return EMCochain(self.H, self.n, self.q,
                         tuple(tuple(a + b for a, b in zip(u, w)) for u, w in zip(self.values, other.values)),
                         self.group)


def em_face(c: EMCochain, i: int) -> EMCochain:
    """(∂_i c)(α) = c(δ_i α)."""
    if c.q == 0 or not 0 <= i <= c.q:
        raise IndexOutOfRange(f"∂_{i} on C(A, {c.n})_{c.q}")
    return EMCochain.from_function(c.H, c.group, c.n, c.q - 1,
                                   lambda a: c.value(tuple(k + (k >= i) for k in a)))


def em_degeneracy(c: EMCochain, j: int) -> EMCochain:
    """(s_j c)(β) = c(σ_j β)."""
    if not 0 <= j <= c.q:
        raise IndexOutOfRange(f"s_{j} on C(A, {c.n})_{c.q}")
    return EMCochain.from_function(c.H, c.group, c.n, c.q + 1,
                                   lambda b: c.value(tuple(k - (k > j) for k in b)))


def em_delta(c: EMCochain) -> EMCochain:
    """The simplicial coboundary on Δ[q]."""
    def fn(a):
        out = [0] * c.group.ngens
        for i in range(len(a)):
            v = c.value(a[:i] + a[i + 1:])
            s = -1 if i % 2 else 1
            for k, x in enumerate(v):
                out[k] += s * x
        return out
    return EMCochain.from_function(c.H, c.group, c.n + 1, c.q, fn)


def em_apply(h: AbHom, c: EMCochain, H: Subgroup | None = None) -> EMCochain:
    """Apply a coefficient homomorphism entrywise (φ(a) or M0(ĝ))."""
    H = c.H if H is None else frozenset(H)
    return EMCochain(H, c.n, c.q, tuple(h(v) for v in c.values), h.codomain)


def em_act(phi: OGAction, a: int, c: EMCochain) -> EMCochain:
    """a·μ = φ(a) ∘ μ."""
    return em_apply(phi.hom(c.H, a), c)


def em_simplex_count(n: int, q: int) -> int:
    return len(em_tuples(n, q))


# --- W-bar ----------------------------------------------------------------

@dataclass(frozen=True)
class WBarSimplex:
    H: Subgroup
    elems: tuple[int, ...]
    group: FinGroup = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.elems)


def wbar_face(w: WBarSimplex, i: int) -> WBarSimplex:
    q = w.dim
    if q == 0 or not 0 <= i <= q:
        raise IndexOutOfRange(f"∂_{i} on a {q}-simplex of W-bar")
    g = w.elems
    if i == 0:
        new = g[1:]
    elif i == q:
        new = g[:-1]
    else:
        new = g[:i - 1] + (w.group.mul(g[i], g[i - 1]),) + g[i + 1:]
    return WBarSimplex(w.H, new, w.group)


def wbar_degeneracy(w: WBarSimplex, j: int) -> WBarSimplex:
    if not 0 <= j <= w.dim:
        raise IndexOutOfRange(f"s_{j} on a {w.dim}-simplex of W-bar")
    return WBarSimplex(w.H, w.elems[:j] + (w.group.identity,) + w.elems[j:], w.group)


def kappa_pi(w: WBarSimplex) -> int:
    if w.dim < 1:
        raise IndexOutOfRange("κ(π) needs a simplex of dimension >= 1")
    return w.elems[0]


def wbar_simplices(P: FinGroup, H: Subgroup, q: int) -> Iterable[WBarSimplex]:
    for elems in iproduct(P.elements(), repeat=q):
        yield WBarSimplex(frozenset(H), tuple(elems), P)


def wbar_map(pi, m: Morphism, w: WBarSimplex) -> WBarSimplex:
    """W-bar π(ĝ): W-bar π(G/K) -> W-bar π(G/H)."""
    return WBarSimplex(m.source, tuple(pi.map(m, a) for a in w.elems), pi[m.source])


def audit_wbar(P: FinGroup, H: Subgroup, max_dim: int) -> dict:
    """Simplicial identities of W-bar and the twisting identities of κ(π)."""
    simp = lambda q: wbar_simplices(P, H, q)
    return {
        "simplicial": check_simplicial_identities(simp, wbar_face, wbar_degeneracy, max_dim),
        "twisting": twisting_identity_violations(simp, wbar_face, wbar_degeneracy, kappa_pi, P, max_dim),
    }


# --- twisted cartesian product ----------------------------------------------

@dataclass(frozen=True)
class TCPSimplex:
    c: EMCochain
    w: WBarSimplex

    @property
    def dim(self) -> int:
        return self.w.dim

    def equals(self, other: "TCPSimplex") -> bool:
        return self.w == other.w and self.c.equals(other.c)


def tcp_face(t: TCPSimplex, i: int, phi: OGAction) -> TCPSimplex:
    """∂0(c, w) = (φ(g1)∘∂0 c, ∂0 w); other faces componentwise."""
    c = em_face(t.c, i)
    if i == 0:
        c = em_act(phi, kappa_pi(t.w), c)
    return TCPSimplex(c, wbar_face(t.w, i))


def tcp_degeneracy(t: TCPSimplex, j: int) -> TCPSimplex:
    return TCPSimplex(em_degeneracy(t.c, j), wbar_degeneracy(t.w, j))


def tcp_delta(t: TCPSimplex) -> TCPSimplex:
    return TCPSimplex(em_delta(t.c), t.w)


def in_L(t: TCPSimplex) -> bool:
    """Membership in the K(M0, n) part: the cochain component is a cocycle."""
    return em_delta(t.c).is_zero()


def random_tcp_simplex(P: FinGroup, A: FGAbelianGroup, H: Subgroup, n: int, q: int,
                       rng: random.Random, bound: int = 3) -> TCPSimplex:
    c = EMCochain.from_function(H, A, n, q, lambda a: [rng.randint(-bound, bound) for _ in range(A.ngens)])
    w = WBarSimplex(frozenset(H), tuple(rng.randrange(P.order) for _ in range(q)), P)
    return TCPSimplex(c, w)


def fundamental_u(t: TCPSimplex) -> tuple[int, ...]:
    """u((c, g)) = c(Δ_n) for an n-simplex (c, g) of χ_φ(M0, n)."""
    if t.c.q != t.c.n:
        raise DimensionMismatch(f"u is evaluated on {t.c.n}-simplices, got dimension {t.c.q}")
    return t.c.value(tuple(range(t.c.n + 1)))


# --- θ(κ) ---------------------------------------------------------------------

def theta_kappa(X: GSimplicialSet, kappa: TwistingCocycle, H: Subgroup, x: FormalSimplex) -> WBarSimplex:
    """[κ_q(x), κ_{q-1}(∂0 x), ..., κ_1(∂0^{q-1} x)]."""
    H = frozenset(H)
    out = []
    y = x
    for _ in range(x.dim):
        out.append(derive_kappa_q(kappa, H, y))
        y = X.base.face(y, 0)
    return WBarSimplex(H, tuple(out), kappa.pi[H])


# --- pullbacks ------------------------------------------------------------------

SimplexMap = Callable[[FormalSimplex], FormalSimplex]


def pullback_twisting(kappa: TwistingCocycle, Y: GSimplicialSet, fmap: SimplexMap) -> TwistingCocycle:
    """κΦf for an equivariant simplicial map f: Y -> X given on simplices."""
    labels = {}
    for H in Y.O.objects:
        YH = Y.fixed_points(H)
        if YH.max_dim >= 1:
            for e in YH.nondeg[1]:
                labels[H, e] = kappa.value(H, fmap(YH.simplex(e)))
    return TwistingCocycle(Y, kappa.pi, labels)


def pullback_cochain(target: EquivariantComplex, f: EquivariantCochain, fmap: SimplexMap) -> EquivariantCochain:
    source = f.complex
    return target.from_function(f.degree, lambda H, y: source.evaluate(f, H, fmap(y)), f.flavor)


def orbit_simplex_map(X: GSimplicialSet, Y: GSimplicialSet, x: FormalSimplex) -> SimplexMap:
    """σ: G/H × Δ[q] -> X with σ(eH, Δ_q) = x, so σ(aH, α) = a · x|α."""
    reps = [min(c) for c in Y.cosets]

    def sigma(y: FormalSimplex) -> FormalSimplex:
        k, alpha = y.base
        return X.base.degenerate(X.act(reps[k], X.base.restrict(x, alpha)), y.word)
    return sigma


def coset_map(YH: GSimplicialSet, YK: GSimplicialSet, g: int) -> SimplexMap:
    """ĝ × id : G/H × Δ[q] -> G/K × Δ[q], aH -> agK."""
    G = YH.G
    image = [YK.coset_index[frozenset(G.mul(G.mul(min(c), g), k) for k in YK.H)] for c in YH.cosets]

    def fmap(y: FormalSimplex) -> FormalSimplex:
        k, alpha = y.base
        return FormalSimplex((image[k], alpha), y.word, y.dim)
    return fmap


def orbit_simplex(Y: GSimplicialSet, k: int, t: Sequence[int]) -> FormalSimplex:
    """The simplex (coset k, t) of G/H × Δ[q] for a weakly increasing tuple t."""
    s = tuple_to_simplex(t)
    return FormalSimplex((k, s.base), s.word, s.dim)


def orbit_simplex_twisting(Y: GSimplicialSet, pi, labels: dict) -> TwistingCocycle:
    """Extend labels on the edges (i, j) of eH × Δ[q] (values in π(G/H)) to every level."""
    H = Y.H
    reps = [min(c) for c in Y.cosets]
    out = {}
    for L in Y.O.objects:
        YL = Y.fixed_points(L)
        if YL.max_dim < 1:
            continue
        for e in YL.nondeg[1]:
            k, alpha = e
            m = Y.O.morphism(L, H, reps[k])
            out[L, e] = pi.map(m, labels[alpha])
    return TwistingCocycle(Y, pi, out)


def random_orbit_simplex_twisting(Y: GSimplicialSet, pi, rng: random.Random) -> TwistingCocycle:
    """A random valid twisting: a gauge h_i ∈ π(G/H) per vertex, κ(i, j) = h_j h_i^-1."""
    P = pi[Y.H]
    q = len(Y.base.nondeg[0]) // len(Y.cosets) - 1
    h = [rng.randrange(P.order) for _ in range(q + 1)]
    labels = {(i, j): P.mul(h[j], P.inv(h[i])) for i, j in combinations(range(q + 1), 2)}
    return orbit_simplex_twisting(Y, pi, labels)


# --- the isomorphism E_H ------------------------------------------------------------

def _orbit_q(Y: GSimplicialSet) -> int:
    return len(Y.base.nondeg[0]) // len(Y.cosets) - 1


def e_iso(complex_Y: EquivariantComplex, f: EquivariantCochain) -> EMCochain:
    """E_H(f)(α) = κ(eH, (0, α0))^-1 · f(G/H)(eH, α)."""
    Y, H = complex_Y.X, complex_Y.X.H
    q = _orbit_q(Y)
    phi, kappa = complex_Y.coeffs.phi, complex_Y.kappa

    def fn(alpha):
        edge = orbit_simplex(Y, 0, (0, alpha[0]))
        k = kappa.value(H, edge)
        return phi.act_inverse(H, k, complex_Y.evaluate(f, H, orbit_simplex(Y, 0, alpha)))
    return EMCochain.from_function(H, complex_Y.M0[H], f.degree, q, fn)


def e_iso_inverse(complex_Y: EquivariantComplex, c: EMCochain) -> EquivariantCochain:
    """f(G/K)(â, α) = M0(â)(κ(eH, (0, α0)) · c(α)); stored at the representatives (eH, α)."""
    Y, H = complex_Y.X, complex_Y.X.H
    phi, kappa = complex_Y.coeffs.phi, complex_Y.kappa

    def fn(L, y):
        k, alpha = y.base
        assert k == 0 and L == H, "orbit representatives of G/H × Δ[q] sit over eH"
        a = kappa.value(H, orbit_simplex(Y, 0, (0, alpha[0])))
        return phi.act(H, a, c.value(alpha))
    return complex_Y.from_function(c.n, fn, TWISTED)


class OrbitSimplexCache:
    """G/H × Δ[q] built once per (H, q)."""

    def __init__(self, X: GSimplicialSet):
        self.X = X
        self._cache: dict = {}

    def get(self, H: Subgroup, q: int) -> GSimplicialSet:
        key = (frozenset(H), q)
        if key not in self._cache:
            self._cache[key] = orbit_times_simplex(self.X.G, H, q, self.X.O)
        return self._cache[key]


def sigma_pullback(complex_X: EquivariantComplex, T: EquivariantCochain, H: Subgroup,
                   x: FormalSimplex, cache: OrbitSimplexCache | None = None):
    """The complex of G/H × Δ[q] with twisting κΦσ, and σ*T."""
    X = complex_X.X
    Y = (cache or OrbitSimplexCache(X)).get(H, x.dim)
    sigma = orbit_simplex_map(X, Y, x)
    kappa_Y = pullback_twisting(complex_X.kappa, Y, sigma)
    complex_Y = EquivariantComplex(Y, complex_X.coeffs, kappa=kappa_Y)
    return complex_Y, pullback_cochain(complex_Y, T, sigma)


# --- lifts ------------------------------------------------------------------------

class Lift:
    """A lift of θ(κ) to χ_φ(M0, n), stored as cochain components on nondegenerate simplices."""

    def __init__(self, complex_X: EquivariantComplex, n: int, values: dict):
        self.complex = complex_X
        self.X = complex_X.X
        self.n = n
        self.values = dict(values)

    @property
    def phi(self) -> OGAction:
        return self.complex.coeffs.phi

    def cochain(self, H: Subgroup, x: FormalSimplex) -> EMCochain:
        c = self.values[frozenset(H), x.base]
        for j in reversed(x.word):
            c = em_degeneracy(c, j)
        return c

    def theta(self, H: Subgroup, x: FormalSimplex) -> WBarSimplex:
        return theta_kappa(self.X, self.complex.kappa, H, x)

    def simplex(self, H: Subgroup, x: FormalSimplex) -> TCPSimplex:
        return TCPSimplex(self.cochain(H, x), self.theta(H, x))

    def keys(self):
        for H in self.X.O.objects:
            XH = self.X.fixed_points(H)
            for level in XH.nondeg:
                for b in level:
                    yield H, XH.simplex(b)

    def equals(self, other: "Lift") -> bool:
        return (self.n == other.n and self.values.keys() == other.values.keys()
                and all(self.values[k].equals(other.values[k]) for k in self.values))

    def delta(self) -> "Lift":
        """(δ^n ×_κ(π) id) f."""
        return Lift(self.complex, self.n + 1, {k: em_delta(c) for k, c in self.values.items()})

    def in_L(self) -> bool:
        return all(em_delta(c).is_zero() for c in self.values.values())

    def with_value(self, H: Subgroup, b: Hashable, c: EMCochain) -> "Lift":
        vals = dict(self.values)
        vals[frozenset(H), b] = c
        return Lift(self.complex, self.n, vals)


def check_lift(lift: Lift) -> list[str]:
    """Simpliciality, naturality over O_G and the projection condition (all exact)."""
    X, phi, pi = lift.X, lift.phi, lift.complex.coeffs.pi
    M0 = lift.complex.M0
    problems = []
    for H in X.O.objects:
        XH = X.fixed_points(H)
        for q in range(XH.max_dim + 1):
            for b in XH.nondeg[q]:
                x = XH.simplex(b)
                if (H, b) not in lift.values:
                    problems.append(f"no value at {b!r} over G/{sorted(H)}")
                    continue
                t = lift.simplex(H, x)
                if t.c.q != q or t.c.n != lift.n:
                    problems.append(f"value at {b!r} has the wrong shape")
                    continue
                for i in range(q + 1 if q else 0):
                    if not tcp_face(t, i, phi).equals(lift.simplex(H, XH.face(x, i))):
                        problems.append(f"∂{i} not preserved at {b!r} over G/{sorted(H)}")
                if q < XH.max_dim:
                    for j in range(q + 1):
                        if lift.theta(H, XH.degeneracy(x, j)) != wbar_degeneracy(t.w, j):
                            problems.append(f"θ(κ) does not commute with s{j} at {b!r}")
    if problems:
        return problems
    for m in X.O.morphisms():
        H, K = m.source, m.target
        XK = X.fixed_points(K)
        hom = M0.hom(m)
        for level in XK.nondeg:
            for b in level:
                y = XK.simplex(b)
                gy = X.act(m.rep, y)
                if not lift.cochain(H, gy).equals(em_apply(hom, lift.cochain(K, y), H)):
                    problems.append(f"cochain component not natural for ĝ={m.rep} at {b!r}")
                if lift.theta(H, gy) != wbar_map(pi, m, lift.theta(K, y)):
                    problems.append(f"θ(κ) not natural for ĝ={m.rep} at {b!r}")
    return problems


def lift_cochain(T: EquivariantCochain, method: str = "orbit") -> Lift:
    """Γ(T)(G/H)(x) = (E_H σ*(T), θ(κ)(x)).

    ``method="orbit"`` goes through G/H × Δ[q] and E_H literally;
    ``method="direct"`` uses the unfolded formula φ(κ(x|(0,α0)))^-1 T(x|α).
    """
    C = T.complex
    X = C.X
    n = T.degree
    cache = OrbitSimplexCache(X)
    values = {}
    for H in X.O.objects:
        XH = X.fixed_points(H)
        for q in range(XH.max_dim + 1):
            for b in XH.nondeg[q]:
                x = XH.simplex(b)
                if method == "orbit":
                    CY, sT = sigma_pullback(C, T, H, x, cache)
                    values[H, b] = e_iso(CY, sT)
                else:
                    values[H, b] = _gamma_direct(C, T, H, x)
    return Lift(C, n, values)


def _gamma_direct(C: EquivariantComplex, T: EquivariantCochain, H: Subgroup, x: FormalSimplex) -> EMCochain:
    X = C.X.base
    phi = C.coeffs.phi

    def fn(alpha):
        k = C.kappa.value(H, X.restrict(x, (0, alpha[0])))
        return phi.act_inverse(H, k, C.evaluate(T, H, X.restrict(x, alpha)))
    return EMCochain.from_function(H, C.M0[H], T.degree, x.dim, fn)


def cochain_of_lift(lift: Lift) -> EquivariantCochain:
    """Ψ(f)(G/H)(x) = c(Δ_n)."""
    n = lift.n
    top = tuple(range(n + 1))
    return lift.complex.from_function(n, lambda H, x: lift.cochain(H, x).value(top), TWISTED)


def pullback_u(lift: Lift, H: Subgroup, x: FormalSimplex) -> tuple[int, ...]:
    """f*(u) at x."""
    return fundamental_u(lift.simplex(H, x))


def check_lift_roundtrip(lift: Lift) -> list[str]:
    """Ψf = f*(u) at every fixed nondegenerate n-simplex."""
    C = lift.complex
    psi = cochain_of_lift(lift)
    problems = []
    for H in C.X.O.objects:
        XH = C.X.fixed_points(H)
        if XH.max_dim < lift.n:
            continue
        for b in XH.nondeg[lift.n]:
            x = XH.simplex(b)
            if not C.M0[H].equal(C.evaluate(psi, H, x), pullback_u(lift, H, x)):
                problems.append(f"Ψf != f*(u) at {b!r} over G/{sorted(H)}")
    return problems


def check_gamma(T: EquivariantCochain, method: str = "orbit") -> Lift:
    """Γ(T), raising LiftInvariantViolation if any lift invariant fails."""
    lift = lift_cochain(T, method)
    problems = check_lift(lift) + check_lift_roundtrip(lift)
    if problems:
        raise LiftInvariantViolation(problems[0])
    return lift


# --- naturality of the orbit-simplex isomorphism ---------------------------------------

def orbit_simplex_naturality(complex_YK: EquivariantComplex, YH: GSimplicialSet, m: Morphism,
                             f: EquivariantCochain) -> bool:
    """M0(ĝ)_* E_K(f) = E_H((ĝ × id)^* f) for ĝ: G/H -> G/K."""
    fmap = coset_map(YH, complex_YK.X, m.rep)
    kappa_H = pullback_twisting(complex_YK.kappa, YH, fmap)
    complex_YH = EquivariantComplex(YH, complex_YK.coeffs, kappa=kappa_H)
    lhs = em_apply(complex_YK.M0.hom(m), e_iso(complex_YK, f), m.source)
    rhs = e_iso(complex_YH, pullback_cochain(complex_YH, f, fmap))
    return lhs.equals(rhs)


# --- vertical homotopies ------------------------------------------------------------------

class Cylinder:
    """X × Δ[1] with G acting on the first factor, and its structure maps."""

    def __init__(self, X: GSimplicialSet):
        self.X = X
        self.I = standard_simplex(1, X.max_dim)
        base = product(X.base, self.I, X.max_dim)
        action = {g: {p: (X.act(g, p[0]), p[1]) for level in base.nondeg for p in level}
                  for g in X.G.elements()}
        self.Y = GSimplicialSet(base, X.G, action, X.O)

    def pr1(self, y: FormalSimplex) -> FormalSimplex:
        a, _ = y.base
        return self.X.base.degenerate(a, y.word)

    def second(self, y: FormalSimplex) -> tuple[int, ...]:
        _, b = y.base
        return simplex_to_tuple(self.I.degenerate(b, y.word))

    def include(self, x: FormalSimplex, end: int) -> FormalSimplex:
        const = tuple_to_simplex((end,) * (x.dim + 1))
        return normalize_pair(self.X.base, self.I, x, const)


def cocycle_basis(C: EquivariantComplex, n: int, flavor: str = TWISTED) -> list[tuple[int, ...]]:
    """Integer vectors spanning the n-cocycles (modulo relations of C^n)."""
    N = C.group(n).ngens
    if n + 1 > C.max_dim:
        raise IndexOutOfRange(f"cocycles in degree {n} need simplices of dimension {n + 1}")
    D = C.coboundary_matrix(n, flavor).matrix
    R = C.group(n + 1).presentation
    big = D.hstack(R) if R.cols else D
    return [tuple(v[:N]) for v in kernel_basis(big)]


def random_cocycle(C: EquivariantComplex, n: int, rng: random.Random, flavor: str = TWISTED,
                   bound: int = 3) -> EquivariantCochain:
    basis = cocycle_basis(C, n, flavor)
    N = C.group(n).ngens
    vec = [0] * N
    for v in basis:
        a = rng.randint(-bound, bound)
        vec = [x + a * y for x, y in zip(vec, v)]
    return C.from_vector(n, vec, flavor)


@dataclass
class VerticalHomotopy:
    cylinder: Cylinder
    complex_Y: EquivariantComplex
    F: Lift
    gamma: EquivariantCochain
    beta: EquivariantCochain | None


def vertical_homotopy(f0: EquivariantCochain, f1: EquivariantCochain,
                      h: EquivariantCochain | None, method: str = "direct") -> VerticalHomotopy:
    """Γ(γ0 - δβ) over X × Δ[1], where δ_κ h = f0 - f1."""
    C = f0.complex
    n = f0.degree
    if h is None:
        if n != 0 and not (f0 - f1).is_zero():
            raise NotCohomologous("no homotopy data given for distinct cocycles")
        if not (f0 - f1).is_zero():
            raise NotCohomologous("distinct 0-cocycles are never cohomologous")
    elif not C.coboundary(h).equals(f0 - f1):
        raise NotCohomologous("δ_κ h differs from f0 - f1")
    cyl = Cylinder(C.X)
    kappa1 = pullback_twisting(C.kappa, cyl.Y, cyl.pr1)
    CY = EquivariantComplex(cyl.Y, C.coeffs, kappa=kappa1)
    gamma0 = pullback_cochain(CY, f0, cyl.pr1)
    beta = None
    gamma = gamma0
    if h is not None:
        def beta_fn(L, y):
            if set(cyl.second(y)) == {1}:
                return C.evaluate(h, L, cyl.pr1(y))
            return C.M0[L].zero()
        beta = CY.from_function(n - 1, beta_fn, TWISTED)
        gamma = gamma0 - CY.coboundary(beta)
    return VerticalHomotopy(cyl, CY, lift_cochain(gamma, method), gamma, beta)


def check_vertical_homotopy(V: VerticalHomotopy, f0: EquivariantCochain, f1: EquivariantCochain,
                            method: str = "direct") -> dict[str, list[str]]:
    """Endpoint restrictions, p∘F = θ(κ)∘pr1, and the lift invariants of F, by category."""
    cyl, F = V.cylinder, V.F
    C = f0.complex
    X = C.X
    out = {"lift": check_lift(F), "endpoints": [], "projection": []}
    ends = {0: lift_cochain(f0, method), 1: lift_cochain(f1, method)}
    for H in X.O.objects:
        XH = X.fixed_points(H)
        for level in XH.nondeg:
            for b in level:
                x = XH.simplex(b)
                for end, Gf in ends.items():
                    if not F.cochain(H, cyl.include(x, end)).equals(Gf.cochain(H, x)):
                        out["endpoints"].append(f"i{end}*F != Γf{end} at {b!r} over G/{sorted(H)}")
        YH = cyl.Y.fixed_points(H)
        for level in YH.nondeg:
            for p in level:
                y = YH.simplex(p)
                if F.theta(H, y) != theta_kappa(X, C.kappa, H, cyl.pr1(y)):
                    out["projection"].append(f"p∘F != θ(κ)∘pr1 at {p!r}")
    return out
