"""Equivariant cochain complexes: Bredon-Illman with local coefficients, and twisted.

A cochain of degree n stores one value in M0(G/G_r) for every orbit
representative r of nondegenerate n-simplices.  The value at any fixed
simplex x = g·r of X^H is M0(ĝ) applied to the stored value, and degenerate
simplices evaluate to zero.  Both complexes share this storage; a flavor tag
selects the coboundary.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .equivariant import GSimplicialSet, Subgroup
from .errors import DimensionMismatch, HypothesisViolation, IndexOutOfRange
from .localsys import CoefficientSystem, LocalSystem, TwistingCocycle, derive_kappa_q
from .simplicial import FormalSimplex
from .zmodule import AbHom, FGAbelianGroup, IntMatrix, cohomology_of_complex

BREDON = "bredon"
TWISTED = "twisted"
FLAVORS = (BREDON, TWISTED)

Element = tuple


class EquivariantComplex:
    """Cochain groups and coboundaries of X with coefficients (M0, pi, phi).

    ``local`` (raw labels plus a path system) is needed for the Bredon flavor;
    ``kappa`` for the twisted flavor.  When only ``local`` is given the twisted
    flavor uses its based twisting.
    """

    def __init__(self, X: GSimplicialSet, coeffs: CoefficientSystem,
                 kappa: TwistingCocycle | None = None, local: LocalSystem | None = None):
        self.X = X
        self.coeffs = coeffs
        self.M0 = coeffs.M0
        self.local = local
        if kappa is None and local is not None:
            kappa = local.based_kappa
        self.kappa = kappa

    @property
    def max_dim(self) -> int:
        return self.X.max_dim

    # --- storage ---------------------------------------------------------

    def orbits(self, n: int):
        if n < 0:
            raise IndexOutOfRange(f"negative degree {n}")
        return self.X.orbits(n) if n <= self.max_dim else []

    def blocks(self, n: int) -> list[FGAbelianGroup]:
        return [self.M0[o.stabilizer] for o in self.orbits(n)]

    @cached_property
    def _groups(self) -> dict:
        return {}

    def group(self, n: int) -> FGAbelianGroup:
        if n not in self._groups:
            self._groups[n] = FGAbelianGroup.direct_sum(self.blocks(n))
        return self._groups[n]

    def zero(self, n: int, flavor: str = TWISTED) -> "EquivariantCochain":
        return EquivariantCochain(self, n, tuple(A.zero() for A in self.blocks(n)), flavor)

    def from_vector(self, n: int, vec: Sequence[int], flavor: str = TWISTED) -> "EquivariantCochain":
        vals, off = [], 0
        for A in self.blocks(n):
            vals.append(tuple(vec[off:off + A.ngens]))
            off += A.ngens
        if off != len(vec):
            raise DimensionMismatch(f"vector of length {len(vec)} for a group on {off} generators")
        return EquivariantCochain(self, n, tuple(vals), flavor)

    def from_function(self, n: int, fn: Callable[[Subgroup, FormalSimplex], Element],
                      flavor: str = TWISTED) -> "EquivariantCochain":
        """Store ``fn`` at orbit representatives (the rest is forced by compatibility)."""
        vals = tuple(tuple(fn(o.stabilizer, self.X.base.simplex(o.rep))) for o in self.orbits(n))
        return EquivariantCochain(self, n, vals, flavor)

    def random_cochain(self, n: int, rng: random.Random, flavor: str = TWISTED,
                       bound: int = 5) -> "EquivariantCochain":
        vec = [rng.randint(-bound, bound) for _ in range(self.group(n).ngens)]
        return self.from_vector(n, vec, flavor)

    def units(self, n: int, flavor: str) -> list["EquivariantCochain"]:
        N = self.group(n).ngens
        return [self.from_vector(n, [int(i == j) for i in range(N)], flavor) for j in range(N)]

    # --- evaluation ------------------------------------------------------

    def evaluate(self, f: "EquivariantCochain", H: Subgroup, x: FormalSimplex) -> Element:
        if x.dim != f.degree:
            raise DimensionMismatch(f"{x.dim}-simplex given to a degree {f.degree} cochain")
        A = self.M0[H]
        if x.word:
            return A.zero()
        k, orb, g = self.X.locate(x.base)
        m = self.X.O.morphism(H, orb.stabilizer, g)
        return self.M0.hom(m)(f.values[k])

    def is_compatible(self, n: int, fn: Callable[[Subgroup, FormalSimplex], Element]) -> bool:
        """Whether ``fn`` agrees with the cochain it determines at every fixed simplex."""
        f = self.from_function(n, fn)
        for H in self.X.O.objects:
            XH = self.X.fixed_points(H)
            if XH.max_dim < n:
                continue
            for b in XH.nondeg[n]:
                x = XH.simplex(b)
                if not self.M0[H].equal(fn(H, x), self.evaluate(f, H, x)):
                    return False
        return True

    # --- coboundaries ----------------------------------------------------

    def require_hypotheses(self):
        if self.local is None:
            raise HypothesisViolation("the Bredon complex needs a path system and raw twisting")
        problems = self.local.check_hypotheses()
        if problems:
            raise HypothesisViolation("; ".join(problems))

    def sigma_star(self, H: Subgroup, y: FormalSimplex) -> AbHom:
        """M(σ_*) : M(σ^(0)) -> M(σ), the connecting morphism along the 01-edge of y."""
        X = self.X.base
        edge = X.edge01(y)
        x0, x1 = X.vertex(y, 0).base, X.vertex(y, 1).base
        O = self.X.O
        return self.local.coefficient_morphism(O.identity(H), x0, x1, self.local.edge_path(edge))

    def bredon_coboundary_at(self, f: "EquivariantCochain", H: Subgroup, y: FormalSimplex) -> Element:
        """δf(σ) = M(σ_*)(f(σ^(0))) + Σ_{j≥1} (-1)^j f(σ^(j)) for y = σ(eH, Δ)."""
        if y.dim != f.degree + 1:
            raise DimensionMismatch("coboundary evaluated on a simplex of the wrong dimension")
        A = self.M0[H]
        if y.word:
            return A.zero()
        X = self.X.base
        first = self.sigma_star(H, y)(self.evaluate(f, H, X.face(y, 0)))
        return _alternating(A, first, [self.evaluate(f, H, X.face(y, i)) for i in range(1, y.dim + 1)])

    def twisted_coboundary_at(self, f: "EquivariantCochain", H: Subgroup, y: FormalSimplex) -> Element:
        """δ_κ f(y) = κ(y)^-1 · f(∂0 y) + Σ_{i≥1} (-1)^i f(∂_i y)."""
        if y.dim != f.degree + 1:
            raise DimensionMismatch("coboundary evaluated on a simplex of the wrong dimension")
        A = self.M0[H]
        if y.word:
            return A.zero()
        X = self.X.base
        k = derive_kappa_q(self.kappa, H, y)
        first = self.coeffs.phi.act_inverse(H, k, self.evaluate(f, H, X.face(y, 0)))
        return _alternating(A, first, [self.evaluate(f, H, X.face(y, i)) for i in range(1, y.dim + 1)])

    def coboundary_at(self, f: "EquivariantCochain", H: Subgroup, y: FormalSimplex) -> Element:
        if f.flavor == BREDON:
            return self.bredon_coboundary_at(f, H, y)
        return self.twisted_coboundary_at(f, H, y)

    def coboundary(self, f: "EquivariantCochain") -> "EquivariantCochain":
        if f.degree + 1 > self.max_dim:
            raise IndexOutOfRange(f"no simplices of dimension {f.degree + 1} (truncation {self.max_dim})")
        if f.flavor == BREDON:
            self.require_hypotheses()
        return self.from_function(f.degree + 1, lambda H, y: self.coboundary_at(f, H, y), f.flavor)

    def coboundary_matrix(self, n: int, flavor: str) -> AbHom:
        """δ^n : C^n -> C^(n+1) as a homomorphism of presented groups."""
        if flavor == BREDON:
            self.require_hypotheses()
        cols = [self.coboundary(u).vector for u in self.units(n, flavor)]
        target = self.group(n + 1)
        return AbHom(self.group(n), target, IntMatrix.from_columns(cols, target.ngens))

    def cohomology(self, flavor: str, top: int | None = None) -> list[FGAbelianGroup]:
        """H^0 .. H^top, with top at most D - 1."""
        top = self.max_dim - 1 if top is None else top
        if top > self.max_dim - 1:
            raise IndexOutOfRange(f"H^{top} needs simplices of dimension {top + 1} (D = {self.max_dim})")
        if top < 0:
            return []
        deltas = [self.coboundary_matrix(n, flavor) for n in range(top + 1)]
        return cohomology_of_complex(deltas)[:top + 1]

    # --- comparison maps ---------------------------------------------------

    def _base_morphism(self, H: Subgroup, x0, inverse: bool) -> AbHom:
        """M(bξ_H(x0)) : M(x0_H) -> M(v_H), or its inverse."""
        loc = self.local
        path = loc.xi.path(x0)
        idH = self.X.O.identity(H)
        if inverse:
            back = tuple((e, -d) for e, d in reversed(path))
            return loc.coefficient_morphism(idH, x0, loc.xi.base, back)
        return loc.coefficient_morphism(idH, loc.xi.base, x0, path)

    def bredon_to_twisted_at(self, f: "EquivariantCochain", H: Subgroup, y: FormalSimplex) -> Element:
        if y.word:
            return self.M0[H].zero()
        x0 = self.X.base.vertex(y, 0).base
        return self._base_morphism(H, x0, inverse=False)(self.evaluate(f, H, y))

    def twisted_to_bredon_at(self, f: "EquivariantCochain", H: Subgroup, y: FormalSimplex) -> Element:
        if y.word:
            return self.M0[H].zero()
        x0 = self.X.base.vertex(y, 0).base
        return self._base_morphism(H, x0, inverse=True)(self.evaluate(f, H, y))

    def bredon_to_twisted(self, f: "EquivariantCochain") -> "EquivariantCochain":
        """Bredon cochain -> twisted cochain."""
        if f.flavor != BREDON:
            raise ValueError("bredon_to_twisted expects a Bredon cochain")
        self.require_hypotheses()
        return self.from_function(f.degree, lambda H, y: self.bredon_to_twisted_at(f, H, y), TWISTED)

    def twisted_to_bredon(self, f: "EquivariantCochain") -> "EquivariantCochain":
        """Twisted cochain -> Bredon cochain."""
        if f.flavor != TWISTED:
            raise ValueError("twisted_to_bredon expects a twisted cochain")
        self.require_hypotheses()
        return self.from_function(f.degree, lambda H, y: self.twisted_to_bredon_at(f, H, y), BREDON)


def _alternating(A: FGAbelianGroup, first: Element, rest: Sequence[Element]) -> Element:
    out = list(first)
    for i, v in enumerate(rest, start=1):
        sign = -1 if i % 2 else 1
        for k, a in enumerate(v):
            out[k] += sign * a
    return tuple(out)


@dataclass(frozen=True)
class EquivariantCochain:
    complex: EquivariantComplex
    degree: int
    values: tuple
    flavor: str = TWISTED

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        blocks = self.complex.blocks(self.degree)
        if len(self.values) != len(blocks) or any(len(v) != A.ngens for v, A in zip(self.values, blocks)):
            raise DimensionMismatch("cochain values do not match the orbit blocks")

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a for v in self.values for a in v)

    def normalized(self) -> tuple:
        return tuple(A.normalize(v) for A, v in zip(self.complex.blocks(self.degree), self.values))

    def equals(self, other: "EquivariantCochain") -> bool:
        return self.degree == other.degree and self.normalized() == other.normalized()

    def is_zero(self) -> bool:
        return all(A.is_zero(v) for A, v in zip(self.complex.blocks(self.degree), self.values))

    def __add__(self, other):
        return self.combine(other, 1)

    def __sub__(self, other):
        return self.combine(other, -1)

    def combine(self, other: "EquivariantCochain", sign: int) -> "EquivariantCochain":
        if other.degree != self.degree:
            raise DimensionMismatch("cochains of different degrees")
        vals = tuple(tuple(a + sign * b for a, b in zip(u, w)) for u, w in zip(self.values, other.values))
        return EquivariantCochain(self.complex, self.degree, vals, self.flavor)

    def with_flavor(self, flavor: str) -> "EquivariantCochain":
        return EquivariantCochain(self.complex, self.degree, self.values, flavor)

    def to_json(self) -> list:
        return [list(v) for v in self.normalized()]


def evaluate(f: EquivariantCochain, H: Subgroup, x: FormalSimplex) -> Element:
    return f.complex.evaluate(f, frozenset(H), x)


def bredon_coboundary(f: EquivariantCochain) -> EquivariantCochain:
    return f.complex.coboundary(f.with_flavor(BREDON))


def twisted_coboundary(f: EquivariantCochain) -> EquivariantCochain:
    return f.complex.coboundary(f.with_flavor(TWISTED))


def cohomology(X: GSimplicialSet, coeffs: CoefficientSystem, flavor: str, n: int,
               kappa: TwistingCocycle | None = None, local: LocalSystem | None = None) -> FGAbelianGroup:
    return EquivariantComplex(X, coeffs, kappa, local).cohomology(flavor, n)[n]


def bredon_to_twisted(f: EquivariantCochain) -> EquivariantCochain:
    return f.complex.bredon_to_twisted(f)


def twisted_to_bredon(f: EquivariantCochain) -> EquivariantCochain:
    return f.complex.twisted_to_bredon(f)
