"""Finite, dimension-truncated simplicial sets.

Only nondegenerate simplices are stored.  Every simplex, degenerate or not,
is a :class:`FormalSimplex`: a strictly decreasing degeneracy word
``(j1, ..., jk)`` meaning ``s_j1 ... s_jk`` applied to a nondegenerate base.
This is the Eilenberg-Zilber normal form and it is unique.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import IndexOutOfRange, ValidationError


@dataclass(frozen=True)
class FormalSimplex:
    base: Hashable
    word: tuple[int, ...] = ()
    dim: int = 0

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.word)

    def __repr__(self):
        if not self.word:
            return f"<{self.base!r}>"
        ops = "".join(f"s{j}" for j in self.word)
        return f"<{ops} {self.base!r}>"


def insert_degeneracy(word: Sequence[int], j: int) -> tuple[int, ...]:
    """Normal form of ``s_j`` composed on the left of the (normal) word."""
    out = []
    for idx, w in enumerate(word):
        if j <= w:
            # s_j s_w = s_{w+1} s_j
            out.append(w + 1)
        else:
            out.append(j)
            out.extend(word[idx:])
            return tuple(out)
    out.append(j)
    return tuple(out)


def degeneracy_word_from_ops(ops: Iterable[int]) -> tuple[int, ...]:
    """Normal form of ``s_{o1} s_{o2} ... s_{ok}`` (``ops`` listed outermost first)."""
    word: tuple[int, ...] = ()
    for j in reversed(list(ops)):
        word = insert_degeneracy(word, j)
    return word


class SimplicialSet:
    """A finite simplicial set truncated at dimension ``max_dim``.

    ``nondeg[q]`` lists the nondegenerate q-simplex identifiers in
    declaration order; ``faces[x]`` gives ``(∂_0 x, ..., ∂_q x)`` as
    FormalSimplex values for every x of dimension q >= 1.
    """

    def __init__(self, nondeg: Sequence[Sequence[Hashable]],
                 faces: Mapping[Hashable, Sequence[FormalSimplex]],
                 max_dim: int | None = None, name: str = ""):
        if max_dim is None:
            max_dim = len(nondeg) - 1
        self.max_dim = max_dim
        self.name = name
        self.nondeg: list[tuple] = [tuple(nondeg[q]) if q < len(nondeg) else ()
                                    for q in range(max_dim + 1)]
        self.dim_of: dict = {}
        self.order: dict = {}
        for q, ids in enumerate(self.nondeg):
            for x in ids:
                if x in self.dim_of:
                    raise ValidationError(f"duplicate simplex identifier {x!r}", witness=x)
                self.dim_of[x] = q
                self.order[x] = len(self.order)
        self.faces = {x: tuple(faces[x]) for q in range(1, max_dim + 1) for x in self.nondeg[q]}

    def __contains__(self, x) -> bool:
        return x in self.dim_of

    def __repr__(self):
        counts = tuple(len(n) for n in self.nondeg)
        return f"SimplicialSet({self.name or '?'}, counts={counts})"

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.nondeg)

    def simplex(self, x) -> FormalSimplex:
        return FormalSimplex(x, (), self.dim_of[x])

    def vertices(self) -> tuple:
        return self.nondeg[0]

    def sort_key(self, x: FormalSimplex):
        return (x.dim, self.order[x.base], x.word)

    # --- operators -------------------------------------------------------

    def degeneracy(self, x: FormalSimplex, j: int) -> FormalSimplex:
        if not 0 <= j <= x.dim:
            raise IndexOutOfRange(f"s_{j} on a {x.dim}-simplex")
        return FormalSimplex(x.base, insert_degeneracy(x.word, j), x.dim + 1)

    def degenerate(self, x: FormalSimplex, word: Sequence[int]) -> FormalSimplex:
        """Apply the normal-form word (outermost first) to ``x``."""
        for j in reversed(tuple(word)):
            x = self.degeneracy(x, j)
        return x

    def face(self, x: FormalSimplex, i: int) -> FormalSimplex:
        if x.dim == 0 or not 0 <= i <= x.dim:
            raise IndexOutOfRange(f"∂_{i} on a {x.dim}-simplex")
        outer: list[int] = []
        word = list(x.word)
        while word:
            j = word.pop(0)
            if i < j:
                # ∂_i s_j = s_{j-1} ∂_i
                outer.append(j - 1)
            elif i == j or i == j + 1:
                return self.degenerate(FormalSimplex(x.base, tuple(word), x.dim - 1 - len(outer)),
                                       outer)
            else:
                # ∂_i s_j = s_j ∂_{i-1}
                outer.append(j)
                i -= 1
        base_face = self.faces[x.base][i]
        return self.degenerate(base_face, outer)

    def iterated_face(self, x: FormalSimplex, indices: Sequence[int]) -> FormalSimplex:
        """``∂_{i1} ∂_{i2} ... ∂_{ir} x`` (the last index is applied first)."""
        for i in reversed(tuple(indices)):
            x = self.face(x, i)
        return x

    def apply_operators(self, ops: Sequence[tuple[str, int]], x: FormalSimplex) -> FormalSimplex:
        """Apply a written operator word such as ``[("d", 2), ("s", 0)]`` (= ∂₂s₀x)."""
        for kind, i in reversed(tuple(ops)):
            if kind in ("d", "∂", "face"):
                x = self.face(x, i)
            elif kind in ("s", "degeneracy"):
                x = self.degeneracy(x, i)
            else:
                raise ValueError(f"unknown operator {kind!r}")
        return x

    def vertex(self, x: FormalSimplex, k: int) -> FormalSimplex:
        """The k-th vertex of ``x``."""
        q = x.dim
        return self.iterated_face(x, [i for i in range(q + 1) if i != k])

    def restrict(self, x: FormalSimplex, alpha: Sequence[int]) -> FormalSimplex:
        """``x`` pulled back along the weakly increasing vertex list ``alpha``.

        Strictly increasing lists give faces; repeated entries add degeneracies.
        """
        alpha = tuple(alpha)
        if any(b < a for a, b in zip(alpha, alpha[1:])) or (alpha and not 0 <= alpha[0] <= alpha[-1] <= x.dim):
            raise IndexOutOfRange(f"{alpha} is not a weakly increasing vertex list of a {x.dim}-simplex")
        keep = set(alpha)
        for i in sorted((i for i in range(x.dim + 1) if i not in keep), reverse=True):
            x = self.face(x, i)
        repeats = [j for j in range(len(alpha) - 1) if alpha[j] == alpha[j + 1]]
        return self.degenerate(x, tuple(reversed(repeats)))

    def edge01(self, x: FormalSimplex) -> FormalSimplex:
        """``∂_{(2,...,q)} x``, the edge from vertex 0 to vertex 1."""
        return self.iterated_face(x, range(2, x.dim + 1))

    # --- enumeration -----------------------------------------------------

    def simplices(self, q: int) -> Iterator[FormalSimplex]:
        """All q-simplices (degenerate ones included) in deterministic order."""
        for p in range(min(q, self.max_dim) + 1):
            for word in combinations(range(q - 1, -1, -1), q - p):
                for b in self.nondeg[p]:
                    yield FormalSimplex(b, tuple(word), q)

    def validate(self) -> list[str]:
        """Return a list of violated simplicial identities (empty if valid)."""
        problems = []
        for q in range(1, self.max_dim + 1):
            for b in self.nondeg[q]:
                fs = self.faces.get(b)
                if fs is None or len(fs) != q + 1:
                    problems.append(f"{b!r}: expected {q + 1} faces")
                    continue
                for i, f in enumerate(fs):
                    if f.base not in self.dim_of or f.dim != q - 1 or \
                            self.dim_of[f.base] != f.base_dim or \
                            tuple(sorted(f.word, reverse=True)) != f.word or \
                            len(set(f.word)) != len(f.word):
                        problems.append(f"{b!r}: face {i} {f!r} is malformed")
        if problems:
            return problems
        for q in range(2, self.max_dim + 1):
            for b in self.nondeg[q]:
                x = self.simplex(b)
                for j in range(q + 1):
                    for i in range(j):
                        lhs = self.face(self.face(x, j), i)
                        rhs = self.face(self.face(x, i), j - 1)
                        if lhs != rhs:
                            problems.append(
                                f"{b!r}: ∂_{i}∂_{j} = {lhs!r} but ∂_{j - 1}∂_{i} = {rhs!r}")
        return problems

    def subcomplex(self, keep: Iterable[Hashable], name: str = "") -> "SimplicialSet":
        keep = set(keep)
        nondeg = [[x for x in ids if x in keep] for ids in self.nondeg]
        return SimplicialSet(nondeg, {x: self.faces[x] for x in keep if self.dim_of[x] > 0},
                             self.max_dim, name=name)

    def components(self) -> list[list]:
        """Edge-path components of the vertex set."""
        parent = {v: v for v in self.nondeg[0]}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        if self.max_dim >= 1:
            for e in self.nondeg[1]:
                a, b = find(self.faces[e][1].base), find(self.faces[e][0].base)
                if a != b:
                    parent[max(a, b, key=self.order.__getitem__)] = min(
                        a, b, key=self.order.__getitem__)
        groups: dict = {}
        for v in self.nondeg[0]:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def truncate(self, max_dim: int) -> "SimplicialSet":
        max_dim = min(max_dim, self.max_dim)
        return SimplicialSet(self.nondeg[:max_dim + 1],
                             {x: f for x, f in self.faces.items() if self.dim_of[x] <= max_dim},
                             max_dim, name=self.name)


def standard_simplex(n: int, max_dim: int | None = None) -> SimplicialSet:
    """Δ[n]; nondegenerate simplices are strictly increasing tuples."""
    if max_dim is None:
        max_dim = n
    return _tuples_complex(n, max_dim, proper=False)


def boundary(n: int, max_dim: int | None = None) -> SimplicialSet:
    """∂Δ[n]: all proper faces of Δ[n]."""
    if max_dim is None:
        max_dim = max(n - 1, 0)
    return _tuples_complex(n, max_dim, proper=True)


def _tuples_complex(n: int, max_dim: int, proper: bool) -> SimplicialSet:
    top = n - 1 if proper else n
    nondeg = [list(combinations(range(n + 1), q + 1)) if q <= top else []
              for q in range(max_dim + 1)]
    faces = {}
    for q in range(1, max_dim + 1):
        for t in nondeg[q]:
            faces[t] = tuple(FormalSimplex(t[:i] + t[i + 1:], (), q - 1) for i in range(q + 1))
    name = f"∂Δ[{n}]" if proper else f"Δ[{n}]"
    return SimplicialSet(nondeg, faces, max_dim, name=name)


def simplex_to_tuple(x: FormalSimplex) -> tuple[int, ...]:
    """Vertex tuple of a simplex of Δ[n] (bases are increasing tuples)."""
    t = list(x.base)
    for j in reversed(x.word):
        t.insert(j, t[j])
    return tuple(t)


def tuple_to_simplex(t: Sequence[int]) -> FormalSimplex:
    """Inverse of :func:`simplex_to_tuple` for nondecreasing tuples."""
    word = []
    base = [t[0]]
    for k in range(1, len(t)):
        if t[k] == t[k - 1]:
            word.append(k - 1)
        else:
            base.append(t[k])
    return FormalSimplex(tuple(base), tuple(sorted(word, reverse=True)), len(t) - 1)


def normalize_pair(X: SimplicialSet, Y: SimplicialSet, a: FormalSimplex,
                   b: FormalSimplex) -> FormalSimplex:
    """Write the pair ``(a, b)`` as ``s_W`` of a jointly nondegenerate pair."""
    common = set(a.word) & set(b.word)
    if not common:
        return FormalSimplex((a, b), (), a.dim)
    j = max(common)
    inner = normalize_pair(X, Y, X.face(a, j), Y.face(b, j))
    return FormalSimplex(inner.base, insert_degeneracy(inner.word, j), inner.dim + 1)


def product(X: SimplicialSet, Y: SimplicialSet, max_dim: int | None = None) -> SimplicialSet:
    """X × Y truncated at ``max_dim``; nondegenerate simplices are pairs of FormalSimplex."""
    if max_dim is None:
        max_dim = min(X.max_dim, Y.max_dim)
    if max_dim > min(X.max_dim, Y.max_dim):
        raise ValueError("both factors must be truncated at or above max_dim")
    nondeg = []
    faces = {}
    for q in range(max_dim + 1):
        ys = list(Y.simplices(q))
        level = []
        for a in X.simplices(q):
            sa = set(a.word)
            for b in ys:
                if sa.isdisjoint(b.word):
                    level.append((a, b))
        nondeg.append(level)
        if q:
            for a, b in level:
                faces[(a, b)] = tuple(normalize_pair(X, Y, X.face(a, i), Y.face(b, i))
                                      for i in range(q + 1))
    return SimplicialSet(nondeg, faces, max_dim, name=f"{X.name or 'X'}×{Y.name or 'Y'}")


@dataclass
class SimplicialMap:
    """Map given on nondegenerate generators; extended to degeneracies."""

    source: SimplicialSet
    target: SimplicialSet
    mapping: Mapping[Hashable, FormalSimplex] = field(default_factory=dict)

    def __call__(self, x: FormalSimplex) -> FormalSimplex:
        return self.target.degenerate(self.mapping[x.base], x.word)


def check_map(f: SimplicialMap) -> bool:
    """True iff ``f ∂_i = ∂_i f`` on every nondegenerate generator."""
    X, Y = f.source, f.target
    for q in range(X.max_dim + 1):
        for b in X.nondeg[q]:
            img = f.mapping.get(b)
            if img is None or img.dim != q:
                return False
            x = X.simplex(b)
            for i in range(q + 1 if q else 0):
                if f(X.face(x, i)) != Y.face(img, i):
                    return False
    return True


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {b: X.simplex(b) for ids in X.nondeg for b in ids})


def check_simplicial_identities(simplices: Callable[[int], Iterable], face: Callable,
                                degeneracy: Callable, max_dim: int,
                                eq: Callable = lambda a, b: a == b) -> list[str]:
    """Generic checker for the simplicial identities on an arbitrary simplicial object.

    ``simplices(q)`` enumerates q-simplices, ``face(x, i)`` / ``degeneracy(x, j)``
    implement the operators.  Faces are checked up to ``max_dim`` and
    degeneracies on simplices of dimension ``< max_dim``.
    """
    problems = []
    for q in range(max_dim + 1):
        for x in simplices(q):
            if q >= 2:
                for j in range(q + 1):
                    for i in range(j):
                        if not eq(face(face(x, j), i), face(face(x, i), j - 1)):
                            problems.append(f"∂{i}∂{j} != ∂{j - 1}∂{i} at {x!r}")
            if q < max_dim:
                for j in range(q + 1):
                    y = degeneracy(x, j)
                    if not (eq(face(y, j), x) and eq(face(y, j + 1), x)):
                        problems.append(f"∂{j}s{j} or ∂{j + 1}s{j} != id at {x!r}")
                    for i in range(q + 2):
                        if i < j:
                            if q >= 1 and not eq(face(y, i), degeneracy(face(x, i), j - 1)):
                                problems.append(f"∂{i}s{j} != s{j - 1}∂{i} at {x!r}")
                        elif i > j + 1:
                            if not eq(face(y, i), degeneracy(face(x, i - 1), j)):
                                problems.append(f"∂{i}s{j} != s{j}∂{i - 1} at {x!r}")
                    if q + 1 < max_dim:
                        for i in range(j + 1):
                            if not eq(degeneracy(y, i), degeneracy(degeneracy(x, i), j + 1)):
                                problems.append(f"s{i}s{j} != s{j + 1}s{i} at {x!r}")
    return problems
