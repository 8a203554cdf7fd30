"""Exact integer linear algebra.

Smith normal form over Z, finitely generated abelian groups given by
presentations, homomorphisms between them, and the cohomology of a
cochain complex of presented groups.  Everything uses Python integers,
so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ComplexNotExact, DimensionMismatch


class IntMatrix:
    """Immutable dense integer matrix (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(v) for v in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"entry count does not match {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                out[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(out, rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]!r}, {self.rows}, {self.cols})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by "
                                    f"{other.rows}x{other.cols}")
        ocols = other.columns()
        return IntMatrix([[sum(a * b for a, b in zip(row, col) if a) for col in ocols]
                          for row in self.entries], self.rows, other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vec) if a) for row in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return IntMatrix([r + s for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols + other.cols)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)


@dataclass(frozen=True)
class SmithForm:
    """Result of a Smith normal form computation: ``S = U @ A @ V``."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        k = min(self.S.rows, self.S.cols)
        return [self.S[i, i] for i in range(k) if self.S[i, i] != 0]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _snf(A: IntMatrix) -> SmithForm:
    m, n = A.rows, A.cols
    S = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        if a != b:
            for row in S:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= c * row[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        Vi[src] = [x - c * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(r):
        S[r] = [-x for x in S[r]]
        U[r] = [-x for x in U[r]]
        for row in Ui:
            row[r] = -row[r]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            swap_rows(t, best[1])
            swap_cols(t, best[2])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(S[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and S[t][t] < 0:
            negate_row(t)
        if best is None:
            break

    return SmithForm(IntMatrix(U, m, m), IntMatrix(S, m, n), IntMatrix(V, n, n),
                     IntMatrix(Ui, m, m), IntMatrix(Vi, n, n))


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, S, V)`` with ``S = U @ A @ V`` diagonal, divisibility chain, U and V unimodular."""
    res = _snf(A)
    return res.U, res.S, res.V


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def kernel_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    """Z-basis of {x : A x = 0}."""
    res = _snf(A)
    r = res.rank
    return [res.V.column(j) for j in range(r, A.cols)]


class Lattice:
    """A sublattice of Z^n given by generators, with a basis and coordinate solver."""

    def __init__(self, ambient: int, generators: Sequence[Sequence[int]]):
        self.ambient = ambient
        gens = [tuple(g) for g in generators if any(g)]
        if gens:
            res = _snf(IntMatrix.from_columns(gens, ambient))
            self._U = res.U
            self.diagonal = res.diagonal
            self.basis = [tuple(s * u for u in res.U_inv.column(i))
                          for i, s in enumerate(self.diagonal)]
        else:
            self._U = IntMatrix.identity(ambient)
            self.diagonal = []
            self.basis = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of ``vec`` in :attr:`basis`, or None if not in the lattice."""
        y = self._U.apply(tuple(vec))
        r = self.rank
        if any(y[r:]):
            return None
        out = []
        for yi, s in zip(y, self.diagonal):
            if yi % s:
                return None
            out.append(yi // s)
        return tuple(out)

    def __contains__(self, vec) -> bool:
        return self.coordinates(vec) is not None


class FGAbelianGroup:
    """Finitely generated abelian group Z^ngens / (column span of ``relations``).

    Elements are integer vectors of length ``ngens``.
    """

    def __init__(self, ngens: int, relations: Sequence[Sequence[int]] = ()):
        self.ngens = ngens
        self.relations = tuple(tuple(int(v) for v in r) for r in relations)
        for r in self.relations:
            if len(r) != ngens:
                raise DimensionMismatch("relation length differs from generator count")
        self.presentation = IntMatrix.from_columns(self.relations, ngens)
        res = _snf(self.presentation)
        self._U = res.U
        self._diag = res.diagonal
        self.rank = ngens - len(self._diag)
        self.torsion = tuple(abs(d) for d in self._diag if abs(d) > 1)
        self._lattice = Lattice(ngens, self.relations)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> "FGAbelianGroup":
        k = len(torsion)
        rels = [[d if i == j else 0 for i in range(k + rank)] for j, d in enumerate(torsion)]
        return cls(k + rank, rels)

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, order: int) -> "FGAbelianGroup":
        return cls(1, [[order]]) if order else cls(1, ())

    @classmethod
    def direct_sum(cls, groups: Sequence["FGAbelianGroup"]) -> "FGAbelianGroup":
        n = sum(g.ngens for g in groups)
        rels = []
        off = 0
        for g in groups:
            for r in g.relations:
                v = [0] * n
                v[off:off + g.ngens] = r
                rels.append(v)
            off += g.ngens
        return cls(n, rels)

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        """Canonical form ``(rank, invariant factors)``."""
        return self.rank, self.torsion

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_isomorphic(self, other: "FGAbelianGroup") -> bool:
        return self.invariants == other.invariants

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of the class of ``x`` (equal iff the classes are equal)."""
        y = self._U.apply(tuple(x))
        out = []
        for i, v in enumerate(y):
            if i < len(self._diag):
                d = abs(self._diag[i])
                if d > 1:
                    out.append(v % d)
            else:
                out.append(v)
        return tuple(out)

    def is_zero(self, x: Sequence[int]) -> bool:
        return tuple(x) in self._lattice

    def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(x, y)))

    def __repr__(self):
        return f"FGAbelianGroup({self.ngens}, {list(self.relations)!r})"

    def __str__(self):
        return format_invariants(*self.invariants)


def format_invariants(rank: int, torsion: Sequence[int]) -> str:
    parts = [f"Z/{d}" for d in torsion]
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    return " + ".join(parts) if parts else "0"


class AbHom:
    """Homomorphism of presented groups given by a matrix on generators."""

    def __init__(self, domain: FGAbelianGroup, codomain: FGAbelianGroup, matrix):
        self.domain = domain
        self.codomain = codomain
        if codomain.ngens == 0 or domain.ngens == 0:
            matrix = IntMatrix.zeros(codomain.ngens, domain.ngens)
        self.matrix = _as_matrix(matrix)
        if (self.matrix.rows, self.matrix.cols) != (codomain.ngens, domain.ngens):
            raise DimensionMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{codomain.ngens}x{domain.ngens}")

    @classmethod
    def identity(cls, group: FGAbelianGroup) -> "AbHom":
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def zero(cls, domain: FGAbelianGroup, codomain: FGAbelianGroup) -> "AbHom":
        return cls(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(tuple(x))

    def compose(self, inner: "AbHom") -> "AbHom":
        """``self ∘ inner``."""
        return AbHom(inner.domain, self.codomain, self.matrix @ inner.matrix)

    __matmul__ = compose

    def __add__(self, other: "AbHom") -> "AbHom":
        return AbHom(self.domain, self.codomain, self.matrix + other.matrix)

    def equals(self, other: "AbHom") -> bool:
        """Equality as maps of groups (agree on every generator modulo relations)."""
        for j in range(self.domain.ngens):
            if not self.codomain.equal(self.matrix.column(j), other.matrix.column(j)):
                return False
        return True

    def is_zero_map(self) -> bool:
        return all(self.codomain.is_zero(self.matrix.column(j)) for j in range(self.domain.ngens))

    def __repr__(self):
        return f"AbHom({self.domain} -> {self.codomain}, {self.matrix.tolist()})"


def hom_is_well_defined(h: AbHom) -> bool:
    """True iff the matrix maps domain relations into codomain relations."""
    return all(h.codomain.is_zero(h.matrix.apply(r)) for r in h.domain.relations)


def cohomology_of_complex(deltas: Sequence[AbHom]) -> list[FGAbelianGroup]:
    """H^n = ker(delta^n) / im(delta^(n-1)) for n = 0..len(deltas).

    ``deltas[n]`` maps C^n to C^(n+1); the top group is taken modulo the image
    of the last map.  Kernels and images are computed in the presented groups.
    """
    if not deltas:
        return []
    for n in range(len(deltas) - 1):
        if deltas[n].codomain.ngens != deltas[n + 1].domain.ngens:
            raise DimensionMismatch(f"delta^{n} and delta^{n + 1} are not composable")
        if not (deltas[n + 1] @ deltas[n]).is_zero_map():
            raise ComplexNotExact(f"delta^{n + 1} o delta^{n} != 0")
    groups = [d.domain for d in deltas] + [deltas[-1].codomain]
    out = []
    for n, C in enumerate(groups):
        if n < len(deltas):
            D = deltas[n].matrix
            R_next = deltas[n].codomain.presentation
            block = D.hstack(R_next)
            kgens = [v[:C.ngens] for v in kernel_basis(block)]
        else:
            kgens = [tuple(int(i == j) for i in range(C.ngens)) for j in range(C.ngens)]
        K = Lattice(C.ngens, kgens)
        denom = list(C.relations)
        if n > 0:
            denom += deltas[n - 1].matrix.columns()
        coords = []
        for w in denom:
            z = K.coordinates(w)
            if z is None:
                raise ComplexNotExact(f"image of delta^{n - 1} is not inside ker delta^{n}")
            coords.append(z)
        out.append(FGAbelianGroup(K.rank, coords))
    return out
