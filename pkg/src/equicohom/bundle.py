"""JSON problem bundles.

A bundle describes a finite group, a G-simplicial set, coefficient data
(M0, pi, phi), raw twisting labels and an optional path system.  See the
README for the schema.  Identifiers are strings; group elements are referred
to by name or index; subgroups by element lists.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .cohomology import EquivariantComplex
from .equivariant import FinGroup, GSimplicialSet, OrbitCategory, Subgroup
from .errors import ParseError, PathMissing, ValidationError
from .localsys import (CoefficientSystem, LocalSystem, OGAbelianGroup, OGAction, OGGroup,
                       PathSystem, TwistingCocycle, validate_twisting)
from .simplicial import FormalSimplex, SimplicialSet
from .zmodule import AbHom, FGAbelianGroup, IntMatrix


@dataclass
class Bundle:
    name: str
    G: FinGroup
    X: GSimplicialSet
    coeffs: CoefficientSystem
    raw: TwistingCocycle
    base_vertex: Any = None
    paths: dict | None = None
    degrees: list = field(default_factory=list)
    source: dict = field(default_factory=dict, repr=False)

    @property
    def O(self) -> OrbitCategory:
        return self.X.O

    def hypotheses(self) -> list[str]:
        """G-connectedness and a G-fixed base vertex."""
        problems = []
        if not self.X.is_G_connected():
            problems.append("X is not G-connected")
        v = self.base_vertex
        if v is None:
            problems.append("no G-fixed base vertex")
        elif v not in self.X.base.dim_of or self.X.stabilizer(v) != frozenset(self.G.elements()):
            problems.append(f"base vertex {v!r} is not a G-fixed vertex")
        return problems

    def path_system(self) -> PathSystem:
        found = PathSystem.from_bfs(self.X, self.base_vertex)
        if self.paths is None:
            return found
        return PathSystem(self.X, self.base_vertex, {**found.paths, **self.paths})

    def local_system(self) -> LocalSystem | None:
        """The M-construction, or None when its hypotheses fail."""
        if self.hypotheses():
            return None
        return LocalSystem(self.coeffs, self.raw, self.path_system())

    def complex(self) -> EquivariantComplex:
        """Twisted flavor uses the based twisting when the hypotheses hold, else the raw labels."""
        local = self.local_system()
        if local is None:
            return EquivariantComplex(self.X, self.coeffs, kappa=self.raw)
        return EquivariantComplex(self.X, self.coeffs, local=local)

    def truncate(self, max_dim: int) -> "Bundle":
        if max_dim > self.X.max_dim:
            raise ValidationError(f"--max-dim {max_dim} exceeds the bundle's truncation {self.X.max_dim}")
        X = self.X.truncate(max_dim)
        labels = {k: v for k, v in self.raw.labels.items()}
        return Bundle(self.name, self.G, X, self.coeffs, TwistingCocycle(X, self.raw.pi, labels),
                      self.base_vertex, self.paths, self.degrees, self.source)


FIXTURES = Path(__file__).with_name("fixtures")


def fixture_names() -> list[str]:
    """Names of the bundled example problems."""
    return sorted(p.stem for p in FIXTURES.glob("*.json"))


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def load_bundle(path: str | Path) -> Bundle:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), location=f"{path}:{exc.lineno}:{exc.colno}") from None
    except OSError as exc:
        raise ParseError(str(exc), location=str(path)) from None
    return parse_bundle(data, name=Path(path).stem)


def parse_bundle(data: dict, name: str = "bundle") -> Bundle:
    if not isinstance(data, dict):
        raise ParseError("bundle must be an object", location="$")
    name = data.get("name", name)
    G = parse_group(_req(data, "group", "$"), "$.group")
    O = OrbitCategory(G)
    base = parse_simplices(_req(data, "simplices", "$"), "$.simplices")
    action = parse_action(data.get("action", {}), G, base, "$.action")
    try:
        X = GSimplicialSet(base, G, action, O)
    except ValidationError as exc:
        raise ParseError(str(exc), location="$.action") from None
    coeffs_data = _req(data, "coefficients", "$")
    M0 = parse_M0(_req(coeffs_data, "M0", "$.coefficients"), O, "$.coefficients.M0")
    pi = parse_pi(coeffs_data.get("pi", {"constant": "trivial"}), O, "$.coefficients.pi")
    phi = parse_phi(coeffs_data.get("phi", {}), M0, pi, "$.coefficients.phi")
    raw = parse_twisting(data.get("twisting", {}), X, pi, "$.twisting")
    base_vertex = data.get("base_vertex")
    if base_vertex is None:
        fixed = X.fixed_vertices()
        base_vertex = fixed[0] if fixed else None
    paths = None
    if "paths" in data:
        paths = {}
        for x, p in data["paths"].items():
            try:
                paths[x] = tuple((str(e), int(d)) for e, d in p)
            except (TypeError, ValueError):
                raise ParseError("paths are lists of [edge, ±1] pairs", location=f"$.paths.{x}") from None
    degrees = data.get("degrees", list(range(X.max_dim)))
    return Bundle(name, G, X, CoefficientSystem(M0, pi, phi), raw, base_vertex, paths,
                  list(degrees), data)


def _req(d: dict, key: str, loc: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing key {key!r}", location=loc)
    return d[key]


# --- groups ----------------------------------------------------------------------

def parse_group(spec, loc: str) -> FinGroup:
    try:
        if spec == "trivial":
            return FinGroup.trivial()
        if isinstance(spec, dict):
            if "cyclic" in spec:
                return FinGroup.cyclic(int(spec["cyclic"]), spec.get("names"))
            if "symmetric" in spec:
                return FinGroup.symmetric(int(spec["symmetric"]))
            if "table" in spec:
                return FinGroup(spec["table"], spec.get("names"))
    except ValidationError as exc:
        raise ParseError(str(exc), location=loc) from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad group: {exc}", location=loc) from None
    raise ParseError("group must be 'trivial' or have 'cyclic', 'symmetric' or 'table'", location=loc)


def element(G: FinGroup, ref, loc: str) -> int:
    if isinstance(ref, int) and not isinstance(ref, bool):
        if 0 <= ref < G.order:
            return ref
    elif isinstance(ref, str) and ref in G.names:
        return G.names.index(ref)
    raise ParseError(f"unknown group element {ref!r}", location=loc)


def subgroup(G: FinGroup, O: OrbitCategory, refs, loc: str) -> Subgroup:
    if refs == "all":
        return frozenset(G.elements())
    if not isinstance(refs, list):
        raise ParseError("subgroups are lists of elements", location=loc)
    elems = frozenset(element(G, r, loc) for r in refs)
    if not G.is_subgroup(elems):
        raise ParseError(f"{sorted(refs, key=str)} is not a subgroup", location=loc)
    return O.subgroup(elems)


# --- simplicial data ----------------------------------------------------------------

def parse_face(ref, loc: str) -> FormalSimplex:
    if isinstance(ref, str):
        return FormalSimplex(ref)
    if isinstance(ref, dict) and "base" in ref:
        word = tuple(int(j) for j in ref.get("word", ()))
        if any(a <= b for a, b in zip(word, word[1:])):
            raise ParseError("degeneracy words must be strictly decreasing", location=loc)
        return FormalSimplex(str(ref["base"]), word)
    raise ParseError("a face is a simplex id or {base, word}", location=loc)


def parse_simplices(spec: dict, loc: str) -> SimplicialSet:
    if not isinstance(spec, dict) or "vertices" not in spec:
        raise ParseError("simplices need 'vertices'", location=loc)
    levels = [[str(v) for v in spec["vertices"]]]
    faces_raw: dict = {}
    top = max([int(k) for k in spec if k.isdigit()] + [0])
    for q in range(1, top + 1):
        level = spec.get(str(q), {})
        if not isinstance(level, dict):
            raise ParseError("each dimension maps simplex ids to face lists", location=f"{loc}.{q}")
        levels.append(list(level))
        for x, fs in level.items():
            if not isinstance(fs, list) or len(fs) != q + 1:
                raise ParseError(f"a {q}-simplex needs {q + 1} faces", location=f"{loc}.{q}.{x}")
            faces_raw[x] = [parse_face(f, f"{loc}.{q}.{x}[{i}]") for i, f in enumerate(fs)]
    max_dim = int(spec.get("max_dim", top))
    if max_dim < top:
        levels = levels[:max_dim + 1]
    dim_of = {x: q for q, lvl in enumerate(levels) for x in lvl}
    faces = {}
    for x, fs in faces_raw.items():
        if x not in dim_of:
            continue
        q = dim_of[x]
        fixed = []
        for i, f in enumerate(fs):
            if f.base not in dim_of:
                raise ParseError(f"unknown simplex {f.base!r}", location=f"{loc}.{q}.{x}[{i}]")
            d = dim_of[f.base] + len(f.word)
            if d != q - 1 or (f.word and f.word[0] > dim_of[f.base] + len(f.word) - 1):
                raise ParseError(f"face {i} of {x!r} has the wrong dimension", location=f"{loc}.{q}.{x}[{i}]")
            fixed.append(FormalSimplex(f.base, f.word, d))
        faces[x] = tuple(fixed)
    try:
        return SimplicialSet(levels, faces, max_dim, name=spec.get("name", ""))
    except ValidationError as exc:
        raise ParseError(str(exc), location=loc) from None


def parse_action(spec: dict, G: FinGroup, X: SimplicialSet, loc: str) -> dict:
    """Per-element permutations; unlisted simplices are fixed, unlisted elements derived by products."""
    ids = list(X.dim_of)
    given = {}
    for ref, perm in spec.items():
        g = element(G, ref if not ref.isdigit() or ref in G.names else int(ref), f"{loc}.{ref}")
        if not isinstance(perm, dict):
            raise ParseError("an action is a map from simplex ids to simplex ids", location=f"{loc}.{ref}")
        for a, b in perm.items():
            if a not in X.dim_of or b not in X.dim_of:
                raise ParseError(f"unknown simplex in {a!r} -> {b!r}", location=f"{loc}.{ref}")
        given[g] = {x: perm.get(x, x) for x in ids}
    given.setdefault(G.identity, {x: x for x in ids})
    return _close(G, given)


def _close(G: FinGroup, given: dict) -> dict:
    """Extend a partial action (e.g. on generators) multiplicatively."""
    out = dict(given)
    queue = deque(out)
    while queue:
        a = queue.popleft()
        for b in list(given):
            c = G.mul(a, b)
            if c not in out:
                pa, pb = out[a], out[b]
                out[c] = {x: pa[pb[x]] for x in pb}
                queue.append(c)
    return out


# --- coefficients ------------------------------------------------------------------

def parse_abgroup(spec, loc: str) -> FGAbelianGroup:
    if isinstance(spec, dict):
        if "relations" in spec:
            return FGAbelianGroup(int(spec.get("generators", 0)), spec["relations"])
        return FGAbelianGroup.from_invariants(int(spec.get("rank", 0)), [int(t) for t in spec.get("torsion", [])])
    if spec == "Z":
        return FGAbelianGroup.free(1)
    if spec == "0":
        return FGAbelianGroup.free(0)
    if isinstance(spec, str) and spec.startswith("Z/"):
        return FGAbelianGroup.cyclic(int(spec[2:]))
    raise ParseError("abelian groups are 'Z', 'Z/n', '0', {rank, torsion} or {generators, relations}", location=loc)


def _matrix(spec, rows: int, cols: int, loc: str) -> IntMatrix:
    try:
        if rows == 0 or cols == 0:
            return IntMatrix.zeros(rows, cols)
        m = IntMatrix(spec, rows, cols)
    except Exception as exc:
        raise ParseError(f"bad matrix: {exc}", location=loc) from None
    return m


def _maps_for(entries: list, O: OrbitCategory, G: FinGroup, loc: str) -> dict:
    """Map (source, target) entries, optionally restricted to cosets containing listed elements."""
    out = {}
    for k, e in enumerate(entries):
        eloc = f"{loc}[{k}]"
        H = subgroup(G, O, _req(e, "source", eloc), eloc)
        K = subgroup(G, O, _req(e, "target", eloc), eloc)
        gs = e.get("g")
        if gs is None:
            targets = O.hom(H, K)
        else:
            gs = gs if isinstance(gs, list) else [gs]
            elems = {element(G, g, eloc) for g in gs}
            targets = [m for m in O.hom(H, K) if elems & m.coset]
            if not targets:
                raise ParseError("no morphism of the orbit category matches", location=eloc)
        for m in targets:
            if m in out and out[m][0] != e:
                raise ParseError("conflicting data for one morphism", location=eloc)
            out[m] = (e, eloc)
    return out


def parse_M0(spec: dict, O: OrbitCategory, loc: str) -> OGAbelianGroup:
    G = O.G
    if "constant" in spec:
        return OGAbelianGroup.constant(O, parse_abgroup(spec["constant"], f"{loc}.constant"))
    groups = {}
    for k, e in enumerate(_req(spec, "groups", loc)):
        H = subgroup(G, O, _req(e, "subgroup", f"{loc}.groups[{k}]"), f"{loc}.groups[{k}]")
        groups[H] = parse_abgroup(_req(e, "group", f"{loc}.groups[{k}]"), f"{loc}.groups[{k}]")
    default = spec.get("default", "identity")
    for H in O.objects:
        if H not in groups:
            raise ParseError(f"no M0 given for subgroup {[G.names[h] for h in sorted(H)]}", location=loc)
    given = _maps_for(spec.get("maps", []), O, G, f"{loc}.maps")
    homs = {}
    for m in O.morphisms():
        A, B = groups[m.target], groups[m.source]
        if m in given:
            e, eloc = given[m]
            homs[m] = AbHom(A, B, _matrix(_req(e, "matrix", eloc), B.ngens, A.ngens, eloc))
        elif default == "identity" and A.ngens == B.ngens:
            homs[m] = AbHom(A, B, IntMatrix.identity(A.ngens))
        elif default == "zero" or A.ngens == 0 or B.ngens == 0:
            homs[m] = AbHom.zero(A, B)
        else:
            raise ParseError(f"no M0 map given for {sorted(m.source)} -> {sorted(m.target)} via {G.names[m.rep]}",
                             location=loc)
    return OGAbelianGroup(O, groups, homs)


def parse_pi(spec: dict, O: OrbitCategory, loc: str) -> OGGroup:
    G = O.G
    if "constant" in spec:
        return OGGroup.constant(O, parse_group(spec["constant"], f"{loc}.constant"))
    groups = {}
    for k, e in enumerate(_req(spec, "groups", loc)):
        eloc = f"{loc}.groups[{k}]"
        groups[subgroup(G, O, _req(e, "subgroup", eloc), eloc)] = parse_group(_req(e, "group", eloc), eloc)
    for H in O.objects:
        if H not in groups:
            raise ParseError(f"no pi given for subgroup {[G.names[h] for h in sorted(H)]}", location=loc)
    given = _maps_for(spec.get("maps", []), O, G, f"{loc}.maps")
    homs = {}
    for m in O.morphisms():
        P, Q = groups[m.target], groups[m.source]
        if m in given:
            e, eloc = given[m]
            mp = _req(e, "map", eloc)
            homs[m] = [element(Q, mp.get(P.names[a], Q.names[Q.identity]), eloc) for a in P.elements()]
        elif P.order == Q.order and P.names == Q.names:
            homs[m] = list(P.elements())
        elif Q.order == 1:
            homs[m] = [Q.identity] * P.order
        else:
            raise ParseError(f"no pi map given for {sorted(m.source)} -> {sorted(m.target)}", location=loc)
    return OGGroup(O, groups, homs)


def parse_phi(spec, M0: OGAbelianGroup, pi: OGGroup, loc: str) -> OGAction:
    """Matrices for some elements of each pi(G/H); the rest follow multiplicatively."""
    O, G = M0.O, M0.O.G
    per = {}
    if isinstance(spec, dict) and "constant" in spec:
        per = {H: spec["constant"] for H in O.objects}
    else:
        for k, e in enumerate(spec.get("groups", []) if isinstance(spec, dict) else []):
            eloc = f"{loc}.groups[{k}]"
            per[subgroup(G, O, _req(e, "subgroup", eloc), eloc)] = _req(e, "matrices", eloc)
    mats = {}
    for H in O.objects:
        A, P = M0[H], pi[H]
        given = {P.identity: AbHom.identity(A)}
        for ref, mat in per.get(H, {}).items():
            given[element(P, ref, loc)] = AbHom(A, A, _matrix(mat, A.ngens, A.ngens, f"{loc}.{ref}"))
        closed = dict(given)
        queue = deque(closed)
        while queue:
            a = queue.popleft()
            for b in list(given):
                c = P.mul(a, b)
                if c not in closed:
                    closed[c] = closed[a] @ given[b]
                    queue.append(c)
        if len(closed) != P.order:
            raise ParseError(f"phi matrices at {sorted(H)} do not generate pi", location=loc)
        mats[H] = [closed[a] for a in P.elements()]
    return OGAction(M0, pi, mats)


def parse_twisting(spec: dict, X: GSimplicialSet, pi: OGGroup, loc: str) -> TwistingCocycle:
    """``uniform`` labels every level alike; ``groups`` lists labels per subgroup.

    Unlabelled edges get the identity.
    """
    O, G = X.O, X.G
    labels = {}
    per = {}
    if "uniform" in spec:
        per = {H: spec["uniform"] for H in O.objects}
    for k, e in enumerate(spec.get("groups", [])):
        eloc = f"{loc}.groups[{k}]"
        per[subgroup(G, O, _req(e, "subgroup", eloc), eloc)] = _req(e, "labels", eloc)
    for H in O.objects:
        XH = X.fixed_points(H)
        P = pi[H]
        given = per.get(H, {})
        for e in given:
            if e not in X.base.dim_of:
                raise ParseError(f"unknown edge {e!r}", location=loc)
        if XH.max_dim >= 1:
            for e in XH.nondeg[1]:
                labels[H, e] = element(P, given[e], f"{loc}.{e}") if e in given else P.identity
    return TwistingCocycle(X, pi, labels)


# --- validation ------------------------------------------------------------------------

def validate_bundle(b: Bundle) -> dict:
    """Run every structural validator; each entry is (passed, first witness)."""
    out = {}

    def record(name, problems):
        problems = list(problems)
        out[name] = {"pass": not problems, "witness": _witness(problems[0]) if problems else None,
                     "count": len(problems)}

    record("simplicial_identities", b.X.base.validate())
    record("group_action", b.X.validate() if not out["simplicial_identities"]["count"] else ["skipped"])
    record("M0_functor", b.coeffs.M0.validate())
    record("pi_functor", b.coeffs.pi.validate())
    record("phi_action", b.coeffs.phi.validate() if out["M0_functor"]["pass"] and out["pi_functor"]["pass"]
           else ["skipped"])
    structural = all(v["pass"] for v in out.values())
    if structural:
        record("twisting", validate_twisting(b.X, b.coeffs.pi, b.raw).violations)
    hyp = b.hypotheses()
    out["hypotheses"] = {"pass": not hyp, "witness": hyp[0] if hyp else None, "count": len(hyp)}
    if structural and not hyp and out["twisting"]["pass"]:
        try:
            xi = b.path_system()
            record("path_system", xi.validate())
            if out["path_system"]["pass"]:
                local = LocalSystem(b.coeffs, b.raw, xi)
                record("based_twisting", validate_twisting(b.X, b.coeffs.pi, local.based_kappa).violations)
        except PathMissing as exc:
            record("path_system", [str(exc)])
    return out


def _witness(p):
    if isinstance(p, tuple):
        ident, where = p
        return {"identity": ident, "at": _jsonable(where)}
    return _jsonable(p)


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)
