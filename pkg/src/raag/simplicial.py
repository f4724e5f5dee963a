"""Finite abstract simplicial complexes and the constructions used downstream.

Simplices are sorted tuples of dense vertex ids 0..n-1.  A complex is stored by
its facets (maximal faces); faces are enumerated lazily per dimension and the
canonical order everywhere is dimension-major, lexicographic within a dimension.
All values are immutable and all constructions are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import MalformedComplexError, NotFlagError, QuotientDegenerateError

Simplex = Tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Sorted tuple of distinct vertex ids; rejects duplicates and non-ints."""
    vs = tuple(sorted(vertices))
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedComplexError(f"vertex ids must be nonnegative integers, got {v!r}")
    if len(set(vs)) != len(vs):
        raise MalformedComplexError(f"duplicate vertices within a facet: {vs}")
    return vs


class SimplicialComplex:
    """Immutable complex determined by its facet set.

    Use from_facets() rather than the constructor; it canonicalizes input and
    absorbs non-maximal faces.
    """

    __slots__ = ("n_vertices", "facets", "name", "_faces", "_face_sets", "_face_index")

    def __init__(self, n_vertices: int, facets: Tuple[Simplex, ...], name: str = ""):
        self.n_vertices = n_vertices
        self.facets = facets
        self.name = name
        self._faces: Dict[int, Tuple[Simplex, ...]] = {}
        self._face_sets: Dict[int, frozenset] = {}
        self._face_index: Dict[int, Dict[Simplex, int]] = {}

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty complex."""
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k: int) -> Tuple[Simplex, ...]:
        """All k-faces in canonical (lexicographic) order."""
        if k < 0 or k > self.dim:
            return ()
        if k not in self._faces:
            seen = set()
            for f in self.facets:
                if len(f) > k:
                    seen.update(itertools.combinations(f, k + 1))
            self._faces[k] = tuple(sorted(seen))
        return self._faces[k]

    def face_set(self, k: int) -> frozenset:
        if k not in self._face_sets:
            self._face_sets[k] = frozenset(self.faces(k))
        return self._face_sets[k]

    def face_index(self, k: int) -> Dict[Simplex, int]:
        """Face -> position in the canonical order of dimension k."""
        if k not in self._face_index:
            self._face_index[k] = {f: i for i, f in enumerate(self.faces(k))}
        return self._face_index[k]

    def all_faces(self) -> List[Simplex]:
        """Every nonempty face, dimension-major then lexicographic."""
        out: List[Simplex] = []
        for k in range(self.dim + 1):
            out.extend(self.faces(k))
        return out

    def has_face(self, s: Sequence[int]) -> bool:
        t = tuple(sorted(s))
        return t in self.face_set(len(t) - 1)

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector()))

    def edges(self) -> Tuple[Simplex, ...]:
        return self.faces(1)

    def skeleton_graph(self) -> "nx.Graph":
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        g.add_edges_from(self.faces(1))
        return g

    def is_empty(self) -> bool:
        return self.n_vertices == 0

    # -- equality / display --------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.n_vertices == other.n_vertices
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.n_vertices, self.facets))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<SimplicialComplex{label} n={self.n_vertices} dim={self.dim} facets={len(self.facets)}>"


def from_facets(facets: Iterable[Iterable[int]], name: str = "",
                n_vertices: Optional[int] = None) -> SimplicialComplex:
    """Build a complex from a facet list.

    Vertex ids must be dense 0..n-1 (every id below the maximum occurs in some
    facet).  Non-maximal entries are absorbed, duplicates merged.  An empty
    facet list gives the empty complex.
    """
    simplices = sorted({as_simplex(f) for f in facets}, key=lambda s: (len(s), s))
    if simplices and len(simplices[0]) == 0:
        raise MalformedComplexError("the empty simplex cannot be listed as a facet")
    used = set()
    for s in simplices:
        used.update(s)
    n = (max(used) + 1) if used else 0
    if used and used != set(range(n)):
        missing = sorted(set(range(n)) - used)
        raise MalformedComplexError(f"vertex ids must be dense 0..{n - 1}; missing {missing}")
    if n_vertices is not None and n_vertices != n:
        raise MalformedComplexError(f"declared vertex count {n_vertices} != inferred {n}")
    # keep only maximal simplices; quadratic is fine at fixture scale
    maximal: List[Simplex] = []
    for s in sorted(simplices, key=len, reverse=True):
        ss = set(s)
        if not any(ss <= set(m) for m in maximal):
            maximal.append(s)
    return SimplicialComplex(n, tuple(sorted(maximal, key=lambda s: (len(s), s))), name=name)


def complex_to_json_dict(x: SimplicialComplex) -> dict:
    """Canonical facet-list form: {"name": ..., "vertices": n, "facets": [...]}."""
    out = {"vertices": x.n_vertices, "facets": [list(f) for f in x.facets]}
    if x.name:
        out["name"] = x.name
    return out


def complex_from_json_dict(data: dict) -> SimplicialComplex:
    """Inverse of complex_to_json_dict, revalidating through from_facets."""
    if not isinstance(data, dict) or "facets" not in data:
        raise MalformedComplexError("complex JSON must be an object with a facets list")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise MalformedComplexError("complex name must be a string")
    facets = data["facets"]
    if not isinstance(facets, list) or any(not isinstance(f, list) for f in facets):
        raise MalformedComplexError("facets must be a list of vertex lists")
    for f in facets:
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool):
                raise MalformedComplexError(f"vertex ids must be integers, got {v!r}")
    n_vertices = data.get("vertices")
    if n_vertices is not None and not isinstance(n_vertices, int):
        raise MalformedComplexError("vertex count must be an integer")
    return from_facets(facets, name=name, n_vertices=n_vertices)


# -- flag structure ----------------------------------------------------------


def _maximal_cliques(x: SimplicialComplex) -> List[Simplex]:
    g = x.skeleton_graph()
    return [tuple(sorted(c)) for c in nx.find_cliques(g)]


def is_flag(x: SimplicialComplex) -> Tuple[bool, Optional[Simplex]]:
    """Whether every clique of the 1-skeleton spans a face.

    Returns (True, None) or (False, w) where w is a minimal non-face with
    pairwise adjacent vertices (an "empty simplex"), canonical smallest by
    (size, lex).
    """
    witnesses = []
    for clique in _maximal_cliques(x):
        if x.has_face(clique):
            continue
        witnesses.append(_shrink_to_minimal_nonface(x, clique))
    if not witnesses:
        return True, None
    return False, min(witnesses, key=lambda s: (len(s), s))

def _shrink_to_minimal_nonface(x: SimplicialComplex, clique: Simplex) -> Simplex:
    # subsets of a skeleton clique are pairwise adjacent, so the first
    # (size, lex) subset that is a non-face with all proper subsets faces
    # is a minimal non-face
    for size in range(3, len(clique) + 1):
        for sub in itertools.combinations(clique, size):
            if x.has_face(sub):
                continue
            if all(x.has_face(b) for b in itertools.combinations(sub, size - 1)):
                return sub
    raise AssertionError("non-face clique without minimal non-face")


def flag_completion(x: SimplicialComplex) -> SimplicialComplex:
    """Clique complex of a graph (input must be at most 1-dimensional)."""
    if x.dim > 1:
        raise MalformedComplexError("flag_completion expects a graph (dimension <= 1)")
    if x.is_empty():
        return x
    return from_facets(_maximal_cliques(x), name=_derived_name(x, "flag"))


def complement_components(x: SimplicialComplex) -> List[Tuple[int, ...]]:
    """Vertex sets of the connected components of the complement graph."""
    n = x.n_vertices
    if n == 0:
        return []
    edge_set = x.face_set(1)
    comp = nx.Graph()
    comp.add_nodes_from(range(n))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edge_set:
            comp.add_edge(u, v)
    return [tuple(sorted(p)) for p in sorted(nx.connected_components(comp), key=min)]


def join_factors(x: SimplicialComplex) -> List[SimplicialComplex]:
    """Decompose a flag complex as a join of induced factors.

    Factors are the connected components of the complement of the 1-skeleton;
    for a flag complex the complex equals the join of the induced subcomplexes
    (cliques of a complete multipartite-style graph split across parts).
    Returns [x] when indecomposable.  Callers must ensure x is flag.
    """
    parts = complement_components(x)
    if len(parts) <= 1:
        return [x]
    return [induced_subcomplex(x, p)[0] for p in parts]


def induced_subcomplex(x: SimplicialComplex, vertices: Sequence[int]) -> Tuple[SimplicialComplex, Tuple[int, ...]]:
    """Subcomplex induced on a vertex subset, relabeled densely.

    Returns (complex, table) with table[new_id] = old_id.
    """
    keep = sorted(set(vertices))
    old_to_new = {v: i for i, v in enumerate(keep)}
    keep_set = set(keep)
    facets = set()
    for f in x.facets:
        inter = tuple(old_to_new[v] for v in f if v in keep_set)
        if inter:
            facets.add(inter)
    sub = from_facets(facets)
    return sub, tuple(keep)


# -- constructions -----------------------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    """Barycentric subdivision together with its relabeling table.

    vertex_simplex[i] is the simplex of the source complex sitting at the new
    vertex i; the table follows the canonical (dimension-major) order, so the
    first f_0 entries are the original vertices as singletons.
    """

    complex: SimplicialComplex
    vertex_simplex: Tuple[Simplex, ...]

    def vertex_of(self, s: Sequence[int]) -> int:
        return self.vertex_simplex.index(tuple(sorted(s)))


def barycentric_subdivision(x: SimplicialComplex) -> Subdivision:
    """Flags of the face poset; facets are maximal chains inside facets."""
    cells = x.all_faces()
    index = {s: i for i, s in enumerate(cells)}
    facets = []
    for top in x.facets:
        for chain in _full_chains(top):
            facets.append(tuple(sorted(index[s] for s in chain)))
    sd = from_facets(facets, name=_derived_name(x, "sd"))
    if x.is_empty():
        sd = SimplicialComplex(0, (), name=_derived_name(x, "sd"))
    return Subdivision(sd, tuple(cells))

def _full_chains(top: Simplex) -> Iterable[List[Simplex]]:
    # maximal chains s_0 < s_1 < ... < top with |s_i| = i+1: orderings of top
    for perm in itertools.permutations(top):
        yield [tuple(sorted(perm[: i + 1])) for i in range(len(perm))]


def cone(x: SimplicialComplex) -> SimplicialComplex:
    """Join with one fresh apex; the apex is the last vertex id.

    The cone over the empty complex is a single point.
    """
    apex = x.n_vertices
    if x.is_empty():
        return from_facets([[0]], name=_derived_name(x, "cone"))
    facets = [f + (apex,) for f in x.facets]
    return from_facets(facets, name=_derived_name(x, "cone"))


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; b's vertices are shifted up by a.n_vertices."""
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    off = a.n_vertices
    facets = [fa + tuple(v + off for v in fb) for fa in a.facets for fb in b.facets]
    name = f"({a.name or '?'})*({b.name or '?'})" if (a.name or b.name) else ""
    return from_facets(facets, name=name)


def simplicial_quotient(x: SimplicialComplex, vertex_map: Sequence[int]) -> SimplicialComplex:
    """Image complex under a vertex map given as a table over 0..n-1.

    The map must be injective on every simplex (checked on facets) and
    surjective onto a dense target range; violating simplices are reported so
    the caller can subdivide first.
    """
    if len(vertex_map) != x.n_vertices:
        raise MalformedComplexError(
            f"vertex map length {len(vertex_map)} != vertex count {x.n_vertices}")
    for f in x.facets:
        images = [vertex_map[v] for v in f]
        if len(set(images)) != len(images):
            raise QuotientDegenerateError(
                f"simplex {f} degenerates under the vertex map; subdivide first")
    targets = set(vertex_map)
    if x.n_vertices and targets != set(range(max(targets) + 1)):
        raise MalformedComplexError("vertex map image must be dense 0..m-1")
    facets = [tuple(sorted(vertex_map[v] for v in f)) for f in x.facets]
    return from_facets(facets, name=_derived_name(x, "quot"))


def _derived_name(x: SimplicialComplex, op: str) -> str:
    return f"{op}({x.name})" if x.name else ""
