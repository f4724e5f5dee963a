"""Combinatorial models attached to a right-angled Artin group A_L.

Three pieces of structure for a defining complex L:

  * the poset complex K: geometric realization of the poset of simplices of L
    with the empty simplex adjoined, i.e. the cone on the barycentric
    subdivision; each simplex of K is a chain and carries the torus dimension
    of its stratum in the toral model (the number of vertices of the smallest
    simplex in the chain, zero for chains through the empty simplex);

  * the Euler characteristic of the toral model, computed stratum by stratum
    (only zero-dimensional fibers contribute since chi of a positive torus is
    zero), which must equal 1 - chi(L);

  * the cube complex with one (k+1)-cube per k-simplex of L (one vertex for
    the empty simplex) and its finite covers classified by homomorphisms to
    finite abelian groups.  The base complex has zero boundary maps; in a
    cover the two parallel facets of a cube in direction v sit at deck
    elements q and q + phi(v) and enter with opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import CoverSpecError, MalformedComplexError, NotFlagError
from .homology import ChainComplexZ
from .linalg import SparseIntMatrix
from .simplicial import Simplex, SimplicialComplex, barycentric_subdivision, cone, is_flag

EMPTY: Simplex = ()


# -- poset complex ------------------------------------------------------------


@dataclass(frozen=True)
class PosetComplex:
    """Cone on the barycentric subdivision, with simplex labels on vertices."""

    complex: SimplicialComplex
    labels: Tuple[Simplex, ...]
    apex: int

    def min_label(self, tau: Sequence[int]) -> Simplex:
        """Smallest simplex (by inclusion) among the labels of tau's vertices."""
        t = tuple(sorted(tau))
        if not t or not self.complex.has_face(t):
            raise MalformedComplexError(f"{t} is not a simplex of the poset complex")
        return min((self.labels[v] for v in t), key=len)


def poset_complex(L: SimplicialComplex) -> PosetComplex:
    """Realization of the simplex poset of L with the empty simplex adjoined.

    Vertices are the simplices of L in canonical order followed by the apex
    (the empty simplex); simplices are the chains.
    """
    sd = barycentric_subdivision(L)
    K = cone(sd.complex)
    labels = sd.vertex_simplex + (EMPTY,)
    return PosetComplex(K, labels, apex=len(labels) - 1)


def fiber_dimension(K: PosetComplex, tau: Sequence[int]) -> int:
    """Dimension of the torus fiber over the open stratum of tau."""
    return len(K.min_label(tau))


def toral_euler_characteristic(L: SimplicialComplex) -> int:
    """Euler characteristic of the toral model, stratum by stratum.

    Strata with positive fiber dimension contribute zero, so the sum runs
    over the chains through the empty simplex.  Always equals 1 - chi(L).
    """
    K = poset_complex(L)
    total = 0
    for k in range(K.complex.dim + 1):
        for f in K.complex.faces(k):
            if K.apex in f:
                total += (-1) ** k
    return total


# -- finite quotient data -------------------------------------------------------


@dataclass(frozen=True)
class FiniteQuotientSpec:
    """Residue assignment generator -> Z_{k_1} x ... x Z_{k_r}.

    moduli is the modulus vector; images[v] is the residue vector of the
    generator at vertex v.  The deck group of the associated cover is the
    subgroup generated by the images, not the full product.
    """

    moduli: Tuple[int, ...]
    images: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if any(k < 1 for k in self.moduli):
            raise CoverSpecError(f"moduli must be positive, got {self.moduli}")
        norm = []
        for img in self.images:
            if len(img) != len(self.moduli):
                raise CoverSpecError(
                    f"residue vector {img} does not match modulus vector {self.moduli}")
            norm.append(tuple(x % k for x, k in zip(img, self.moduli)))
        object.__setattr__(self, "images", tuple(norm))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        return tuple((x + y) % k for x, y, k in zip(a, b, self.moduli))

    def deck_group(self) -> Tuple[Tuple[int, ...], ...]:
        """Subgroup generated by the generator images, sorted tuples."""
        zero = tuple(0 for _ in self.moduli)
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for q in frontier:
                for img in self.images:
                    s = self.add(q, img)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen))

    @property
    def index(self) -> int:
        return len(self.deck_group())

    def label(self) -> str:
        return "x".join(str(k) for k in self.moduli) if self.moduli else "1"


def standard_spec(L: SimplicialComplex, k: int) -> FiniteQuotientSpec:
    """Each generator to its own coordinate of (Z/k)^n."""
    if k < 1:
        raise CoverSpecError(f"modulus must be positive, got {k}")
    n = L.n_vertices
    images = tuple(tuple(1 if j == v else 0 for j in range(n)) for v in range(n))
    return FiniteQuotientSpec(moduli=(k,) * n, images=images)


def trivial_spec(L: SimplicialComplex) -> FiniteQuotientSpec:
    return FiniteQuotientSpec(moduli=(), images=((),) * L.n_vertices)


# -- cube complexes -------------------------------------------------------------


class CubeComplex:
    """Cover of the cube complex of L determined by a finite abelian quotient.

    Cells in dimension i are pairs (deck element, (i-1)-simplex of L), with the
    empty simplex giving the vertices; ordering is deck-element-major, then the
    canonical base-cell order.
    """

    __slots__ = ("base", "spec", "deck", "_deck_index", "_cc")

    def __init__(self, base: SimplicialComplex, spec: FiniteQuotientSpec):
        flag, witness = is_flag(base)
        if not flag:
            raise NotFlagError(
                f"cube complex model needs a flag base; minimal non-face {witness}",
                witness=witness)
        if len(spec.images) != base.n_vertices:
            raise CoverSpecError(
                f"spec assigns {len(spec.images)} generators, base has {base.n_vertices}")
        self.base = base
        self.spec = spec
        self.deck = spec.deck_group()
        self._deck_index = {q: i for i, q in enumerate(self.deck)}
        self._cc: Optional[ChainComplexZ] = None

    @property
    def index(self) -> int:
        return len(self.deck)

    @property
    def dim(self) -> int:
        return self.base.dim + 1

    def base_cells(self, i: int) -> Tuple[Simplex, ...]:
        """(i-1)-simplices of L indexing the i-cubes; dimension 0 is (EMPTY,)."""
        return (EMPTY,) if i == 0 else self.base.faces(i - 1)

    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(self.index * len(self.base_cells(i)) for i in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.cell_counts()))

    def cells(self, i: int):
        """Iterate (deck element, base simplex) for dimension i, in order."""
        for q in self.deck:
            for s in self.base_cells(i):
                yield (q, s)

    def cell_index(self, i: int, q: Tuple[int, ...], s: Simplex) -> int:
        base = self.base_cells(i)
        pos = 0 if i == 0 else self.base.face_index(i - 1)[s]
        return self._deck_index[q] * len(base) + pos

    def chain_complex(self) -> ChainComplexZ:
        """Cubical boundary maps: direction j of the cube over (v_0 < ... < v_k)
        contributes (-1)^j times (translated facet - untranslated facet)."""
        if self._cc is not None:
            return self._cc
        dims = self.cell_counts()
        boundaries: Dict[int, SparseIntMatrix] = {}
        for i in range(1, self.dim + 1):
            entries: Dict[Tuple[int, int], int] = {}
            ncols_base = len(self.base_cells(i))
            for qi, q in enumerate(self.deck):
                for si, s in enumerate(self.base_cells(i)):
                    col = qi * ncols_base + si
                    for j, v in enumerate(s):
                        facet = s[:j] + s[j + 1:]
                        sign = (-1) ** j
                        shifted = self.spec.add(q, self.spec.images[v])
                        for row, val in (
                            (self.cell_index(i - 1, shifted, facet), sign),
                            (self.cell_index(i - 1, q, facet), -sign),
                        ):
                            entries[(row, col)] = entries.get((row, col), 0) + val
            entries = {k: v for k, v in entries.items() if v}
            boundaries[i] = SparseIntMatrix(dims[i - 1], dims[i], entries)
        labels = [tuple(self.cells(i)) for i in range(self.dim + 1)]
        self._cc = ChainComplexZ(dims, boundaries, labels=labels)
        return self._cc

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.name or None,
            "base_f_vector": list(self.base.f_vector()),
            "moduli": list(self.spec.moduli),
            "index": self.index,
            "cells": {str(i): c for i, c in enumerate(self.cell_counts())},
            "euler_characteristic": self.euler_characteristic(),
        }

    def __repr__(self):
        return f"<CubeComplex base={self.base!r} index={self.index}>"


def salvetti_complex(L: SimplicialComplex) -> CubeComplex:
    """The compact model itself: trivial deck group, zero boundary maps."""
    return CubeComplex(L, trivial_spec(L))


def finite_cover(L: SimplicialComplex, spec: FiniteQuotientSpec) -> CubeComplex:
    """Cover of the cube complex of L for the quotient defined by spec."""
    return CubeComplex(L, spec)
