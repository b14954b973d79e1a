"""Nerves of the leaf covers: chessboard complexes and star covers.

The cover of the (n+1)-particle complex by the subcomplexes "particle i is
outermost on edge j" has a nerve that is exactly a chessboard complex:
vertices are the pairs (i, j), and a set of pairs spans a simplex when its
rows and its columns are pairwise distinct (non-attacking rooks on an
(n+1) x k board). This module builds those complexes, the closed-star cover
of a nerve along a fixed column, and Cech (pseudo-nerve) complexes of
arbitrary covers by full subcomplexes.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial

from .homology import (
    HomologyResult,
    SimplicialComplex,
    SparseIntMatrix,
    homology_of_chain,
)


@dataclass(frozen=True)
class NerveComplex:
    """Chessboard complex on `rows` particles and `cols` edges.

    Vertex ids are row-major: pair (i, j) gets id (i-1)*cols + j, which
    fixes the orientation of every simplex.
    """

    rows: int
    cols: int
    complex: SimplicialComplex

    def vertex_id(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"({i}, {j}) outside {self.rows} x {self.cols}")
        return (i - 1) * self.cols + j

    def pair_of(self, vid: int) -> tuple[int, int]:
        i, j = divmod(vid - 1, self.cols)
        return i + 1, j + 1

    def expected_count(self, p: int) -> int:
        """Closed form for the number of p-simplices."""
        return comb(self.rows, p + 1) * comb(self.cols, p + 1) * factorial(p + 1)

    def homology(self, q: int, coeff: int | None = None) -> HomologyResult:
        return self.complex.homology(q, coeff)


def nerve(rows: int, cols: int) -> NerveComplex:
    """Build the chessboard complex of non-attacking rook placements."""
    if rows < 1 or cols < 1:
        raise ValueError("need at least one row and one column")
    maxdim = min(rows, cols) - 1
    simplices: dict[int, list[tuple[int, ...]]] = {}
    for p in range(maxdim + 1):
        cells = []
        for rr in combinations(range(1, rows + 1), p + 1):
            for cc in combinations(range(1, cols + 1), p + 1):
                for perm in permutations(cc):
                    cells.append(tuple(sorted(
                        (i - 1) * cols + j for i, j in zip(rr, perm))))
        simplices[p] = cells
    return NerveComplex(rows, cols, SimplicialComplex(simplices))


def transpose(nv: NerveComplex) -> NerveComplex:
    """Swap the roles of particles and edges: (i, j) goes to (j, i)."""
    return nerve(nv.cols, nv.rows)


def transpose_vertex_map(nv: NerveComplex) -> dict[int, int]:
    """The simplicial isomorphism onto the transposed board, vertexwise."""
    flipped = nerve(nv.cols, nv.rows)
    return {
        nv.vertex_id(i, j): flipped.vertex_id(j, i)
        for i in range(1, nv.rows + 1)
        for j in range(1, nv.cols + 1)
    }


# ---------------------------------------------------------------------------
# star covers


@dataclass(frozen=True)
class StarCoverElement:
    """Closed star of the vertex (particle, fixed_edge) in a nerve complex."""

    fixed_edge: int
    particle: int
    complex: SimplicialComplex
    vertex_set: frozenset[int]


def star_vertex_set(nv: NerveComplex, particle: int, fixed_edge: int) -> frozenset[int]:
    # chessboard complexes are flag, so the closed star is the full
    # subcomplex on the vertex itself plus everything compatible with it
    vs = {nv.vertex_id(particle, fixed_edge)}
    for i in range(1, nv.rows + 1):
        for j in range(1, nv.cols + 1):
            if i != particle and j != fixed_edge:
                vs.add(nv.vertex_id(i, j))
    return frozenset(vs)


def star_cover(nv: NerveComplex, fixed_edge: int) -> list[StarCoverElement]:
    """One closed star per particle, all anchored on the same fixed edge."""
    if not (1 <= fixed_edge <= nv.cols):
        raise ValueError(f"edge {fixed_edge} out of range 1..{nv.cols}")
    out = []
    for i in range(1, nv.rows + 1):
        vs = star_vertex_set(nv, i, fixed_edge)
        out.append(StarCoverElement(fixed_edge, i, nv.complex.full_subcomplex(set(vs)), vs))
    return out


def star_intersection(stars: list[StarCoverElement], nv: NerveComplex) -> SimplicialComplex:
    """Intersection of two or more stars along a common fixed edge.

    This is the full subcomplex on the pairs avoiding the chosen particles
    and the fixed edge, a smaller chessboard complex in disguise.
    """
    if len(stars) < 2:
        raise ValueError("need at least two stars")
    j = stars[0].fixed_edge
    rows = {s.particle for s in stars}
    if any(s.fixed_edge != j for s in stars):
        raise ValueError("stars must share the fixed edge")
    if len(rows) != len(stars):
        raise ValueError("stars must have distinct particles")
    common = set.intersection(*[set(s.vertex_set) for s in stars])
    return nv.complex.full_subcomplex(common)


# ---------------------------------------------------------------------------
# Cech complexes of covers (pseudo-nerves)


@dataclass
class CechComplex:
    """Pseudo-nerve of a cover by full subcomplexes of an ambient complex.

    A p-cell is a pair (subset of p+1 cover elements, path component of
    their intersection); its faces are the components containing it one
    level down. When every intersection is connected this is the plain
    nerve. Cells are ordered deterministically.
    """

    cells: dict[int, list[tuple[tuple[int, ...], frozenset[int]]]]

    def counts(self) -> tuple[int, ...]:
        top = max(self.cells) if self.cells else -1
        return tuple(len(self.cells.get(q, [])) for q in range(top + 1))

    @property
    def dim(self) -> int:
        return max(self.cells) if self.cells else -1

    def boundary_matrix(self, q: int) -> SparseIntMatrix:
        if q < 1 or q > self.dim:
            raise ValueError(f"degree {q} out of range")
        lower = {}
        for ci, (idxs, comp) in enumerate(self.cells[q - 1]):
            for v in comp:
                lower[(idxs, v)] = ci
        entries: dict[tuple[int, int], int] = {}
        for ci, (idxs, comp) in enumerate(self.cells[q]):
            rep = min(comp)
            for pos in range(len(idxs)):
                face = idxs[:pos] + idxs[pos + 1:]
                ri = lower[(face, rep)]
                sgn = 1 if pos % 2 == 0 else -1
                entries[(ri, ci)] = entries.get((ri, ci), 0) + sgn
        return SparseIntMatrix(len(self.cells[q - 1]), len(self.cells[q]),
                               {k: v for k, v in entries.items() if v})

    def homology(self, q: int, coeff: int | None = None) -> HomologyResult:
        if q < 0 or q > self.dim:
            raise ValueError(f"degree {q} out of range 0..{self.dim}")
        d_q = self.boundary_matrix(q) if q >= 1 else None
        d_q1 = self.boundary_matrix(q + 1) if q + 1 <= self.dim else None
        return homology_of_chain(len(self.cells[q]), d_q, d_q1, q, coeff)


def pseudo_nerve(ambient: SimplicialComplex, cover_sets: list[frozenset[int]]) -> CechComplex:
    """Cech complex of a cover of `ambient` by full subcomplexes.

    `cover_sets` lists the vertex set of each cover element; intersections
    are again full subcomplexes, and their path components become cells.
    """
    cells: dict[int, list[tuple[tuple[int, ...], frozenset[int]]]] = {}
    r = len(cover_sets)
    for p in range(r):
        level: list[tuple[tuple[int, ...], frozenset[int]]] = []
        for idxs in combinations(range(r), p + 1):
            common = frozenset.intersection(*[cover_sets[t] for t in idxs])
            if not common:
                continue
            sub = ambient.full_subcomplex(set(common))
            for comp in sub.components():
                level.append((idxs, comp))
        if not level:
            break
        level.sort(key=lambda cell: (cell[0], min(cell[1])))
        cells[p] = level
    return CechComplex(cells)


def star_cover_nerve(nv: NerveComplex, fixed_edge: int) -> CechComplex:
    """Pseudo-nerve of the closed-star cover along `fixed_edge`.

    Deep intersections of stars can be disconnected (they are small
    chessboard complexes, down to isolated vertices), so components must be
    tracked; the plain nerve would get the top cells wrong.
    """
    sets = [star_vertex_set(nv, i, fixed_edge) for i in range(1, nv.rows + 1)]
    return pseudo_nerve(nv.complex, sets)


# ---------------------------------------------------------------------------
# cross-validation against the configuration-space cover


def nerve_matches_cover(m: int, k: int, max_vertices: int | None = None) -> bool:
    """Check the nerve against the actual cover of the m-particle complex.

    For every set of (particle, edge) pairs up to size min(m, k): the pairs
    span a simplex exactly when the corresponding cover intersection is
    nonempty, and every nonempty intersection is path-connected. When this
    holds the pseudo-nerve and the nerve coincide.
    """
    from . import config_complex as cc

    complex = cc.build_complex(m, k, max_vertices=max_vertices)
    nv = nerve(m, k)
    masks = {
        (i, j): cc.cover_subcomplex(complex, i, j)
        for i in range(1, m + 1)
        for j in range(1, k + 1)
    }
    pairs = sorted(masks)
    for size in range(1, min(m, k) + 1):
        for subset in combinations(pairs, size):
            inter = cc.cover_intersection([masks[p] for p in subset])
            rows_distinct = len({i for i, _ in subset}) == size
            cols_distinct = len({j for _, j in subset}) == size
            is_simplex = rows_distinct and cols_distinct
            if inter.is_empty():
                if is_simplex:
                    return False
                continue
            if not is_simplex:
                return False
            b0, _ = cc.betti(complex, inter)
            if b0 != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# reporting


def homology_table(nv: NerveComplex, coeff: int | None = None) -> list[HomologyResult]:
    return [nv.homology(q, coeff) for q in range(nv.complex.dim + 1)]


def homology_csv(results: list[tuple[int, int, HomologyResult]]) -> str:
    """CSV with columns m, k, degree, betti, torsion, coeff.

    Torsion is the invariant-factor list joined by '+', empty when free.
    """
    buf = io.StringIO()
    buf.write("m,k,degree,betti,torsion,coeff\n")
    for m, k, res in results:
        torsion = "+".join(str(t) for t in res.torsion)
        buf.write(f"{m},{k},{res.degree},{res.betti},{torsion},{res.coeff}\n")
    return buf.getvalue()
