"""First page of the Mayer-Vietoris spectral sequence for the leaf cover.

The cover of the (n+1)-particle complex indexed by pairs (particle, edge)
has intersections that are again configuration complexes with fewer free
particles. The first page carries, per nerve simplex, the homology of the
corresponding intersection; the differential is the alternating sum of the
inclusion-induced maps, computed here at chain level by rewriting each
fundamental cycle in the fundamental-cycle coordinates of the larger
subcomplex.

The degree checkers below answer two finite questions: which first-homology
classes of the (n+1)-particle complex are sums of classes pushed in from n
particles (generation), and how the second homology of the nerve behaves
(evidence for the presentation degree).
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

from . import config_complex as cc
from .homology import IntEchelon, SparseIntMatrix, rank_z
from .nerve import NerveComplex, nerve


def _expected_intersection_rank(n: int, k: int, p: int) -> int:
    free = n - p
    return cc.ghrist_rank(free, k) if free >= 1 else 0


@dataclass
class E1Page:
    """Rows q = 0, 1 of the first page, with chain-level differentials.

    `cycles[p]` holds, per p-simplex of the nerve (in nerve order), the
    fundamental-cycle basis of the intersection subcomplex, as integer edge
    chains of the ambient complex. `d1_row1[p]` and `d1_row0[p]` map column
    p to column p-1.
    """

    n_plus_1: int
    k: int
    complex: cc.ConfigComplex
    nerve: NerveComplex
    cycles: dict[int, list[list[dict[int, int]]]]
    nontree_index: dict[int, list[dict[int, int]]]
    d1_row1: dict[int, SparseIntMatrix] = field(default_factory=dict)
    d1_row0: dict[int, SparseIntMatrix] = field(default_factory=dict)

    def row1_rank(self, p: int) -> int:
        return sum(len(basis) for basis in self.cycles.get(p, []))

    def row0_rank(self, p: int) -> int:
        return len(self.nerve.complex.simplices.get(p, ()))


def e1_page(n_plus_1: int, k: int, max_vertices: int | None = None) -> E1Page:
    """Assemble both nontrivial rows of the first page.

    Every intersection is extracted as a mask, checked connected, and given
    a cycle basis; bases are ordered by nerve simplex then by defining
    non-forest edge, so the page is deterministic.
    """
    complex = cc.build_complex(n_plus_1, k, max_vertices=max_vertices)
    nv = nerve(n_plus_1, k)
    n = n_plus_1 - 1
    ambient_forest = cc.spanning_forest(complex)

    covers = {
        (i, j): cc.cover_subcomplex(complex, i, j)
        for i in range(1, n_plus_1 + 1)
        for j in range(1, k + 1)
    }

    cycles: dict[int, list[list[dict[int, int]]]] = {}
    nontree_index: dict[int, list[dict[int, int]]] = {}
    for p in range(nv.complex.dim + 1):
        simplices = nv.complex.simplices.get(p, ())
        per_simplex_cycles: list[list[dict[int, int]]] = []
        per_simplex_index: list[dict[int, int]] = []
        for s in simplices:
            pairs = [nv.pair_of(v) for v in s]
            mask = cc.cover_intersection([covers[pr] for pr in pairs])
            b0, b1 = cc.betti(complex, mask)
            if b0 != 1:
                raise AssertionError(f"intersection {pairs} not connected")
            expected = _expected_intersection_rank(n, k, p)
            if b1 != expected:
                raise AssertionError(
                    f"intersection {pairs} has rank {b1}, expected {expected}")
            forest = cc.spanning_forest(complex, mask, align_with=ambient_forest)
            per_simplex_cycles.append(
                [forest.fundamental_cycle(pos) for pos in forest.nontree_edges])
            per_simplex_index.append(
                {pos: idx for idx, pos in enumerate(forest.nontree_edges)})
        cycles[p] = per_simplex_cycles
        nontree_index[p] = per_simplex_index

    page = E1Page(n_plus_1, k, complex, nv, cycles, nontree_index)
    for p in range(1, nv.complex.dim + 1):
        page.d1_row1[p] = _d1_row1(page, p)
        page.d1_row0[p] = _d1_row0(page, p)
        expected = nv.complex.boundary_matrix(p)
        if page.d1_row0[p].entries != expected.entries:
            raise AssertionError(f"bottom-row differential disagrees at p={p}")
    return page


def _offsets(sizes: list[int]) -> list[int]:
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def _d1_row1(page: E1Page, p: int) -> SparseIntMatrix:
    nv = page.nerve
    cols_cycles = page.cycles[p]
    rows_index = page.nontree_index[p - 1]
    face_lookup = nv.complex.index(p - 1)
    col_off = _offsets([len(b) for b in cols_cycles])
    row_off = _offsets([len(ix) for ix in rows_index])
    entries: dict[tuple[int, int], int] = {}
    for s_idx, s in enumerate(nv.complex.simplices[p]):
        for c_local, cycle in enumerate(cols_cycles[s_idx]):
            col = col_off[s_idx] + c_local
            for pos in range(len(s)):
                face = s[:pos] + s[pos + 1:]
                f_idx = face_lookup[face]
                sgn = 1 if pos % 2 == 0 else -1
                index = rows_index[f_idx]
                base = row_off[f_idx]
                for edge, coeff in cycle.items():
                    local = index.get(edge)
                    if local is not None:
                        key = (base + local, col)
                        entries[key] = entries.get(key, 0) + sgn * coeff
    nrows = sum(len(ix) for ix in rows_index)
    ncols = sum(len(b) for b in cols_cycles)
    return SparseIntMatrix(nrows, ncols, {k2: v for k2, v in entries.items() if v})


def _d1_row0(page: E1Page, p: int) -> SparseIntMatrix:
    nv = page.nerve
    face_lookup = nv.complex.index(p - 1)
    entries: dict[tuple[int, int], int] = {}
    for s_idx, s in enumerate(nv.complex.simplices[p]):
        for pos in range(len(s)):
            face = s[:pos] + s[pos + 1:]
            entries[(face_lookup[face], s_idx)] = 1 if pos % 2 == 0 else -1
    return SparseIntMatrix(len(nv.complex.simplices[p - 1]),
                           len(nv.complex.simplices[p]), entries)


def e2_row0(n_plus_1: int, k: int, page: E1Page | None = None) -> tuple[int, int, int]:
    """Ranks of the second-page entries (p, 0) for p = 0, 1, 2.

    These equal the nerve Betti numbers; the page's bottom row is the same
    chain complex, which e1_page asserts entry by entry.
    """
    nv = page.nerve if page is not None else nerve(n_plus_1, k)
    out = []
    for p in range(3):
        if p > nv.complex.dim:
            out.append(0)
        else:
            out.append(nv.homology(p).betti)
    return tuple(out)


def e2_01(n_plus_1: int, k: int, page: E1Page | None = None) -> int:
    """Rank of E1_{0,1} modulo the image of the first differential."""
    if page is None:
        page = e1_page(n_plus_1, k)
    total = page.row1_rank(0)
    if 1 not in page.d1_row1:
        return total
    return total - rank_z(page.d1_row1[1])


# ---------------------------------------------------------------------------
# generation degree


@dataclass
class GenerationReport:
    """How much of the (n+1)-particle first homology is inserted from below.

    `image_rank` is the rank of the span of all cover cycle bases inside
    the ambient cycle space; `witnesses` are ambient fundamental cycles
    that extend that span to full rank, chosen greedily in basis order.
    """

    n_plus_1: int
    k: int
    total_rank: int
    image_rank: int
    cokernel_rank: int
    witnesses: list[dict[int, int]]
    inferred_d2_rank: int | None = None

    def to_json(self) -> str:
        payload = {
            "n_plus_1": self.n_plus_1,
            "k": self.k,
            "Q": self.total_rank,
            "image_rank": self.image_rank,
            "cokernel_rank": self.cokernel_rank,
            "witnesses": [sorted(w.items()) for w in self.witnesses],
        }
        if self.inferred_d2_rank is not None:
            payload["inferred_d2_rank"] = self.inferred_d2_rank
        return json.dumps(payload, sort_keys=True)


def generation_check(
    n_plus_1: int,
    k: int,
    complex: cc.ConfigComplex | None = None,
    cover_order: list[tuple[int, int]] | None = None,
    with_e2_01: bool = False,
    max_vertices: int | None = None,
) -> GenerationReport:
    """Rank of the image of all cover cycle spaces in ambient first homology.

    The ambient complex is a graph, so its first homology is literally its
    cycle space and the image of a cover's homology is its cycle space as a
    subspace. Every cover cycle is rewritten in ambient fundamental-cycle
    coordinates (its coefficients on ambient non-forest edges) and the rank
    is accumulated by exact integer elimination.
    """
    if complex is None:
        complex = cc.build_complex(n_plus_1, k, max_vertices=max_vertices)
    total = cc.ghrist_rank(n_plus_1, k)
    ambient = cc.spanning_forest(complex)
    coord = {pos: i for i, pos in enumerate(ambient.nontree_edges)}

    if cover_order is None:
        cover_order = [(i, j) for i in range(1, n_plus_1 + 1) for j in range(1, k + 1)]
    ech = IntEchelon()
    for (i, j) in cover_order:
        mask = cc.cover_subcomplex(complex, i, j)
        forest = cc.spanning_forest(complex, mask, align_with=ambient)
        for pos in forest.nontree_edges:
            cycle = forest.fundamental_cycle(pos)
            row: dict[int, int] = {}
            for edge, coeff in cycle.items():
                ci = coord.get(edge)
                if ci is not None:
                    row[ci] = row.get(ci, 0) + coeff
            ech.add(row)
    image_rank = ech.rank

    witnesses: list[dict[int, int]] = []
    for idx, pos in enumerate(ambient.nontree_edges):
        if ech.rank >= total:
            break
        if ech.add({idx: 1}):
            witnesses.append(ambient.fundamental_cycle(pos))
    if image_rank + len(witnesses) != total:
        raise AssertionError("witness completion failed to reach full rank")

    inferred = None
    if with_e2_01:
        inferred = e2_01(n_plus_1, k) - image_rank
    return GenerationReport(n_plus_1, k, total, image_rank,
                            total - image_rank, witnesses, inferred)


def generation_degree_table(
    k: int,
    n_plus_1_max: int,
    max_vertices: int | None = None,
) -> list[tuple[int, int]]:
    """Cokernel ranks for 2..n_plus_1_max particles at fixed k."""
    out = []
    for m in range(2, n_plus_1_max + 1):
        report = generation_check(m, k, max_vertices=max_vertices)
        out.append((m, report.cokernel_rank))
    return out


def generation_csv(k: int, table: list[tuple[int, int]]) -> str:
    buf = io.StringIO()
    buf.write("n_plus_1,k,cokernel_rank\n")
    for m, coker in table:
        buf.write(f"{m},{k},{coker}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# presentation degree evidence


def presentation_evidence(
    k: int,
    n_plus_1_values: list[int],
) -> list[tuple[int, int, tuple[int, ...]]]:
    """Second nerve homology per particle count: (n+1, betti, torsion)."""
    out = []
    for m in n_plus_1_values:
        nv = nerve(m, k)
        if nv.complex.dim < 2:
            out.append((m, 0, ()))
            continue
        res = nv.homology(2)
        out.append((m, res.betti, res.torsion))
    return out


def presentation_csv(k: int, rows: list[tuple[int, int, tuple[int, ...]]]) -> str:
    buf = io.StringIO()
    buf.write("n_plus_1,k,beta2,torsion\n")
    for m, b2, torsion in rows:
        buf.write(f"{m},{k},{b2},{'+'.join(map(str, torsion))}\n")
    return buf.getvalue()
