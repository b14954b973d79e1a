"""Combinatorial model of ordered configuration spaces of star graphs.

A star graph with k leaves has one central vertex joined by an edge to each
leaf. The model complex for n labeled particles is a finite graph: its
vertices are the discretized configurations, its edges the elementary moves
of a single particle between the centre and the near-centre slot of an edge.
The complex carries the particle-relabeling action and one insertion map per
leaf, plus the covers by "particle i sits outermost on edge j" subcomplexes
and their intersections.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial
from typing import Iterator, NamedTuple

import numpy as np


DEFAULT_MAX_VERTICES = 10 ** 7
ENV_MAX_VERTICES = "STARCONFIG_MAX_VERTICES"


class ResourceLimitError(RuntimeError):
    """Projected complex size exceeds the configured vertex cap."""


@dataclass(frozen=True)
class StarGraph:
    """Star graph with `k` leaf edges around a single central vertex."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("a star graph needs at least one leaf")


class EdgeState(NamedTuple):
    """Occupancy of one leaf edge.

    `interior` lists particles strictly between centre and leaf, index 0
    nearest the centre. A nonempty interior forces the leaf to be occupied:
    the outermost particle of a nonempty edge always sits on the leaf.
    """

    leaf: int | None
    interior: tuple[int, ...] = ()


class ParticleState(NamedTuple):
    """One vertex of the complex: centre occupant plus per-edge stacks."""

    center: int | None
    edges: tuple[EdgeState, ...]

    def sort_key(self):
        return (self.center or 0,
                tuple((e.leaf or 0, e.interior) for e in self.edges))

    def encode(self) -> str:
        """Canonical string form, documented byte-exactly in the README.

        Fields are joined by '|': first the centre occupant, then one field
        per edge. An empty slot is '.'; an edge field is the leaf occupant
        optionally followed by ':' and the comma-separated interior (nearest
        the centre first). Example: '1|2|.|.' or '.|2:1|.|.'.
        """
        parts = [str(self.center) if self.center else "."]
        for e in self.edges:
            leaf = str(e.leaf) if e.leaf else "."
            if e.interior:
                parts.append(leaf + ":" + ",".join(map(str, e.interior)))
            else:
                parts.append(leaf)
        return "|".join(parts)

    @classmethod
    def decode(cls, text: str) -> ParticleState:
        fields = text.split("|")
        center = None if fields[0] == "." else int(fields[0])
        edges = []
        for f in fields[1:]:
            leaf_part, _, interior_part = f.partition(":")
            leaf = None if leaf_part == "." else int(leaf_part)
            interior = tuple(int(x) for x in interior_part.split(",")) if interior_part else ()
            edges.append(EdgeState(leaf, interior))
        return cls(center, tuple(edges))


def check_state(state: ParticleState, n: int, k: int) -> None:
    """Validate the occupancy invariants for `n` particles on `k` edges."""
    if len(state.edges) != k:
        raise ValueError(f"expected {k} edges, got {len(state.edges)}")
    seen: list[int] = []
    if state.center:
        seen.append(state.center)
    for e in state.edges:
        if e.interior and e.leaf is None:
            raise ValueError(f"interior occupied with empty leaf in {state.encode()}")
        if e.leaf:
            seen.append(e.leaf)
        seen.extend(e.interior)
    if sorted(seen) != list(range(1, n + 1)):
        raise ValueError(f"labels {sorted(seen)} != 1..{n} in {state.encode()}")


class Move(NamedTuple):
    """One edge of the complex, stored once in the toward-centre direction.

    `source` holds the moving particle on the near-centre slot of `edge`
    (interior index 0, or the leaf when it is alone there); `target` holds it
    on the central vertex.
    """

    source: int
    target: int
    particle: int
    edge: int

    @property
    def direction(self) -> str:
        return "toward-center"


def projected_vertex_count(n: int, k: int) -> int:
    """Exact number of configuration vertices before building anything."""
    if n == 0:
        return 1
    free = factorial(k + n - 1) // factorial(k - 1)
    centered = n * factorial(k + n - 2) // factorial(k - 1)
    return free + centered


def _arrangements(labels: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ways to distribute `labels` into k ordered stacks (one per edge)."""
    if k == 1:
        if labels:
            for perm in permutations(labels):
                yield (perm,)
        else:
            yield ((),)
        return
    for size in range(len(labels) + 1):
        for chosen in combinations(labels, size):
            chosen_set = set(chosen)
            rest = tuple(x for x in labels if x not in chosen_set)
            for perm in permutations(chosen):
                for tail in _arrangements(rest, k - 1):
                    yield (perm,) + tail


def _stack_to_edge(stack: tuple[int, ...]) -> EdgeState:
    # stack[0] is the leaf occupant, the remainder the interior near-centre first
    if not stack:
        return EdgeState(None, ())
    return EdgeState(stack[0], stack[1:])


@dataclass(eq=False)
class ConfigComplex:
    """The full configuration complex for n particles on a k-leaf star.

    Immutable after construction. Vertex ids follow the lexicographic order
    of the canonical state tuples, so ids are reproducible across runs.
    """

    n: int
    graph: StarGraph
    vertices: list[ParticleState]
    edges: list[Move]
    _index: dict = field(repr=False)
    _by_endpoints: dict = field(repr=False)
    edge_src: np.ndarray = field(repr=False)
    edge_dst: np.ndarray = field(repr=False)

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, state: ParticleState) -> int:
        return self._index[state]

    def edge_index(self, source: int, target: int) -> int:
        return self._by_endpoints[(source, target)]

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "k": self.k,
            "vertices": [s.encode() for s in self.vertices],
            "edges": [[m.source, m.target, m.particle, m.edge] for m in self.edges],
        }
        return json.dumps(payload, sort_keys=True)

    def to_dot(self, limit: int = 500) -> str:
        if self.num_vertices > limit:
            raise ResourceLimitError(
                f"DOT export limited to {limit} vertices, complex has {self.num_vertices}")
        lines = ["graph config {"]
        for i, s in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{s.encode()}"];')
        for m in self.edges:
            lines.append(f"  v{m.source} -- v{m.target};")
        lines.append("}")
        return "\n".join(lines)


def max_vertex_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_MAX_VERTICES)
    return int(env) if env else DEFAULT_MAX_VERTICES


def build_complex(n: int, k: int, max_vertices: int | None = None) -> ConfigComplex:
    """Enumerate all valid states and all single-particle moves.

    States are ordered lexicographically by their canonical tuple; moves are
    enumerated per centre-occupied state and edge index, each stored once in
    the toward-centre direction.
    """
    if n < 0 or k < 1:
        raise ValueError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    projected = projected_vertex_count(n, k)
    cap = max_vertex_cap(max_vertices)
    if projected > cap:
        raise ResourceLimitError(
            f"projected {projected} vertices for n={n}, k={k} exceeds cap {cap}")

    labels = tuple(range(1, n + 1))
    states: list[ParticleState] = []
    for arr in _arrangements(labels, k):
        states.append(ParticleState(None, tuple(_stack_to_edge(s) for s in arr)))
    for c in labels:
        rest = tuple(x for x in labels if x != c)
        for arr in _arrangements(rest, k):
            states.append(ParticleState(c, tuple(_stack_to_edge(s) for s in arr)))
    states.sort(key=ParticleState.sort_key)
    index = {s: i for i, s in enumerate(states)}

    moves: list[Move] = []
    for target_id, s in enumerate(states):
        if not s.center:
            continue
        mover = s.center
        for j in range(1, k + 1):
            e = s.edges[j - 1]
            if e.leaf is None:
                new_edge = EdgeState(mover, ())
            else:
                new_edge = EdgeState(e.leaf, (mover,) + e.interior)
            source = ParticleState(
                None, s.edges[:j - 1] + (new_edge,) + s.edges[j:])
            moves.append(Move(index[source], target_id, mover, j))

    src = np.fromiter((m.source for m in moves), dtype=np.int64, count=len(moves))
    dst = np.fromiter((m.target for m in moves), dtype=np.int64, count=len(moves))
    by_endpoints = {(m.source, m.target): i for i, m in enumerate(moves)}
    return ConfigComplex(n, StarGraph(k), states, moves, index, by_endpoints, src, dst)


def ghrist_rank(n: int, k: int) -> int:
    """Free rank of the first homology of the n-particle complex on k leaves.

    This is the classical tree braid group count of Ghrist,
    1 + (nk - 2n - k + 1) * (n + k - 2)! / (k - 1)!, valid for k >= 3.
    """
    if k < 3:
        raise ValueError("rank formula requires k >= 3")
    if n < 1:
        raise ValueError("rank formula requires n >= 1")
    return 1 + (n * k - 2 * n - k + 1) * factorial(n + k - 2) // factorial(k - 1)


# ---------------------------------------------------------------------------
# subcomplex masks


@dataclass(eq=False)
class SubcomplexMask:
    """Vertex/edge bitmasks over a parent complex; always a full subcomplex."""

    parent: ConfigComplex
    vertex_mask: np.ndarray
    edge_mask: np.ndarray

    def __post_init__(self) -> None:
        ok = (self.vertex_mask[self.parent.edge_src]
              & self.vertex_mask[self.parent.edge_dst])
        if not np.array_equal(self.edge_mask, self.edge_mask & ok):
            raise ValueError("mask keeps an edge with a dropped endpoint")

    @property
    def num_vertices(self) -> int:
        return int(self.vertex_mask.sum())

    @property
    def num_edges(self) -> int:
        return int(self.edge_mask.sum())

    def is_empty(self) -> bool:
        return not self.vertex_mask.any()


def full_mask(complex: ConfigComplex) -> SubcomplexMask:
    return SubcomplexMask(
        complex,
        np.ones(complex.num_vertices, dtype=bool),
        np.ones(complex.num_edges, dtype=bool),
    )


def cover_subcomplex(complex: ConfigComplex, particle: int, edge: int) -> SubcomplexMask:
    """Full subcomplex where `particle` is the outermost particle on `edge`.

    Outermost on a nonempty edge means sitting on the leaf, so the condition
    is simply that the leaf of `edge` carries `particle`.
    """
    if not (1 <= particle <= complex.n):
        raise ValueError(f"particle {particle} out of range 1..{complex.n}")
    if not (1 <= edge <= complex.k):
        raise ValueError(f"edge {edge} out of range 1..{complex.k}")
    vmask = np.fromiter(
        (s.edges[edge - 1].leaf == particle for s in complex.vertices),
        dtype=bool, count=complex.num_vertices)
    emask = vmask[complex.edge_src] & vmask[complex.edge_dst]
    return SubcomplexMask(complex, vmask, emask)


def cover_intersection(masks: list[SubcomplexMask]) -> SubcomplexMask:
    """Intersection of full subcomplexes (bitwise on vertices and edges)."""
    if not masks:
        raise ValueError("need at least one mask")
    parent = masks[0].parent
    if any(m.parent is not parent for m in masks):
        raise ValueError("masks must share a parent complex")
    vmask = masks[0].vertex_mask.copy()
    emask = masks[0].edge_mask.copy()
    for m in masks[1:]:
        vmask &= m.vertex_mask
        emask &= m.edge_mask
    return SubcomplexMask(parent, vmask, emask)


# ---------------------------------------------------------------------------
# graph homology: components, betti, cycle bases


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def betti(complex: ConfigComplex, mask: SubcomplexMask | None = None) -> tuple[int, int]:
    """(b0, b1) of the complex or of a masked subcomplex.

    b0 by union-find over the retained edges; b1 = E - V + b0 since the
    complex is a graph.
    """
    if mask is None:
        vcount, ecount = complex.num_vertices, complex.num_edges
        dsu = _DSU(vcount)
        for pos in range(ecount):
            dsu.union(int(complex.edge_src[pos]), int(complex.edge_dst[pos]))
        b0 = len({dsu.find(v) for v in range(vcount)})
    else:
        dsu = _DSU(complex.num_vertices)
        positions = np.nonzero(mask.edge_mask)[0]
        for pos in positions:
            dsu.union(int(complex.edge_src[pos]), int(complex.edge_dst[pos]))
        verts = np.nonzero(mask.vertex_mask)[0]
        b0 = len({dsu.find(int(v)) for v in verts})
        vcount, ecount = mask.num_vertices, mask.num_edges
    return b0, ecount - vcount + b0


@dataclass(eq=False)
class SpanningForest:
    """Rooted spanning forest with parent pointers, for fundamental cycles."""

    complex: ConfigComplex
    forest_edges: list[int]
    nontree_edges: list[int]
    parent: list[int]
    parent_edge: list[int]
    depth: list[int]
    in_forest: set[int] = field(repr=False)

    def fundamental_cycle(self, edge_pos: int) -> dict[int, int]:
        """Cycle of a non-forest edge: the edge plus the tree path back.

        Chain convention: coefficient +1 means the stored (toward-centre)
        orientation. The edge enters with +1; boundary of the chain is zero.
        """
        src = self.complex.edge_src
        dst = self.complex.edge_dst
        chain = {edge_pos: 1}
        u, v = int(dst[edge_pos]), int(src[edge_pos])
        while u != v:
            if self.depth[u] >= self.depth[v]:
                ep = self.parent_edge[u]
                step = 1 if int(src[ep]) == u else -1
                chain[ep] = chain.get(ep, 0) + step
                u = self.parent[u]
            else:
                ep = self.parent_edge[v]
                step = 1 if int(dst[ep]) == v else -1
                chain[ep] = chain.get(ep, 0) + step
                v = self.parent[v]
        return {e: c for e, c in chain.items() if c}


def spanning_forest(
    complex: ConfigComplex,
    mask: SubcomplexMask | None = None,
    align_with: SpanningForest | None = None,
) -> SpanningForest:
    """Deterministic spanning forest by Kruskal in edge-id order.

    With `align_with` given, edges of that forest lying inside the mask are
    inserted first, so the new forest extends the restriction of the old
    one. This keeps cycle coordinates sparse when subcomplex cycles are
    rewritten in the coordinates of the ambient complex.
    """
    nv = complex.num_vertices
    src, dst = complex.edge_src, complex.edge_dst
    if mask is None:
        allowed = range(complex.num_edges)
        allowed_set = None
    else:
        allowed = [int(p) for p in np.nonzero(mask.edge_mask)[0]]
        allowed_set = set(allowed)

    dsu = _DSU(nv)
    forest: list[int] = []
    if align_with is not None:
        for pos in align_with.forest_edges:
            if allowed_set is not None and pos not in allowed_set:
                continue
            if dsu.union(int(src[pos]), int(dst[pos])):
                forest.append(pos)
    nontree: list[int] = []
    in_forest = set(forest)
    for pos in allowed:
        if pos in in_forest:
            continue
        if dsu.union(int(src[pos]), int(dst[pos])):
            forest.append(pos)
            in_forest.add(pos)
        else:
            nontree.append(pos)

    adj: dict[int, list[tuple[int, int]]] = {}
    for pos in forest:
        adj.setdefault(int(src[pos]), []).append((int(dst[pos]), pos))
        adj.setdefault(int(dst[pos]), []).append((int(src[pos]), pos))
    parent = [-1] * nv
    parent_edge = [-1] * nv
    depth = [0] * nv
    if mask is None:
        roots: Iterator[int] = iter(range(nv))
    else:
        roots = iter(int(v) for v in np.nonzero(mask.vertex_mask)[0])
    from collections import deque
    for root in roots:
        if parent[root] != -1:
            continue
        parent[root] = root
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for (w, pos) in adj.get(u, ()):
                if parent[w] == -1:
                    parent[w] = u
                    parent_edge[w] = pos
                    depth[w] = depth[u] + 1
                    queue.append(w)
    return SpanningForest(complex, forest, sorted(nontree), parent, parent_edge, depth, in_forest)


def cycle_basis(
    complex: ConfigComplex,
    mask: SubcomplexMask | None = None,
    forest: SpanningForest | None = None,
) -> list[dict[int, int]]:
    """Fundamental cycle basis, one integer edge-chain per non-forest edge.

    Chains are keyed by ambient edge ids, so cycles of a subcomplex embed
    literally into any larger subcomplex. The basis is deterministic: the
    forest is grown in edge-id order and cycles are listed by their defining
    non-forest edge, ascending.
    """
    if forest is None:
        forest = spanning_forest(complex, mask)
    return [forest.fundamental_cycle(pos) for pos in forest.nontree_edges]


def chain_boundary(complex: ConfigComplex, chain: dict[int, int]) -> dict[int, int]:
    """Boundary of a 1-chain as a vertex chain (for tests and sanity checks)."""
    out: dict[int, int] = {}
    for pos, coeff in chain.items():
        s, t = int(complex.edge_src[pos]), int(complex.edge_dst[pos])
        out[t] = out.get(t, 0) + coeff
        out[s] = out.get(s, 0) - coeff
    return {v: c for v, c in out.items() if c}


# ---------------------------------------------------------------------------
# cellular self-maps: relabeling and insertion


@dataclass(frozen=True, eq=False)
class CellularMap:
    """Graph map between configuration complexes, vertexwise and edgewise."""

    source: ConfigComplex
    target: ConfigComplex
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def compose(self, inner: CellularMap) -> CellularMap:
        """self o inner."""
        if inner.target is not self.source:
            raise ValueError("maps not composable")
        vmap = tuple(self.vertex_map[v] for v in inner.vertex_map)
        emap = tuple(self.edge_map[e] for e in inner.edge_map)
        return CellularMap(inner.source, self.target, vmap, emap)

    def is_identity(self) -> bool:
        return (self.source is self.target
                and self.vertex_map == tuple(range(len(self.vertex_map))))

    def is_injective(self) -> bool:
        return (len(set(self.vertex_map)) == len(self.vertex_map)
                and len(set(self.edge_map)) == len(self.edge_map))


def _check_permutation(sigma: tuple[int, ...], n: int) -> None:
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")


def relabel_state(state: ParticleState, sigma: tuple[int, ...]) -> ParticleState:
    """Apply the label permutation sigma (sigma[i-1] is the image of i)."""
    def s(x: int | None) -> int | None:
        return None if x is None else sigma[x - 1]
    return ParticleState(
        s(state.center),
        tuple(EdgeState(s(e.leaf), tuple(sigma[x - 1] for x in e.interior))
              for e in state.edges))


def permutation_map(complex: ConfigComplex, sigma: tuple[int, ...]) -> CellularMap:
    """The automorphism of the complex induced by relabeling particles."""
    sigma = tuple(sigma)
    _check_permutation(sigma, complex.n)
    vmap = tuple(complex.vertex_index(relabel_state(s, sigma))
                 for s in complex.vertices)
    emap = tuple(complex.edge_index(vmap[m.source], vmap[m.target])
                 for m in complex.edges)
    return CellularMap(complex, complex, vmap, emap)


def insert_state(state: ParticleState, edge: int, new_label: int) -> ParticleState:
    """Add `new_label` at the leaf of `edge`, pushing the old leaf occupant in.

    The previous leaf occupant (if any) becomes the outermost interior
    particle; everything else is untouched.
    """
    e = state.edges[edge - 1]
    if e.leaf is None:
        new_edge = EdgeState(new_label, ())
    else:
        new_edge = EdgeState(new_label, e.interior + (e.leaf,))
    return ParticleState(
        state.center,
        state.edges[:edge - 1] + (new_edge,) + state.edges[edge:])


def insertion_map(
    complex: ConfigComplex,
    edge: int,
    target: ConfigComplex | None = None,
) -> CellularMap:
    """The injection adding particle n+1 at the leaf of `edge`.

    The image is exactly the cover subcomplex of the target where the new
    particle is outermost on `edge`.
    """
    if not (1 <= edge <= complex.k):
        raise ValueError(f"edge {edge} out of range 1..{complex.k}")
    if target is None:
        target = build_complex(complex.n + 1, complex.k)
    elif (target.n, target.k) != (complex.n + 1, complex.k):
        raise ValueError(
            f"target is K_{target.n} on {target.k} leaves, "
            f"expected K_{complex.n + 1} on {complex.k}")
    new_label = complex.n + 1
    vmap = tuple(target.vertex_index(insert_state(s, edge, new_label))
                 for s in complex.vertices)
    emap = tuple(target.edge_index(vmap[m.source], vmap[m.target])
                 for m in complex.edges)
    return CellularMap(complex, target, vmap, emap)
