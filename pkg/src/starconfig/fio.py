"""Injections with colored, ordered complements, and their calculus.

A morphism [n] -> [m] here is an injection together with a coloring of the
complement of its image by d colors and, within each color class, a total
order. For a star graph the colors are the k leaf edges and the order
records the sequence in which particles were inserted at a leaf, so these
morphisms act on configuration complexes: every morphism factors as a chain
of elementary leaf insertions followed by a relabeling permutation.

Composition convention: complement elements inherited from the inner
morphism precede, within each color class, those contributed by the outer
morphism, and both keep their relative order. Under this rule the element
ordered first in its class is the one inserted earliest, and decomposition
into elementary insertions is exact (round-trips are tested exhaustively).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial

from . import config_complex as cc


@dataclass(frozen=True)
class FioMorphism:
    """Injection [n] -> [m] with colored, per-color-ordered complement.

    `images[t-1]` is the image of t. `complement` lists one (element,
    color, rank) triple per element of [m] outside the image, sorted by
    element; ranks run 1..s within each color class.
    """

    n: int
    m: int
    d: int
    images: tuple[int, ...]
    complement: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("need at least one color")
        if not (0 <= self.n <= self.m):
            raise ValueError(f"need 0 <= n <= m, got {self.n}, {self.m}")
        if len(self.images) != self.n or len(set(self.images)) != self.n:
            raise ValueError("images must be n distinct values")
        if any(not 1 <= x <= self.m for x in self.images):
            raise ValueError("image out of range")
        expected = sorted(set(range(1, self.m + 1)) - set(self.images))
        if [e for e, _, _ in self.complement] != expected:
            raise ValueError("complement must list exactly the non-image elements")
        by_color: dict[int, list[int]] = {}
        for _, color, rank in self.complement:
            if not 1 <= color <= self.d:
                raise ValueError(f"color {color} out of range 1..{self.d}")
            by_color.setdefault(color, []).append(rank)
        for color, ranks in by_color.items():
            if sorted(ranks) != list(range(1, len(ranks) + 1)):
                raise ValueError(f"ranks of color {color} are not 1..{len(ranks)}")

    # -- accessors ----------------------------------------------------------

    def apply(self, t: int) -> int:
        return self.images[t - 1]

    def color_of(self, element: int) -> int:
        for e, color, _ in self.complement:
            if e == element:
                return color
        raise KeyError(element)

    def rank_of(self, element: int) -> int:
        for e, _, rank in self.complement:
            if e == element:
                return rank
        raise KeyError(element)

    def is_permutation(self) -> bool:
        return self.n == self.m

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "f": list(self.images),
            "complement": [
                {"elem": e, "color": c, "rank": r} for e, c, r in self.complement
            ],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> FioMorphism:
        data = json.loads(text)
        return cls(
            data["n"], data["m"], data["d"], tuple(data["f"]),
            tuple((x["elem"], x["color"], x["rank"]) for x in data["complement"]),
        )


def identity(n: int, d: int) -> FioMorphism:
    return FioMorphism(n, n, d, tuple(range(1, n + 1)), ())


def from_permutation(sigma: tuple[int, ...], d: int) -> FioMorphism:
    return FioMorphism(len(sigma), len(sigma), d, tuple(sigma), ())


def elementary_insertion(n: int, color: int, d: int) -> FioMorphism:
    """The standard inclusion [n] -> [n+1] coloring n+1 with `color`."""
    return FioMorphism(n, n + 1, d, tuple(range(1, n + 1)), ((n + 1, color, 1),))


def compose(outer: FioMorphism, inner: FioMorphism) -> FioMorphism:
    """outer o inner, with inherited complement elements ordered first."""
    if inner.m != outer.n:
        raise ValueError(f"sizes do not chain: {inner.m} != {outer.n}")
    if inner.d != outer.d:
        raise ValueError(f"color counts differ: {inner.d} != {outer.d}")
    images = tuple(outer.apply(inner.apply(t)) for t in range(1, inner.n + 1))
    taken = set(images)
    # sort keys: inherited elements carry (0, inner rank), new ones (1, outer rank)
    keyed: list[tuple[int, int, tuple[int, int]]] = []
    outer_image = {outer.apply(t): t for t in range(1, outer.n + 1)}
    for x in range(1, outer.m + 1):
        if x in taken:
            continue
        y = outer_image.get(x)
        if y is not None:
            keyed.append((x, inner.color_of(y), (0, inner.rank_of(y))))
        else:
            keyed.append((x, outer.color_of(x), (1, outer.rank_of(x))))
    by_color: dict[int, list[tuple[tuple[int, int], int]]] = {}
    for x, color, key in keyed:
        by_color.setdefault(color, []).append((key, x))
    rank: dict[int, int] = {}
    for color, members in by_color.items():
        for r, (_, x) in enumerate(sorted(members), start=1):
            rank[x] = r
    complement = tuple(sorted((x, color, rank[x]) for x, color, _ in keyed))
    return FioMorphism(inner.n, outer.m, outer.d, images, complement)


def decompose(f: FioMorphism) -> tuple[tuple[int, ...], list[int]]:
    """Factor into a permutation after a chain of elementary insertions.

    Returns (sigma, colors): recomposing from_permutation(sigma, d) with the
    elementary insertions of the listed colors, innermost first, reproduces
    f exactly. Insertions are emitted color class by color class, within a
    class by rank, so the rank-1 element of each class is inserted first.
    """
    ordered = sorted(f.complement, key=lambda t: (t[1], t[2]))
    colors = [color for _, color, _ in ordered]
    sigma = list(f.images) + [e for e, _, _ in ordered]
    return tuple(sigma), colors


def recompose(sigma: tuple[int, ...], colors: list[int], n: int, d: int) -> FioMorphism:
    """Fold decompose() output back into a single morphism."""
    acc = identity(n, d)
    for offset, color in enumerate(colors):
        acc = compose(elementary_insertion(n + offset, color, d), acc)
    return compose(from_permutation(sigma, d), acc)


# ---------------------------------------------------------------------------
# counting and enumeration


@dataclass(frozen=True)
class MorphismCount:
    """Number of morphisms [n] -> [m] and the matching free-module dimension.

    The two agree: hom sets are the basis of the free module, and both
    routes evaluate to m! * C(m-n+d-1, d-1).
    """

    morphisms: int
    free_module_dimension: int


def _weak_compositions(total: int, parts: int):
    for cuts in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def count_morphisms(n: int, m: int, d: int) -> MorphismCount:
    if m < n:
        raise ValueError(f"no injections [{n}] -> [{m}]")
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    r = m - n
    injections = factorial(m) // factorial(r)
    colored_orderings = 0
    for a in _weak_compositions(r, d):
        ways_to_color = factorial(r)
        for a_i in a:
            ways_to_color //= factorial(a_i)
        orderings = 1
        for a_i in a:
            orderings *= factorial(a_i)
        colored_orderings += ways_to_color * orderings
    return MorphismCount(
        morphisms=injections * colored_orderings,
        free_module_dimension=factorial(m) * comb(m - n + d - 1, d - 1),
    )


DEFAULT_ENUMERATION_CAP = 10 ** 6


def enumerate_morphisms(n: int, m: int, d: int,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> list[FioMorphism]:
    """All morphisms [n] -> [m], lexicographic on (images, colors, ranks)."""
    expected = count_morphisms(n, m, d).morphisms
    if expected > cap:
        raise ValueError(f"{expected} morphisms exceeds cap {cap}")
    out: list[FioMorphism] = []
    for images in permutations(range(1, m + 1), n):
        complement = sorted(set(range(1, m + 1)) - set(images))
        for colors in product(range(1, d + 1), repeat=len(complement)):
            class_members: dict[int, list[int]] = {}
            for e, color in zip(complement, colors):
                class_members.setdefault(color, []).append(e)
            rank_tuples = []
            for assignment in product(*[
                permutations(range(1, len(class_members[color]) + 1))
                for color in sorted(class_members)
            ]):
                ranks: dict[int, int] = {}
                for color, perm in zip(sorted(class_members), assignment):
                    for e, r in zip(class_members[color], perm):
                        ranks[e] = r
                rank_tuples.append(tuple(ranks[e] for e in complement))
            for ranks_tuple in sorted(rank_tuples):
                out.append(FioMorphism(
                    n, m, d, images,
                    tuple((e, c, r) for e, c, r in zip(complement, colors, ranks_tuple))))
    assert len(out) == expected
    return out


# ---------------------------------------------------------------------------
# action on configuration complexes


def act(
    f: FioMorphism,
    complexes: dict[int, cc.ConfigComplex] | None = None,
) -> cc.CellularMap:
    """The cellular map induced on configuration complexes with k = d leaves.

    Factors through decompose(): an elementary insertion of color j acts as
    the insertion map at leaf j, and the final permutation relabels.
    `complexes` can pre-supply built complexes keyed by particle count.
    """
    if complexes is None:
        complexes = {}
    for size in range(f.n, f.m + 1):
        if size not in complexes:
            complexes[size] = cc.build_complex(size, f.d)
    sigma, colors = decompose(f)

    source = complexes[f.n]
    current = cc.CellularMap(source, source,
                             tuple(range(source.num_vertices)),
                             tuple(range(source.num_edges)))
    for offset, color in enumerate(colors):
        step = cc.insertion_map(complexes[f.n + offset], color,
                                target=complexes[f.n + offset + 1])
        current = step.compose(current)
    final = cc.permutation_map(complexes[f.m], sigma)
    return final.compose(current)
