"""Chessboard nerves, star covers, pseudo-nerves."""
from itertools import combinations, permutations

import pytest

from starconfig.homology import SimplicialComplex
from starconfig.nerve import (
    homology_csv,
    homology_table,
    nerve,
    nerve_matches_cover,
    pseudo_nerve,
    star_cover,
    star_cover_nerve,
    star_intersection,
    star_vertex_set,
    transpose,
    transpose_vertex_map,
)


# ---------------------------------------------------------------------------
# construction and counts


def test_torus_board_cells():
    nv = nerve(4, 3)
    assert nv.complex.counts() == (12, 36, 24)


def test_single_column_is_discrete():
    nv = nerve(5, 1)
    assert nv.complex.counts() == (5,)
    assert nv.homology(0).betti == 5


def test_two_by_two_is_two_disjoint_edges():
    nv = nerve(2, 2)
    assert nv.complex.counts() == (4, 2)
    assert nv.homology(0).betti == 2
    assert nv.homology(1).betti == 0


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("k", range(1, 7))
def test_cell_count_formula(m, k):
    nv = nerve(m, k)
    for p in range(min(m, k)):
        assert len(nv.complex.simplices.get(p, ())) == nv.expected_count(p)


def test_cell_count_formula_large_board():
    # count the generator output without building the complex
    from math import comb, factorial
    for (m, k, dims) in [(7, 7, (4, 5, 6)), (7, 8, (5, 6)), (8, 8, (5, 6, 7))]:
        for p in dims:
            count = sum(
                1
                for rr in combinations(range(m), p + 1)
                for cc in combinations(range(k), p + 1)
                for _ in permutations(cc)
            )
            assert count == comb(m, p + 1) * comb(k, p + 1) * factorial(p + 1)


def test_vertex_ids_row_major():
    nv = nerve(3, 4)
    assert nv.vertex_id(1, 1) == 1
    assert nv.vertex_id(2, 1) == 5
    assert nv.pair_of(7) == (2, 3)


# ---------------------------------------------------------------------------
# transpose duality


def test_transpose_is_simplicial_isomorphism():
    nv = nerve(4, 6)
    flipped = transpose(nv)
    assert (flipped.rows, flipped.cols) == (6, 4)
    vmap = transpose_vertex_map(nv)
    for dim, cells in nv.complex.simplices.items():
        mapped = sorted(tuple(sorted(vmap[v] for v in s)) for s in cells)
        assert mapped == list(flipped.complex.simplices[dim])


def test_transpose_involution():
    nv = nerve(3, 5)
    back = transpose(transpose(nv))
    assert back.complex.simplices == nv.complex.simplices


def test_transpose_preserves_homology():
    nv = nerve(4, 6)
    flipped = transpose(nv)
    for q in range(nv.complex.dim + 1):
        a, b = nv.homology(q), flipped.homology(q)
        assert (a.betti, a.torsion) == (b.betti, b.torsion)


@pytest.mark.parametrize("k", [5, 6, 7])
def test_h2_transpose_duality_on_three_columns(k):
    assert nerve(k, 3).homology(2).betti == nerve(3, k).homology(2).betti


# ---------------------------------------------------------------------------
# homology reference values


def test_torus_board_homology():
    nv = nerve(4, 3)
    assert [nv.homology(q).group() for q in range(3)] == ["Z", "Z^2", "Z"]


@pytest.mark.parametrize("m,k,rank", [
    (5, 3, 0), (4, 4, 0), (3, 5, 0), (5, 4, 0), (4, 5, 0),
    (4, 3, 2), (3, 3, 4), (3, 4, 2),
])
def test_first_homology_pattern(m, k, rank):
    assert nerve(m, k).homology(1).betti == rank


# the full vanishing region: three columns from five rows on, four columns
# from four rows on, five or more columns from three rows on
H1_VANISHING_SWEEP = (
    [(m, 3) for m in (5, 6, 7, 8)]
    + [(m, 4) for m in (4, 5, 6, 7)]
    + [(m, 5) for m in (3, 4, 5, 6)]
    + [(m, 6) for m in (3, 4)]
    + [(m, 7) for m in (3, 4)]
)


@pytest.mark.parametrize("m,k", H1_VANISHING_SWEEP)
def test_first_homology_vanishing_region(m, k):
    res = nerve(m, k).homology(1)
    assert res.betti == 0
    assert res.torsion == ()


@pytest.mark.parametrize("m,k", [(3, 3), (4, 3), (3, 4), (5, 3), (4, 4), (5, 5)])
def test_first_homology_is_torsion_free(m, k):
    # the first homology of these boards embeds in a graph's homology, so
    # any torsion would flag a boundary-matrix bug
    assert nerve(m, k).homology(1).torsion == ()


def test_five_by_five_second_homology_is_three_torsion():
    res = nerve(5, 5).homology(2)
    assert (res.betti, res.torsion) == (0, (3,))
    assert nerve(5, 5).homology(2, coeff=2).betti == 0
    assert nerve(5, 5).homology(2, coeff=3).betti == 1


@pytest.mark.parametrize("m,k", [(5, 5), (6, 4), (4, 4)])
def test_universal_coefficients_on_boards(m, k):
    nv = nerve(m, k)
    for q in (1, 2):
        integral = nv.homology(q)
        below = nv.homology(q - 1)
        for p in (2, 3):
            t_here = sum(1 for t in integral.torsion if t % p == 0)
            t_below = sum(1 for t in below.torsion if t % p == 0)
            assert nv.homology(q, coeff=p).betti == integral.betti + t_here + t_below


def test_homology_csv_format():
    nv = nerve(3, 3)
    text = homology_csv([(3, 3, r) for r in homology_table(nv)])
    lines = text.strip().split("\n")
    assert lines[0] == "m,k,degree,betti,torsion,coeff"
    assert lines[1] == "3,3,0,1,,Z"
    assert lines[2] == "3,3,1,4,,Z"


# ---------------------------------------------------------------------------
# star covers


def test_star_is_full_subcomplex_and_contractible():
    nv = nerve(5, 4)
    for s in star_cover(nv, 2):
        assert s.complex.vertices == tuple(sorted(s.vertex_set))
        profile = [s.complex.homology(q) for q in range(s.complex.dim + 1)]
        assert [h.betti for h in profile] == [1] + [0] * s.complex.dim
        assert all(not h.torsion for h in profile)


def test_stars_contain_every_simplex_up_to_dim_3():
    for (m, k) in [(5, 4), (6, 4), (5, 5)]:
        nv = nerve(m, k)
        sets = [star_vertex_set(nv, i, 1) for i in range(1, m + 1)]
        for dim, cells in nv.complex.simplices.items():
            if dim > 3:
                continue
            for cell in cells:
                assert any(set(cell) <= vs for vs in sets), (m, k, cell)


def test_star_union_can_miss_simplices_on_two_rows():
    # with only two particles no third star can absorb a generic edge
    nv = nerve(2, 3)
    sets = [star_vertex_set(nv, i, 1) for i in (1, 2)]
    edge = (nv.vertex_id(1, 2), nv.vertex_id(2, 3))
    assert tuple(sorted(edge)) in nv.complex.simplices[1]
    assert not any(set(edge) <= vs for vs in sets)


def test_star_intersection_pair_is_torus():
    nv = nerve(6, 4)
    stars = star_cover(nv, 1)
    inter = star_intersection([stars[0], stars[1]], nv)
    assert [inter.homology(q).betti for q in range(3)] == [1, 2, 1]


def test_star_intersection_matches_smaller_board():
    nv = nerve(5, 5)
    stars = star_cover(nv, 1)
    inter = star_intersection([stars[1], stars[3]], nv)
    reference = nerve(3, 4).complex
    assert inter.counts() == reference.counts()
    for q in range(reference.dim + 1):
        a, b = inter.homology(q), reference.homology(q)
        assert (a.betti, a.torsion) == (b.betti, b.torsion)


def test_star_intersection_of_all_stars_is_empty():
    nv = nerve(4, 4)
    stars = star_cover(nv, 1)
    assert star_intersection(stars, nv).vertices == ()


def test_star_intersection_argument_checks():
    nv = nerve(4, 4)
    stars = star_cover(nv, 1)
    with pytest.raises(ValueError):
        star_intersection([stars[0]], nv)
    other = star_cover(nv, 2)
    with pytest.raises(ValueError):
        star_intersection([stars[0], other[1]], nv)


# ---------------------------------------------------------------------------
# pseudo-nerves


def test_pseudo_nerve_of_circle_cover():
    # a square covered by two opposite arcs: the intersection has two
    # components, so the cover nerve is two parallel edges, a circle
    square = SimplicialComplex.from_facets([(0, 1), (1, 2), (2, 3), (0, 3)])
    top = frozenset({0, 1, 2})
    bottom = frozenset({0, 3, 2})
    cech = pseudo_nerve(square, [top, bottom])
    assert cech.counts() == (2, 2)
    assert cech.homology(0).betti == 1
    assert cech.homology(1).betti == 1


def test_pseudo_nerve_equals_nerve_when_connected():
    # three arcs of a hexagon, pairwise overlapping in single vertices
    hexagon = SimplicialComplex.from_facets(
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    arcs = [frozenset({0, 1, 2}), frozenset({2, 3, 4}), frozenset({4, 5, 0})]
    cech = pseudo_nerve(hexagon, arcs)
    assert cech.counts() == (3, 3)
    assert cech.homology(1).betti == 1  # the nerve is a hollow triangle


def test_pseudo_nerve_boundary_squares_to_zero():
    nv = nerve(5, 4)
    cech = star_cover_nerve(nv, 1)
    for q in range(2, cech.dim + 1):
        assert cech.boundary_matrix(q - 1).matmul(cech.boundary_matrix(q)).is_zero()


def test_star_cover_nerve_top_cells_multiply():
    # 4-fold star intersections on the 5 x 4 board are three isolated
    # vertices, so each 3-cell appears with multiplicity three
    cech = star_cover_nerve(nerve(5, 4), 1)
    assert cech.counts() == (5, 10, 10, 15)


@pytest.mark.parametrize("m,k", [(5, 4), (6, 4), (5, 5)])
def test_star_cover_nerve_low_homology_vanishes(m, k):
    cech = star_cover_nerve(nerve(m, k), 1)
    for q in (1, 2):
        res = cech.homology(q)
        assert (res.betti, res.torsion) == (0, ())


# ---------------------------------------------------------------------------
# the nerve really is the nerve of the cover


@pytest.mark.parametrize("m,k", [(3, 3), (4, 3), (3, 4)])
def test_nerve_matches_cover(m, k):
    assert nerve_matches_cover(m, k)
