"""Exact linear algebra and simplicial homology."""
import random
from fractions import Fraction

import pytest

from starconfig.homology import (
    DegreeError,
    HomologyResult,
    IntEchelon,
    SimplicialComplex,
    SmithForm,
    SparseIntMatrix,
    homology_of_chain,
    rank_mod_p,
    rank_z,
    smith_normal_form,
)


# ---------------------------------------------------------------------------
# independent reference implementations (oracles)


def integer_determinant(mat):
    """Fraction-free Gaussian elimination (Bareiss)."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if m[r][i]), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def naive_smith(dense):
    """Invariant factors via determinant divisors: d_k is the gcd of all
    k x k minors and the k-th factor is d_k / d_{k-1}. A slow but entirely
    independent route to the same invariants."""
    if not dense or not dense[0]:
        return []
    nrows, ncols = len(dense), len(dense[0])
    factors = []
    prev = 1
    from itertools import combinations
    from math import gcd
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rows in combinations(range(nrows), k):
            for cols in combinations(range(ncols), k):
                sub = [[dense[r][c] for c in cols] for r in rows]
                g = gcd(g, integer_determinant(sub))
                if g == prev:
                    break
            if g == prev:
                break
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def fraction_rank(dense):
    """Rank via Gaussian elimination over Fraction, for the rank oracle."""
    m = [[Fraction(v) for v in row] for row in dense]
    rank = 0
    col = 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                factor = m[i][col] / m[rank][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def random_matrix(rng, nrows, ncols, density=0.7, span=9):
    return [[rng.randint(-span, span) if rng.random() < density else 0
             for _ in range(ncols)] for _ in range(nrows)]


def as_sparse(dense):
    entries = {(i, j): v for i, row in enumerate(dense)
               for j, v in enumerate(row) if v}
    return SparseIntMatrix(len(dense), len(dense[0]) if dense else 0, entries)


# ---------------------------------------------------------------------------
# sparse matrices


def test_sparse_matrix_rejects_explicit_zero():
    with pytest.raises(ValueError):
        SparseIntMatrix(2, 2, {(0, 0): 0})


def test_sparse_matrix_rejects_out_of_range():
    with pytest.raises(ValueError):
        SparseIntMatrix(2, 2, {(2, 0): 1})


def test_matmul_and_transpose():
    a = as_sparse([[1, 2], [0, 1]])
    b = as_sparse([[1, 0], [3, 1]])
    assert a.matmul(b).to_dense() == [[7, 2], [3, 1]]
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]


# ---------------------------------------------------------------------------
# Smith normal form


def test_snf_identity():
    assert smith_normal_form(as_sparse([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).factors == (1, 1, 1)


def test_snf_single_even_entry():
    form = smith_normal_form(as_sparse([[2, 0], [0, 0]]))
    assert form.factors == (2,)
    assert form.rank == 1


def test_snf_divisibility_enforced():
    with pytest.raises(ValueError):
        SmithForm((2, 3))


def test_snf_known_torsion():
    # diag(2, 3) has invariant factors (1, 6)
    assert smith_normal_form(as_sparse([[2, 0], [0, 3]])).factors == (1, 6)


@pytest.mark.parametrize("seed", range(12))
def test_snf_matches_naive_reference(seed):
    rng = random.Random(1000 + seed)
    for _ in range(6):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 8)
        dense = random_matrix(rng, nrows, ncols)
        expected = naive_smith(dense)
        got = list(smith_normal_form(as_sparse(dense)).factors)
        assert got == expected, f"matrix {dense}"


@pytest.mark.parametrize("seed", range(8))
def test_rank_matches_fraction_reference(seed):
    rng = random.Random(2000 + seed)
    for _ in range(8):
        dense = random_matrix(rng, rng.randint(1, 9), rng.randint(1, 9))
        assert rank_z(as_sparse(dense)) == fraction_rank(dense)


@pytest.mark.parametrize("seed", range(4))
def test_snf_survives_large_entries(seed):
    # entry growth during elimination must stay exact
    rng = random.Random(3000 + seed)
    dense = random_matrix(rng, 5, 5, density=1.0, span=10 ** 6)
    assert list(smith_normal_form(as_sparse(dense)).factors) == naive_smith(dense)


def test_snf_of_scaled_identity():
    dense = [[6, 0, 0], [0, 10, 0], [0, 0, 15]]
    assert smith_normal_form(as_sparse(dense)).factors == (1, 30, 30)


def test_rank_mod_p_requires_prime():
    with pytest.raises(ValueError):
        rank_mod_p(as_sparse([[1]]), 6)


def test_rank_mod_p_drops_multiples():
    m = as_sparse([[2, 4], [6, 8]])
    assert rank_mod_p(m, 2) == 0
    assert rank_mod_p(m, 3) == 2
    assert rank_z(m) == 2


def test_int_echelon_incremental():
    ech = IntEchelon()
    assert ech.add({0: 2, 1: 4})
    assert not ech.add({0: 1, 1: 2})   # same line over Q
    assert ech.add({1: 1})
    assert ech.rank == 2


# ---------------------------------------------------------------------------
# simplicial complexes


def hollow_triangle():
    return SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])


def test_boundary_of_hollow_triangle():
    c = hollow_triangle()
    d1 = c.boundary_matrix(1)
    assert (d1.nrows, d1.ncols) == (3, 3)
    # every edge column has one +1 and one -1
    cols = {}
    for (r, col), v in d1.entries.items():
        cols.setdefault(col, []).append(v)
    assert all(sorted(vals) == [-1, 1] for vals in cols.values())


def test_snf_of_circle_boundary():
    form = smith_normal_form(hollow_triangle().boundary_matrix(1))
    assert form.factors == (1, 1)
    res = hollow_triangle().homology(1)
    assert (res.betti, res.torsion) == (1, ())


def test_single_simplex_boundary_signs():
    c = SimplicialComplex.from_facets([(0, 1, 2, 3)])
    d3 = c.boundary_matrix(3)
    assert d3.ncols == 1 and d3.nnz == 4
    # row index of the face omitting position p is 3 - p, so the signs
    # (-1)^p read in row order come out reversed
    signs = [v for (_, col), v in sorted(d3.entries.items())]
    assert signs == [-1, 1, -1, 1]


@pytest.mark.parametrize("facets", [
    [(0, 1, 2)],
    [(0, 1, 2), (1, 2, 3), (0, 2, 3)],
    [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
     (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5)],
])
def test_boundary_squares_to_zero(facets):
    c = SimplicialComplex.from_facets(facets)
    for q in range(2, c.dim + 1):
        assert c.boundary_matrix(q - 1).matmul(c.boundary_matrix(q)).is_zero()


def projective_plane():
    # minimal 6-vertex triangulation
    return SimplicialComplex.from_facets([
        (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
        (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5)])


def test_projective_plane_homology():
    rp2 = projective_plane()
    h0, h1, h2 = (rp2.homology(q) for q in range(3))
    assert (h0.betti, h0.torsion) == (1, ())
    assert (h1.betti, h1.torsion) == (0, (2,))
    assert (h2.betti, h2.torsion) == (0, ())


def test_projective_plane_mod_p():
    rp2 = projective_plane()
    assert rp2.homology(1, coeff=2).betti == 1
    assert rp2.homology(2, coeff=2).betti == 1
    assert rp2.homology(1, coeff=3).betti == 0


def test_universal_coefficients_rank_form():
    # rank over Z/p = betti + p-torsion here + p-torsion one degree down
    rp2 = projective_plane()
    for q in range(3):
        integral = rp2.homology(q)
        below = rp2.homology(q - 1) if q else None
        for p in (2, 3, 5):
            t_here = sum(1 for t in integral.torsion if t % p == 0)
            t_below = sum(1 for t in below.torsion if t % p == 0) if below else 0
            assert rp2.homology(q, coeff=p).betti == integral.betti + t_here + t_below


@pytest.mark.parametrize("p", [2, 3])
def test_euler_characteristic_consistency(p):
    for c in (hollow_triangle(), projective_plane(),
              SimplicialComplex.from_facets([(0, 1, 2, 3)])):
        chi = c.euler_characteristic()
        assert chi == sum((-1) ** q * c.homology(q, coeff=p).betti
                          for q in range(c.dim + 1))
        assert chi == sum((-1) ** q * c.homology(q).betti
                          for q in range(c.dim + 1))


def test_homology_rejects_bad_degree():
    with pytest.raises(DegreeError):
        hollow_triangle().homology(5)
    with pytest.raises(DegreeError):
        hollow_triangle().boundary_matrix(0)


def test_homology_result_field_torsion_rejected():
    with pytest.raises(ValueError):
        HomologyResult(1, 0, (2,), "Z/2")


def test_complex_requires_closure():
    with pytest.raises(ValueError):
        SimplicialComplex({0: [(0,), (1,)], 1: [(0, 2)]})


def test_complex_rejects_duplicates():
    with pytest.raises(ValueError):
        SimplicialComplex({0: [(0,), (0,)]})


def test_json_round_trip():
    c = projective_plane()
    again = SimplicialComplex.from_json(c.to_json())
    assert again.simplices == c.simplices


def test_components():
    c = SimplicialComplex.from_facets([(0, 1), (2, 3), (4,)])
    assert c.components() == [frozenset({0, 1}), frozenset({2, 3}), frozenset({4})]


def test_homology_of_chain_handles_missing_boundaries():
    res = homology_of_chain(3, None, None, 0)
    assert res.betti == 3
    assert res.group() == "Z^3"
