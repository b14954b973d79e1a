"""Exact homology of finite complexes over Z and Z/p.

Boundary matrices are kept sparse with arbitrary-precision integer entries.
Betti numbers come from ranks over Q (computed by exact integer elimination,
never floating point), torsion from the Smith normal form of the next
boundary map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
import json


class DegreeError(ValueError):
    """Requested homological degree is outside the complex's range."""


# ---------------------------------------------------------------------------
# sparse integer matrices


@dataclass
class SparseIntMatrix:
    """Integer matrix stored as {(row, col): value} with no explicit zeros."""

    nrows: int
    ncols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (r, c), v in self.entries.items():
            if v == 0:
                raise ValueError(f"explicit zero stored at {(r, c)}")
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise ValueError(f"entry {(r, c)} outside {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: dict[int, dict[int, int]]) -> SparseIntMatrix:
        entries = {(r, c): v for r, row in rows.items() for c, v in row.items() if v}
        return cls(nrows, ncols, entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def rows(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def transpose(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.ncols, self.nrows,
                               {(c, r): v for (r, c), v in self.entries.items()})

    def matmul(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict[int, int]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        acc: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, {}).items():
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        return SparseIntMatrix(self.nrows, other.ncols,
                               {k: v for k, v in acc.items() if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


# ---------------------------------------------------------------------------
# exact elimination


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


class IntEchelon:
    """Incremental integer row echelon; counts rank over Q.

    Rows are reduced against stored pivot rows using exact integer
    combinations, so the pivot count equals the rank of the row span over Q.
    Rows are normalized by their content to keep entries small; only the
    rank and the span are meaningful, not the stored lattice.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict[int, int]) -> bool:
        """Reduce `row` against the echelon; return True if the rank grew."""
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            pivot = self.pivots.get(c)
            if pivot is None:
                g = _content(row)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                self.pivots[c] = row
                return True
            a, b = pivot[c], row[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            merged = {k: ma * v for k, v in row.items()}
            for k, v in pivot.items():
                w = merged.get(k, 0) - mb * v
                if w:
                    merged[k] = w
                else:
                    merged.pop(k, None)
            row = merged
        return False


def rank_z(matrix: SparseIntMatrix) -> int:
    """Rank over Q (equivalently over Z modulo torsion) by integer echelon."""
    ech = IntEchelon()
    for r, row in sorted(matrix.rows().items()):
        ech.add(row)
    return ech.rank


def rank_mod_p(matrix: SparseIntMatrix, p: int) -> int:
    """Rank of the matrix over the prime field Z/p."""
    _require_prime(p)
    pivots: dict[int, dict[int, int]] = {}
    for r in sorted(matrix.rows()):
        row = {c: v % p for c, v in matrix.rows()[r].items() if v % p}
        while row:
            c = min(row)
            pivot = pivots.get(c)
            if pivot is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in row.items()}
                break
            b = row[c]
            merged = dict(row)
            for k, v in pivot.items():
                w = (merged.get(k, 0) - b * v) % p
                if w:
                    merged[k] = w
                else:
                    merged.pop(k, None)
            row = merged
    return len(pivots)


def _require_prime(p: int) -> None:
    if p < 2 or any(p % f == 0 for f in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix, each > 0."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"broken divisibility chain {self.factors}")
        if any(f <= 0 for f in self.factors):
            raise ValueError("invariant factors must be positive")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)


def smith_normal_form(matrix: SparseIntMatrix) -> SmithForm:
    """Invariant factors over Z, exact arithmetic throughout.

    Pivots are chosen Markowitz-style with a strong preference for +-1
    entries; each pivot is gcd-reduced until it divides its row and column,
    then eliminated by unimodular operations. The collected diagonal is
    normalized into a divisibility chain at the end (prime by prime), which
    is equivalent to the usual global divisibility pass.
    """
    diag = _diagonalize(matrix)
    return SmithForm(_chain_normalize(diag))


def _diagonalize(matrix: SparseIntMatrix) -> list[int]:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in matrix.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def set_entry(r: int, c: int, v: int) -> None:
        row = rows.get(r)
        if v:
            if row is None:
                row = rows[r] = {}
            row[c] = v
            cols.setdefault(c, set()).add(r)
        elif row is not None and c in row:
            del row[c]
            if not row:
                del rows[r]
            s = cols[c]
            s.discard(r)
            if not s:
                del cols[c]

    def row_op(target: int, source: int, mult: int) -> None:
        # row[target] -= mult * row[source]
        for c, v in list(rows[source].items()):
            set_entry(target, c, rows.get(target, {}).get(c, 0) - mult * v)

    def pick_pivot() -> tuple[int, int]:
        best_key = None
        best = (0, 0)
        for r, row in rows.items():
            lr = len(row) - 1
            for c, v in row.items():
                if abs(v) == 1:
                    key = (0, lr * (len(cols[c]) - 1))
                    if key == (0, 0):
                        return (r, c)
                else:
                    key = (1, abs(v), lr * (len(cols[c]) - 1))
                if best_key is None or key < best_key:
                    best_key, best = key, (r, c)
        return best

    diag: list[int] = []
    while rows:
        pr, pc = pick_pivot()
        # gcd-reduce until the pivot divides its whole row and column
        while True:
            pv = rows[pr][pc]
            bad_r = next((r for r in cols[pc] if r != pr and rows[r][pc] % pv), None)
            if bad_r is not None:
                row_op(bad_r, pr, rows[bad_r][pc] // pv)
                pr = bad_r  # remainder is strictly smaller, becomes the pivot
                continue
            bad_c = next((c for c in rows[pr] if c != pc and rows[pr][c] % pv), None)
            if bad_c is not None:
                # column op: col[bad_c] -= q * col[pc]
                q = rows[pr][bad_c] // pv
                for r in list(cols[pc]):
                    set_entry(r, bad_c, rows.get(r, {}).get(bad_c, 0) - q * rows[r][pc])
                pc = bad_c
                continue
            break
        pv = rows[pr][pc]
        for r in list(cols[pc]):
            if r != pr:
                row_op(r, pr, rows[r][pc] // pv)
        # column clears touch only the pivot row now; drop it
        for c in list(rows[pr]):
            set_entry(pr, c, 0)
        diag.append(abs(pv))
    return diag


def _chain_normalize(diag: list[int]) -> tuple[int, ...]:
    """Sort a diagonal multiset into a divisibility chain, prime by prime."""
    per_prime: dict[int, list[int]] = {}
    for d in diag:
        x = d
        f = 2
        while f * f <= x:
            e = 0
            while x % f == 0:
                x //= f
                e += 1
            if e:
                per_prime.setdefault(f, []).append(e)
            f += 1
        if x > 1:
            per_prime.setdefault(x, []).append(1)
    r = len(diag)
    factors = [1] * r
    for p, exps in per_prime.items():
        for i, e in enumerate(sorted(exps)):
            factors[r - len(exps) + i] *= p ** e
    return tuple(factors)


# ---------------------------------------------------------------------------
# homology results


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    betti: int
    torsion: tuple[int, ...]
    coeff: str  # "Z" or "Z/p"

    def __post_init__(self) -> None:
        if self.coeff != "Z" and self.torsion:
            raise ValueError("torsion must be empty over a field")

    def group(self) -> str:
        """Human-readable group, e.g. 'Z^2 + Z/3'."""
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology_of_chain(
    num_cells: int,
    boundary_in: SparseIntMatrix | None,
    boundary_out: SparseIntMatrix | None,
    degree: int,
    coeff: int | None = None,
) -> HomologyResult:
    """Homology of one degree of a chain complex given its two boundary maps.

    `boundary_in` is the map out of this degree (d_q), `boundary_out` the map
    into it from one degree up (d_{q+1}); either may be None when absent.
    Over Z the torsion is read off the invariant factors of d_{q+1}.
    """
    if coeff is None:
        rk_out = rank_z(boundary_in) if boundary_in is not None else 0
        if boundary_out is not None and not boundary_out.is_zero():
            snf = smith_normal_form(boundary_out)
            rk_in, torsion = snf.rank, snf.torsion
        else:
            rk_in, torsion = 0, ()
        return HomologyResult(degree, num_cells - rk_out - rk_in, torsion, "Z")
    _require_prime(coeff)
    rk_out = rank_mod_p(boundary_in, coeff) if boundary_in is not None else 0
    rk_in = rank_mod_p(boundary_out, coeff) if boundary_out is not None else 0
    return HomologyResult(degree, num_cells - rk_out - rk_in, (), f"Z/{coeff}")


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """Finite abstract simplicial complex with totally ordered vertex ids.

    Simplices are stored per dimension as ascending vertex tuples; the
    ascending order fixes the orientation used in boundary matrices.
    """

    def __init__(self, simplices: dict[int, list[tuple[int, ...]]]):
        self.simplices: dict[int, tuple[tuple[int, ...], ...]] = {}
        for dim, cells in simplices.items():
            uniq = sorted(set(cells))
            if len(uniq) != len(cells):
                raise ValueError(f"duplicate {dim}-simplices")
            for s in uniq:
                if len(s) != dim + 1 or list(s) != sorted(set(s)):
                    raise ValueError(f"bad {dim}-simplex {s}")
            if uniq:
                self.simplices[dim] = tuple(uniq)
        self.vertices: tuple[int, ...] = tuple(v for (v,) in self.simplices.get(0, ()))
        self._check_closure()
        self._index: dict[int, dict[tuple[int, ...], int]] = {
            dim: {s: i for i, s in enumerate(cells)}
            for dim, cells in self.simplices.items()
        }

    def _check_closure(self) -> None:
        have = {dim: set(cells) for dim, cells in self.simplices.items()}
        for dim, cells in self.simplices.items():
            if dim == 0:
                continue
            lower = have.get(dim - 1, set())
            for s in cells:
                for pos in range(len(s)):
                    if s[:pos] + s[pos + 1:] not in lower:
                        raise ValueError(f"complex not closed under faces at {s}")

    @classmethod
    def from_facets(cls, facets: list[tuple[int, ...]]) -> SimplicialComplex:
        """Build the closure of a list of maximal (or any) simplices."""
        by_dim: dict[int, set[tuple[int, ...]]] = {}
        for f in facets:
            f = tuple(sorted(set(f)))
            for size in range(1, len(f) + 1):
                for face in combinations(f, size):
                    by_dim.setdefault(size - 1, set()).add(face)
        return cls({d: sorted(s) for d, s in by_dim.items()})

    @property
    def dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.simplices.get(q, ())) for q in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.counts()))

    def index(self, dim: int) -> dict[tuple[int, ...], int]:
        return self._index.get(dim, {})

    def boundary_matrix(self, q: int) -> SparseIntMatrix:
        """d_q with rows the (q-1)-simplices, columns the q-simplices.

        The entry for (face, simplex) is (-1)^position where the face omits
        the position-th vertex of the ascending simplex.
        """
        if q < 1 or q > self.dim:
            raise DegreeError(f"degree {q} out of range 1..{self.dim}")
        rows_index = self.index(q - 1)
        entries: dict[tuple[int, int], int] = {}
        for c, s in enumerate(self.simplices[q]):
            for pos in range(len(s)):
                r = rows_index[s[:pos] + s[pos + 1:]]
                entries[(r, c)] = 1 if pos % 2 == 0 else -1
        return SparseIntMatrix(len(self.simplices[q - 1]), len(self.simplices[q]), entries)

    def homology(self, q: int, coeff: int | None = None) -> HomologyResult:
        if q < 0 or q > self.dim:
            raise DegreeError(f"degree {q} out of range 0..{self.dim}")
        d_q = self.boundary_matrix(q) if q >= 1 else None
        d_q1 = self.boundary_matrix(q + 1) if q + 1 <= self.dim else None
        return homology_of_chain(len(self.simplices[q]), d_q, d_q1, q, coeff)

    def betti_numbers(self, coeff: int | None = None) -> tuple[int, ...]:
        return tuple(self.homology(q, coeff).betti for q in range(self.dim + 1))

    def full_subcomplex(self, vertex_subset: set[int]) -> SimplicialComplex:
        keep = {
            dim: [s for s in cells if all(v in vertex_subset for v in s)]
            for dim, cells in self.simplices.items()
        }
        return SimplicialComplex({d: c for d, c in keep.items() if c})

    def components(self) -> list[frozenset[int]]:
        """Path components, as vertex sets, via the 1-skeleton."""
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b) in self.simplices.get(1, ()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        comps: dict[int, set[int]] = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        return sorted((frozenset(c) for c in comps.values()), key=min)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "vertices": list(self.vertices),
            "simplices": {str(d): [list(s) for s in cells]
                          for d, cells in self.simplices.items()},
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> SimplicialComplex:
        payload = json.loads(text)
        simplices = {int(d): [tuple(s) for s in cells]
                     for d, cells in payload["simplices"].items()}
        return cls(simplices)
