"""Reference-value verification suite.

Every quantitative claim the toolkit reproduces is registered here as a
claim with an exact expected value; the suite recomputes each one and
reports pass or fail. Checks are exact integer comparisons throughout.

Budgets: "small" runs everything with at most 5 particles and 5 leaves,
"full" adds the larger boards (6 and 7 on a side) and the 6-particle
generation check.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import config_complex as cc
from . import fio
from . import spectral
from .nerve import NerveComplex, nerve, star_cover, star_cover_nerve, star_intersection

SCHEMA_VERSION = 1


@dataclass
class VerificationRecord:
    claim_id: str
    locator: str
    expected: object
    computed: object
    status: str  # "pass" | "fail" | "skipped"
    seconds: float


@dataclass(frozen=True)
class Claim:
    claim_id: str
    locator: str
    budget: str  # "small" | "full"
    run: Callable[["Context"], tuple[object, object]]


class Context:
    """Shared cache so claims reuse built complexes and homology results."""

    def __init__(self) -> None:
        self._complexes: dict[tuple[int, int], cc.ConfigComplex] = {}
        self._nerves: dict[tuple[int, int], NerveComplex] = {}
        self._homology: dict = {}
        self._generation: dict[tuple[int, int], spectral.GenerationReport] = {}

    def complex(self, n: int, k: int) -> cc.ConfigComplex:
        key = (n, k)
        if key not in self._complexes:
            self._complexes[key] = cc.build_complex(n, k)
        return self._complexes[key]

    def nerve(self, m: int, k: int) -> NerveComplex:
        key = (m, k)
        if key not in self._nerves:
            self._nerves[key] = nerve(m, k)
        return self._nerves[key]

    def nerve_homology(self, m: int, k: int, q: int, coeff: int | None = None):
        key = (m, k, q, coeff)
        if key not in self._homology:
            self._homology[key] = self.nerve(m, k).homology(q, coeff)
        return self._homology[key]

    def generation(self, m: int, k: int) -> spectral.GenerationReport:
        key = (m, k)
        if key not in self._generation:
            self._generation[key] = spectral.generation_check(
                m, k, complex=self.complex(m, k))
        return self._generation[key]


def _claim_rank_law(n: int, k: int, budget: str) -> Claim:
    def run(ctx: Context):
        expected = [1, cc.ghrist_rank(n, k)]
        computed = list(cc.betti(ctx.complex(n, k)))
        return expected, computed
    return Claim(f"C01.rank-law.n{n}.k{k}",
                 f"b0, b1 of the {n}-particle complex on {k} leaves "
                 f"against the tree braid rank formula",
                 budget, run)


def _claim_nerve_h1(m: int, k: int, expected_rank: int, budget: str) -> Claim:
    def run(ctx: Context):
        return expected_rank, ctx.nerve_homology(m, k, 1).betti
    return Claim(f"C03.nerve-h1.m{m}.k{k}",
                 f"b1 of the {m} x {k} board complex", budget, run)


def _claim_nerve_h2(m: int, k: int, expected_rank: int | None, budget: str,
                    nonzero: bool = False) -> Claim:
    def run(ctx: Context):
        b2 = ctx.nerve_homology(m, k, 2).betti
        if nonzero:
            return True, b2 > 0
        return expected_rank, b2
    what = "nonzero" if nonzero else str(expected_rank)
    return Claim(f"C04.nerve-h2.m{m}.k{k}",
                 f"b2 of the {m} x {k} board complex ({what})", budget, run)


def _claim_mod2(m: int, k: int, expected_rank: int, budget: str) -> Claim:
    def run(ctx: Context):
        return expected_rank, ctx.nerve_homology(m, k, 2, coeff=2).betti
    return Claim(f"C05.nerve-h2-mod2.m{m}.k{k}",
                 f"rank of H2 of the {m} x {k} board complex over Z/2",
                 budget, run)


def _claim_generation(m: int, k: int, expected_coker: int, budget: str) -> Claim:
    def run(ctx: Context):
        return expected_coker, ctx.generation(m, k).cokernel_rank
    return Claim(f"C06.generation.m{m}.k{k}",
                 f"cokernel rank of inserted first homology at {m} particles, "
                 f"{k} leaves", budget, run)


def _claim_filtration(m: int, k: int, budget: str) -> Claim:
    def run(ctx: Context):
        rep = ctx.generation(m, k)
        beta1 = ctx.nerve_homology(m, k, 1).betti if min(m, k) >= 2 else 0
        return rep.total_rank, rep.image_rank + beta1
    return Claim(f"C07.filtration.m{m}.k{k}",
                 f"image rank plus nerve b1 equals the full rank at "
                 f"{m} particles, {k} leaves", budget, run)


def _claim_star_cover(m: int, k: int, budget: str,
                      check_intersections: bool) -> Claim:
    def run(ctx: Context):
        nv = ctx.nerve(m, k)
        stars = star_cover(nv, 1)
        issues: list[str] = []
        for s in stars:
            profile = [s.complex.homology(q) for q in range(s.complex.dim + 1)]
            if [h.betti for h in profile] != [1] + [0] * s.complex.dim \
                    or any(h.torsion for h in profile):
                issues.append(f"star {s.particle} not contractible")
        if check_intersections:
            for size in (2, 3):
                for chosen in combinations(stars, size):
                    inter = star_intersection(list(chosen), nv)
                    reference = ctx.nerve(m - size, k - 1).complex
                    for q in range(max(inter.dim, reference.dim) + 1):
                        a = inter.homology(q) if q <= inter.dim else None
                        b = reference.homology(q) if q <= reference.dim else None
                        da = (a.betti, a.torsion) if a else (0, ())
                        db = (b.betti, b.torsion) if b else (0, ())
                        if da != db:
                            issues.append(
                                f"intersection {[s.particle for s in chosen]} "
                                f"degree {q}: {da} != {db}")
        cech = star_cover_nerve(nv, 1)
        for q in (1, 2):
            res = cech.homology(q)
            if res.betti or res.torsion:
                issues.append(f"star-cover nerve H{q} = {res.group()}")
        return [], issues
    return Claim(f"C09.star-cover.m{m}.k{k}",
                 f"closed-star cover of the {m} x {k} board: contractible "
                 f"stars, intersection homology, vanishing cover-nerve H1/H2",
                 budget, run)


def _claim_fio() -> Claim:
    def run(ctx: Context):
        issues: list[str] = []
        for d in (1, 2, 3):
            for n in range(0, 5):
                for m in range(n, 5):
                    count = fio.count_morphisms(n, m, d)
                    enum = len(fio.enumerate_morphisms(n, m, d))
                    if not (count.morphisms == enum == count.free_module_dimension):
                        issues.append(f"count mismatch at n={n} m={m} d={d}")
        for d in (1, 2):
            homs = {
                (a, b): fio.enumerate_morphisms(a, b, d)
                for a in range(0, 4) for b in range(a, 4)
            }
            for (a, b), fs in homs.items():
                for f in fs:
                    sigma, colors = fio.decompose(f)
                    if fio.recompose(sigma, colors, f.n, f.d) != f:
                        issues.append(f"round-trip failed for {f.to_json()}")
            for a in range(0, 4):
                for b in range(a, 4):
                    for c in range(b, 4):
                        for e in range(c, 4):
                            for f in homs[(a, b)]:
                                for g in homs[(b, c)]:
                                    gf = fio.compose(g, f)
                                    for h in homs[(c, e)]:
                                        if fio.compose(h, gf) != fio.compose(
                                                fio.compose(h, g), f):
                                            issues.append(
                                                f"associativity failed at "
                                                f"({a},{b},{c},{e}) d={d}")
        return [], issues
    return Claim("C10.fio-calculus",
                 "counting, decomposition round-trips and associativity of "
                 "colored-ordered injections at small sizes",
                 "small", run)


def _claim_fio_action() -> Claim:
    def run(ctx: Context):
        issues: list[str] = []
        complexes = {size: ctx.complex(size, 3) for size in range(0, 4)}
        homs = {
            (a, b): fio.enumerate_morphisms(a, b, 3)
            for a in range(0, 4) for b in range(a, 4)
        }
        for a in range(0, 2):
            for b in range(a, 4):
                for c in range(b, 4):
                    for f in homs[(a, b)]:
                        act_f = fio.act(f, complexes)
                        for g in homs[(b, c)]:
                            lhs = fio.act(fio.compose(g, f), complexes)
                            rhs = fio.act(g, complexes).compose(act_f)
                            if lhs.vertex_map != rhs.vertex_map:
                                issues.append(
                                    f"functoriality failed: {g.to_json()} o "
                                    f"{f.to_json()}")
        # insertion axioms on the 3-leaf complexes, up to 3 particles
        for n in range(0, 4):
            source = ctx.complex(n, 3)
            for j in range(1, 4):
                for sigma in _permutations_of(n):
                    extended = sigma + (n + 1,)
                    for s in source.vertices:
                        lhs = cc.insert_state(cc.relabel_state(s, sigma), j, n + 1)
                        rhs = cc.relabel_state(cc.insert_state(s, j, n + 1), extended)
                        if lhs != rhs:
                            issues.append(f"insertion does not commute at n={n}")
                for l in range(1, 4):
                    if l == j:
                        continue
                    swap = tuple(range(1, n + 1)) + (n + 2, n + 1)
                    for s in source.vertices:
                        lhs = cc.relabel_state(
                            cc.insert_state(cc.insert_state(s, j, n + 1), l, n + 2),
                            swap)
                        rhs = cc.insert_state(cc.insert_state(s, l, n + 1), j, n + 2)
                        if lhs != rhs:
                            issues.append(f"insertions ordered at n={n} j={j} l={l}")
        return [], issues
    return Claim("C10.fio-action",
                 "functoriality of the action on 3-leaf complexes and the "
                 "two insertion axioms for up to 3 particles",
                 "small", run)


def claims() -> list[Claim]:
    out: list[Claim] = []

    for k in (3, 4, 5):
        for n in range(1, 6):
            out.append(_claim_rank_law(n, k, "small"))
    out.append(_claim_rank_law(6, 3, "full"))
    out.append(_claim_rank_law(4, 7, "full"))

    def torus(ctx: Context):
        nv = ctx.nerve(4, 3)
        expected = {"cells": [12, 36, 24],
                    "homology": [[1, []], [2, []], [1, []]]}
        computed = {
            "cells": list(nv.complex.counts()),
            "homology": [[ctx.nerve_homology(4, 3, q).betti,
                          list(ctx.nerve_homology(4, 3, q).torsion)]
                         for q in range(3)],
        }
        return expected, computed
    out.append(Claim("C02.torus-nerve",
                     "cell counts and integral homology of the 4 x 3 board "
                     "complex (a torus)", "small", torus))

    for (m, k, rank, budget) in [
        (5, 3, 0, "small"), (6, 3, 0, "full"), (4, 4, 0, "small"),
        (3, 5, 0, "small"), (3, 6, 0, "full"),
        (4, 3, 2, "small"), (3, 3, 4, "small"), (3, 4, 2, "small"),
    ]:
        out.append(_claim_nerve_h1(m, k, rank, budget))

    for (m, k) in [(7, 4), (6, 5), (5, 6), (4, 7)]:
        out.append(_claim_nerve_h2(m, k, 0, "full"))
    out.append(_claim_nerve_h2(7, 3, None, "full", nonzero=True))
    out.append(_claim_nerve_h2(3, 5, 14, "small"))
    out.append(_claim_nerve_h2(3, 6, 47, "full"))

    out.append(_claim_mod2(6, 4, 5, "full"))
    out.append(_claim_mod2(5, 5, 0, "small"))

    generation_expected = {
        3: [(2, 1), (3, 4), (4, 2), (5, 0), (6, 0)],
        4: [(2, 5), (3, 2), (4, 0), (5, 0)],
        5: [(2, 11), (3, 0)],
    }
    for k, table in generation_expected.items():
        for m, coker in table:
            budget = "full" if m >= 6 else "small"
            out.append(_claim_generation(m, k, coker, budget))
            out.append(_claim_filtration(m, k, budget))

    def presentation(ctx: Context):
        expected = [[5, 14], [6, 47]]
        rows = spectral.presentation_evidence(3, [5, 6])
        computed = [[m, b2] for (m, b2, _) in rows]
        return expected, computed
    out.append(Claim("C08.presentation-k3",
                     "b2 of the (n+1) x 3 board complex matches "
                     "n^3 - 3n^2 - n + 2 at n = 4, 5", "full", presentation))

    out.append(_claim_star_cover(5, 4, "small", check_intersections=False))
    out.append(_claim_star_cover(6, 4, "full", check_intersections=True))
    out.append(_claim_star_cover(5, 5, "small", check_intersections=True))

    out.append(_claim_fio())
    out.append(_claim_fio_action())

    out.sort(key=lambda c: c.claim_id)
    return out


def _permutations_of(n: int):
    from itertools import permutations as perms
    return [tuple(p) for p in perms(range(1, n + 1))]


def run_suite(budget: str = "small",
              claim_list: list[Claim] | None = None) -> list[VerificationRecord]:
    """Run all claims within budget; failures never abort the suite."""
    if budget not in ("small", "full"):
        raise ValueError(f"unknown budget {budget!r}")
    if claim_list is None:
        claim_list = claims()
    ctx = Context()
    records: list[VerificationRecord] = []
    for claim in claim_list:
        if budget == "small" and claim.budget == "full":
            records.append(VerificationRecord(
                claim.claim_id, claim.locator, None, None, "skipped", 0.0))
            continue
        start = time.perf_counter()
        try:
            expected, computed = claim.run(ctx)
            status = "pass" if expected == computed else "fail"
        except Exception as exc:  # a broken claim is a failed claim
            expected, computed, status = None, f"error: {exc}", "fail"
        records.append(VerificationRecord(
            claim.claim_id, claim.locator, expected, computed, status,
            time.perf_counter() - start))
    return records


def all_pass(records: list[VerificationRecord]) -> bool:
    return all(r.status in ("pass", "skipped") for r in records)


def report_json(records: list[VerificationRecord], budget: str) -> str:
    """Deterministic report; wall times are deliberately left out so the
    same budget always produces byte-identical files."""
    payload = {
        "schema": SCHEMA_VERSION,
        "budget": budget,
        "records": [
            {
                "claim_id": r.claim_id,
                "locator": r.locator,
                "expected": r.expected,
                "computed": r.computed,
                "status": r.status,
            }
            for r in sorted(records, key=lambda r: r.claim_id)
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
