"""Independent cross-checks: brute-force generator oracles, Hilbert series identities,
formula-vs-Hochster sweeps and the random fuzz suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

from .betti import (
    InvariantBetti,
    _bitmask_adjacency,
    _complex_on,
    closed_form_betti,
    hochster_betti,
    invariant_ring_betti,
    linear_strand_betti,
    path_cycle_betti,
)
from .core import WeightSystem, divides
from .invariants import GeneratorSet, expected_relation_count, pi
from .simplicial import (
    Graph,
    build_Xs,
    clique_complex,
    complement,
    reduced_homology_dims,
)


def monomials_of_degree(nvars: int, d: int) -> Iterator[tuple[int, ...]]:
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def invariant_monomials(ws: WeightSystem, max_degree: int) -> list[tuple[int, ...]]:
    return [mon for d in range(max_degree + 1)
            for mon in monomials_of_degree(ws.dim, d) if ws.is_invariant(mon)]


def brute_force_generators(ws: WeightSystem, max_degree: Optional[int] = None) -> set:
    """Invariant monomials != 1 not divisible by a smaller invariant monomial != 1.

    Minimal generators have degree <= n, so that is the default search bound.
    """
    bound = ws.n if max_degree is None else max_degree
    inv = [m for m in invariant_monomials(ws, bound) if any(m)]
    return {m for m in inv if not any(q != m and divides(q, m) for q in inv)}


def generated_monomials(images, nvars: int, max_degree: int) -> set:
    seen = {(0,) * nvars}
    frontier = list(seen)
    while frontier:
        nxt = []
        for mon in frontier:
            for g in images:
                prod_ = tuple(a + b for a, b in zip(mon, g))
                if sum(prod_) <= max_degree and prod_ not in seen:
                    seen.add(prod_)
                    nxt.append(prod_)
        frontier = nxt
    return seen


def generator_oracle(gens: GeneratorSet, max_degree: int) -> dict:
    """Compare ``gens`` with brute force: same minimal set, and it generates everything."""
    ws = gens.weights
    images = set(gens.images)
    minimal = brute_force_generators(ws)
    invariants = set(invariant_monomials(ws, max_degree))
    generated = generated_monomials(gens.images, ws.dim, max_degree)
    return {"minimal_set_matches": images == minimal,
            "generates_all": generated == invariants}


def staircase_ok(gens: GeneratorSet) -> bool:
    """Monotonicity and endpoint conditions of each staircase, invariance, antichain."""
    ws = gens.weights
    imgs = gens.images
    if not all(ws.is_invariant(g) and any(g) for g in imgs):
        return False
    if any(a != b and divides(a, b) for a in imgs for b in imgs):
        return False
    n = ws.n
    if not gens.is_3d:
        b, c = ws.weights
        a_ex = [p for p, _ in imgs]
        b_ex = [q for _, q in imgs]
        return (all(x > y for x, y in zip(a_ex, a_ex[1:]))
                and all(x < y for x, y in zip(b_ex, b_ex[1:]))
                and a_ex[0] == n // gcd(n, b) and b_ex[-1] == n // gcd(n, c)
                and a_ex[-1] == 0 == b_ex[0])
    if imgs[0] != (1, 1, 1):
        return False
    r, s, t = gens.blocks
    blocks = [imgs[1:r + 1], imgs[r + 1:r + s + 1], imgs[r + s + 1:]]
    # (first, second) exponent positions for u = x^a y^b, v = y^c z^d, w = z^e x^f
    for block, (p, q), zero in zip(blocks, [(0, 1), (1, 2), (2, 0)], [2, 0, 1]):
        if not block or any(g[zero] for g in block):
            return False
        first = [g[p] for g in block]
        second = [g[q] for g in block]
        if not (all(x > y for x, y in zip(first, first[1:])) and first[-1] != 0
                and second[0] == 0 and all(x < y for x, y in zip(second, second[1:]))):
            return False
    return True


def relation_checks(result: InvariantBetti) -> dict:
    gens, rels = result.gens, result.relations
    ring = gens.ring
    exact = all(pi(r.lead, gens) == pi(r.tail, gens) for r in rels)
    same_degree = all(ring.wdeg(r.lead) == ring.wdeg(r.tail) for r in rels)
    tails_ok = all(sum(r.tail) >= 2 for r in rels)
    leads = [r.lead for r in rels]
    distinct = len(set(leads)) == len(leads)
    # distinct quadratic leads over tails of degree >= 2 make the set minimal;
    # tails may still contain other leads (R_{1,5} tail U_2U_4 is the lead of R_{2,4})
    minimal = distinct and tails_ok and not any(
        l != r.lead and divides(l, r.lead) for r in rels for l in leads)
    return {
        "count": len(rels) == expected_relation_count(gens),
        "exact": exact,
        "homogeneous": same_degree,
        "tails_degree_ge_2": tails_ok,
        "leads_distinct": distinct,
        "minimal": minimal,
    }


def _series_mul(a: list[int], b: list[int], top: int) -> list[int]:
    out = [0] * (top + 1)
    for i, x in enumerate(a[:top + 1]):
        if x:
            for j, y in enumerate(b[:top + 1 - i]):
                out[i + j] += x * y
    return out


def _geometric(w: int, top: int, start: int = 0) -> list[int]:
    """t^start / (1 - t^w) truncated at degree ``top``."""
    out = [0] * (top + 1)
    for d in range(start, top + 1, w):
        out[d] = 1
    return out


def invariant_counts(ws: WeightSystem, top: int) -> list[int]:
    counts = [0] * (top + 1)
    for mon in invariant_monomials(ws, top):
        counts[sum(mon)] += 1
    return counts


def standard_monomial_counts(result: InvariantBetti, top: int) -> list[int]:
    """Monomials of the presentation ring outside the lead-term ideal, by weighted degree.

    The leads are square-free quadratics, so the standard monomials are those
    whose support is a face of the clique complex of the complement of the
    lead graph.
    """
    gens = result.gens
    offset = 1 if gens.is_3d else 0
    weights = list(gens.ring.grading[offset:])
    m = len(weights)
    lead_edges = set()
    for r in result.relations:
        sup = [k - offset for k, e in enumerate(r.lead) if e]
        if len(sup) != 2 or sum(r.lead) != 2 or min(sup) < 0:
            raise ValueError("standard monomial count needs square-free quadratic leads")
        lead_edges.add(tuple(sup))
    cx = clique_complex(complement(Graph.on(m, lead_edges)))
    total = [0] * (top + 1)
    total[0] = 1
    for k in range(0, cx.dim + 1):
        for face in cx.faces(k):
            series = [1] + [0] * top
            for v in face:
                series = _series_mul(series, _geometric(weights[v], top, weights[v]), top)
            total = [a + b for a, b in zip(total, series)]
    if gens.is_3d:
        total = _series_mul(total, _geometric(gens.ring.grading[0], top), top)
    return total


def betti_numerator(result: InvariantBetti, top: int) -> list[int]:
    out = [0] * (top + 1)
    for (i, j), r in result.weighted.entries.items():
        if j <= top:
            out[j] += (-1) ** i * r
    return out


def hilbert_check(result: InvariantBetti, top: int) -> dict:
    """Both Hilbert series identities up to degree ``top``.

    ``standard_basis``: invariant monomial counts equal standard monomial
    counts of the presentation. ``betti``: the alternating Betti sum equals
    the invariant Hilbert series times prod(1 - t^deg g).
    """
    counts = invariant_counts(result.gens.weights, top)
    rhs = counts
    for g in result.gens.gens:
        factor = [0] * (top + 1)
        factor[0] = 1
        if g.degree <= top:
            factor[g.degree] = -1
        rhs = _series_mul(rhs, factor, top)
    return {
        "standard_basis": counts == standard_monomial_counts(result, top),
        "betti": betti_numerator(result, top) == rhs,
    }


def field_independence(g: Graph, char: int = 2) -> bool:
    """Reduced homology over Q and F_char agree for every induced complement complex."""
    verts, cadj = _bitmask_adjacency(complement(g))
    for mask in range(1 << g.m):
        cx = _complex_on(mask, verts, cadj)
        if reduced_homology_dims(cx, 0) != reduced_homology_dims(cx, char):
            return False
    return True


@dataclass
class SweepRecord:
    m: int
    s: int
    closed_form: dict
    hochster: dict
    linear_strand_ok: bool
    subset_count_ok: bool
    field_independent: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return (self.closed_form == self.hochster and self.linear_strand_ok
                and self.subset_count_ok and self.field_independent is not False)


def sweep_one(m: int, s: int, check_fields: bool = False) -> SweepRecord:
    g = build_Xs(m, s)
    h = hochster_betti(g)
    c = closed_form_betti(m, s)
    strand = linear_strand_betti(g)
    strand_ok = all(h[(i, i + 2)] == v for i, v in strand.items())
    fast = path_cycle_betti(g) if not (m == 3 and s == 3) else h
    rec = SweepRecord(m, s, c.entries, h.entries, strand_ok, fast.entries == h.entries)
    if check_fields:
        rec.field_independent = field_independence(g)
    return rec


def sweep(m_range, s_range=None, check_fields: bool = False, jobs: int = 1) -> list[SweepRecord]:
    pairs = [(m, s) for m in m_range
             for s in (range(m + 1) if s_range is None else s_range) if s <= m]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(sweep_one, *zip(*pairs), [check_fields] * len(pairs)))
    return [sweep_one(m, s, check_fields) for m, s in pairs]


@dataclass
class SuiteRecord:
    n: int
    weights: tuple
    m: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"n": self.n, "weights": list(self.weights), "m": self.m,
                "ok": self.ok, "checks": self.checks}


def full_suite(ws: WeightSystem, degree_bound: Optional[int] = None,
               oracle_limit: int = 12) -> SuiteRecord:
    """Run every structural invariant on one weight system."""
    top = 3 * ws.n if degree_bound is None else degree_bound
    result = invariant_ring_betti(ws)
    checks = {"staircase": staircase_ok(result.gens),
              "groebner": result.groebner.passed,
              "pipeline": result.ok}
    checks.update(relation_checks(result))
    checks.update({f"hilbert_{k}": v for k, v in hilbert_check(result, top).items()})
    if ws.n <= oracle_limit:
        checks.update(generator_oracle(result.gens, top))
    return SuiteRecord(ws.n, ws.weights, result.gens.m, checks)


def random_weight_systems(seed: int, count_2d: int, count_3d: int,
                          max_n_2d: int = 30, max_n_3d: int = 20) -> list[WeightSystem]:
    rng = random.Random(seed)
    out = []
    for _ in range(count_2d):
        n = rng.randint(3, max_n_2d)
        out.append(WeightSystem(n, (rng.randint(1, n - 1), rng.randint(1, n - 1))))
    while len(out) < count_2d + count_3d:
        n = rng.randint(3, max_n_3d)
        b, c = rng.randint(1, n - 1), rng.randint(1, n - 1)
        d = (-b - c) % n
        if d:
            out.append(WeightSystem(n, (b, c, d)))
    return out


def fuzz(seed: int = 0, count_2d: int = 100, count_3d: int = 50, jobs: int = 1) -> list[SuiteRecord]:
    systems = random_weight_systems(seed, count_2d, count_3d)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(full_suite, systems))
    return [full_suite(ws) for ws in systems]
