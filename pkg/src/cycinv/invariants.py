"""Minimal monomial generators and quadratic-lead relations for diagonal Z/n actions.

Two-dimensional actions give a single staircase of generators
``u_1 = x^{a_1}, ..., u_m = y^{b_m}``. Three-dimensional actions in SL
give ``a = xyz`` plus three such staircases glued cyclically into
``B_1, ..., B_m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Optional, Sequence

from .core import (
    GREATER,
    AmbientRing,
    Binomial,
    Monomial,
    ReductionBasis,
    ValidationError,
    WeightSystem,
    coprime,
    div,
    divides,
    make_binomial,
    mul,
    s_polynomial,
    unit,
    variable,
)


class FactorizationError(RuntimeError):
    """A relation could not be built; the construction's guarantees failed."""


@dataclass(frozen=True)
class Generator:
    name: str
    image: Monomial
    block: str

    @property
    def degree(self) -> int:
        return sum(self.image)


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered minimal generators together with their presentation ring.

    In 2D ``gens`` is ``u_1..u_m``. In 3D ``gens[0]`` is ``a = xyz`` and
    ``gens[1:]`` is the cyclic list ``B_1..B_m``; ``blocks`` is ``(r, s, t)``.
    Ring variable ``k`` maps to ``gens[k]`` in both cases.
    """

    weights: WeightSystem
    gens: tuple[Generator, ...]
    blocks: Optional[tuple[int, int, int]] = None
    ring: AmbientRing = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        grading = tuple(g.degree for g in self.gens)
        if self.is_3d:
            ring = AmbientRing(grading, "3d", self.blocks)
        else:
            ring = AmbientRing(grading, "2d")
        object.__setattr__(self, "ring", ring)

    @property
    def is_3d(self) -> bool:
        return self.weights.dim == 3

    @property
    def m(self) -> int:
        """Number of generators other than ``a``."""
        return len(self.gens) - 1 if self.is_3d else len(self.gens)

    @property
    def images(self) -> list[Monomial]:
        return [g.image for g in self.gens]

    def var_name(self, k: int) -> str:
        if self.is_3d:
            return "A" if k == 0 else f"B_{k}"
        return f"U_{k + 1}"

    def var_index(self, i: int) -> int:
        """Ring variable of the 1-based generator index used in relation names."""
        return i if self.is_3d else i - 1

    def triangles(self) -> list[list[int]]:
        """Ordered 2D staircases ``T1, T2, T3`` as lists of B indices (3D only)."""
        r, s, t = self.blocks
        m = r + s + t
        return [
            list(range(1, r + 2)),
            list(range(r + 1, r + s + 2)),
            [1] + list(range(m, r + s, -1)),
        ]


def _least_partner(a: int, b: int, c: int, n: int) -> Optional[int]:
    """Least beta >= 0 with a*b + beta*c = 0 mod n (beta >= 1 when a == 0)."""
    g = gcd(c, n)
    rhs = (-a * b) % n
    if rhs % g:
        return None
    nn = n // g
    beta = (rhs // g) * pow(c // g, -1, nn) % nn if nn > 1 else 0
    if a == 0 and beta == 0:
        beta = nn
    return beta


def staircase(n: int, b: int, c: int) -> list[tuple[int, int]]:
    """Exponent pairs of the minimal invariants ``x^p y^q``, x-exponent decreasing."""
    top = n // gcd(n, b)
    kept: list[tuple[int, int]] = []
    best = None
    for a in range(0, top + 1):
        beta = _least_partner(a, b, c, n)
        if beta is None:
            continue
        # divisible by a kept (a', beta') with a' < a iff beta' <= beta
        if best is None or beta < best:
            kept.append((a, beta))
            best = beta
    kept.reverse()
    return kept


def minimal_generators_2d(ws: WeightSystem) -> GeneratorSet:
    if ws.dim != 2:
        raise ValidationError("minimal_generators_2d needs a 2-weight system")
    b, c = ws.weights
    gens = tuple(
        Generator(f"u{k}", (p, q), "Pure2D")
        for k, (p, q) in enumerate(staircase(ws.n, b, c), start=1)
    )
    return GeneratorSet(ws, gens)


def minimal_generators_3d(ws: WeightSystem) -> GeneratorSet:
    if ws.dim != 3:
        raise ValidationError("minimal_generators_3d needs a 3-weight system")
    n = ws.n
    b, c, d = ws.weights
    # each block drops its final pure power, which opens the next block
    u = [(p, q, 0) for p, q in staircase(n, b, c)[:-1]]
    v = [(0, p, q) for p, q in staircase(n, c, d)[:-1]]
    w = [(q, 0, p) for p, q in staircase(n, d, b)[:-1]]
    gens = [Generator("a", (1, 1, 1), "A")]
    for label, block in (("T1", u), ("T2", v), ("T3", w)):
        for img in block:
            gens.append(Generator(f"b{len(gens)}", img, label))
    return GeneratorSet(ws, tuple(gens), (len(u), len(v), len(w)))


def minimal_generators(ws: WeightSystem) -> GeneratorSet:
    return minimal_generators_3d(ws) if ws.dim == 3 else minimal_generators_2d(ws)


def pi(mon: Monomial, gens: GeneratorSet) -> Monomial:
    """Image of a presentation-ring monomial in ``F[x, y(, z)]``."""
    gens.ring.check(mon)
    out = unit(gens.weights.dim)
    for e, g in zip(mon, gens.gens):
        if e:
            out = mul(out, tuple(e * x for x in g.image))
    return out


@dataclass(frozen=True)
class Factorization:
    exponents: tuple[int, ...]
    method: str  # "greedy" or "dfs"


def factor_into(target: Monomial, allowed: Sequence[Monomial]) -> Optional[Factorization]:
    """Write ``target`` as a product of ``allowed`` monomials.

    Greedy first: repeatedly divide by the allowed monomial of largest index
    that divides what is left. If that gets stuck, fall back to a depth-first
    search over exponent vectors, largest index first. Returns ``None`` when
    no factorization exists.
    """
    allowed = list(allowed)
    if any(not any(a) for a in allowed):
        raise ValueError("allowed factors must be non-constant")
    exps = [0] * len(allowed)
    rest = tuple(target)
    while any(rest):
        for k in range(len(allowed) - 1, -1, -1):
            if divides(allowed[k], rest):
                rest = div(rest, allowed[k])
                exps[k] += 1
                break
        else:
            break
    if not any(rest):
        return Factorization(tuple(exps), "greedy")

    def dfs(rest: Monomial, k: int) -> Optional[list[int]]:
        if not any(rest):
            return [0] * (k + 1)
        if k < 0:
            return None
        g = allowed[k]
        top = min(r // e for r, e in zip(rest, g) if e)
        for e in range(top, -1, -1):
            sub = dfs(tuple(r - e * x for r, x in zip(rest, g)), k - 1)
            if sub is not None:
                return sub + [e]
        return None

    found = dfs(tuple(target), len(allowed) - 1)
    if found is None:
        return None
    return Factorization(tuple(found), "dfs")


@dataclass(frozen=True)
class Relation:
    """``R_{i,j} = lead - tail`` with 1-based generator indices ``i < j``."""

    i: int
    j: int
    binomial: Binomial
    factors: dict = field(hash=False)  # ring variable -> exponent of the tail
    a_power: int = 0
    method: str = "greedy"

    @property
    def lead(self) -> Monomial:
        return self.binomial.lead

    @property
    def tail(self) -> Monomial:
        return self.binomial.tail


def _relation(gens: GeneratorSet, i: int, j: int, tail: Monomial,
              a_power: int, method: str) -> Relation:
    ring = gens.ring
    n = ring.nvars
    lead = mul(variable(gens.var_index(i), n), variable(gens.var_index(j), n))
    if pi(lead, gens) != pi(tail, gens):
        raise FactorizationError(f"R_{{{i},{j}}}: terms have different images")
    binom = make_binomial(lead, tail, ring)
    if binom is None or binom.lead != lead:
        raise FactorizationError(
            f"R_{{{i},{j}}}: {gens.var_name(gens.var_index(i))}"
            f"{gens.var_name(gens.var_index(j))} is not the lead term")
    factors = {k: e for k, e in enumerate(tail) if e}
    return Relation(i, j, binom, factors, a_power, method)


def _chain_tail(gens: GeneratorSet, chain: Sequence[int], p: int, q: int):
    """Tail ``X_{p+1} * prod X_k^{d_k}`` for positions ``p < q`` of a staircase.

    ``chain`` lists ring variables in staircase order.
    """
    imgs = gens.images
    alpha = div(mul(imgs[chain[p]], imgs[chain[q]]), imgs[chain[p + 1]])
    window = chain[p + 1:q]
    fac = factor_into(alpha, [imgs[k] for k in window])
    if fac is None:
        raise FactorizationError(
            f"no factorization of {alpha} over generators {window}")
    tail = variable(chain[p + 1], gens.ring.nvars)
    for k, e in zip(window, fac.exponents):
        if e:
            tail = mul(tail, variable(k, gens.ring.nvars, e))
    return tail, fac.method


def build_relations_2d(gens: GeneratorSet) -> list[Relation]:
    m = gens.m
    chain = list(range(m))
    rels = []
    for i, j in combinations(range(1, m + 1), 2):
        if j - i < 2:
            continue
        tail, method = _chain_tail(gens, chain, i - 1, j - 1)
        rels.append(_relation(gens, i, j, tail, 0, method))
    return rels


def cyclic_distance(i: int, j: int, m: int) -> int:
    d = abs(i - j)
    return min(d, m - d)


def build_relations_3d(gens: GeneratorSet) -> list[Relation]:
    m = gens.m
    nv = gens.ring.nvars
    tris = gens.triangles()
    rels = []
    for i, j in combinations(range(1, m + 1), 2):
        if cyclic_distance(i, j, m) < 2:
            continue
        common = [t for t in tris if i in t and j in t]
        if common:
            tri = common[0]
            p, q = sorted((tri.index(i), tri.index(j)))
            tail, method = _chain_tail(gens, tri, p, q)
            rels.append(_relation(gens, i, j, tail, 0, method))
            continue
        img = mul(gens.images[i], gens.images[j])
        e = min(img)
        if e < 1:
            raise FactorizationError(f"B_{i}B_{j} maps to a monomial not divisible by xyz")
        rest = tuple(x - e for x in img)
        # the remainder misses z, x or y and so lives on T1, T2 or T3
        tri = tris[[1, 2, 0][rest.index(0)]]
        fac = factor_into(rest, [gens.images[k] for k in tri]) if any(rest) else \
            Factorization((0,) * len(tri), "greedy")
        if fac is None:
            raise FactorizationError(f"no factorization of {rest} over {tri}")
        tail = variable(0, nv, e)
        for k, x in zip(tri, fac.exponents):
            if x:
                tail = mul(tail, variable(k, nv, x))
        rels.append(_relation(gens, i, j, tail, e, fac.method))
    return rels


def build_relations(gens: GeneratorSet) -> list[Relation]:
    return build_relations_3d(gens) if gens.is_3d else build_relations_2d(gens)


def expected_relation_count(gens: GeneratorSet) -> int:
    m = gens.m
    if gens.is_3d:
        return m * (m - 3) // 2 if m >= 3 else 0
    return comb(m - 1, 2) if m >= 1 else 0


def format_monomial(mon: Monomial, gens: GeneratorSet) -> str:
    parts = []
    for k, e in enumerate(mon):
        if e:
            parts.append(gens.var_name(k) + (f"^{e}" if e > 1 else ""))
    return "".join(parts) or "1"


def format_relation(rel: Relation, gens: GeneratorSet) -> str:
    return (f"R_{{{rel.i},{rel.j}}}={format_monomial(rel.lead, gens)}"
            f"-{format_monomial(rel.tail, gens)}")


def format_image(mon: Monomial) -> str:
    parts = []
    for name, e in zip("xyz", mon):
        if e:
            parts.append(name + (f"^{e}" if e > 1 else ""))
    return "".join(parts) or "1"


@dataclass
class GroebnerReport:
    passed: bool
    pairs_checked: int
    pairs_skipped_coprime: int
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "pairs_checked": self.pairs_checked,
            "pairs_skipped_coprime": self.pairs_skipped_coprime,
            "failures": [list(p) for p in self.failures],
        }


def groebner_verify(relations, ring: AmbientRing, use_criterion: bool = True) -> GroebnerReport:
    """Check every S-pair of ``relations`` (Relations or Binomials) reduces to zero."""
    binoms = [r.binomial if isinstance(r, Relation) else r for r in relations]
    for b in binoms:
        if b.tail is not None and ring.compare(b.lead, b.tail) != GREATER:
            raise ValueError(f"{b} is not normalised")
    basis = ReductionBasis(binoms, ring)
    checked = skipped = 0
    failures = []
    for (a, f), (b, g) in combinations(enumerate(binoms), 2):
        if use_criterion and coprime(f.lead, g.lead):
            skipped += 1
            continue
        checked += 1
        if basis.normal_form(s_polynomial(f, g, ring)) is not None:
            failures.append((a, b))
    return GroebnerReport(not failures, checked, skipped, failures)
