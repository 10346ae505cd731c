"""Monomials, binomials and the two monomial orders used by the presentations.

Monomials are plain tuples of non-negative exponents. Binomials carry an
implicit ``+1`` on the lead and ``-1`` on the tail, which is all the
arithmetic the binomial relation ideals ever need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Monomial = tuple[int, ...]

LESS, EQUAL, GREATER = -1, 0, 1


class ValidationError(ValueError):
    """Bad user-facing input (weights, sizes, characteristics)."""


class StructuralError(ValueError):
    """Objects that do not live in the same ring were combined."""


@dataclass(frozen=True)
class WeightSystem:
    """A diagonal action of Z/n: variable k is scaled by eps^weights[k]."""

    n: int
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.n < 3:
            raise ValidationError(f"group order must be >= 3, got n={self.n}")
        if len(self.weights) not in (2, 3):
            raise ValidationError(
                f"expected 2 or 3 weights, got {len(self.weights)}")
        for w in self.weights:
            if not 0 < w < self.n:
                raise ValidationError(
                    f"weights must satisfy 0 < w < n={self.n}, got {w}")
        if len(self.weights) == 3 and sum(self.weights) % self.n:
            b, c, d = self.weights
            raise ValidationError(
                f"SL condition fails: n must divide b+c+d, "
                f"but {b}+{c}+{d}={b + c + d} is not divisible by {self.n}")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def is_invariant(self, exps: Sequence[int]) -> bool:
        return sum(e * w for e, w in zip(exps, self.weights)) % self.n == 0


def polydeg(mon: Monomial) -> int:
    return sum(mon)


def wdeg(mon: Monomial, grading: Sequence[int]) -> int:
    return sum(e * g for e, g in zip(mon, grading))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def div(a: Monomial, b: Monomial) -> Monomial:
    """Exact quotient ``a / b``; raises if ``b`` does not divide ``a``."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise StructuralError(f"{b} does not divide {a}")
    return out


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def unit(nvars: int) -> Monomial:
    return (0,) * nvars


def variable(k: int, nvars: int, power: int = 1) -> Monomial:
    e = [0] * nvars
    e[k] = power
    return tuple(e)


@dataclass(frozen=True)
class AmbientRing:
    """Graded polynomial ring with one of the two supported orders.

    ``order`` is ``"2d"`` (weighted degree, then the exponent at the largest
    differing index decides) or ``"3d"``. For ``"3d"`` variable 0 is ``A``
    and ``blocks = (r, s, t)`` gives the sizes of the u/v/w runs of the
    ``B`` variables.
    """

    grading: tuple[int, ...]
    order: str = "2d"
    blocks: Optional[tuple[int, int, int]] = None
    _perm: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "grading", tuple(self.grading))
        if not self.grading or any(g <= 0 for g in self.grading):
            raise ValidationError("grading entries must be positive")
        if self.order == "2d":
            perm = tuple(range(len(self.grading) - 1, -1, -1))
        elif self.order == "3d":
            if self.blocks is None:
                raise ValidationError("3d order needs block sizes (r, s, t)")
            r, s, t = self.blocks
            m = r + s + t
            if len(self.grading) != m + 1:
                raise ValidationError(
                    f"3d order with blocks {self.blocks} needs {m + 1} "
                    f"variables, got {len(self.grading)}")
            # Tie-break sequence is B_1..B_{r+s}, B_m, ..., B_{r+s+1};
            # store it reversed so that lexicographic tuple comparison
            # looks at the largest position first.
            seq = list(range(1, r + s + 1)) + list(range(m, r + s, -1))
            perm = tuple(reversed(seq))
        else:
            raise ValidationError(f"unknown order {self.order!r}")
        object.__setattr__(self, "_perm", perm)

    @property
    def nvars(self) -> int:
        return len(self.grading)

    def check(self, mon: Monomial) -> None:
        if len(mon) != self.nvars:
            raise StructuralError(
                f"monomial has {len(mon)} exponents, ring has {self.nvars} variables")

    def wdeg(self, mon: Monomial) -> int:
        return wdeg(mon, self.grading)

    def key(self, mon: Monomial) -> tuple:
        """Sort key realising the ring's monomial order."""
        self.check(mon)
        tiebreak = tuple(mon[k] for k in self._perm)
        if self.order == "2d":
            return (self.wdeg(mon), tiebreak)
        return (self.wdeg(mon), -mon[0], tiebreak)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def cmp_2d(a: Monomial, b: Monomial, ring: AmbientRing) -> int:
    if ring.order != "2d":
        raise StructuralError("cmp_2d needs a ring with the 2d order")
    return ring.compare(a, b)


def cmp_3d(a: Monomial, b: Monomial, ring: AmbientRing) -> int:
    if ring.order != "3d":
        raise StructuralError("cmp_3d needs a ring with the 3d order")
    return ring.compare(a, b)


@dataclass(frozen=True)
class Binomial:
    """``lead - tail`` with ``lead > tail``; ``tail is None`` means a bare monomial."""

    lead: Monomial
    tail: Optional[Monomial] = None

    def terms(self) -> list[Monomial]:
        return [self.lead] if self.tail is None else [self.lead, self.tail]


def make_binomial(p: Monomial, q: Optional[Monomial],
                  ring: AmbientRing) -> Optional[Binomial]:
    """Normalise ``p - q`` (up to sign) so the larger term leads.

    Returns ``None`` for the zero polynomial.
    """
    ring.check(p)
    if q is None:
        return Binomial(p)
    ring.check(q)
    c = ring.compare(p, q)
    if c == EQUAL:
        return None
    return Binomial(p, q) if c == GREATER else Binomial(q, p)


class ReductionBasis:
    """A list of binomials indexed by the variables of their lead terms.

    Building the index once lets many reductions share it.
    """

    def __init__(self, basis: Iterable[Binomial], ring: AmbientRing):
        self.ring = ring
        self.basis = list(basis)
        self._by_var: list[list[Binomial]] = [[] for _ in range(ring.nvars)]
        for g in self.basis:
            ring.check(g.lead)
            if g.tail is not None and ring.compare(g.lead, g.tail) != GREATER:
                raise StructuralError(f"lead of {g} is not its largest term")
            first = next((k for k, e in enumerate(g.lead) if e), None)
            if first is None:
                raise StructuralError("basis element with constant lead")
            self._by_var[first].append(g)

    def reducer(self, term: Monomial) -> Optional[Binomial]:
        for k, e in enumerate(term):
            if e:
                for g in self._by_var[k]:
                    if divides(g.lead, term):
                        return g
        return None

    def normal_form(self, f: Optional[Binomial]) -> Optional[Binomial]:
        ring = self.ring
        while f is not None:
            g = self.reducer(f.lead)
            if g is not None:
                f = make_binomial(_rewrite(f.lead, g), f.tail, ring)
                continue
            if f.tail is not None:
                g = self.reducer(f.tail)
                if g is not None:
                    f = make_binomial(f.lead, _rewrite(f.tail, g), ring)
                    continue
            break
        return f


def _rewrite(term: Monomial, g: Binomial) -> Optional[Monomial]:
    # term = c * lead(g) is congruent to c * tail(g) modulo g
    if g.tail is None:
        raise StructuralError("cannot rewrite by a monomial basis element")
    return mul(div(term, g.lead), g.tail)


def normal_form(f: Optional[Binomial], basis, ring: AmbientRing) -> Optional[Binomial]:
    """Fully reduce ``f`` by ``basis`` (lead term first, then tail).

    ``basis`` is a list of binomials or a prebuilt :class:`ReductionBasis`.
    Returns ``None`` when ``f`` reduces to zero.
    """
    if not isinstance(basis, ReductionBasis):
        basis = ReductionBasis(basis, ring)
    return basis.normal_form(f)


def s_polynomial(f: Binomial, g: Binomial, ring: AmbientRing) -> Optional[Binomial]:
    L = lcm(f.lead, g.lead)
    tf = None if f.tail is None else mul(div(L, f.lead), f.tail)
    tg = None if g.tail is None else mul(div(L, g.lead), g.tail)
    if tf is None:
        return None if tg is None else Binomial(tg)
    return make_binomial(tf, tg, ring)


def s_pair_reduces(f: Binomial, g: Binomial, basis, ring: AmbientRing,
                   use_criterion: bool = True) -> bool:
    """True iff the S-polynomial of ``f`` and ``g`` reduces to zero.

    With ``use_criterion`` pairs with coprime leads are accepted without
    reduction (Buchberger's first criterion).
    """
    if use_criterion and coprime(f.lead, g.lead):
        return True
    return normal_form(s_polynomial(f, g, ring), basis, ring) is None
