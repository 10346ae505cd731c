"""Graphs, clique complexes and reduced homology over Q or F_p.

Vertices are 0-based integers internally; the JSON graph format and all
printed output use 1-based labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .core import ValidationError

Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValidationError("duplicate vertices")
        edges = set()
        for a, b in self.edges:
            if a == b:
                raise ValidationError(f"loop at vertex {a + 1}")
            if a not in vs or b not in vs:
                raise ValidationError(f"edge ({a + 1}, {b + 1}) leaves the vertex set")
            edges.add(_edge(a, b))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def on(cls, m: int, edges: Iterable[Sequence[int]] = ()) -> "Graph":
        return cls(tuple(range(m)), frozenset(_edge(*e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def to_json(self) -> str:
        # 1-based, vertices assumed to be 0..m-1
        return json.dumps({"m": self.m,
                           "edges": sorted([a + 1, b + 1] for a, b in self.edges)})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
            m = int(data["m"])
            edges = [(int(a) - 1, int(b) - 1) for a, b in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad graph JSON: {exc}") from None
        if m < 0:
            raise ValidationError("graph JSON: m must be non-negative")
        seen = set()
        for a, b in edges:
            if not (0 <= a < m and 0 <= b < m):
                raise ValidationError(f"graph JSON: vertex out of range 1..{m}")
            if _edge(a, b) in seen:
                raise ValidationError(f"graph JSON: duplicate edge ({a + 1}, {b + 1})")
            seen.add(_edge(a, b))
        return cls.on(m, edges)


def adjacent_edges(m: int) -> list[Edge]:
    """The m cyclically adjacent pairs {k, k+1}, in order k = 1..m."""
    return [_edge(k, (k + 1) % m) for k in range(m)]


def build_Xs(m: int, s: int) -> Graph:
    """Complete graph on m vertices minus the first s adjacent edges."""
    if m < 3:
        raise ValidationError(f"X[s] needs m >= 3, got m={m}")
    if not 0 <= s <= m:
        raise ValidationError(f"X[s] needs 0 <= s <= m, got s={s}, m={m}")
    deleted = set(adjacent_edges(m)[:s])
    return Graph.on(m, [e for e in combinations(range(m), 2) if e not in deleted])


def complement(g: Graph) -> Graph:
    return Graph(g.vertices, frozenset(
        e for e in combinations(g.vertices, 2) if e not in g.edges))


def induced(g: Graph, ys: Iterable[int]) -> Graph:
    ys = set(ys)
    if not ys <= set(g.vertices):
        raise ValidationError("induced: subset is not inside the vertex set")
    return Graph(tuple(ys), frozenset(e for e in g.edges if e[0] in ys and e[1] in ys))


def components(g: Graph) -> int:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    count = g.m
    for a, b in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets; every vertex lies in some facet."""

    vertices: tuple[int, ...]
    facets: tuple[frozenset, ...]

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k: int) -> list[tuple[int, ...]]:
        """Sorted list of k-dimensional faces (k = -1 gives the empty face)."""
        if k < -1:
            return []
        if k == -1:
            return [()]
        out = set()
        for f in self.facets:
            if len(f) >= k + 1:
                out.update(combinations(sorted(f), k + 1))
        return sorted(out)

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(-1, self.dim + 1)]


def maximal_cliques(adj: dict[int, set[int]]) -> list[frozenset]:
    """Bron-Kerbosch with pivoting; isolated vertices come out as singletons."""
    out: list[frozenset] = []

    def expand(r: set, p: set, x: set):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if adj:
        expand(set(), set(adj), set())
    return out


def clique_complex(g: Graph) -> SimplicialComplex:
    facets = sorted(maximal_cliques(g.adjacency()), key=lambda f: (len(f), sorted(f)))
    return SimplicialComplex(g.vertices, tuple(facets))


def rank_exact(rows: list[list[int]], char: int = 0) -> int:
    """Rank of an integer matrix over Q (char 0) or F_p.

    Over Q this is fraction-free elimination: rows are combined with integer
    multipliers and divided by their content to keep entries small.
    """
    if char:
        rows = [[x % char for x in r] for r in rows]
    else:
        rows = [list(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        if char:
            inv = pow(p[col], -1, char)
            p[:] = [x * inv % char for x in p]
        for k in range(rank + 1, len(rows)):
            r = rows[k]
            f = r[col]
            if not f:
                continue
            if char:
                rows[k] = [(a - f * b) % char for a, b in zip(r, p)]
            else:
                new = [a * p[col] - f * b for a, b in zip(r, p)]
                g = 0
                for x in new:
                    g = gcd(g, x)
                rows[k] = [x // g for x in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank


def boundary_rows(complex_: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1}, one row per k-face.

    ``k = 0`` is the augmentation onto the empty face.
    """
    lower = {f: idx for idx, f in enumerate(complex_.faces(k - 1))}
    rows = []
    for face in complex_.faces(k):
        row = [0] * len(lower)
        for pos in range(len(face)):
            row[lower[face[:pos] + face[pos + 1:]]] = -1 if pos % 2 else 1
        rows.append(row)
    return rows


def _check_char(char: int) -> None:
    if char < 0 or char == 1 or (char > 1 and any(char % q == 0 for q in range(2, int(char ** 0.5) + 1))):
        raise ValidationError(f"field characteristic must be 0 or a prime, got {char}")


def reduced_homology_dims(cx: SimplicialComplex, char: int = 0) -> list[int]:
    """dim H~_k for k = -1 .. dim(cx), over Q or F_char.

    The complex with no vertices has H~_{-1} of dimension 1; any complex
    with a vertex has H~_{-1} = 0.
    """
    _check_char(char)
    if not cx.vertices:
        return [1]
    top = cx.dim
    sizes = {k: len(cx.faces(k)) for k in range(-1, top + 1)}
    ranks = {k: rank_exact(boundary_rows(cx, k), char) for k in range(0, top + 1)}
    ranks[-1] = 0
    ranks[top + 1] = 0
    return [sizes[k] - ranks[k] - ranks[k + 1] for k in range(-1, top + 1)]
