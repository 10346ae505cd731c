from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycinv.core import ValidationError
from cycinv.simplicial import (
    Graph,
    SimplicialComplex,
    build_Xs,
    clique_complex,
    complement,
    components,
    induced,
    maximal_cliques,
    rank_exact,
    reduced_homology_dims,
)


def cycle(m):
    return Graph.on(m, [(k, (k + 1) % m) for k in range(m)])


def test_build_Xs_examples():
    assert len(build_Xs(6, 0).edges) == 15
    assert complement(build_Xs(6, 6)) == cycle(6)
    x5 = build_Xs(6, 5)
    assert len(x5.edges) == 10
    assert complement(x5) == Graph.on(6, [(k, k + 1) for k in range(5)])


@pytest.mark.parametrize("m, s", [(2, 0), (5, 6), (5, -1)])
def test_build_Xs_rejects(m, s):
    with pytest.raises(ValidationError):
        build_Xs(m, s)


def test_graph_rejects_loops_and_foreign_vertices():
    with pytest.raises(ValidationError):
        Graph.on(3, [(1, 1)])
    with pytest.raises(ValidationError):
        Graph.on(3, [(0, 5)])


def test_graph_json_round_trip_and_errors():
    g = build_Xs(5, 2)
    assert Graph.from_json(g.to_json()) == g
    for bad in ['{"m": 3}', '{"m": 3, "edges": [[1, 4]]}', '{"m": 3, "edges": [[1, 2], [2, 1]]}',
                "not json", '{"m": 3, "edges": [[1]]}']:
        with pytest.raises(ValidationError):
            Graph.from_json(bad)


def test_induced_and_components():
    path = induced(complement(build_Xs(6, 6)), {0, 1, 2})
    assert path.edges == {(0, 1), (1, 2)}
    assert components(path) == 1
    assert components(Graph.on(4)) == 4
    with pytest.raises(ValidationError):
        induced(Graph.on(3), {7})


def test_clique_complex_examples():
    tri = clique_complex(Graph.on(3, [(0, 1), (1, 2), (0, 2)]))
    assert set(tri.facets) == {frozenset({0, 1, 2})}
    c6 = clique_complex(cycle(6))
    assert set(c6.facets) == {frozenset({k, (k + 1) % 6}) for k in range(6)}
    assert set(clique_complex(Graph.on(3)).facets) == {frozenset({v}) for v in range(3)}


def test_homology_examples():
    assert reduced_homology_dims(clique_complex(cycle(6))) == [0, 0, 1]
    assert reduced_homology_dims(clique_complex(Graph.on(1))) == [0, 0]
    assert reduced_homology_dims(clique_complex(Graph.on(2))) == [0, 1]
    assert reduced_homology_dims(clique_complex(Graph.on(0))) == [1]


def test_homology_rejects_bad_characteristic():
    cx = clique_complex(cycle(4))
    for char in (1, 4, -3):
        with pytest.raises(ValidationError):
            reduced_homology_dims(cx, char)


def test_projective_plane_sees_the_field():
    # the 6-vertex RP^2 has H~_1 = Z/2: zero over Q, one over F_2
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]
    cx = SimplicialComplex(tuple(range(6)), tuple(facets))
    assert reduced_homology_dims(cx, 0) == [0, 0, 0, 0]
    assert reduced_homology_dims(cx, 2) == [0, 0, 1, 1]


def graphs(max_m=8):
    return st.integers(0, max_m).flatmap(lambda m: st.tuples(
        st.just(m),
        st.sets(st.tuples(st.integers(0, max(m - 1, 0)), st.integers(0, max(m - 1, 0)))
                .filter(lambda e: e[0] != e[1]).map(lambda e: tuple(sorted(e))))
    )).map(lambda t: Graph.on(t[0], [e for e in t[1] if e[1] < t[0]]))


@settings(max_examples=150)
@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g


@settings(max_examples=150)
@given(graphs(9))
def test_cliques_match_networkx(g):
    ours = {frozenset(c) for c in maximal_cliques(g.adjacency())}
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    assert ours == {frozenset(c) for c in nx.find_cliques(nxg)}
    assert components(g) == nx.number_connected_components(nxg)


@settings(max_examples=150)
@given(graphs(8))
def test_euler_characteristic(g):
    cx = clique_complex(g)
    dims = reduced_homology_dims(cx)
    # both lists start at dimension -1; f_vector counts the empty face
    alt_h = sum((-1) ** (k - 1) * d for k, d in enumerate(dims))
    alt_f = sum((-1) ** (k - 1) * f for k, f in enumerate(cx.f_vector()))
    assert alt_h == alt_f


@st.composite
def forests(draw):
    m = draw(st.integers(1, 10))
    edges = []
    for v in range(1, m):
        parent = draw(st.integers(-1, v - 1))
        if parent >= 0:
            edges.append((parent, v))
    return Graph.on(m, edges)


@settings(max_examples=150)
@given(forests())
def test_forest_homology_is_components(g):
    dims = reduced_homology_dims(clique_complex(g))
    assert dims[1] == components(g) - 1
    assert not any(dims[2:]) and dims[0] == 0
    assert reduced_homology_dims(clique_complex(g), 2) == dims


@settings(max_examples=100)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_exact_matches_fraction_elimination(rows):
    # independent oracle: plain Gaussian elimination over Fractions
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(4):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    assert rank_exact([list(r) for r in rows], 0) == rank
