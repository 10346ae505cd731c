from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycinv.betti import (
    BettiTable,
    ResourceLimitError,
    closed_form_betti,
    closed_form_invariant_2d,
    closed_form_invariant_3d,
    gorenstein_symmetric,
    hochster_betti,
    invariant_ring_betti,
    is_pure,
    linear_expectation,
    linear_strand_betti,
    path_cycle_betti,
    purity_check,
)
from cycinv.checks import hilbert_check, sweep
from cycinv.core import ValidationError, WeightSystem
from cycinv.simplicial import Graph, build_Xs

# quotient-convention weighted grids of the two worked examples, row by row
Z10_WEIGHTED = {
    1: dict(zip(range(12, 19), [1, 1, 2, 2, 2, 1, 1])),
    2: dict(zip(range(19, 27), [1, 2, 3, 4, 4, 3, 2, 1])),
    3: dict(zip(range(27, 34), [1, 2, 3, 3, 3, 2, 1])),
    4: dict(zip(range(36, 40), [1, 1, 1, 1])),
}
Z6_WEIGHTED = {
    1: dict(zip(range(6, 11), [1, 2, 3, 2, 1])),
    2: dict(zip(range(10, 15), [2, 4, 4, 4, 2])),
    3: dict(zip(range(14, 19), [1, 2, 3, 2, 1])),
    4: {24: 1},
}


def strand(t: BettiTable):
    return [t[(i, i + 2)] for i in range(0, max(t.rows()) + 1)]


def test_hochster_x5_unit_weights():
    t = hochster_betti(build_Xs(6, 5))
    assert strand(t) == [10, 20, 15, 4]
    assert t[(-1, 0)] == 1


def test_hochster_x5_weighted_row():
    t = hochster_betti(build_Xs(6, 5), [10, 9, 8, 7, 6, 5])
    assert t.row(0) == {12: 1, 13: 1, 14: 2, 15: 2, 16: 2, 17: 1, 18: 1}
    assert t.grading == "weighted"


def test_hochster_edgeless_and_limits():
    assert hochster_betti(Graph.on(4)).entries == {(-1, 0): 1}
    with pytest.raises(ResourceLimitError):
        hochster_betti(build_Xs(8, 0), max_vertices=7)
    with pytest.raises(ValidationError):
        hochster_betti(build_Xs(4, 0), [1, 2, 3])
    with pytest.raises(ValidationError):
        hochster_betti(build_Xs(4, 0), [1, 0, 1, 1])


def test_hochster_parallel_matches_serial():
    g = build_Xs(9, 4)
    assert hochster_betti(g, jobs=2).entries == hochster_betti(g).entries


def test_linear_strand_examples():
    assert linear_strand_betti(build_Xs(6, 6))[0] == 9
    assert linear_strand_betti(build_Xs(6, 0))[0] == 15
    # no subsets of size m + 1, so i = m - 1 never appears
    assert linear_strand_betti(build_Xs(5, 2)).get(4, 0) == 0


def test_closed_form_examples():
    t = closed_form_betti(6, 6)
    assert strand(t)[:3] == [9, 16, 9] and t[(3, 6)] == 1 and t[(3, 5)] == 0
    assert strand(closed_form_betti(6, 1)) == [14, 36, 39, 20, 4]
    assert closed_form_betti(6, 3)[(3, 5)] == 4 * comb(6, 5) - 3 * comb(4, 3) == 12
    with pytest.raises(ValidationError):
        closed_form_betti(2, 0)


def test_closed_form_m3_cycle_is_a_filled_triangle():
    # complement of X[3] on 3 vertices is a triangle, whose clique complex is a 2-simplex
    assert closed_form_betti(3, 3).entries == hochster_betti(build_Xs(3, 3)).entries == {(-1, 0): 1}


def test_closed_form_invariant_examples():
    t2 = closed_form_invariant_2d(6)
    assert t2.entries == {(0, 0): 1, (1, 2): 10, (2, 3): 20, (3, 4): 15, (4, 5): 4}
    t3 = closed_form_invariant_3d(6)
    assert t3.entries == {(0, 0): 1, (1, 2): 9, (2, 3): 16, (3, 4): 9, (4, 6): 1}
    assert closed_form_invariant_2d(3).entries == {(0, 0): 1, (1, 2): 1}
    assert closed_form_invariant_2d(2).entries == {(0, 0): 1}


def test_purity_examples():
    t = closed_form_betti(6, 5)
    assert purity_check(t, linear_expectation(t))
    t = closed_form_betti(6, 6)
    assert not purity_check(t, linear_expectation(t))
    assert purity_check(t, linear_expectation(t, (3, 6)))
    bad = BettiTable({(1, 2): 1, (1, 3): 1})
    assert not is_pure(bad)
    assert not purity_check(bad, {1: 2})


def test_table_validation_and_serialisation():
    with pytest.raises(ValueError):
        BettiTable({(0, 0): -1})
    t = closed_form_betti(5, 2)
    assert BettiTable.from_dict(t.as_dict()) == t
    assert '"i": -1' in t.to_json()
    text = t.to_text()
    assert text.splitlines()[0].split()[0] == "j:"
    assert "beta_0,j:" in text


@settings(max_examples=50)
@given(st.dictionaries(st.tuples(st.integers(-1, 8), st.integers(0, 30)), st.integers(1, 50)))
def test_convention_round_trip(entries):
    t = BettiTable(entries)
    assert t.to_quotient().to_ideal() == t
    assert all(t.to_quotient()[(i + 1, j)] == r for (i, j), r in t.entries.items())


@pytest.mark.parametrize("m", range(4, 11))
def test_gorenstein_symmetry(m):
    assert gorenstein_symmetric(closed_form_invariant_3d(m))


@pytest.mark.parametrize("m", range(3, 9))
def test_closed_form_agrees_with_hochster(m):
    for s in range(m + 1):
        g = build_Xs(m, s)
        h = hochster_betti(g)
        assert closed_form_betti(m, s).entries == h.entries
        assert all(h[(i, i + 2)] == v for i, v in linear_strand_betti(g).items())


@pytest.mark.parametrize("m, s", [(m, s) for m in range(4, 10) for s in (0, 1, m - 1, m)])
def test_subset_count_route_matches_hochster(m, s):
    g = build_Xs(m, s)
    w = [(3 * k + 1) % 7 + 1 for k in range(m)]
    assert path_cycle_betti(g, w).entries == hochster_betti(g, w).entries


def test_subset_count_rejects_other_graphs():
    with pytest.raises(ValueError):
        path_cycle_betti(Graph.on(4, [(0, 1)]))


def test_sweep_field_independence():
    assert all(r.ok for r in sweep(range(3, 7), check_fields=True))


def test_z10_pipeline():
    res = invariant_ring_betti(WeightSystem(10, (1, 2)))
    assert res.ok
    assert {i: res.weighted.row(i) for i in range(1, 5)} == Z10_WEIGHTED
    assert res.weighted[(0, 0)] == 1
    assert res.polynomial == closed_form_invariant_2d(6)


def test_z6_pipeline():
    res = invariant_ring_betti(WeightSystem(6, (1, 2, 3)))
    assert res.ok and res.diagnostics["gorenstein_symmetric"]
    assert {i: res.weighted.row(i) for i in range(1, 5)} == Z6_WEIGHTED
    assert res.polynomial == closed_form_invariant_3d(6)


def test_degenerate_pipeline():
    res = invariant_ring_betti(WeightSystem(6, (2, 3)))
    assert res.ok and res.polynomial.entries == {(0, 0): 1}
    assert res.diagnostics["route"] == "degenerate"


def test_routes_agree_on_weighted_tables():
    for ws in [WeightSystem(10, (1, 2)), WeightSystem(6, (1, 2, 3)), WeightSystem(11, (1, 3))]:
        a = invariant_ring_betti(ws)
        b = invariant_ring_betti(ws, hochster_limit=0)
        assert b.diagnostics["route"] == "subset-count"
        assert a.weighted == b.weighted and b.ok


def test_hilbert_identities_small_n():
    for n in range(3, 13):
        for b in range(1, n):
            ws = WeightSystem(n, (1, b))
            res = invariant_ring_betti(ws, hochster_limit=0)
            assert all(hilbert_check(res, 3 * n).values()), ws
            if (1 + b) % n:
                ws = WeightSystem(n, (1, b, (-1 - b) % n))
                res = invariant_ring_betti(ws, hochster_limit=0)
                assert all(hilbert_check(res, 3 * n).values()), ws


def test_weighted_collapses_to_polynomial():
    # replacing every generator degree by 1 gives the polynomial table
    res = invariant_ring_betti(WeightSystem(10, (1, 2)))
    unit = hochster_betti(build_Xs(6, 5)).to_quotient()
    assert unit == res.polynomial
    assert res.weighted.totals() == res.polynomial.totals()
