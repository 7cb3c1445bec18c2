import itertools

import pytest

from causaldef.minkowski import LAM, NE, SIG, TAU, Point, RelKind, RelSet, relate
from causaldef.graphembed import (
    NRF2_ORBITS,
    LabeledGraph,
    NotASubset,
    embed,
    enumerate_nrf2,
    nrf2_relation_report,
    o1_induced,
    o2_weaken,
    o3_lift,
    o4_swap,
    o4_swap_embedding,
    orbits,
    perturb_pq,
    verify,
)

T, L, S = RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE


def test_enumeration():
    gs = enumerate_nrf2(TAU)
    assert len(gs) == 32 and len(set(gs)) == 32
    assert all(g.is_non_requiring() and g.is_fastidious(TAU) for g in gs)
    labels = [{r for _, _, r in g.edge_list()} for g in gs]
    assert {TAU} in labels and {~TAU & NE} in labels


def test_orbit_count():
    # Burnside over {id, x<->y, p<->q, both}: each non-identity element fixes 2^3 labelings
    assert NRF2_ORBITS == (32 + 8 + 8 + 8) // 4
    assert len(orbits(enumerate_nrf2(TAU))) == NRF2_ORBITS


def test_embed_examples():
    g = LabeledGraph.build(("x", "y", "z"), [("x", "y", TAU), ("y", "z", TAU), ("x", "z", TAU)], free=())
    e = embed(g)
    assert [e[v] for v in "xyz"] == [Point((0, 0)), Point((1, 0)), Point((2, 0))]
    g = LabeledGraph.build(("x", "y"), [("x", "y", LAM)], free=())
    e = embed(g)
    assert (e["x"], e["y"]) == (Point((0, 0)), Point((1, 1)))


def test_every_graph_embeds_with_lightlike_pair():
    for g in enumerate_nrf2(TAU):
        gl = g.with_edge("p", "q", LAM)
        assert verify(gl, embed(gl))


def test_perturb():
    g = enumerate_nrf2(TAU)[0]
    e = embed(g.with_edge("p", "q", LAM))
    assert perturb_pq(e, g, L) == e
    for want in (T, S):
        moved = perturb_pq(e, g, want)
        assert relate(moved["p"], moved["q"]) is want and verify(g, moved)


def test_observations():
    g = enumerate_nrf2(TAU)[5].with_edge("p", "q", LAM)
    e = embed(g)
    sub = o1_induced(g, ["p", "x", "y"])
    assert verify(sub, {v: e[v] for v in sub.vertices})
    weak = o2_weaken(g, TAU, TAU | LAM)
    assert verify(weak, e)
    with pytest.raises(NotASubset):
        o2_weaken(g, TAU | LAM, TAU)
    lifted = o3_lift(e, 3)
    assert verify(g, lifted) and all(pt.n == 3 for pt in lifted.values())
    assert verify(o4_swap(g), o4_swap_embedding(e))


def test_o3_example():
    e = o3_lift({"a": Point((0, 0)), "b": Point((1, 1))}, 3)
    assert (e["a"], e["b"]) == (Point((0, 0, 0)), Point((1, 1, 0)))
    assert relate(e["a"], e["b"]) is L


def test_o4_triangle():
    g = LabeledGraph.build(("x", "y", "z"), [("x", "y", TAU), ("y", "z", TAU), ("x", "z", TAU)], free=())
    sg = o4_swap(g)
    assert {r for _, _, r in sg.edge_list()} == {SIG}
    assert verify(sg, embed(sg))


def test_observations_on_whole_suite():
    for g in enumerate_nrf2(TAU):
        gl = g.with_edge("p", "q", LAM)
        e = embed(gl)
        for keep in itertools.combinations(g.vertices, 3):
            sub = o1_induced(gl, keep)
            assert verify(sub, {v: e[v] for v in sub.vertices})
        assert verify(o2_weaken(gl, TAU, TAU | LAM), e)
        assert verify(gl, o3_lift(e, 4))
        assert verify(o4_swap(gl), o4_swap_embedding(e))


@pytest.mark.parametrize("n, rho", [(2, TAU), (3, TAU), (2, SIG), (3, SIG)])
def test_suite(n, rho):
    rep = nrf2_relation_report(n, rho)
    assert rep.ok, rep.failures
    assert len(rep.rows) == 96
    assert rep.conclusion.startswith("every nrf2-definable relation")


def test_suite_rejects_lam():
    with pytest.raises(ValueError):
        nrf2_relation_report(2, LAM)
