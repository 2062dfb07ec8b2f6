import pytest

from conftest import SIG_GA, SIG_H2, SIG_PILLOW, SIG_TORUS, brute_isomorphic, gamma_a
from kmsdiff import errors as E
from kmsdiff.boundary import Mode, enumerate_boundary_graphs
from kmsdiff.covers import enumerate_covers
from kmsdiff.graphs import canonical_form, undegenerate, validate_enhanced_graph
from kmsdiff.residues import pper_coordinate_shape
from kmsdiff.stratum import Signature, stratum_dimension

STRATA = [SIG_H2, SIG_GA, SIG_PILLOW, SIG_TORUS, Signature(1, 2, (1, 1)),
          Signature(2, 1, (1, -1)), Signature(2, 1, (2, -1, -1))]


def forms(graphs):
    return {canonical_form(G) for G in graphs}


def test_torus_one_horizontal():
    gs = list(enumerate_boundary_graphs(SIG_TORUS, "one_horizontal"))
    assert len(gs) == 1
    G = gs[0]
    assert G.genera == (0,) and len(G.edges) == 1 and G.edges[0].is_loop
    assert [l.order for l in G.legs] == [0]


def test_torus_two_level_empty():
    assert list(enumerate_boundary_graphs(SIG_TORUS, "two_level")) == []


def test_gamma_a_in_stream():
    assert canonical_form(gamma_a()) in forms(enumerate_boundary_graphs(SIG_GA, "two_level"))


def test_pillowcase_streams():
    assert list(enumerate_boundary_graphs(SIG_PILLOW, "two_level")) == []
    hor = list(enumerate_boundary_graphs(SIG_PILLOW, "one_horizontal"))
    # two poles on each side of the node, up to relabeling: {12|34}, {13|24}, {14|23}
    assert len(hor) == 3


@pytest.mark.parametrize("sig", STRATA, ids=str)
@pytest.mark.parametrize("mode", ["two_level", "one_horizontal", "all_up_to(3,3)"])
def test_emitted_graphs_valid_distinct_and_bounded(sig, mode):
    gs = list(enumerate_boundary_graphs(sig, mode))
    dim_p = stratum_dimension(sig) - 1
    for G in gs:
        validate_enhanced_graph(G, sig)
        assert G.genus == sum(G.genera) + G.betti_number
        if G.depth + len(G.horizontal_edges) > dim_p:
            # only combinatorial: some level of every cover is dimensionally empty
            for C in enumerate_covers(G):
                assert min(pper_coordinate_shape(C)["reduced_dims"]) < 0
    assert len(forms(gs)) == len(gs)
    for i, A in enumerate(gs):
        for B in gs[i + 1:]:
            if A.num_vertices <= 5:
                assert not brute_isomorphic(A, B)


@pytest.mark.parametrize("sig", STRATA, ids=str)
def test_deterministic(sig):
    a = [canonical_form(G) for G in enumerate_boundary_graphs(sig, "all_up_to(3,3)")]
    b = [canonical_form(G) for G in enumerate_boundary_graphs(sig, "all_up_to(3,3)")]
    assert a == b


@pytest.mark.parametrize("sig", STRATA, ids=str)
def test_closed_under_undegeneration(sig):
    """Every undegeneration of a deeper graph must already be in the smaller streams."""
    full = list(enumerate_boundary_graphs(sig, "all_up_to(3,3)"))
    two = forms(enumerate_boundary_graphs(sig, "two_level"))
    one_h = forms(enumerate_boundary_graphs(sig, "one_horizontal"))
    everything = forms(full)
    for G in full:
        L, hor = G.depth, [e.id for e in G.horizontal_edges]
        for p in range(-L, 0):
            H = undegenerate(G, keep={p}, contract_horizontal=hor)
            validate_enhanced_graph(H, sig)
            assert canonical_form(H) in two
        if len(hor) == 1:
            H = undegenerate(G, keep=set())
            assert canonical_form(H) in one_h
        for p in range(-L, 0):
            H = undegenerate(G, keep=set(range(-L, 0)) - {p})
            if H.edges:
                assert canonical_form(H) in everything
        assert undegenerate(G) == G


def test_mode_parse():
    assert Mode.parse("all_up_to(3,4)") == Mode("all_up_to", 3, 4)
    with pytest.raises(ValueError):
        Mode.parse("three_level")


def test_cap():
    with pytest.raises(E.BoundsTooLarge):
        list(enumerate_boundary_graphs(SIG_GA, "all_up_to(3,4)", cap=10))
