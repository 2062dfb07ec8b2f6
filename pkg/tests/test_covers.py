import itertools
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SIG_GA, SIG_H2, SIG_PILLOW, banana, gamma_a, two_tails
from kmsdiff import errors as E
from kmsdiff.boundary import enumerate_boundary_graphs
from kmsdiff.covers import (_coboundary_image, build_cover, cover_canonical_form,
                            cover_edge_enhancement, enumerate_covers, shift_class_min,
                            validate_cover, vertex_types)
from kmsdiff.graphs import make_graph, validate_enhanced_graph, vertex_signature
from kmsdiff.stratum import (Signature, cover_signature, power_divisors, reduce_signature,
                             riemann_hurwitz_genus)


def covers_of(sig, mode="two_level"):
    return [(G, C) for G in enumerate_boundary_graphs(sig, mode) for C in enumerate_covers(G)]


ALL = {str(s) + m: covers_of(s, m) for s in (SIG_GA, SIG_H2, SIG_PILLOW)
       for m in ("two_level", "one_horizontal")}


def test_edge_enhancement_examples():
    assert cover_edge_enhancement(2, 2) == (2, 1)
    assert cover_edge_enhancement(2, 0) == (2, 0)
    assert cover_edge_enhancement(3, 2) == (1, 2)
    assert cover_edge_enhancement(4, 6) == (2, 3)
    assert cover_edge_enhancement(1, 5) == (1, 5)


def test_gamma_a_has_three_covers():
    cs = list(enumerate_covers(gamma_a()))
    assert sorted(C.d for C in cs) == [(1, 1), (1, 2), (2, 1)]
    assert len({cover_canonical_form(C) for C in cs}) == 3
    for C in cs:
        assert len(C.edges) == 2 and C.is_connected()


def test_component_genera_match_riemann_hurwitz():
    for key in ALL:
        for G, C in ALL[key]:
            for x, (v, _) in enumerate(C.vertices):
                red = reduce_signature(vertex_signature(G, v), C.d[v])
                assert C.genera[x] == riemann_hurwitz_genus(red) >= 0


def test_genus_zero_vertex_types():
    # bottom sphere of a two-edge graph carries orders (2, 2, -4, -4): a global square
    G = make_graph(2, [(1, 0), (0, -1)], [(0, 1, 2), (0, 1, 2)], [(1, 1, 2), (1, 2, 2)])
    assert vertex_types(G, 1) == [2] and vertex_types(G, 0) == [1, 2]
    with pytest.raises(E.Inconsistent):
        build_cover(G, [1, 1], [0, 0])


def test_disconnected_covers_pruned():
    every = list(enumerate_covers(gamma_a(), connected_only=False))
    assert len(every) > 3
    assert any(not C.is_connected() for C in every)
    verbose = list(enumerate_covers(gamma_a(), verbose=True))
    assert any(isinstance(x, E.Inconsistent) for x in verbose)


@pytest.mark.parametrize("key", sorted(ALL))
def test_every_cover_validates_and_matches_ambient(key):
    for G, C in ALL[key]:
        assert validate_cover(C)["pass"]
        sig = C.ambient_signature()
        H = C.cover_graph()
        # the cover is an abelian level graph of the cover signature
        cs = cover_signature(sig)
        validate_enhanced_graph(H, Signature(1, cs.g_hat, tuple(l.order for l in H.legs)))
        assert sorted(l.order for l in H.legs) == sorted(cs.mu_hat)


def test_horizontal_edges_lift_to_k_edges():
    for G, C in ALL[str(SIG_PILLOW) + "one_horizontal"]:
        assert len(C.edges) == 2
        assert all(ce.kappas == (0, 0) for ce in C.edges)
    C = next(enumerate_covers(banana()))
    assert len(C.edges) == 1


def test_validate_detects_corruption():
    C = next(enumerate_covers(gamma_a()))
    bad_tau = replace(C, tau_edges=(0, 0))
    with pytest.raises(E.DeckOrder):
        validate_cover(bad_tau, raise_on_error=True)
    fixed = replace(C, tau_edges=(0, 1))   # identity: wrong order on a fiber of size 2
    assert not validate_cover(fixed)["pass"]
    codes = {e["error"] for e in validate_cover(fixed)["errors"]}
    assert "DeckOrder" in codes
    ce = C.edges[0]
    lifted = replace(C, edges=(replace(ce, kappas=(2, -2)),) + C.edges[1:])
    with pytest.raises(E.EnhancementLift):
        validate_cover(lifted, raise_on_error=True)
    wrong = replace(C, edges=C.edges[:1])
    assert "QuotientMismatch" in {e["error"] for e in validate_cover(wrong)["errors"]}
    genus = replace(C, genera=(C.genera[0] + 1,) + C.genera[1:])
    with pytest.raises(E.DegreeSum):
        validate_cover(genus, raise_on_error=True)


def test_bad_vertex_type_rejected():
    with pytest.raises(E.Inconsistent):
        build_cover(two_tails(), [1, 1, 2], [0, 0])


def test_quotient_by_deck_group_recovers_base():
    for key in ALL:
        for G, C in ALL[key]:
            # tau-orbits of cover vertices and edges are exactly the base fibers
            orbits_v = set()
            for i in range(len(C.vertices)):
                orb, j = {i}, C.tau_vertices[i]
                while j != i:
                    orb.add(j)
                    j = C.tau_vertices[j]
                orbits_v.add(frozenset(orb))
            assert len(orbits_v) == G.num_vertices
            for orb in orbits_v:
                assert len({C.vertices[x][0] for x in orb}) == 1
            orbits_e = C.tau_edge_orbits()
            assert len(orbits_e) == len(G.edges)
            assert sorted(C.edges[o[0]].base_edge for o in orbits_e) == list(range(len(G.edges)))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_shift_class_min_is_class_invariant(data):
    nverts = data.draw(st.integers(1, 4))
    m = data.draw(st.integers(1, 4))
    ends = [tuple(data.draw(st.lists(st.integers(0, nverts - 1), min_size=2, max_size=2)))
            for _ in range(m)]
    sizes = [data.draw(st.integers(1, 4)) for _ in range(m)]
    shifts = [data.draw(st.integers(0, N - 1)) for N in sizes]
    base = shift_class_min(4, ends, sizes, nverts, shifts)
    # shifting by a vertex function f changes c_e by f(b) - f(a)
    f = data.draw(st.lists(st.integers(-5, 5), min_size=nverts, max_size=nverts))
    moved = [(c + f[b] - f[a]) % N for c, (a, b), N in zip(shifts, ends, sizes)]
    assert shift_class_min(4, ends, sizes, nverts, moved) == base
    assert base in {tuple((c + y) % N for c, y, N in zip(shifts, img, sizes))
                    for img in _coboundary_image(4, ends, sizes, nverts)}


def _coarse_equivalent(C1, C2):
    """Brute-force check for a tau-equivariant isomorphism of cover graphs
    covering a base automorphism; coarser than cover equivalence."""
    if (C1.base.num_vertices, len(C1.vertices), len(C1.edges)) != \
            (C2.base.num_vertices, len(C2.vertices), len(C2.edges)):
        return False
    H1, H2 = C1.cover_graph(), C2.cover_graph()

    def vkey(C, H, x):
        v = C.vertices[x][0]
        return (H.genera[x], H.levels[x],
                tuple(sorted((l.label, l.order) for l in C.base.legs if l.vertex == v)),
                tuple(sorted(l.order for l in H.legs if l.vertex == x)))

    n = len(C1.vertices)
    target = sorted(tuple(sorted(((a, ka), (b, kb)))) for (a, b), (ka, kb)
                    in ((e.ends, e.kappas) for e in H2.edges))
    for perm in itertools.permutations(range(n)):
        if any(vkey(C1, H1, x) != vkey(C2, H2, perm[x]) for x in range(n)):
            continue
        if any(perm[C1.tau_vertices[x]] != C2.tau_vertices[perm[x]] for x in range(n)):
            continue
        mapped = sorted(tuple(sorted(((perm[a], ka), (perm[b], kb)))) for (a, b), (ka, kb)
                        in ((e.ends, e.kappas) for e in H1.edges))
        if mapped == target:
            return True
    return False


def test_emitted_covers_pairwise_inequivalent_by_brute_force():
    for key in ALL:
        by_base = {}
        for G, C in ALL[key]:
            by_base.setdefault(id(G), []).append(C)
        for cs in by_base.values():
            for i, A in enumerate(cs):
                if len(A.vertices) > 7:
                    continue
                for B in cs[i + 1:]:
                    if _coarse_equivalent(A, B):
                        # coarse equivalence must then be split by the shifts mod coboundaries
                        assert cover_canonical_form(A) != cover_canonical_form(B)
                        assert A.d != B.d or A.shifts != B.shifts


def test_every_candidate_is_represented():
    """Completeness: every connected (d, c) choice is equivalent to an emitted cover."""
    for G in enumerate_boundary_graphs(SIG_GA, "two_level"):
        emitted = {cover_canonical_form(C) for C in enumerate_covers(G)}
        opts = [power_divisors(vertex_signature(G, v)) for v in range(G.num_vertices)]
        sizes = [cover_edge_enhancement(G.k, e.kappas[0])[0] for e in G.edges]
        for d in itertools.product(*opts):
            for c in itertools.product(*(range(N) for N in sizes)):
                try:
                    C = build_cover(G, d, c)
                except E.Inconsistent:
                    continue
                if C.is_connected():
                    assert cover_canonical_form(C) in emitted
