import itertools

import pytest

from kmsdiff.graphs import make_graph
from kmsdiff.stratum import Signature

ACCEPTANCE_LINES = []


def gamma_a():
    """Top g=1 at level 0, bottom g=1 with legs (2,2), one edge kappa 2."""
    return make_graph(2, [(1, 0), (1, -1)], [(0, 1, 2)], [(1, 1, 2), (1, 2, 2)])


def single_tail():
    return make_graph(1, [(1, 0), (1, -1)], [(0, 1, 1)], [(1, 1, 2)])


def two_tails():
    return make_graph(1, [(1, 0), (1, 0), (0, -1)], [(0, 2, 1), (1, 2, 1)], [(2, 1, 2)])


def banana():
    return make_graph(1, [(0, 0)], [((0, 0), (0, 0))], [(0, 1, 0)])


def chain():
    """Three-level k=1 graph with edges 0->-1 (2), -1->-2 (2), 0->-2 (3)."""
    return make_graph(1, [(3, 0), (0, -1), (0, -2)], [(0, 1, 2), (1, 2, 2), (0, 2, 3)],
                      [(0, 1, 1), (1, 2, 0), (2, 3, 5)])


SIG_GA = Signature(2, 2, (2, 2))
SIG_H2 = Signature(1, 2, (2,))
SIG_TORUS = Signature(1, 1, (0,))
SIG_PILLOW = Signature(2, 0, (-1, -1, -1, -1))
SIG_CHAIN = Signature(1, 4, (1, 0, 5))


def brute_isomorphic(G1, G2):
    """Isomorphism by trying every vertex bijection (small graphs only)."""
    if (G1.k, G1.num_vertices, len(G1.edges)) != (G2.k, G2.num_vertices, len(G2.edges)):
        return False
    if sorted((l.label, l.order, l.kappa) for l in G1.legs) != \
            sorted((l.label, l.order, l.kappa) for l in G2.legs):
        return False
    legs2 = {l.label: l.vertex for l in G2.legs}

    def edge_key(G, e, perm):
        (a, b), (ka, kb) = e.ends, e.kappas
        return min((perm[a], perm[b], ka, kb), (perm[b], perm[a], kb, ka))

    target = sorted(edge_key(G2, e, list(range(G2.num_vertices))) for e in G2.edges)
    for perm in itertools.permutations(range(G2.num_vertices)):
        if any((G1.genera[v], G1.levels[v]) != (G2.genera[perm[v]], G2.levels[perm[v]])
               for v in range(G1.num_vertices)):
            continue
        if any(perm[l.vertex] != legs2[l.label] for l in G1.legs):
            continue
        if sorted(edge_key(G1, e, perm) for e in G1.edges) == target:
            return True
    return False


def record_acceptance(number, passed, detail):
    line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def GA():
    return gamma_a()
