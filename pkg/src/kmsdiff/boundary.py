"""Enumeration of enhanced level graphs of a stratum."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from . import errors as E
from .graphs import Edge, EnhancedLevelGraph, Leg, canonical_form, validate_enhanced_graph
from .stratum import Signature

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class Mode:
    name: str
    max_levels: int      # number of levels, L + 1
    max_edges: int

    @classmethod
    def parse(cls, mode, max_levels=None, max_edges=None):
        if isinstance(mode, Mode):
            return mode
        if mode == "two_level":
            return cls("two_level", 2, max_edges or 10**9)
        if mode == "one_horizontal":
            return cls("one_horizontal", 1, 1)
        if mode.startswith("all_up_to"):
            args = mode[len("all_up_to"):].strip("()")
            if args:
                lv, ed = (int(x) for x in args.split(","))
            else:
                lv, ed = max_levels or 2, max_edges or 3
            return cls("all_up_to", lv, ed)
        raise ValueError(f"unknown mode {mode!r}")

    def accepts(self, L, n_edges, n_horizontal):
        if self.name == "two_level":
            return L == 1 and n_horizontal == 0 and n_edges <= self.max_edges
        if self.name == "one_horizontal":
            return L == 0 and n_edges == 1 and n_horizontal == 1
        return n_edges >= 1 and L + 1 <= self.max_levels and n_edges <= self.max_edges


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _kappa_solutions(k, genera, levels, pairs, leg_sum):
    """Enhancements on vertical edges solving the vertex equations.

    ``pairs`` lists edges as vertex pairs; yields tuples of the upper-end
    kappa for each edge (0 for horizontal edges).
    """
    V = len(genera)
    ends = [0] * V
    for a, b in pairs:
        ends[a] += 1
        ends[b] += 1
    target = [k * (2 * genera[v] - 2) - leg_sum[v] + k * ends[v] for v in range(V)]
    down = [[i for i, (a, b) in enumerate(pairs) if levels[a] != levels[b]
             and ((levels[a] > levels[b] and a == v) or (levels[b] > levels[a] and b == v))]
            for v in range(V)]
    up = [[i for i, (a, b) in enumerate(pairs) if levels[a] != levels[b]
           and ((levels[a] < levels[b] and a == v) or (levels[b] < levels[a] and b == v))]
          for v in range(V)]
    order = sorted(range(V), key=lambda v: -levels[v])
    x = [0] * len(pairs)

    def rec(idx):
        if idx == V:
            yield tuple(x)
            return
        v = order[idx]
        need = target[v] + sum(x[i] for i in up[v])
        for comp in _compositions(need, len(down[v])) if need >= 0 else ():
            for i, val in zip(down[v], comp):
                x[i] = val
            yield from rec(idx + 1)
        for i in down[v]:
            x[i] = 0

    yield from rec(0)


def _edge_multisets(vertical, horizontal, n_vert, n_hor):
    for vs in combinations_with_replacement(vertical, n_vert):
        for hs in combinations_with_replacement(horizontal, n_hor):
            yield vs + hs


def _connected(V, pairs):
    parent = list(range(V))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(V)}) == 1


def enumerate_boundary_graphs(sig: Signature, mode="two_level", max_levels=None,
                              max_edges=None, cap=DEFAULT_CAP):
    """Yield all valid enhanced level graphs of ``sig`` allowed by ``mode``,
    each isomorphism class once, in a deterministic order."""
    mode = Mode.parse(mode, max_levels, max_edges)
    k, g, n = sig.k, sig.g, sig.n
    Emax = min(3 * g - 3 + n, mode.max_edges)
    Vmax = max(min(2 * g - 2 + n, Emax + 1), 1)
    seen = set()
    work = 0
    for V in range(1, Vmax + 1):
        for L in range(0, min(mode.max_levels, V)):
            types = [(-lv, gv) for lv in range(0, -L - 1, -1) for gv in range(g + 1)]
            for vt in combinations_with_replacement(types, V):
                levels = [-t[0] for t in vt]
                genera = [t[1] for t in vt]
                if set(levels) != set(range(-L, 1)):
                    continue
                n_edges = g - sum(genera) + V - 1
                if n_edges < V - 1 or n_edges > Emax:
                    continue
                pair_types = [(a, b) for a in range(V) for b in range(a, V)]
                vert = [p for p in pair_types if levels[p[0]] != levels[p[1]]]
                hor = [p for p in pair_types if levels[p[0]] == levels[p[1]]]
                for n_hor in range(n_edges + 1):
                    if not mode.accepts(L, n_edges, n_hor):
                        continue
                    for pairs in _edge_multisets(vert, hor, n_edges - n_hor, n_hor):
                        if not _connected(V, pairs):
                            continue
                        for assign in product(range(V), repeat=n):
                            work += 1
                            if work > cap:
                                raise E.BoundsTooLarge(f"enumeration exceeded {cap} candidates")
                            val = [0] * V
                            leg_sum = [0] * V
                            for v, m in zip(assign, sig.mu):
                                val[v] += 1
                                leg_sum[v] += m
                            for a, b in pairs:
                                val[a] += 1
                                val[b] += 1
                            if any(2 * genera[v] - 2 + val[v] <= 0 for v in range(V)):
                                continue
                            for kap in _kappa_solutions(k, genera, levels, pairs, leg_sum):
                                edges = []
                                for i, ((a, b), x) in enumerate(zip(pairs, kap)):
                                    if levels[a] < levels[b]:
                                        a, b = b, a
                                    edges.append(Edge((a, b), (x, -x), i))
                                legs = [Leg(v, i + 1, m, m + k)
                                        for i, (v, m) in enumerate(zip(assign, sig.mu))]
                                G = EnhancedLevelGraph(k, tuple(genera), tuple(levels),
                                                       tuple(edges), tuple(legs))
                                try:
                                    validate_enhanced_graph(G, sig)
                                except E.ValidationError:
                                    continue
                                key = canonical_form(G)
                                if key in seen:
                                    continue
                                seen.add(key)
                                yield G
