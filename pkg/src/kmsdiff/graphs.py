"""Enhanced level graphs for k-differentials.

A graph is stored with integer vertex indices.  Each edge keeps the pair of
end vertices together with the enhancement at each end; for a vertical edge
the first end is the upper one.  Legs carry the point label (1-based), the
order ``m`` and the enhancement ``m + k``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import permutations, product

from . import errors as E
from .stratum import Signature


@dataclass(frozen=True)
class Edge:
    ends: tuple[int, int]
    kappas: tuple[int, int]
    id: object = None

    @property
    def is_loop(self):
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Leg:
    vertex: int
    label: int
    order: int
    kappa: int


@dataclass(frozen=True)
class EnhancedLevelGraph:
    k: int
    genera: tuple[int, ...]
    levels: tuple[int, ...]
    edges: tuple[Edge, ...]
    legs: tuple[Leg, ...]
    vertex_ids: tuple = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(self.genera))
        object.__setattr__(self, "levels", tuple(self.levels))
        edges = tuple(e if e.id is not None else replace(e, id=i)
                      for i, e in enumerate(self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "legs", tuple(sorted(self.legs, key=lambda l: l.label)))
        if self.vertex_ids is None:
            object.__setattr__(self, "vertex_ids", tuple(range(len(self.genera))))

    # -- basic structure -------------------------------------------------
    @property
    def num_vertices(self):
        return len(self.genera)

    @property
    def depth(self):
        """Number of level passages L (levels are 0, -1, ..., -L)."""
        return -min(self.levels)

    @property
    def genus(self):
        return sum(self.genera) + self.betti_number

    @property
    def betti_number(self):
        return len(self.edges) - self.num_vertices + self.num_components()

    def num_components(self, vertices=None, edges=None):
        vertices = range(self.num_vertices) if vertices is None else vertices
        edges = self.edges if edges is None else edges
        parent = {v: v for v in vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in edges:
            a, b = find(e.ends[0]), find(e.ends[1])
            if a != b:
                parent[a] = b
        return len({find(v) for v in vertices})

    def is_horizontal(self, e: Edge) -> bool:
        return self.levels[e.ends[0]] == self.levels[e.ends[1]]

    @property
    def horizontal_edges(self):
        return [e for e in self.edges if self.is_horizontal(e)]

    @property
    def vertical_edges(self):
        return [e for e in self.edges if not self.is_horizontal(e)]

    def half_edges(self):
        """List of ``(vertex, kappa, kind, ref)``; kind is 'leg' or 'edge'."""
        out = [(l.vertex, l.kappa, "leg", l.label) for l in self.legs]
        for e in self.edges:
            out.append((e.ends[0], e.kappas[0], "edge", (e.id, 0)))
            out.append((e.ends[1], e.kappas[1], "edge", (e.id, 1)))
        return out

    def valence(self, v):
        return sum(1 for h in self.half_edges() if h[0] == v)

    def edge(self, edge_id) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def __repr__(self):
        return (f"EnhancedLevelGraph(k={self.k}, genera={self.genera}, levels={self.levels}, "
                f"edges={[(e.ends, e.kappas) for e in self.edges]}, "
                f"legs={[(l.vertex, l.label, l.order) for l in self.legs]})")


def make_graph(k, vertices, edges, legs, vertex_ids=None) -> EnhancedLevelGraph:
    """Convenience constructor.

    ``vertices`` is a list of ``(genus, level)``; ``edges`` a list of
    ``(v_upper, v_lower, kappa_upper)`` (the lower end gets ``-kappa``) or of
    ``((u, v), (kappa_u, kappa_v))``; ``legs`` a list of ``(vertex, label, order)``.
    """
    es = []
    for i, e in enumerate(edges):
        if len(e) == 3:
            u, v, kap = e
            es.append(Edge((u, v), (kap, -kap), i))
        else:
            es.append(Edge(tuple(e[0]), tuple(e[1]), i))
    ls = [Leg(v, lab, m, m + k) if len(l) == 3 else Leg(*l)
          for l in legs for (v, lab, m) in [l[:3]]]
    return EnhancedLevelGraph(k, tuple(g for g, _ in vertices),
                              tuple(lv for _, lv in vertices), tuple(es), tuple(ls),
                              vertex_ids)


def one_vertex_graph(sig: Signature) -> EnhancedLevelGraph:
    return make_graph(sig.k, [(sig.g, 0)], [],
                      [(0, i + 1, m) for i, m in enumerate(sig.mu)])


# -- validation -----------------------------------------------------------

def validate_enhanced_graph(G: EnhancedLevelGraph, sig: Signature) -> EnhancedLevelGraph:
    k = sig.k
    if G.k != k:
        raise E.VertexSum(f"graph built for k={G.k}, signature has k={k}")
    V = G.num_vertices
    if V == 0:
        raise E.Disconnected("graph has no vertices")
    levels = set(G.levels)
    if max(levels) != 0 or levels != set(range(min(levels), 1)):
        raise E.LevelNormalization(f"levels {sorted(levels)} are not 0,-1,...,-L")
    if G.num_components() != 1:
        raise E.Disconnected("graph is not connected")

    labels = sorted(l.label for l in G.legs)
    if labels != list(range(1, sig.n + 1)):
        raise E.LegOrder(f"leg labels {labels} do not match points 1..{sig.n}")
    for l in G.legs:
        if l.order != sig.mu[l.label - 1]:
            raise E.LegOrder(f"leg {l.label} has order {l.order}, expected {sig.mu[l.label - 1]}")
        if l.kappa != l.order + k:
            raise E.LegOrder(f"leg {l.label} has kappa {l.kappa} != m + k = {l.order + k}")

    for e in G.edges:
        a, b = e.kappas
        if a + b != 0:
            raise E.EdgeBalance(f"edge {e.id}: kappas {e.kappas} do not cancel")
        la, lb = G.levels[e.ends[0]], G.levels[e.ends[1]]
        if la == lb:
            if a != 0:
                raise E.LevelOrientation(f"horizontal edge {e.id} has kappa {a} != 0")
        else:
            up = a if la > lb else b
            if up <= 0:
                raise E.LevelOrientation(f"vertical edge {e.id}: upper end has kappa {up} <= 0")

    sums = [0] * V
    val = [0] * V
    for v, kap, _, _ in G.half_edges():
        sums[v] += kap - k
        val[v] += 1
    for v in range(V):
        if sums[v] != k * (2 * G.genera[v] - 2):
            raise E.VertexSum(f"vertex {G.vertex_ids[v]}: sum of (kappa - k) = {sums[v]}"
                              f" != k(2g-2) = {k * (2 * G.genera[v] - 2)}")
        if G.genera[v] < 0 or 2 * G.genera[v] - 2 + val[v] <= 0:
            raise E.Stability(f"vertex {G.vertex_ids[v]} (genus {G.genera[v]}, "
                              f"{val[v]} half-edges) is unstable")
    if G.genus != sig.g:
        raise E.GenusMismatch(f"graph genus {G.genus} != {sig.g}")
    return G


def vertex_signature(G: EnhancedLevelGraph, v: int) -> Signature:
    """Signature at vertex v: legs in label order, then edge ends in edge order."""
    orders = [l.order for l in G.legs if l.vertex == v]
    for e in G.edges:
        for end in (0, 1):
            if e.ends[end] == v:
                orders.append(e.kappas[end] - G.k)
    return Signature(G.k, G.genera[v], tuple(orders))


# -- undegeneration -------------------------------------------------------

def passages_crossed(top_level: int, bottom_level: int) -> range:
    """Passages (named by their lower level) crossed between two levels."""
    return range(bottom_level, top_level)


def undegenerate(G: EnhancedLevelGraph, keep=None, contract_horizontal=()) -> EnhancedLevelGraph:
    """Contract edges: vertical ones crossing only discarded passages, and
    the horizontal edges listed (by id) in ``contract_horizontal``.

    ``keep`` is the set of level passages that remain, as negative integers
    ``-1..-L``; ``None`` keeps all of them.
    """
    L = G.depth
    allp = set(range(-L, 0))
    keep = allp if keep is None else set(keep)
    if not keep <= allp:
        raise E.InvalidPassage(f"passages {sorted(keep - allp)} not in -1..-{L}")
    hor_ids = {e.id for e in G.horizontal_edges}
    E0 = set(contract_horizontal)
    if not E0 <= hor_ids:
        raise E.NotHorizontal(f"edges {sorted(map(str, E0 - hor_ids))} are not horizontal")

    contracted = []
    for e in G.edges:
        if e.id in E0:
            contracted.append(e)
        elif e.id not in hor_ids:
            la, lb = G.levels[e.ends[0]], G.levels[e.ends[1]]
            crossed = passages_crossed(max(la, lb), min(la, lb))
            if not any(p in keep for p in crossed):
                contracted.append(e)

    parent = list(range(G.num_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in contracted:
        a, b = find(e.ends[0]), find(e.ends[1])
        if a != b:
            parent[a] = b
    roots = sorted({find(v) for v in range(G.num_vertices)})
    new_index = {r: i for i, r in enumerate(roots)}
    genera = [0] * len(roots)
    nverts = [0] * len(roots)
    nedges = [0] * len(roots)
    for v in range(G.num_vertices):
        r = new_index[find(v)]
        genera[r] += G.genera[v]
        nverts[r] += 1
    for e in contracted:
        nedges[new_index[find(e.ends[0])]] += 1
    # each merged piece is connected, so its first Betti number is E - V + 1
    genera = [g + ne - nv + 1 for g, ne, nv in zip(genera, nedges, nverts)]

    def new_level(j):
        return -sum(1 for p in keep if p >= j)

    levels = [0] * len(roots)
    for v in range(G.num_vertices):
        levels[new_index[find(v)]] = new_level(G.levels[v])
    cids = {e.id for e in contracted}
    edges = tuple(Edge((new_index[find(e.ends[0])], new_index[find(e.ends[1])]), e.kappas, e.id)
                  for e in G.edges if e.id not in cids)
    legs = tuple(replace(l, vertex=new_index[find(l.vertex)]) for l in G.legs)
    vids = tuple(G.vertex_ids[r] for r in roots)
    return EnhancedLevelGraph(G.k, tuple(genera), tuple(levels), edges, legs, vids)


# -- canonical form -------------------------------------------------------

def _incidence(G):
    inc = [[] for _ in range(G.num_vertices)]
    for e in G.edges:
        (a, b), (ka, kb) = e.ends, e.kappas
        inc[a].append((ka, kb, b, a == b))
        inc[b].append((kb, ka, a, a == b))
    return inc


def _rank(keys):
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _refine(inc, colors):
    while True:
        keys = [(colors[v], tuple(sorted((ka, kb, colors[w], loop) for ka, kb, w, loop in inc[v])))
                for v in range(len(colors))]
        new = _rank(keys)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _leaves(inc, colors, cap):
    colors = _refine(inc, colors)
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    cell = next((classes[c] for c in sorted(classes) if len(classes[c]) > 1), None)
    if cell is None:
        yield colors
        return
    for v in cell:
        ind = _rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)])
        yield from _leaves(inc, ind, cap)


def _initial_colors(G, extra=None):
    legs = [[] for _ in range(G.num_vertices)]
    for l in G.legs:
        legs[l.vertex].append((l.label, l.order))
    keys = [(-G.levels[v], G.genera[v], tuple(sorted(legs[v])),
             extra[v] if extra is not None else 0) for v in range(G.num_vertices)]
    return _rank(keys)


def _encode(G, pos):
    verts = [None] * G.num_vertices
    for v, p in enumerate(pos):
        verts[p] = (G.levels[v], G.genera[v])
    legs = sorted((l.label, pos[l.vertex], l.order, l.kappa) for l in G.legs)
    edges = []
    for e in G.edges:
        (a, b), (ka, kb) = e.ends, e.kappas
        t1 = (pos[a], pos[b], ka, kb)
        t2 = (pos[b], pos[a], kb, ka)
        edges.append(min(t1, t2))
    return (G.k, tuple(verts), tuple(legs), tuple(sorted(edges)))


def canonical_labelings(G: EnhancedLevelGraph, vertex_decoration=None, cap=200000):
    """Return ``(encoding, labelings)`` for the lexicographically minimal encoding.

    Each labeling is ``(pos, edge_orders)``: ``pos[v]`` is the new index of
    vertex v and ``edge_orders`` lists every ``(order, flips)`` that sorts the
    edges into the encoded order, ``flips[i]`` telling whether edge
    ``order[i]`` had its ends swapped.  Several labelings mean the graph
    has automorphisms.
    """
    inc = _incidence(G)
    best, best_pos = None, []
    for n, colors in enumerate(_leaves(inc, _initial_colors(G, vertex_decoration), cap)):
        if n >= cap:
            raise E.BoundsTooLarge(f"canonical labeling search exceeded {cap} leaves")
        enc = _encode(G, colors)
        if vertex_decoration is not None:
            enc = enc + (tuple(vertex_decoration[v] for v in sorted(range(len(colors)), key=colors.__getitem__)),)
        if best is None or enc < best:
            best, best_pos = enc, [colors]
        elif enc == best:
            best_pos.append(colors)
    labelings = []
    for pos in best_pos:
        groups = {}
        for i, e in enumerate(G.edges):
            (a, b), (ka, kb) = e.ends, e.kappas
            t1, t2 = (pos[a], pos[b], ka, kb), (pos[b], pos[a], kb, ka)
            key = min(t1, t2)
            opts = [False] if t1 < t2 else [True] if t2 < t1 else [False, True]
            groups.setdefault(key, []).append((i, opts))
        choices = []
        for key in sorted(groups):
            members = groups[key]
            alts = []
            for perm in permutations(members):
                for flips in product(*(opts for _, opts in perm)):
                    alts.append(([i for i, _ in perm], list(flips)))
            choices.append(alts)
        edge_orders = []
        for combo in product(*choices):
            order = [i for part in combo for i in part[0]]
            flips = [f for part in combo for f in part[1]]
            edge_orders.append((order, flips))
        labelings.append((pos, edge_orders))
    return best, labelings


def canonical_form(G: EnhancedLevelGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic (respecting
    levels, genera, enhancements and leg labels)."""
    enc, _ = canonical_labelings(G)
    return json.dumps(enc, separators=(",", ":")).encode()
