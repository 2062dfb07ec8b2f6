"""Cyclic degree-k covers of enhanced level graphs.

A cover is fixed by two choices.  Each base vertex v gets a number ``d_v``
of local components, an admissible power divisor of the vertex
signature.  Each base edge e gets a shift ``c_e`` in ``Z/N_e``, where
``N_e = gcd(k, kappa_e)`` (``k`` for horizontal edges) counts the preimage
nodes.

Over an edge the points above its first end are ``A_0..A_{N-1}`` and those
above its second end are ``B_0..B_{N-1}``.  The deck transformation acts by
``s -> s + 1``, and ``A_s`` lies on component ``s mod d``.  Cover edge ``s``
glues ``A_s`` to ``B_{s+c}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import gcd

from . import errors as E
from .graphs import (Edge, EnhancedLevelGraph, Leg, canonical_labelings,
                     vertex_signature)
from .stratum import Signature, cover_signature, power_divisors, reduce_signature


def cover_edge_enhancement(k: int, kappa: int) -> tuple[int, int]:
    """``(number of cover edges, kappa on the cover)`` over an edge."""
    kappa = abs(kappa)
    if kappa == 0:
        return k, 0
    f = gcd(k, kappa)
    return f, kappa // f


@dataclass(frozen=True)
class CoverEdge:
    base_edge: int
    sheet: int
    ends: tuple[int, int]        # cover vertex indices
    points: tuple[int, int]      # fiber indices of the two glued points
    kappas: tuple[int, int]


@dataclass(frozen=True)
class GraphCover:
    base: EnhancedLevelGraph
    d: tuple[int, ...]
    shifts: tuple[int, ...]
    vertices: tuple[tuple[int, int], ...]
    genera: tuple[int, ...]
    edges: tuple[CoverEdge, ...]
    tau_vertices: tuple[int, ...]
    tau_edges: tuple[int, ...]

    @property
    def k(self):
        return self.base.k

    def vertex_index(self, v, a):
        return self.vertices.index((v, a))

    def fiber_size(self, e_index):
        return cover_edge_enhancement(self.k, self.base.edges[e_index].kappas[0])[0]

    def level(self, cv):
        return self.base.levels[self.vertices[cv][0]]

    def vertical_edges(self):
        return [i for i, ce in enumerate(self.edges) if self.level(ce.ends[0]) != self.level(ce.ends[1])]

    def tau_edge_orbits(self, indices=None):
        indices = range(len(self.edges)) if indices is None else indices
        seen, orbits = set(), []
        for i in indices:
            if i in seen:
                continue
            orb, j = [], i
            while j not in seen:
                seen.add(j)
                orb.append(j)
                j = self.tau_edges[j]
            orbits.append(orb)
        return orbits

    def leg_points(self):
        """List of ``(cover vertex, base label, sheet, order, kappa)``."""
        out = []
        for l in self.base.legs:
            f = gcd(self.k, l.order)
            mh = (self.k + l.order) // f - 1
            dv = self.d[l.vertex]
            for s in range(f):
                out.append((self.vertex_index(l.vertex, s % dv), l.label, s, mh, mh + 1))
        return out

    def is_connected(self):
        return self.cover_graph(check=False).num_components() == 1

    def cover_graph(self, check=True) -> EnhancedLevelGraph:
        """The cover as an abelian (k = 1) level graph; legs numbered in
        (base label, sheet) order."""
        legs = [Leg(cv, n + 1, order, kap)
                for n, (cv, _, _, order, kap) in enumerate(self.leg_points())]
        edges = [Edge(ce.ends, ce.kappas, f"{self.base.edges[ce.base_edge].id}.{ce.sheet}")
                 for ce in self.edges]
        levels = tuple(self.base.levels[v] for v, _ in self.vertices)
        return EnhancedLevelGraph(1, self.genera, levels, tuple(edges), tuple(legs),
                                  tuple(f"{self.base.vertex_ids[v]}.{a}" for v, a in self.vertices))

    def ambient_signature(self) -> Signature:
        return base_signature(self.base)

    def __repr__(self):
        return f"GraphCover(d={self.d}, shifts={self.shifts}, genera={self.genera})"


def base_signature(G: EnhancedLevelGraph) -> Signature:
    return Signature(G.k, G.genus, tuple(l.order for l in G.legs))


def vertex_types(G: EnhancedLevelGraph, v: int) -> list[int]:
    """Admissible numbers of local components over v.

    On a genus 0 vertex every differential whose orders share a factor with
    k is a power of one with coprime orders, so only the largest power
    divisor is possible there.
    """
    ds = power_divisors(vertex_signature(G, v))
    return ds[-1:] if G.genera[v] == 0 else ds


def component_genus(G, v, d):
    """Genus of one local component over v, or None if not realizable."""
    try:
        gh = cover_signature(reduce_signature(vertex_signature(G, v), d)).g_hat
    except E.NonIntegralGenus:
        return None
    return gh if gh >= 0 else None


def build_cover(G: EnhancedLevelGraph, d, shifts) -> GraphCover:
    k = G.k
    d, shifts = tuple(d), tuple(shifts)
    vertices = tuple((v, a) for v in range(G.num_vertices) for a in range(d[v]))
    genera = []
    for v in range(G.num_vertices):
        if d[v] not in vertex_types(G, v):
            raise E.Inconsistent(f"d={d[v]} is not an admissible vertex type at vertex {G.vertex_ids[v]}")
        gh = component_genus(G, v, d[v])
        if gh is None:
            raise E.Inconsistent(f"d={d[v]} gives no valid component genus at vertex {G.vertex_ids[v]}")
        genera.extend([gh] * d[v])
    index = {cv: i for i, cv in enumerate(vertices)}
    edges, tau_e, offset = [], [], 0
    for i, e in enumerate(G.edges):
        N, kh = cover_edge_enhancement(k, e.kappas[0])
        c = shifts[i] % N
        a, b = e.ends
        sgn = 1 if e.kappas[0] >= 0 else -1
        for s in range(N):
            t = (s + c) % N
            edges.append(CoverEdge(i, s, (index[(a, s % d[a])], index[(b, t % d[b])]),
                                   (s, t), (sgn * kh, -sgn * kh)))
            tau_e.append(offset + (s + 1) % N)
        offset += N
    tau_v = tuple(index[(v, (a + 1) % d[v])] for v, a in vertices)
    return GraphCover(G, d, tuple(s % cover_edge_enhancement(k, e.kappas[0])[0]
                                  for s, e in zip(shifts, G.edges)),
                      vertices, tuple(genera), tuple(edges), tau_v, tuple(tau_e))


# -- shift normal form ----------------------------------------------------

def _coboundary_image(k, ends, sizes, nverts):
    gens = []
    for v in range(nverts):
        gen = tuple(((1 if b == v else 0) - (1 if a == v else 0)) % N
                    for (a, b), N in zip(ends, sizes))
        gens.append(gen)
    image = {tuple(0 for _ in sizes)}
    frontier = list(image)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((p + q) % N for p, q, N in zip(x, g, sizes))
                if y not in image:
                    image.add(y)
                    nxt.append(y)
        frontier = nxt
    return image


def shift_class_min(k, ends, sizes, nverts, shifts, image=None):
    """Lexicographically least shift vector equivalent to ``shifts``."""
    image = _coboundary_image(k, ends, sizes, nverts) if image is None else image
    return min(tuple((c + x) % N for c, x, N in zip(shifts, y, sizes)) for y in image)


def cover_canonical_form(C: GraphCover) -> bytes:
    G, k = C.base, C.k
    enc, labelings = canonical_labelings(G, vertex_decoration=list(C.d))
    best = None
    for pos, edge_orders in labelings:
        for order, flips in edge_orders:
            ends, sizes, shifts = [], [], []
            for i, f in zip(order, flips):
                e = G.edges[i]
                a, b = pos[e.ends[0]], pos[e.ends[1]]
                N = C.fiber_size(i)
                ends.append((b, a) if f else (a, b))
                sizes.append(N)
                shifts.append((-C.shifts[i] if f else C.shifts[i]) % N)
            m = shift_class_min(k, ends, sizes, G.num_vertices, shifts)
            if best is None or m < best:
                best = m
    return json.dumps([enc, list(best or ())], separators=(",", ":")).encode()


# -- enumeration ----------------------------------------------------------

def enumerate_covers(G: EnhancedLevelGraph, connected_only=True, verbose=False):
    """Yield every cover of G up to equivalence, in a deterministic order.

    Choices without a valid component genus are dropped; with
    ``connected_only`` (the default) covers whose graph is disconnected,
    i.e. covers of d-th powers, are dropped too.  With ``verbose`` the
    dropped choices are yielded as :class:`~kmsdiff.errors.Inconsistent`
    instances instead of being skipped silently.
    """
    k = G.k
    options = [vertex_types(G, v) for v in range(G.num_vertices)]
    sizes = [cover_edge_enhancement(k, e.kappas[0])[0] for e in G.edges]
    ends = [e.ends for e in G.edges]
    image = _coboundary_image(k, ends, sizes, G.num_vertices)
    reps = sorted({shift_class_min(k, ends, sizes, G.num_vertices, c, image)
                   for c in product(*(range(N) for N in sizes))})
    seen = set()
    for d in product(*options):
        bad = [v for v in range(G.num_vertices) if component_genus(G, v, d[v]) is None]
        if bad:
            if verbose:
                yield E.Inconsistent(f"d={d}: no valid component genus at vertices {bad}")
            continue
        for c in reps:
            C = build_cover(G, d, c)
            if connected_only and not C.is_connected():
                if verbose:
                    yield E.Inconsistent(f"d={d}, shifts={c}: disconnected cover")
                continue
            key = cover_canonical_form(C)
            if key in seen:
                continue
            seen.add(key)
            yield C


# -- validation -----------------------------------------------------------

def _cycle_lengths(perm, subset):
    lengths = set()
    for i in subset:
        n, j = 1, perm[i]
        while j != i:
            j = perm[j]
            n += 1
            if n > len(perm):
                return {0}
        lengths.add(n)
    return lengths


def validate_cover(C: GraphCover, raise_on_error=False) -> dict:
    """Check the structural invariants of a cover.

    Returns ``{"pass": bool, "errors": [{"code", "message"}...]}``.
    """
    G, k = C.base, C.k
    errs = []

    def fail(cls, msg):
        errs.append(cls(msg))

    nv, ne = len(C.vertices), len(C.edges)
    for i, e in enumerate(G.edges):
        n_pre = sum(1 for ce in C.edges if ce.base_edge == i)
        if n_pre != C.fiber_size(i):
            fail(E.QuotientMismatch, f"edge {e.id}: {n_pre} preimages, expected {C.fiber_size(i)}")
    if sorted(C.tau_vertices) != list(range(nv)) or sorted(C.tau_edges) != list(range(ne)):
        fail(E.DeckOrder, "tau is not a permutation")
    else:
        for v in range(G.num_vertices):
            fib = [i for i, (w, _) in enumerate(C.vertices) if w == v]
            if any(C.tau_vertices[i] not in fib for i in fib) or _cycle_lengths(C.tau_vertices, fib) != {len(fib)}:
                fail(E.DeckOrder, f"tau does not cycle the {len(fib)} components over vertex {G.vertex_ids[v]}")
        for i, e in enumerate(G.edges):
            fib = [j for j, ce in enumerate(C.edges) if ce.base_edge == i]
            N = C.fiber_size(i)
            if len(fib) == N and any(C.tau_edges[j] not in fib for j in fib) or _cycle_lengths(C.tau_edges, fib) != {N}:
                fail(E.DeckOrder, f"tau does not cycle the {N} preimages of edge {e.id}")
        for p in (C.tau_vertices, C.tau_edges):
            for i in range(len(p)):
                j = i
                for _ in range(k):
                    j = p[j]
                if j != i:
                    fail(E.DeckOrder, "tau^k is not the identity")
                    break
        for j, ce in enumerate(C.edges):
            img = C.edges[C.tau_edges[j]]
            if img.ends != tuple(C.tau_vertices[x] for x in ce.ends) and \
                    img.ends[::-1] != tuple(C.tau_vertices[x] for x in ce.ends):
                fail(E.DeckOrder, f"tau is not compatible with the ends of cover edge {j}")
                break

    for ce in C.edges:
        e = G.edges[ce.base_edge]
        if {C.vertices[x][0] for x in ce.ends} != set(e.ends) or \
                (C.vertices[ce.ends[0]][0], C.vertices[ce.ends[1]][0]) not in (e.ends, e.ends[::-1]):
            fail(E.QuotientMismatch, f"cover edge over {e.id} does not map onto it")
        _, kh = cover_edge_enhancement(k, e.kappas[0])
        if sorted(ce.kappas) != sorted((kh, -kh)) or (ce.kappas[0] > 0) != (e.kappas[0] > 0):
            fail(E.EnhancementLift, f"cover edge over {e.id} has kappa {ce.kappas}, expected +-{kh}")
    if sorted({v for v, _ in C.vertices}) != list(range(G.num_vertices)):
        fail(E.QuotientMismatch, "some base vertex has no preimage")

    sums = [0] * nv
    for cv, _, _, order, _ in C.leg_points():
        sums[cv] += order
    for ce in C.edges:
        for x, kap in zip(ce.ends, ce.kappas):
            sums[x] += kap - 1
    for i, g in enumerate(C.genera):
        if sums[i] != 2 * g - 2:
            fail(E.DegreeSum, f"cover vertex {C.vertices[i]}: orders sum to {sums[i]} != {2 * g - 2}")
    if raise_on_error and errs:
        raise errs[0]
    return {"pass": not errs, "errors": [x.to_json() for x in errs]}
