"""Eigenspace dimensions, residue conditions and the level dimension count.

The periods of a level are modelled on the zeta-eigenspace of the relative
homology of the cover at that level.  Residues at poles over vertical
edges with ``k | kappa`` and at horizontal nodes are cut down further by
three kinds of linear conditions:

* the residue theorem on each cover component (already part of the eigenspace),
* the global residue condition for each connected piece of the cover above the level,
* opposite residues at the two branches of each horizontal node.

Ranks are computed exactly over the cyclotomic field.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import errors as E
from .intlin import cyclo_zero, cyclotomic_rank, zeta_power
from .stratum import stratum_dimension

ROLES = ("relative", "puncture")


@dataclass(frozen=True)
class LevelComponentData:
    g: int
    points: tuple      # ((order, role), ...)
    k: int
    d: int = 1


def eigenspace_dim(data: LevelComponentData) -> int:
    """Dimension of the zeta-eigenspace of one base component.

    After reducing by ``d`` the character is primitive of order ``k/d``.
    For nontrivial characters the answer is ``2g - 2 + n``.  For the
    trivial one it is ``2g + (p - 1) + (z - 1)``, where p counts
    punctures and z counts relative points, and a missing kind
    contributes 0.
    """
    for m, role in data.points:
        if role not in ROLES:
            raise E.InvalidRole(f"role {role!r} is not one of {ROLES}")
    k, d = data.k, data.d
    if d < 1 or k % d or any(m % d for m, _ in data.points):
        raise E.DimensionMismatch(f"d={d} does not divide k={k} and all orders")
    kk = k // d
    n = len(data.points)
    if kk >= 2:
        return 2 * data.g - 2 + n
    p = sum(1 for _, r in data.points if r == "puncture")
    z = n - p
    return 2 * data.g + max(p - 1, 0) + max(z - 1, 0)


def vertex_component_data(C, v) -> LevelComponentData:
    """Points at base vertex v with their level roles."""
    G = C.base
    pts = []
    for l in G.legs:
        if l.vertex == v:
            pts.append((l.order, "puncture" if l.order <= -G.k else "relative"))
    for e in G.edges:
        for end in (0, 1):
            if e.ends[end] == v:
                kap = e.kappas[end]
                pts.append((kap - G.k, "relative" if kap > 0 else "puncture"))
    return LevelComponentData(G.genera[v], tuple(pts), G.k, C.d[v])


@dataclass
class ResidueSystem:
    level: int
    coordinates: list          # labels
    theorem_rows: list         # residue theorem per component
    grc_rows: list
    matching_rows: list
    k: int
    rank_theorem: int = field(default=0)
    rank_total: int = field(default=0)

    @property
    def rank(self):
        """Number of conditions beyond the residue theorem."""
        return self.rank_total - self.rank_theorem

    def to_json(self):
        return {"level": self.level, "coordinates": [str(c) for c in self.coordinates],
                "rows": len(self.theorem_rows) + len(self.grc_rows) + len(self.matching_rows),
                "rank": self.rank}


def _components_above(C, level):
    """Connected components (sets of cover vertices) of the cover strictly above level."""
    verts = [i for i in range(len(C.vertices)) if C.level(i) > level]
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for ce in C.edges:
        a, b = ce.ends
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for v in verts:
        comps.setdefault(find(v), set()).add(v)
    return [comps[r] for r in sorted(comps, key=lambda r: min(comps[r]))]


def level_residue_system(C, level) -> ResidueSystem:
    G, k = C.base, C.k
    zero = cyclo_zero(k)
    coords = {}      # key -> column
    labels = []
    # points with possibly nonzero residue: (cover vertex, column, zeta exponent)
    poles = []
    grc_terms = []   # (upper cover vertex, column, exponent)
    matching = []    # (col_a, exp_a, col_b, exp_b)
    for i, e in enumerate(G.edges):
        la, lb = G.levels[e.ends[0]], G.levels[e.ends[1]]
        kap = abs(e.kappas[0])
        sheet_edges = [ce for ce in C.edges if ce.base_edge == i]
        if la == lb == level:
            ca = coords.setdefault((i, 0), len(coords))
            cb = coords.setdefault((i, 1), len(coords))
            labels += [(e.id, 0), (e.id, 1)]
            for ce in sheet_edges:
                s, t = ce.points
                poles.append((ce.ends[0], ca, s))
                poles.append((ce.ends[1], cb, t))
                matching.append((ca, s, cb, t))
        elif la != lb and min(la, lb) == level and kap % k == 0:
            low = 0 if la < lb else 1
            col = coords.setdefault((i, low), len(coords))
            labels.append((e.id, low))
            for ce in sheet_edges:
                t = ce.points[low]
                poles.append((ce.ends[low], col, t))
                grc_terms.append((ce.ends[1 - low], col, t))
    ncols = len(coords)

    def row_from(terms):
        row = [[0] * len(zero) for _ in range(ncols)]
        for col, exp in terms:
            z = zeta_power(k, exp)
            row[col] = [a + b for a, b in zip(row[col], z)]
        return [tuple(x) for x in row]

    level_vertices = [i for i in range(len(C.vertices)) if C.level(i) == level]
    theorem = [row_from([(col, t) for cv, col, t in poles if cv == x]) for x in level_vertices]
    grc = [row_from([(col, t) for up, col, t in grc_terms if up in Y])
           for Y in _components_above(C, level)]
    match = [row_from([(ca, s), (cb, t)]) for ca, s, cb, t in matching]
    theorem = [r for r in theorem if any(any(x) for x in r)]
    grc = [r for r in grc if any(any(x) for x in r)]
    match = [r for r in match if any(any(x) for x in r)]
    sys = ResidueSystem(level, labels, theorem, grc, match, k)
    if ncols:
        sys.rank_theorem = cyclotomic_rank(theorem, k) if theorem else 0
        allrows = theorem + grc + match
        sys.rank_total = cyclotomic_rank(allrows, k) if allrows else 0
    return sys


def grc_system(C) -> list[ResidueSystem]:
    """Residue systems for every level of the cover, top level first."""
    return [level_residue_system(C, -i) for i in range(C.base.depth + 1)]


def grc_surrogate(C) -> bool:
    """True when a non-primitive vertex carries residue coordinates, where the
    cover-level condition stands in for the k-residue condition."""
    G, k = C.base, C.k
    for e in G.edges:
        horizontal = G.levels[e.ends[0]] == G.levels[e.ends[1]]
        if horizontal or abs(e.kappas[0]) % k == 0:
            if any(C.d[v] > 1 for v in e.ends):
                return True
    return False


def level_dimensions(C):
    """Per level: eigenspace dimensions of its vertices and the binding rank."""
    G = C.base
    out = []
    for sys in grc_system(C):
        dims = [eigenspace_dim(vertex_component_data(C, v))
                for v in range(G.num_vertices) if G.levels[v] == sys.level]
        out.append({"level": sys.level, "dims": dims, "grc_rank": sys.rank,
                    "dim": sum(dims) - sys.rank})
    return out


def check_dimension_identity(C, raise_on_failure=True) -> dict:
    """Compare the sum of level dimensions with ``dim - h``."""
    from .covers import base_signature

    G = C.base
    sig = base_signature(G)
    per_level = level_dimensions(C)
    h = len(G.horizontal_edges)
    total = sum(p["dim"] for p in per_level)
    expected = stratum_dimension(sig) - h
    report = {"per_level": [{"dims": p["dims"], "grc_rank": p["grc_rank"]} for p in per_level],
              "h": h, "L": G.depth, "total": total, "expected": expected,
              "pass": total == expected, "grc_surrogate": grc_surrogate(C)}
    if raise_on_failure and total != expected:
        raise E.IdentityViolation(f"sum of level dimensions {total} != {expected}", **report)
    return report


def pper_coordinate_shape(C) -> dict:
    """Factor dimensions of the perturbed period chart: horizontal
    parameters, level scales, and projectivized level periods."""
    from .covers import base_signature

    G = C.base
    per_level = level_dimensions(C)
    h = len(G.horizontal_edges)
    reduced = [p["dim"] - 1 for p in per_level]
    total = h + (G.depth + 1) + sum(reduced)
    expected = stratum_dimension(base_signature(G))
    if total != expected:
        raise E.ShapeMismatch(f"chart dimension {total} != stratum dimension {expected}",
                              h=h, levels=G.depth + 1, reduced=reduced)
    return {"h": h, "levels": G.depth + 1, "reduced_dims": reduced, "total": total}
