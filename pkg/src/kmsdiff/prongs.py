"""Prong-matchings, the level rotation action and the twist lattices.

Prong-matchings are stored as offsets in ``Z/kappa_hat`` relative to a fixed
deck-equivariant reference matching.  Offsets are constant along deck
orbits of edges, so a matching is one offset per orbit.  Level passages
are indexed ``0..L-1``, where index ``i`` is the passage just below level
``-i``.  Rotating by ``n`` in ``Z^L`` adds the sum of ``n`` over the
crossed passages to an edge's offset.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from math import prod

from . import errors as E
from .intlin import integer_kernel, lattice_basis, lcm


@dataclass(frozen=True)
class TorusEdge:
    top: int          # level of the upper end (0, -1, ...)
    bottom: int
    kappa_hat: int
    orbit: int = None

    def crossed(self):
        """Indices of the passages crossed by the edge."""
        return list(range(-self.top, -self.bottom))


@dataclass(frozen=True)
class TorusData:
    L: int
    edges: tuple[TorusEdge, ...]

    def __post_init__(self):
        edges = tuple(e if e.orbit is not None else TorusEdge(e.top, e.bottom, e.kappa_hat, i)
                      for i, e in enumerate(self.edges))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def simple(cls, L, edges):
        """From ``(top, bottom, kappa_hat)`` triples, each its own orbit."""
        return cls(L, tuple(TorusEdge(t, b, kh) for t, b, kh in edges))

    def orbit_reps(self):
        reps = {}
        for e in self.edges:
            reps.setdefault(e.orbit, e)
        return [reps[o] for o in sorted(reps)]


def torus_data(C) -> TorusData:
    """Torus data of a cover (or pass-through for TorusData)."""
    if isinstance(C, TorusData):
        return C
    vert = C.vertical_edges()
    orbit_of = {}
    for n, orb in enumerate(C.tau_edge_orbits(vert)):
        for j in orb:
            orbit_of[j] = n
    edges = []
    for j in vert:
        ce = C.edges[j]
        la, lb = C.level(ce.ends[0]), C.level(ce.ends[1])
        edges.append(TorusEdge(max(la, lb), min(la, lb), abs(ce.kappas[0]), orbit_of[j]))
    return TorusData(C.base.depth, tuple(edges))


@dataclass(frozen=True)
class ProngMatching:
    values: tuple[int, ...]     # one offset per edge orbit

    def to_json(self):
        return list(self.values)


def global_prong_matchings(C):
    T = torus_data(C)
    reps = T.orbit_reps()
    for vals in product(*(range(e.kappa_hat) for e in reps)):
        yield ProngMatching(tuple(vals))


def matchings_total(C) -> int:
    return prod(e.kappa_hat for e in torus_data(C).orbit_reps())


def rotation_action(C, n, pm):
    T = torus_data(C)
    n = list(n)
    if len(n) != T.L:
        raise E.DimensionMismatch(f"rotation vector has length {len(n)}, expected L={T.L}")
    reps = T.orbit_reps()
    vals = pm.values if isinstance(pm, ProngMatching) else tuple(pm)
    if len(vals) != len(reps):
        raise E.DimensionMismatch(f"matching has {len(vals)} entries, expected {len(reps)}")
    return ProngMatching(tuple((v + sum(n[i] for i in e.crossed())) % e.kappa_hat
                               for v, e in zip(vals, reps)))


@dataclass(frozen=True)
class TwistLattice:
    L: int
    basis: tuple[tuple[int, ...], ...]
    determinant: int

    def contains(self, n):
        # basis is upper triangular with positive pivots
        n = list(n)
        for row in self.basis:
            piv = next(i for i, x in enumerate(row) if x)
            if n[piv] % row[piv]:
                return False
            q = n[piv] // row[piv]
            n = [a - q * b for a, b in zip(n, row)]
        return not any(n)


def twist_group(C) -> TwistLattice:
    """Rotations fixing every prong-matching."""
    T = torus_data(C)
    L = T.L
    if L == 0:
        return TwistLattice(0, (), 1)
    reps = T.orbit_reps()
    rows = []
    for j, e in enumerate(reps):
        row = [0] * (L + len(reps))
        for i in e.crossed():
            row[i] = 1
        row[L + j] = -e.kappa_hat
        rows.append(row)
    if rows:
        gens = [v[:L] for v in integer_kernel(rows)]
    else:
        gens = [[int(i == j) for j in range(L)] for i in range(L)]
    basis = lattice_basis(gens, L)
    assert len(basis) == L
    det = prod(basis[i][i] for i in range(L))
    return TwistLattice(L, tuple(tuple(r) for r in basis), det)


def simple_twist_and_index(C):
    """Returns ``(ell, sTw basis, K, m)`` with ``m[(edge index, passage)]``."""
    T = torus_data(C)
    ell = []
    for i in range(T.L):
        ks = [e.kappa_hat for e in T.edges if i in e.crossed()]
        ell.append(lcm(*ks) if ks else 1)
    stw = tuple(tuple(ell[i] if i == j else 0 for j in range(T.L)) for i in range(T.L))
    tw = twist_group(T)
    stw_det = prod(ell)
    if stw_det % tw.determinant:
        raise E.ExponentMismatch(f"det sTw {stw_det} not divisible by det Tw {tw.determinant}")
    m = {(j, i): ell[i] // e.kappa_hat for j, e in enumerate(T.edges) for i in e.crossed()}
    return ell, stw, stw_det // tw.determinant, m


def bruteforce_cap():
    return int(os.environ.get("KMS_BRUTEFORCE_CAP", "100000"))


def prong_orbit_count_bruteforce(C):
    """Orbits of Z^L on global prong-matchings by graph search."""
    T = torus_data(C)
    reps = T.orbit_reps()
    moduli = [e.kappa_hat for e in reps]
    steps = [tuple(1 if i in e.crossed() else 0 for e in reps) for i in range(T.L)]
    seen, orbits = set(), 0
    for start in product(*(range(m) for m in moduli)):
        if start in seen:
            continue
        orbits += 1
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for s in steps:
                y = tuple((a + b) % m for a, b, m in zip(x, s, moduli))
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return orbits


def prong_orbit_count(C, cap=None) -> int:
    """Number of rotation orbits, from the index formula; also checked by
    brute force when the matching count is at most ``cap``."""
    total = matchings_total(C)
    tw = twist_group(C)
    if total % tw.determinant:
        raise E.ExponentMismatch(f"{total} matchings not divisible by det Tw {tw.determinant}")
    count = total // tw.determinant
    cap = bruteforce_cap() if cap is None else cap
    if total <= cap:
        brute = prong_orbit_count_bruteforce(C)
        if brute != count:
            raise E.IdentityViolation(f"orbit count {count} by index, {brute} by brute force")
    return count


def slrt_parametrization_check(C) -> dict:
    """Check on exponents that the one-level-at-a-time torus lands on the
    torus equations: for each edge, the sum of ell over crossed passages
    equals kappa_hat times the sum of the plumbing exponents."""
    T = torus_data(C)
    ell, _, _, m = simple_twist_and_index(T)
    checked = 0
    for j, e in enumerate(T.edges):
        for i in e.crossed():
            if m[(j, i)] * e.kappa_hat != ell[i]:
                raise E.ExponentMismatch(f"edge {j}, passage {i}: {m[(j, i)]}*{e.kappa_hat} != {ell[i]}")
        lhs = sum(ell[i] for i in e.crossed())
        rhs = e.kappa_hat * sum(m[(j, i)] for i in e.crossed())
        if lhs != rhs:
            raise E.ExponentMismatch(f"edge {j}: {lhs} != {rhs}")
        checked += 1
    return {"pass": True, "edges_checked": checked}


def twist_report(C, cap=None) -> dict:
    tw = twist_group(C)
    ell, _, K, _ = simple_twist_and_index(C)
    return {"L": tw.L, "ell": ell, "tw_basis": [list(r) for r in tw.basis],
            "stw_det": prod(ell), "tw_det": tw.determinant, "K": K,
            "orbit_count": prong_orbit_count(C, cap), "matchings_total": matchings_total(C)}
