"""Local model of the flat-area metric near a boundary point.

The model is

    h = sum_i prod_j |t_j|^(2 e_ij) * (c_i - sum_j d_ij log|x_ij|^2),

where the level-i scale exponents ``e_ij`` equal ``ell_j`` for the
passages above level ``-i`` and zero otherwise.  The coefficients ``c_i``
and ``d_ij`` are hermitian polynomials in auxiliary coordinates.  Their
two-sided bounds are certified on a polydisc.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import errors as E


@dataclass(frozen=True)
class Poly:
    """Polynomial in aux coordinates z and their conjugates.

    ``terms`` maps ``(alpha, beta)`` (multi-indices for z and conj z) to a
    complex coefficient.
    """
    n: int
    terms: tuple = ()

    @classmethod
    def const(cls, c, n=0):
        return cls(n, (((0,) * n, (0,) * n, complex(c)),))

    @classmethod
    def from_dict(cls, n, d):
        return cls(n, tuple((tuple(a), tuple(b), complex(c)) for (a, b), c in sorted(d.items())))

    def as_dict(self):
        out = {}
        for a, b, c in self.terms:
            out[(a, b)] = out.get((a, b), 0) + c
        return out

    def is_hermitian(self, tol=1e-14):
        d = self.as_dict()
        return all(abs(c - np.conj(d.get((b, a), 0))) <= tol * max(1, abs(c)) for (a, b), c in d.items())

    def is_constant(self):
        return all(not any(a) and not any(b) for a, b, _ in self.terms if _ != 0)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        total = 0j
        for a, b, c in self.terms:
            total += c * np.prod(z ** np.array(a)) * np.prod(zb ** np.array(b))
        return total

    def value(self, z):
        return float(np.real(self(z)))

    def d(self, j, conj=False):
        out = []
        for a, b, c in self.terms:
            e = b if conj else a
            if e[j] == 0:
                continue
            e2 = list(e)
            e2[j] -= 1
            if conj:
                out.append((a, tuple(e2), c * e[j]))
            else:
                out.append((tuple(e2), b, c * e[j]))
        return Poly(self.n, tuple(out))

    def constant_term(self):
        return sum((c for a, b, c in self.terms if not any(a) and not any(b)), 0j)

    def deviation_bound(self, radius):
        """Upper bound of ``|p - p(0)|`` on the polydisc of the given radius."""
        return sum(abs(c) * radius ** (sum(a) + sum(b)) for a, b, c in self.terms
                   if any(a) or any(b))


@dataclass(frozen=True)
class Coefficient:
    poly: Poly
    lower: float
    upper: float


@dataclass(frozen=True)
class LevelModel:
    ell_exponents: tuple[int, ...]     # exponent of |t_j|^2 for j = 1..L
    c: Coefficient
    d: tuple[Coefficient, ...] = ()
    x_labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class MetricModel:
    L: int
    levels: tuple[LevelModel, ...]
    aux_dim: int = 0
    aux_radius: float = 1.0
    names: tuple = field(init=False, default=())

    def __post_init__(self):
        if len(self.levels) != self.L + 1:
            raise E.DimensionMismatch(f"{len(self.levels)} levels for L={self.L}")
        for lv in self.levels:
            if len(lv.ell_exponents) != self.L:
                raise E.DimensionMismatch("each level needs L scale exponents")
            if len(lv.d) != len(lv.x_labels):
                raise E.DimensionMismatch("one d coefficient per horizontal coordinate")
        xs = [lab for lv in self.levels for lab in lv.x_labels]
        names = tuple([f"t{j + 1}" for j in range(self.L)] + xs +
                      [f"z{a + 1}" for a in range(self.aux_dim)])
        object.__setattr__(self, "names", names)

    @property
    def n_x(self):
        return sum(len(lv.x_labels) for lv in self.levels)

    @classmethod
    def triangular(cls, ell, cs, ds=None, x_labels=None, aux_dim=0, aux_radius=1.0):
        """Model where level ``-i`` is scaled by ``|t_1|^(2 ell_1)...|t_i|^(2 ell_i)``.

        ``cs`` and the entries of ``ds`` are Coefficient objects or numbers.
        """
        L = len(ell)
        ds = ds or [[] for _ in range(L + 1)]
        x_labels = x_labels or [[f"x{i}_{j + 1}" for j in range(len(ds[i]))] for i in range(L + 1)]

        def coef(c):
            if isinstance(c, Coefficient):
                return c
            return Coefficient(Poly.const(c, aux_dim), float(c), float(c))

        levels = []
        for i in range(L + 1):
            e = tuple(ell[j] if j < i else 0 for j in range(L))
            levels.append(LevelModel(e, coef(cs[i]), tuple(coef(x) for x in ds[i]),
                                     tuple(x_labels[i])))
        return cls(L, tuple(levels), aux_dim, aux_radius)

    def certify_bounds(self):
        """Check that every coefficient stays inside its declared bounds."""
        for i, lv in enumerate(self.levels):
            for name, co in [("c", lv.c)] + [(f"d{j}", x) for j, x in enumerate(lv.d)]:
                if not co.poly.is_hermitian():
                    raise E.DomainError(f"level {i} {name} is not real-valued")
                c0 = co.poly.constant_term().real
                dev = co.poly.deviation_bound(self.aux_radius)
                if not (0 < co.lower <= c0 - dev and c0 + dev <= co.upper):
                    raise E.DomainError(
                        f"level {i} {name}: range [{c0 - dev}, {c0 + dev}] not within "
                        f"declared [{co.lower}, {co.upper}]")
        return True


def counterexample_model() -> MetricModel:
    """``h = 1 + |t|^2 (1 - log|x|^2)``: two levels, a horizontal node below."""
    return MetricModel.triangular([1], [1, 1], [[], [1]], [[], ["x"]])


def _split(model, point):
    t = np.asarray(point.get("t", [0] * model.L), dtype=complex).reshape(model.L)
    aux = np.asarray(point.get("aux", [0] * model.aux_dim), dtype=complex).reshape(model.aux_dim)
    return t, aux


def _log_x2(model, x=None, log_x2=None):
    if log_x2 is not None:
        lx = np.asarray(log_x2, dtype=float).reshape(model.n_x)
        if np.any(lx >= 0) or np.any(np.isnan(lx)):
            raise E.DomainError("log|x|^2 must be negative")
        return lx
    x = np.asarray(x if x is not None else [], dtype=complex).reshape(model.n_x)
    ax = np.abs(x)
    if np.any(ax <= 0) or np.any(ax >= 1):
        raise E.DomainError("horizontal coordinates must satisfy 0 < |x| < 1")
    return np.log(ax ** 2)


def _check_aux(model, aux):
    if model.aux_dim and np.max(np.abs(aux)) > model.aux_radius * (1 + 1e-12):
        raise E.DomainError("aux point outside the certified polydisc")


def _scale(model, t):
    at2 = np.abs(t) ** 2
    return [float(np.prod(at2 ** np.array(lv.ell_exponents, dtype=float))) for lv in model.levels]


def eval_metric(model: MetricModel, t=None, x=None, aux=None, log_x2=None) -> float:
    """Evaluate h.  ``log_x2`` may be passed instead of ``x`` for points too
    close to the boundary to represent in floating point."""
    t = np.zeros(model.L) if t is None else t
    tt, aa = _split(model, {"t": t, "aux": aux if aux is not None else [0] * model.aux_dim})
    if np.any(np.abs(tt) > 1):
        raise E.DomainError("level parameters must lie in the unit polydisc")
    _check_aux(model, aa)
    lx = _log_x2(model, x, log_x2)
    P = _scale(model, tt)
    h, pos = 0.0, 0
    for p, lv in zip(P, model.levels):
        q = lv.c.poly.value(aa)
        for co in lv.d:
            q -= co.poly.value(aa) * lx[pos]
            pos += 1
        h += p * q
    return h


def _log_basis_derivatives(model, t, aux, lx):
    """h with first and mixed second derivatives.

    t and x directions use the log-derivatives ``z d/dz``; aux directions
    use plain derivatives.
    """
    L, nx, na = model.L, model.n_x, model.aux_dim
    N = L + nx + na
    P = _scale(model, t)
    h = 0.0
    grad = np.zeros(N, dtype=complex)       # D_a h
    hess = np.zeros((N, N), dtype=complex)  # D_a Dbar_b h
    pos = 0
    for p, lv in zip(P, model.levels):
        e = np.array(lv.ell_exponents, dtype=float)
        idx_x = list(range(L + pos, L + pos + len(lv.d)))
        lx_i = lx[pos:pos + len(lv.d)]
        pos += len(lv.d)
        Q = lv.c.poly.value(aux) - sum(co.poly.value(aux) * l for co, l in zip(lv.d, lx_i))
        dQ = np.zeros(N, dtype=complex)
        dbQ = np.zeros(N, dtype=complex)
        ddQ = np.zeros((N, N), dtype=complex)
        for j, ix in enumerate(idx_x):
            dQ[ix] = -lv.d[j].poly.value(aux)
            dbQ[ix] = -lv.d[j].poly.value(aux)
        for a in range(na):
            ia = L + nx + a
            dc, dbc = lv.c.poly.d(a), lv.c.poly.d(a, conj=True)
            dQ[ia] = dc(aux) - sum(co.poly.d(a)(aux) * l for co, l in zip(lv.d, lx_i))
            dbQ[ia] = dbc(aux) - sum(co.poly.d(a, True)(aux) * l for co, l in zip(lv.d, lx_i))
            for j, ix in enumerate(idx_x):
                ddQ[ix, ia] = -lv.d[j].poly.d(a, True)(aux)
                ddQ[ia, ix] = -lv.d[j].poly.d(a)(aux)
            for b in range(na):
                ib = L + nx + b
                ddQ[ia, ib] = dc.d(b, True)(aux) - sum(
                    co.poly.d(a).d(b, True)(aux) * l for co, l in zip(lv.d, lx_i))
        dP = np.zeros(N)
        dP[:L] = e * p
        ddP = np.zeros((N, N))
        ddP[:L, :L] = np.outer(e, e) * p
        h += p * Q
        grad += dP * Q + p * dQ
        hess += ddP * Q + np.outer(dP, dbQ) + np.outer(dQ, dP) + p * ddQ
    return h, grad, hess


def curvature_blocks(model: MetricModel, t, x=None, aux=None, log_x2=None) -> dict:
    """Coefficients of d log h and of the (1,1)-form ddbar log h.

    Returns both the log basis (``dt/t``, ``dx/x`` for t and x directions)
    and, when x is given, the coordinate basis.  ``levi[a][b]`` is
    the coefficient of ``dz_a dzbar_b``.
    """
    t = np.asarray(t, dtype=complex).reshape(model.L)
    aux = np.zeros(model.aux_dim, dtype=complex) if aux is None else np.asarray(aux, dtype=complex)
    if np.any(t == 0):
        raise E.BoundaryPoint("curvature is only evaluated at interior points (t != 0)")
    if x is not None and np.any(np.asarray(x) == 0):
        raise E.BoundaryPoint("curvature is only evaluated at interior points (x != 0)")
    _check_aux(model, aux)
    lx = _log_x2(model, x, log_x2)
    h, grad, hess = _log_basis_derivatives(model, t, aux, lx)
    dlog = grad / h
    levi_log = (hess * h - np.outer(grad, np.conj(grad))) / h ** 2
    out = {"coords": list(model.names), "h": h, "dlog_log": dlog, "levi_log": levi_log}
    if x is not None:
        z = np.concatenate([t, np.asarray(x, dtype=complex).reshape(model.n_x)])
        s = np.concatenate([1 / z, np.ones(model.aux_dim)])
        out["dlog"] = dlog * s
        out["levi"] = levi_log * np.outer(s, np.conj(s))
    return out


def is_hermitian(M, tol=1e-12):
    M = np.asarray(M)
    return bool(np.allclose(M, M.conj().T, atol=tol, rtol=tol))


def wedge_square_density(model, t, x=None, aux=None):
    """For two-variable models the top wedge power of the curvature is a
    multiple of the volume form; this returns ``2 det(levi)``, the
    coefficient of the product of the two ``dz dzbar`` pairs."""
    blocks = curvature_blocks(model, t, x, aux)
    M = blocks["levi"]
    if M.shape != (2, 2):
        raise E.DimensionMismatch("wedge density is only defined for two-variable models")
    return float(np.real(2 * np.linalg.det(M)))


def area_from_periods(a, b, k, x, split_index) -> float:
    """Area ``(i/2) sum (a_j conj(b_j) - b_j conj(a_j))`` near a horizontal node.

    The first ``split_index`` entries are the periods of the pinched cycles
    and their duals.  Their ``b_j`` are given without the logarithmic
    part, which is added as ``a_j/(2 pi i) log x``.  ``split_index`` must
    be a multiple of k because the pinched cycles come in deck orbits.
    """
    a = [complex(v) for v in a]
    b = [complex(v) for v in b]
    if len(a) != len(b):
        raise E.DimensionMismatch("a and b must have the same length")
    if split_index % k or split_index > len(a):
        raise ValueError(f"split_index {split_index} must be a multiple of k={k} and at most {len(a)}")
    ax = abs(x)
    if not 0 < ax < 1:
        raise E.DomainError("the node parameter must satisfy 0 < |x| < 1")
    if any(a[j] == 0 for j in range(split_index)):
        raise E.DegenerateResidue("a pinched cycle has zero period")
    logx = cmath.log(x)
    bb = [b[j] + a[j] / (2j * math.pi) * logx if j < split_index else b[j] for j in range(len(a))]
    val = 0.5j * sum(aj * bj.conjugate() - bj * aj.conjugate() for aj, bj in zip(a, bb))
    return val.real
