"""Quadrature checks of the integral estimates behind the curvature currents.

All singular integrals are rewritten in logarithmic variables before they
are handed to :func:`scipy.integrate.quad`, so the integrands are smooth
and cutoffs like ``exp(-4000)`` are representable.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from scipy import integrate

from . import errors as E
from .metric import counterexample_model, curvature_blocks, eval_metric

QUAD_OPTS = {"epsabs": 0.0, "epsrel": 1e-12, "limit": 500}


@dataclass
class QuadratureReport:
    value: float
    abs_error: float
    reference: float | None = None
    evaluations: int = 0
    cutoffs: dict = field(default_factory=dict)

    @property
    def rel_error(self):
        if self.reference is None:
            return None
        return abs(self.value - self.reference) / abs(self.reference)

    def to_json(self):
        out = asdict(self)
        out["rel_error"] = self.rel_error
        return out


def _quad(f, a, b):
    val, err, info = integrate.quad(f, a, b, full_output=True, **QUAD_OPTS)[:3]
    return val, err, info["neval"]


def poincare_radial_integral(eps, cutoff=0.0, log_cutoff=None) -> QuadratureReport:
    """``int_cutoff^eps dr / (r log(r)^2)``, by the substitution w = -log r.

    ``cutoff = 0`` gives the improper integral; ``log_cutoff`` (= -log of
    the cutoff) may be given instead for cutoffs below machine range.
    """
    if not 0 < eps < 1:
        raise E.DomainError("eps must lie in (0, 1)")
    w0 = -math.log(eps)
    if log_cutoff is not None:
        w1 = float(log_cutoff)
    elif cutoff > 0:
        if cutoff >= eps:
            raise E.DomainError("cutoff must be smaller than eps")
        w1 = -math.log(cutoff)
    else:
        w1 = math.inf
    val, err, n = _quad(lambda w: 1.0 / (w * w), w0, w1)
    ref = 1.0 / w0 - (0.0 if math.isinf(w1) else 1.0 / w1)
    return QuadratureReport(val, err, ref, n, {"eps": eps, "log_cutoff": w1})


def goodness_violation(model=None, n_list=(100, 1000, 10000)) -> list[dict]:
    """Test the square-root form of the goodness bound along the sequence
    ``t = 1/n`` with ``1 - log|x|^2 = n^2``.

    ``lhs`` is ``|d log h(d/dt)|`` and ``ratio`` is ``lhs |t| |log|t|^2|``, the
    quantity a good metric would keep bounded.
    """
    model = model or counterexample_model()
    rows = []
    for n in n_list:
        t = 1.0 / n
        lx = 1.0 - float(n) ** 2
        blocks = curvature_blocks(model, [t], log_x2=[lx])
        lhs = abs(blocks["dlog_log"][0]) / t
        ratio = lhs * t * abs(math.log(t * t))
        rows.append({"n": n, "t": t, "log_x2": lx, "lhs": lhs, "ratio": ratio,
                     "ratio_over_log_n": ratio / math.log(n)})
    return rows


def _constant_coefficients(model):
    if model.L != 1 or any(not lv.c.poly.is_constant() or any(not d.poly.is_constant() for d in lv.d)
                           for lv in model.levels):
        return None
    top, low = model.levels
    if top.d or len(low.d) != 1 or low.ell_exponents != (1,):
        return None
    return (top.c.poly.constant_term().real, low.c.poly.constant_term().real,
            low.d[0].poly.constant_term().real)


def tube_integral(model, eps, log_delta) -> QuadratureReport:
    """``G(delta) = int_0^eps r dr / h(|t| = r, log|x|^2 = log delta)``.

    Computed in the variable ``u = r sqrt(A)`` where ``A`` is the slope of h
    in ``|t|^2``.  The closed form is reported for constant coefficients.
    """
    consts = _constant_coefficients(model)
    c0, c1, d1 = consts if consts else (1.0, 1.0, 1.0)
    A = c1 - d1 * log_delta
    s = math.sqrt(A)

    def f(u):
        r = u / s
        return r / eval_metric(model, [r], log_x2=[log_delta]) / s

    val, err, n = _quad(f, 0.0, eps * s)
    ref = math.log1p(eps * eps * A / c0) / (2 * A) if consts else None
    return QuadratureReport(val, err, ref, n, {"eps": eps, "log_delta": log_delta})


def inner_radial_integral(eps, A):
    """``int_0^eps r^3 dr / (1 + r^2 A)^2`` by quadrature in ``u = r sqrt(A)``."""
    s = math.sqrt(A)
    val, err, _ = _quad(lambda u: u ** 3 / (1 + u * u) ** 2, 0.0, eps * s)
    return val / A ** 2, err / A ** 2


def default_log_cutoffs(count=5):
    """Inner cutoffs ``-log s`` growing geometrically by 4 from ``8 log 10``."""
    return [2 * math.log(10) * 4 ** j for j in range(1, count + 1)]


def double_integral(eps, log_cutoff, model=None) -> QuadratureReport:
    """``int_{s0}^eps int_0^eps r^3 dr ds / (s h^2)`` with ``h = 1 + r^2 (1 - log s^2)``,
    written in ``v = -log s``; ``log_cutoff = -log s0``."""
    v0 = -math.log(eps)
    if model is None:
        def inner(v):
            return inner_radial_integral(eps, 1.0 + 2.0 * v)[0]
    else:
        def inner(v):
            f = lambda r: r ** 3 / eval_metric(model, [r], log_x2=[-2.0 * v]) ** 2
            return integrate.quad(f, 0.0, eps, **QUAD_OPTS)[0]
    # split at a few geometric points so quad resolves the slow tail
    pts = [v0]
    while pts[-1] * 4 < log_cutoff:
        pts.append(pts[-1] * 4)
    pts.append(log_cutoff)
    total, err, n = 0.0, 0.0, 0
    for a, b in zip(pts, pts[1:]):
        v, e, k = _quad(inner, a, b)
        total, err, n = total + v, err + e, n + k
    return QuadratureReport(total, err, None, n, {"eps": eps, "log_cutoff": log_cutoff})


def cauchy_convergence(values, factor=2.0, needed=3):
    """Successive differences and whether ``needed`` consecutive ones each
    shrink by at least ``factor``."""
    diffs = [abs(b - a) for a, b in zip(values, values[1:])]
    ratios = [d0 / d1 if d1 > 0 else math.inf for d0, d1 in zip(diffs, diffs[1:])]
    run = best = 0
    for r in ratios:
        run = run + 1 if r >= factor else 0
        best = max(best, run)
    return {"differences": diffs, "ratios": ratios, "converged": best >= needed}


def tube_integral_estimates(model=None, eps=0.5, log_deltas=None, log_cutoffs=None,
                            raise_on_failure=True) -> dict:
    """Tube integrals G(delta) and the convergence of the double integral."""
    model = model or counterexample_model()
    log_deltas = list(log_deltas) if log_deltas is not None else [-10.0 * j for j in range(1, 11)]
    log_cutoffs = list(log_cutoffs) if log_cutoffs is not None else default_log_cutoffs()
    tube = [tube_integral(model, eps, ld) for ld in log_deltas]
    doubles = [double_integral(eps, V, model if _constant_coefficients(model) != (1.0, 1.0, 1.0) else None)
               for V in log_cutoffs]
    conv = cauchy_convergence([r.value for r in doubles])
    decreasing = all(b.value < a.value for a, b in zip(tube, tube[1:]))
    if raise_on_failure and not conv["converged"]:
        raise E.NonConvergent("double integral cutoffs did not converge", **conv)
    return {"tube": [r.to_json() for r in tube], "tube_decreasing": decreasing,
            "double": [r.to_json() for r in doubles], "convergence": conv}


def coefficient_l1_norm(model, entry, eps, log_cutoff):
    """Integral of ``|levi[entry]|`` over ``|t| < eps`` and
    ``exp(-log_cutoff/2) < |x| < eps`` for a radial one-t, one-x model,
    in polar coordinates with ``w = -log |x|``."""
    a, b = entry

    n_x = (a == 1) + (b == 1)

    def integrand(r, w):
        val = curvature_blocks(model, [r], log_x2=[-2.0 * w])["levi_log"][a, b]
        # levi = levi_log / (z_a zbar_b); measure 2 pi r dr * 2 pi |x|^2 dw
        return (4 * math.pi ** 2 * abs(val) * r ** (1 - (2 - n_x))
                * math.exp(-w * (2 - n_x)))

    w0 = -math.log(eps)
    val, err = integrate.dblquad(integrand, w0, log_cutoff / 2, 0.0, eps,
                                 epsabs=0.0, epsrel=1e-9)
    return val, err
