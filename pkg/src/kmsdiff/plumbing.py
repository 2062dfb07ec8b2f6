"""Exponent bookkeeping for the plumbing fixtures.

A small exact algebra of Laurent polynomials with integer coefficients in
named variables is enough: the residue, the scale, the level parameters
and the two local coordinates are all variables.
"""
from __future__ import annotations

from collections import defaultdict

from . import errors as E
from .prongs import simple_twist_and_index, torus_data


class Laurent:
    """Finite sum of integer multiples of Laurent monomials."""

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            exps = defaultdict(int)
            for v, e in mono:
                exps[v] += e
            mono = tuple(sorted((v, e) for v, e in exps.items() if e))
            clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def var(cls, name, exp=1, coef=1):
        return cls({((name, exp),): coef})

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def monomial(cls, exps: dict, coef=1):
        return cls({tuple(exps.items()): coef})

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for m, c in other.terms.items():
            out[m] += c
        return Laurent(out)

    def __neg__(self):
        return Laurent({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({m: c * other for m, c in self.terms.items()})
        out = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                e = defaultdict(int, m1)
                for v, x in m2:
                    e[v] += x
                out[tuple(e.items())] += c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if len(self.terms) != 1:
            raise ValueError("only monomials can be raised to integer powers")
        (m, c), = self.terms.items()
        if n < 0 and c not in (1, -1):
            raise ValueError("coefficient not invertible")
        return Laurent({tuple((v, e * n) for v, e in m): c ** abs(n)})

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def exponent(self, name):
        """Exponent of ``name`` in a monomial."""
        (m, _), = self.terms.items()
        return dict(m).get(name, 0)

    def substitute(self, name, value: "Laurent"):
        """Replace ``name`` by a monomial ``value``."""
        out = Laurent()
        for m, c in self.terms.items():
            rest = tuple((v, e) for v, e in m if v != name)
            e = dict(m).get(name, 0)
            out = out + Laurent({rest: c}) * (value ** e)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{e}" if e != 1 else v for v, e in m)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def substitute_differential(coef: Laurent, old, new: Laurent, new_var):
    """Pull back ``coef d(old)`` along ``old = new`` where ``new`` is a
    monomial in ``new_var`` and constants; returns the coefficient of
    ``d(new_var)``."""
    e = new.exponent(new_var)
    derivative = new * Laurent.var(new_var, -1) * e
    return coef.substitute(old, new) * derivative


def vertical_fixture_identity(C, edge, ell=None, m=None) -> dict:
    """Check the plumbing one-form of a vertical edge.

    ``edge`` indexes the vertical edges of ``torus_data(C)``.  Substituting
    ``v = T/u`` with ``T = prod t_i^m_i`` in ``(-B v^(-kh-1) + r/v) dv``
    must give ``(B T^(-kh) u^(kh-1) - r/u) du`` with no leftover terms, and
    ``T^kh`` must equal ``prod t_i^ell_i``.
    """
    T = torus_data(C)
    e = T.edges[edge]
    if ell is None or m is None:
        ell, _, _, mm = simple_twist_and_index(T)
        m = {i: mm[(edge, i)] for i in e.crossed()}
    kh = e.kappa_hat
    for i in e.crossed():
        if m[i] * kh != ell[i]:
            raise E.ExponentMismatch(f"passage {i}: m*kappa_hat = {m[i] * kh} != ell = {ell[i]}")
    Tm = Laurent.monomial({f"t{i}": m[i] for i in e.crossed()})
    B, r = Laurent.var("B"), Laurent.var("r")
    lhs_coef = -B * Laurent.var("v", -kh - 1) + r * Laurent.var("v", -1)
    pulled = substitute_differential(lhs_coef, "v", Tm * Laurent.var("u", -1), "u")
    expected = B * Tm ** (-kh) * Laurent.var("u", kh - 1) - r * Laurent.var("u", -1)
    residual = pulled - expected
    if residual.terms:
        raise E.ExponentMismatch(f"residual terms {residual}")
    power = Tm ** kh
    target = Laurent.monomial({f"t{i}": ell[i] for i in e.crossed()})
    if power != target:
        raise E.ExponentMismatch(f"T^{kh} = {power} != {target}")
    # the scale seen from the upper side is B T^-kh; from the lower side it is B
    top = B * Tm ** (-kh)
    bottom = top * target
    if bottom != B:
        raise E.ExponentMismatch("prefactor relation fails")
    return {"pass": True, "kappa_hat": kh, "passages": e.crossed(),
            "m": [m[i] for i in e.crossed()], "ell": [ell[i] for i in e.crossed()],
            "v_exponent": -kh - 1, "residual_terms": 0,
            "prefactor_relation": "bottom = top * prod t_i^ell_i"}


def horizontal_fixture_identity(x_symbol="x", r_coef=1) -> dict:
    """``-r du/u`` pulled back along ``v = x/u`` equals ``r dv/v``."""
    r = Laurent.var("r") * r_coef
    dv_side = r * Laurent.var("v", -1)
    pulled = substitute_differential(dv_side, "v", Laurent.var(x_symbol) * Laurent.var("u", -1), "u")
    du_side = -r * Laurent.var("u", -1)
    residual = pulled - du_side
    if residual.terms:
        raise E.ExponentMismatch(f"residual terms {residual}")
    return {"pass": True, "x": x_symbol, "residual_terms": 0}
