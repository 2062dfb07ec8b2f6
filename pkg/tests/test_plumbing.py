import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import SIG_GA, SIG_H2, SIG_PILLOW, chain
from kmsdiff import errors as E
from kmsdiff.boundary import enumerate_boundary_graphs
from kmsdiff.covers import enumerate_covers
from kmsdiff.plumbing import (Laurent, horizontal_fixture_identity, substitute_differential,
                              vertical_fixture_identity)
from kmsdiff.prongs import TorusData, simple_twist_and_index, torus_data

NAMES = ["u", "v", "t0", "t1", "B", "r"]


def to_sympy(p: Laurent):
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Integer(c)
        for v, e in mono:
            term *= sympy.Symbol(v) ** e
        out += term
    return sympy.expand(out)


laurents = st.dictionaries(
    st.lists(st.tuples(st.sampled_from(NAMES), st.integers(-3, 3)), max_size=3).map(tuple),
    st.integers(-4, 4), max_size=4).map(Laurent)


@settings(max_examples=200, deadline=None)
@given(laurents, laurents)
def test_laurent_arithmetic_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - p)) == 0


@settings(max_examples=200, deadline=None)
@given(laurents, st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_matches_sympy(p, a, b):
    value = Laurent.monomial({"t0": a, "u": b})
    ours = to_sympy(p.substitute("v", value))
    v, t0, u = sympy.symbols("v t0 u")
    theirs = sympy.expand(to_sympy(p).subs(v, t0 ** a * u ** b))
    assert sympy.simplify(ours - theirs) == 0


def test_monomial_power():
    assert Laurent.var("t", 2) ** 3 == Laurent.var("t", 6)
    assert (Laurent.var("t") * 2) ** 2 == Laurent.var("t", 2) * 4
    with pytest.raises(ValueError):
        (Laurent.var("t") + Laurent.var("u")) ** 2
    with pytest.raises(ValueError):
        (Laurent.var("t") * 2) ** -1


def sympy_vertical(kh, m):
    """Independent route: pull back the one-form with sympy."""
    u, B, r = sympy.symbols("u B r")
    T = sympy.Integer(1)
    for i, mi in m.items():
        T *= sympy.Symbol(f"t{i}") ** mi
    v = T / u
    form = (-B * v ** (-kh - 1) + r / v) * sympy.diff(v, u)
    expected = B * T ** (-kh) * u ** (kh - 1) - r / u
    return sympy.simplify(form - expected)


@pytest.mark.parametrize("kh,ell,m,vexp", [(2, 2, 1, -3), (3, 6, 2, -4), (1, 1, 1, -2)])
def test_vertical_examples(kh, ell, m, vexp):
    T = TorusData.simple(1, [(0, -1, kh)])
    rep = vertical_fixture_identity(T, 0, ell=[ell], m={0: m})
    assert rep["pass"] and rep["residual_terms"] == 0 and rep["v_exponent"] == vexp
    assert sympy_vertical(kh, {0: m}) == 0


def test_vertical_bad_exponent():
    T = TorusData.simple(1, [(0, -1, 3)])
    with pytest.raises(E.ExponentMismatch):
        vertical_fixture_identity(T, 0, ell=[6], m={0: 1})


def test_horizontal_examples():
    assert horizontal_fixture_identity()["pass"]
    assert horizontal_fixture_identity(r_coef=0)["pass"]
    for j in range(3):
        assert horizontal_fixture_identity(f"x{j}")["pass"]
    u, x, r = sympy.symbols("u x r")
    v = x / u
    assert sympy.simplify(r / v * sympy.diff(v, u) - (-r / u)) == 0


def test_substitute_differential_chain_rule():
    # d(v) with v = t/u is -t/u^2 du
    got = substitute_differential(Laurent.const(1), "v", Laurent.var("t") * Laurent.var("u", -1), "u")
    assert got == Laurent.monomial({"t": 1, "u": -2}, coef=-1)


def _covers():
    for sig in (SIG_H2, SIG_GA, SIG_PILLOW):
        for mode in ("two_level", "one_horizontal"):
            for G in enumerate_boundary_graphs(sig, mode):
                yield from enumerate_covers(G)
    yield from enumerate_covers(chain())


def test_all_enumerated_edges():
    vertical = horizontal = 0
    for C in _covers():
        T = torus_data(C)
        ell, _, _, m = simple_twist_and_index(T)
        for j, e in enumerate(T.edges):
            assert vertical_fixture_identity(C, j)["residual_terms"] == 0
            assert sympy_vertical(e.kappa_hat, {i: m[(j, i)] for i in e.crossed()}) == 0
            vertical += 1
        for n, _ in enumerate(C.base.horizontal_edges):
            assert horizontal_fixture_identity(f"x{n}")["pass"]
            horizontal += 1
    assert vertical > 20 and horizontal > 0
