import sympy
from hypothesis import given, settings, strategies as st
from gmpy2 import mpq

from germtools.errors import InexactDivision
from germtools.polyalg import content_wrt, divide_exact, gcd, lcm
from germtools.series import PolyRing, Series, parse_expr

import pytest

R = PolyRing(["t", "x"])
t, x = sympy.symbols("t x")


def P(s):
    return parse_expr(s, R)


def to_sympy(f):
    return sympy.expand(sympy.sympify(str(f).replace("^", "**")))


def test_gcd_example():
    f = P("(t^2 - 1)*(x + t)^2*(x - 2)")
    g = P("(t + 1)*(x + t)*(x^2 + 1)")
    assert gcd(f, g) == P("(t + 1)*(x + t)")


def test_divide_exact():
    assert divide_exact(P("x^2 - t^2"), P("x - t")) == P("x + t")
    with pytest.raises(InexactDivision):
        divide_exact(P("x^2 + 1"), P("x - t"))


def test_content_and_lcm():
    assert content_wrt(P("t^2*x + t*x^2 + t^3"), ["x"]) == P("t")
    assert lcm(P("t^2 - 1"), P("t + 1")) == P("t^2 - 1")


small = st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                           st.integers(-3, 3)), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(small, small, small)
def test_gcd_matches_sympy(a, b, c):
    mk = lambda ts: Series(R, {e: mpq(k) for e, k in ts})
    f, g, h = mk(a), mk(b), mk(c)
    if f.is_zero() or g.is_zero() or h.is_zero():
        return
    ours = to_sympy(gcd(f * h, g * h))
    ref = sympy.gcd(to_sympy(f * h), to_sympy(g * h))
    assert sympy.simplify(ours / ref).is_number
