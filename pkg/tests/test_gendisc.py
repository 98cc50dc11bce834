import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st
from gmpy2 import mpq

from germtools.errors import TooManyRoots
from germtools.gendisc import (all_gen_discs, classical_discriminant, first_nonvanishing,
                               gen_disc, newton_sums, oracle_disc, resultant)
from germtools.series import PolyRing, Series, parse_expr
from germtools.weierstrass import MonicPoly

R = PolyRing(["b", "c", "y"])
Y = PolyRing(["y"])


def monic_from_roots(roots, ring=Y):
    W = ring.one()
    for r in roots:
        W = W * (ring.gen("y") - ring.const(mpq(r)))
    return MonicPoly.from_series(W, "y")


def test_quadratic_discriminant():
    W = MonicPoly.from_series(parse_expr("y^2 + b*y + c", R), "y")
    assert gen_disc(W, 1) == parse_expr("b^2 - 4*c", R)
    assert gen_disc(W, 2) == R.const(2)


def test_triple_root_pattern():
    W = monic_from_roots([0, 0, 0])
    assert [d == Y.const(v) for d, v in zip(all_gen_discs(W), [0, 0, 3])] == [True] * 3
    assert first_nonvanishing(W).j == 3


def test_cube_in_parameter():
    X = PolyRing(["x1", "y"])
    W = MonicPoly.from_series(parse_expr("y^3 - x1^2", X), "y")
    rec = first_nonvanishing(W)
    assert rec.j == 1 and rec.delta == parse_expr("-27*x1^4", X)


def test_oracle_examples():
    assert oracle_disc([1, -1], 1) == 4
    assert oracle_disc([0, 1, 2], 1) == 4
    assert oracle_disc([1, 1, 1], 2) == 0
    with pytest.raises(TooManyRoots):
        oracle_disc(range(7), 1)


def test_last_discriminant_is_degree_even_when_truncated():
    X = PolyRing(["x1", "y"])
    W = MonicPoly(X, "y", [X.zero(3), X.zero(3)])
    rec = first_nonvanishing(W)
    assert rec.j == 2 and rec.delta == X.const(2)
    assert rec.verdicts == {1: 3} and rec.certification == 3


def test_newton_sums_match_roots():
    roots = [Fraction(1, 2), 3, -2, 3]
    s = newton_sums(monic_from_roots(roots), 6)
    for k, sk in enumerate(s):
        assert sk == Y.const(mpq(sum(Fraction(r) ** k for r in roots)))


def test_resultant_against_sympy():
    rng = random.Random(3)
    y = sympy.Symbol("y")
    for _ in range(10):
        f = [rng.randint(-5, 5) for _ in range(rng.randint(2, 4))]
        g = [rng.randint(-5, 5) for _ in range(rng.randint(2, 4))]
        f[0] = f[0] or 1
        g[0] = g[0] or 1
        ours = resultant([Y.const(c) for c in f], [Y.const(c) for c in g], Y)
        # sympy's own Sylvester construction; its resultant() can differ in sign
        ref = sylvester(sympy.Poly(f, y).as_expr(), sympy.Poly(g, y).as_expr(), y).det()
        assert ours == Y.const(int(ref))


def test_classical_matches_sympy_symbolic():
    S = PolyRing(["a", "b", "c", "y"])
    W = MonicPoly.from_series(parse_expr("y^3 + a*y^2 + b*y + c", S), "y")
    a, b, c, y = sympy.symbols("a b c y")
    ref = sympy.discriminant(y ** 3 + a * y ** 2 + b * y + c, y)
    assert classical_discriminant(W) == parse_expr(str(sympy.expand(ref)).replace("**", "^"), S)
    assert gen_disc(W, 1) == classical_discriminant(W)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                min_size=1, max_size=5))
def test_hankel_equals_oracle(roots):
    W = monic_from_roots(roots)
    discs = all_gen_discs(W)
    for j in range(1, len(roots) + 1):
        assert discs[j - 1] == Y.const(oracle_disc([mpq(r) for r in roots], j).value)
    # the first nonvanishing index counts the distinct roots
    assert first_nonvanishing(W).j == len(roots) - len(set(roots)) + 1
