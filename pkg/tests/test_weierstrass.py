import random

import pytest
from gmpy2 import mpq

from germtools.errors import NotRegularError, SearchExhausted, TruncationBudgetExhausted
from germtools.series import PolyRing, Series, parse_expr
from germtools.weierstrass import make_transverse, prepare, regularity_order

R = PolyRing(["x1", "x2"])


def P(s, ring=R):
    return parse_expr(s, ring)


def test_unit_times_quadratic():
    F = P("(1 + x1)*(x2^2 - x1^3)")
    res = prepare(F, "x2", 12)
    assert res.unit == P("1 + x1")
    assert res.poly.to_series() == P("x2^2 - x1^3")
    assert res.exact


def test_transverse_series_through_valid_to():
    F = P("x2^2 + x1*x2 + x1^2*x2^2 + x2^3").truncate(10)
    res = prepare(F, "x2", 10)
    assert res.poly.degree == 2 and res.valid_to == 8
    assert (res.unit * res.poly.to_series()).equal_mod(F, res.valid_to)
    for a in res.poly.coeffs:
        assert a.constant_term().is_zero()


def test_exact_preparation_of_a_unit():
    res = prepare(P("1 + x1 + x2"), "x2", 6)
    assert res.poly.degree == 0 and res.unit == P("1 + x1 + x2")


def test_not_regular():
    with pytest.raises(NotRegularError):
        prepare(P("x1*x2"), "x2", 8)
    assert regularity_order(P("x1*x2 + x2^5"), "x2") == 5


def test_budget_exhausted():
    with pytest.raises(TruncationBudgetExhausted):
        prepare(P("x2^3 + x1").truncate(4), "x2", 4)


def test_make_transverse_example():
    res = make_transverse([P("x1*x2")], "x2")
    assert res.orders == [2]
    G = P("x1*x2").linear_change(res.matrix)
    assert regularity_order(G, "x2") == 2


def test_make_transverse_exhausted():
    R3 = PolyRing(["x1", "x2", "x3"])
    # no shear can reach the order: x1 is frozen, x3 absent along the axis
    with pytest.raises(SearchExhausted):
        make_transverse([P("x1*x3", R3)], "x3", frozen=("x2",), among=(), bound=2)


def _random_regular(rng):
    n = rng.randint(1, 3)
    p = rng.randint(1, 4)
    ring = PolyRing([f"x{i}" for i in range(1, n + 1)])
    terms = {(0,) * (n - 1) + (p,): mpq(rng.choice([1, -1, 2, 3]))}
    for _ in range(rng.randint(1, 6)):
        e = [rng.randint(0, 3) for _ in range(n)]
        if n == 1 or sum(e[:-1]) == 0:
            e[-1] = max(e[-1], p + 1)
        if sum(e):
            terms[tuple(e)] = mpq(rng.randint(-3, 3), rng.randint(1, 3))
    return ring, Series(ring, terms), ring.names[-1]


@pytest.mark.parametrize("seed", range(5))
def test_random_preparation_identity(seed):
    rng = random.Random(seed)
    for _ in range(8):
        ring, F, xn = _random_regular(rng)
        res = prepare(F, xn, 12)
        assert (res.unit * res.poly.to_series()).equal_mod(F, res.valid_to)
        assert not res.unit.constant_term().is_zero()
