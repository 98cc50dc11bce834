from fractions import Fraction

import pytest
import sympy

from germtools.eisenstein import (BranchSeed, EisensteinResult, compute_e,
                                  eisenstein_extract, exponents_of_degree, verify_eisenstein)
from germtools.errors import DivisibilityFailure, ParseError

t, x = sympy.symbols("t x")


def seed(P, entries, xs=("x",)):
    return BranchSeed.from_json({
        "P": P, "vars": {"t": ["t"], "x": list(xs), "y": "y"},
        "seed": [{"alpha": list(a), "num": n, "den": d} for a, n, d in entries]})


RATIONAL = seed("(t - x)*y - t", [((0,), "1", "1"), ((1,), "1", "t")])
SQRT = seed("y^2 - 1 - t*x", [((0,), "1", "1"), ((1,), "t", "2")])
NODE = seed("y^2 - x^2*(1 + t*x)", [((1,), "1", "1"), ((2,), "t", "2"), ((3,), "-t^2", "8")])

CASES = [(RATIONAL, t / (t - x)), (SQRT, sympy.sqrt(1 + t * x)),
         (NODE, x * sympy.sqrt(1 + t * x))]


def sym(s):
    return sympy.sympify(str(s).replace("^", "**"))


@pytest.mark.parametrize("bs,closed", CASES, ids=["rational", "sqrt", "node"])
def test_against_sympy_series(bs, closed):
    N = 7
    res = eisenstein_extract(bs, N)
    assert res.residual_ok and res.divisibility_ok
    ref = sympy.series(closed, x, 0, N + 1).removeO()
    for k in range(N + 1):
        num, den = res.coefficient((k,))
        want = sympy.simplify(ref.coeff(x, k))
        assert sympy.simplify(sym(num) / sym(den) - want) == 0, k


@pytest.mark.parametrize("bs,_", CASES, ids=["rational", "sqrt", "node"])
def test_shape_law(bs, _):
    res = eisenstein_extract(bs, 8)
    rep = verify_eisenstein(res, bs, 8)
    assert rep["ok"] and rep["shape_ok"]
    assert rep["compared"] == 9


def test_seed_order():
    # order in x of dP/dy along the seed: t - x, 2, and 2x respectively
    assert [compute_e(b) for b in (RATIONAL, SQRT, NODE)] == [0, 0, 1]


def test_two_parameters():
    bs = seed("y^2 - x1^2*(t^2 + x2)",
              [((1, 0), "t", "1"), ((1, 1), "1", "2*t"), ((1, 2), "-1", "8*t^3")],
              xs=("x1", "x2"))
    res = eisenstein_extract(bs, 6)
    rep = verify_eisenstein(res, bs, 6)
    assert rep["ok"] and rep["shape_ok"]
    assert rep["compared"] == sum(len(exponents_of_degree(2, m)) for m in range(7))


def test_bad_seed_fails_divisibility():
    bad = seed("y^2 - 1 - t*x", [((0,), "1", "1"), ((1,), "t", "3")])
    with pytest.raises(DivisibilityFailure):
        eisenstein_extract(bad, 6)


def test_perturbed_numerator_is_reported():
    res = eisenstein_extract(SQRT, 6)
    obj = res.to_json()
    entry = next(n for n in obj["numerators"] if n["alpha"] == [3])
    entry["N"]["terms"][0]["c"] = str(Fraction(entry["N"]["terms"][0]["c"]) + 1)
    bad = EisensteinResult.from_json(obj, SQRT)
    rep = verify_eisenstein(bad, SQRT, 6)
    assert not rep["ok"] and rep["mismatch"]["alpha"] == [3]


def test_json_roundtrip():
    res = eisenstein_extract(NODE, 5)
    assert EisensteinResult.from_json(res.to_json(), NODE).to_json() == res.to_json()
    assert BranchSeed.from_json(NODE.to_json()).to_json() == NODE.to_json()
    with pytest.raises(ParseError):
        EisensteinResult.from_json({"e": 1}, NODE)
