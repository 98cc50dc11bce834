"""Exact polynomial algebra on exact :class:`Series`: division, gcd, content.

gcd uses the recursive primitive pseudo-remainder sequence, so it works
over any coefficient field (Q or Q[v]/(m)).  Results are normalized so the
lexicographically leading coefficient is 1.
"""
from .errors import InexactDivision
from .series import Series


def _require_exact(*polys):
    for p in polys:
        if not p.is_exact:
            raise ValueError("exact polynomial required")


def leading_term(f):
    """Lexicographically largest exponent and its raw coefficient."""
    e = max(f.terms)
    return e, f.terms[e]


def monic(f):
    if f.is_zero():
        return f
    _, c = leading_term(f)
    return f.scale(f.field.inv(c))


def divide_exact(f, g):
    """Return q with f == q*g, raising InexactDivision otherwise."""
    _require_exact(f, g)
    if g.is_zero():
        raise InexactDivision("division by the zero polynomial")
    ring, field = f.ring, f.field
    ge, gc = leading_term(g)
    gcinv = field.inv(gc)
    glist = list(g.terms.items())
    rem = dict(f.terms)
    quot = {}
    mul, sub, isz = field.mul, field.sub, field.is_zero
    while rem:
        re_ = max(rem)
        rc = rem[re_]
        shift = tuple(a - b for a, b in zip(re_, ge))
        if any(k < 0 for k in shift):
            raise InexactDivision("polynomial does not divide exactly")
        c = mul(rc, gcinv)
        quot[shift] = c
        for e, v in glist:
            te = tuple(a + b for a, b in zip(e, shift))
            nv = sub(rem.get(te, field.zero), mul(c, v))
            if isz(nv):
                rem.pop(te, None)
            else:
                rem[te] = nv
    return Series(ring, quot)


def divides(g, f):
    try:
        divide_exact(f, g)
    except InexactDivision:
        return False
    return True


def _main_var(f, g):
    n = f.ring.nvars
    for i in range(n):
        if any(e[i] for e in f.terms) or any(e[i] for e in g.terms):
            return i
    return None


def _coeffs_in(f, i):
    return [c for _, c in sorted(f.as_univariate(i).items())]


def _lead_in(f, i):
    parts = f.as_univariate(i)
    k = max(parts)
    return k, parts[k]


def content_in(f, i):
    """gcd of the coefficients of f seen as a polynomial in variable i."""
    acc = None
    for c in _coeffs_in(f, i):
        acc = c if acc is None else gcd(acc, c)
        if acc.is_constant():
            return f.ring.one()
    return f.ring.zero() if acc is None else monic(acc)


def primitive_part_in(f, i):
    if f.is_zero():
        return f
    return divide_exact(f, content_in(f, i))


def _prem(a, b, i, ring):
    db, lcb = _lead_in(b, i)
    xi = ring.gen(ring.names[i])
    while not a.is_zero():
        da = a.degree_in(i)
        if da < db:
            break
        _, lca = _lead_in(a, i)
        a = a * lcb - lca * (xi ** (da - db)) * b
    return a


def gcd(f, g):
    """Greatest common divisor of exact polynomials (monic in lex order)."""
    _require_exact(f, g)
    if f.ring != g.ring:
        raise ValueError("gcd of polynomials from different rings")
    ring = f.ring
    if f.is_zero():
        return monic(g)
    if g.is_zero():
        return monic(f)
    i = _main_var(f, g)
    if i is None:
        return ring.one()
    cf, cg = content_in(f, i), content_in(g, i)
    c = gcd(cf, cg)
    a, b = divide_exact(f, cf), divide_exact(g, cg)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while True:
        if b.is_zero():
            h = a
            break
        if b.degree_in(i) == 0:
            h = ring.one()
            break
        r = _prem(a, b, i, ring)
        a, b = b, (primitive_part_in(r, i) if not r.is_zero() else r)
    h = primitive_part_in(h, i)
    return monic(c * h)


def lcm(f, g):
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    return monic(divide_exact(f * g, gcd(f, g)))


def content_wrt(f, names):
    """gcd of the coefficients of f viewed as a polynomial in ``names``.

    The coefficients live in the remaining variables; the result is monic.
    """
    _require_exact(f)
    ring = f.ring
    idx = [ring.var_index(n) for n in names]
    groups = {}
    for e, c in f.terms.items():
        key = tuple(e[i] for i in idx)
        rest = list(e)
        for i in idx:
            rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = c
    acc = None
    for key in sorted(groups):
        coeff = Series(ring, groups[key])
        acc = coeff if acc is None else gcd(acc, coeff)
        if acc.is_constant():
            return ring.one()
    return ring.zero() if acc is None else monic(acc)


def reduce_fraction(num, den):
    """Cancel the gcd of num/den and make den monic."""
    if num.is_zero():
        return num, den.ring.one()
    g = gcd(num, den)
    num, den = divide_exact(num, g), divide_exact(den, g)
    _, c = leading_term(den)
    inv = den.field.inv(c)
    return num.scale(inv), den.scale(inv)
