"""Universal denominators for an algebraic power series over Q(t).

Given ``P(t, x, y)`` and the first coefficients ``f_alpha(t)`` of a root
``y = f(x)``, the pipeline

1. computes ``e = ord_x dP/dy(x, f)``,
2. clears the denominators of ``f_alpha``, ``|alpha| <= 2e+1``, by ``b(t)``,
3. homogenizes (``x -> u x``), shifts ``y = T + u^(e+1) R y''`` around the
   ``(2e+1)``-truncation ``T`` and rescales ``u = R^2 u'``, where ``R(t, x)``
   is the ``u^e`` coefficient of ``dP*/dy(T)``,
4. solves the resulting equation ``G(y'') = 0`` by Newton iteration in
   ``u'`` (its linear coefficient is ``1 mod u'``, so every step is exact),
5. reads ``h_k = [y'']_{u'^k} = F_(k+e+1) R^(2k-1)`` and splits off the
   content ``r(t)`` of ``R``.

For the cleared series ``f' = b f`` this gives ``f'_alpha = N_alpha /
r^(2|alpha|-1)`` with polynomial numerators (exponent 0 when alpha = 0).

:func:`verify_eisenstein` checks the output against a separate
order-by-order solver over ``Q(t)`` that only consumes ``f_alpha`` for
``|alpha| <= e``.
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import (DivisibilityFailure, HenselStall, InexactDivision, ParseError,
                     SeedTooShort)
from .field import QQ, NumberField
from .polyalg import content_wrt, divide_exact, gcd, lcm, monic, reduce_fraction
from .series import PolyRing, Series, parse_expr

_U, _UP, _Z = "_u", "_u1", "_z"


def exponents_of_degree(n, m):
    """All exponent vectors in n variables with total degree m (graded-lex order)."""
    out = []
    for combo in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


class BranchSeed:
    """Minimal polynomial P(t, x, y) plus the leading coefficients of a root."""

    def __init__(self, P, tvars, xvars, yvar, seed, seed_degree=None):
        self.tvars, self.xvars, self.yvar = tuple(tvars), tuple(xvars), yvar
        ring = P.ring
        if ring.names != self.tvars + self.xvars + (yvar,):
            raise ValueError("P must live in the ring (t..., x..., y)")
        if not P.is_exact or P.is_zero() or P.degree_in(yvar) < 1:
            raise ValueError("P must be a nonzero polynomial of positive degree in y")
        self.P = P
        self.tring = PolyRing(self.tvars, ring.field)
        clean = {}
        for alpha, (num, den) in seed.items():
            alpha = tuple(int(k) for k in alpha)
            if len(alpha) != len(self.xvars) or any(k < 0 for k in alpha):
                raise ValueError(f"bad multi-index {list(alpha)}")
            num, den = self._in_t(num), self._in_t(den)
            if den.is_zero():
                raise ValueError(f"zero denominator at alpha={list(alpha)}")
            clean[alpha] = reduce_fraction(num, den)
        self.seed = clean
        self.seed_degree = (max((sum(a) for a in clean), default=-1)
                            if seed_degree is None else seed_degree)

    def _in_t(self, s):
        if isinstance(s, Series) and s.ring == self.tring:
            return s
        if isinstance(s, Series):
            try:
                return s.change_ring(self.tring)
            except Exception as exc:
                raise ValueError(f"seed coefficient {s} involves more than t") from exc
        return self.tring.const(s)

    @property
    def n(self):
        return len(self.xvars)

    @property
    def deg_y(self):
        return self.P.degree_in(self.yvar)

    def coefficient(self, alpha):
        tr = self.tring
        return self.seed.get(tuple(alpha), (tr.zero(), tr.one()))

    def coefficients_upto(self, m):
        return {a: self.coefficient(a)
                for k in range(m + 1) for a in exponents_of_degree(self.n, k)}

    # -- JSON -----------------------------------------------------------------
    @classmethod
    def from_json(cls, obj):
        try:
            v = obj["vars"]
            tvars, xvars, yvar = list(v.get("t", [])), list(v["x"]), v.get("y", "y")
            fld = NumberField.from_json(obj["field"]) if obj.get("field") else QQ
            ring = PolyRing(tvars + xvars + [yvar], fld)
            tring = PolyRing(tvars, fld)
            P = parse_expr(obj["P"], ring)
            seed = {}
            for item in obj["seed"]:
                alpha = tuple(item["alpha"])
                num = parse_expr(str(item.get("num", "0")), tring)
                den = parse_expr(str(item.get("den", "1")), tring)
                if alpha in seed:
                    raise ParseError(f"duplicate seed entry {list(alpha)}")
                seed[alpha] = (num, den)
            return cls(P, tvars, xvars, yvar, seed, obj.get("seed_degree"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"bad Eisenstein input: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from exc

    def to_json(self):
        out = {"P": str(self.P),
               "vars": {"t": list(self.tvars), "x": list(self.xvars), "y": self.yvar},
               "seed": [{"alpha": list(a), "num": str(nd[0]), "den": str(nd[1])}
                        for a, nd in sorted(self.seed.items(),
                                            key=lambda kv: (sum(kv[0]), [-k for k in kv[0]]))],
               "seed_degree": self.seed_degree}
        if self.P.field != QQ:
            out["field"] = self.P.field.to_json()
        return out


# -- ring plumbing ------------------------------------------------------------

def _xring(bs):
    """(t, x) with t of weight 0, so truncation and order count x-degree."""
    names = bs.tvars + bs.xvars
    return PolyRing(names, bs.P.ring.field, (0,) * len(bs.tvars) + (1,) * len(bs.xvars))


def _y_coeffs(bs, ring):
    """p_k(t, x) with P = sum_k p_k y^k, moved into ``ring``."""
    parts = bs.P.as_univariate(bs.yvar)
    return {k: Series(bs.P.ring, c.terms).change_ring(ring) for k, c in parts.items()}


def _common_numerator(coeffs, ring, xvars, tring):
    """Return (Fnum, d) with sum_alpha f_alpha x^alpha = Fnum / d, d monic in t."""
    d = tring.one()
    for num, den in coeffs.values():
        if not num.is_zero():
            d = lcm(d, den)
    F = ring.zero()
    for alpha, (num, den) in coeffs.items():
        if num.is_zero():
            continue
        c = (num * divide_exact(d, den)).change_ring(ring)
        F = F + c * ring.monomial(_lift_alpha(alpha, ring, xvars))
    return F, d.change_ring(ring)


def _lift_alpha(alpha, ring, xvars):
    e = [0] * ring.nvars
    for v, k in zip(xvars, alpha):
        e[ring.var_index(v)] = k
    return e


def _x_part(s, alpha, ring, xvars, tring):
    """Coefficient of x^alpha in s, as a polynomial in t."""
    ix = [ring.var_index(v) for v in xvars]
    out = {}
    for e, c in s.terms.items():
        if tuple(e[i] for i in ix) == tuple(alpha):
            out[tuple(e[ring.var_index(v)] for v in tring.names)] = c
    return Series(tring, out)


def _derivative_sum(p, F, d, deg, limit):
    """sum_k k p_k F^(k-1) d^(deg-k), truncated at x-degree ``limit``."""
    ring = F.ring
    acc = ring.zero(limit)
    Fpow = ring.one()
    for k in range(1, deg + 1):
        if k in p:
            acc = acc + (p[k] * Fpow).mul_trunc(d ** (deg - k), limit).scale(k)
        Fpow = Fpow.mul_trunc(F, limit)
    return acc.truncate(limit)


def _value_sum(p, F, d, deg, limit):
    """sum_k p_k F^k d^(deg-k) = d^deg P(F/d), truncated at x-degree ``limit``."""
    ring = F.ring
    acc = ring.zero(limit)
    Fpow = ring.one()
    for k in range(0, deg + 1):
        if k in p:
            acc = acc + (p[k] * Fpow).mul_trunc(d ** (deg - k), limit)
        Fpow = Fpow.mul_trunc(F, limit)
    return acc.truncate(limit)


# -- pipeline -------------------------------------------------------------------

def compute_e(bs):
    """x-order of dP/dy along the seed expansion."""
    S = bs.seed_degree
    if S < 0:
        raise SeedTooShort("empty seed", needed=0)
    ring = _xring(bs)
    F, d = _common_numerator(bs.coefficients_upto(S), ring, bs.xvars, bs.tring)
    Q = _derivative_sum(_y_coeffs(bs, ring), F, d, bs.deg_y, S)
    if Q.is_zero():
        raise SeedTooShort(f"dP/dy vanishes along the seed through x-degree {S}",
                           needed=S + 1)
    return Q.ord()


def seed_residual_order(bs):
    """Largest m <= seed_degree with P(x, seed) = 0 through x-degree m, or -1."""
    S = bs.seed_degree
    ring = _xring(bs)
    F, d = _common_numerator(bs.coefficients_upto(S), ring, bs.xvars, bs.tring)
    V = _value_sum(_y_coeffs(bs, ring), F, d, bs.deg_y, S)
    return S if V.is_zero() else V.ord() - 1


def clear_denominators(bs, e):
    """b = monic lcm of the denominators up to degree 2e+1, and the cleared seed."""
    need = 2 * e + 1
    if bs.seed_degree < need:
        raise SeedTooShort(f"seed known to degree {bs.seed_degree}, need {need}", needed=need)
    tr = bs.tring
    b = tr.one()
    for alpha, (num, den) in bs.coefficients_upto(need).items():
        if not num.is_zero():
            b = lcm(b, den)
    b = monic(b)
    deg = bs.deg_y
    ring = bs.P.ring
    bP = b.change_ring(ring)
    y = ring.gen(bs.yvar)
    P2 = ring.zero()
    for k, pk in bs.P.as_univariate(bs.yvar).items():
        P2 = P2 + Series(ring, pk.terms) * bP ** (deg - k) * y ** k
    seed = {a: (num * b, den) for a, (num, den) in bs.seed.items()}
    return b, BranchSeed(P2, bs.tvars, bs.xvars, bs.yvar, seed, bs.seed_degree)


@dataclass(frozen=True)
class EisensteinResult:
    e: int
    b: Series
    Rfull: Series
    r: Series
    numerators: dict
    out_degree: int
    residual_ok: bool
    divisibility_ok: bool
    xvars: tuple

    def shape_exponent(self, alpha):
        m = sum(alpha)
        return 2 * m - 1 if m else 0

    def coefficient(self, alpha):
        """f_alpha = N_alpha / (b * r^(2|alpha|-1)) as a (num, den) pair in t."""
        alpha = tuple(alpha)
        return self.numerators[alpha], self.b * self.r ** self.shape_exponent(alpha)

    def to_json(self):
        return {"e": self.e, "b": self.b.to_json(), "R": self.Rfull.to_json(),
                "r": self.r.to_json(), "out_degree": self.out_degree,
                "x": list(self.xvars),
                "numerators": [{"alpha": list(a), "N": n.to_json(),
                                "r_exponent": self.shape_exponent(a)}
                               for a, n in sorted(self.numerators.items(),
                                                  key=lambda kv: (sum(kv[0]),
                                                                  [-k for k in kv[0]]))],
                "certificates": {"divisibility": self.divisibility_ok,
                                 "hensel_residual_order": (self.out_degree + 1
                                                           if self.residual_ok else None)}}

    @classmethod
    def from_json(cls, obj, bs):
        """Rebuild a result serialized by :meth:`to_json` for the seed ``bs``."""
        tr = bs.tring
        ex = PolyRing(bs.tvars + bs.xvars, bs.P.ring.field)
        try:
            nums = {tuple(int(k) for k in item["alpha"]): Series.from_json(item["N"], tr)
                    for item in obj["numerators"]}
            cert = obj.get("certificates", {})
            return cls(int(obj["e"]), Series.from_json(obj["b"], tr),
                       Series.from_json(obj["R"], ex), Series.from_json(obj["r"], tr),
                       nums, int(obj["out_degree"]),
                       cert.get("hensel_residual_order") is not None,
                       bool(cert.get("divisibility", False)), bs.xvars)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad Eisenstein result: {exc}") from exc


def _newton(G, N, up):
    """Solve sum_k G[k] y^k = 0 for y = O(up) modulo up^(N+1)."""
    ring = G[1].ring
    dG = {k - 1: g.scale(k) for k, g in G.items() if k >= 1}
    y = ring.zero(0)
    prec = 0
    while prec < N:
        prec = min(2 * prec + 1, N)
        yy = y.as_exact()
        val = _horner(G, yy, prec)
        der = _horner(dG, yy, prec)
        y = (yy - val.mul_trunc(der.inverse(prec), prec)).truncate(prec)
    return y


def _horner(G, y, prec):
    ring = y.ring
    top = max(G)
    acc = ring.zero(prec)
    for k in range(top, -1, -1):
        acc = acc.mul_trunc(y, prec) + (G[k] if k in G else ring.zero()).truncate(prec)
    return acc.truncate(prec)


def eisenstein_extract(bs, out_degree):
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    e = compute_e(bs)
    b, cb = clear_denominators(bs, e)
    deg = bs.deg_y
    fld = bs.P.ring.field
    tx = bs.tvars + bs.xvars
    E = PolyRing(tx + (bs.yvar, _U, _UP, _Z), fld)
    u, up, z = E.gen(_U), E.gen(_UP), E.gen(_Z)

    # P*(u, x, y) = P'(u x, y), and the (2e+1)-truncation T of f*(u, x)
    Pstar = cb.P.compose({v: E.gen(v) * u for v in bs.xvars}, ring=E)
    T = E.zero()
    for alpha, (num, den) in cb.coefficients_upto(2 * e + 1).items():
        if num.is_zero():
            continue
        c = divide_exact(num, den).change_ring(E)
        T = T + c * E.monomial(_lift_alpha(alpha, E, bs.xvars)) * u ** sum(alpha)

    # Taylor coefficients C_k of P*(T + z) in z
    C = {k: Series(E, c.terms) for k, c in
         Pstar.compose({bs.yvar: T + z}).as_univariate(_Z).items()}
    A = C.get(0, E.zero())
    if not A.is_zero() and A.valuation_in(_U) < 2 * e + 2:
        raise DivisibilityFailure(
            f"P*(T) has u-order {A.valuation_in(_U)} < {2 * e + 2}: "
            "seed inconsistent with P through degree 2e+1")
    B = C.get(1, E.zero())
    if B.is_zero() or B.valuation_in(_U) != e:
        raise HenselStall(f"dP*/dy(T) does not have u-order exactly e={e}")
    Bparts = B.as_univariate(_U)
    R = Series(E, Bparts[e].terms)
    R2up = R * R * up

    def rescale(s):
        return s.compose({_U: R2up})

    try:
        G0 = divide_exact(rescale(A.shift(_U, -(2 * e + 1))), R * R) if not A.is_zero() else E.zero()
    except InexactDivision:
        raise DivisibilityFailure("R^2 does not divide the rescaled constant term") from None
    try:
        G1 = divide_exact(rescale(B.shift(_U, -e)), R)
    except InexactDivision:
        raise HenselStall("rescaled linear coefficient not divisible by R") from None
    G = {0: G0, 1: G1}
    for k in range(2, deg + 1):
        if k in C and not C[k].is_zero():
            G[k] = rescale(C[k]) * R2up ** (k * (e + 1) - (2 * e + 1)) * R ** (k - 2)

    V = PolyRing(tx + (_UP,), fld, (0,) * len(tx) + (1,))
    N = out_degree
    GV = {k: g.change_ring(V).truncate(N) for k, g in G.items()}
    lin0 = GV[1].as_univariate(_UP).get(0, V.zero())
    if lin0.as_exact() != V.one():
        raise HenselStall("linear coefficient is not 1 modulo u'")
    y2 = _newton(GV, N, _UP)
    residual_ok = _horner(GV, y2.as_exact(), N).is_zero()

    # recover numerators
    Ex = PolyRing(tx, fld)
    Rx = R.change_ring(Ex)
    r = monic(content_wrt(Rx, bs.xvars))
    Rp = divide_exact(Rx, r)
    rt = r.change_ring(bs.tring)
    h = {k: Series(V, c.terms).change_ring(Ex) for k, c in y2.as_univariate(_UP).items()}
    for k in range(0, e + 1):
        if k in h and not h[k].is_zero():
            raise DivisibilityFailure(f"Hensel solution has a u'^{k} term with k <= e")
    numerators = {}
    for m in range(0, out_degree + 1):
        if m <= 2 * e + 1:
            for alpha in exponents_of_degree(bs.n, m):
                num, den = cb.coefficient(alpha)
                f = divide_exact(num, den)
                numerators[alpha] = f * rt ** (2 * m - 1) if m else f
            continue
        k = m - e - 1
        hk = h.get(k, Ex.zero())
        try:
            Qk = divide_exact(hk, Rp ** (2 * k - 1))
        except InexactDivision:
            raise DivisibilityFailure(
                f"primitive part of R^{2 * k - 1} does not divide h_{k}") from None
        rpow = rt ** (2 * e + 2)
        for alpha in exponents_of_degree(bs.n, m):
            numerators[alpha] = _x_part(Qk, alpha, Ex, bs.xvars, bs.tring) * rpow
    return EisensteinResult(e, b, Rx, rt, numerators, out_degree, residual_ok, True,
                            bs.xvars)


def expand_over_qt(bs, degree):
    """Independent order-by-order solution of P(x, f) = 0 over Q(t).

    Uses only the seed through x-degree e and returns (Fnum, d) with
    f = Fnum / d modulo x-degree ``degree + 1``.
    """
    e = compute_e(bs)
    ring = _xring(bs)
    tr = bs.tring
    F, d = _common_numerator(bs.coefficients_upto(e), ring, bs.xvars, tr)
    p = _y_coeffs(bs, ring)
    deg = bs.deg_y
    xs = list(bs.xvars)
    for m in range(e + 1, degree + 1):
        H = _value_sum(p, F, d, deg, m + e).homogeneous_part(m + e).as_exact()
        L = _derivative_sum(p, F, d, deg, e).homogeneous_part(e).as_exact()
        cL = content_wrt(L, xs)
        Lp = divide_exact(L, cL)
        Qm = divide_exact(H, Lp)
        d_new = d * cL
        F_new = F * cL - Qm
        g = gcd(content_wrt(F_new, xs), d_new) if not F_new.is_zero() else d_new
        F, d = divide_exact(F_new, g), divide_exact(d_new, g)
        _, lc = max(d.terms.items())
        inv = d.field.inv(lc)
        F, d = F.scale(inv), d.scale(inv)
    return F, d.change_ring(tr)


def verify_eisenstein(res, bs, check_degree):
    """Cross-multiplied comparison of the pipeline against :func:`expand_over_qt`."""
    if check_degree > res.out_degree:
        raise ValueError("check_degree exceeds the computed degree")
    F, d = expand_over_qt(bs, check_degree)
    ring = F.ring
    report = {"checked_to": check_degree, "ok": True, "mismatch": None, "compared": 0,
              "shape_ok": True}
    for m in range(check_degree + 1):
        for alpha in exponents_of_degree(bs.n, m):
            oracle = _x_part(F, alpha, ring, bs.xvars, bs.tring)
            N, den = res.coefficient(alpha)
            report["compared"] += 1
            if oracle * den != N * d:
                report["ok"] = False
                report["mismatch"] = {"alpha": list(alpha), "oracle": f"({oracle})/({d})",
                                      "pipeline": f"({N})/({den})"}
                return report
            # shape law on the cleared series: r^(2|alpha|-1) b f_alpha is a polynomial
            shaped = oracle * res.b * res.r ** res.shape_exponent(alpha)
            if not _divides_t(d, shaped):
                report["shape_ok"] = False
    return report


def _divides_t(d, s):
    try:
        divide_exact(s, d)
    except InexactDivision:
        return False
    return True
