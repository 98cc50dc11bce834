"""Regularity, transversality-achieving shears and Weierstrass preparation.

Preparation uses formal division: ``y^p = q*F + r`` with ``deg_y r < p``;
then ``W = y^p - r`` and ``u = 1/q``.  The division iterates the easy
division by ``F(0, y) = y^p e(y)`` and feeds the remainder back through
``F - F(0, y)``.  The iteration is graded so that it never lowers degree:
total degree when ``F`` is transverse (mult = p), otherwise the weighted
degree giving the distinguished variable weight 1 and the others weight p.
"""
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from gmpy2 import mpq

from .errors import NotRegularError, SearchExhausted, TruncationBudgetExhausted
from .series import AtLeast, Series


class MonicPoly:
    """Monic polynomial var^p + a_1 var^(p-1) + ... + a_p, a_j free of var."""

    __slots__ = ("ring", "var", "coeffs")

    def __init__(self, ring, var, coeffs):
        self.ring = ring
        self.var = ring.names[ring.var_index(var)]
        coeffs = tuple(c if isinstance(c, Series) else ring.const(c) for c in coeffs)
        for j, c in enumerate(coeffs, 1):
            if c.ring != ring:
                raise ValueError("coefficient ring mismatch")
            if c.degree_in(self.var) > 0:
                raise ValueError(f"coefficient a_{j} involves {self.var}")
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs)

    @property
    def trunc(self):
        t = None
        for c in self.coeffs:
            if c.trunc is not None:
                t = c.trunc if t is None else min(t, c.trunc)
        return t

    @property
    def is_exact(self):
        return all(c.is_exact for c in self.coeffs)

    def to_series(self):
        y = self.ring.gen(self.var)
        p = self.degree
        out = y ** p
        for j, a in enumerate(self.coeffs, 1):
            out = out + a * y ** (p - j)
        return out

    @classmethod
    def from_series(cls, F, var):
        """Read a monic polynomial in ``var`` off a series."""
        parts = F.as_univariate(var)
        p = max(parts) if parts else 0
        lead = parts.get(p)
        if lead is None or lead.as_exact() != F.ring.one():
            raise ValueError(f"series is not monic in {var}")
        ring = F.ring
        coeffs = []
        for j in range(1, p + 1):
            c = parts.get(p - j, ring.zero())
            # the coefficient of var^(p-j) is known through degree trunc - (p - j)
            tr = None if F.trunc is None else F.trunc - (p - j)
            coeffs.append(Series(ring, c.terms, tr))
        return cls(ring, var, coeffs)

    def __mul__(self, other):
        if self.ring != other.ring or self.var != other.var:
            raise ValueError("incompatible monic polynomials")
        one = self.ring.one()
        a = (one,) + self.coeffs
        b = (one,) + other.coeffs
        out = []
        for j in range(1, len(a) + len(b) - 1):
            acc = self.ring.zero()
            for k in range(max(0, j - len(b) + 1), min(j, len(a) - 1) + 1):
                acc = acc + a[k] * b[j - k]
            out.append(acc)
        return type(self)(self.ring, self.var, out)

    def __eq__(self, other):
        return (isinstance(other, MonicPoly) and self.ring == other.ring
                and self.var == other.var and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.var, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_series()!s})"

    def to_json(self):
        return {"var": self.var, "p": self.degree,
                "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, ring):
        return cls(ring, obj["var"], [Series.from_json(c, ring) for c in obj["coeffs"]])


class WeierstrassPoly(MonicPoly):
    """Monic polynomial whose non-leading coefficients vanish at the origin."""

    __slots__ = ()

    def __init__(self, ring, var, coeffs):
        super().__init__(ring, var, coeffs)
        for j, c in enumerate(self.coeffs, 1):
            if c.is_unit():
                raise ValueError(f"a_{j}(0) != 0: not a Weierstrass polynomial")

    @property
    def dist_var(self):
        return self.var


@dataclass(frozen=True)
class PreparationResult:
    unit: Series
    poly: WeierstrassPoly
    valid_to: int

    @property
    def exact(self):
        return self.unit.is_exact and self.poly.is_exact

    def to_json(self):
        return {"unit": self.unit.to_json(), "poly": self.poly.to_json(),
                "valid_to": self.valid_to}


def multiplicity(F):
    """mult_0(F): the order of F (certified only modulo its truncation)."""
    return F.ord()


def regularity_order(F, var):
    """Order of F(0, ..., 0, var, 0, ...), or None when that restriction vanishes."""
    ring = F.ring
    i = ring.var_index(var)
    orders = [e[i] for e in F.terms if not any(k for j, k in enumerate(e) if j != i)]
    if orders:
        return min(orders)
    return None


def _spiral(bound):
    seq = [0]
    for c in range(1, bound + 1):
        seq += [c, -c]
    return seq


def _shear_matrix(n, i, movable, shifts):
    M = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    for j, c in zip(movable, shifts):
        M[j][i] = c
    return M


def _axis_leading(F, i, movable, target, shifts):
    """Coefficient of x_i^target in F restricted to x_j = c_j x_i (j movable), others 0."""
    field = F.field
    acc = field.zero
    allowed = set(movable) | {i}
    cmap = dict(zip(movable, shifts))
    for e, c in F.terms.items():
        if sum(e) != target:
            continue
        if any(k for j, k in enumerate(e) if k and j not in allowed):
            continue
        mult = mpq(1)
        for j, k in enumerate(e):
            if k and j != i:
                mult *= mpq(cmap[j]) ** k
        if mult:
            acc = field.add(acc, field.scale(c, mult))
    return not field.is_zero(acc)


class ShearResult(NamedTuple):
    matrix: list
    orders: list


def shear_targets(G, frozen=()):
    """Best achievable regularity order of each series: its order once ``frozen`` vars are 0."""
    out = []
    for g in G:
        o = g.restrict_zero(frozen).ord() if frozen else g.ord()
        out.append(o)
    return out


def make_transverse(G, var, frozen=(), bound=16, among=None):
    """Find integer shears x_j <- x_j + c_j * x_i making every G_s regular of best order.

    ``among`` lists the variables allowed to move (default: all but ``var``
    and ``frozen``).  Candidates are enumerated deterministically by spiral
    level over 0, 1, -1, 2, -2, ..., bound.  Returns the substitution matrix
    (for :meth:`Series.linear_change`) and the achieved orders.
    """
    if not G:
        raise ValueError("no series given")
    ring = G[0].ring
    n = ring.nvars
    i = ring.var_index(var)
    frozen_idx = {ring.var_index(v) for v in frozen}
    if among is None:
        movable = [j for j in range(n) if j != i and j not in frozen_idx]
    else:
        movable = sorted({ring.var_index(v) for v in among} - frozen_idx - {i})
    fixed = [ring.names[j] for j in range(n) if j != i and j not in movable]
    targets = shear_targets(G, fixed)
    for s, t in enumerate(targets):
        if isinstance(t, AtLeast):
            raise SearchExhausted(
                f"series #{s} vanishes (mod truncation) once fixed variables are zero")
    seq = _spiral(bound)
    best = None
    best_score = -1
    for level in range(len(seq)):
        for combo in product(range(level + 1), repeat=len(movable)):
            if movable and max(combo) != level:
                continue
            shifts = [seq[k] for k in combo]
            ok = [_axis_leading(g, i, movable, t, shifts) for g, t in zip(G, targets)]
            score = sum(ok)
            if score > best_score:
                best, best_score = shifts, score
            if all(ok):
                return ShearResult(_shear_matrix(n, i, movable, shifts), list(targets))
        if not movable:
            break
    raise SearchExhausted(
        f"no shear with |c| <= {bound} makes all series regular of their best order "
        f"(best satisfies {best_score}/{len(G)})",
        best=_shear_matrix(n, i, movable, best) if best is not None else None)


def _wdeg_fn(ring, i, w):
    def wd(e):
        return w * (sum(e) - e[i]) + e[i]
    return wd


def _truncate_w(terms, wd, limit):
    return {e: c for e, c in terms.items() if wd(e) <= limit}


def _mul_w(a, b, field, wd, limit):
    # weighted truncated product via a temporary weighted ring view
    out = {}
    mul, fadd = field.mul, field.add
    bl = sorted(((wd(e), e, c) for e, c in b.items()), key=lambda t: t[0])
    for ea, ca in a.items():
        da = wd(ea)
        if da > limit:
            continue
        room = limit - da
        for db, eb, cb in bl:
            if db > room:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            c = mul(ca, cb)
            prev = out.get(e)
            out[e] = c if prev is None else fadd(prev, c)
    return {e: c for e, c in out.items() if not field.is_zero(c)}


def _univariate_inverse(coeffs, field, n):
    """Inverse of sum coeffs[k] y^k (coeffs[0] != 0) modulo y^(n+1)."""
    inv0 = field.inv(coeffs[0])
    out = [inv0]
    for k in range(1, n + 1):
        acc = field.zero
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = field.add(acc, field.mul(coeffs[j], out[k - j]))
        out.append(field.neg(field.mul(acc, inv0)))
    return out


def prepare(F, var, D):
    """Weierstrass preparation F = u * W modulo total degree ``valid_to + 1``.

    ``valid_to = D - p`` for exact or transverse input; a truncated input
    that is not transverse loses more (its truncation only controls the
    weighted grading) and reports the smaller certified degree.  When the
    truncated factors multiply back to an exact input exactly, uniqueness
    of the preparation makes them exact and they are returned untruncated.
    """
    ring = F.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("preparation requires a ring with unit weights")
    i = ring.var_index(var)
    p = regularity_order(F, i)
    if p is None:
        raise NotRegularError(f"series is not regular in {ring.names[i]} (mod truncation)")
    if F.trunc is not None and F.trunc < D:
        raise TruncationBudgetExhausted(
            f"input truncated at {F.trunc} < requested degree {D}")
    field = F.field
    zero_e = (0,) * ring.nvars
    if p == 0:
        unit = F if F.is_exact else F.truncate(D)
        return PreparationResult(unit, WeierstrassPoly(ring, ring.names[i], []), D)

    mult = F.ord()
    w = 1 if mult == p else p
    wd = _wdeg_fn(ring, i, w)
    L = w * D if F.trunc is None else min(w * D, F.trunc)
    valid_to = min(D - p, (L - p) // w)
    if valid_to < p:
        raise TruncationBudgetExhausted(
            f"preparation certified only to degree {valid_to} < p = {p}")

    axis = {e[i]: c for e, c in F.terms.items()
            if not any(k for j, k in enumerate(e) if j != i)}
    e_coeffs = [axis.get(p + k, field.zero) for k in range(max(axis) - p + 1)]
    einv = _univariate_inverse(e_coeffs, field, max(L - p, 0))
    F1 = {e: c for e, c in F.terms.items() if any(k for j, k in enumerate(e) if j != i)}
    F1 = _truncate_w(F1, wd, L)

    def unit_vec(k):
        return tuple(k if j == i else 0 for j in range(ring.nvars))

    G = {unit_vec(p): field.one}
    q, r = {}, {}
    while G:
        Gq = {}
        for e, c in G.items():
            if e[i] < p:
                r[e] = field.add(r.get(e, field.zero), c)
            else:
                Gq[e[:i] + (e[i] - p,) + e[i + 1:]] = c
        einv_terms = {unit_vec(k): c for k, c in enumerate(einv) if not field.is_zero(c)}
        qm = _mul_w(Gq, einv_terms, field, wd, L - p)
        for e, c in qm.items():
            q[e] = field.add(q.get(e, field.zero), c)
        G = {e: field.neg(c) for e, c in _mul_w(qm, F1, field, wd, L).items()}

    q = {e: c for e, c in q.items() if not field.is_zero(c)}
    # u = 1/q in the same weighted grading, correct through weight L - p
    u = _weighted_inverse(q, field, wd, L - p, zero_e)

    parts = {}
    for e, c in r.items():
        if not field.is_zero(c):
            parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = field.neg(c)
    coeffs = [Series(ring, parts.get(p - j, {}), valid_to) for j in range(1, p + 1)]
    unit = Series(ring, u, valid_to)
    W = WeierstrassPoly(ring, ring.names[i], coeffs)

    if F.is_exact:
        ue = unit.as_exact()
        We = WeierstrassPoly(ring, ring.names[i], [c.as_exact() for c in coeffs])
        if ue * We.to_series() == F:
            unit, W = ue, We
    return PreparationResult(unit, W, valid_to)


def _weighted_inverse(q, field, wd, limit, zero_e):
    c0 = q.get(zero_e)
    if c0 is None:
        raise NotRegularError("division quotient is not a unit")
    inv0 = field.inv(c0)
    # z_{k+1} = z_k (2 - q z_k), doubling precision in the weighted grading
    z = {zero_e: inv0}
    prec = 0
    while prec < limit:
        prec = min(2 * prec + 1, limit)
        qz = _mul_w(q, z, field, wd, prec)
        two_minus = {e: field.neg(c) for e, c in qz.items()}
        two_minus[zero_e] = field.add(two_minus.get(zero_e, field.zero), field.from_rational(2))
        z = _mul_w(z, two_minus, field, wd, prec)
    return z
