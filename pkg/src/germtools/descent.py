"""Field descent over K = Q[v]/(m) and Taylor expansion of algebraic branches.

Descent writes a series over K as ``sum_k v^k f_k`` with rational ``f_k``
and checks the split against the conjugate series through the Vandermonde
matrix of the conjugates of v.  The branch tools expand a simple root
``v0`` of ``P(q, v)`` into a power series in ``s = t - q``.
"""
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import NotARoot, OnDiscriminantLocus, PoleAtPoint
from .field import QQ, FieldElement, Unsupported, conjugate_images, upoly_derivative, upoly_xgcd
from .series import PolyRing, Series


@dataclass(frozen=True)
class DescentResult:
    components: tuple
    field: object
    source: Series
    vandermonde_checked: bool = False

    def reassemble(self):
        """sum_k v^k components[k], back over K."""
        ring = self.source.ring
        v = ring.const(self.field.gen())
        acc = ring.zero(self.source.trunc)
        for k, comp in enumerate(self.components):
            acc = acc + comp.change_ring(ring) * v ** k
        return acc

    def to_json(self):
        return {"field": self.field.to_json(),
                "source": self.source.to_json(),
                "components": [c.to_json() for c in self.components],
                "vandermonde_checked": self.vandermonde_checked}


def basis_decompose(f):
    field = f.field
    d = field.degree
    qring = f.ring.with_field(QQ)
    parts = [dict() for _ in range(d)]
    for e, c in f.terms.items():
        for k, x in enumerate(field.coords(c)):
            if x:
                parts[k][e] = mpq(x)
    comps = tuple(Series(qring, p, f.trunc) for p in parts)
    return DescentResult(comps, field, f)


def _solve(M, rhs, field):
    """Exact Gaussian elimination over K; M is square and nonsingular."""
    n = len(M)
    A = [list(row) + [b] for row, b in zip(M, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if not field.is_zero(A[r][col]))
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        A[col] = [field.mul(x, inv) for x in A[col]]
        for r in range(n):
            if r != col and not field.is_zero(A[r][col]):
                f = A[r][col]
                A[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def vandermonde_verify(res, field=None):
    """Check the stored components against the conjugates of the source series.

    The conjugate series ``sigma_j(f)`` are built from the source alone; the
    Vandermonde system ``M c = (sigma_j(f))_j`` is then solved exactly and
    the solution must equal the stored components, term by term.
    """
    field = field or res.field
    conj = conjugate_images(field)
    if isinstance(conj, Unsupported):
        return conj
    d = field.degree
    if len(res.components) != d:
        return False
    a = [c.value for c in conj]
    M = [[field.pow(aj, k) for k in range(d)] for aj in a]
    exps = set(res.source.terms)
    for comp in res.components:
        exps.update(comp.terms)
    for e in sorted(exps):
        c = res.source.terms.get(e, field.zero)
        coords = field.coords(c)
        # sigma_j(c): replace v by its j-th conjugate
        rhs = []
        for aj in a:
            acc = field.zero
            for k, x in enumerate(coords):
                if x:
                    acc = field.add(acc, field.scale(field.pow(aj, k), mpq(x)))
            rhs.append(acc)
        sol = _solve(M, rhs, field)
        for k, comp in enumerate(res.components):
            stored = field.from_rational(comp.terms.get(e, mpq(0)))
            if not field.is_zero(field.sub(sol[k], stored)):
                return False
    if any(c.trunc != res.source.trunc for c in res.components):
        return False
    return True


@dataclass(frozen=True)
class BranchPoint:
    P: Series           # exact, in variables (t_1, ..., t_r, v)
    var: str            # the algebraic variable
    q: dict             # t-name -> rational
    v0: FieldElement
    N: int

    @property
    def tvars(self):
        return tuple(n for n in self.P.ring.names if n != self.var)


def _shift_ring(tvars, field):
    names = ["s"] if len(tvars) == 1 else [f"s{i}" for i in range(1, len(tvars) + 1)]
    return PolyRing(names, field)


def _shifted(P, tvars, q, sring):
    """P(q + s, ...); any other variable w is renamed to ``_w``."""
    keep = [n for n in P.ring.names if n not in tvars]
    target = PolyRing(tuple(sring.names) + tuple("_" + n for n in keep), sring.field)
    subst = {t: target.gen(s) + target.const(q[t]) for t, s in zip(tvars, sring.names)}
    subst.update({n: target.gen("_" + n) for n in keep})
    return P.compose(subst, ring=target)


def _check_point(bp):
    if bp.P.field != QQ:
        raise ValueError("branch polynomials must have rational coefficients")
    K = bp.v0.field
    tv = bp.tvars
    missing = [t for t in tv if t not in bp.q]
    if missing:
        raise ValueError(f"point does not assign {missing}")
    vals = {t: mpq(bp.q[t]) for t in tv}
    # P(q, v) as a dense univariate polynomial over Q
    Pq = {}
    iv = bp.P.ring.var_index(bp.var)
    for e, c in bp.P.terms.items():
        val = mpq(c)
        for n, k in zip(bp.P.ring.names, e):
            if k and n != bp.var:
                val *= vals[n] ** k
        Pq[e[iv]] = Pq.get(e[iv], mpq(0)) + val
    dense = [Pq.get(k, mpq(0)) for k in range(max(Pq) + 1)] if Pq else []
    while dense and dense[-1] == 0:
        dense.pop()
    if len(dense) < 2:
        raise OnDiscriminantLocus("leading coefficient in v vanishes at q (or P(q, v) is constant)")
    if bp.P.degree_in(bp.var) != len(dense) - 1:
        raise OnDiscriminantLocus("leading coefficient in v vanishes at q")
    g, _, _ = upoly_xgcd(dense, upoly_derivative(dense))
    if len(g) > 1:
        raise OnDiscriminantLocus("P(q, v) has a repeated root: q lies on the discriminant locus")
    acc = K.zero
    for c in reversed(dense):
        acc = K.add(K.mul(acc, bp.v0.value), K.from_rational(c))
    if not K.is_zero(acc):
        raise NotARoot(f"P(q, {bp.v0}) = {K.format(acc)} != 0")


def branch_taylor(bp):
    """The series w(s) with w(0) = v0 and P(q + s, w(s)) = 0 mod degree N + 1."""
    _check_point(bp)
    K = bp.v0.field
    sring = _shift_ring(bp.tvars, K)
    Ps = _shifted(bp.P, bp.tvars, bp.q, sring)
    coeffs = {k: Series(Ps.ring, c.terms).compose({"_" + bp.var: 0}, ring=sring)
              for k, c in Ps.as_univariate("_" + bp.var).items()}
    dcoeffs = {k - 1: c.scale(k) for k, c in coeffs.items() if k}
    N = bp.N
    w = sring.const(bp.v0)
    prec = 0
    while prec < N:
        prec = min(2 * prec + 1, N)
        val = _horner(coeffs, w, prec)
        der = _horner(dcoeffs, w, prec)
        w = (w - val.mul_trunc(der.inverse(prec), prec)).truncate(prec).as_exact()
    return w.truncate(N)


def branch_residual(bp, w):
    """P(q + s, w) modulo degree trunc(w) + 1."""
    sring = w.ring
    Ps = _shifted(bp.P, bp.tvars, bp.q, sring)
    coeffs = {k: Series(Ps.ring, c.terms).compose({"_" + bp.var: 0}, ring=sring)
              for k, c in Ps.as_univariate("_" + bp.var).items()}
    return _horner(coeffs, w.as_exact(), w.trunc)


def _horner(coeffs, w, prec):
    ring = w.ring
    acc = ring.zero(prec)
    for k in range(max(coeffs), -1, -1):
        acc = acc.mul_trunc(w, prec) + coeffs.get(k, ring.zero()).truncate(prec)
    return acc.truncate(prec)


def inverse_taylor(R, q, N):
    """1/R(q + s) modulo degree N + 1."""
    tv = R.ring.names
    sring = _shift_ring(tv, R.field)
    Rs = _shifted(R, tv, q, sring)
    if Rs.constant_term().is_zero():
        raise PoleAtPoint(f"R vanishes at {dict(q)}")
    return Rs.inverse(N)


def specialize_family(y, q):
    """Set the parameters named in q to the given values, keeping the other variables.

    For a truncated y the truncation is read as x-degree, which is sound
    because the t-dependence of each x-coefficient is polynomial.
    """
    ring = y.ring
    keep = [n for n in ring.names if n not in q]
    kw = [ring.weights[ring.var_index(n)] for n in keep]
    target = PolyRing(keep, ring.field, kw)
    view = Series(ring.with_weights([0 if n in q else w
                                     for n, w in zip(ring.names, ring.weights)]),
                  y.terms, y.trunc)
    return view.compose({t: target.const(c) for t, c in q.items()}, ring=target)
