"""Sparse multivariate polynomials and truncated power series.

A :class:`Series` is a finite map from exponent tuples to raw field values
together with a truncation degree.  ``trunc=None`` marks an exact
polynomial; an integer ``D`` means every term of (weighted) degree <= D is
correct and nothing above it is known.

Each :class:`PolyRing` variable carries a nonnegative integer weight used
for degrees, orders and truncation.  Ordinary variables have weight 1.
Parameter variables (the ``t`` of a family) are given weight 0 so that a
series like ``sum_k x^k / t^(k-1)`` cleared of denominators is truncated in
``x`` only while staying polynomial in ``t``.
"""
import math
import re
from fractions import Fraction
from operator import add as _add

from gmpy2 import mpq

from .errors import (DivisionByZero, IllegalSubstitution, ParseError,
                     RingMismatch, SingularMatrix)
from .field import QQ, FieldElement, NumberField, format_rational, to_rational


class AtLeast:
    """Order of a series with no visible terms: ``ord >= bound``."""

    __slots__ = ("bound",)

    def __init__(self, bound):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.bound == self.bound

    def __hash__(self):
        return hash(("AtLeast", self.bound))

    def __repr__(self):
        return "Infinite" if self.bound == math.inf else f"AtLeast({self.bound})"


INFINITE = AtLeast(math.inf)


def _lower(order):
    """Lower bound (number) of an order value."""
    return order.bound if isinstance(order, AtLeast) else order


def _tmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PolyRing:
    """Ordered variable list over a number field, with per-variable weights."""

    __slots__ = ("names", "field", "weights", "index", "_key")

    def __init__(self, names, field=QQ, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if field.degree > 1 and field.generator in names:
            raise ValueError(f"variable name {field.generator!r} clashes with the field generator")
        self.names = names
        self.field = field
        self.weights = tuple(weights) if weights is not None else (1,) * len(names)
        if len(self.weights) != len(names) or any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative, one per variable")
        self.index = {n: i for i, n in enumerate(names)}
        self._key = (self.names, self.field, self.weights)

    @property
    def nvars(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PolyRing({list(self.names)}, weights={list(self.weights)})"

    def var_index(self, var):
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise IndexError(f"variable index {var} out of range")
            return var
        try:
            return self.index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r} in {self.names}") from None

    def wdeg(self, e):
        return sum(w * k for w, k in zip(self.weights, e))

    def unit_vector(self, var, k=1):
        i = self.var_index(var)
        return tuple(k if j == i else 0 for j in range(len(self.names)))

    def zero(self, trunc=None):
        return Series(self, {}, trunc)

    def one(self):
        return Series(self, {(0,) * len(self.names): self.field.one})

    def const(self, c, trunc=None):
        return Series(self, {(0,) * len(self.names): self.field.coerce(c)}, trunc)

    def gen(self, var):
        return Series(self, {self.unit_vector(var): self.field.one})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, e, c=1):
        return Series(self, {tuple(e): self.field.coerce(c)})

    def parse(self, text, trunc=None):
        s = parse_expr(text, self)
        return s.truncate(trunc) if trunc is not None else s

    def with_weights(self, weights):
        return PolyRing(self.names, self.field, weights)

    def with_field(self, field):
        return PolyRing(self.names, field, self.weights)

    def to_json(self):
        out = {"vars": list(self.names)}
        if any(w != 1 for w in self.weights):
            out["weights"] = list(self.weights)
        return out


def _mul_terms(a, b, ring, limit):
    """Product of two term maps, dropping weighted degree > limit."""
    field = ring.field
    mul, fadd = field.mul, field.add
    out = {}
    if limit is None:
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(_add, ea, eb))
                c = mul(ca, cb)
                prev = out.get(e)
                out[e] = c if prev is None else fadd(prev, c)
    else:
        wd = ring.wdeg
        bl = sorted(((wd(eb), eb, cb) for eb, cb in b.items()), key=lambda t: t[0])
        for ea, ca in a.items():
            da = wd(ea)
            if da > limit:
                continue
            room = limit - da
            for db, eb, cb in bl:
                if db > room:
                    break
                e = tuple(map(_add, ea, eb))
                c = mul(ca, cb)
                prev = out.get(e)
                out[e] = c if prev is None else fadd(prev, c)
    isz = field.is_zero
    return {e: c for e, c in out.items() if not isz(c)}


class Series:
    """Immutable sparse series; see the module docstring for truncation."""

    __slots__ = ("ring", "terms", "trunc", "_hash")

    def __init__(self, ring, terms=None, trunc=None):
        field = ring.field
        clean = {}
        if terms:
            isz = field.is_zero
            if trunc is None:
                for e, c in terms.items():
                    if not isz(c):
                        clean[e] = c
            else:
                wd = ring.wdeg
                for e, c in terms.items():
                    if not isz(c) and wd(e) <= trunc:
                        clean[e] = c
        self.ring = ring
        self.terms = clean
        self.trunc = trunc
        self._hash = None

    # -- basic queries -------------------------------------------------------
    @property
    def is_exact(self):
        return self.trunc is None

    @property
    def field(self):
        return self.ring.field

    def is_zero(self):
        """True when no term is visible (zero modulo the truncation)."""
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, e):
        if isinstance(e, dict):
            e = tuple(e.get(n, 0) for n in self.ring.names)
        return FieldElement(self.field, self.terms.get(tuple(e), self.field.zero))

    def constant_term(self):
        return self.coeff((0,) * self.ring.nvars)

    def ord(self):
        """Minimal weighted degree of a visible term."""
        if self.terms:
            return min(self.ring.wdeg(e) for e in self.terms)
        if self.trunc is None:
            return INFINITE
        return AtLeast(self.trunc + 1)

    def degree(self):
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        i = self.ring.var_index(var)
        return max((e[i] for e in self.terms), default=-1)

    def valuation_in(self, var):
        i = self.ring.var_index(var)
        return min((e[i] for e in self.terms), default=0)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def is_unit(self):
        return not self.field.is_zero(self.terms.get((0,) * self.ring.nvars, self.field.zero))

    def sorted_terms(self):
        """Terms in canonical graded-lexicographic order."""
        wd = self.ring.wdeg
        return sorted(self.terms.items(), key=lambda t: (wd(t[0]), tuple(-k for k in t[0])))

    # -- equality ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (int, str, FieldElement, Fraction, type(mpq(0)))):
                other = self.ring.const(other)
            else:
                return NotImplemented
        return (self.ring == other.ring and self.trunc == other.trunc
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.trunc, frozenset(self.terms.items())))
        return self._hash

    def equal_mod(self, other, degree):
        """Term-exact agreement on all monomials of weighted degree <= degree."""
        return (self - other).truncate(degree).is_zero()

    def agreement_degree(self, other):
        """Largest D such that self and other agree through degree D (None if identical)."""
        diff = (self - other)
        if diff.terms:
            return diff.ord() - 1
        return diff.trunc

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except RingMismatch:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        field = self.field
        out = dict(self.terms)
        fadd = field.add
        for e, c in other.terms.items():
            prev = out.get(e)
            out[e] = c if prev is None else fadd(prev, c)
        return Series(self.ring, out, _tmin(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Series(self.ring, {e: neg(c) for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except RingMismatch:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            try:
                c = self.field.coerce(other)
            except (TypeError, ValueError, ParseError):
                return NotImplemented
            return self.scale(c)
        other = self._coerce(other)
        trunc = _tmin(self.trunc, other.trunc)
        return Series(self.ring, _mul_terms(self.terms, other.terms, self.ring, trunc), trunc)

    __rmul__ = __mul__

    def mul_trunc(self, other, degree):
        """Product truncated at ``degree`` (in addition to the inputs' own truncation)."""
        trunc = _tmin(_tmin(self.trunc, other.trunc), degree)
        return Series(self.ring, _mul_terms(self.terms, other.terms, self.ring, trunc), trunc)

    def scale(self, c):
        c = self.field.coerce(c)
        mul = self.field.mul
        return Series(self.ring, {e: mul(v, c) for e, v in self.terms.items()}, self.trunc)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return NotImplemented
        c = self.field.coerce(other)
        return self.scale(self.field.inv(c))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def pow_trunc(self, k, degree):
        out = self.ring.one().truncate(degree)
        base = self.truncate(degree)
        while k:
            if k & 1:
                out = out.mul_trunc(base, degree)
            k >>= 1
            if k:
                base = base.mul_trunc(base, degree)
        return out

    def truncate(self, degree):
        """Drop terms above ``degree`` and record the truncation."""
        if degree is None:
            return self
        return Series(self.ring, self.terms, _tmin(self.trunc, degree))

    def as_exact(self):
        """Reinterpret the visible terms as an exact polynomial."""
        return Series(self.ring, self.terms, None)

    def homogeneous_part(self, degree):
        wd = self.ring.wdeg
        return Series(self.ring, {e: c for e, c in self.terms.items() if wd(e) == degree})

    # -- calculus and substitution -------------------------------------------
    def partial_derivative(self, var):
        i = self.ring.var_index(var)
        scale = self.field.scale
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = scale(c, mpq(k))
        trunc = None if self.trunc is None else self.trunc - self.ring.weights[i]
        return Series(self.ring, out, trunc)

    def evaluate(self, point):
        """Value at a point assigning every variable (exact input required).

        A truncated series may only be evaluated where every positive-weight
        variable is zero, in which case only its known low part matters.
        """
        ring = self.ring
        field = self.field
        vals = []
        for n, w in zip(ring.names, ring.weights):
            if n not in point:
                raise KeyError(f"point does not assign {n!r}")
            v = field.coerce(point[n])
            if self.trunc is not None and w > 0 and not field.is_zero(v):
                raise ValueError("cannot evaluate a truncated series away from the origin")
            vals.append(v)
        acc = field.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = field.mul(term, field.pow(v, k))
            acc = field.add(acc, term)
        return FieldElement(field, acc)

    def compose(self, subst, ring=None):
        """Substitute series for variables.

        ``subst`` maps variable names of ``self.ring`` to Series (or scalars)
        of the target ring; unmapped variables must exist in the target ring
        and are kept.  The result is truncated at the largest degree that all
        contributing terms determine: the minimum of the substituted series'
        truncations and, when ``self`` is truncated at D, ``ceil(rho*(D+1))-1``
        where ``rho`` is the least ratio ord(image)/weight over positive-weight
        variables.
        """
        target = ring if ring is not None else self.ring
        src = self.ring
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        images = []
        for i, name in enumerate(src.names):
            if name in subst:
                img = subst[name]
                img = img if isinstance(img, Series) else target.const(img)
                if img.ring != target:
                    raise RingMismatch(f"substitution for {name!r} lives in {img.ring}")
            elif name in target.index:
                if target.weights[target.index[name]] != src.weights[i] and i in used:
                    raise RingMismatch(f"weight of {name!r} differs in the target ring")
                img = target.gen(name)
            elif i in used:
                raise RingMismatch(f"variable {name!r} missing from the target ring")
            else:
                img = target.zero()
            images.append(img)

        trunc = None
        for i in used:
            trunc = _tmin(trunc, images[i].trunc)
        if self.trunc is not None:
            rho = None
            for i, (img, w) in enumerate(zip(images, src.weights)):
                if w == 0:
                    continue
                ratio = Fraction(_lower(img.ord())) / w if _lower(img.ord()) != math.inf else None
                if ratio is not None and (rho is None or ratio < rho):
                    rho = ratio
            if rho is not None:
                if rho == 0:
                    raise IllegalSubstitution(
                        "substituting a series with nonzero constant term into a truncated series")
                bound = math.ceil(rho * (self.trunc + 1)) - 1
                trunc = _tmin(trunc, bound)

        field = target.field
        nv = target.nvars
        powers = {}

        def power(i, k):
            cache = powers.setdefault(i, [target.one().truncate(trunc)])
            while len(cache) <= k:
                cache.append(cache[-1].mul_trunc(images[i], trunc) if trunc is not None
                             else cache[-1] * images[i])
            return cache[k]

        acc = {}
        promote = src.field != field
        fadd = field.add
        for e, c in self.terms.items():
            if promote:
                c = field.coerce(FieldElement(src.field, c))
            term = {(0,) * nv: c}
            for i, k in enumerate(e):
                if k:
                    term = _mul_terms(term, power(i, k).terms, target, trunc)
                    if not term:
                        break
            for te, tc in term.items():
                prev = acc.get(te)
                acc[te] = tc if prev is None else fadd(prev, tc)
        return Series(target, acc, trunc)

    def linear_change(self, matrix, names=None):
        """Substitute x_a -> sum_b M[a][b] x_b over ``names`` (default: all variables)."""
        ring = self.ring
        names = list(ring.names) if names is None else list(names)
        n = len(names)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(f"matrix must be {n}x{n}")
        if rational_det(matrix) == 0:
            raise SingularMatrix("coordinate change matrix is singular")
        ws = {ring.weights[ring.var_index(v)] for v in names}
        if len(ws) > 1:
            raise ValueError("linear change mixes variables of different weights")
        gens = [ring.gen(v) for v in names]
        subst = {}
        for a, v in enumerate(names):
            img = ring.zero()
            for b, m in enumerate(matrix[a]):
                if m:
                    img = img + gens[b].scale(to_rational(m))
            subst[v] = img
        return self.compose(subst)

    def inverse(self, trunc=None):
        """Multiplicative inverse of a unit (constant part a nonzero scalar)."""
        ring, field = self.ring, self.field
        zero_e = (0,) * ring.nvars
        wd = ring.wdeg
        low = {e: c for e, c in self.terms.items() if wd(e) == 0}
        if set(low) != {zero_e}:
            raise DivisionByZero("series is not a unit")
        c0inv = field.inv(low[zero_e])
        if len(self.terms) == 1 and self.trunc is None:
            return Series(ring, {zero_e: c0inv})
        D = _tmin(self.trunc, trunc)
        if D is None:
            raise ValueError("inverse of a non-constant polynomial needs a truncation degree")
        z = Series(ring, {zero_e: c0inv}, 0)
        prec = 0
        two = ring.const(2)
        while prec < D:
            prec = min(2 * prec + 1, D)
            fz = self.mul_trunc(z.truncate(prec).as_exact(), prec)
            z = z.as_exact().mul_trunc(two - fz, prec)
        return z

    def restrict_zero(self, names):
        """Set the given variables to zero."""
        idx = [self.ring.var_index(n) for n in names]
        return Series(self.ring, {e: c for e, c in self.terms.items()
                                  if all(e[i] == 0 for i in idx)}, self.trunc)

    def as_univariate(self, var):
        """Map k -> coefficient of var^k (as a series free of ``var``)."""
        i = self.ring.var_index(var)
        parts = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        w = self.ring.weights[i]
        out = {}
        for k, t in sorted(parts.items()):
            tr = None if self.trunc is None else self.trunc - w * k
            out[k] = Series(self.ring, t, tr)
        return out

    def shift(self, var, k):
        """Multiply by var^k (k may be negative when exactly divisible)."""
        i = self.ring.var_index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] + k < 0:
                raise ValueError(f"{var}^{-k} does not divide the series")
            out[e[:i] + (e[i] + k,) + e[i + 1:]] = c
        tr = None if self.trunc is None else self.trunc + k * self.ring.weights[i]
        return Series(self.ring, out, tr)

    def change_ring(self, ring):
        """Re-express in another ring by variable name (field promotion from Q allowed)."""
        src = self.ring
        pos = []
        for i, n in enumerate(src.names):
            pos.append(ring.index.get(n))
        promote = src.field != ring.field
        if promote and src.field.degree != 1:
            raise RingMismatch("can only promote rational coefficients")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingMismatch(f"variable {src.names[i]!r} missing from target ring")
                    ne[pos[i]] = k
            out[tuple(ne)] = ring.field.from_rational(c) if promote else c
        return Series(ring, out, self.trunc)

    # -- text and JSON -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            wd = self.ring.wdeg
            for e, c in sorted(self.terms.items(),
                               key=lambda t: (-wd(t[0]), tuple(-k for k in t[0]))):
                mono = "*".join(n if k == 1 else f"{n}^{k}"
                                for n, k in zip(self.ring.names, e) if k)
                cs = str(FieldElement(self.field, c))
                if self.field.degree > 1 and ("+" in cs or "-" in cs[1:]):
                    cs = f"({cs})"
                if not mono:
                    parts.append(cs)
                elif cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
            body = " + ".join(parts).replace("+ -", "- ")
        if self.trunc is not None:
            body += f" + O({self.trunc + 1})"
        return body

    def __repr__(self):
        return f"Series({str(self)!r})"

    def to_json(self):
        fmt = self.field.format
        return {"trunc": "exact" if self.trunc is None else self.trunc,
                "terms": [{"e": list(e), "c": fmt(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj, ring):
        try:
            trunc = obj["trunc"]
            terms = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad series JSON: {obj!r}") from exc
        if trunc == "exact":
            trunc = None
        elif not isinstance(trunc, int) or isinstance(trunc, bool):
            raise ParseError(f"bad truncation {trunc!r}")
        out = {}
        for t in terms:
            try:
                e = tuple(int(k) for k in t["e"])
                c = ring.field.parse_value(t["c"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad term {t!r}") from exc
            if len(e) != ring.nvars or any(k < 0 for k in e):
                raise ParseError(f"exponent {list(e)} does not match ring {list(ring.names)}")
            if e in out:
                raise ParseError(f"duplicate exponent {list(e)}")
            out[e] = c
        return cls(ring, out, trunc)


def rational_det(matrix):
    """Determinant of a small rational matrix by Gaussian elimination."""
    m = [[Fraction(to_rational(x).numerator, to_rational(x).denominator) for x in row]
         for row in matrix]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
    return det


# -- expression parser -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, what):
        raise ParseError(f"{what} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        out = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division by a non-constant or zero")
                acc = acc * rhs.inverse()
        return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind == "op" and val == "(":
                kind, val = self.take()
                if self.take() != ("op", ")"):
                    self.fail("bad exponent")
            if kind != "num":
                self.fail("exponent must be a nonnegative integer literal")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            return ring.const(val)
        if kind == "name":
            if val in ring.index:
                return ring.gen(val)
            if ring.field.degree > 1 and val == ring.field.generator:
                return ring.const(ring.field.gen())
            self.fail(f"unknown variable {val!r}")
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail("unexpected " + ("end of input" if kind is None else repr(val)))


def parse_expr(text, ring):
    """Parse an expression with + - * / ^ (or **), literals, variables and parentheses."""
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {text!r}")
    try:
        return _Parser(text, ring).parse()
    except DivisionByZero as exc:
        raise ParseError(str(exc)) from exc


def series_from_obj(obj, ring):
    """Accept either expression text or Series JSON."""
    if isinstance(obj, str):
        return parse_expr(obj, ring)
    if isinstance(obj, dict):
        return Series.from_json(obj, ring)
    raise ParseError(f"expected expression or series JSON, got {obj!r}")


def series_arith(op, f, g):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def ring_from_json(obj):
    try:
        names = obj["vars"]
    except (KeyError, TypeError) as exc:
        raise ParseError("missing 'vars'") from exc
    field = NumberField.from_json(obj["field"]) if obj.get("field") else QQ
    return PolyRing(names, field, obj.get("weights"))
