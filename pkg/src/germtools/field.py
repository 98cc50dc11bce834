"""Exact scalars: the rationals and simple extensions Q[v]/(m(v)).

Scalars are stored in a *raw* form owned by the field: a ``gmpy2.mpq`` when
the degree is 1, otherwise a tuple of ``d`` mpq coordinates in the power
basis 1, v, ..., v^(d-1).  Series kernels work on raw values directly;
:class:`FieldElement` is the public wrapper.
"""
from fractions import Fraction
from itertools import product

from gmpy2 import mpq

from .errors import DivisionByZero, NonInvertible, ParseError

ZERO = mpq(0)
ONE = mpq(1)


def to_rational(x):
    """Coerce ``int``, ``str`` ("p/q"), ``Fraction`` or ``mpq`` to mpq."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, type(ZERO))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            return mpq(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(q):
    return str(mpq(q))


# -- dense univariate helpers over Q (lists low -> high) ---------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a = _trim(a)
    return q, a


def upoly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
        t0, t1 = t1, _sub(t0, _mul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    return ([c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0])


def _mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


def upoly_derivative(a):
    return _trim([i * c for i, c in enumerate(a)][1:])


class NumberField:
    """K = Q[v]/(m(v)) with ``m`` monic and squarefree.

    ``min_poly`` lists the coefficients c_0, ..., c_d (low to high).  A
    degree-one modulus gives the rationals; ``NumberField.rationals()`` is
    the canonical choice ``m = v``.
    """

    __slots__ = ("generator", "min_poly", "degree")

    def __init__(self, min_poly, generator="v"):
        coeffs = _trim(to_rational(c) for c in min_poly)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        g, _, _ = upoly_xgcd(coeffs, upoly_derivative(coeffs))
        if len(g) > 1:
            raise ValueError("minimal polynomial must be squarefree")
        self.generator = generator
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1

    @classmethod
    def rationals(cls):
        return QQ

    @property
    def is_rational(self):
        return self.degree == 1

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.min_poly == other.min_poly
                and self.generator == other.generator)

    def __hash__(self):
        return hash((self.generator, self.min_poly))

    def __repr__(self):
        return f"NumberField({[format_rational(c) for c in self.min_poly]}, {self.generator!r})"

    # -- raw arithmetic ------------------------------------------------------
    @property
    def zero(self):
        return ZERO if self.degree == 1 else (ZERO,) * self.degree

    @property
    def one(self):
        return ONE if self.degree == 1 else (ONE,) + (ZERO,) * (self.degree - 1)

    def from_rational(self, q):
        q = to_rational(q)
        if self.degree == 1:
            return q
        return (q,) + (ZERO,) * (self.degree - 1)

    def from_coords(self, coords):
        coords = [to_rational(c) for c in coords]
        if len(coords) > self.degree:
            coords = _poly_mod(coords, self.min_poly)
        coords = coords + [ZERO] * (self.degree - len(coords))
        return coords[0] if self.degree == 1 else tuple(coords)

    def coords(self, a):
        return (a,) if self.degree == 1 else a

    def is_zero(self, a):
        if self.degree == 1:
            return a == 0
        return not any(a)

    def add(self, a, b):
        if self.degree == 1:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        if self.degree == 1:
            return a - b
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        if self.degree == 1:
            return -a
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.degree == 1:
            return a * b
        d = self.degree
        prod = [ZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        m = self.min_poly
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * m[i]
        return tuple(prod[:d])

    def scale(self, a, q):
        if self.degree == 1:
            return a * q
        return tuple(x * q for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("division by zero in " + repr(self))
        if self.degree == 1:
            return ONE / a
        g, s, _ = upoly_xgcd(list(a), list(self.min_poly))
        if len(g) != 1:
            raise NonInvertible(
                f"lift of {list(map(format_rational, a))} shares a factor with the modulus")
        return self.from_coords(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def coerce(self, x):
        """Raw value from an int/str/rational/FieldElement/raw value."""
        if isinstance(x, FieldElement):
            if x.field == self:
                return x.value
            if x.field.degree == 1:
                return self.from_rational(x.value)
            raise ValueError("field element belongs to a different field")
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise ValueError("wrong number of coordinates")
            if self.degree == 1:
                return to_rational(x[0])
            return tuple(to_rational(c) for c in x)
        if isinstance(x, list):
            return self.from_coords(x)
        return self.from_rational(x)

    def element(self, x):
        return FieldElement(self, self.coerce(x))

    def gen(self):
        if self.degree == 1:
            return FieldElement(self, -self.min_poly[0])
        return FieldElement(self, (ZERO, ONE) + (ZERO,) * (self.degree - 2))

    # -- serialization -------------------------------------------------------
    def format(self, a):
        if self.degree == 1:
            return format_rational(a)
        return [format_rational(c) for c in a]

    def parse_value(self, obj):
        if isinstance(obj, list):
            if len(obj) != self.degree:
                raise ParseError(f"expected {self.degree} coordinates, got {len(obj)}")
            return self.from_coords(obj)
        if isinstance(obj, (str, int)):
            return self.from_rational(obj)
        raise ParseError(f"bad scalar {obj!r}")

    def to_json(self):
        return {"generator": self.generator,
                "min_poly": [format_rational(c) for c in self.min_poly]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(obj["min_poly"], obj.get("generator", "v"))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad field specification: {obj!r}") from exc


def _poly_mod(coords, m):
    _, r = upoly_divmod(list(coords), list(m))
    return r


QQ = NumberField([0, 1], "v")


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coords(self):
        return self.field.coords(self.value)

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field != self.field:
                if y.field.degree == 1:
                    return self.field.from_rational(y.value)
                if self.field.degree == 1:
                    return NotImplemented
                raise ValueError("elements of different fields")
            return y.value
        try:
            return self.field.coerce(y)
        except (TypeError, ValueError, ParseError):
            return NotImplemented

    def _lift(self, y):
        # promote a rational element to the other operand's field
        if isinstance(y, FieldElement) and self.field.degree == 1 and y.field.degree > 1:
            return y.field.element(self.value)
        return None

    def _binop(self, y, op):
        lifted = self._lift(y)
        if lifted is not None:
            return field_arith(op, lifted, y, y.field)
        v = self._other(y)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, getattr(self.field, op)(self.value, v))

    def __add__(self, y):
        return self._binop(y, "add")

    def __sub__(self, y):
        return self._binop(y, "sub")

    def __mul__(self, y):
        return self._binop(y, "mul")

    def __truediv__(self, y):
        return self._binop(y, "div")

    def __radd__(self, y):
        return self + y

    def __rmul__(self, y):
        return self * y

    def __rsub__(self, y):
        return (-self) + y

    def __rtruediv__(self, y):
        return self.field.element(y) / self

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k):
        if k < 0:
            return FieldElement(self.field, self.field.pow(self.field.inv(self.value), -k))
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, y):
        if isinstance(y, FieldElement) and y.field != self.field:
            if self.field.degree == 1 and y.field.degree == 1:
                return self.value == y.value
            if self.field.degree == 1:
                return y == self
        v = self._other(y)
        if v is NotImplemented:
            return NotImplemented
        return v == self.value

    def __hash__(self):
        if self.field.degree == 1:
            return hash(self.value)
        if not any(self.value[1:]):
            return hash(self.value[0])
        return hash(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.format(self.value)!r})"

    def __str__(self):
        if self.field.degree == 1:
            return format_rational(self.value)
        g = self.field.generator
        parts = []
        for k, c in enumerate(self.value):
            if c:
                mono = "" if k == 0 else (g if k == 1 else f"{g}^{k}")
                parts.append(format_rational(c) if not mono else
                             (mono if c == 1 else f"{format_rational(c)}*{mono}"))
        return " + ".join(parts) if parts else "0"


_OPS = ("add", "sub", "mul", "div")


def field_arith(op, x, y, field):
    """Apply ``op`` in {add, sub, mul, div} to two elements of ``field``."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    x, y = field.coerce(x), field.coerce(y)
    return FieldElement(field, getattr(field, op)(x, y))


class Unsupported:
    """Returned (not raised) when a computation is outside the supported range."""

    __slots__ = ("reason",)

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"Unsupported({self.reason!r})"

    def __eq__(self, other):
        return isinstance(other, Unsupported)

    def __hash__(self):
        return hash(Unsupported)

    def __bool__(self):
        return False


def _eval_min_poly(field, a):
    acc = field.zero
    for c in reversed(field.min_poly):
        acc = field.add(field.mul(acc, a), field.from_rational(c))
    return acc


def conjugate_images(field, search_bound=2):
    """All roots of the modulus inside the field itself, generator first.

    Degrees 1 and 2 are always handled (the second root is -c_1 - v).  For
    higher degree a deterministic search over small integer combinations
    of powers of v is tried; failure returns :class:`Unsupported`.
    """
    d = field.degree
    v = field.gen().value
    if d == 1:
        return [field.gen()]
    if d == 2:
        other = field.sub(field.neg(field.from_rational(field.min_poly[1])), v)
        return [FieldElement(field, v), FieldElement(field, other)]
    roots = [v]
    powers = [field.pow(v, k) for k in range(d)]
    rng = range(-search_bound, search_bound + 1)
    for combo in product(rng, repeat=d):
        cand = field.zero
        for c, pw in zip(combo, powers):
            if c:
                cand = field.add(cand, field.scale(pw, mpq(c)))
        if cand in roots:
            continue
        if field.is_zero(_eval_min_poly(field, cand)):
            roots.append(cand)
            if len(roots) == d:
                return [FieldElement(field, r) for r in roots]
    return Unsupported(f"modulus of degree {d} does not split over the field "
                       "within the candidate search")
