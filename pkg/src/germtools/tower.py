"""Discriminant towers for set germs and function germs.

Set mode starts from defining polynomials ``g_1..g_k``: a shear makes each
one regular in ``x_n`` of order ``mult_0(g_s)``, the prepared factors
multiply to ``f_n``, and each level below takes the first non-vanishing
generalized discriminant of the previous ``f``, shears among the lower
variables and prepares again.

Function mode starts from ``g_0 = g`` and ``g_1..g_p`` in ``x_2..x_n`` and
works with ``prod (x_1 - g_m)``.  The variable ``x_1`` is never moved, and
at every level the largest power ``x_1^q`` dividing the discriminant is
split off before preparation.

Each stage stores its data in the coordinates produced by its own change;
``change`` maps the previous level's coordinates to the new ones.
"""
from dataclasses import dataclass, field as dc_field

from .errors import (GermError, ParseError, SearchExhausted, TransversalityFailure,
                     TruncationBudgetExhausted)
from .field import QQ, NumberField
from .gendisc import all_gen_discs, first_nonvanishing
from .series import PolyRing, Series, series_from_obj
from .weierstrass import (MonicPoly, WeierstrassPoly, make_transverse, multiplicity,
                          prepare, regularity_order)


def _identity(n):
    return [[1 if a == b else 0 for b in range(n)] for a in range(n)]


def _min_trunc(*ts):
    ts = [t for t in ts if t is not None]
    return min(ts) if ts else None


@dataclass(frozen=True)
class InputGerm:
    kind: str
    ring: PolyRing
    defining: tuple
    D: int

    def __post_init__(self):
        if self.kind not in ("set", "function"):
            raise ValueError(f"unknown germ kind {self.kind!r}")
        if not self.defining:
            raise ValueError("a germ needs at least one defining series")
        if self.D < 1:
            raise ValueError("truncation budget must be >= 1")
        for g in self.defining:
            if not g.is_exact:
                raise ValueError("defining polynomials must be exact")
            if g.is_unit():
                raise ValueError(f"{g} does not vanish at the origin")
        if self.kind == "function" and any(g.degree_in(0) for g in self.defining):
            raise ValueError(f"function germs may not involve {self.ring.names[0]}")

    @property
    def n(self):
        return self.ring.nvars

    @classmethod
    def from_json(cls, obj, D=None):
        try:
            kind = obj["kind"]
            names = obj["vars"]
            defining = obj["defining"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"germ JSON needs kind, vars and defining: {exc}") from exc
        fld = NumberField.from_json(obj["field"]) if obj.get("field") else QQ
        ring = PolyRing(names, fld)
        polys = tuple(series_from_obj(g, ring) for g in defining)
        D = D if D is not None else obj.get("trunc", 12)
        try:
            return cls(kind, ring, polys, int(D))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def to_json(self):
        out = {"kind": self.kind, "vars": list(self.ring.names),
               "defining": [g.to_json() for g in self.defining], "trunc": self.D}
        if self.ring.field != QQ:
            out["field"] = self.ring.field.to_json()
        return out


@dataclass(frozen=True)
class TowerStage:
    i: int
    p: int
    j: object            # index of the discriminant that produced this stage (None on top)
    q: int
    unit: Series
    poly: MonicPoly
    change: list
    valid_to: int
    vanished_below: tuple = ()
    certification: object = "exact"

    def to_json(self):
        cert = self.certification
        return {"i": self.i, "p": self.p, "j": self.j, "q": self.q,
                "unit": self.unit.to_json(),
                "coeffs": [c.to_json() for c in self.poly.coeffs],
                "change": [list(r) for r in self.change], "valid_to": self.valid_to,
                "vanished_below": list(self.vanished_below),
                "certification": cert if cert == "exact" else {"mod_degree": cert}}

    @classmethod
    def from_json(cls, obj, ring):
        try:
            i = int(obj["i"])
            var = ring.names[i - 1]
            coeffs = [Series.from_json(c, ring) for c in obj["coeffs"]]
            cert = obj.get("certification", "exact")
            if isinstance(cert, dict):
                cert = int(cert["mod_degree"])
            return cls(i, int(obj["p"]), obj["j"], int(obj["q"]),
                       Series.from_json(obj["unit"], ring),
                       MonicPoly(ring, var, coeffs),
                       [[int(x) for x in r] for r in obj["change"]],
                       int(obj["valid_to"]), tuple(obj.get("vanished_below", ())), cert)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"bad tower stage: {exc}") from exc


@dataclass
class Tower:
    mode: str
    germ: InputGerm
    stages: list = dc_field(default_factory=list)
    terminal: dict = None
    transversality: dict = dc_field(default_factory=dict)
    b: list = None

    @property
    def ring(self):
        return self.germ.ring

    def stage(self, i):
        for s in self.stages:
            if s.i == i:
                return s
        raise KeyError(i)

    def to_json(self):
        out = {"mode": self.mode, "germ": self.germ.to_json(),
               "vars": list(self.ring.names),
               "stages": [s.to_json() for s in self.stages],
               "terminal": None if self.terminal is None else {
                   "level": self.terminal["level"], "j": self.terminal["j"],
                   "delta": self.terminal["delta"].to_json()},
               "transversality": self.transversality}
        if self.b is not None:
            out["b"] = [[c.to_json() for c in row] for row in self.b]
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            germ = InputGerm.from_json(obj["germ"])
            ring = germ.ring
            stages = [TowerStage.from_json(s, ring) for s in obj["stages"]]
            term = obj.get("terminal")
            if term is not None:
                term = {"level": int(term["level"]), "j": int(term["j"]),
                        "delta": Series.from_json(term["delta"], ring)}
            b = obj.get("b")
            if b is not None:
                b = [[Series.from_json(c, ring) for c in row] for row in b]
            return cls(obj["mode"], germ, stages, term, obj.get("transversality", {}), b)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad tower JSON: {exc}") from exc


def split_b(g, ring):
    """Write g = sum_{k>=2} x_k b_k, each monomial going to its lowest-index variable."""
    n = ring.nvars
    parts = [dict() for _ in range(n - 1)]
    for e, c in g.terms.items():
        k = next(k for k in range(1, n) if e[k])
        parts[k - 1][e[:k] + (e[k] - 1,) + e[k + 1:]] = c
    return [Series(ring, t) for t in parts]


def _prepare_or_fail(F, var, D, level, tower):
    try:
        return prepare(F, var, D)
    except TruncationBudgetExhausted as exc:
        raise TruncationBudgetExhausted(
            f"level {level}: {exc.detail}", level=level, partial=tower) from None


def _descend(tower, f, V, bound):
    """Build the stages below the top one, starting from the monic f at level n."""
    ring = tower.ring
    function = tower.mode == "function"
    n = ring.nvars
    level = n
    x1 = ring.names[0]
    while True:
        rec = first_nonvanishing(f)
        delta = rec.delta
        i = level - 1
        if i == 0:
            tower.terminal = {"level": 0, "j": rec.j, "delta": delta}
            return tower
        q = 0
        if function:
            q = delta.valuation_in(x1)
            delta = delta.shift(x1, -q)
        D = _min_trunc(V, delta.trunc)
        if delta.is_unit():
            tower.stages.append(TowerStage(
                i, 0, rec.j, q, delta, WeierstrassPoly(ring, ring.names[i - 1], []),
                _identity(n), D, rec.vanished_below, rec.certification))
            tower.terminal = {"level": i, "j": rec.j, "delta": delta}
            return tower
        var = ring.names[i - 1]
        lower = ring.names[1:i - 1] if function else ring.names[:i - 1]
        try:
            shear = make_transverse([delta], var, frozen=(x1,) if function else (),
                                    bound=bound, among=lower)
        except SearchExhausted as exc:
            raise TransversalityFailure(f"level {i}: {exc.detail}") from None
        moved = delta.linear_change(shear.matrix)
        prep = _prepare_or_fail(moved, var, D, i, tower)
        tower.stages.append(TowerStage(
            i, prep.poly.degree, rec.j, q, prep.unit, prep.poly, shear.matrix,
            prep.valid_to, rec.vanished_below, rec.certification))
        f, V, level = prep.poly, prep.valid_to, i


def build_set_tower(germ, bound=16):
    if germ.kind != "set":
        raise ValueError("build_set_tower needs a set germ")
    ring = germ.ring
    n = ring.nvars
    xn = ring.names[-1]
    tower = Tower("set", germ)
    G = list(germ.defining)
    try:
        shear = make_transverse(G, xn, bound=bound)
    except SearchExhausted as exc:
        raise TransversalityFailure(str(exc.detail)) from None
    moved = [g.linear_change(shear.matrix) for g in G]
    mults = [multiplicity(g) for g in G]
    orders = [regularity_order(g, xn) for g in moved]
    ok = all(o == m for o, m in zip(orders, mults))
    tower.transversality = {"mults": mults, "orders": orders, "transverse": ok}
    if not ok:
        raise TransversalityFailure(f"orders {orders} differ from multiplicities {mults}")
    unit, poly, V = None, None, None
    for g in moved:
        prep = _prepare_or_fail(g, xn, germ.D, n, tower)
        unit = prep.unit if unit is None else unit * prep.unit
        poly = prep.poly if poly is None else poly * prep.poly
        V = _min_trunc(V, prep.valid_to)
    poly = WeierstrassPoly(ring, xn, poly.coeffs)
    tower.stages.append(TowerStage(n, poly.degree, None, 0, unit, poly, shear.matrix, V))
    if poly.degree == 0:
        tower.terminal = {"level": n, "j": None, "delta": unit}
        return tower
    return _descend(tower, poly, V, bound)


def function_product(germ):
    ring = germ.ring
    x1 = ring.gen(ring.names[0])
    F = ring.one()
    for g in germ.defining:
        F = F * (x1 - g)
    return F


def build_function_tower(germ, bound=16):
    if germ.kind != "function":
        raise ValueError("build_function_tower needs a function germ")
    ring = germ.ring
    n = ring.nvars
    if n < 2:
        raise ValueError("function towers need at least two variables")
    xn, x1 = ring.names[-1], ring.names[0]
    tower = Tower("function", germ)
    tower.b = [split_b(g, ring) for g in germ.defining]
    F = function_product(germ)
    try:
        shear = make_transverse([F], xn, frozen=(x1,), bound=bound)
    except SearchExhausted as exc:
        raise TransversalityFailure(str(exc.detail)) from None
    moved = F.linear_change(shear.matrix)
    order = regularity_order(moved, xn)
    tower.transversality = {"mult": multiplicity(F), "order": order,
                            "target": shear.orders[0]}
    prep = _prepare_or_fail(moved, xn, germ.D, n, tower)
    tower.stages.append(TowerStage(n, prep.poly.degree, None, 0, prep.unit, prep.poly,
                                   shear.matrix, prep.valid_to))
    return _descend(tower, prep.poly, prep.valid_to, bound)


def build_tower(germ, bound=16):
    if germ.kind == "set":
        return build_set_tower(germ, bound)
    return build_function_tower(germ, bound)


def _agree(lhs, rhs):
    """Degree of exact agreement; "exact" when both sides are identical polynomials."""
    d = lhs.agreement_degree(rhs)
    return "exact" if d is None else d


def _covers(agree, valid_to):
    return agree == "exact" or agree >= valid_to


def verify_tower(tower, germ=None):
    """Recompute every stage identity and the vanishing ledger; never raises on mismatch."""
    germ = germ or tower.germ
    ring = germ.ring
    x1 = ring.names[0]
    report = {"stages": [], "ok": True}

    def add(entry):
        report["stages"].append(entry)
        if not entry["ok"]:
            report["ok"] = False

    stages = sorted(tower.stages, key=lambda s: -s.i)
    if not stages or stages[0].i != ring.nvars:
        report["ok"] = False
        report["error"] = "tower has no top stage"
        return report
    top = stages[0]
    try:
        if tower.mode == "set":
            target = ring.one()
            for g in germ.defining:
                target = target * g.linear_change(top.change)
        else:
            target = function_product(germ).linear_change(top.change)
        agree = _agree(top.unit * top.poly.to_series(), target)
        add({"i": top.i, "agree_to": agree, "valid_to": top.valid_to,
             "ok": _covers(agree, top.valid_to)})
    except GermError as exc:
        add({"i": top.i, "ok": False, "error": f"{exc.kind}: {exc.detail}"})
    prev = top
    for st in stages[1:]:
        entry = {"i": st.i, "valid_to": st.valid_to}
        try:
            discs = all_gen_discs(prev.poly)
            j = st.j
            entry["vanishing_ok"] = all(discs[k - 1].is_zero() for k in range(1, j))
            delta = discs[j - 1].linear_change(st.change)
            lhs = (st.unit * st.poly.to_series()).shift(x1, st.q)
            agree = _agree(lhs, delta)
            entry["agree_to"] = agree
            entry["ok"] = entry["vanishing_ok"] and _covers(agree, st.valid_to)
        except (GermError, IndexError, TypeError) as exc:
            entry.update(ok=False, error=f"{type(exc).__name__}: {exc}")
        add(entry)
        prev = st
    term = tower.terminal
    if term is not None and term["j"] is not None:
        entry = {"terminal": term["level"]}
        try:
            src = next(s for s in stages if s.i == term["level"] + 1)
            discs = all_gen_discs(src.poly)
            j = term["j"]
            d = discs[j - 1]
            if tower.mode == "function" and term["level"] > 0:
                d = d.shift(x1, -d.valuation_in(x1))
            entry["vanishing_ok"] = all(discs[k - 1].is_zero() for k in range(1, j))
            entry["ok"] = entry["vanishing_ok"] and d == term["delta"] and (
                term["level"] == 0 or d.is_unit())
        except (GermError, IndexError, ValueError, StopIteration) as exc:
            entry.update(ok=False, error=f"{type(exc).__name__}: {exc}")
        add(entry)
    return report
