"""Command line front end: JSON in, canonical JSON out.

Exit status is 0 on success and 1 on malformed input.  A mathematical
failure exits with 2 and writes ``{"error": {"kind", "detail"}}``; a
roundtrip whose canonical text differs from the file exits with 3.
"""
import argparse
import json
import sys

from gmpy2 import mpq

from . import descent, eisenstein, gendisc, tower, weierstrass
from .errors import GermError, ParseError
from .field import QQ, FieldElement, NumberField, Unsupported
from .series import PolyRing, Series, parse_expr, series_from_obj

COMMANDS = ("prepare", "disc", "tower-set", "tower-fn", "eisenstein", "descent",
            "branch", "verify", "roundtrip")


def dumps(obj):
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    if not text.strip():
        raise ParseError(f"{path} is empty")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return obj, text


def _field(obj, args):
    if args.field:
        try:
            spec = json.loads(args.field)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--field is not JSON: {exc.msg}") from exc
        return NumberField.from_json(spec)
    if obj.get("field"):
        return NumberField.from_json(obj["field"])
    return QQ


def _need(obj, *keys):
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"input is missing {', '.join(missing)}")


# -- commands -------------------------------------------------------------------

def cmd_prepare(obj, args):
    _need(obj, "vars", "F", "var")
    ring = PolyRing(obj["vars"], _field(obj, args))
    F = series_from_obj(obj["F"], ring)
    D = args.trunc if args.trunc is not None else obj.get("trunc", 12)
    res = weierstrass.prepare(F, obj["var"], int(D))
    out = res.to_json()
    out["exact"] = res.exact
    out["check"] = {"agree_to": _agree_json((res.unit * res.poly.to_series()).agreement_degree(F))}
    return out


def _agree_json(d):
    return "exact" if d is None else d


def cmd_disc(obj, args):
    _need(obj, "vars", "var")
    ring = PolyRing(obj["vars"], _field(obj, args))
    var = obj["var"]
    roots = None
    if "roots" in obj:
        roots = [ring.field.parse_value(r) for r in obj["roots"]]
        y = ring.gen(var)
        W = ring.one()
        for r in roots:
            W = W * (y - Series(ring, {(0,) * ring.nvars: r}))
    else:
        _need(obj, "W")
        W = series_from_obj(obj["W"], ring)
    try:
        W = weierstrass.MonicPoly.from_series(W, var)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    p = W.degree
    discs = gendisc.all_gen_discs(W) if p else []
    out = {"p": p, "newton_sums": [s.to_json() for s in gendisc.newton_sums(W, max(2 * p - 2, 0))],
           "discriminants": [{"j": j, "delta": d.to_json()} for j, d in enumerate(discs, 1)]}
    if p:
        out["first_nonvanishing"] = gendisc.first_nonvanishing(W).to_json()
    if roots is not None and p <= 6:
        out["oracle"] = [{"j": j, "value": ring.field.format(
            gendisc.oracle_disc([FieldElement(ring.field, r) for r in roots], j).value)}
            for j in range(1, p + 1)]
    return out


def _germ(obj, args, kind):
    obj = dict(obj)
    obj.setdefault("kind", kind)
    if obj["kind"] != kind:
        raise ParseError(f"expected a {kind} germ, got {obj['kind']!r}")
    if args.field:
        obj["field"] = json.loads(args.field)
    return tower.InputGerm.from_json(obj, D=args.trunc)


def cmd_tower(kind):
    def run(obj, args):
        germ = _germ(obj, args, kind)
        t = tower.build_tower(germ, bound=args.shear_bound)
        out = t.to_json()
        out["verify"] = tower.verify_tower(t)
        return out
    return run


def cmd_eisenstein(obj, args):
    bs = eisenstein.BranchSeed.from_json(obj)
    N = args.out_degree if args.out_degree is not None else int(obj.get("out_degree", 8))
    res = eisenstein.eisenstein_extract(bs, N)
    check = args.check_degree if args.check_degree is not None else N
    out = res.to_json()
    out["seed"] = bs.to_json()
    out["verify"] = eisenstein.verify_eisenstein(res, bs, min(check, N))
    return out


def cmd_descent(obj, args):
    _need(obj, "vars", "f")
    fld = _field(obj, args)
    ring = PolyRing(obj["vars"], fld)
    f = series_from_obj(obj["f"], ring)
    if "trunc" in obj or args.trunc is not None:
        f = f.truncate(args.trunc if args.trunc is not None else int(obj["trunc"]))
    res = descent.basis_decompose(f)
    verdict = descent.vandermonde_verify(res, fld)
    out = res.to_json()
    out["reassembles"] = res.reassemble() == f
    out["vandermonde_checked"] = verdict if not isinstance(verdict, Unsupported) else "unsupported"
    if isinstance(verdict, Unsupported):
        out["unsupported_reason"] = verdict.reason
    return out


def cmd_branch(obj, args):
    _need(obj, "P", "vars", "q", "v0")
    v = obj["vars"]
    tvars, var = list(v["t"]), v.get("v", "v")
    P = parse_expr(obj["P"], PolyRing(tvars + [var], QQ))
    fld = _field(obj, args)
    v0 = FieldElement(fld, fld.parse_value(obj["v0"]))
    q = {t: mpq(str(obj["q"][t])) for t in obj["q"]}
    N = args.trunc if args.trunc is not None else int(obj.get("N", 8))
    bp = descent.BranchPoint(P, var, q, v0, N)
    w = descent.branch_taylor(bp)
    out = {"series": w.to_json(), "shift_vars": list(w.ring.names),
           "residual_zero": descent.branch_residual(bp, w).is_zero(), "N": N}
    if "R" in obj:
        R = parse_expr(obj["R"], PolyRing(tvars, QQ))
        inv = descent.inverse_taylor(R, q, N)
        out["inverse"] = inv.to_json()
    return out


def cmd_verify(obj, args):
    kind = obj.get("kind")
    if kind in ("tower-set", "tower-fn"):
        t = tower.Tower.from_json(obj)
        return {"verified": kind, "report": tower.verify_tower(t)}
    if kind == "eisenstein":
        _need(obj, "input")
        bs = eisenstein.BranchSeed.from_json(obj["input"])
        res = eisenstein.EisensteinResult.from_json(obj, bs)
        check = args.check_degree if args.check_degree is not None else res.out_degree
        return {"verified": kind,
                "report": eisenstein.verify_eisenstein(res, bs, min(check, res.out_degree))}
    raise ParseError(f"verify understands tower and eisenstein outputs, got kind={kind!r}")


HANDLERS = {
    "prepare": cmd_prepare, "disc": cmd_disc,
    "tower-set": cmd_tower("set"), "tower-fn": cmd_tower("function"),
    "eisenstein": cmd_eisenstein, "descent": cmd_descent, "branch": cmd_branch,
    "verify": cmd_verify,
}


def run_job(command, obj, args):
    """Run one command on a parsed input object; returns the output object."""
    out = HANDLERS[command](obj, args)
    out["kind"] = command if command != "verify" else "verify"
    out["input"] = obj
    return out


def _reparse(obj):
    """Rebuild typed objects from an artifact output and serialize them again."""
    kind = obj.get("kind")
    out = dict(obj)
    if kind in ("tower-set", "tower-fn") and "stages" in obj:
        out.update(tower.Tower.from_json(obj).to_json())
    elif kind == "eisenstein" and "numerators" in obj:
        bs = eisenstein.BranchSeed.from_json(obj["input"])
        out.update(eisenstein.EisensteinResult.from_json(obj, bs).to_json())
    return out


def roundtrip(path):
    """Parse and re-serialize a file; True when that reproduces it byte for byte.

    Returns the verdict together with the canonical text.
    """
    obj, text = _load(path)
    canon = dumps(_reparse(obj))
    return canon == text, canon


def _parser():
    ap = argparse.ArgumentParser(prog="germtools", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", required=True)
        sp.add_argument("--output")
        sp.add_argument("--trunc", type=int)
        sp.add_argument("--shear-bound", type=int, default=16)
        sp.add_argument("--field")
        sp.add_argument("--check-degree", type=int)
        sp.add_argument("--out-degree", type=int)
    return ap


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = _parser().parse_args(argv)
    obj = None
    try:
        if args.trunc is not None and args.trunc < 1:
            raise ParseError("--trunc must be >= 1")
        if args.shear_bound < 1:
            raise ParseError("--shear-bound must be >= 1")
        if args.command == "roundtrip":
            same, canon = roundtrip(args.input)
            _emit(canon, args.output)
            sys.stderr.write("roundtrip: identical\n" if same else "roundtrip: differs\n")
            return 0 if same else 3
        obj, _ = _load(args.input)
        out = run_job(args.command, obj, args)
    except ParseError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except GermError as exc:
        _emit(dumps({"error": {"kind": exc.kind, "detail": exc.detail},
                     "kind": args.command, "input": obj}), args.output)
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"input error: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(dumps(out), args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
