"""Batch command line front end.

Every subcommand reads one JSON document (from --input or stdin),
writes one canonical JSON report (sorted keys, reduced fractions, no
whitespace) to --output or stdout, and says nothing else on the output
stream.  Exit code 0 is success, 1 is a property violation or an
explicit refusal, 2 is malformed input.  Diagnostics go to stderr.

Flags can also be set through environment variables with the
PADICLOCI_ prefix (PADICLOCI_PRECISION and so on); explicit flags win.
The --jobs flag is accepted for interface stability: scans and sample
loops are order-independent merges, so worker count never changes a
byte of output, and the implementation keeps the single-threaded
deterministic facade.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .complexes import (
    SIZE_LIMIT_MESSAGE,
    TwistedComplex,
    circle_complex,
    fitting_locus,
    scan_torsion,
    shape_check,
    specialize,
    surface_complex,
    torus_complex,
    wedge_complex,
)
from .conic import AnalyticLocus, WeightedAction, conic_certificate
from .cosets import (
    BinomialSystem,
    TorsionCoset,
    enumerate_torsion,
    sigma_stable,
    solve_binomial,
    torsion_certificate_pipeline,
)
from .padic import (
    PadicScalar,
    ResidueElement,
    check_prime,
    scalar_from_json,
    padic_exp,
    padic_log,
    teichmuller,
)
from .series import AnalyticSeries, newton_polygon, strassmann_count

ENV_PREFIX = "PADICLOCI_"
INPUT_FREE = {"demo"}


class SchemaError(Exception):
    """Input document fails the subcommand schema."""


def _need(doc, key, kinds=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError("missing field '%s'" % key)
    val = doc[key]
    if kinds is not None and not isinstance(val, kinds):
        raise SchemaError("field '%s' has the wrong type" % key)
    return val


def _int_field(doc, key, default=None):
    if default is not None and key not in doc:
        return default
    val = _need(doc, key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise SchemaError("field '%s' must be an integer" % key)
    return val


def _prime_field(doc):
    p = _int_field(doc, "p")
    try:
        check_prime(p)
    except ValueError as e:
        raise SchemaError(str(e))
    return p


def _fraction(x, what):
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise SchemaError("%s is not a fraction" % what)


def _precision(doc, args, default):
    if args.precision is not None:
        return args.precision
    if "precision" in doc:
        return _int_field(doc, "precision")
    return default


def _scalar_in(val, p, prec):
    if isinstance(val, bool):
        raise SchemaError("scalar must be a number, string, or document")
    if isinstance(val, int):
        return PadicScalar.from_int(p, val, prec)
    if isinstance(val, str):
        return PadicScalar.from_fraction(p, _fraction(val, "scalar"), prec)
    if isinstance(val, dict):
        x = scalar_from_json(val)
        if x.p != p:
            raise SchemaError("scalar document is at a different prime")
        return x
    raise SchemaError("scalar must be a number, string, or document")


def _complex_in(doc):
    c = _need(doc, "complex", dict)
    try:
        if "builtin" in c:
            name = c["builtin"]
            if name == "circle":
                return circle_complex()
            if name == "torus":
                return torus_complex()
            if name == "wedge":
                return wedge_complex(_int_field(c, "n"))
            if name == "surface":
                return surface_complex(_int_field(c, "genus"))
            raise SchemaError("unknown builtin complex '%s'" % name)
        return TwistedComplex.from_json(c)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad complex: %s" % e)


def _character_in(doc, key, nvars):
    vals = _need(doc, key, list)
    if len(vals) != nvars:
        raise SchemaError("character needs %d coordinates" % nvars)
    return tuple(_fraction(v, "character value") % 1 for v in vals)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_teichmuller(doc, args):
    p = _prime_field(doc)
    prec = _precision(doc, args, None)
    if prec is None:
        prec = _int_field(doc, "prec")
    xi = _need(doc, "xi")
    if isinstance(xi, list):
        res = ResidueElement(p, len(xi), tuple(int(c) for c in xi))
    elif isinstance(xi, int) and not isinstance(xi, bool):
        res = ResidueElement.from_int(p, xi)
    else:
        raise SchemaError("field 'xi' must be an integer or coefficient list")
    w = teichmuller(res, prec)
    out = {"p": p, "f": res.f, "value": w.to_json()}
    if res.f == 1:
        out["value_digits"] = list(out["value"].get("unit_digits", []))
    return 0, out


def _cmd_exp(doc, args):
    p = _prime_field(doc)
    prec = _precision(doc, args, 24)
    x = _scalar_in(_need(doc, "x"), p, prec)
    return 0, {"value": padic_exp(x, prec).to_json()}


def _cmd_log(doc, args):
    p = _prime_field(doc)
    prec = _precision(doc, args, 24)
    x = _scalar_in(_need(doc, "x"), p, prec)
    return 0, {"value": padic_log(x, prec).to_json()}


def _series_in(doc, key="series"):
    try:
        return AnalyticSeries.from_json(_need(doc, key, dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad series: %s" % e)


def _cmd_strassmann(doc, args):
    g = _series_in(doc)
    return 0, {"count": strassmann_count(g)}


def _cmd_newton(doc, args):
    g = _series_in(doc)
    return 0, newton_polygon(g).to_json()


def _cmd_conic_check(doc, args):
    try:
        locus = AnalyticLocus.from_json(_need(doc, "locus", dict))
        action = WeightedAction.from_json(_need(doc, "action", dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad locus or action: %s" % e)
    point = [_scalar_in(v, action.p, 24) for v in _need(doc, "point", list)]
    bound = _int_field(doc, "bound_k", args.order_bound or 8)
    res = conic_certificate(locus, action, tuple(point), bound)
    return (0 if res.get("ok") else 1), res


def _system_in(doc, key="system"):
    try:
        return BinomialSystem.from_json(_need(doc, key, dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad binomial system: %s" % e)


def _cmd_solve_binomial(doc, args):
    system = _system_in(doc) if "system" in doc else _system_in({"system": doc})
    comps = solve_binomial(system)
    return 0, {"count": len(comps), "components": [c.to_json() for c in comps]}


def _cmd_enumerate_torsion(doc, args):
    try:
        coset = TorsionCoset.from_json(_need(doc, "coset", dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad coset: %s" % e)
    order = _int_field(doc, "order", args.order_bound)
    if order is None:
        raise SchemaError("missing field 'order'")
    pts = enumerate_torsion(coset, order)
    return 0, {"count": len(pts), "points": [[str(q) for q in t] for t in pts]}


def _cmd_find_torsion(doc, args):
    system = _system_in(doc)
    try:
        action = WeightedAction.from_json(_need(doc, "action", dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad action: %s" % e)
    auto = _need(doc, "automorphism", list)
    prec = _precision(doc, args, 24)
    certs = torsion_certificate_pipeline(system, action, auto, prec)
    code = 0 if all(c["status"] == "ok" for c in certs) else 1
    return code, {"certificates": certs}


def _cmd_cohomology(doc, args):
    cplx = _complex_in(doc)
    char = _character_in(doc, "character", cplx.nvars)
    return 0, {"h": list(specialize(cplx, char))}


def _cmd_jumping_scan(doc, args):
    cplx = _complex_in(doc)
    i = _int_field(doc, "i")
    j = _int_field(doc, "j")
    order = _int_field(doc, "order_bound", args.order_bound or 6)
    return 0, scan_torsion(cplx, i, j, order).to_json()


def _cmd_fitting(doc, args):
    cplx = _complex_in(doc)
    i = _int_field(doc, "i")
    j = _int_field(doc, "j")
    gens = fitting_locus(cplx, i, j)
    if gens == SIZE_LIMIT_MESSAGE:
        return 1, {"refusal": SIZE_LIMIT_MESSAGE}
    return 0, {"count": len(gens), "generators": [g.to_json() for g in gens]}


def _cmd_shape_check(doc, args):
    from .laurent import laurent_from_json

    if "generators" in doc:
        nvars = _int_field(doc, "vars")
        try:
            gens = [laurent_from_json(nvars, g) for g in _need(doc, "generators", list)]
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError("bad generators: %s" % e)
        verdict = shape_check(gens, nvars=nvars)
    else:
        cplx = _complex_in(doc)
        i = _int_field(doc, "i")
        j = _int_field(doc, "j")
        gens = fitting_locus(cplx, i, j)
        if gens == SIZE_LIMIT_MESSAGE:
            return 1, {"refusal": SIZE_LIMIT_MESSAGE}
        scan = None
        if "order_bound" in doc or args.order_bound:
            scan = scan_torsion(
                cplx, i, j, _int_field(doc, "order_bound", args.order_bound or 6)
            )
        verdict = shape_check(gens, nvars=cplx.nvars, scan=scan)
    code = 0 if verdict["verdict"] == "shape confirmed" else 1
    return code, verdict


# ---------------------------------------------------------------------------
# independent verification
# ---------------------------------------------------------------------------

_VERIFY_GRID_CAP = 200000


def _verify_solve(doc, args):
    system = _system_in(doc)
    comps = [TorsionCoset.from_json(c) for c in _need(doc, "components", list)]
    order = _int_field(doc, "order_bound", args.order_bound or 6)
    total = order ** system.dim
    if total > _VERIFY_GRID_CAP:
        return 1, {"refusal": "verification grid too large"}
    from itertools import product as iproduct

    grid = iproduct([Fraction(a, order) for a in range(order)], repeat=system.dim)
    checked = 0
    for t in grid:
        checked += 1
        satisfied = all(
            sum(c * x for c, x in zip(v, t)) % 1 == e for v, e in system.equations
        )
        holders = sum(1 for c in comps if c.contains(t))
        if satisfied and holders != 1:
            return 1, {
                "verified": False,
                "point": [str(q) for q in t],
                "reason": "solution covered %d times" % holders,
            }
        if not satisfied and holders:
            return 1, {
                "verified": False,
                "point": [str(q) for q in t],
                "reason": "non-solution claimed by a component",
            }
    return 0, {"verified": True, "points_checked": checked}


def _verify_certificates(doc, args):
    import math

    system = _system_in(doc)
    auto = _need(doc, "automorphism", list)
    certs = _need(doc, "certificates", list)
    for k, cert in enumerate(certs):
        comp = TorsionCoset.from_json(_need(cert, "component", dict))
        point = tuple(_fraction(s, "torsion point") for s in _need(cert, "torsion_point", list))
        if not comp.contains(point):
            return 1, {"verified": False, "index": k, "reason": "point off its component"}
        if not sigma_stable(comp, auto):
            return 1, {"verified": False, "index": k, "reason": "component not stable"}
        for v, e in system.equations:
            if sum(c * x for c, x in zip(v, point)) % 1 != e:
                return 1, {"verified": False, "index": k, "reason": "equation fails at the point"}
        order = math.lcm(1, *(q.denominator for q in point))
        if order != _int_field(cert, "order"):
            return 1, {"verified": False, "index": k, "reason": "order mismatch"}
        if cert.get("status") == "ok":
            p = _int_field(cert, "p")
            if math.gcd(order, p) != 1:
                return 1, {"verified": False, "index": k, "reason": "order shares a factor with p"}
            shifted = TorsionCoset.from_json(
                _need(_need(cert, "translation", dict), "coset_through_identity", dict)
            )
            if shifted.basis != comp.basis or any(shifted.translate):
                return 1, {"verified": False, "index": k, "reason": "translation witness broken"}
            if not cert.get("conic", {}).get("ok"):
                return 1, {"verified": False, "index": k, "reason": "conic certificate missing"}
    return 0, {"verified": True, "certificates_checked": len(certs)}


def _verify_conic(doc, args):
    try:
        locus = AnalyticLocus.from_json(_need(doc, "locus", dict))
        action = WeightedAction.from_json(_need(doc, "action", dict))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("bad locus or action: %s" % e)
    point = tuple(_scalar_in(v, action.p, 24) for v in _need(doc, "point", list))
    cert = _need(doc, "certificate", dict)
    if not cert.get("ok"):
        return 1, {"verified": False, "reason": "certificate is a refusal"}
    used = _int_field(cert, "points_used")
    for n in range(used):
        moved = action.orbit_point(n, point)
        for i, g in enumerate(locus.equations):
            val = g.evaluate(list(moved))
            if val.valuation is not None:
                return 1, {
                    "verified": False,
                    "reason": "equation %d provably nonzero at orbit index %d" % (i, n),
                }
    return 0, {"verified": True, "points_checked": used}


def _verify_counts(doc, args):
    g = _series_in(doc)
    count = strassmann_count(g)
    poly = newton_polygon(g)
    alt = poly.root_count_with_valuation_at_least(0)
    claimed = _int_field(doc, "count", count)
    if count != alt or claimed != count:
        return 1, {
            "verified": False,
            "strassmann": count,
            "newton": alt,
            "claimed": claimed,
        }
    return 0, {"verified": True, "count": count}


_VERIFY = {
    "solve": _verify_solve,
    "certificates": _verify_certificates,
    "conic": _verify_conic,
    "counts": _verify_counts,
}


def _cmd_verify(doc, args):
    kind = _need(doc, "kind", str)
    handler = _VERIFY.get(kind)
    if handler is None:
        raise SchemaError("unknown verification kind '%s'" % kind)
    return handler(doc, args)


# ---------------------------------------------------------------------------
# demo suite
# ---------------------------------------------------------------------------


def _cmd_demo(doc, args):
    """Fixed cross-module pipeline; byte-identical output every run."""
    out = {}

    _, out["teichmuller"] = _cmd_teichmuller({"p": 5, "xi": 2, "prec": 8}, args)

    x = PadicScalar.from_int(5, 5, 20)
    e = padic_exp(x, 20)
    out["exp_log"] = {
        "exp": e.to_json(),
        "log_back": padic_log(e, 20).to_json(),
    }

    disc = {"p": 5, "dim": 1, "radius_exp": 0}
    series = {
        "disc": disc,
        "terms": [
            {"exp": [0], "coeff": PadicScalar.from_int(5, 125, 30).to_json()},
            {"exp": [1], "coeff": PadicScalar.from_int(5, 5, 30).to_json()},
            {"exp": [3], "coeff": PadicScalar.from_int(5, 1, 30).to_json()},
        ],
        "tail_exp": None,
    }
    _, out["strassmann"] = _cmd_strassmann({"series": series}, args)
    _, out["newton"] = _cmd_newton({"series": series}, args)

    system = {"dim": 2, "equations": [{"exponents": [2, 0], "rhs": "0"}]}
    _, out["solve"] = _cmd_solve_binomial({"system": system}, args)
    _, out["torsion_points"] = _cmd_enumerate_torsion(
        {"coset": out["solve"]["components"][0], "order": 4}, args
    )
    alpha = PadicScalar.from_int(5, 6, 24)
    action = {"p": 5, "weights": [1, 2], "alpha": alpha.to_json()}
    code, certs = _cmd_find_torsion(
        {
            "system": system,
            "action": action,
            "automorphism": [[1, 0], [0, 1]],
            "precision": 16,
        },
        args,
    )
    out["certificates"] = certs
    _, out["certificates_verified"] = _verify_certificates(
        {
            "system": system,
            "automorphism": [[1, 0], [0, 1]],
            "certificates": certs["certificates"],
        },
        args,
    )

    torus = {"complex": {"builtin": "torus"}}
    _, out["betti"] = _cmd_cohomology(dict(torus, character=["0", "0"]), args)
    _, out["scan"] = _cmd_jumping_scan(dict(torus, i=1, j=0, order_bound=6), args)
    _, out["fitting"] = _cmd_fitting(dict(torus, i=1, j=0), args)
    _, out["shape"] = _cmd_shape_check(dict(torus, i=1, j=0, order_bound=6), args)

    return 0, out


_DISPATCH = {
    "teichmuller": _cmd_teichmuller,
    "exp": _cmd_exp,
    "log": _cmd_log,
    "strassmann": _cmd_strassmann,
    "newton": _cmd_newton,
    "conic-check": _cmd_conic_check,
    "solve-binomial": _cmd_solve_binomial,
    "enumerate-torsion": _cmd_enumerate_torsion,
    "find-torsion": _cmd_find_torsion,
    "cohomology": _cmd_cohomology,
    "jumping-scan": _cmd_jumping_scan,
    "fitting": _cmd_fitting,
    "shape-check": _cmd_shape_check,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def _env_default(name):
    return os.environ.get(ENV_PREFIX + name)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=_env_default("INPUT"), metavar="FILE")
    common.add_argument("--output", default=_env_default("OUTPUT"), metavar="FILE")
    common.add_argument("--precision", default=_env_default("PRECISION"), metavar="N")
    common.add_argument(
        "--order-bound", dest="order_bound", default=_env_default("ORDER_BOUND"), metavar="M"
    )
    common.add_argument("--seed", default=_env_default("SEED") or "0", metavar="S")
    common.add_argument("--jobs", default=_env_default("JOBS") or "1", metavar="K")
    parser = argparse.ArgumentParser(prog="padicloci")
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name in sorted(_DISPATCH):
        sub.add_parser(name, parents=[common])
    return parser


def _coerce_int(args, attr, minimum=None):
    val = getattr(args, attr)
    if val is None:
        return
    try:
        val = int(val)
    except (TypeError, ValueError):
        raise SchemaError("flag --%s must be an integer" % attr.replace("_", "-"))
    if minimum is not None and val < minimum:
        raise SchemaError("flag --%s must be >= %d" % (attr.replace("_", "-"), minimum))
    setattr(args, attr, val)


def _load_input(args):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return json.loads(text)


def _emit(out, args):
    text = json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        for attr, lo in (("precision", 1), ("order_bound", 1), ("seed", None), ("jobs", 1)):
            _coerce_int(args, attr, lo)
    except SchemaError as e:
        print("padicloci: %s" % e, file=sys.stderr)
        return 2
    doc = None
    if args.cmd not in INPUT_FREE:
        try:
            doc = _load_input(args)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            print("padicloci: bad input: %s" % e, file=sys.stderr)
            return 2
    try:
        code, out = _DISPATCH[args.cmd](doc, args)
    except SchemaError as e:
        print("padicloci: %s" % e, file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as e:
        print("padicloci: %s" % e, file=sys.stderr)
        return 1
    _emit(out, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
