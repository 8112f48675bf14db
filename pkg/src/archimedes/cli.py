"""Command-line front end.

Usage:
    archimedes pi --doublings 4
    archimedes squeeze --doublings 12 --radius 1 --tolerance 1e-6
    archimedes sector --theta 1/12
    archimedes rectify --curve cycloid --param r=1
    archimedes axioms --inner '[[0,0],[2,1],[4,0]]' --outer '[[0,0],[0,2],[4,2],[4,0]]'
    archimedes construct --expr "(div (sub (mul 13 (sqrt 13)) 8) 27)"
    archimedes solids --radius 7/3 --doublings 10

Exit status is 0 on certified success, 2 when certification fails and 1 on
usage errors.  Errors are written to stderr as one-line JSON objects.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import chains, constructible, exhaustion, polygon_pi, rectify, solids
from .errors import ArchimedesError, NonConvergent, PrecisionExhausted, ToleranceUnreachable
from .exactnum import DEFAULT_BITS, Interval, decimal_ceil, decimal_floor, parse_rational, to_decimal

MAX_BITS = 4096
ENCLOSURE_FIELDS = ("name", "lo", "hi", "lo_exact", "hi_exact")
ROW_FIELDS = ("k", "n", "lower", "upper", "width", "width_ratio")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_rational(text: str) -> Fraction:
    q = _rational(text)
    if q <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return q


def _nonnegative_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return v


def _positive_int(text: str) -> int:
    v = _nonnegative_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _default_bits() -> int:
    env = os.environ.get("ARCHIMEDES_BITS")
    if env is None:
        return DEFAULT_BITS
    try:
        bits = int(env)
    except ValueError:
        raise UsageError(f"ARCHIMEDES_BITS is not an integer: {env!r}") from None
    if bits < polygon_pi.MIN_BITS:
        raise UsageError(f"ARCHIMEDES_BITS must be >= {polygon_pi.MIN_BITS}")
    return bits


def _bits(text: str) -> int:
    v = _positive_int(text)
    if v < polygon_pi.MIN_BITS:
        raise argparse.ArgumentTypeError(f"bits must be >= {polygon_pi.MIN_BITS}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--bits", type=_bits, default=None, help="precision bits (default 128 or $ARCHIMEDES_BITS)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--digits", type=_positive_int, default=20, help="decimal digits printed")

    parser = _Parser(prog="archimedes", description="Certified enclosures for classical circle and curve results.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pi", parents=[common], help="polygon-doubling enclosure of pi")
    p.add_argument("--doublings", type=_nonnegative_int, default=4)

    p = sub.add_parser("squeeze", parents=[common], help="certify A = Cr/2 by double squeeze")
    p.add_argument("--doublings", type=_nonnegative_int, default=12)
    p.add_argument("--radius", type=_positive_rational, default=Fraction(1))
    p.add_argument("--tolerance", type=_positive_rational, default=Fraction(1, 10**6))

    p = sub.add_parser("sector", parents=[common], help="certify chord < arc < tangent for theta = pi/n")
    p.add_argument("--theta", type=_positive_rational, default=Fraction(1, 6), help="theta as a fraction of pi, e.g. 1/12")
    p.add_argument("--k-ref", type=_nonnegative_int, default=None)

    p = sub.add_parser("rectify", parents=[common], help="closed-form length against the polyline oracle")
    p.add_argument("--curve", required=True, choices=rectify.KINDS)
    p.add_argument("--param", action="append", default=[], metavar="NAME=P/Q")
    p.add_argument("--segments", type=_positive_int, default=None)
    p.add_argument("--tolerance", type=_positive_rational, default=Fraction(1, 10**6))
    p.add_argument("--k-ref", type=_nonnegative_int, default=None)
    p.add_argument("--emit-polyline", default=None, metavar="FILE.csv")

    p = sub.add_parser("axioms", parents=[common], help="concavity, betweenness and length comparison of chains")
    p.add_argument("--inner", default=None, help="JSON array of vertices")
    p.add_argument("--outer", default=None, help="JSON array of vertices")
    p.add_argument("--triangle", default=None, help="JSON array of four points E, F, G, H")

    p = sub.add_parser("construct", parents=[common], help="evaluate a constructible expression")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("solids", parents=[common], help="sphere and cylinder constants")
    p.add_argument("--radius", type=_positive_rational, default=Fraction(1))
    p.add_argument("--doublings", type=_nonnegative_int, default=10)
    return parser


# -- output -------------------------------------------------------------------


def enclosure_record(iv: Interval, digits: int) -> dict:
    lo, hi = to_decimal(iv, digits)
    return {"lo": lo, "hi": hi, "lo_exact": _exact(iv.lo), "hi_exact": _exact(iv.hi)}


def _exact(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _payload(command, inputs, enclosures, certified, digits, **extra) -> dict:
    out = {
        "command": command,
        "inputs": {k: str(v) for k, v in inputs.items() if v is not None},
        "enclosures": {name: enclosure_record(iv, digits) for name, iv in enclosures.items()},
        "certified": bool(certified),
    }
    out.update(extra)
    return out


def _write(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "rows" in payload:
        writer.writerow(ROW_FIELDS)
        for row in payload["rows"]:
            writer.writerow([row[f] for f in ROW_FIELDS])
    else:
        writer.writerow(ENCLOSURE_FIELDS)
        for name, rec in payload["enclosures"].items():
            writer.writerow([name] + [rec[f] for f in ENCLOSURE_FIELDS[1:]])
    out.write(buf.getvalue())


# -- commands -----------------------------------------------------------------


def _with_retry(fn, bits):
    while True:
        try:
            return fn(bits), bits
        except PrecisionExhausted:
            if bits * 2 > MAX_BITS:
                raise
            bits *= 2


def cmd_pi(args) -> dict:
    def run(bits):
        return list(polygon_pi.iterate_pairs(args.doublings, bits))

    states, bits = _with_retry(run, args.bits)
    digits = args.digits
    rows, previous = [], None
    for s in states:
        enc = s.enclosure
        ratio = "" if previous is None else decimal_floor(previous / enc.width, digits)
        rows.append(
            {
                "k": s.k,
                "n": s.n,
                "lower": decimal_floor(enc.lo, digits),
                "upper": decimal_ceil(enc.hi, digits),
                "width": decimal_ceil(enc.width, digits),
                "width_ratio": ratio,
            }
        )
        previous = enc.width
    final = states[-1]
    enc = final.enclosure
    certified = final.inscribed.hi < final.circumscribed.lo
    if args.doublings >= 4:
        certified = certified and Fraction(223, 71) < enc.lo and enc.hi < Fraction(22, 7)
    return _payload(
        "pi",
        {"doublings": args.doublings, "bits": bits},
        {"pi": enc, "inscribed": final.inscribed, "circumscribed": final.circumscribed},
        certified,
        digits,
        n=final.n,
        lower=rows[-1]["lower"],
        upper=rows[-1]["upper"],
        rows=rows,
    )


def cmd_squeeze(args) -> dict:
    cert = exhaustion.verify_prop1(args.doublings, args.radius, args.tolerance, args.bits)
    st = cert.state
    encl = {
        "area": cert.area,
        "half_cr": cert.half_cr,
        "circumference": st.circumference,
        "apothem": st.apothem,
        "area_lo": st.area_lo,
        "area_hi": st.area_hi,
        "circ_lo": st.circ_lo,
        "circ_hi": st.circ_hi,
        "half_cr_lo": st.half_cr_lo,
        "half_cr_hi": st.half_cr_hi,
    }
    return _payload(
        "squeeze",
        {"doublings": args.doublings, "radius": args.radius, "tolerance": args.tolerance, "bits": args.bits},
        encl,
        cert.certified,
        args.digits,
        n=st.n,
        gap=decimal_ceil(cert.gap, args.digits),
    )


def cmd_sector(args) -> dict:
    b = exhaustion.verify_sector(args.theta, args.k_ref, args.bits)
    return _payload(
        "sector",
        {"theta_over_pi": args.theta, "k_ref": args.k_ref, "bits": args.bits},
        {"theta": b.theta, "chord_SU": b.chord_SU, "arc": b.arc, "tangent_PR": b.tangent_PR},
        b.certified,
        args.digits,
    )


def _parse_params(items) -> dict:
    params = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--param expects NAME=P/Q, got {item!r}")
        name, value = item.split("=", 1)
        try:
            params[name.strip()] = parse_rational(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return params


_PARAM_NAMES = {
    "cycloid": {"r"},
    "circle": {"r"},
    "semicubical": {"a"},
    "log_spiral": {"a", "T"},
    "archimedean_spiral": {"h"},
    "quadratrix": {"a"},
    "segment": {"x0", "y0", "x1", "y1"},
}


def cmd_rectify(args) -> dict:
    params = _parse_params(args.param)
    unknown = set(params) - _PARAM_NAMES[args.curve]
    if unknown:
        raise UsageError(f"unknown parameters for {args.curve}: {sorted(unknown)}")
    kind, bits = args.curve, args.bits
    inputs = {"curve": kind, "bits": bits, **params}
    if kind == "archimedean_spiral":
        res = rectify.spiral_subtangent(params.get("h", 1), args.k_ref if args.k_ref is not None else 10, bits)
    elif kind == "quadratrix":
        res = rectify.quadratrix_base(params.get("a", 1), args.k_ref if args.k_ref is not None else 20, bits)
    else:
        if kind == "log_spiral":
            curve = rectify.CurveSpec.log_spiral(params.get("a", 1), params.get("T", 40))
        elif kind == "segment":
            curve = rectify.CurveSpec.segment(
                (params.get("x0", 0), params.get("y0", 0)), (params.get("x1", 1), params.get("y1", 0))
            )
        else:
            name = next(iter(_PARAM_NAMES[kind]))
            curve = rectify.CurveSpec(kind, {name: params.get(name, 1)})
        res = rectify.rectify(curve, args.tolerance, bits, args.segments)
        if args.emit_polyline:
            rectify.emit_polyline(curve, res.segments or args.segments or 256, args.emit_polyline, bits)
    encl = {"analytic": res.analytic, "oracle": res.oracle}
    for name, value in res.detail.items():
        if isinstance(value, Interval):
            encl[name] = value
    extra = {"agree": res.agree}
    if res.segments is not None:
        extra["segments"] = res.segments
    return _payload("rectify", inputs, encl, res.agree, args.digits, **extra)


def _load_points(text: str, what: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, list):
        raise UsageError(f"{what}: expected a JSON array of vertices")
    return [tuple(_coordinate(c, what) for c in _pair(v, what)) for v in data]


def _pair(v, what):
    if not isinstance(v, list) or len(v) != 2:
        raise UsageError(f"{what}: each vertex must be a two-element array")
    return v


def _coordinate(c, what) -> Fraction:
    """A coordinate is an integer, a "p/q" string or a [num, den] pair."""
    if isinstance(c, bool):
        raise UsageError(f"{what}: invalid coordinate {c!r}")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        try:
            return parse_rational(c)
        except ValueError as exc:
            raise UsageError(f"{what}: {exc}") from None
    if isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in c) and c[1] != 0:
        return Fraction(c[0], c[1])
    raise UsageError(f"{what}: invalid coordinate {c!r}")


def cmd_axioms(args) -> dict:
    if args.inner is None and args.triangle is None:
        raise UsageError("axioms needs --inner (optionally with --outer) or --triangle")
    bits, encl, extra, certified = args.bits, {}, {}, True
    inputs = {k: v for k, v in (("inner", args.inner), ("outer", args.outer), ("triangle", args.triangle), ("bits", bits)) if v is not None}
    if args.inner is not None:
        try:
            inner = chains.Chain(_load_points(args.inner, "--inner"))
            outer = chains.Chain(_load_points(args.outer, "--outer")) if args.outer else inner.chord()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.outer is None:
            inner, outer = outer, inner
        extra["concave"] = {
            "inner": chains.is_concave_same_direction(inner),
            "outer": chains.is_concave_same_direction(outer),
        }
        between = chains.chain_between(inner, outer)
        extra["between"] = between
        if between:
            order = chains.compare_chains(inner, outer, bits)
            extra["order"] = order.value
            certified = order is not chains.ChainOrder.OVERLAPPING
        else:
            extra["order"] = None
            certified = False
        encl["inner_length"] = inner.length(bits)
        encl["outer_length"] = outer.length(bits)
    if args.triangle is not None:
        pts = _load_points(args.triangle, "--triangle")
        if len(pts) != 4:
            raise UsageError("--triangle expects four points E, F, G, H")
        i20, i21 = chains.euclid_triangle_checks(*pts, bits=bits)
        extra["euclid"] = {"I.20": i20, "I.21": i21}
        certified = certified and i20 and i21
    return _payload("axioms", inputs, encl, certified, args.digits, **extra)


def cmd_construct(args) -> dict:
    cert = constructible.is_constructible(args.expr, args.bits)
    lo, hi = to_decimal(cert.enclosure, args.digits)
    return _payload(
        "construct",
        {"expr": args.expr, "bits": args.bits},
        {"value": cert.enclosure},
        cert.constructible,
        args.digits,
        constructible=cert.constructible,
        depth=cert.depth,
        lo=lo,
        hi=hi,
    )


def cmd_solids(args) -> dict:
    report = solids.sphere_constants(args.radius, args.doublings, args.bits)
    cyl = solids.cylinder_sphere_ratios(args.radius, args.doublings, args.bits)
    encl = {
        "V": report.V,
        "S": report.S,
        "cyl_V": report.cyl_V,
        "cyl_S_total": report.cyl_S_total,
        **report.ratios,
        "cyl_V/V": cyl.volume,
        "cyl_S_total/S": cyl.surface,
    }
    certified = cyl.certified and solids.identity_chain_intersects(report)
    return _payload(
        "solids",
        {"radius": args.radius, "doublings": args.doublings, "bits": args.bits},
        encl,
        certified,
        args.digits,
        d=_exact(report.d),
    )


COMMANDS = {
    "pi": cmd_pi,
    "squeeze": cmd_squeeze,
    "sector": cmd_sector,
    "rectify": cmd_rectify,
    "axioms": cmd_axioms,
    "construct": cmd_construct,
    "solids": cmd_solids,
}


def _error(kind: str, message: str, err, **extra) -> None:
    record = {"error": kind, "message": message, **extra}
    err.write(json.dumps(record) + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if args.bits is None:
            args.bits = _default_bits()
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        _error("UsageError", str(exc), err)
        return 1
    except ToleranceUnreachable as exc:
        _error(type(exc).__name__, str(exc), err, required_doublings=exc.required_doublings)
        return 2
    except (NonConvergent, PrecisionExhausted) as exc:
        _error(type(exc).__name__, str(exc), err)
        return 2
    except (ArchimedesError, ValueError) as exc:
        # remaining library errors are rejected inputs
        _error(type(exc).__name__, str(exc), err)
        return 1
    _write(payload, args.format, out)
    return 0 if payload["certified"] else 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
