"""Command-line front end: ``heights compute|local|distance|places|verify``."""

import argparse
import json
import math
import re
import sys

import mpmath

from .errors import HeightError, IdenticalPoints, InvalidPlace, OnSubscheme, UnknownSuite
from .heights import arithmetic_distance_global, arithmetic_distance_local, global_height, local_height
from .places import INF, Place
from .quadratic import QuadraticField, decomposition, places_above
from .verify import SampleSpec, run_suite, suite_passed
from .workspace import load_workspace

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_VERIFY = 0, 1, 2, 3

_PLACE_RE = re.compile(r"^(?:inf(?::(\+|-|complex))?|p=(\d+)(?::(split1|split2|inert|ram))?)$")


def parse_place_spec(text, field_=None):
    """Resolve "inf", "p=7", "p=7:split1", "inf:-", ... to a Place or ExtPlace.

    Over a quadratic field a bare spec is accepted only when a single place
    lies above it.
    """
    m = _PLACE_RE.match(text.strip())
    if not m:
        raise InvalidPlace(f"malformed place spec {text!r}; expected inf, inf:+|-|complex, "
                           "p=<prime> or p=<prime>:split1|split2|inert|ram")
    arch_tag, p, fin_tag = m.groups()
    base = INF if p is None else Place(int(p))
    tag = arch_tag or fin_tag
    if field_ is None:
        if tag is not None:
            raise InvalidPlace(f"place {text!r} names a place of a quadratic field, but the point is rational")
        return base
    above = places_above(base, field_)
    if tag is None:
        if len(above) > 1:
            choices = "inf:+ / inf:-" if base.is_archimedean else f"p={p}:split1 / p={p}:split2"
            raise InvalidPlace(f"{len(above)} places of {field_} lie over {base}; pick {choices}")
        return above[0]
    wanted = {"+": "real+", "-": "real-", "complex": "complex", "inert": "inert", "ram": "ramified"}
    if tag in ("split1", "split2"):
        if above[0].kind != "split":
            raise InvalidPlace(f"{base} is {above[0].kind} in {field_}, not split")
        return above[int(tag[-1]) - 1]
    for w in above:
        if w.kind == wanted[tag]:
            return w
    raise InvalidPlace(f"no {wanted[tag]} place of {field_} over {base}")


def render_float(value, bits):
    """Decimal rendering of a LogValue at ``bits`` of working precision."""
    if value.is_infinite:
        return "inf"
    digits = max(1, math.ceil(bits * math.log10(2)) + 1)
    with mpmath.workprec(bits + 20):
        x = value.to_mpf(bits + 20)
    with mpmath.workprec(bits):
        return mpmath.nstr(+x, digits, strip_zeros=True, min_fixed=-math.inf, max_fixed=math.inf)


def _render(value, args):
    exact = value.canonical().render()
    if args.mode == "float":
        return render_float(value, args.precision), exact
    return exact, exact


def _emit(args, text, payload):
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _field_of(args, *points):
    if getattr(args, "field", None) is not None:
        return QuadraticField(args.field)
    for pt in points:
        if pt.field is not None:
            return pt.field
    return None


def _need(args, attr, flag):
    val = getattr(args, attr)
    if not val:
        raise _Usage(f"{args.command} needs {flag}")
    return val


class _Usage(Exception):
    pass


def cmd_compute(args):
    ws = load_workspace(_need(args, "input", "--input"))
    Y = ws.presentation(_need(args, "subscheme", "--subscheme"))
    names = _need(args, "point", "--point")
    x = ws.point(names[0])
    h = global_height(Y, x, _field_of(args, x))
    shown, exact = _render(h.value, args)
    _emit(args, shown, {"command": "compute", "subscheme": args.subscheme, "point": names[0],
                        "mode": args.mode, "value": shown, "exact": exact,
                        "field": None if h.field_used is None else h.field_used.d})
    return EXIT_OK


def cmd_local(args):
    ws = load_workspace(_need(args, "input", "--input"))
    Y = ws.presentation(_need(args, "subscheme", "--subscheme"))
    names = _need(args, "point", "--point")
    x = ws.point(names[0])
    f = _field_of(args, x)
    w = parse_place_spec(_need(args, "place", "--place"), f)
    res = local_height(Y, x.lift(f) if f is not None else x, w)
    shown, exact = _render(res.value, args)
    _emit(args, shown, {"command": "local", "subscheme": args.subscheme, "point": names[0],
                        "place": str(w), "mode": args.mode, "value": shown, "exact": exact,
                        "witness": None if res.witnesses is None else list(res.witnesses)})
    return EXIT_OK


def cmd_distance(args):
    ws = load_workspace(_need(args, "input", "--input"))
    names = _need(args, "point", "--point")
    if len(names) != 2:
        raise _Usage("distance needs exactly two --point flags")
    x, y = ws.point(names[0]), ws.point(names[1])
    f = _field_of(args, x, y)
    if args.place:
        w = parse_place_spec(args.place, f)
        if f is not None:
            x, y = x.lift(f), y.lift(f)
        value = arithmetic_distance_local(x, y, w).value
        where = str(w)
    else:
        if f is not None:
            x, y = x.lift(f), y.lift(f)
        value = arithmetic_distance_global(x, y).value
        where = "global"
    shown, exact = _render(value, args)
    _emit(args, shown, {"command": "distance", "points": names, "place": where, "mode": args.mode,
                        "value": shown, "exact": exact})
    return EXIT_OK


def describe_places(d, p):
    """One-line description of the places of Q(sqrt d) over p (an int or None for infinity)."""
    K = QuadraticField(d)
    if p is None:
        if K.is_real:
            return "real: places +,-; degrees 1,1"
        return "complex: degree 2"
    kind = decomposition(K, Place(p).p)
    if kind == "split":
        seeds = [w.seed for w in places_above(Place(p), K)]
        mod = " (mod 4)" if p == 2 else ""
        return f"split: roots {seeds[0]},{seeds[1]}{mod}; degrees 1,1"
    return f"{kind}: degree 2"


def cmd_places(args):
    d = p = None
    have_p = False
    for tok in args.tokens:
        key, _, val = tok.partition("=")
        if key == "d" and val:
            d = int(val)
        elif key == "p" and val:
            have_p = True
            p = None if val == "inf" else int(val)
        else:
            raise _Usage(f"places takes d=<int> and p=<prime>|p=inf, got {tok!r}")
    if d is None or not have_p:
        raise _Usage("places needs both d=<int> and p=<prime> (or p=inf)")
    text = describe_places(d, p)
    K = QuadraticField(d)
    above = places_above(INF if p is None else Place(p), K)
    _emit(args, text, {"command": "places", "d": d, "p": "inf" if p is None else p, "summary": text,
                       "places": [{"place": str(w), "kind": w.kind, "local_degree": w.local_degree}
                                  for w in above]})
    return EXIT_OK


def cmd_verify(args):
    spec = SampleSpec(args.samples, args.seed, args.height_bound, args.field)
    reports = run_suite(args.suites or ["all"], spec)
    ok = suite_passed(reports)
    text = "\n".join(r.line() for r in reports)
    _emit(args, text, {"command": "verify", "seed": args.seed, "samples": args.samples, "passed": ok,
                       "reports": [r.to_json() for r in reports]})
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"compute": cmd_compute, "local": cmd_local, "distance": cmd_distance,
            "places": cmd_places, "verify": cmd_verify}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="workspace JSON file")
    common.add_argument("--subscheme", metavar="NAME")
    common.add_argument("--point", metavar="NAME", action="append", help="repeat for two points")
    common.add_argument("--place", metavar="SPEC", help="inf | p=<prime> | p=<prime>:split1|split2|inert|ram "
                                                        "| inf:+|-|complex")
    common.add_argument("--field", metavar="D", type=int, help="compute over Q(sqrt D)")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--precision", metavar="BITS", type=int, default=53)
    common.add_argument("--samples", metavar="N", type=int, default=100)
    common.add_argument("--seed", metavar="S", type=int, default=0)
    common.add_argument("--height-bound", metavar="B", type=int, default=20,
                        help="bound on sampled numerators and denominators (verify)")
    common.add_argument("--output", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="heights", description="Exact local and global heights.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="global height of a point")
    sub.add_parser("local", parents=[common], help="local height at one place")
    sub.add_parser("distance", parents=[common], help="arithmetic distance of two points")
    pl = sub.add_parser("places", parents=[common], help="places of Q(sqrt d) over p")
    pl.add_argument("tokens", nargs="*", metavar="d=<int> p=<prime>")
    vf = sub.add_parser("verify", parents=[common], help="run verification suites")
    vf.add_argument("suites", nargs="*", metavar="SUITE")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.precision < 2 or args.samples < 1:
        print("error: --precision must be >= 2 and --samples >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except OnSubscheme as exc:
        divs = ", ".join(str(i) for i in exc.divisors)
        print(f"error: {exc} (vanishing divisors: {divs})", file=sys.stderr)
        return EXIT_MATH
    except IdenticalPoints as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (_Usage, UnknownSuite, HeightError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
