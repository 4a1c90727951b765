"""
Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
error.  ``--json`` prints a canonical document: sorted keys, integers as
decimal strings, no timestamps.
"""

import argparse
import json
import logging
import sys

from . import config
from .alexpoly import alexander_from_pq, alexander_with_flag, validate_alexander
from .bridge import (TwoBridge, equivalent, evaluate_word, even_cf_expansion,
                     format_word, is_fibered, mirror, parse_word)
from .covering import (RecursionTrace, diagonal, distinguish_certificate,
                       linking_profile)
from .errors import BudgetExceeded, TwoBridgeError
from .families import torus_members, tree_members
from .laurent import LaurentPoly
from .swinv import K3_SW, sw_covering_base, sw_equal, sw_knot_surgery
from .verify import Check, build_report, run_suite

log = logging.getLogger("twobridge")


class UsageError(Exception):
    pass


# -- serialization -------------------------------------------------------------

def jsonable(obj):
    """Convert results to JSON-safe values; integers become decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, LaurentPoly):
        return {"terms": jsonable(obj.to_json()), "text": str(obj)}
    if isinstance(obj, TwoBridge):
        return str(obj)
    if isinstance(obj, Check):
        return jsonable(obj.to_json())
    if isinstance(obj, RecursionTrace):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc):
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def make_report(command, inputs, results, checks=()):
    checks = list(checks)
    failures = [c.name for c in checks if not c.passed]
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "checks": checks,
        "provenance": {c.name: c.statement for c in checks},
        "summary": {"passed": not failures, "checks": len(checks), "failures": failures},
    }


def result(op, value):
    return {"op": op, "value": value}


def _text(value):
    if isinstance(value, dict) and set(value) == {"op", "value"}:
        return f"{_text(value['value'])}  [{value['op']}]"
    if isinstance(value, LaurentPoly):
        return str(value)
    if isinstance(value, (list, tuple)) and value and all(type(v) is int for v in value):
        return format_word(value)
    if isinstance(value, (dict, RecursionTrace)) or hasattr(value, "to_json"):
        return json.dumps(jsonable(value), sort_keys=True)
    return str(value)


def render_text(report, out):
    print(f"# {report['command']}", file=out)
    for key, value in report["results"].items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:", file=out)
            for item in value:
                if set(item) == {"op", "value"}:
                    print(f"  - {_text(item)}", file=out)
                else:
                    print("  - " + ", ".join(f"{k}={_text(v)}" for k, v in item.items()),
                          file=out)
        else:
            print(f"{key}: {_text(value)}", file=out)
    for c in report["checks"]:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.statement}", file=out)
    s = report["summary"]
    if s["checks"]:
        print(f"{s['checks'] - len(s['failures'])}/{s['checks']} checks passed", file=out)


# -- input helpers -------------------------------------------------------------

def _knot_or_word(args):
    if bool(args.word) == bool(args.pq):
        raise UsageError("give exactly one of --word or --pq")
    if args.word:
        w = parse_word(args.word)
        return w, evaluate_word(w).knot
    return None, TwoBridge.parse(args.pq)


# -- commands ----------------------------------------------------------------

def cmd_classify(args):
    w, k = _knot_or_word(args)
    res = {"knot": result("normalize", k), "mirror": result("mirror", mirror(k)),
           "amphichiral": result("equivalent", equivalent(k, mirror(k))),
           "even_word": result("even_cf_expansion", even_cf_expansion(k))}
    if w is not None:
        res["word"] = result("parse_word", w)
        res["fibered"] = result("is_fibered", is_fibered(w))
        res["matrix"] = result("evaluate_word", evaluate_word(w).matrix)
    return make_report("classify", {"word": args.word, "pq": args.pq}, res)


def cmd_alex(args):
    w, k = _knot_or_word(args)
    checks = []
    if w is not None:
        f, retried = alexander_with_flag(w)
        res = {"knot": result("evaluate_word", k), "alexander": result("alexander_from_word", f),
               "mirror_retry": retried}
        rep = validate_alexander(w, f, crosscheck_budget=args.budget_crosscheck)
        checks = [Check(name, "Alexander polynomial consistency gate", ok)
                  for name, ok in rep.checks.items()]
    else:
        f = alexander_from_pq(k, budget=args.budget_direct)
        res = {"knot": result("normalize", k), "alexander": result("alexander_from_pq", f)}
    return make_report("alex", {"word": args.word, "pq": args.pq}, res, checks)


def cmd_covering(args):
    k = TwoBridge.parse(args.pq)
    res = {"knot": result("normalize", k)}
    if args.profile and k.p <= args.budget_profile:
        prof = linking_profile(k, budget=args.budget_profile)
        res["offdiag"] = result("linking_profile", [int(x) for x in prof.offdiag])
        res["d"] = result("linking_profile", prof.d)
    else:
        if args.profile:
            log.warning("p = %d exceeds the profile budget; emitting d only", k.p)
        d, route = diagonal(k, budget=args.budget_direct)
        res["d"] = result(route, d)
    return make_report("covering", {"pq": args.pq, "profile": args.profile}, res)


def _members(construction, n, nmax):
    if construction == "torus":
        if n < 1:
            raise UsageError("the torus construction needs n >= 1")
        return torus_members(n)
    return tree_members(n, nmax=nmax)


def cmd_family(args):
    members = _members(args.construction, args.n, args.nmax)
    if args.i is not None:
        members = [m for m in members if m.label.endswith(f",{args.i})")]
        if not members:
            raise UsageError(f"no member with i = {args.i}")
    rows = []
    for m in members:
        d, route = diagonal(m.knot, m.trace, budget=args.budget_direct)
        rows.append({**m.to_json(), "d": result(route, d)})
    return make_report("family", {"construction": args.construction, "n": args.n, "i": args.i},
                       {"members": rows})


def cmd_sw(args):
    if args.family == "tree" and args.n > config.ALEXANDER_NMAX:
        raise BudgetExceeded(f"n = {args.n} exceeds the Alexander cap {config.ALEXANDER_NMAX}")
    members = _members(args.family, args.n, args.nmax)
    rows, sws = [], []
    for m in members:
        f = alexander_with_flag(m.word)[0]
        sw = sw_covering_base(f)
        sws.append(sw)
        rows.append({"label": m.label, "knot": m.knot,
                     "alexander": result("alexander_from_word", f),
                     "sw_knot_surgery": result("sw_knot_surgery", sw_knot_surgery(K3_SW, f).poly),
                     "sw_covering_base": result("sw_covering_base", sw.poly)})
    same = all(sw_equal(sws[0], s) for s in sws)
    checks = [Check("same_sw", "equal formal SW polynomials across the family", same)]
    return make_report("sw", {"family": args.family, "n": args.n},
                       {"members": rows, "all_equal": result("sw_equal", same)}, checks)


def cmd_certify(args):
    k1, k2 = TwoBridge.parse(args.left), TwoBridge.parse(args.right)
    cert = distinguish_certificate(k1, k2, budget=args.budget_direct,
                                   profile_budget=args.budget_profile,
                                   det_budget=args.budget_det)
    return make_report("certify", {"left": args.left, "right": args.right},
                       {"certificate": result("distinguish_certificate", cert)})


def cmd_verify(args):
    suites = run_suite(args.suite, pmax=args.pmax, nmax=args.nmax, n=args.n)
    checks = []
    for name, suite in suites.items():
        for c in suite:
            checks.append(Check(f"{name}/{c.name}", c.statement, c.passed, c.detail))
    res = {"suites": {name: all(c.passed for c in s) for name, s in suites.items()}}
    return make_report("verify", {"suite": args.suite, "pmax": args.pmax,
                                  "nmax": args.nmax, "n": args.n}, res, checks)


def cmd_report(args):
    rep = build_report(args.n, budget=args.budget_direct)
    return make_report("report", rep["inputs"], rep["results"], rep["checks"])


# -- parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--quiet", action="store_true", help="print only the summary line")
    common.add_argument("--budget-direct", type=int, default=config.DIRECT_BUDGET)
    common.add_argument("--budget-profile", type=int, default=config.PROFILE_BUDGET)
    common.add_argument("--budget-crosscheck", type=int, default=config.CROSSCHECK_BUDGET)
    common.add_argument("--budget-det", type=int, default=config.DETERMINANT_BUDGET)
    common.add_argument("--nmax-words", dest="nmax", type=int, default=config.WORD_NMAX)

    parser = argparse.ArgumentParser(prog="twobridge", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    def knot_args(p):
        p.add_argument("--word", help="comma-separated D-word, e.g. 1,1,-1,-1")
        p.add_argument("--pq", help="p,q")

    p = sub.add_parser("classify", parents=[common], help="normal form and fiberedness")
    knot_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("alex", parents=[common], help="Alexander polynomial")
    knot_args(p)
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("covering", parents=[common], help="covering-link diagonal")
    p.add_argument("--pq", required=True)
    p.add_argument("--profile", action="store_true", help="also emit the linking sequence")
    p.set_defaults(func=cmd_covering)

    p = sub.add_parser("family", parents=[common], help="members of a knot family")
    p.add_argument("--construction", choices=["torus", "tree"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sw", parents=[common], help="formal SW polynomials of a family")
    p.add_argument("--family", choices=["torus", "tree"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sw)

    p = sub.add_parser("certify", parents=[common], help="distinguish two covering links")
    p.add_argument("--left", required=True, help="p,q")
    p.add_argument("--right", required=True, help="p,q")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["const1", "qprime", "diagonal-theorem", "diag-torus",
                                     "diag-tree", "kanenobu", "same-sw", "certificates", "all"])
    p.add_argument("--pmax", type=int)
    p.add_argument("--nmax", type=int, dest="suite_nmax")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="full report for a tree-family level")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        args.nmax = args.suite_nmax
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        report = args.func(args)
    except (UsageError, TwoBridgeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        out.write(dumps(report))
    elif args.quiet:
        s = report["summary"]
        print("PASS" if s["passed"] else f"FAIL ({len(s['failures'])} failures)", file=out)
    else:
        render_text(report, out)
    return 0 if report["summary"]["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
