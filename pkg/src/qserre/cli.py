"""Command-line front end: polynomial and relation emission plus
verification suites with machine-readable reports.

Exit codes: 0 = success / all checks pass, 1 = a verification failed
(the report is still emitted), 2 = usage error.  Output is
deterministic: reports are sorted before emission.  The environment
variable QSP_MAX_DEGREE bounds the depth of the verification suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .qfield import QRat
from .orthopoly import (cheby_biv_U_plain, cheby_deformed_plain,
                        cheby_tilde_plain, hermite_biv_plain, hermite_plain,
                        serre_P)
from .genfun import (PoleInCoefficient, check_functional_equation,
                     check_phi_identity)
from .relations import (example_rows, example_table, emit_relation,
                        make_data, roundtrip_ok, verify_theorem)


class UsageError(Exception):
    """Bad command line; carries the parser message."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_FAMILIES = ("hermite", "hermite-biv", "cheby", "cheby-tilde", "cheby-U",
              "serre-p")
_SUITES = ("star-case1", "star-case2", "star-case3", "genfun", "examples",
           "roundtrip", "all")


def _build_parser() -> _Parser:
    p = _Parser(prog="qserre",
                description="emit and verify deformed quantum Serre "
                            "relations with exact Q(q) arithmetic")
    sub = p.add_subparsers(dest="command", required=True)

    poly = sub.add_parser("poly", help="emit an orthogonal polynomial")
    poly.add_argument("--family", required=True, choices=_FAMILIES)
    poly.add_argument("--m", type=int, default=0)
    poly.add_argument("--n", type=int, default=0)
    poly.add_argument("--a", type=int, default=0,
                      help="exponent a in the deformation r = q^a")
    poly.add_argument("--N", type=int, default=1,
                      help="order of the Serre polynomial family")
    poly.add_argument("--form", choices=("product", "expanded"),
                      default="expanded")
    poly.add_argument("--format", choices=("latex", "json", "text"),
                      default="text")

    rel = sub.add_parser("relation", help="emit a deformed Serre relation")
    rel.add_argument("--case", choices=("I", "II", "III"))
    rel.add_argument("--aij", type=int, default=0)
    rel.add_argument("--di", type=int, default=1)
    rel.add_argument("--dj", type=int, default=1)
    rel.add_argument("--examples", action="store_true",
                     help="emit the low-rank crossing-case table instead")
    rel.add_argument("--format", choices=("latex", "json", "text"),
                     default="text")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=_SUITES)
    ver.add_argument("--aij-range", default="0..-4", metavar="HI..LO",
                     help="inclusive range of a_ij, e.g. 0..-4")
    ver.add_argument("--format", choices=("json", "text"), default="text")
    ver.add_argument("--mutate", default=None, metavar="M[,N]",
                     help="perturb one series coefficient (failure-path "
                          "test hook for the genfun suite)")
    return p


def parse_args(argv) -> argparse.Namespace:
    """Validated command, or UsageError naming the offending flag."""
    return _build_parser().parse_args(argv)


def _parse_range(spec: str):
    try:
        hi, lo = (int(x) for x in spec.split(".."))
    except ValueError:
        raise UsageError(f"bad --aij-range {spec!r}, expected HI..LO")
    if hi < lo:
        hi, lo = lo, hi
    if hi > 0:
        raise UsageError("--aij-range entries must be <= 0")
    return range(hi, lo - 1, -1)


def _max_degree(default: int) -> int:
    raw = os.environ.get("QSP_MAX_DEGREE")
    if raw is None:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"bad QSP_MAX_DEGREE {raw!r}")


# ---------------------------------------------------------------------------
# poly
# ---------------------------------------------------------------------------

def _poly_value(ns):
    from .qfield import Q
    r = QRat.q_power(ns.a)
    if ns.family == "hermite":
        return hermite_plain(ns.m, Q)
    if ns.family == "hermite-biv":
        return hermite_biv_plain(ns.m, ns.n, Q, r)
    if ns.family == "cheby":
        return cheby_deformed_plain(ns.n, Q, r)
    if ns.family == "cheby-tilde":
        return cheby_tilde_plain(ns.n, Q, r)
    if ns.family == "cheby-U":
        return cheby_biv_U_plain(ns.m, ns.n, Q, r)
    if ns.family == "serre-p":
        return serre_P(ns.N, ns.form)
    raise UsageError(f"unknown family {ns.family!r}")


def _run_poly(ns, out) -> int:
    p = _poly_value(ns)
    if ns.format == "json":
        doc = {"family": ns.family,
               "params": {"m": ns.m, "n": ns.n, "a": ns.a, "N": ns.N},
               "terms": [{"x": ex, "y": ey,
                          "coeff": str(p.terms[(ex, ey)])}
                         for (ex, ey) in sorted(p.terms, reverse=True)]}
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
    elif ns.format == "latex":
        print("\\[ %s \\]" % p.latex(), file=out)
    else:
        print(p, file=out)
    return 0


# ---------------------------------------------------------------------------
# relation
# ---------------------------------------------------------------------------

def _run_relation(ns, out) -> int:
    if ns.examples:
        print(example_table(ns.format), file=out)
        return 0
    if ns.case is None:
        raise UsageError("relation requires --case (or --examples)")
    data = make_data(ns.aij, ns.di, ns.dj)
    print(emit_relation(ns.case, data, ns.format), file=out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _genfun_suite(a_range, mutate=None) -> dict:
    points = []

    def add(name, rep):
        points.append({"params": dict(rep.params, check=name),
                       "pass": rep.passed,
                       **({"detail": rep.to_json()} if not rep.passed
                          else {})})

    first = mutate
    for a in sorted(a_range, reverse=True):
        rep = check_functional_equation("eta", a, (12,), mutate=first)
        first = None
        add("eta", rep)
    for a in (0, 1, 2):
        add("eta_tilde", check_functional_equation("eta_tilde", a, (12,)))
    add("psi", check_functional_equation("psi", 0, (10, 6)))
    for a in sorted(a_range, reverse=True):
        add("phi", check_phi_identity(2 * a, (10, 6)))
    return {"suite": "genfun", "points": points,
            "pass": all(p["pass"] for p in points)}


def _examples_suite() -> dict:
    points = [{"params": {"aij": r["aij"]}, "pass": r["match"]}
              for r in example_rows()]
    return {"suite": "examples", "points": points,
            "pass": all(p["pass"] for p in points)}


def _roundtrip_suite(a_range) -> dict:
    points = []
    for case in ("I", "II", "III"):
        for a in sorted(a_range, reverse=True):
            ok = roundtrip_ok(case, make_data(a, 1, 1))
            points.append({"params": {"case": case, "aij": a}, "pass": ok})
    return {"suite": "roundtrip", "points": points,
            "pass": all(p["pass"] for p in points)}


def _run_suite(name, a_range, mutate=None) -> dict:
    if name in ("star-case1", "star-case2", "star-case3"):
        case = {"star-case1": "I", "star-case2": "II",
                "star-case3": "III"}[name]
        rep = verify_theorem(case, a_range)
        rep["suite"] = name
        return rep
    if name == "genfun":
        return _genfun_suite(a_range, mutate)
    if name == "examples":
        return _examples_suite()
    if name == "roundtrip":
        return _roundtrip_suite(a_range)
    raise UsageError(f"unknown suite {name!r}")


def _run_verify(ns, out) -> int:
    depth = _max_degree(4)
    a_range = [a for a in _parse_range(ns.aij_range) if -a <= depth]
    mutate = None
    if ns.mutate is not None:
        try:
            mutate = tuple(int(x) for x in ns.mutate.split(","))
        except ValueError:
            raise UsageError(f"bad --mutate {ns.mutate!r}")
    if ns.suite == "all":
        points = []
        ok = True
        for name in _SUITES[:-1]:
            rep = _run_suite(name, a_range, mutate)
            ok = ok and rep["pass"]
            for pt in rep["points"]:
                pt["params"] = dict(pt["params"], suite=rep["suite"])
                points.append(pt)
        report = {"suite": "all", "points": points, "pass": ok}
    else:
        report = _run_suite(ns.suite, a_range, mutate)
    report["points"].sort(key=lambda p: json.dumps(p["params"],
                                                   sort_keys=True))
    if ns.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        for pt in report["points"]:
            mark = "ok  " if pt["pass"] else "FAIL"
            print(f"[{mark}] {json.dumps(pt['params'], sort_keys=True)}",
                  file=out)
        print(("PASS" if report["pass"] else "FAIL")
              + f" suite={report['suite']} points={len(report['points'])}",
              file=out)
    return 0 if report["pass"] else 1


# ---------------------------------------------------------------------------

def execute(ns, out=None) -> int:
    out = out or sys.stdout
    if ns.command == "poly":
        return _run_poly(ns, out)
    if ns.command == "relation":
        return _run_relation(ns, out)
    if ns.command == "verify":
        return _run_verify(ns, out)
    raise UsageError(f"unknown command {ns.command!r}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        ns = parse_args(argv)
        return execute(ns)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except PoleInCoefficient as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
