"""Command-line front end.

Every command prints a JSON run report (``--pretty`` switches to a plain
text rendering).  Exit codes: 0 success, 2 bad input, 3 unmet mathematical
precondition, 4 a failed check or internal inconsistency.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any, Sequence

from . import __version__
from ._accel import backend
from .chars import character_table, guard_table, isogredience_count, tbft_check, twisted_coinvariants_dimension
from .corpus import CORPUS, corpus_group
from .dynamics import gauss_congruence_check, periodic_point_accounting, reidemeister_sequence
from .errors import ConsistencyError, InputError, PreconditionError, InfiniteValueEncountered
from .group import enumerate_automorphisms, identity_automorphism
from .io import jsonable, load_automorphism, load_group, load_matrix
from .lattice import INFINITY, spectrum_search
from .twisted import reidemeister_partition, twisted_stabilizer
from .verify import faulty_map, verify_corpus

EXIT_OK, EXIT_FAIL_CHECK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 4, 2, 3, 4


class RunReport:
    def __init__(self, command: str, inputs: dict[str, Any]):
        self.command = command
        self.inputs = inputs
        self.results: dict[str, Any] = {}
        self.checks: list[dict] = []
        self._start = time.perf_counter()

    def add_check(self, check, **context) -> None:
        self.checks.append({**context, **check.to_dict()})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        digest = hashlib.sha256(json.dumps(jsonable(self.inputs), sort_keys=True).encode()).hexdigest()
        return jsonable({
            "command": self.command,
            "inputs_digest": digest,
            "results": self.results,
            "checks": self.checks,
            "passed": self.passed,
            "wall_time": round(time.perf_counter() - self._start, 6),
        })


def _read_source(arg: str | None):
    """Inputs may be corpus names, inline JSON or file paths; digest their content."""
    if arg is None:
        return None
    if arg in CORPUS or arg.lstrip().startswith(("{", "[")):
        return arg
    try:
        with open(arg) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {arg}: {exc.strerror}") from None


def _group_and_aut(args):
    G = load_group(_read_source(args.group))
    if getattr(args, "aut", None):
        phi = load_automorphism(G, _read_source(args.aut))
    elif getattr(args, "aut_index", None) is not None:
        auts = enumerate_automorphisms(G)
        if not 0 <= args.aut_index < len(auts):
            raise InputError(f"automorphism index {args.aut_index} out of range 0..{len(auts) - 1}")
        phi = auts[args.aut_index]
    else:
        phi = identity_automorphism(G)
    return G, phi


def _inputs(args) -> dict:
    return {k: _read_source(v) if k in ("group", "aut", "matrix") and isinstance(v, str) else v
            for k, v in sorted(vars(args).items()) if k not in ("func", "pretty")}


def cmd_classes(args) -> RunReport:
    G, phi = _group_and_aut(args)
    rep = RunReport("classes", _inputs(args))
    part = reidemeister_partition(G, phi)
    rep.results = {
        "group": G.name, "order": G.order, "automorphism": phi.images.tolist(), "R": part.count,
        "classes": [c.tolist() for c in part.classes],
        "stabilizer_orders": [twisted_stabilizer(G, phi, int(r)).stabilizer_order for r in part.representatives],
    }
    return rep


def cmd_tbft(args) -> RunReport:
    G = load_group(_read_source(args.group))
    rep = RunReport("tbft", _inputs(args))
    table = character_table(G)
    guard = guard_table(table)
    if args.all_automorphisms:
        auts = enumerate_automorphisms(G)
    else:
        auts = [_group_and_aut(args)[1]]
    rows = []
    for i, phi in enumerate(auts):
        chk = tbft_check(G, phi, table, guard)
        row = {"index": i, "images": phi.images.tolist(), **chk.values}
        if args.deep:
            row["coinvariants_dimension"] = twisted_coinvariants_dimension(G, phi)
            rep.add_check(type(chk)("coinvariants", row["coinvariants_dimension"] == chk.values["R"],
                                    {"dimension": row["coinvariants_dimension"], "R": chk.values["R"]}), automorphism=i)
        rows.append(row)
        rep.add_check(chk, automorphism=i)
    rep.results = {"group": G.name, "order": G.order, "primes": [table.prime, guard.prime],
                   "automorphisms": len(auts), "rows": rows}
    return rep


def cmd_spectrum(args) -> RunReport:
    rep = RunReport("spectrum", _inputs(args))
    if args.value_bound < 1 or args.search_bound < 0:
        raise InputError("bounds must be positive")
    res = spectrum_search(args.family, args.value_bound, args.search_bound, args.n)
    rep.results = res.to_dict()
    return rep


def cmd_congruence(args) -> RunReport:
    rep = RunReport("congruence", _inputs(args))
    if args.matrix:
        source = load_matrix(_read_source(args.matrix))
    elif args.group:
        source = _group_and_aut(args)
    else:
        raise InputError("congruence needs --matrix or --group")
    seq = reidemeister_sequence(source, args.max_n)
    infinite = [n for n in range(1, args.max_n + 1) if seq[n] == INFINITY]
    if infinite:
        raise InfiniteValueEncountered(f"R(phi^{infinite[0]}) is infinite (first infinite iterate n = {infinite[0]})")
    rows = []
    for n in range(1, args.max_n + 1):
        chk = gauss_congruence_check(seq, n)
        rows.append({"n": n, "R": seq[n], "sum": chk.values["sum"], "quotient": chk.values["quotient"],
                     "passed": chk.passed})
        rep.add_check(chk)
        if args.periods:
            counts, pchk = periodic_point_accounting(source, n)
            rows[-1]["P"] = pchk.values["P"]
            rep.add_check(pchk)
    rep.results = {"sequence": seq.values, "rows": rows}
    return rep


def cmd_isogredience(args) -> RunReport:
    G, phi = _group_and_aut(args)
    rep = RunReport("isogredience", _inputs(args))
    S, chk = isogredience_count(G, phi)
    rep.results = {"group": G.name, "S": S, "R_quotient_by_center": chk.values["R_quotient_by_center"]}
    rep.add_check(chk)
    return rep


def cmd_char_table(args) -> RunReport:
    G = load_group(_read_source(args.group))
    rep = RunReport("char-table", _inputs(args))
    T = character_table(G, lift=args.exact)
    rep.results = {"group": G.name, **T.to_dict()}
    if args.exact:
        rep.results["complex"] = [[[round(v.real, 6), round(v.imag, 6)] for v in row]
                                  for row in T.lift.complex_table()]
    return rep


def cmd_verify_corpus(args) -> RunReport:
    rep = RunReport("verify-corpus", _inputs(args))
    extra = {}
    if args.inject_faulty:
        extra = {"S3": [faulty_map(corpus_group("S3"))]}
    report = verify_corpus(args.max_order, extra=extra)
    for r in report.records:
        if not r.check.passed:
            rep.add_check(r.check, group=r.group, automorphism=r.automorphism)
    rep.results = {"max_order": args.max_order, "summary": report.summary(),
                   "failures": [f"{r.group} automorphism {r.automorphism}: {r.check.name}" for r in report.failures()]}
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reidemeister", description="Twisted conjugacy classes and Reidemeister numbers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend()} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp, aut=True):
        sp.add_argument("group", help="corpus name, group JSON file or inline JSON")
        if aut:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--aut", help="automorphism JSON file or inline JSON (default: identity)")
            g.add_argument("--aut-index", type=int, help="index into the sorted automorphism list")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--pretty", action="store_true", help="human-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("classes", cmd_classes, "Reidemeister classes of one automorphism")
    group_args(sp)
    sp = add("tbft", cmd_tbft, "compare R(phi) with the number of fixed irreducible characters")
    group_args(sp)
    sp.add_argument("--all-automorphisms", action="store_true")
    sp.add_argument("--deep", action="store_true", help="also compute the twisted coinvariant dimension")
    sp = add("spectrum", cmd_spectrum, "Reidemeister spectrum witnesses")
    sp.add_argument("--family", required=True, choices=["Z", "Zn", "Heisenberg"])
    sp.add_argument("--n", type=int, default=2, help="rank for the Zn family")
    sp.add_argument("--value-bound", type=int, default=20)
    sp.add_argument("--search-bound", type=int, default=6)
    sp = add("congruence", cmd_congruence, "Gauss congruences for R(phi^n)")
    sp.add_argument("--matrix", help="matrix JSON file or inline JSON")
    sp.add_argument("--group")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--aut")
    g.add_argument("--aut-index", type=int)
    sp.add_argument("--max-n", type=int, default=12)
    sp.add_argument("--periods", action="store_true", help="also account periodic points on the dual")
    sp = add("isogredience", cmd_isogredience, "isogredience classes of an outer class")
    group_args(sp)
    sp = add("char-table", cmd_char_table, "character table mod a Dixon prime")
    group_args(sp, aut=False)
    sp.add_argument("--exact", action="store_true", help="lift values to cyclotomic integers")
    sp = add("verify-corpus", cmd_verify_corpus, "run every identity over the bundled corpus")
    sp.add_argument("--max-order", type=int, default=64)
    sp.add_argument("--inject-faulty", action="store_true", help="append a non-homomorphism to S3 to exercise failure reporting")
    return p


def _render(report: dict) -> str:
    lines = [f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for key, val in report["results"].items():
        if isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(v)}" for v in val)
        else:
            lines.append(f"{key}: {json.dumps(val)}")
    for c in report["checks"]:
        if not c["passed"]:
            lines.append(f"FAILED {json.dumps(c)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    out = report.to_dict()
    print(_render(out) if args.pretty else json.dumps(out, indent=None, sort_keys=False))
    return EXIT_OK if report.passed else EXIT_FAIL_CHECK


if __name__ == "__main__":
    sys.exit(main())
