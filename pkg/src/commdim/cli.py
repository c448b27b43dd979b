"""Command-line interface: construction, certification, search and bounds.

Every subcommand prints a single JSON document on stdout (stderr is for
logs), exits 0 on success, 1 on domain errors with a one-line
{"error": ...}, and 2 on budget aborts.  All randomness flows from an
explicit --seed, so runs are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import StructureConstantAlgebra, verify_axioms
from .bounds import FIELD_CLASSES, bound_table, exceptional_entries, simple_lie_data
from .construct import (
    build_assoc_from_forms,
    build_lie_from_forms,
    extremal_params,
    matrix_commutative_subalgebra,
    unitalize,
)
from .errors import CertificationFailed, EnumerationTooLarge
from .forms import FormTuple, GenericityCertificate, certify_no_isotropic, reverify_certificate
from .gf import DEFAULT_ENUM_BUDGET, PrimeField
from .search import (
    DEFAULT_SEARCH_BUDGET,
    class2_exact_result,
    greedy_abelian_class2,
    max_abelian_exact,
)


def _emit(obj, out_path: str | None = None) -> None:
    text = json.dumps(obj)
    print(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


class _Parser(argparse.ArgumentParser):
    # usage errors should also be machine readable on stdout
    def error(self, message):
        print(json.dumps({"error": message}))
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="commdim")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="parameter picker for a target abelian bound")
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("certify", help="sample-and-certify a form tuple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-attempts", type=int, default=256)
    p.add_argument("--kind", choices=("alternating", "symmetric", "general"), default="alternating")
    p.add_argument("--mode", choices=("isotropic", "symmetric-restriction"), default="isotropic")
    p.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("construct", help="build an algebra from a certificate or form tuple")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--kind", choices=("lie", "assoc"), required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("search", help="maximal abelian subalgebra dimension")
    p.add_argument("--alg", required=True)
    p.add_argument("--mode", choices=("exact", "class2", "greedy"), required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("bounds", help="closed-form bound report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=FIELD_CLASSES, required=True)
    p.add_argument("--c", default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("simple-table", help="simple-algebra dimension table")
    p.add_argument("--type", default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--max-rank", type=int, default=8)

    p = sub.add_parser("matrix-comm", help="matrix algebra with a commutative subalgebra")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--construction", choices=("diagonal", "corner"), required=True)

    p = sub.add_parser("unitalize", help="adjoin a two-sided identity")
    p.add_argument("--alg", required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify", help="check the algebra axioms")
    p.add_argument("--alg", required=True)

    p = sub.add_parser("reverify", help="replay a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--jobs", type=int, default=1)

    return ap


def _run(args) -> int:
    cmd = args.command
    if cmd == "params":
        _emit(extremal_params(args.s).to_json())
        return 0

    if cmd == "certify":
        if args.seed is None:
            raise ValueError("certify requires an explicit --seed")
        cert = certify_no_isotropic(
            args.n,
            args.t,
            args.k,
            PrimeField(args.p),
            seed=args.seed,
            max_attempts=args.max_attempts,
            kind=args.kind,
            mode=args.mode,
            budget=args.budget,
            jobs=args.jobs,
        )
        _emit(cert.to_json(), args.output)
        return 0

    if cmd == "construct":
        forms = FormTuple.from_json(_load_json(args.source))
        alg = build_lie_from_forms(forms) if args.kind == "lie" else build_assoc_from_forms(forms)
        _emit(alg.to_json(), args.output)
        return 0

    if cmd == "search":
        alg = StructureConstantAlgebra.from_json(_load_json(args.alg))
        if args.mode == "exact":
            budget = args.budget if args.budget is not None else DEFAULT_SEARCH_BUDGET
            res = max_abelian_exact(alg, budget=budget)
            _emit(res.to_json())
            return 0 if res.exact else 2
        if args.mode == "class2":
            budget = args.budget if args.budget is not None else DEFAULT_ENUM_BUDGET
            res = class2_exact_result(alg, budget=budget, jobs=args.jobs)
        else:
            res = greedy_abelian_class2(alg)
        _emit(res.to_json())
        return 0

    if cmd == "bounds":
        c = Fraction(args.c) if args.c is not None else None
        report = bound_table(args.n, args.field, c=c)
        if args.format == "table":
            print(report.table())
        else:
            _emit(report.to_json())
        return 0

    if cmd == "simple-table":
        if args.type is not None:
            entries = [simple_lie_data(args.type, args.rank)]
        else:
            entries = exceptional_entries()
            for typ in ("A", "B", "C", "D"):
                lo = {"A": 1, "B": 3, "C": 2, "D": 4}[typ]
                for rank in range(lo, args.max_rank + 1):
                    entries.append(simple_lie_data(typ, rank))
        _emit([e.to_json() for e in entries])
        return 0

    if cmd == "matrix-comm":
        ambient, sub = matrix_commutative_subalgebra(args.r, PrimeField(args.p), args.construction)
        _emit({"ambient": ambient.to_json(), "sub": sub.to_json(), "sub_dim": sub.dim})
        return 0

    if cmd == "unitalize":
        alg = StructureConstantAlgebra.from_json(_load_json(args.alg))
        _emit(unitalize(alg).to_json(), args.output)
        return 0

    if cmd == "verify":
        alg = StructureConstantAlgebra.from_json(_load_json(args.alg))
        report = verify_axioms(alg)
        _emit(report.to_json())
        return 0 if report.passed else 1

    if cmd == "reverify":
        cert = GenericityCertificate.from_json(_load_json(args.cert))
        ok = reverify_certificate(cert, jobs=args.jobs)
        _emit({"reverified": ok})
        return 0 if ok else 1

    raise ValueError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # raised by argparse for usage errors and --help
        return int(exc.code or 0)
    try:
        return _run(args)
    except EnumerationTooLarge as exc:
        print(json.dumps({"error": str(exc)}))
        return 2
    except (ValueError, KeyError, OSError, CertificationFailed, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
