"""Command-line interface.

Commands: ``closure``, ``classify``, ``witness``, ``verify``, ``catalog``.
Every run writes a single JSON document to standard output; the ``results``
object is deterministic for a fixed input, timings live outside it.  Exit
codes: 0 success, 1 usage error, 2 precondition error, 3 internal defect.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import family_syntax_examples, parse_family, realize
from .classify import certificate_summary, classify_nilpotent, not_two_closed_witness
from .errors import CycleParseError, InternalDefect, PreconditionError
from .group import PermGroup
from .orbital import is_two_closed_on, orbital_partition, two_closure
from .perm import parse_cycles
from .verify import SUITES


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's default 2
        raise UsageError(message)


def parse_group_document(text: str, source: str = "<input>") -> tuple[PermGroup, dict]:
    """Parse a group spec document: degree, 1-based cycle generators, a name.

    Malformed generators are reported with their list position and the column
    inside the cycle string.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{source}: not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise PreconditionError(f"{source}: expected an object with degree and generators")
    degree = document.get("degree")
    if not isinstance(degree, int) or degree < 1:
        raise PreconditionError(f"{source}: degree must be a positive integer")
    raw_generators = document.get("generators", [])
    if not isinstance(raw_generators, list) or not all(isinstance(s, str) for s in raw_generators):
        raise PreconditionError(f"{source}: generators must be a list of cycle strings")
    generators = []
    for line, text_gen in enumerate(raw_generators, start=1):
        try:
            generators.append(parse_cycles(text_gen, degree))
        except CycleParseError as exc:
            raise PreconditionError(
                f"{source}: generator {line}, column {exc.column}: {exc.reason}"
            ) from exc
    name = document.get("name")
    echo = {
        "name": name if isinstance(name, str) else None,
        "degree": degree,
        "generators": list(raw_generators),
    }
    return PermGroup(degree, tuple(generators)), echo


def _load_group(args) -> tuple[PermGroup, dict]:
    if getattr(args, "family", None):
        spec = parse_family(args.family)
        group = realize(spec)
        echo = {
            "family": spec.name,
            "degree": group.degree,
            "generators": [g.cycle_string() for g in group.generators],
        }
        return group, echo
    path = args.input
    with open(path, "r", encoding="utf-8") as handle:
        return parse_group_document(handle.read(), source=path)


def _cmd_closure(args) -> dict:
    group, echo = _load_group(args)
    partition = orbital_partition(group)
    closure = two_closure(group)
    closed, witness = is_two_closed_on(group)
    return {
        "command": "closure",
        "input": echo,
        "results": {
            "degree": group.degree,
            "order": group.order,
            "rank": partition.rank,
            "closure_order": closure.order,
            "closed": closed,
            "witness": witness.cycle_string() if witness is not None else None,
            "closure_generators": [g.cycle_string() for g in closure.strong_generators],
        },
    }


def _cmd_classify(args) -> dict:
    group, echo = _load_group(args)
    verdict = classify_nilpotent(group)
    return {
        "command": "classify",
        "input": echo,
        "results": {
            "order": group.order,
            "verdict": verdict.status,
            "reason": verdict.reason,
            "justified_by": "certificate" if verdict.certificate else "classification-theorem",
            "certificate": certificate_summary(verdict.certificate) if verdict.certificate else None,
        },
    }


def _cmd_witness(args) -> dict:
    group, echo = _load_group(args)
    certificate = not_two_closed_witness(group)
    return {
        "command": "witness",
        "input": echo,
        "results": {
            "order": group.order,
            "certificate": certificate_summary(certificate),
        },
    }


def _cmd_verify(args) -> dict:
    suite = SUITES[args.suite]
    results = suite(seed=args.seed, max_degree=args.max_degree)
    checks = [
        {"name": r.name, "passed": r.passed, "detail": r.detail}
        for r in results
    ]
    all_passed = all(r.passed for r in results)
    report = {
        "command": "verify",
        "input": {"suite": args.suite, "seed": args.seed, "max_degree": args.max_degree},
        "results": {"checks": checks, "all_passed": all_passed},
    }
    if not all_passed:
        raise _VerificationFailed(report)
    return report


class _VerificationFailed(Exception):
    def __init__(self, report: dict) -> None:
        super().__init__("verification failed")
        self.report = report


def _cmd_catalog(args) -> dict:
    return {
        "command": "catalog",
        "input": {},
        "results": {
            "families": [
                "C<n>: cyclic of order n",
                "D<2n>: dihedral of order 2n (n >= 3)",
                "SD<2^n>: semidihedral of order 2^n (n >= 4)",
                "Q<2^n>: generalized quaternion of order 2^n (n >= 3)",
                "E<p^3>: extraspecial of order p^3 and exponent p (p odd)",
                "a x b x ...: direct product acting on the disjoint union",
            ],
            "examples": family_syntax_examples(),
        },
    }


def build_parser() -> _Parser:
    parser = _Parser(prog="twoclosure", description="2-closure computations for finite permutation groups")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    closure = sub.add_parser("closure", help="orbital partition and 2-closure of a group")
    closure.add_argument("-i", "--input", required=True, help="group spec file (JSON)")
    closure.set_defaults(handler=_cmd_closure, family=None)

    classify = sub.add_parser("classify", help="nilpotent 2-closedness verdict")
    source = classify.add_mutually_exclusive_group(required=True)
    source.add_argument("-i", "--input", help="group spec file (JSON)")
    source.add_argument("--family", help="catalog family, e.g. Q8xC2")
    classify.set_defaults(handler=_cmd_classify)

    witness = sub.add_parser("witness", help="non-2-closedness certificate for a family")
    witness.add_argument("--family", required=True, help="catalog family, e.g. D8")
    witness.set_defaults(handler=_cmd_witness, input=None)

    verify = sub.add_parser("verify", help="run a property suite")
    verify.add_argument("--suite", required=True, choices=sorted(SUITES))
    verify.add_argument("--max-degree", type=int, default=7, dest="max_degree")
    verify.add_argument("--seed", type=int, default=7)
    verify.set_defaults(handler=_cmd_verify)

    catalog = sub.add_parser("catalog", help="list the family syntax")
    catalog.add_argument("--list", action="store_true")
    catalog.set_defaults(handler=_cmd_catalog)

    return parser


def _emit(report: dict, started: float) -> None:
    report["timing"] = {"seconds": round(time.monotonic() - started, 6)}
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def main(argv: list[str] | None = None) -> int:
    started = time.monotonic()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1
    try:
        report = args.handler(args)
    except _VerificationFailed as exc:
        _emit(exc.report, started)
        return 3
    except PreconditionError as exc:
        _emit({"command": args.subcommand, "error": {"kind": "precondition", "message": str(exc)}}, started)
        return 2
    except FileNotFoundError as exc:
        _emit({"command": args.subcommand, "error": {"kind": "precondition", "message": str(exc)}}, started)
        return 2
    except InternalDefect as exc:
        _emit({"command": args.subcommand, "error": {"kind": "defect", "message": str(exc)}}, started)
        return 3
    _emit(report, started)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
