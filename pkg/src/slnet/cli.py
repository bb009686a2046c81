"""Command line front end: validate, analyze, simulate, compare.

Exit codes are a total function of the outcome class:
0 pass, 1 semantic failure, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import NetworkAnalysis, NoNeutralError, bound_network
from .cycles import CycleStructure
from .errors import SchemaError
from .operators import (MAX_CLI_ELEMENTS, BUILTIN_KINDS, MalformedOperatorError,
                        NotSemilatticeError, OperatorTable, builtin_operator,
                        find_absorbent, find_neutral, operator_from_json)
from .phasespace import (DEFAULT_STATE_BUDGET, BudgetExceededError, NetworkSpec,
                         enumerate_phase_space, network_from_json, run_checks)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def _operator_from_args(args) -> OperatorTable:
    if args.file and args.op:
        raise SchemaError("give either an operator file or --op, not both")
    if args.file:
        return operator_from_json(_load_json(args.file))
    if args.op:
        if not 1 <= args.m <= MAX_CLI_ELEMENTS:
            raise SchemaError(f"--m must be in [1, {MAX_CLI_ELEMENTS}]")
        return builtin_operator(args.op, args.m)
    raise SchemaError("missing operator: give a file or --op KIND")


def cmd_validate(args) -> int:
    op = _operator_from_args(args)
    report = op.axioms
    payload = {
        "commutative": report.commutative,
        "associative": report.associative,
        "idempotent": report.idempotent,
        "witnesses": {k: list(v) for k, v in report.witnesses.items()},
        "valid": report.all_hold,
    }
    if report.all_hold:
        payload["neutral"] = find_neutral(op)
        payload["absorbent"] = find_absorbent(op)
    if args.json:
        print(json.dumps(payload))
    else:
        label = op.name or "operator"
        for axiom in ("commutative", "associative", "idempotent"):
            if payload[axiom]:
                print(f"{axiom}: ok")
            else:
                witness = report.witnesses[axiom]
                print(f"{axiom}: FAIL at {witness}")
        if report.all_hold:
            neutral = payload["neutral"]
            print(f"{label} is a semilattice operator "
                  f"(neutral: {'none' if neutral is None else neutral}, "
                  f"absorbent: {payload['absorbent']})")
        else:
            print(f"{label} is NOT a semilattice operator")
    return EXIT_PASS if report.all_hold else EXIT_FAIL


def _structure_json(structure: CycleStructure | None):
    return None if structure is None else structure.to_json_mapping()


def build_report(analysis: NetworkAnalysis, oracle: CycleStructure | None = None,
                 verdict: str | None = None) -> dict:
    decomposition = analysis.decomposition
    loop_of = dict(zip(analysis.nontrivial, analysis.loop_numbers))
    scc = [{"size": len(comp),
            "trivial": decomposition.trivial[i],
            "loop": loop_of.get(i)}
           for i, comp in enumerate(decomposition.components)]
    upper = analysis.upper if analysis.upper is not None else analysis.product
    report = {
        "scc": scc,
        "loop_number": analysis.loop_number,
        "poset_leq": [list(row) for row in analysis.poset.leq],
        "component_structures": [s.to_json_mapping() for s in analysis.structures],
        "l_poly": analysis.l_poly.render(),
        "u_poly": analysis.u_poly.render(),
        "lower": _structure_json(analysis.lower),
        "upper": _structure_json(upper),
        "product": _structure_json(analysis.product),
        "exact": analysis.exact,
        "warnings": list(analysis.warnings),
    }
    if oracle is not None:
        report["oracle"] = oracle.to_json_mapping()
    if verdict is not None:
        report["verdict"] = verdict
    return report


def _print_report(report: dict) -> None:
    print("strongly connected components:")
    for i, comp in enumerate(report["scc"]):
        loop = comp["loop"]
        tag = "trivial" if comp["trivial"] else f"loop {loop}"
        print(f"  #{i}: {comp['size']} vertex(es), {tag}")
    print(f"loop number: {report['loop_number']}")
    print(f"L = {report['l_poly']}")
    print(f"U = {report['u_poly']}")
    for label, mapping in (("lower", report["lower"]),
                           ("upper", report["upper"]),
                           ("product", report["product"])):
        if mapping is None:
            print(f"{label} bound: (not applicable)")
        else:
            print(f"{label} bound: "
                  f"{CycleStructure.from_json_mapping(mapping).render()}")
    if report["exact"]:
        print("graph is strongly connected: bounds are exact")
    if "oracle" in report:
        print(f"oracle: "
              f"{CycleStructure.from_json_mapping(report['oracle']).render()}")
    if "verdict" in report:
        print(f"verdict: {report['verdict']}")
    for warning in report["warnings"]:
        print(f"warning: {warning}")


def _network_from_args(args) -> NetworkSpec:
    unchecked = getattr(args, "unchecked", False)
    try:
        return network_from_json(_load_json(args.file), unchecked=unchecked)
    except NotSemilatticeError as exc:
        raise SchemaError(
            f"{exc} (use --unchecked to simulate it anyway)") from None
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None


def _analyze(net: NetworkSpec) -> NetworkAnalysis:
    try:
        return bound_network(net)
    except NoNeutralError:
        return bound_network(net, require_neutral=False)


def cmd_analyze(args) -> int:
    net = _network_from_args(args)
    analysis = _analyze(net)
    report = build_report(analysis)
    if args.json:
        print(json.dumps(report))
    else:
        _print_report(report)
    return EXIT_PASS


def cmd_simulate(args) -> int:
    net = _network_from_args(args)
    space = enumerate_phase_space(net, args.budget)
    structure = space.cycle_structure()
    if args.check:
        reports = run_checks(net, args.budget)
        all_ok = all(r.ok for r in reports)
        if args.json:
            print(json.dumps({
                "oracle": structure.to_json_mapping(),
                "checks": {r.name: {"ok": r.ok, "detail": r.detail}
                           for r in reports},
            }))
        else:
            print(f"cycle structure: {structure.render()} "
                  f"({space.state_count} states)")
            for r in reports:
                print(f"check {r.name}: {'ok' if r.ok else 'FAIL'} ({r.detail})")
        return EXIT_PASS if all_ok else EXIT_FAIL
    if args.json:
        print(json.dumps(structure.to_json_mapping()))
    else:
        print(f"cycle structure: {structure.render()} "
              f"({space.state_count} states)")
    return EXIT_PASS


def _sandwich_violations(lower, oracle, upper, product):
    lengths = set(oracle.lengths()) | set(product.lengths())
    if lower is not None:
        lengths |= set(lower.lengths())
    if upper is not None:
        lengths |= set(upper.lengths())
    violations = []
    for k in sorted(lengths):
        got = oracle.coefficient(k)
        low = lower.coefficient(k) if lower is not None else None
        high = upper.coefficient(k) if upper is not None else None
        if low is not None and not low <= got:
            violations.append((k, low, got, high))
        elif high is not None and not got <= high:
            violations.append((k, low, got, high))
        elif got > product.coefficient(k):
            violations.append((k, low, got, product.coefficient(k)))
    return violations


def cmd_compare(args) -> int:
    net = _network_from_args(args)
    analysis = _analyze(net)
    oracle = enumerate_phase_space(net, args.budget).cycle_structure()
    violations = _sandwich_violations(
        analysis.lower, oracle, analysis.upper, analysis.product)
    verdict = "pass" if not violations else "fail"
    report = build_report(analysis, oracle=oracle, verdict=verdict)
    if args.json:
        print(json.dumps(report))
    else:
        _print_report(report)
        for k, low, got, high in violations:
            print(f"violation at length {k}: lower={low} oracle={got} "
                  f"upper={high}")
    return EXIT_PASS if verdict == "pass" else EXIT_FAIL


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slnet",
        description="Exact limit-cycle analysis for semilattice networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", help="check the semilattice axioms of an operator")
    p_validate.add_argument("file", nargs="?", help="operator JSON file")
    p_validate.add_argument("--op", choices=BUILTIN_KINDS,
                            help="use a builtin operator instead of a file")
    p_validate.add_argument("--m", type=int, default=2,
                            help="element count for builtin operators")
    p_validate.add_argument("--json", action="store_true")
    p_validate.set_defaults(handler=cmd_validate)

    p_analyze = sub.add_parser(
        "analyze", help="closed-form cycle structure bounds from the graph")
    p_analyze.add_argument("file", help="network JSON file")
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.set_defaults(handler=cmd_analyze)

    p_simulate = sub.add_parser(
        "simulate", help="exhaustive phase-space enumeration")
    p_simulate.add_argument("file", help="network JSON file")
    p_simulate.add_argument("--json", action="store_true")
    p_simulate.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET,
                            help="maximum number of states to enumerate")
    p_simulate.add_argument("--check", action="store_true",
                            help="also run every applicable structural check")
    p_simulate.add_argument("--unchecked", action="store_true",
                            help="accept an operator that fails the axioms")
    p_simulate.set_defaults(handler=cmd_simulate)

    p_compare = sub.add_parser(
        "compare", help="verify bounds against the enumeration oracle")
    p_compare.add_argument("file", help="network JSON file")
    p_compare.add_argument("--json", action="store_true")
    p_compare.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p_compare.add_argument("--unchecked", action="store_true",
                           help="accept an operator that fails the axioms")
    p_compare.set_defaults(handler=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (MalformedOperatorError, NotSemilatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
