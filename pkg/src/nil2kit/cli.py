"""``nil2kit`` command line. Exit codes: 0 pass, 1 check failure, 2 usage or input error."""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .abelian import is_injective, pushout
from .actions import (
    ActionError,
    semidirect,
    validate_group_action,
    validate_nil2_action,
)
from .automorphisms import AutSearchTooLarge, aut_group, central_auts, inner_auts
from .catalog import load_catalog
from .descriptors import DescriptorError, file_digest, load_action, load_group, load_span, read_json
from .freenil2 import flat, lacc_counterexample, structure_report
from .groups import DEFAULT_BUDGET, BudgetExceeded, FiniteGroup, HomomorphismError, format_class, lower_central_series, nilpotency_class
from .weakrep import AdmissibleBoundExceeded, build_T, tau_injectivity_check

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _finite(G, what: str) -> FiniteGroup:
    if not isinstance(G, FiniteGroup):
        raise UsageError(f"{what} must be a finite group")
    return G


def _group(path: str, args) -> FiniteGroup:
    return _finite(load_group(read_json(path), budget=args.budget), path)


def _class_summary(G: FiniteGroup) -> dict:
    return {
        "name": G.name,
        "order": G.order,
        "nilpotency_class": format_class(nilpotency_class(G)),
        "lower_central_series": [S.order for S in lower_central_series(G)],
    }


# ---------------------------------------------------------------------------
# subcommands; each returns (report, passed)


def cmd_verify_paper(args) -> tuple[dict, bool]:
    from .checks import run_all

    only = [int(n) for n in args.only.split(",")] if args.only else None
    if only and any(n not in range(1, 10) for n in only):
        raise UsageError("--only takes criterion numbers 1-9")
    report = run_all(seed=args.seed, only=only)
    return report, report["pass"]


def cmd_aut(args) -> tuple[dict, bool]:
    X = _group(args.group, args)
    A = aut_group(X)
    rep: dict[str, Any] = {"command": "aut", "inputs": {args.group: file_digest(args.group)}, "group": _class_summary(X), "aut_order": A.order}
    if args.central:
        C = central_auts(X)
        rep["aut_c"] = {"order": C.order, "nilpotency_class": format_class(nilpotency_class(C.group)), "equals_aut": C.order == A.order}
        if args.elements:
            rep["aut_c"]["elements"] = [list(p) for p in C.elements]
    if args.inner:
        inn = inner_auts(X)
        rep["inner"] = {"order": inn.subgroup.order, "center_order": X.order // inn.subgroup.order}
        if args.elements:
            rep["inner"]["elements"] = [list(p) for p in inn.perms]
    if args.elements:
        rep["elements"] = [X.format(g) for g in X]
        rep["aut_elements"] = [list(p) for p in A.elements]
    return rep, True


def _load_action_args(args):
    B = _group(args.actor, args)
    X = _group(args.target, args)
    xi = load_action(read_json(args.table), B, X)
    inputs = {p: file_digest(p) for p in (args.actor, args.target, args.table)}
    return B, X, xi, inputs


def cmd_action_check(args) -> tuple[dict, bool]:
    B, X, xi, inputs = _load_action_args(args)
    group = validate_group_action(xi)
    verdicts = [{"check": "group action", **group.to_json()}]
    if group and args.level == "nil2":
        nil2 = validate_nil2_action(xi)
        verdicts.append({"check": "2-nilpotent action", **nil2.to_json()})
    ok = all(v["valid"] for v in verdicts)
    rep = {"command": "action check", "inputs": inputs, "actor": B.name, "target": X.name, "level": xi.level, "verdicts": verdicts, "pass": ok}
    return rep, ok


def cmd_semidirect(args) -> tuple[dict, bool]:
    if args.descriptor:
        G = _group(args.descriptor, args)
        inputs = {args.descriptor: file_digest(args.descriptor)}
    elif args.actor and args.target and args.table:
        _, _, xi, inputs = _load_action_args(args)
        G = semidirect(xi)
    else:
        raise UsageError("give a semidirect descriptor or --actor, --target and --table")
    summary = _class_summary(G)
    c = nilpotency_class(G)
    rep = {"command": "semidirect", "inputs": inputs, **summary, "class_le_2": c is not None and c <= 2}
    return rep, True


def cmd_amalgam(args) -> tuple[dict, bool]:
    f, g = load_span(read_json(args.span))
    P, jl, jr = pushout(f, g)
    monos = is_injective(f) and is_injective(g)
    legs = [is_injective(jl), is_injective(jr)]
    rep = {
        "command": "amalgam",
        "inputs": {args.span: file_digest(args.span)},
        "pushout": P.describe(),
        "span_injective": [is_injective(f), is_injective(g)],
        "legs_injective": legs,
        "pass": all(legs) or not monos,
    }
    return rep, rep["pass"]


def cmd_weakrep(args) -> tuple[dict, bool]:
    X = _group(args.group, args)
    c = nilpotency_class(X)
    if c is None or c > 2:
        raise UsageError(f"{X.name} is not 2-nilpotent")
    catalog = load_catalog(args.catalog)
    wr = build_T(X)
    rep = tau_injectivity_check(X, catalog, wr)
    inputs = {args.group: file_digest(args.group)}
    if args.catalog:
        inputs[args.catalog] = file_digest(args.catalog)
    return {"command": "weakrep", "inputs": inputs, **rep}, rep["pass"]


def cmd_flat(args) -> tuple[dict, bool]:
    bs = [s for s in args.b.split(",") if s]
    xs = [s for s in args.x.split(",") if s]
    if not bs or not xs:
        raise UsageError("--b and --x need at least one generator name each")
    try:
        F = flat(bs, xs)
    except ValueError as e:
        raise UsageError(str(e)) from e
    return {"command": "flat", "b": bs, "x": xs, **structure_report(F.kernel)}, True


def cmd_lacc(args) -> tuple[dict, bool]:
    rep = lacc_counterexample()
    return rep, rep["pass"]


# ---------------------------------------------------------------------------


def _render(rep: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(rep, dict):
        for k, v in rep.items():
            nested = (isinstance(v, dict) and v) or (isinstance(v, list) and any(isinstance(a, (dict, list)) for a in v))
            if nested:
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(rep, list):
        for item in rep:
            if isinstance(item, dict) and "check" in item:
                mark = "PASS" if item.get("pass", item.get("valid")) else "FAIL"
                lines.append(f"{pad}[{mark}] {item['check']}")
                if mark == "FAIL":
                    lines += [f"{pad}    {r}" for r in item.get("readable", [])]
            elif isinstance(item, dict) and "criterion" in item:
                mark = "PASS" if item["pass"] else "FAIL"
                lines.append(f"{pad}[{mark}] {item['criterion']}. {item['name']} ({item['seconds']}s)")
            else:
                lines += _render(item, indent) if isinstance(item, dict) else [f"{pad}- {item}"]
    else:
        lines.append(f"{pad}{rep}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the report as JSON")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, metavar="N", help="element budget for group enumeration")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, metavar="S", help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="nil2kit", description="Checks for 2-nilpotent groups and their actions.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-paper", parents=[common], help="run every acceptance criterion")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("aut", parents=[common], help="automorphism group orders")
    s.add_argument("group")
    s.add_argument("--central", action="store_true")
    s.add_argument("--inner", action="store_true")
    s.add_argument("--elements", action="store_true", help="include element lists")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("action", parents=[common], help="action validation")
    asub = s.add_subparsers(dest="action_command", required=True)
    c = asub.add_parser("check", parents=[common])
    c.add_argument("--actor", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--table", required=True, help="action descriptor")
    c.add_argument("--level", choices=("group", "nil2"), default="nil2")
    c.set_defaults(func=cmd_action_check)

    s = sub.add_parser("semidirect", parents=[common], help="order and class of a semidirect product")
    s.add_argument("descriptor", nargs="?")
    s.add_argument("--actor")
    s.add_argument("--target")
    s.add_argument("--table")
    s.set_defaults(func=cmd_semidirect)

    s = sub.add_parser("amalgam", parents=[common], help="pushout of a span of abelian groups")
    s.add_argument("span")
    s.set_defaults(func=cmd_amalgam)

    s = sub.add_parser("weakrep", parents=[common], help="weak representing object and tau checks")
    s.add_argument("group")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_weakrep)

    s = sub.add_parser("flat", parents=[common], help="structure of the flat kernel")
    s.add_argument("--b", default="b")
    s.add_argument("--x", default="x")
    s.set_defaults(func=cmd_flat)

    s = sub.add_parser("lacc", parents=[common], help="the comparison-map counterexample")
    s.set_defaults(func=cmd_lacc)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    args.json = getattr(args, "json", False)
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    args.seed = getattr(args, "seed", 0)
    if args.budget < 1:
        print("nil2kit: error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        rep, ok = args.func(args)
    except (UsageError, DescriptorError, BudgetExceeded, AutSearchTooLarge, AdmissibleBoundExceeded) as e:
        print(f"nil2kit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (HomomorphismError, ActionError) as e:
        rep = {"command": args.command, "pass": False, "error": str(e)}
        witness = getattr(e, "witness", None)
        if witness is not None:
            rep["witness"] = list(witness)
        report = getattr(e, "report", None)
        if report is not None:
            rep["witness"] = report.to_json()
        ok = False
    rep.setdefault("timings", {"total": round(time.perf_counter() - start, 3)})
    if args.json:
        print(json.dumps(rep, indent=2, default=str))
    else:
        print("\n".join(_render(rep)))
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
