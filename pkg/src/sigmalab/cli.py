"""Command-line entry point.

Four commands: validate an algebra file, run a named scenario, run the
property suite, and list what is available.  Reports are deterministic:
the same (command, seed, input) always prints byte-identical JSON.
Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .configfile import ConfigError, load_algebra_file, load_scenario_file
from .lattice import SigmaField
from .noise import (
    NoiseViolation,
    check_completion_maximality,
    check_projection_products,
    closure,
    completion,
    validate_noise_type,
)
from .report import dumps_report, scenario_report_dict, to_jsonable, write_report_outputs
from .scenarios import SCENARIOS, run_scenario
from .suite import run_suite, suite_item_names

DEFAULT_SEED = 42
DEFAULT_MAX_ATOMS = 5


def format_field(f: SigmaField) -> str:
    return "{" + " | ".join(" ".join(str(a) for a in b) for b in f.blocks) + "}"


def resolve_seed(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("SIGMA_LAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(
                f"sigma-lab: SIGMA_LAB_SEED must be an integer, got {env!r}"
            )
    return DEFAULT_SEED


def _emit(
    data: dict,
    args: argparse.Namespace,
    stem: str,
    human_lines: list[str],
    trajectories=(),
) -> None:
    if args.json:
        sys.stdout.write(dumps_report(data))
    else:
        for line in human_lines:
            print(line)
    if getattr(args, "out", None):
        written = write_report_outputs(data, Path(args.out), stem, trajectories)
        if not args.json:
            for p in written:
                print(f"wrote: {p}")


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"sigma-lab: cannot read {args.path}: {exc}", file=sys.stderr)
        return 2
    try:
        loaded = load_algebra_file(text)
    except ConfigError as exc:
        print(f"sigma-lab: {args.path}: {exc}", file=sys.stderr)
        return 2

    result = validate_noise_type(loaded.space, loaded.elements)
    name_of = {}
    for nm, f in zip(loaded.element_names, loaded.elements):
        name_of.setdefault(f, nm)

    if isinstance(result, NoiseViolation):
        data = {
            "command": "validate",
            "input": str(args.path),
            "valid": False,
            "violation": {
                "axiom": result.axiom,
                "witness": [format_field(f) for f in result.witness],
                "witness_names": [
                    name_of.get(f, "?") for f in result.witness
                ],
                "detail": result.detail,
            },
        }
        lines = [
            f"invalid: axiom {result.axiom} fails",
            f"  witness: "
            + ", ".join(
                f"{name_of.get(f, '?')}={format_field(f)}" for f in result.witness
            ),
            f"  detail: {result.detail}",
        ]
        _emit(data, args, "validate", lines)
        return 1

    algebra = result
    products_ok = check_projection_products(algebra)
    cl = closure(algebra)
    comp = completion(cl)
    cross = check_completion_maximality(cl)
    data = {
        "command": "validate",
        "input": str(args.path),
        "valid": True,
        "atom_count": loaded.space.atom_count,
        "element_count": len(algebra.elements),
        "elements": [format_field(f) for f in algebra.elements],
        "complements": {
            name_of.get(f, format_field(f)): name_of.get(
                algebra.complement(f), format_field(algebra.complement(f))
            )
            for f in algebra.elements
        },
        "projection_products_collapse": products_ok,
        "closure_size": len(cl.elements),
        "completion_size": len(comp.elements),
        "completion_equals_algebra": set(comp.elements) == set(algebra.elements),
        "maximality_cross_check": cross.agree,
    }
    lines = [
        f"valid: noise-type algebra with {len(algebra.elements)} elements "
        f"on {loaded.space.atom_count} atoms",
        f"  projection products collapse to meets: {products_ok}",
        f"  closure size {len(cl.elements)}, completion size {len(comp.elements)}"
        f" (collapses: {data['completion_equals_algebra']})",
        f"  maximality cross-check: {cross.agree}",
    ]
    _emit(data, args, "validate", lines)
    return 0 if products_ok else 1


def cmd_run(args: argparse.Namespace) -> int:
    name = args.scenario
    params: dict = {}
    p = Path(name)
    if p.is_file():
        try:
            sf = load_scenario_file(p.read_text(encoding="utf-8"))
        except ConfigError as exc:
            print(f"sigma-lab: {name}: {exc}", file=sys.stderr)
            return 2
        name, params = sf.name, dict(sf.params)
    if args.seed is not None or "seed" not in params:
        params["seed"] = resolve_seed(args.seed)
    try:
        report = run_scenario(name, params)
    except KeyError as exc:
        print(f"sigma-lab: {exc.args[0]}", file=sys.stderr)
        return 2
    data = {"command": "run", **scenario_report_dict(report)}
    lines = [f"scenario {report.scenario}: {'PASS' if report.passed else 'FAIL'}"]
    for a in report.assertions:
        mark = "PASS" if a.passed else "FAIL"
        extra = f"  [{a.witness}]" if a.witness else ""
        lines.append(f"  {mark}  {a.name}{extra}")
    for t in report.trajectories:
        lines.append(f"  trajectory {t.name}: {len(t.values)} points")
    _emit(data, args, report.scenario, lines, report.trajectories)
    return 0 if report.passed else 1


def cmd_suite(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    result = run_suite(seed, args.max_atoms)
    data = {"command": "suite", **result.to_json_dict()}
    width = max((len(i.name) for i in result.items), default=10)
    lines = [f"suite: seed={seed} max_atoms={args.max_atoms}"]
    for item in result.items:
        status = "PASS" if item.failures == 0 else "FAIL"
        line = f"  {status}  {item.name:<{width}}  {item.checks:>5} checks"
        if item.failures:
            line += f", {item.failures} failed, first: {item.first_failure}"
        lines.append(line)
    lines.append(
        f"total: {result.total_checks} checks, {result.total_failures} failures"
    )
    _emit(data, args, "suite", lines)
    return 0 if result.passed else 1


def cmd_list(args: argparse.Namespace) -> int:
    data = {
        "command": "list",
        "scenarios": sorted(SCENARIOS),
        "suite_items": suite_item_names(),
    }
    lines = ["scenarios:"]
    lines += [f"  {s}" for s in sorted(SCENARIOS)]
    lines.append("suite items:")
    lines += [f"  {s}" for s in suite_item_names()]
    _emit(data, args, "list", lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigma-lab",
        description=(
            "Exact finite-probability lab: sub-sigma-field lattices, "
            "conditional-expectation projections, noise-type algebras."
        ),
        epilog=(
            f"Default seed is {DEFAULT_SEED}; the SIGMA_LAB_SEED environment "
            "variable overrides it, and --seed overrides both."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seed: bool = True) -> None:
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--out", metavar="DIR", help="write report files to DIR")
        if seed:
            p.add_argument("--seed", type=int, default=None, help="RNG seed")

    pv = sub.add_parser("validate", help="validate a noise-type algebra file")
    pv.add_argument("path", help="algebra file")
    common(pv, seed=False)
    pv.set_defaults(fn=cmd_validate)

    pr = sub.add_parser("run", help="run a scenario by name or from a file")
    pr.add_argument("scenario", help="scenario name or scenario file")
    common(pr)
    pr.set_defaults(fn=cmd_run)

    ps = sub.add_parser("suite", help="run the property suite")
    ps.add_argument(
        "--max-atoms",
        type=int,
        default=DEFAULT_MAX_ATOMS,
        help="cap on atom counts used by suite items (0 disables every item)",
    )
    common(ps)
    ps.set_defaults(fn=cmd_suite)

    pl = sub.add_parser("list", help="list scenarios and suite items")
    common(pl, seed=False)
    pl.set_defaults(fn=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
