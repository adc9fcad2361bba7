"""Command-line front end.

Structures are declared in a workspace file (see `workspace`); commands
reference them by name.  Every command has a human-readable report and a
`--json` machine report carrying `schema_version`; predicate commands exit
0/1 with the reported boolean, errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import fraisse, homogeneity, morphisms, rees, semigroups, workspace
from .errors import CshomError, UnknownElement, UnresolvedReference
from .graphs import classify_pattern, is_homogeneous_graph
from .groups import FiniteGroup, subgroup_closure
from .rees import ReesMatrixSemigroup, RmsElement, SandwichMatrix
from .search import Deadline
from .semigroups import FiniteSemigroup

SCHEMA_VERSION = "1"


@dataclass
class CommandReport:
    lines: list[str] = field(default_factory=list)
    result: dict = field(default_factory=dict)
    predicate: Optional[bool] = None

    def say(self, text: str) -> None:
        self.lines.append(text)


def _resolve_table(ws: workspace.Workspace, name: str) -> FiniteSemigroup:
    if name in ws.semigroups:
        return ws.semigroups[name]
    if name in ws.groups:
        return FiniteSemigroup.from_group(ws.groups[name])
    if name in ws.rms:
        table, _ = semigroups.from_rees(ws.rms[name])
        return table
    raise UnresolvedReference(f"{name!r} is not a declared structure")


def _resolve_rms(ws: workspace.Workspace, name: str) -> ReesMatrixSemigroup:
    if name in ws.rms:
        return ws.rms[name]
    raise UnresolvedReference(f"{name!r} is not a declared rms")


def _parse_element(token: str) -> RmsElement:
    parts = token.split(":")
    if len(parts) != 3:
        raise UnknownElement(f"element {token!r} is not of the form i:g:l")
    try:
        col, row = int(parts[0]), int(parts[2])
    except ValueError:
        raise UnknownElement(f"element {token!r} needs integer indices") from None
    return RmsElement(col, parts[1], row)


def _matrix_lines(s: ReesMatrixSemigroup) -> list[str]:
    g = s.group
    return [" ".join(str(g.labels[x]) for x in row) for row in s.matrix.entries]


def _matrix_json(s: ReesMatrixSemigroup) -> list[list[str]]:
    g = s.group
    return [[str(g.labels[x]) for x in row] for row in s.matrix.entries]


def _element_str(x: RmsElement) -> str:
    return f"{x.col}:{x.element}:{x.row}"


def _subgroup_from_arg(group: FiniteGroup, arg: str) -> frozenset:
    labels = [tok for tok in arg.split(",") if tok]
    return subgroup_closure(group, labels)


# -- command handlers --------------------------------------------------------


def cmd_multiply(args, ws, deadline) -> CommandReport:
    s = _resolve_rms(ws, args.name)
    product = rees.multiply(s, _parse_element(args.x), _parse_element(args.y))
    rep = CommandReport()
    rep.say(_element_str(product))
    rep.result = {"product": _element_str(product)}
    return rep


def cmd_normalize(args, ws, deadline) -> CommandReport:
    s = _resolve_rms(ws, args.name)
    target, morphism = rees.normalize(s, args.col, args.row)
    rep = CommandReport()
    rep.say(f"normalized at column {args.col}, row {args.row}")
    rep.lines.extend(_matrix_lines(target))
    rep.result = {
        "col": args.col, "row": args.row,
        "matrix": _matrix_json(target),
        "left_factor": {str(k): str(v) for k, v in morphism.left_factor.items()},
        "right_factor": {str(k): str(v) for k, v in morphism.right_factor.items()},
    }
    return rep


def cmd_egens(args, ws, deadline) -> CommandReport:
    s = _resolve_rms(ws, args.name)
    egen = rees.idempotent_generated(s)
    rep = CommandReport()
    rep.say(f"group order {egen.group.order}, elements "
            + " ".join(str(x) for x in egen.group.labels))
    rep.lines.extend(_matrix_lines(egen))
    rep.result = {
        "group_order": egen.group.order,
        "group_elements": [str(x) for x in egen.group.labels],
        "matrix": _matrix_json(egen),
    }
    return rep


def cmd_green(args, ws, deadline) -> CommandReport:
    table = _resolve_table(ws, args.name)
    data = table.green()
    rep = CommandReport()

    def classes(cls):
        return [[str(table.labels[x]) for x in c] for c in cls]

    rep.say(f"R-classes: {len(data.r_classes)}  L-classes: {len(data.l_classes)}  "
            f"H-classes: {len(data.h_classes)}")
    rep.result = {
        "r_classes": classes(data.r_classes),
        "l_classes": classes(data.l_classes),
        "h_classes": classes(data.h_classes),
    }
    return rep


def cmd_coordinatize(args, ws, deadline) -> CommandReport:
    table = _resolve_table(ws, args.name)
    rms_out, mapping = semigroups.rees_coordinatize(table)
    rep = CommandReport()
    rep.say(f"group order {rms_out.group.order}, I size {len(rms_out.cols)}, "
            f"L size {len(rms_out.rows)}")
    rep.lines.extend(_matrix_lines(rms_out))
    rep.result = {
        "group_order": rms_out.group.order,
        "group_elements": [str(x) for x in rms_out.group.labels],
        "cols": len(rms_out.cols),
        "rows": len(rms_out.rows),
        "matrix": _matrix_json(rms_out),
        "mapping": {_element_str(k): str(v) for k, v in mapping.items()},
    }
    return rep


def cmd_automorphisms(args, ws, deadline) -> CommandReport:
    rep = CommandReport()
    if args.method == "rees":
        s = _resolve_rms(ws, args.name)
        autos = morphisms.enumerate_rms_morphisms(s, s, bijective_only=True,
                                                  deadline=deadline)
        actions = [{_element_str(x): _element_str(phi.apply(x))
                    for x in s.elements()} for phi in autos]
    else:
        table = _resolve_table(ws, args.name)
        actions = [{str(k): str(v) for k, v in m.items()}
                   for m in semigroups.enumerate_isomorphisms(table, table,
                                                              deadline=deadline)]
    rep.say(f"{len(actions)} automorphisms")
    rep.result = {"count": len(actions), "automorphisms": actions}
    return rep


def cmd_isomorphic(args, ws, deadline) -> CommandReport:
    a = _resolve_table(ws, args.first)
    b = _resolve_table(ws, args.second)
    isos = semigroups.enumerate_isomorphisms(a, b, deadline=deadline)
    rep = CommandReport(predicate=bool(isos))
    rep.say("true" if isos else "false")
    rep.result = {"isomorphic": bool(isos), "count": len(isos)}
    return rep


def cmd_homogeneous(args, ws, deadline) -> CommandReport:
    rep = CommandReport()
    if args.method == "brute":
        table = _resolve_table(ws, args.name)
        outcome = semigroups.is_homogeneous(table, cap=args.cap, deadline=deadline)
        verdict = outcome.homogeneous
        rep.result = {"homogeneous": verdict, "method": "brute",
                      "automorphisms": outcome.automorphism_count}
        if not verdict and outcome.counterexample:
            dom, cod, mapping = outcome.counterexample
            rep.result["counterexample"] = {
                "domain": [str(x) for x in dom],
                "codomain": [str(x) for x in cod],
                "mapping": {str(k): str(v) for k, v in mapping.items()},
            }
    elif args.method == "classify":
        target = ws.rms.get(args.name) or _resolve_table(ws, args.name)
        outcome = homogeneity.classify_homogeneous(target, deadline=deadline)
        verdict = outcome.homogeneous
        rep.result = {"homogeneous": verdict, "method": "classify",
                      "verdict": outcome.verdict()}
    else:
        s = _resolve_rms(ws, args.name)
        outcome = homogeneity.decompose_check(s, deadline=deadline)
        verdict = outcome.homogeneous
        rep.result = {
            "homogeneous": verdict, "method": "decompose",
            "group_homogeneous": outcome.group_homogeneous,
            "idempotent_generated_homogeneous":
                outcome.idempotent_generated_homogeneous,
            "entry_set_characteristic": outcome.entry_set_characteristic,
        }
    rep.predicate = verdict
    rep.say("true" if verdict else "false")
    return rep


def cmd_classify(args, ws, deadline) -> CommandReport:
    target = ws.rms.get(args.name) or _resolve_table(ws, args.name)
    outcome = homogeneity.classify_homogeneous(target, deadline=deadline)
    rep = CommandReport(predicate=outcome.homogeneous)
    rep.say(outcome.verdict())
    rep.result = {
        "homogeneous": outcome.homogeneous,
        "verdict": outcome.verdict(),
        "case": outcome.case,
        "reason": outcome.reason,
        "normalization": [str(x) for x in outcome.normalization_used]
        if outcome.normalization_used else None,
        "entry_set": [str(x) for x in outcome.entry_set],
        "pattern": outcome.pattern,
    }
    return rep


def cmd_screen(args, ws, deadline) -> CommandReport:
    s = _resolve_rms(ws, args.name)
    violations = homogeneity.screen_necessary(s, deadline=deadline)
    rep = CommandReport(predicate=not violations)
    if violations:
        for v in violations:
            rep.say(str(v))
    else:
        rep.say("pass")
    rep.result = {"pass": not violations,
                  "violations": [str(v) for v in violations]}
    return rep


def cmd_graph(args, ws, deadline) -> CommandReport:
    if args.name in ws.graphs:
        graph = ws.graphs[args.name]
    else:
        _, graph = rees.induced_graphs(_resolve_rms(ws, args.name))
    rep = CommandReport()
    rep.say("colours " + " ".join(str(c) for c in graph.occurring_colours()))
    rep.say(f"left {len(graph.left)}")
    rep.say(f"right {len(graph.right)}")
    for row in graph.rows():
        rep.say(" ".join(str(c) for c in row))
    rep.result = {
        "left": [str(v) for v in graph.left],
        "right": [str(v) for v in graph.right],
        "colours": [str(c) for c in graph.occurring_colours()],
        "matrix": [[str(c) for c in row] for row in graph.rows()],
    }
    if args.report_dir:
        from . import report as reporting
        outdir = reporting.ensure_dir(args.report_dir)
        png = outdir / f"graph-{args.name}.png"
        csv_path = outdir / f"graph-{args.name}.csv"
        reporting.render_graph_figure(graph, str(png))
        reporting.write_graph_csv(graph, str(csv_path))
        rep.say(f"wrote {png} and {csv_path}")
        rep.result["figure"] = str(png)
        rep.result["csv"] = str(csv_path)
    return rep


def cmd_graph_classify(args, ws, deadline) -> CommandReport:
    if args.name in ws.graphs:
        graph = ws.graphs[args.name]
    else:
        _, graph = rees.induced_graphs(_resolve_rms(ws, args.name))
    pattern = classify_pattern(graph)
    brute = is_homogeneous_graph(graph)
    rep = CommandReport(predicate=brute.homogeneous)
    rep.say(f"{pattern} (homogeneous: {'true' if brute.homogeneous else 'false'})")
    rep.result = {"pattern": pattern, "homogeneous": brute.homogeneous}
    return rep


def cmd_age(args, ws, deadline) -> CommandReport:
    table = _resolve_table(ws, args.name)
    sample = fraisse.age(table, args.max, cap=args.cap, deadline=deadline)
    rep = CommandReport()
    orders = [m.order for m in sample.members]
    rep.say(f"{len(sample.members)} isomorphism classes, orders {orders}")
    rep.result = {"classes": len(sample.members), "orders": orders}
    return rep


def cmd_jep(args, ws, deadline) -> CommandReport:
    a = _resolve_table(ws, args.first)
    b = _resolve_table(ws, args.second)
    within = fraisse.age(_resolve_table(ws, args.within), args.max,
                         cap=args.cap, deadline=deadline)
    ok, witnesses, failing = fraisse.check_jep([a, b], within, deadline=deadline)
    rep = CommandReport(predicate=ok)
    rep.say("true" if ok else f"false (no common extension for pair {failing})")
    rep.result = {"jep": ok,
                  "witness_orders": [w.member.order for w in witnesses]}
    return rep


def cmd_ap(args, ws, deadline) -> CommandReport:
    core = _resolve_table(ws, args.core)
    w1 = _resolve_table(ws, args.first)
    w2 = _resolve_table(ws, args.second)
    inclusion1 = {lab: lab for lab in core.labels}
    inclusion2 = {lab: lab for lab in core.labels}
    amalgam = fraisse.Amalgam(core, w1, w2, inclusion1, inclusion2)
    within = fraisse.age(_resolve_table(ws, args.within), args.max,
                         cap=args.cap, deadline=deadline)
    ok, witnesses = fraisse.check_ap([amalgam], within, deadline=deadline)
    rep = CommandReport(predicate=ok)
    witness = witnesses[0]
    rep.say("true" if ok else "false")
    rep.result = {"ap": ok,
                  "witness_order": witness.member.order if witness else None}
    return rep


def _relabel_rms(s: ReesMatrixSemigroup, shared_rows: int, shared_cols: int,
                 prefix: str) -> ReesMatrixSemigroup:
    rows = [k + 1 if k < shared_rows else f"{prefix}r{k + 1}"
            for k in range(len(s.rows))]
    cols = [k + 1 if k < shared_cols else f"{prefix}c{k + 1}"
            for k in range(len(s.cols))]
    g = s.group
    entry_rows = [[g.labels[x] for x in row] for row in s.matrix.entries]
    return ReesMatrixSemigroup(g, SandwichMatrix(g, rows, cols, entry_rows))


def cmd_amalgamate(args, ws, deadline) -> CommandReport:
    group = ws.groups.get(args.group)
    if group is None:
        raise UnresolvedReference(f"group {args.group!r} is not declared")
    sub = _subgroup_from_arg(group, args.sub)
    rep = CommandReport()
    if args.sample:
        rng = random.Random(args.seed)
        amalgams = fraisse.random_cs_amalgams(group, sub, args.sample,
                                              args.max_index, rng)
        successes = 0
        for amalgam in amalgams:
            combined, g1, g2 = fraisse.amalgamate_cs(amalgam, group, sub,
                                                     args.bound, deadline=deadline)
            agree = all(g1.apply(x) == g2.apply(x)
                        for x in amalgam.core.elements())
            if g1.validate().ok and g2.validate().ok and agree:
                successes += 1
        rep.predicate = successes == len(amalgams)
        rep.say(f"{successes}/{len(amalgams)} amalgams embedded and agreed")
        rep.result = {"sampled": len(amalgams), "successes": successes}
        return rep
    if not (args.core and args.first and args.second):
        raise UnresolvedReference(
            "amalgamate needs CORE WING1 WING2 names (or --sample N)")
    core = _resolve_rms(ws, args.core)
    w1 = _relabel_rms(_resolve_rms(ws, args.first), len(core.rows),
                      len(core.cols), "a")
    w2 = _relabel_rms(_resolve_rms(ws, args.second), len(core.rows),
                      len(core.cols), "b")
    amalgam = fraisse.RmsAmalgam(core, w1, w2)
    combined, g1, g2 = fraisse.amalgamate_cs(amalgam, group, sub, args.bound,
                                             deadline=deadline)
    rep.say(f"combined: group order {combined.group.order}, "
            f"I size {len(combined.cols)}, L size {len(combined.rows)}")
    rep.lines.extend(_matrix_lines(combined))
    rep.result = {
        "group_order": combined.group.order,
        "cols": [str(c) for c in combined.cols],
        "rows": [str(r) for r in combined.rows],
        "matrix": _matrix_json(combined),
    }
    return rep


def cmd_grow_generic(args, ws, deadline) -> CommandReport:
    group = ws.groups.get(args.group)
    if group is None:
        raise UnresolvedReference(f"group {args.group!r} is not declared")
    sub = _subgroup_from_arg(group, args.sub)
    seed = _resolve_rms(ws, args.seed_rms) if args.seed_rms else None
    grown = fraisse.grow_generic_rms(group, sub, args.level, seed=seed,
                                     passes=args.passes)
    defects = fraisse.reduced_graph_defects(grown, sub, args.level)
    rep = CommandReport()
    rep.say(f"grown to I size {len(grown.cols)}, L size {len(grown.rows)}; "
            f"{len(defects)} open constraints on the full vertex set")
    rep.lines.extend(_matrix_lines(grown))
    rep.result = {
        "cols": [str(c) for c in grown.cols],
        "rows": [str(r) for r in grown.rows],
        "matrix": _matrix_json(grown),
        "open_constraints": len(defects),
    }
    return rep


def cmd_sweep(args, ws, deadline) -> CommandReport:
    if args.max_group or args.max_index:
        report = homogeneity.sweep(args.max_group or 3, args.max_index or 3,
                                   cap=args.cap, deadline=deadline)
    else:
        report = homogeneity.acceptance_sweep(cap=args.cap, deadline=deadline)
    rep = CommandReport(predicate=not report.disagreements)
    rep.say(f"{len(report.rows)} instances, "
            f"{sum(1 for r in report.rows if r.brute)} homogeneous, "
            f"{len(report.disagreements)} disagreements")
    for row in report.disagreements:
        rep.say(f"DISAGREE {row.group_name} {row.n_cols}x{row.n_rows} "
                f"{row.inner_matrix}: brute={row.brute} "
                f"classifier={row.classifier} decomposition={row.decomposition}")
    rep.result = {
        "instances": len(report.rows),
        "homogeneous": sum(1 for r in report.rows if r.brute),
        "disagreements": [
            {"group": r.group_name, "cols": r.n_cols, "rows": r.n_rows,
             "inner": [str(x) for x in r.inner_matrix]}
            for r in report.disagreements],
    }
    if args.report_dir:
        from . import report as reporting
        outdir = reporting.ensure_dir(args.report_dir)
        csv_path = outdir / "sweep.csv"
        png = outdir / "sweep.png"
        reporting.write_sweep_csv(report, str(csv_path))
        reporting.render_sweep_figure(report, str(png))
        rep.say(f"wrote {csv_path} and {png}")
        rep.result["csv"] = str(csv_path)
        rep.result["figure"] = str(png)
    return rep


HANDLERS = {
    "multiply": cmd_multiply,
    "normalize": cmd_normalize,
    "egens": cmd_egens,
    "green": cmd_green,
    "coordinatize": cmd_coordinatize,
    "automorphisms": cmd_automorphisms,
    "isomorphic": cmd_isomorphic,
    "homogeneous": cmd_homogeneous,
    "classify": cmd_classify,
    "screen": cmd_screen,
    "graph": cmd_graph,
    "graph-classify": cmd_graph_classify,
    "age": cmd_age,
    "jep": cmd_jep,
    "ap": cmd_ap,
    "amalgamate": cmd_amalgamate,
    "grow-generic": cmd_grow_generic,
    "sweep": cmd_sweep,
}


def _add_global_options(parser, suppress: bool) -> None:
    # The same options are registered on the main parser (real defaults) and
    # on every subparser (SUPPRESS, so a pre-subcommand value survives).
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("-f", "--input", default=default(None),
                        help="workspace file with declarations")
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="machine-readable report")
    parser.add_argument("--seed", type=int, default=default(0),
                        help="seed for randomized amalgam sampling")
    parser.add_argument("--deadline-secs", type=float, default=default(None),
                        help="best-effort cancellation between search branches")
    parser.add_argument("--cap", type=int,
                        default=default(semigroups.DEFAULT_SUBSEMIGROUP_CAP),
                        help="subsemigroup enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cshom",
        description="Computations with finite completely simple semigroups.")
    _add_global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", parents=[common],
                       help="product of two elements of an rms")
    p.add_argument("name")
    p.add_argument("x", help="element written i:g:l")
    p.add_argument("y", help="element written i:g:l")

    p = sub.add_parser("normalize", parents=[common], help="identity-fill a row and column")
    p.add_argument("name")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--col", type=int, required=True)

    p = sub.add_parser("egens", parents=[common], help="idempotent-generated subsemigroup")
    p.add_argument("name")

    p = sub.add_parser("green", parents=[common], help="Green's relation classes")
    p.add_argument("name")

    p = sub.add_parser("coordinatize", parents=[common], help="Rees presentation of a table")
    p.add_argument("name")

    p = sub.add_parser("automorphisms", parents=[common], help="automorphism enumeration")
    p.add_argument("name")
    p.add_argument("--method", choices=["rees", "table"], default="table")

    p = sub.add_parser("isomorphic", parents=[common], help="do two structures admit an isomorphism")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("homogeneous", parents=[common], help="decide homogeneity")
    p.add_argument("name")
    p.add_argument("--method", choices=["brute", "classify", "decompose"],
                   default="brute")

    p = sub.add_parser("classify", parents=[common], help="structural classification verdict")
    p.add_argument("name")

    p = sub.add_parser("screen", parents=[common], help="necessary sandwich-matrix conditions")
    p.add_argument("name")

    p = sub.add_parser("graph", parents=[common], help="induced entry-coloured graph")
    p.add_argument("name")
    p.add_argument("--report-dir", help="write figure and CSV here")

    p = sub.add_parser("graph-classify", parents=[common], help="pattern of a coloured graph")
    p.add_argument("name")

    p = sub.add_parser("age", parents=[common], help="isomorphism classes of subsemigroups")
    p.add_argument("name")
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("jep", parents=[common], help="joint embedding within an age sample")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--within", required=True)
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("ap", parents=[common], help="amalgamation within an age sample")
    p.add_argument("core")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--within", required=True)
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("amalgamate", parents=[common], help="amalgamate completely simple wings")
    p.add_argument("core", nargs="?")
    p.add_argument("first", nargs="?")
    p.add_argument("second", nargs="?")
    p.add_argument("--group", required=True)
    p.add_argument("--sub", required=True,
                   help="comma-separated generators of the entry subgroup")
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--sample", type=int, default=0,
                   help="amalgamate this many seeded-random instances instead")
    p.add_argument("--max-index", type=int, default=3)

    p = sub.add_parser("grow-generic", parents=[common], help="grow a constraint-witnessing rms")
    p.add_argument("--group", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--seed-rms")
    p.add_argument("--passes", type=int, default=1)

    p = sub.add_parser("sweep", parents=[common], help="compare the three homogeneity verdicts")
    p.add_argument("--max-group", type=int)
    p.add_argument("--max-index", type=int)
    p.add_argument("--report-dir", help="write sweep.csv and sweep.png here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    deadline = Deadline(args.deadline_secs)
    try:
        if args.input:
            ws = workspace.parse(Path(args.input).read_text())
        else:
            ws = workspace.Workspace()
        report = HANDLERS[args.command](args, ws, deadline)
    except CshomError as exc:
        if args.json:
            envelope = {"schema_version": SCHEMA_VERSION, "command": args.command,
                        "error": {"type": type(exc).__name__, "message": str(exc)}}
            print(json.dumps(envelope, indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        envelope = {"schema_version": SCHEMA_VERSION, "command": args.command,
                    "result": report.result}
        print(json.dumps(envelope, indent=2))
    else:
        for line in report.lines:
            print(line)
    if report.predicate is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
