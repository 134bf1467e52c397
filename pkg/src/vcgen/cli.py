"""Command-line interface tying the pipeline together.

Subcommands: generate, solve, classify, verify, oracle, bound.
Exit codes: 0 success / YES, 1 solve answered NO, 2 generation or
verification failure, 3 input error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from .errors import VcgenError
from .graphs import Instance, parse_graph, parse_instance, vc_oracle
from .measure import (
    BranchVector,
    branching_number,
    check_feasibility,
    combine_bound,
    evaluate,
    format_measure,
    generation_admissible,
    parse_measure_tokens,
)
from .rulegen import GenLimits, gensa, table_from_json, table_to_json, verify_table
from .runtime import TableEngine, TraceStep, TrialPlan
from .subspaces import SUBSPACE_IDS, assertions_for, classify, parse_subspace, root_config, subspace_name

EXIT_OK = 0
EXIT_NO = 1
EXIT_FAILED = 2
EXIT_INPUT = 3

DEFAULT_SEED = 2024


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_instance(path: str) -> Instance:
    return parse_instance(_read(path))


def _load_graph(path: str) -> "Graph":
    text = _read(path)
    if any(line.strip().startswith("k ") for line in text.splitlines()):
        return parse_instance(text).graph
    return parse_graph(text)


def cmd_generate(args) -> int:
    measure = parse_measure_tokens(args.measure)
    adm = generation_admissible(measure)
    if not adm.ok:
        print("infeasible measure:")
        for v in adm.violations:
            print("  " + v)
        return EXIT_INPUT
    sids = sorted({parse_subspace(s) for s in args.subspace}) if args.subspace else list(SUBSPACE_IDS)
    limits = GenLimits(args.depth, args.nodes, args.seconds)
    mode = {"det": "deterministic", "rand": "randomized"}[args.mode]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    print(f"measure: {format_measure(measure)}  mode: {mode}  delta: {args.delta}")
    for sid in sids:
        t0 = time.time()
        table = gensa(
            root_config(sid),
            measure,
            delta=args.delta,
            rule_mode=mode,
            assertions=assertions_for(sid),
            limits=limits,
            subspace_id=sid,
        )
        name = subspace_name(sid)
        if not table.complete:
            all_ok = False
            print(f"{name}: FAILED ({time.time() - t0:.1f}s)")
            print(table.failure.describe())
            continue
        cert = verify_table(table)
        path = out_dir / f"{name}.json"
        path.write_text(table_to_json(table))
        rules = sum(1 for n in table.tree.nodes if n.kind == "leaf" and n.leaf.kind == "rule")
        worst = max(cert.leaf_objectives.values(), default=Fraction(0))
        status = "certified" if cert.ok else "CERTIFICATE FAILED"
        print(
            f"{name}: {status}, nodes={len(table.tree.nodes)}, rule-leaves={rules},"
            f" max-objective={float(worst):.6f}, {time.time() - t0:.1f}s -> {path}"
        )
        if not cert.ok:
            all_ok = False
            for f in cert.failures[:5]:
                print("  " + f)
    return EXIT_OK if all_ok else EXIT_FAILED


def _load_tables(paths: list[str]) -> dict:
    files: list[Path] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(sorted(path.glob("P*.json")))
        else:
            files.append(path)
    tables = {}
    for f in files:
        table = table_from_json(f.read_text())
        if table.subspace_id is None:
            raise VcgenError(f"{f}: table has no subspace id")
        tables[table.subspace_id] = table
    return tables


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    tables = _load_tables(args.tables)
    if not tables:
        print("no tables found")
        return EXIT_INPUT
    measure = next(iter(tables.values())).measure
    for t in tables.values():
        if t.failure is not None:
            print(f"refusing: table P{t.subspace_id} carries a failure report")
            return EXIT_INPUT
        cert = verify_table(t)
        if not cert.ok:
            print(f"refusing: table P{t.subspace_id} failed verification:")
            for f in cert.failures[:5]:
                print("  " + f)
            return EXIT_INPUT
    engine = TableEngine(tables, measure, verify=False)  # verified just above
    if args.mode == "det":
        cover = engine.deterministic_cover(inst)
        answer = cover is not None
        print("YES" if answer else "NO")
        if answer and args.show_cover:
            print("cover:", sorted(cover))
        return EXIT_OK if answer else EXIT_NO
    mu = evaluate(measure, inst)
    plan = TrialPlan.for_instance(measure, inst, safety=args.safety, base_seed=args.seed)
    if args.trace:
        witness = None
        successes = 0
        for i in range(plan.trials):
            trace: list[TraceStep] = []
            from .runtime import _trial_seed

            cover = engine.rsearch_cover(inst, _trial_seed(plan.base_seed, i), trace)
            for step in trace:
                print(f"trial {i}: {step.format()}")
            if cover is not None:
                successes += 1
                witness = witness or cover
        answer = witness is not None
    else:
        result = engine.solve_randomized(inst, plan)
        answer, successes, witness = result.answer, result.successes, result.cover
    print(f"mu = {float(mu):.6f}, trials = {plan.trials}, successes = {successes}")
    print("YES" if answer else "NO")
    if answer and args.show_cover:
        print("cover:", sorted(witness))
    return EXIT_OK if answer else EXIT_NO


def cmd_classify(args) -> int:
    g = _load_graph(args.instance)
    print(subspace_name(classify(g)))
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    for path in args.table:
        table = table_from_json(_read(path))
        cert = verify_table(table)
        name = subspace_name(table.subspace_id) if table.subspace_id else "?"
        print(f"{path} ({name}): {'PASS' if cert.ok else 'FAIL'}")
        for nid in sorted(cert.leaf_objectives):
            print(f"  leaf {nid}: objective {float(cert.leaf_objectives[nid]):.9f}")
        for f in cert.failures:
            print("  " + f)
        ok = ok and cert.ok
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle(args) -> int:
    g = _load_graph(args.instance)
    print(vc_oracle(g))
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.combine:
        values = {}
        for tok in args.combine:
            key, _, val = tok.partition("=")
            values[key] = float(val)
        missing = {"a", "b", "base_n"} - set(values)
        if missing:
            print(f"missing combine fields: {sorted(missing)}")
            return EXIT_INPUT
        c = math.log(values["base_n"])
        d = combine_bound(values["a"], values["b"], c)
        print(f"d = {d:.6f}")
        print(f"base = e^d = {math.exp(d):.6f}")
        return EXIT_OK
    if args.vector:
        entries = []
        for part in args.vector.split(","):
            w, _, d = part.partition(":")
            entries.append((Fraction(w), Fraction(d)))
        x = branching_number(BranchVector(tuple(entries)))
        print(f"branching number = {x:.6f}")
        return EXIT_OK
    print("bound needs --combine or --vector")
    return EXIT_INPUT


def cmd_feasibility(args) -> int:
    measure = parse_measure_tokens(args.measure)
    report = check_feasibility(measure)
    print(format_measure(measure))
    print("PASS" if report.ok else "FAIL")
    for v in report.violations:
        print("  " + v)
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcgen",
        description="generate, certify and run branching algorithms for vertex cover "
        "on subcubic graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate and certify rule tables")
    g.add_argument("--measure", nargs="+", required=True,
                   metavar="SPEC", help="e.g. k-mode a=1  or  n-mode b3=0.2")
    g.add_argument("--mode", choices=["det", "rand"], default="rand")
    g.add_argument("--subspace", action="append", default=None,
                   help="P1..P19; repeatable; default all")
    g.add_argument("--delta", type=int, default=3)
    g.add_argument("--depth", type=int, default=12)
    g.add_argument("--nodes", type=int, default=200_000)
    g.add_argument("--seconds", type=float, default=None)
    g.add_argument("--out", default="tables")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance with certified tables")
    s.add_argument("--instance", required=True)
    s.add_argument("--tables", nargs="+", required=True,
                   help="table files or directories of P*.json")
    s.add_argument("--mode", choices=["det", "rand"], default="rand")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--safety", type=int, default=20)
    s.add_argument("--trace", action="store_true")
    s.add_argument("--show-cover", action="store_true")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("classify", help="print the instance's subspace")
    c.add_argument("--instance", required=True)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="re-check rule-table certificates")
    v.add_argument("--table", nargs="+", required=True)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum vertex cover size")
    o.add_argument("--instance", required=True)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bound", help="running-time bound arithmetic")
    b.add_argument("--combine", nargs="+", default=None,
                   metavar="KEY=VAL", help="a=.. b=.. base_n=..")
    b.add_argument("--vector", default=None, help="weight:decrease pairs, comma separated")
    b.set_defaults(func=cmd_bound)

    f = sub.add_parser("feasibility", help="check a measure's inequality chain")
    f.add_argument("--measure", nargs="+", required=True)
    f.set_defaults(func=cmd_feasibility)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VcgenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
