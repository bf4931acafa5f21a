"""Command-line entry point: ``culab {classify,check-axioms,quotients,verify,search}``."""

from __future__ import annotations

import argparse
import sys

from .errors import CuError, ParseError, ValidationError
from .harness import verify
from .report import classify_model, render_text
from .search import SearchSpec, hunt
from .serialize import dumps, parse_model, parse_search_spec
from .structure import AXIOMS, check_axioms, enumerate_ideals, quotient, stably_finite
from .verdict import Budget

EXIT_USAGE, EXIT_INPUT, EXIT_VIOLATION = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> Budget:
    return Budget(n=args.budget_n, basis=args.budget_basis)


def _emit(args, doc: dict, text: str):
    sys.stdout.write(dumps(doc) if args.json else text)


def cmd_classify(args) -> int:
    model = parse_model(args.model)
    report = classify_model(model, budget=_budget(args))
    _emit(args, report, render_text(report))
    return 0


def cmd_check_axioms(args) -> int:
    model = parse_model(args.model)
    verdicts = check_axioms(model, _budget(args))
    doc = {a: v.to_json() for a, v in verdicts.items()}
    _emit(args, doc, "".join(f"{a}: {verdicts[a].summary()}\n" for a in AXIOMS))
    return 0


def cmd_quotients(args) -> int:
    model = parse_model(args.model)
    budget = _budget(args)
    rows = []
    for ideal in enumerate_ideals(model):
        q = quotient(model, ideal)
        t = q.target
        row = {"ideal": str(ideal), "kind": t.kind}
        if t.is_finite:
            row["elements"] = [t.format(v) for v in t.elements()]
        row["stably_finite"] = stably_finite(t, budget).to_json()
        rows.append(row)
    lines = []
    for r in rows:
        els = f" elements {{{', '.join(r['elements'])}}}" if "elements" in r else ""
        lines.append(f"{r['ideal']}: quotient {r['kind']}{els}; stably finite {r['stably_finite']['status']}\n")
    _emit(args, {"quotients": rows}, "".join(lines))
    return 0


def cmd_verify(args) -> int:
    model = parse_model(args.model)
    report = verify(model, budget=_budget(args))
    lines = []
    for c in report.checks:
        state = "skip" if c.skipped and not c.checked else ("ok" if c.ok else "FAIL")
        lines.append(f"{state:4} {c.name} ({c.checked} checked)\n")
        lines += [f"     {v}\n" for v in c.violations]
    lines.append(f"{len(report.violations)} violations\n")
    _emit(args, report.to_json(), "".join(lines))
    return 0 if report.ok else EXIT_VIOLATION


def cmd_search(args) -> int:
    if args.spec:
        spec = parse_search_spec(args.spec)
    else:
        if args.max_size is None:
            raise ParseError("search needs a spec file or --max-size")
        spec = SearchSpec(args.max_size, frozenset(args.require or ()), args.target, args.limit, args.min_size)
    results = hunt(spec, _budget(args), jobs=args.jobs)
    doc = {
        "max_size": spec.max_size,
        "required_axioms": sorted(spec.required_axioms),
        "target": spec.target,
        "count": len(results),
        "results": [r.to_json() for r in results],
    }
    lines = [f"{len(results)} model(s)\n"]
    for i, r in enumerate(results):
        names = list(r.elements)
        lines.append(f"[{i}] size {r.size}: elements {' '.join(names)}\n")
        lines.append(f"    leq {[list(row) for row in r.canonical[0]]}\n")
        lines.append(f"    add {[list(row) for row in r.canonical[1]]}\n")
        soft = [n for n, flags in r.elements.items() if flags["strongly_soft"] == "Proven"]
        lines.append(f"    strongly soft: {' '.join(soft)}\n")
    _emit(args, doc, "".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-n", type=int, default=8, help="cap on existential multiplicities (default 8)")
    common.add_argument("--budget-basis", type=int, default=12, help="basis-chain depth on infinite models (default 12)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for search")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="culab", description="Decide softness, divisibility and axioms in abstract Cuntz semigroups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, help_ in (
        ("classify", cmd_classify, "full report for a model"),
        ("check-axioms", cmd_check_axioms, "O5, O6, O7 verdicts"),
        ("quotients", cmd_quotients, "ideals and quotient summaries"),
        ("verify", cmd_verify, "run the theorem harness; exit 3 on a violation"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("model", help="model file")
        p.set_defaults(func=fn)
    p = sub.add_parser("search", parents=[common], help="hunt for small finite models")
    p.add_argument("spec", nargs="?", help="search spec file")
    p.add_argument("--max-size", type=int)
    p.add_argument("--min-size", type=int, default=2, help="smallest carrier size (default 2; size 1 is the zero model)")
    p.add_argument("--target", default="true", help="boolean target, e.g. 'ideal_filtered and not divisible'")
    p.add_argument("--require", nargs="*", choices=AXIOMS, help="axioms the models must satisfy")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget_n < 1 or args.budget_basis < 1 or args.jobs < 1:
        parser.error("budgets and --jobs must be positive")
    try:
        return args.func(args)
    except ValidationError as exc:
        print("error: invalid model", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
