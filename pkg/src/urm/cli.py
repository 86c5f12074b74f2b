"""``urm`` command line: constructions, resolution, bounds, searches, puzzles."""
from __future__ import annotations

import argparse
import signal
import sys
import threading
from typing import Optional, Sequence

from . import formats
from .bounds import bounds_report
from .constructions import (
    BUILDERS,
    ConstructedInstance,
    best_construction,
    boundary,
)
from .core import Status, balance_check, enumerate_resolutions, is_valid_partition
from .errors import MalformedInputError, URMError
from .oracle import SearchBudget, g_exact_search, p_k_search
from .zebra import check_puzzle, generate_minimal_puzzle, solve_puzzle


def _count(text: str) -> int:
    """Integer flag that also accepts forms like ``1e6``."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A-B, got {text!r}") from None
    return list(range(a, b + 1))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None


class Output:
    def __init__(self, fmt: str, path: Optional[str]):
        self.structured = fmt == "structured"
        self.path = path
        self.lines: list[str] = []

    def doc(self, doc) -> None:
        self.lines.append(formats.dumps(doc))

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self) -> None:
        body = "\n".join(self.lines) + "\n"
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _show_instance(out: Output, inst: ConstructedInstance) -> None:
    if out.structured:
        out.doc(formats.instance_to_doc(inst))
        return
    out.text(f"{inst.provenance} construction: n={inst.n} m={inst.m} size={inst.size}")
    for i, cls in enumerate(inst.p.classes):
        comps = " ".join(str(inst.ms.components[j]) for j in cls)
        out.text(f"  class {i + 1}: {comps}")


def cmd_construct(args, out: Output) -> None:
    kind = args.kind
    if kind == "best":
        inst = best_construction(args.n, args.m)
    elif kind == "central":
        if args.k is None:
            raise MalformedInputError("--kind central needs --k")
        inst = BUILDERS["central"](args.n, args.m, args.k)
    elif kind in ("theorem12", "singletons"):
        inst = BUILDERS[kind](args.m)
    else:
        inst = BUILDERS[kind](args.n, args.m)
    _show_instance(out, inst)


def cmd_resolve(args, out: Output) -> None:
    doc = formats.loads(_read(args.input))
    ms = formats.multiset_from_doc(doc)
    n = args.n if args.n is not None else doc.get("n")
    if n is None:
        # every element of a balanced multiset occurs n times
        n = sum(1 for b in ms.masks if b & 1)
    report = enumerate_resolutions(ms, n, args.limit)
    if out.structured:
        out.doc(formats.report_to_doc(report))
        return
    out.text(report.status.value)
    if report.status is Status.UNRESOLVABLE and not balance_check(ms, n):
        out.text(f"  (element multiplicities are not all {n})")
    for w, c in zip(report.witnesses, report.canonical):
        out.text(f"  {formats.dumps(w.as_lists())}  {c}")
    out.text(f"  nodes explored: {report.nodes_explored}")
    if "partition" in doc:
        p = formats.partition_from_doc(doc["partition"])
        out.text(f"  stored partition valid: {is_valid_partition(ms, p)}")


_COLUMNS = ("n", "m", "lower", "upper", "exact", "regime")


def _bounds_rows(out: Output, pairs) -> None:
    reports = [bounds_report(n, m) for n, m in pairs]
    if out.structured:
        for r in reports:
            out.doc(formats.bounds_to_doc(r))
        return
    out.text("  ".join(f"{c:>8}" for c in _COLUMNS) + "  sources")
    for r in reports:
        row = [r.n, r.m, r.lower, r.upper, "-" if r.exact is None else r.exact, r.regime]
        out.text("  ".join(f"{str(v):>8}" for v in row) + "  " + "; ".join(r.sources))


def cmd_bounds(args, out: Output) -> None:
    _bounds_rows(out, [(args.n, args.m)])


def cmd_table(args, out: Output) -> None:
    pairs = []
    for m in args.m_range:
        if args.n_range:
            ns = args.n_range
        else:
            top = boundary(m)
            ns = sorted({1 << j for j in range(m) if 1 << j <= top} | ({top} if top else set()))
        pairs.extend((n, m) for n in ns)
    _bounds_rows(out, pairs)


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_candidates, args.max_nodes, args.time_cap)


def _cancel_on_sigint() -> threading.Event:
    event = threading.Event()
    if threading.current_thread() is threading.main_thread():
        signal.signal(signal.SIGINT, lambda *_: event.set())
    return event


def _show_exact(out: Output, label: str, result) -> None:
    if out.structured:
        out.doc(formats.exact_to_doc(result))
        return
    status = "certified" if result.exhausted else "not certified (lower-bound witness)"
    out.text(f"{label} = {result.value}  {status}")
    out.text(f"  nodes {result.nodes}, candidates {result.candidates}")
    if result.witness is not None:
        _show_instance(out, result.witness)


def cmd_exact(args, out: Output) -> None:
    result = g_exact_search(args.n, args.m, _budget(args), _cancel_on_sigint())
    _show_exact(out, f"g({args.n},{args.m})", result)


def cmd_pk(args, out: Output) -> None:
    result = p_k_search(args.k, args.m, _budget(args), _cancel_on_sigint())
    _show_exact(out, f"max classes of size {args.k} (m={args.m})", result)


def cmd_zebra(args, out: Output) -> None:
    if args.action == "gen":
        pz = generate_minimal_puzzle(args.n, args.m, args.seed)
        if out.structured:
            out.doc(formats.puzzle_to_doc(pz))
            return
        out.text(f"{pz.n} persons, {pz.m} categories, {len(pz.rules)} rules (seed {pz.seed})")
        for cat in pz.categories:
            out.text(f"  {cat.name}: {', '.join(cat.values)}")
        for r in pz.rules:
            out.text(f"  the person with {r.val_a} ({r.cat_a}) has {r.val_b} ({r.cat_b})")
        return
    pz = formats.puzzle_from_doc(formats.loads(_read(args.file)))
    if args.action == "solve":
        sols = solve_puzzle(pz, args.limit)
        if out.structured:
            out.doc({"count": len(sols), "solutions": [formats.solution_to_doc(pz, s) for s in sols]})
            return
        out.text(f"{len(sols)} solution(s) found (limit {args.limit})")
        for i, s in enumerate(sols, 1):
            out.text(f"solution {i}:")
            for p in range(pz.n):
                out.text("  " + ", ".join(s.person(p)))
        return
    verdict = check_puzzle(pz)
    if out.structured:
        out.doc(verdict)
        return
    need = verdict["min_rules"]
    need_text = need if need is not None else "{}..{}".format(*verdict["min_rules_range"])
    out.text(f"rules: {verdict['rules']}  minimum for unique solution (nm - g): {need_text}")
    out.text(f"unique solution: {verdict['unique']}  minimal: {verdict['minimal']}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urm", description="Uniquely resolvable multisets and minimal zebra puzzles."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-o", "--output", help="write to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a uniquely resolvable multiset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--kind", choices=["best", *BUILDERS], default="best")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("resolve", parents=[common], help="decide unique resolvability of a file")
    p.add_argument("input", help="multiset document, or - for stdin")
    p.add_argument("--n", type=int, help="class count (default: multiplicity of element 1)")
    p.add_argument("--limit", type=int, default=2)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("bounds", parents=[common], help="bounds on g(n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="bounds over ranges of m and n")
    p.add_argument("--m-range", type=_range, required=True, help="e.g. 2-12")
    p.add_argument("--n-range", type=_range, help="default: powers of two and 2^(m-1)-1")
    p.set_defaults(func=cmd_table)

    for name, helptext in (("exact", "exhaustive g(n, m)"), ("pk", "exhaustive max count of size-k classes")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "exact":
            p.add_argument("--n", type=int, required=True)
        else:
            p.add_argument("--k", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--max-nodes", type=_count, default=10**8)
        p.add_argument("--max-candidates", type=_count, default=10**6)
        p.add_argument("--time-cap", type=float, default=600.0, help="seconds")
        p.set_defaults(func=cmd_exact if name == "exact" else cmd_pk)

    p = sub.add_parser("zebra", help="generate, solve or check puzzles")
    zsub = p.add_subparsers(dest="action", required=True)
    z = zsub.add_parser("gen", parents=[common])
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--seed", type=int, default=0)
    z = zsub.add_parser("solve", parents=[common])
    z.add_argument("file")
    z.add_argument("--limit", type=int, default=2)
    z = zsub.add_parser("check", parents=[common])
    z.add_argument("file")
    p.set_defaults(func=cmd_zebra)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format, args.output)
    try:
        args.func(args, out)
    except URMError as exc:
        print(f"urm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    out.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
