"""Command-line front end: workload replay, heapsort, counter, dot dumps.

Exit codes: 0 pass, 1 divergence or invariant failure, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import random
import sys

from .counter import SkewCounter
from .errors import HeapError
from .forest import FixPolicy
from .oracle import run_differential
from .workload import (STATS_COLUMNS, QueueRunner, ScriptParseError,
                       generate_script, parse_script)

_TABLE_FMT = "{:>8} {:<12} {:>8} {:>6} {:>14} {:>12} {:>9} {:>10}"


def policy_from_args(args):
    return FixPolicy(mode=args.policy, relaxed_budget=args.relaxed_budget)


def _stats_writer(stream, fmt):
    """Returns a callable that streams StatsRecords to one output line each."""
    if fmt == "table":
        stream.write(_TABLE_FMT.format(*STATS_COLUMNS) + "\n")

        def write(rec):
            stream.write(_TABLE_FMT.format(*rec.row()) + "\n")
    else:
        stream.write(",".join(STATS_COLUMNS) + "\n")

        def write(rec):
            stream.write(",".join(str(x) for x in rec.row()) + "\n")
    return write


def run_sort(keys, policy=None, stats_sink=None):
    """Heapsort: insert every key, then delete-min until empty.

    Returns (sorted keys, final StatsRecord).  stats_sink, when given, gets
    one StatsRecord per operation.
    """
    runner = QueueRunner(policy=policy)
    queue = runner.queue
    n = len(keys)
    if stats_sink is None:
        insert = queue.insert
        for key in keys:
            insert(key)
        delete_min = queue.delete_min
        out = [delete_min()[0] for _ in range(n)]
    else:
        for i, key in enumerate(keys):
            queue.insert(key)
            stats_sink(runner.stats(i, "i"))
        out = []
        for i in range(n):
            out.append(queue.delete_min()[0])
            stats_sink(runner.stats(n + i, "dm"))
    return out, runner.stats(2 * n - 1 if n else 0, "dm" if n else "none")


def _read_keys(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise ScriptParseError(f"bad key in input: {exc}") from exc


def _read_script(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_script(text)


def cmd_sort(args):
    keys = _read_keys(args.input)
    sink = None
    close = None
    if args.stats == "-":
        sink = _stats_writer(sys.stderr, args.fmt)
    elif args.stats != "none":
        fh = open(args.stats, "w")
        sink = _stats_writer(fh, args.fmt)
        close = fh
    out, _ = run_sort(keys, policy_from_args(args), stats_sink=sink)
    sys.stdout.write("".join(f"{k}\n" for k in out))
    if close is not None:
        close.close()
    return 0


def cmd_counter(args):
    if args.increments < 0:
        raise ScriptParseError("increment count must be >= 0")
    counter = SkewCounter(policy_from_args(args))
    write = sys.stdout.write
    if args.fmt == "table":
        write(f"{'step':>8} {'carries':>8}  digits\n")
        for step in range(1, args.increments + 1):
            counter.increment()
            digits = " ".join(str(d) for d in counter.digits)
            write(f"{step:>8} {counter.carries:>8}  {digits}\n")
    else:
        write("step,carries,digits\n")
        for step in range(1, args.increments + 1):
            counter.increment()
            digits = " ".join(str(d) for d in counter.digits)
            write(f"{step},{counter.carries},{digits}\n")
    return 0


def cmd_verify(args):
    script = _read_script(args.script)
    verdict = run_differential(script, policy_from_args(args),
                               audit=args.audit)
    if verdict.passed:
        print(verdict)
        return 0
    print(verdict, file=sys.stderr)
    return 1


def cmd_bench(args):
    policy = policy_from_args(args)
    write = _stats_writer(sys.stdout, args.fmt)
    for n in args.sizes:
        print(f"# bench n={n} workload=sort policy={args.policy} "
              f"seed={args.seed}")
        rng = random.Random(f"{args.seed}:{n}:sort")
        keys = [rng.getrandbits(32) for _ in range(n)]
        run_sort(keys, policy, stats_sink=write)
        print(f"# bench n={n} workload=mixed policy={args.policy} "
              f"seed={args.seed}")
        script = generate_script(f"{args.seed}:{n}:mixed", n)
        runner = QueueRunner(policy=policy)
        for i, op in enumerate(script.ops):
            runner.apply(op)
            write(runner.stats(i, op[0]))
    return 0


def cmd_dot(args):
    script = _read_script(args.script)
    at = len(script.ops) if args.at is None else args.at
    if not 0 <= at <= len(script.ops):
        raise ScriptParseError(
            f"--at {at} out of range for a {len(script.ops)}-op script")
    runner = QueueRunner(policy=policy_from_args(args))
    for op in script.ops[:at]:
        runner.apply(op)
    sys.stdout.write(forest_to_dot(runner.queue))
    return 0


def forest_to_dot(queue):
    """Graphviz text for the forest: keys as labels, trees grouped by height."""
    lines = ["digraph forest {", "  node [shape=circle];"]
    idx = 0
    for h in sorted(queue.forest.buckets):
        lines.append(f"  subgraph cluster_h{h} {{")
        lines.append(f'    label="height {h}";')
        for root in queue.forest.buckets[h]:
            stack = [(root, None)]
            while stack:
                node, parent_id = stack.pop()
                nid = f"n{idx}"
                idx += 1
                lines.append(f'    {nid} [label="{node.key}"];')
                if parent_id is not None:
                    lines.append(f"    {parent_id} -> {nid};")
                if node.left is not None:
                    stack.append((node.right, nid))
                    stack.append((node.left, nid))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--policy", choices=["eager", "relaxed"],
                        default="eager")
    common.add_argument("--relaxed-budget", type=int, default=1, metavar="K")
    common.add_argument("--seed", type=int, default=0, metavar="U64")
    common.add_argument("--audit", choices=["always", "final"],
                        default="always")
    common.add_argument("--format", choices=["csv", "table"], default="csv",
                        dest="fmt")

    parser = argparse.ArgumentParser(
        prog="triheap",
        description="Priority queue built from perfect heap-ordered binary "
                    "trees, with potential-function instrumentation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sort", parents=[common],
                       help="heapsort keys from a file or stdin")
    p.add_argument("input", nargs="?", default="-",
                   help="file of whitespace-separated integer keys, - for stdin")
    p.add_argument("--stats", default="-", metavar="PATH",
                   help="per-op stats destination: - for stderr, none, or a file")
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("counter", parents=[common],
                       help="simulate the pure number system, no keys")
    p.add_argument("increments", type=int)
    p.set_defaults(func=cmd_counter)

    p = sub.add_parser("verify", parents=[common],
                       help="replay a script against the oracle with auditing")
    p.add_argument("script", help="workload script path, - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common],
                       help="insert/delete and mixed workloads over sizes")
    p.add_argument("sizes", type=int, nargs="+")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dot", parents=[common],
                       help="dump the forest as graphviz text")
    p.add_argument("script", help="workload script path, - for stdin")
    p.add_argument("--at", type=int, default=None, metavar="N",
                   help="render the state after the first N ops (default all)")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScriptParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HeapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
