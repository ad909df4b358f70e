"""Command line front end.

Exit codes: 0 all checks pass, 1 mathematical disagreement, 2 usage or parse
error, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .analysis import OPTIONAL_CHECKS, charpoly_report, sweep, verify_report
from .errors import BoundExceededError, ConsistencyError, ForestLatticeError, InvalidOrderError
from .lattice import enumerate_interval, to_dot
from .shelling import count_maximal_chains
from .trees import NiceOrder, Tree, canonical_nice_order, nice_order_from_sequence, parse_tree

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
HARD_MAX_LEAVES = 12
SWEEP_MAX_LEAVES = 7
HASSE_MAX_LEAVES = 8
SCHEMA = 1


class UsageError(ForestLatticeError):
    pass


def parse_order(tree: Tree, text: str) -> NiceOrder:
    """``v1,v2,...``: the k-th item receives label k.

    An item is a 1-based vertex number in canonical post-order, or a leaf pair
    ``a:b`` naming the vertex where those two leaves meet.
    """
    vertices = []
    for item in text.split(","):
        item = item.strip()
        if ":" in item:
            i, j = item.split(":", 1)
            vertices.append(tree.meet_vertex(i.strip(), j.strip()))
        elif item.isdigit():
            vertices.append(int(item) - 1)
        else:
            raise InvalidOrderError(f"bad order item {item!r}")
    return nice_order_from_sequence(tree, vertices)


def _load_tree(args) -> Tree:
    sources = [s for s in (args.tree_pos, args.tree, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one tree: positional, --tree or --file")
    if args.file is not None:
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = sources[0]
    tree = parse_tree(text)
    if len(tree.leaves) < 2:
        raise UsageError("tree needs at least two leaves")
    return tree


def _order(tree, args) -> NiceOrder:
    return parse_order(tree, args.order) if args.order else canonical_nice_order(tree)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _payload(tree, poly, checks) -> dict:
    return {
        "schema": SCHEMA,
        "tree": str(tree),
        "n": tree.n_vertices,
        "roots": list(poly.exponents.roots),
        "coeffs": list(poly.mobius.coeffs),
        "checks": checks,
    }


def cmd_charpoly(args, out) -> int:
    tree = _load_tree(args)
    poly = charpoly_report(tree, _order(tree, args), args.max_leaves)
    verdict = "AGREE" if poly.agree else "DISAGREE"
    if args.format == "json":
        checks = {"levels_agree": poly.levels_agree, "exponents_agree": poly.exponents_agree}
        print(_json(_payload(tree, poly, checks)), file=out)
    else:
        print(f"tree       {tree}", file=out)
        print(f"mobius     {poly.mobius}", file=out)
        print(f"levels     {poly.levels}", file=out)
        print(f"exponents  {poly.exponents}", file=out)
        print(f"{poly.exponents} {verdict}", file=out)
    return EXIT_OK if poly.agree else EXIT_DISAGREE


def _describe_witness(lattice, witness) -> str:
    if witness is None:
        return ""
    items = witness if isinstance(witness, tuple) else (witness,)
    parts = [str(lattice.partition(w)) if isinstance(w, int) else str(w) for w in items]
    return " ; ".join(parts)


def cmd_verify(args, out) -> int:
    tree = _load_tree(args)
    order = _order(tree, args)
    report = verify_report(tree, order, args.max_leaves, exhaustive=args.exhaustive)
    poly = charpoly_report(tree, order, lattice=report.lattice)
    ok = report.ok and poly.agree
    if args.format == "json":
        checks = {name: r.ok for name, r in report.checks.items()}
        checks["charpoly"] = poly.agree
        print(_json(_payload(tree, poly, checks)), file=out)
    else:
        lattice = report.lattice
        print(f"tree {tree}: {len(lattice)} elements, {lattice.n_covers} covers, "
              f"{count_maximal_chains(lattice)} maximal chains", file=out)
        for name, result in report.checks.items():
            status = "PASS" if result.ok else "FAIL"
            line = f"{name:16} {status}"
            if not result.ok:
                line += f"  {_describe_witness(lattice, result.witness)}"
            if name in OPTIONAL_CHECKS:
                line += "  (reported, not required)"
            print(line, file=out)
        print(f"{'charpoly':16} {'PASS' if poly.agree else 'FAIL'}  {poly.exponents}", file=out)
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_sweep(args, out) -> int:
    if args.max_leaves > SWEEP_MAX_LEAVES:
        raise BoundExceededError(f"sweep is limited to {SWEEP_MAX_LEAVES} leaves")
    rows = sweep(args.max_leaves)
    failures = [r for r in rows if not r.ok]
    if args.format == "json":
        print(_json({
            "schema": SCHEMA,
            "max_leaves": args.max_leaves,
            "trees": len(rows),
            "failures": [{"tree": r.tree, "checks": list(r.failures)} for r in failures],
        }), file=out)
    else:
        total, bad = Counter(r.leaves for r in rows), Counter(r.leaves for r in failures)
        print(f"{'leaves':>6} {'trees':>7} {'passed':>7} {'failed':>7}", file=out)
        for k in sorted(total):
            print(f"{k:>6} {total[k]:>7} {total[k] - bad[k]:>7} {bad[k]:>7}", file=out)
        print(f"{'all':>6} {len(rows):>7} {len(rows) - len(failures):>7} {len(failures):>7}", file=out)
        for r in failures:
            print(f"FAIL {r.tree}: {', '.join(r.failures)}", file=out)
    return EXIT_OK if not failures else EXIT_DISAGREE


def cmd_hasse(args, out) -> int:
    tree = _load_tree(args)
    if len(tree.leaves) > HASSE_MAX_LEAVES:
        raise BoundExceededError(f"hasse is limited to {HASSE_MAX_LEAVES} leaves")
    if args.format not in ("dot", None):
        raise UsageError("hasse only supports --format dot")
    lattice = enumerate_interval(tree, args.max_leaves)
    out.write(to_dot(lattice, _order(tree, args)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forest-lattice",
        description="Lattices of forests below a binary leaf-labeled tree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, tree_input=True, default_format="text"):
        p = sub.add_parser(name, help=help_text)
        if tree_input:
            p.add_argument("tree_pos", nargs="?", metavar="TREE", help="tree text, e.g. '((a,b),c)'")
            p.add_argument("--tree", help="tree text")
            p.add_argument("--file", help="file holding the tree text")
            p.add_argument("--order", help="nice order: vertex numbers or leaf pairs a:b, label 1 first")
        p.add_argument("--max-leaves", type=int, default=10 if tree_input else 5,
                       help="leaf bound for enumeration")
        p.add_argument("--format", choices=["text", "json", "dot"], default=default_format)
        p.add_argument("--exhaustive", action="store_true",
                       help="enumerate every chain instead of the local criteria")
        p.set_defaults(func=func)

    add("charpoly", cmd_charpoly, "characteristic polynomial three ways")
    add("verify", cmd_verify, "lattice, EL, S_n EL, left-modularity, level condition, semimodularity")
    add("sweep", cmd_sweep, "verify all labeled trees up to --max-leaves", tree_input=False)
    add("hasse", cmd_hasse, "Hasse diagram as DOT with edge labels", default_format="dot")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_leaves > HARD_MAX_LEAVES or args.max_leaves < 1:
        print(f"error: --max-leaves must be between 1 and {HARD_MAX_LEAVES}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "dot" and args.command != "hasse":
        print("error: --format dot is only available for hasse", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except BoundExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ConsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (ForestLatticeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
