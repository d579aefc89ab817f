"""Command-line entry point ``grack``.

Exit codes: 0 success / valid, 1 a check failed, 2 usage, IO or parse error.
Results go to stdout, diagnostics to stderr.

Wherever an algebra is expected, either a file path or a built-in name is
accepted.  Groups: ``Z<n>``, ``S<n>``.  Racks: ``D<n>`` (dihedral),
``T<n>`` (trivial).  Groupoid racks: ``heap:<group>``, ``mgr:<group>[,<group>...]``
(conjugation), ``rack-square:<rack>``, ``augmented:<group>:<n>:<delta>``
(conjugation datum).
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import formats
from .algebra import (
    AxiomCheckFailed,
    FiniteGroup,
    FiniteRack,
    GroupoidRack,
    MalformedTable,
    SymmetricRackData,
    check_group,
    check_groupoid_rack,
    check_rack,
    check_symmetric_rack,
)
from .coloring import TooLarge, count_colorings, count_colorings_oracle, enumerate_colorings
from .constructions import (
    AugmentedRackData,
    ConditionViolated,
    MultipleGroupRackData,
    augmented_groupoid_rack,
    check_augmented_rack,
    check_multiple_group_rack,
    conjugation_augmented,
    conjugation_mgr,
    heap_rack,
    multiple_group_rack,
    rack_square,
)
from .corpus import corpus, corpus_dir, invariance_rows
from .diagram import PatternMismatch, ValidationError, parse_diagram, serialize_diagram, validate
from .formats import ParseError
from .groups import builtin_group, dihedral_quandle, trivial_rack
from .moves import format_boundary, parse_sites, rewrite_sequence
from .mutation import mutation_trial
from .universality import (
    LemmaViolated,
    UniversalityData,
    check_universality_conditions,
    universality_construct,
)

DEFAULT_ALGEBRAS = ("heap:Z2", "heap:Z3", "mgr:S3")
PARALLEL_MIN = 10**6


class UsageError(Exception):
    pass


# --- resolving inputs ---------------------------------------------------------

def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_object(name: str):
    """A file path or built-in name -> parsed algebra object."""
    if Path(name).is_file():
        return formats.read_algebra(_read(name))
    try:
        return _builtin(name)
    except (KeyError, ValueError):
        raise UsageError(f"no such file or built-in algebra: {name!r}") from None


def _builtin(name):
    if ":" not in name:
        m = re.match(r"^([DT])(\d+)$", name, re.IGNORECASE)
        if m:
            n = int(m.group(2))
            if n < 1:
                raise KeyError(name)
            return dihedral_quandle(n) if m.group(1).upper() == "D" else trivial_rack(n)
        return builtin_group(name)
    kind, arg = name.split(":", 1)
    if kind == "heap":
        return heap_rack(builtin_group(arg))
    if kind == "mgr":
        return multiple_group_rack(conjugation_mgr([builtin_group(g) for g in arg.split(",")]))
    if kind == "rack-square":
        r = _builtin(arg)
        if not isinstance(r, FiniteRack):
            raise KeyError(name)
        return rack_square(r)
    if kind == "augmented":
        g, n, delta = arg.split(":")
        return augmented_groupoid_rack(conjugation_augmented(builtin_group(g)), int(n), int(delta))
    raise KeyError(name)


def load_group(name: str) -> FiniteGroup:
    g = load_object(name)
    if not isinstance(g, FiniteGroup):
        raise UsageError(f"{name} is not a group")
    return g


def load_groupoid_rack(name: str) -> GroupoidRack:
    obj = load_object(name)
    if isinstance(obj, GroupoidRack):
        return obj
    if isinstance(obj, MultipleGroupRackData):
        return multiple_group_rack(obj)
    if isinstance(obj, UniversalityData):
        return universality_construct(obj)[0]
    raise UsageError(f"{name}: a {type(obj).__name__} is not a groupoid rack")


def load_diagram(path):
    return parse_diagram(_read(path))


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- check --------------------------------------------------------------------

def _report_for(obj):
    if isinstance(obj, GroupoidRack):
        return check_groupoid_rack(obj)
    if isinstance(obj, SymmetricRackData):
        return check_symmetric_rack(obj)
    if isinstance(obj, FiniteRack):
        return check_rack(obj)
    if isinstance(obj, FiniteGroup):
        return check_group(obj)
    if isinstance(obj, MultipleGroupRackData):
        return check_multiple_group_rack(obj)
    if isinstance(obj, AugmentedRackData):
        return check_augmented_rack(obj)
    if isinstance(obj, UniversalityData):
        return check_universality_conditions(obj)
    raise UsageError(f"cannot check {type(obj).__name__}")


def cmd_check(args):
    if args.diagram:
        rep = validate(parse_diagram_unchecked(_read(args.diagram)))
        print(rep)
        return 0 if rep.ok else 1
    obj = load_object(args.algebra)
    rep = _report_for(obj)
    print(rep)
    if not rep.ok:
        return 1
    if args.mutations:
        target = obj.rack if isinstance(obj, SymmetricRackData) else obj
        try:
            trials = mutation_trial(target, args.mutations, args.seed)
        except TypeError as exc:
            raise UsageError(str(exc)) from None
        missed = [what for what, hit in trials if not hit]
        print(f"mutations: {len(trials) - len(missed)}/{len(trials)} detected (seed {args.seed})")
        for what in missed:
            print(f"  undetected: {what}")
        return 1 if missed else 0
    return 0


def parse_diagram_unchecked(text):
    """Parse without raising on invariant violations, so they can be reported."""
    try:
        return parse_diagram(text)
    except ValidationError as exc:
        return exc.diagram


# --- build --------------------------------------------------------------------

def cmd_build(args):
    what = args.what
    if what == "heap":
        if not args.group:
            raise UsageError("build heap needs --group")
        gr = heap_rack(load_group(args.group))
    elif what == "mgr":
        if args.data:
            d = load_object(args.data)
            if not isinstance(d, MultipleGroupRackData):
                raise UsageError("--data must be an 'mgr v1' file")
        elif args.groups:
            d = conjugation_mgr([load_group(g) for g in args.groups.split(",")])
        else:
            raise UsageError("build mgr needs --data or --groups")
        gr = multiple_group_rack(d)
    elif what == "augmented":
        if args.data:
            d = load_object(args.data)
            if not isinstance(d, AugmentedRackData):
                raise UsageError("--data must be an 'augmented v1' file")
        elif args.group:
            d = conjugation_augmented(load_group(args.group))
        else:
            raise UsageError("build augmented needs --data or --group")
        if args.delta not in (0, 1):
            raise UsageError("--delta must be 0 or 1")
        gr = augmented_groupoid_rack(d, args.n, args.delta)
    elif what == "universal":
        if not args.data:
            raise UsageError("build universal needs --name")
        d = load_object(args.data)
        if not isinstance(d, UniversalityData):
            raise UsageError("--data must be a 'universal v1' file")
        gr, _ = universality_construct(d)
    else:   # rack-square
        if not args.rack:
            raise UsageError("build rack-square needs --rack")
        r = load_object(args.rack)
        if isinstance(r, SymmetricRackData):
            r = r.rack
        if not isinstance(r, FiniteRack):
            raise UsageError("--rack must name a rack")
        gr = rack_square(r)
    _emit(formats.write_groupoid_rack(gr), args.out)
    return 0


# --- color --------------------------------------------------------------------

def cmd_color(args):
    d = load_diagram(args.diagram)
    x = load_groupoid_rack(args.algebra)
    if args.action == "enum":
        for c in enumerate_colorings(d, x):
            print(" ".join(map(str, c)))
        return 0
    t0 = time.perf_counter()
    if args.enumerate:
        n = sum(1 for _ in enumerate_colorings(d, x))
    else:
        workers = args.parallel
        if workers is None:
            # default to every core, but only when the search is big enough
            # to pay for starting the pool
            workers = (os.cpu_count() or 1) if x.size ** d.num_arcs > PARALLEL_MIN else 1
        n = count_colorings(d, x, workers=workers)
    status = 0
    if args.oracle:
        try:
            ref = count_colorings_oracle(d, x)
        except TooLarge as exc:
            raise UsageError(f"--oracle: {exc}") from None
        if ref != n:
            print(f"MISMATCH: solver {n}, oracle {ref}", file=sys.stderr)
            status = 1
    ms = round((time.perf_counter() - t0) * 1000, 3)
    if args.json:
        print(json.dumps({"diagram": args.diagram, "algebra": args.algebra, "count": n,
                          "elapsed_ms": ms}))
    else:
        print(n)
    return status


# --- move ---------------------------------------------------------------------

def cmd_move(args):
    d = load_diagram(args.diagram)
    try:
        sites = parse_sites(args.site)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = rewrite_sequence(d, sites)
    _emit(serialize_diagram(res.diagram), args.out)
    if args.boundary:
        print(f"boundary: {format_boundary(res.boundary)}", file=sys.stderr)
    return 0


# --- invariance ---------------------------------------------------------------

def cmd_invariance(args):
    names = args.algebra or list(DEFAULT_ALGEBRAS)
    algebras = [(n, load_groupoid_rack(n)) for n in names]
    root = corpus_dir(args.corpus)
    if not root.is_dir():
        raise UsageError(f"corpus directory not found: {root}")
    pairs = corpus(root)
    rows = invariance_rows(pairs, algebras)
    if args.json:
        print(json.dumps(rows, indent=1))
    else:
        w = max([len(r["pair"]) for r in rows] + [4])
        wa = max([len(r["algebra"]) for r in rows] + [7])
        print(f"{'pair':<{w}}  {'kind':<9} {'algebra':<{wa}} {'before':>8} {'after':>8}  boundary  result")
        for r in rows:
            print(f"{r['pair']:<{w}}  {r['kind']:<9} {r['algebra']:<{wa}} {r['before']:>8} {r['after']:>8}"
                  f"  {'same' if r['boundary'] else 'DIFF':<8}  {'pass' if r['ok'] else 'FAIL'}")
        bad = sum(not r["ok"] for r in rows)
        print(f"{len(pairs)} pairs x {len(algebras)} algebras: {len(rows) - bad} pass, {bad} fail")
    return 0 if all(r["ok"] for r in rows) else 1


# --- entry point --------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="grack", description="Finite groupoid racks and diagram colorings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify an algebra's axioms or a diagram's invariants")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--algebra")
    g.add_argument("--diagram")
    c.add_argument("--mutations", type=int, default=0, help="also run N single-cell mutation trials")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="build a groupoid rack")
    b.add_argument("what", choices=["heap", "mgr", "augmented", "universal", "rack-square"])
    b.add_argument("--group")
    b.add_argument("--groups", help="comma-separated built-in groups (mgr with conjugation)")
    b.add_argument("--data")
    b.add_argument("--rack")
    b.add_argument("--n", type=int, default=0)
    b.add_argument("--delta", type=int, default=0)
    b.add_argument("-o", "--out")
    b.set_defaults(func=cmd_build)

    col = sub.add_parser("color", help="count or list colorings")
    col.add_argument("action", choices=["count", "enum"])
    col.add_argument("--diagram", required=True)
    col.add_argument("--algebra", required=True)
    col.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    col.add_argument("--enumerate", action="store_true", help="count by full enumeration")
    col.add_argument("--json", action="store_true")
    col.add_argument("--parallel", type=_positive, default=None,
                     help="worker processes (default: all cores for large searches)")
    col.set_defaults(func=cmd_color)

    mv = sub.add_parser("move", help="apply a move")
    mv.add_argument("action", choices=["apply"])
    mv.add_argument("--diagram", required=True)
    mv.add_argument("--site", required=True, help='e.g. "R2+ fwd 3 0"; several separated by ";"')
    mv.add_argument("--boundary", action="store_true", help="print boundary points to stderr")
    mv.add_argument("-o", "--out")
    mv.set_defaults(func=cmd_move)

    inv = sub.add_parser("invariance", help="run the move-invariance suite")
    inv.add_argument("--algebra", action="append")
    inv.add_argument("--corpus")
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ParseError, MalformedTable, PatternMismatch) as exc:
        print(f"grack: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"grack: invalid diagram\n{exc}", file=sys.stderr)
        return 2
    except (AxiomCheckFailed, ConditionViolated, LemmaViolated) as exc:
        print(f"grack: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
