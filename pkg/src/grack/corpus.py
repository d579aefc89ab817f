"""Before/after diagram pairs for move-invariance tests.

Each pair is a ``<name>.pair`` manifest of ``key: value`` lines::

    name: r2-plus
    kind: R2+
    before: r2-plus.before.dg
    after: r2-plus.after.dg
    site: R2+ fwd 3 0
    boundary: 0:0 0:5 1:1 2:2 3:3

``site`` may hold several sites separated by ``;`` (kind ``composite``).
``boundary`` lists ``before:after`` arc pairs through the same boundary
point; a leading ``~`` marks a reversed strand.  The directory defaults to
the copy shipped inside the package; ``GRACK_CORPUS`` overrides it.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .coloring import count_colorings, enumerate_colorings
from .diagram import Diagram, parse_diagram, serialize_diagram
from .moves import format_boundary, parse_boundary, parse_sites, rewrite_sequence

REQUIRED = ("name", "kind", "before", "after", "boundary")


@dataclass(frozen=True)
class MovePair:
    name: str
    kind: str
    before: Diagram
    after: Diagram
    boundary: tuple
    sites: tuple = ()
    description: str = ""
    before_path: Path = None
    after_path: Path = None


def corpus_dir(path=None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get("GRACK_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).with_name("corpus")


def read_manifest(text: str) -> dict:
    out = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {no}: expected 'key: value'")
        key, value = line.split(":", 1)
        out[key.strip()] = value.strip()
    missing = [k for k in REQUIRED if k not in out]
    if missing:
        raise ValueError(f"manifest lacks {', '.join(missing)}")
    return out


def load_pair(manifest: Path) -> MovePair:
    meta = read_manifest(manifest.read_text())
    base = manifest.parent
    bp, ap = base / meta["before"], base / meta["after"]
    return MovePair(
        name=meta["name"],
        kind=meta["kind"],
        before=parse_diagram(bp.read_text()),
        after=parse_diagram(ap.read_text()),
        boundary=tuple(parse_boundary(meta["boundary"])),
        sites=tuple(parse_sites(meta.get("site", ""))),
        description=meta.get("description", ""),
        before_path=bp,
        after_path=ap,
    )


def corpus(path=None):
    """All pairs in the corpus directory, sorted by manifest file name."""
    root = corpus_dir(path)
    return [load_pair(p) for p in sorted(root.glob("*.pair"))]


def write_pair(root, name, kind, before_text, site, description=""):
    """Derive the after diagram and boundary by applying ``site`` and write
    the three files of a pair.  Used to (re)generate the shipped corpus."""
    root = Path(root)
    before = parse_diagram(before_text)
    res = rewrite_sequence(before, site)
    (root / f"{name}.before.dg").write_text(serialize_diagram(before))
    (root / f"{name}.after.dg").write_text(serialize_diagram(res.diagram))
    lines = [f"name: {name}", f"kind: {kind}"]
    if description:
        lines.append(f"description: {description}")
    lines += [f"before: {name}.before.dg", f"after: {name}.after.dg",
              f"site: {site}", f"boundary: {format_boundary(res.boundary)}"]
    (root / f"{name}.pair").write_text("\n".join(lines) + "\n")
    return res


def boundary_profile(d, x, points, side):
    """Multiset of colorings of ``d`` restricted to the boundary points.

    On the ``before`` side, inverted points are read through the inverse
    morphism so both sides are compared in the same orientation."""
    inv = x.groupoid.inverse
    out = Counter()
    for c in enumerate_colorings(d, x):
        if side == "before":
            key = tuple(int(inv[c[p.before]]) if p.inverted else c[p.before] for p in points)
        else:
            key = tuple(c[p.after] for p in points)
        out[key] += 1
    return out


def invariance_rows(pairs, algebras):
    """One row per (pair, algebra): both counts and the boundary comparison."""
    rows = []
    for p in pairs:
        for name, x in algebras:
            nb, na = count_colorings(p.before, x), count_colorings(p.after, x)
            local = (boundary_profile(p.before, x, p.boundary, "before")
                     == boundary_profile(p.after, x, p.boundary, "after"))
            rows.append({"pair": p.name, "kind": p.kind, "algebra": name, "before": nb,
                         "after": na, "boundary": local, "ok": nb == na and local})
    return rows
