"""Combinatorial diagrams of spatial trivalent graphs.

A diagram is a set of arcs ``0..num_arcs-1`` glued by three kinds of node:

* crossings ``(over, under_in, under_out, sign)``; the under strand is cut
  into two arcs, the over arc passes through;
* merge vertices ``vm left right stem`` (two arcs in, one out);
* split vertices ``vs stem left right`` (one in, two out).

Arcs that touch no endpoint slot are free loops.  Every other arc is
produced by exactly one slot (crossing ``under_out``, merge ``stem``,
split ``left``/``right``) and consumed by exactly one slot (crossing
``under_in``, merge ``left``/``right``, split ``stem``).  Since vertices
are only ever 2-in-1-out or 1-in-2-out, sinks and sources cannot occur.

Text format (one statement per line, ``#`` starts a comment)::

    diagram v1
    arcs 3
    vm 0 1 2
    vs 2 0 1
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import ValidationReport
from .formats import ParseError
from .unionfind import UnionFind

MERGE, SPLIT = "merge", "split"


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Vertex:
    kind: str
    left: int
    right: int
    stem: int

    def __post_init__(self):
        if self.kind not in (MERGE, SPLIT):
            raise ValueError(f"vertex kind must be merge or split, got {self.kind!r}")

    @property
    def inputs(self):
        return (self.left, self.right) if self.kind == MERGE else (self.stem,)

    @property
    def outputs(self):
        return (self.stem,) if self.kind == MERGE else (self.left, self.right)


@dataclass(frozen=True)
class Diagram:
    num_arcs: int
    crossings: tuple = ()
    vertices: tuple = ()
    free_loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "free_loops", tuple(self.free_loops))

    def __str__(self):
        return serialize_diagram(self)


class PatternMismatch(ValueError):
    """A move site or component does not match the required local pattern."""

    def __init__(self, site, reason):
        self.site = site
        self.reason = reason
        super().__init__(f"{site}: {reason}" if site is not None else reason)


class NotCircleComponent(PatternMismatch):
    pass


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport, diagram=None):
        self.report = report
        self.diagram = diagram
        super().__init__(str(report))


# --- slots --------------------------------------------------------------------

def producer_slots(d: Diagram):
    """Yield ``(arc, slot_name)`` for every slot that starts an arc."""
    for i, c in enumerate(d.crossings):
        yield c.under_out, f"x{i}.under_out"
    for i, v in enumerate(d.vertices):
        if v.kind == MERGE:
            yield v.stem, f"v{i}.stem"
        else:
            yield v.left, f"v{i}.left"
            yield v.right, f"v{i}.right"


def consumer_slots(d: Diagram):
    """Yield ``(arc, slot_name)`` for every slot that ends an arc."""
    for i, c in enumerate(d.crossings):
        yield c.under_in, f"x{i}.under_in"
    for i, v in enumerate(d.vertices):
        if v.kind == MERGE:
            yield v.left, f"v{i}.left"
            yield v.right, f"v{i}.right"
        else:
            yield v.stem, f"v{i}.stem"


def _all_refs(d: Diagram):
    for i, c in enumerate(d.crossings):
        yield c.over, f"x{i}.over"
    yield from producer_slots(d)
    yield from consumer_slots(d)
    for a in d.free_loops:
        yield a, "loop"


def validate(d: Diagram) -> ValidationReport:
    rep = ValidationReport("diagram")
    n = d.num_arcs
    if n < 0:
        rep.add("range", (n,), "negative arc count")
        return rep
    for a, slot in _all_refs(d):
        if not 0 <= a < n:
            rep.add("range", (a,), f"{slot} refers to a missing arc")
    if not rep.ok:
        return rep

    produced = {}
    consumed = {}
    for a, slot in producer_slots(d):
        produced.setdefault(a, []).append(slot)
    for a, slot in consumer_slots(d):
        consumed.setdefault(a, []).append(slot)
    loops = set()
    for a in d.free_loops:
        if a in loops:
            rep.add("loop", (a,), "declared as a loop twice")
        loops.add(a)
    for a in range(n):
        p, c = produced.get(a, []), consumed.get(a, [])
        if a in loops:
            if p or c:
                rep.add("loop", (a,), "free loop has endpoints: " + ", ".join(p + c))
            continue
        if len(p) != 1:
            rep.add("producer", (a,), ("produced by " + " and ".join(p)) if p else "no producing slot")
        if len(c) != 1:
            rep.add("consumer", (a,), ("consumed by " + " and ".join(c)) if c else "no consuming slot")
    return rep


def check_valid(d: Diagram) -> Diagram:
    rep = validate(d)
    if not rep.ok:
        raise ValidationError(rep, d)
    return d


# --- structure ----------------------------------------------------------------

def arcs(d: Diagram):
    return list(range(d.num_arcs))


def components(d: Diagram):
    """Arcs grouped by connectivity through under-crossings and vertices.

    The over arc of a crossing is not joined to the under arcs.  Classes are
    sorted lists, ordered by their smallest arc.
    """
    uf = UnionFind(d.num_arcs)
    for c in d.crossings:
        uf.union(c.under_in, c.under_out)
    for v in d.vertices:
        uf.union(v.left, v.stem)
        uf.union(v.right, v.stem)
    return uf.classes()


def circle_components(d: Diagram):
    """Components that contain no vertex (embedded circles)."""
    at_vertex = {a for v in d.vertices for a in (v.left, v.right, v.stem)}
    return [c for c in components(d) if not at_vertex.intersection(c)]


def producer_of(d: Diagram):
    """arc -> ("x", i) or ("v", i, role) for the slot starting the arc."""
    out = {}
    for i, c in enumerate(d.crossings):
        out[c.under_out] = ("x", i)
    for i, v in enumerate(d.vertices):
        if v.kind == MERGE:
            out[v.stem] = ("v", i, "stem")
        else:
            out[v.left] = ("v", i, "left")
            out[v.right] = ("v", i, "right")
    return out


def consumer_of(d: Diagram):
    """arc -> ("x", i) or ("v", i, role) for the slot ending the arc."""
    out = {}
    for i, c in enumerate(d.crossings):
        out[c.under_in] = ("x", i)
    for i, v in enumerate(d.vertices):
        if v.kind == MERGE:
            out[v.left] = ("v", i, "left")
            out[v.right] = ("v", i, "right")
        else:
            out[v.stem] = ("v", i, "stem")
    return out


# --- text format --------------------------------------------------------------

_ARC = re.compile(r"^a?(\d+)$")
_ARITY = {"loop": 1, "x+": 3, "x-": 3, "vm": 3, "vs": 3, "arcs": 1}


def _arc(no, tok):
    m = _ARC.match(tok)
    if not m:
        raise ParseError(no, f"bad arc id {tok!r}")
    return int(m.group(1))


def parse_diagram(text: str) -> Diagram:
    """Parse and validate.  The header and ``arcs`` line may be omitted;
    without ``arcs`` the count is one more than the largest arc id."""
    num_arcs = None
    crossings, vertices, loops = [], [], []
    refs = []
    seen_statement = False
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        key, args = toks[0], toks[1:]
        if key == "diagram":
            if seen_statement or args != ["v1"]:
                raise ParseError(no, "header must be the first line and read 'diagram v1'")
            seen_statement = True
            continue
        seen_statement = True
        if key not in _ARITY:
            raise ParseError(no, f"unknown statement {key!r}")
        if len(args) != _ARITY[key]:
            raise ParseError(no, f"{key!r} takes {_ARITY[key]} argument(s), got {len(args)}")
        if key == "arcs":
            if num_arcs is not None:
                raise ParseError(no, "duplicate 'arcs' line")
            if not args[0].isdigit():
                raise ParseError(no, f"bad arc count {args[0]!r}")
            num_arcs = int(args[0])
            continue
        ids = [_arc(no, t) for t in args]
        refs.extend((no, a) for a in ids)
        if key == "loop":
            loops.append(ids[0])
        elif key in ("x+", "x-"):
            crossings.append(Crossing(ids[0], ids[1], ids[2], 1 if key == "x+" else -1))
        elif key == "vm":
            vertices.append(Vertex(MERGE, ids[0], ids[1], ids[2]))
        else:
            vertices.append(Vertex(SPLIT, ids[1], ids[2], ids[0]))
    if num_arcs is None:
        num_arcs = max((a for _, a in refs), default=-1) + 1
    for no, a in refs:
        if a >= num_arcs:
            raise ParseError(no, f"arc {a} out of range (arcs {num_arcs})")
    return check_valid(Diagram(num_arcs, crossings, vertices, loops))


def serialize_diagram(d: Diagram) -> str:
    lines = ["diagram v1", f"arcs {d.num_arcs}"]
    lines += [f"loop {a}" for a in d.free_loops]
    for c in d.crossings:
        lines.append(f"x{'+' if c.sign > 0 else '-'} {c.over} {c.under_in} {c.under_out}")
    for v in d.vertices:
        if v.kind == MERGE:
            lines.append(f"vm {v.left} {v.right} {v.stem}")
        else:
            lines.append(f"vs {v.stem} {v.left} {v.right}")
    return "\n".join(lines) + "\n"


# --- isomorphism --------------------------------------------------------------

def _node_arcs(node):
    if isinstance(node, Crossing):
        return (node.over, node.under_in, node.under_out)
    return (node.left, node.right, node.stem)


def _node_tag(node):
    return ("x", node.sign) if isinstance(node, Crossing) else ("v", node.kind)


def find_isomorphism(a: Diagram, b: Diagram):
    """Arc map ``a -> b`` carrying nodes onto nodes (same kind, sign and
    slot roles), or ``None``.  Plain backtracking; diagrams are small."""
    if (a.num_arcs != b.num_arcs or len(a.crossings) != len(b.crossings)
            or len(a.vertices) != len(b.vertices) or len(a.free_loops) != len(b.free_loops)):
        return None
    na = list(a.crossings) + list(a.vertices)
    nb = list(b.crossings) + list(b.vertices)
    if sorted(map(_node_tag, na), key=str) != sorted(map(_node_tag, nb), key=str):
        return None

    # visit nodes so that each one shares arcs with earlier ones where possible
    order, placed, todo = [], set(), list(range(len(na)))
    while todo:
        best = max(todo, key=lambda i: (len(placed.intersection(_node_arcs(na[i]))), -i))
        todo.remove(best)
        order.append(best)
        placed.update(_node_arcs(na[best]))

    fwd, back = {}, {}
    used = [False] * len(nb)

    def bind(pairs):
        added = []
        for x, y in pairs:
            if fwd.get(x, y) != y or back.get(y, x) != x:
                for k in added:
                    del back[fwd.pop(k)]
                return None
            if x not in fwd:
                fwd[x], back[y] = y, x
                added.append(x)
        return added

    def go(k):
        if k == len(order):
            return True
        node = na[order[k]]
        tag = _node_tag(node)
        for j, cand in enumerate(nb):
            if used[j] or _node_tag(cand) != tag:
                continue
            added = bind(zip(_node_arcs(node), _node_arcs(cand)))
            if added is None:
                continue
            used[j] = True
            if go(k + 1):
                return True
            used[j] = False
            for x in added:
                del back[fwd.pop(x)]
        return False

    if not go(0):
        return None
    rest_a = [x for x in range(a.num_arcs) if x not in fwd]
    rest_b = [y for y in range(b.num_arcs) if y not in back]
    if len(rest_a) != len(rest_b):
        return None
    fwd.update(zip(rest_a, rest_b))
    return fwd


def isomorphic(a: Diagram, b: Diagram) -> bool:
    return find_isomorphism(a, b) is not None
