"""Local rewriting of diagrams by Y-oriented Reidemeister moves and
orientation reversal of circle components.

Moves are applied at an explicit site ``MoveSite(kind, direction, anchor)``;
text form is ``"<kind> <fwd|bwd> <anchor ints...>"``, e.g. ``"R2+ fwd 3 0"``.

Anchors:

* ``R2+`` / ``R2-`` fwd ``(over, under)``: the strand ``under`` is pushed
  under ``over`` twice (signs ``+,-`` for R2+, ``-,+`` for R2-).
  bwd ``(c1, c2)``: two consecutive crossings on one under strand.
* ``R3`` ``(x_ab, x_ac, x_bc)``: top strand a over b and c, b over c.  The
  move slides c to the other side of the crossing of a and b; self-inverse.
* ``R5a`` / ``R5b`` (merge / split vertex, strand passing under the vertex
  edges) fwd ``(v, c1, c2)``: the strand crosses under both branches; it is
  moved to cross the stem once.  bwd ``(v, c)``: the crossing under the stem.
* ``R5c`` / ``R5d`` (merge / split, strand passing over) fwd
  ``(v, c_left, c_right)``; bwd ``(v, c)``.
* ``R6a``..``R6d`` ``(m)`` or ``(m, side)``: re-associate the two vertices
  joined by the internal arc ``m``.  a: merge/merge, b: split/split,
  c: merge then split, d: split then merge.  ``side`` picks one of the two
  re-associations for c (forward) and d (backward); 0 = right, 1 = left.
* ``INV`` ``(arc)``: reverse the circle component containing ``arc``.

Removed arcs and crossings are dropped and the survivors renumbered in
order; new arcs and crossings are appended.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import (
    MERGE,
    SPLIT,
    Crossing,
    Diagram,
    NotCircleComponent,
    PatternMismatch,
    Vertex,
    check_valid,
    circle_components,
    components,
    consumer_of,
    producer_of,
)

KINDS = ("R2+", "R2-", "R3", "R5a", "R5b", "R5c", "R5d", "R6a", "R6b", "R6c", "R6d", "INV")
DIRECTIONS = ("fwd", "bwd")
RIGHT, LEFT = 0, 1


@dataclass(frozen=True)
class MoveSite:
    kind: str
    direction: str
    anchor: tuple

    def __post_init__(self):
        kind = self.kind.replace("−", "-")
        if kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be fwd or bwd, got {self.direction!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "anchor", tuple(int(a) for a in self.anchor))

    def __str__(self):
        return " ".join([self.kind, self.direction] + [str(a) for a in self.anchor])


def parse_site(text: str) -> MoveSite:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError(f"bad move site {text!r}")
    try:
        anchor = tuple(int(t) for t in toks[2:])
    except ValueError:
        raise ValueError(f"bad move site {text!r}") from None
    return MoveSite(toks[0], toks[1], anchor)


def parse_sites(text: str):
    """Sequence of sites separated by ``;``."""
    return [parse_site(part) for part in text.split(";") if part.strip()]


@dataclass(frozen=True)
class BoundaryPoint:
    """A point where an arc crosses the boundary of the move's disk.

    ``before`` and ``after`` are the arcs through the point on each side.
    ``inverted`` marks points whose orientation the move reversed, where the
    colors correspond through the involution.
    """
    before: int
    after: int
    inverted: bool = False

    def __str__(self):
        return f"{'~' if self.inverted else ''}{self.before}:{self.after}"


def parse_boundary(text: str):
    out = []
    for tok in text.split():
        inverted = tok.startswith("~")
        a, b = tok.lstrip("~").split(":")
        out.append(BoundaryPoint(int(a), int(b), inverted))
    return out


def format_boundary(points) -> str:
    return " ".join(str(p) for p in points)


@dataclass(frozen=True)
class MoveResult:
    diagram: Diagram
    boundary: tuple
    inverse: MoveSite


# --- working copy -------------------------------------------------------------

class _Work:
    def __init__(self, d: Diagram, site: MoveSite):
        self.site = site
        self.n = d.num_arcs
        self.crossings = list(d.crossings)
        self.vertices = list(d.vertices)
        self.loops = list(d.free_loops)
        self.dead = set()
        self.interior = set()       # surviving arcs whose color the move changes
        self.extra = []             # extra (before, after) boundary points

    def fail(self, reason):
        raise PatternMismatch(self.site, reason)

    def require(self, cond, reason):
        if not cond:
            self.fail(reason)

    def crossing(self, i):
        self.require(0 <= i < len(self.crossings) and self.crossings[i] is not None,
                     f"no crossing {i}")
        return self.crossings[i]

    def vertex(self, i):
        self.require(0 <= i < len(self.vertices), f"no vertex {i}")
        return self.vertices[i]

    def arc(self, a):
        self.require(0 <= a < self.n, f"no arc {a}")
        return a

    def new_arc(self):
        self.n += 1
        return self.n - 1

    def add_crossing(self, c):
        self.crossings.append(c)
        return len(self.crossings) - 1

    def over_uses(self, a):
        return [i for i, c in enumerate(self.crossings) if c is not None and c.over == a]

    def set_consumer(self, arc, new):
        for i, c in enumerate(self.crossings):
            if c is not None and c.under_in == arc:
                self.crossings[i] = replace(c, under_in=new)
                return
        for i, v in enumerate(self.vertices):
            if v.kind == MERGE and v.left == arc:
                self.vertices[i] = replace(v, left=new)
                return
            if v.kind == MERGE and v.right == arc:
                self.vertices[i] = replace(v, right=new)
                return
            if v.kind == SPLIT and v.stem == arc:
                self.vertices[i] = replace(v, stem=new)
                return
        raise AssertionError(f"arc {arc} has no consumer")

    def rename_over(self, old, new):
        for i in self.over_uses(old):
            self.crossings[i] = replace(self.crossings[i], over=new)

    def finish(self):
        """Compact and validate; returns (diagram, arc_map, crossing_map)."""
        amap = {}
        for a in range(self.n):
            if a not in self.dead:
                amap[a] = len(amap)
        cmap = {}
        crossings = []
        for i, c in enumerate(self.crossings):
            if c is not None:
                cmap[i] = len(crossings)
                crossings.append(Crossing(amap[c.over], amap[c.under_in], amap[c.under_out], c.sign))
        vertices = [Vertex(v.kind, amap[v.left], amap[v.right], amap[v.stem]) for v in self.vertices]
        loops = [amap[a] for a in self.loops]
        return check_valid(Diagram(len(amap), crossings, vertices, loops)), amap, cmap

    def result(self, before_arcs, inverse):
        d, amap, cmap = self.finish()
        points = [BoundaryPoint(a, amap[a]) for a in range(before_arcs)
                  if a not in self.dead and a not in self.interior]
        points += [BoundaryPoint(a, amap[b]) for a, b in self.extra]
        points.sort(key=lambda p: (p.before, p.after))
        return MoveResult(d, tuple(points), inverse(amap, cmap))


# --- R2 -----------------------------------------------------------------------

def _r2_signs(kind):
    return (1, -1) if kind == "R2+" else (-1, 1)


def _r2_fwd(d, w: _Work):
    w.require(len(w.site.anchor) == 2, "anchor is (over, under)")
    o, u = (w.arc(a) for a in w.site.anchor)
    w.require(o != u, "over and under arcs coincide")
    s1, s2 = _r2_signs(w.site.kind)
    b = w.new_arc()
    if u in w.loops:
        w.loops.remove(u)
        c = u
    else:
        c = w.new_arc()
        w.set_consumer(u, c)
        w.extra.append((u, c))
    i1 = w.add_crossing(Crossing(o, u, b, s1))
    i2 = w.add_crossing(Crossing(o, b, c, s2))
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "bwd", (cm[i1], cm[i2])))


def _r2_bwd(d, w: _Work):
    w.require(len(w.site.anchor) == 2, "anchor is (crossing, crossing)")
    i1, i2 = w.site.anchor
    w.require(i1 != i2, "crossings coincide")
    c1, c2 = w.crossing(i1), w.crossing(i2)
    w.require(c1.over == c2.over, "crossings have different over arcs")
    w.require((c1.sign, c2.sign) == _r2_signs(w.site.kind), f"signs do not match {w.site.kind}")
    b = c1.under_out
    w.require(b == c2.under_in, "second crossing does not follow the first")
    a, c, o = c1.under_in, c2.under_out, c1.over
    w.require(b not in (a, c), "strand closes inside the move")
    w.require(o not in (a, b, c), "over arc is part of the under strand")
    w.require(not w.over_uses(b), f"arc {b} passes over elsewhere")
    w.crossings[i1] = w.crossings[i2] = None
    w.dead.add(b)
    if a == c:
        w.loops.append(a)
    else:
        w.set_consumer(c, a)
        w.rename_over(c, a)
        w.dead.add(c)
        w.extra.append((c, a))
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "fwd", (am[o], am[a])))


# --- R3 -----------------------------------------------------------------------

def _r3(d, w: _Work):
    w.require(len(w.site.anchor) == 3, "anchor is (x_ab, x_ac, x_bc)")
    iab, iac, ibc = w.site.anchor
    w.require(len({iab, iac, ibc}) == 3, "crossings must be distinct")
    xab, xac, xbc = w.crossing(iab), w.crossing(iac), w.crossing(ibc)
    top = xab.over
    w.require(xac.over == top, "x_ab and x_ac have different over arcs")
    b_pre, b_post = xab.under_in, xab.under_out
    w.require(b_pre != b_post, "middle strand closes at x_ab")
    bp = xbc.over
    w.require(bp in (b_pre, b_post), "x_bc is not over the middle strand next to x_ab")
    other = b_post if bp == b_pre else b_pre
    same = xab.sign == xac.sign
    if xbc.under_out == xac.under_in:
        c0, c1, c2 = xbc.under_in, xbc.under_out, xac.under_out
        w.require((bp == b_pre) == same, "crossing signs do not allow the slide")
        w.crossings[iac] = Crossing(top, c0, c1, xac.sign)
        w.crossings[ibc] = Crossing(other, c1, c2, xbc.sign)
    elif xac.under_out == xbc.under_in:
        c0, c1, c2 = xac.under_in, xac.under_out, xbc.under_out
        w.require((bp == b_post) == same, "crossing signs do not allow the slide")
        w.crossings[ibc] = Crossing(other, c0, c1, xbc.sign)
        w.crossings[iac] = Crossing(top, c1, c2, xac.sign)
    else:
        w.fail("x_ac and x_bc are not consecutive on the bottom strand")
    w.require(c1 not in (c0, c2, top, b_pre, b_post), "bottom strand overlaps the move")
    w.require(top not in (b_pre, b_post, c0, c2), "top arc is part of another strand")
    w.require(not w.over_uses(c1), f"arc {c1} passes over elsewhere")
    w.interior.add(c1)
    flip = "bwd" if w.site.direction == "fwd" else "fwd"
    return w.result(d.num_arcs, lambda am, cm: MoveSite("R3", flip, (cm[iab], cm[iac], cm[ibc])))


# --- R5 -----------------------------------------------------------------------

_R5_VERTEX = {"R5a": MERGE, "R5b": SPLIT, "R5c": MERGE, "R5d": SPLIT}


def _r5_vertex(w: _Work):
    v = w.vertex(w.site.anchor[0])
    w.require(v.kind == _R5_VERTEX[w.site.kind], f"{w.site.kind} needs a {_R5_VERTEX[w.site.kind]} vertex")
    w.require(len({v.left, v.right, v.stem}) == 3, "vertex arcs must be distinct")
    return v


def _r5_under_fwd(d, w: _Work):
    w.require(len(w.site.anchor) == 3, "anchor is (vertex, c1, c2)")
    vi, i1, i2 = w.site.anchor
    v = _r5_vertex(w)
    w.require(i1 != i2, "crossings coincide")
    c1, c2 = w.crossing(i1), w.crossing(i2)
    e = c1.sign
    w.require(c2.sign == e, "crossings have different signs")
    first, second = (v.left, v.right) if e > 0 else (v.right, v.left)
    w.require((c1.over, c2.over) == (first, second),
              "strand must pass under left then right (positive) or right then left (negative)")
    t1 = c1.under_out
    w.require(t1 == c2.under_in, "second crossing does not follow the first")
    t0, t2 = c1.under_in, c2.under_out
    w.require(t1 not in (t0, t2, v.left, v.right, v.stem), "strand overlaps the vertex")
    w.require(not w.over_uses(t1), f"arc {t1} passes over elsewhere")
    w.crossings[i1] = w.crossings[i2] = None
    w.dead.add(t1)
    k = w.add_crossing(Crossing(v.stem, t0, t2, e))
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "bwd", (vi, cm[k])))


def _r5_under_bwd(d, w: _Work):
    w.require(len(w.site.anchor) == 2, "anchor is (vertex, crossing)")
    vi, ic = w.site.anchor
    v = _r5_vertex(w)
    c = w.crossing(ic)
    w.require(c.over == v.stem, "crossing is not under the stem")
    t0, t2, e = c.under_in, c.under_out, c.sign
    w.require(v.stem not in (t0, t2), "strand overlaps the vertex")
    first, second = (v.left, v.right) if e > 0 else (v.right, v.left)
    w.crossings[ic] = None
    t1 = w.new_arc()
    k1 = w.add_crossing(Crossing(first, t0, t1, e))
    k2 = w.add_crossing(Crossing(second, t1, t2, e))
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "fwd", (vi, cm[k1], cm[k2])))


def _r5_over_fwd(d, w: _Work):
    w.require(len(w.site.anchor) == 3, "anchor is (vertex, c_left, c_right)")
    vi, il, ir = w.site.anchor
    v = _r5_vertex(w)
    w.require(il != ir, "crossings coincide")
    cl, cr = w.crossing(il), w.crossing(ir)
    t, e = cl.over, cl.sign
    w.require(cr.over == t and cr.sign == e, "crossings differ in over arc or sign")
    f, g = v.left, v.right
    if v.kind == MERGE:
        w.require(cl.under_out == f and cr.under_out == g, "crossings do not feed the vertex branches")
        f0, g0 = cl.under_in, cr.under_in
        w.require(t not in (f, g, f0, g0), "over strand overlaps the branches")
        w.require(len({f, g, f0, g0}) == 4, "branch arcs overlap")
        s = v.stem
        w.vertices[vi] = Vertex(MERGE, f0, g0, f)
        new = Crossing(t, f, s, e)
    else:
        w.require(cl.under_in == f and cr.under_in == g, "crossings do not leave the vertex branches")
        f1, g1 = cl.under_out, cr.under_out
        w.require(t not in (f, g, f1, g1), "over strand overlaps the branches")
        w.require(len({f, g, f1, g1}) == 4, "branch arcs overlap")
        s = v.stem
        w.vertices[vi] = Vertex(SPLIT, f1, g1, f)
        new = Crossing(t, s, f, e)
    w.require(not w.over_uses(f) and not w.over_uses(g), "a branch arc passes over elsewhere")
    w.crossings[il] = w.crossings[ir] = None
    w.dead.add(g)
    w.interior.add(f)
    k = w.add_crossing(new)
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "bwd", (vi, cm[k])))


def _r5_over_bwd(d, w: _Work):
    w.require(len(w.site.anchor) == 2, "anchor is (vertex, crossing)")
    vi, ic = w.site.anchor
    v = _r5_vertex(w)
    c = w.crossing(ic)
    t, e = c.over, c.sign
    f = v.stem
    if v.kind == MERGE:
        w.require(c.under_in == f, "crossing is not on the stem")
        s = c.under_out
        f0, g0 = v.left, v.right
        w.require(t not in (f, f0, g0), "over strand overlaps the vertex")
        w.require(s != f, "stem closes on itself")
        g = w.new_arc()
        w.vertices[vi] = Vertex(MERGE, f, g, s)
        w.crossings[ic] = None
        kl = w.add_crossing(Crossing(t, f0, f, e))
        kr = w.add_crossing(Crossing(t, g0, g, e))
    else:
        w.require(c.under_out == f, "crossing is not on the stem")
        s = c.under_in
        f1, g1 = v.left, v.right
        w.require(t not in (f, f1, g1), "over strand overlaps the vertex")
        w.require(s != f, "stem closes on itself")
        g = w.new_arc()
        w.vertices[vi] = Vertex(SPLIT, f, g, s)
        w.crossings[ic] = None
        kl = w.add_crossing(Crossing(t, f, f1, e))
        kr = w.add_crossing(Crossing(t, g, g1, e))
    w.require([k for k in w.over_uses(f) if k not in (kl, kr)] == [], f"arc {f} passes over elsewhere")
    w.interior.add(f)
    return w.result(d.num_arcs, lambda am, cm: MoveSite(w.site.kind, "fwd", (vi, cm[kl], cm[kr])))


# --- R6 -----------------------------------------------------------------------
# Slot pattern of the internal arc m: (producer role, consumer role).
#   R6a  I: merge.stem -> merge.right      H: merge.stem -> merge.left
#   R6b  I: split.left -> split.stem       H: split.right -> split.stem
#   R6c  I: merge.stem -> split.stem       H right: split.right -> merge.left
#                                          H left:  split.left -> merge.right
#   R6d  I: split.left -> merge.left       H: split.right -> merge.right

def _r6(d, w: _Work):
    anchor = w.site.anchor
    w.require(len(anchor) in (1, 2), "anchor is (m) or (m, side)")
    m = w.arc(anchor[0])
    side = anchor[1] if len(anchor) == 2 else RIGHT
    w.require(side in (RIGHT, LEFT), "side must be 0 (right) or 1 (left)")
    prod, cons = producer_of(d).get(m), consumer_of(d).get(m)
    w.require(prod is not None and cons is not None and prod[0] == "v" and cons[0] == "v",
              f"arc {m} does not join two vertices")
    pi, ci = prod[1], cons[1]
    w.require(pi != ci, f"arc {m} is a loop at one vertex")
    P, C = d.vertices[pi], d.vertices[ci]
    roles = (f"{P.kind}.{prod[2]}", f"{C.kind}.{cons[2]}")
    w.require(not w.over_uses(m), f"arc {m} passes over elsewhere")
    kind, fwd = w.site.kind, w.site.direction == "fwd"
    new = None
    inv_dir = "bwd" if fwd else "fwd"
    inv_side = side

    if kind == "R6a":
        if fwd and roles == ("merge.stem", "merge.right"):
            A, B, Cc, D = P.left, P.right, C.left, C.stem        # vm A B m; vm C m D
            new = (Vertex(MERGE, Cc, A, m), Vertex(MERGE, m, B, D))
        elif not fwd and roles == ("merge.stem", "merge.left"):
            Cc, A, B, D = P.left, P.right, C.right, C.stem       # vm C A m; vm m B D
            new = (Vertex(MERGE, A, B, m), Vertex(MERGE, Cc, m, D))
    elif kind == "R6b":
        if fwd and roles == ("split.left", "split.stem"):
            A, B, Cc, D = P.stem, P.right, C.left, C.right       # vs A m B; vs m C D
            new = (Vertex(SPLIT, Cc, m, A), Vertex(SPLIT, D, B, m))
        elif not fwd and roles == ("split.right", "split.stem"):
            A, Cc, D, B = P.stem, P.left, C.left, C.right        # vs A C m; vs m D B
            new = (Vertex(SPLIT, m, B, A), Vertex(SPLIT, Cc, D, m))
    elif kind == "R6c":
        if fwd and roles == ("merge.stem", "split.stem"):
            A, B, Cc, D = P.left, P.right, C.left, C.right       # vm A B m; vs m C D
            if side == RIGHT:                                    # vs A C m; vm m B D
                new = (Vertex(SPLIT, Cc, m, A), Vertex(MERGE, m, B, D))
            else:                                                # vs B m D; vm A m C
                new = (Vertex(SPLIT, m, D, B), Vertex(MERGE, A, m, Cc))
        elif not fwd and roles == ("split.right", "merge.left"):
            A, Cc, B, D = P.stem, P.left, C.right, C.stem        # vs A C m; vm m B D
            new = (Vertex(MERGE, A, B, m), Vertex(SPLIT, Cc, D, m))
            inv_side = RIGHT
        elif not fwd and roles == ("split.left", "merge.right"):
            B, D, A, Cc = P.stem, P.right, C.left, C.stem        # vs B m D; vm A m C
            new = (Vertex(MERGE, A, B, m), Vertex(SPLIT, Cc, D, m))
            inv_side = LEFT
    elif kind == "R6d":
        if fwd and roles == ("split.left", "merge.left"):
            A, B, D, Cc = P.stem, P.right, C.right, C.stem       # vs A m B; vm m D C
            if side == RIGHT:                                    # vs A C m; vm D m B
                new = (Vertex(SPLIT, Cc, m, A), Vertex(MERGE, D, m, B))
            else:                                                # vs D B m; vm A m C
                new = (Vertex(SPLIT, B, m, D), Vertex(MERGE, A, m, Cc))
        elif not fwd and roles == ("split.right", "merge.right"):
            X, Y, Z, W = P.stem, P.left, C.left, C.stem          # vs X Y n; vm Z n W
            if side == RIGHT:                                    # vs X n W; vm n Z Y
                new = (Vertex(SPLIT, m, W, X), Vertex(MERGE, m, Z, Y))
            else:                                                # vs Z n Y; vm n X W
                new = (Vertex(SPLIT, m, Y, Z), Vertex(MERGE, m, X, W))
    if new is None:
        w.fail(f"arc {m} joins {roles[0]} to {roles[1]}, which is not a {kind} {w.site.direction} pattern")

    # new producer of m takes the old producer's index, likewise the consumer
    w.vertices[pi], w.vertices[ci] = new
    w.interior.add(m)
    inv_anchor = (m, inv_side) if kind in ("R6c", "R6d") else (m,)
    return w.result(d.num_arcs, lambda am, cm: MoveSite(kind, inv_dir, (am[inv_anchor[0]],) + inv_anchor[1:]))


# --- inverse move -------------------------------------------------------------

def apply_inverse_move(d: Diagram, component) -> Diagram:
    """Reverse a circle component given as a collection of its arcs."""
    return _inverse_move(d, set(component), MoveSite("INV", "fwd", (min(component, default=-1),)))[0]


def _inverse_move(d: Diagram, comp, site):
    if not any(comp == set(c) for c in circle_components(d)):
        raise NotCircleComponent(site, f"arcs {sorted(comp)} are not a circle component")
    out = []
    for c in d.crossings:
        under = c.under_in in comp
        over = c.over in comp
        if under:
            c = Crossing(c.over, c.under_out, c.under_in, c.sign)
        if under != over:
            c = replace(c, sign=-c.sign)
        out.append(c)
    return check_valid(Diagram(d.num_arcs, out, d.vertices, d.free_loops)), comp


def _inv(d, w: _Work):
    w.require(len(w.site.anchor) == 1, "anchor is one arc")
    a = w.arc(w.site.anchor[0])
    comp = next(set(c) for c in components(d) if a in c)
    new, _ = _inverse_move(d, comp, w.site)
    points = tuple(BoundaryPoint(x, x, x in comp) for x in range(d.num_arcs))
    return MoveResult(new, points, MoveSite("INV", "fwd" if w.site.direction == "bwd" else "bwd", (a,)))


# --- dispatch -----------------------------------------------------------------

_RULES = {
    ("R2+", "fwd"): _r2_fwd, ("R2+", "bwd"): _r2_bwd,
    ("R2-", "fwd"): _r2_fwd, ("R2-", "bwd"): _r2_bwd,
    ("R3", "fwd"): _r3, ("R3", "bwd"): _r3,
    ("R5a", "fwd"): _r5_under_fwd, ("R5a", "bwd"): _r5_under_bwd,
    ("R5b", "fwd"): _r5_under_fwd, ("R5b", "bwd"): _r5_under_bwd,
    ("R5c", "fwd"): _r5_over_fwd, ("R5c", "bwd"): _r5_over_bwd,
    ("R5d", "fwd"): _r5_over_fwd, ("R5d", "bwd"): _r5_over_bwd,
    ("R6a", "fwd"): _r6, ("R6a", "bwd"): _r6,
    ("R6b", "fwd"): _r6, ("R6b", "bwd"): _r6,
    ("R6c", "fwd"): _r6, ("R6c", "bwd"): _r6,
    ("R6d", "fwd"): _r6, ("R6d", "bwd"): _r6,
    ("INV", "fwd"): _inv, ("INV", "bwd"): _inv,
}


def rewrite(d: Diagram, site) -> MoveResult:
    """Apply one move; also return the boundary points and the undoing site."""
    if isinstance(site, str):
        site = parse_site(site)
    if site.kind == "INV":
        return _inv(d, _Work(d, site))
    return _RULES[site.kind, site.direction](d, _Work(d, site))


def apply_move(d: Diagram, site) -> Diagram:
    return rewrite(d, site).diagram


def compose_boundaries(first, second):
    """Boundary points of two moves done in sequence."""
    out = []
    for p in first:
        for q in second:
            if q.before == p.after:
                out.append(BoundaryPoint(p.before, q.after, p.inverted != q.inverted))
    return tuple(sorted(out, key=lambda p: (p.before, p.after)))


def rewrite_sequence(d: Diagram, sites) -> MoveResult:
    if isinstance(sites, str):
        sites = parse_sites(sites)
    boundary = tuple(BoundaryPoint(a, a) for a in range(d.num_arcs))
    inverse = None
    for site in sites:
        res = rewrite(d, site)
        boundary = compose_boundaries(boundary, res.boundary)
        d, inverse = res.diagram, res.inverse
    return MoveResult(d, boundary, inverse)
