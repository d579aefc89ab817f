"""Colorings of diagrams by a finite groupoid rack.

A coloring is a tuple ``c`` with ``c[arc]`` a morphism index, such that

* positive crossing: ``c[under_out] = c[under_in] * c[over]``;
* negative crossing: ``c[under_out] = c[under_in] *^-1 c[over]``;
* merge and split vertex: ``c[stem] = c[left] c[right]`` (composable).

The solver propagates forced values and branches on the smallest unassigned
arc, so single-process enumeration is lexicographic.  The oracle tests every
total assignment with numpy and shares no code with the solver.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .algebra import UNDEFINED, GroupoidRack
from .diagram import Diagram, NotCircleComponent, circle_components
from .unionfind import UnionFind

ORACLE_LIMIT = 10 ** 8


class TooLarge(ValueError):
    pass


def is_coloring(d: Diagram, x: GroupoidRack, c) -> bool:
    if len(c) != d.num_arcs:
        return False
    op, comp = x.op, x.groupoid.comp
    for cr in d.crossings:
        if cr.sign > 0:
            if op[c[cr.under_in], c[cr.over]] != c[cr.under_out]:
                return False
        elif op[c[cr.under_out], c[cr.over]] != c[cr.under_in]:
            return False
    for v in d.vertices:
        if comp[c[v.left], c[v.right]] != c[v.stem]:
            return False
    return True


# --- solver -------------------------------------------------------------------

class _Solver:
    """Propagating backtracker over a fixed list of arcs."""

    def __init__(self, d: Diagram, x: GroupoidRack):
        self.n = d.num_arcs
        self.m = x.size
        self.op = x.op.tolist()
        self.op_inv = x.op_inv.tolist()
        self.comp = x.groupoid.comp.tolist()
        self.inverse = x.groupoid.inverse.tolist()
        # constraints: ("x", over, in, out, sign) or ("v", left, right, stem)
        self.cons = [("x", c.over, c.under_in, c.under_out, c.sign) for c in d.crossings]
        self.cons += [("v", v.left, v.right, v.stem) for v in d.vertices]
        self.watch = [[] for _ in range(self.n)]
        for k, con in enumerate(self.cons):
            for a in set(con[1:4]):
                self.watch[a].append(k)
        self.val = [UNDEFINED] * self.n

    def _fire(self, k, trail):
        """Apply constraint k; returns False on contradiction."""
        val = self.val
        con = self.cons[k]
        if con[0] == "x":
            _, o, i, u, s = con
            vo, vi, vu = val[o], val[i], val[u]
            if vo < 0:
                return True
            fwd, bwd = (self.op, self.op_inv) if s > 0 else (self.op_inv, self.op)
            if vi >= 0:
                want = fwd[vi][vo]
                if vu < 0:
                    return self._set(u, want, trail)
                return vu == want
            if vu >= 0:
                return self._set(i, bwd[vu][vo], trail)
            return True
        _, l, r, st = con
        vl, vr, vs = val[l], val[r], val[st]
        comp, inv = self.comp, self.inverse
        if vl >= 0 and vr >= 0:
            want = comp[vl][vr]
            if want < 0:
                return False
            if vs < 0:
                return self._set(st, want, trail)
            return vs == want
        if vs < 0:
            return True
        if vl >= 0:
            want = comp[inv[vl]][vs]
            return want >= 0 and self._set(r, want, trail)
        if vr >= 0:
            want = comp[vs][inv[vr]]
            return want >= 0 and self._set(l, want, trail)
        return True

    def _set(self, a, v, trail):
        cur = self.val[a]
        if cur >= 0:
            return cur == v
        self.val[a] = v
        trail.append(a)
        return self._propagate(a, trail)

    def _propagate(self, a, trail):
        for k in self.watch[a]:
            if not self._fire(k, trail):
                return False
        return True

    def _undo(self, trail, mark):
        while len(trail) > mark:
            self.val[trail.pop()] = UNDEFINED

    def _next_free(self, start):
        val = self.val
        for a in range(start, self.n):
            if val[a] < 0:
                return a
        return -1

    def solutions(self, start=0, values=None):
        """Yield every completion as a tuple, in lexicographic order."""
        a = self._next_free(start)
        if a < 0:
            yield tuple(self.val)
            return
        trail = []
        for v in (range(self.m) if values is None else values):
            if self._set(a, v, trail):
                yield from self.solutions(a + 1)
            self._undo(trail, 0)

    def count(self, start=0, values=None):
        a = self._next_free(start)
        if a < 0:
            return 1
        total = 0
        trail = []
        for v in (range(self.m) if values is None else values):
            if self._set(a, v, trail):
                total += self.count(a + 1)
            self._undo(trail, 0)
        return total


def _blocks(d: Diagram):
    """Split a diagram into constraint-connected pieces, each renumbered.

    Returns ``(pieces, isolated)``: ``pieces`` is a list of sub-diagrams and
    ``isolated`` counts arcs that meet no node at all.
    """
    uf = UnionFind(d.num_arcs)
    for c in d.crossings:
        uf.union(c.over, c.under_in)
        uf.union(c.under_in, c.under_out)
    for v in d.vertices:
        uf.union(v.left, v.stem)
        uf.union(v.right, v.stem)
    touched = {a for c in d.crossings for a in (c.over, c.under_in, c.under_out)}
    touched |= {a for v in d.vertices for a in (v.left, v.right, v.stem)}
    pieces = []
    for cls in uf.classes():
        if not touched.intersection(cls):
            continue
        ren = {a: i for i, a in enumerate(cls)}
        cr = [type(c)(ren[c.over], ren[c.under_in], ren[c.under_out], c.sign)
              for c in d.crossings if c.over in ren]
        vs = [type(v)(v.kind, ren[v.left], ren[v.right], ren[v.stem])
              for v in d.vertices if v.stem in ren]
        pieces.append(Diagram(len(cls), cr, vs, ()))
    return pieces, d.num_arcs - len(touched)


def _count_branch(args):
    d, x, values = args
    return _Solver(d, x).count(values=values)


def _count_piece(d, x, workers):
    if workers <= 1 or x.size < 2 or d.num_arcs < 4:
        return _Solver(d, x).count()
    chunks = [list(range(x.size))[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_branch, [(d, x, ch) for ch in chunks if ch]))


def count_colorings(d: Diagram, x: GroupoidRack, workers: int = 1) -> int:
    """Exact number of colorings.  Independent pieces are counted separately
    and multiplied; ``workers > 1`` splits each piece over processes."""
    if workers is None or workers < 1:
        workers = os.cpu_count() or 1
    pieces, isolated = _blocks(d)
    total = x.size ** isolated
    for p in pieces:
        if total == 0:
            break
        total *= _count_piece(p, x, workers)
    return total


def enumerate_colorings(d: Diagram, x: GroupoidRack):
    """Stream colorings in lexicographic order of the assignment tuple."""
    return _Solver(d, x).solutions()


# --- oracle -------------------------------------------------------------------

def count_colorings_oracle(d: Diagram, x: GroupoidRack, chunk: int = 1 << 20) -> int:
    """Test every assignment arcs -> X; raises TooLarge past 10^8 of them."""
    n, m = d.num_arcs, x.size
    space = m ** n
    if space > ORACLE_LIMIT:
        raise TooLarge(f"{m}^{n} = {space} assignments exceeds {ORACLE_LIMIT}")
    if n == 0:
        return 1
    op, comp = x.op, x.groupoid.comp
    radix = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    total = 0
    for lo in range(0, space, chunk):
        idx = np.arange(lo, min(space, lo + chunk), dtype=np.int64)
        cols = (idx[:, None] // radix[None, :]) % m
        ok = np.ones(len(idx), dtype=bool)
        for c in d.crossings:
            o, i, u = cols[:, c.over], cols[:, c.under_in], cols[:, c.under_out]
            if c.sign > 0:
                ok &= op[i, o] == u
            else:
                ok &= op[u, o] == i
        for v in d.vertices:
            ok &= comp[cols[:, v.left], cols[:, v.right]] == cols[:, v.stem]
        total += int(ok.sum())
    return total


# --- orientation reversal -----------------------------------------------------

def recolor_inverse_move(c, d: Diagram, component, x: GroupoidRack):
    """Replace each color on a circle component by its inverse morphism.

    ``component`` is the collection of arcs of one circle component of ``d``.
    The result colors the diagram with that component reversed.
    """
    comp = set(component)
    if not any(comp == set(cc) for cc in circle_components(d)):
        raise NotCircleComponent(None, f"arcs {sorted(comp)} are not a circle component")
    inv = x.groupoid.inverse
    return tuple(int(inv[v]) if a in comp else v for a, v in enumerate(c))
