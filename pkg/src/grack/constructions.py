"""Groupoid racks built from groups, racks and augmented racks.

Each builder re-runs :func:`check_groupoid_rack` on its output and raises
:class:`AxiomCheckFailed` rather than return an unverified structure.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    UNDEFINED,
    AxiomCheckFailed,
    FiniteGroup,
    FiniteGroupoid,
    FiniteRack,
    GroupoidRack,
    MalformedTable,
    ValidationReport,
    _table,
    _vector,
    check_group,
    check_groupoid_rack,
    check_rack,
)
from .groups import conjugation_rack


class ConditionViolated(Exception):
    """Input data breaks a numbered hypothesis of a construction."""

    def __init__(self, condition, witness, report=None):
        self.condition = condition
        self.witness = witness
        self.report = report
        super().__init__(f"condition {condition} violated at {witness}")


def _raise_first(report: ValidationReport):
    v = report.first()
    raise ConditionViolated(v.axiom, v.witness, report)


def _verified(gr: GroupoidRack) -> GroupoidRack:
    rep = check_groupoid_rack(gr)
    if not rep.ok:
        raise AxiomCheckFailed(rep)
    return gr


# --- multiple group racks ---------------------------------------------------

class MultipleGroupRackData:
    """Disjoint union of groups (group ``lam`` occupies a contiguous block)
    with a total operation table on the union."""

    def __init__(self, groups, op):
        self.groups = list(groups)
        sizes = [g.size for g in self.groups]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
        n = int(self.offsets[-1])
        self.size = n
        self.op = _table(op, n, n, "op", n)
        self.block = np.repeat(np.arange(len(sizes)), sizes)

    def members(self, lam):
        return np.arange(self.offsets[lam], self.offsets[lam + 1])

    def global_mul(self, lam):
        """Multiplication table of group ``lam`` in global indices."""
        g = self.groups[lam]
        return g.mul + self.offsets[lam]


def conjugation_mgr(groups) -> MultipleGroupRackData:
    """x * y = y^-1 x y inside a group, x * y = x across groups."""
    groups = list(groups)
    n = sum(g.size for g in groups)
    op = np.repeat(np.arange(n)[:, None], n, axis=1)
    off = 0
    for g in groups:
        sl = slice(off, off + g.size)
        op[sl, sl] = conjugation_rack(g).op + off
        off += g.size
    return MultipleGroupRackData(groups, op)


def trivial_mgr(groups) -> MultipleGroupRackData:
    groups = list(groups)
    n = sum(g.size for g in groups)
    return MultipleGroupRackData(groups, np.repeat(np.arange(n)[:, None], n, axis=1))


def check_multiple_group_rack(d: MultipleGroupRackData) -> ValidationReport:
    rep = ValidationReport("multiple group rack")
    for lam, g in enumerate(d.groups):
        grep = check_group(g)
        rep.merge(grep, prefix=f"G{lam}:")
    if not rep.ok:
        return rep
    op = d.op
    for lam, g in enumerate(d.groups):
        mem = d.members(lam)
        mul = d.global_mul(lam)
        unit = d.offsets[lam] + g.unit
        # (i): [x, y1, y2]
        lhs = op[:, mul]
        rhs = op[op[:, mem][:, :, None], mem[None, None, :]]
        bad = lhs != rhs
        for x, i, j in np.argwhere(bad):
            if not rep.add("(i)", (x, mem[i], mem[j]), "x*(y1y2) != (x*y1)*y2"):
                break
        for x in np.flatnonzero(op[:, unit] != np.arange(d.size)):
            rep.add("(i)", (x, unit), "x*e != x")
    sd = op[op] != op[op[:, None, :], op[None, :, :]]
    rep.add_mask("(ii)", sd, "(x*y)*z != (x*z)*(y*z)")
    for x in range(d.size):
        for lam, g in enumerate(d.groups):
            mem = d.members(lam)
            images = op[mem, x]
            targets = np.unique(d.block[images])
            if len(targets) != 1:
                rep.add("(iii)", (x, lam), "G_lambda * x is not inside a single group")
                continue
            mu = int(targets[0])
            mul_l = d.global_mul(lam)
            mul_m = d.global_mul(mu)
            off_m = d.offsets[mu]
            lhs = op[mul_l, x]
            rhs = mul_m[images[:, None] - off_m, images[None, :] - off_m]
            for i, j in np.argwhere(lhs != rhs):
                if not rep.add("(iii)", (x, mem[i], mem[j]), "(y1y2)*x != (y1*x)(y2*x)"):
                    break
    return rep


def multiple_group_rack(d: MultipleGroupRackData) -> GroupoidRack:
    """One object per group, Hom(lam, lam) = G_lam, no other morphisms."""
    rep = check_multiple_group_rack(d)
    if not rep.ok:
        _raise_first(rep)
    n = d.size
    comp = np.full((n, n), UNDEFINED, dtype=np.int64)
    inverse = np.zeros(n, dtype=np.int64)
    identity = []
    for lam, g in enumerate(d.groups):
        mem = d.members(lam)
        comp[np.ix_(mem, mem)] = d.global_mul(lam)
        inverse[mem] = g.inv + d.offsets[lam]
        identity.append(d.offsets[lam] + g.unit)
    gpd = FiniteGroupoid(len(d.groups), d.block, d.block, comp, identity, inverse)
    return _verified(GroupoidRack(gpd, d.op))


def is_multiple_conjugation_quandle(d: MultipleGroupRackData) -> bool:
    """True iff x * y = y^-1 x y for all x, y in each group."""
    for lam, g in enumerate(d.groups):
        mem = d.members(lam)
        conj = conjugation_rack(g).op + d.offsets[lam]
        if not np.array_equal(d.op[np.ix_(mem, mem)], conj):
            return False
    return True


# --- pair groupoids ---------------------------------------------------------

def _pair_groupoid(n: int) -> FiniteGroupoid:
    """Objects 0..n-1, a single morphism (x, y) = x*n + y per ordered pair."""
    x = np.repeat(np.arange(n), n)
    y = np.tile(np.arange(n), n)
    m = n * n
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    # (x, y)(y, z) = (x, z)
    f = np.arange(m)[:, None]
    g = np.arange(m)[None, :]
    ok = y[f] == x[g]
    comp[ok] = (x[f] * n + y[g])[ok]
    identity = np.arange(n) * n + np.arange(n)
    inverse = y * n + x
    return FiniteGroupoid(n, x, y, comp, identity, inverse)


def heap_rack(g: FiniteGroup) -> GroupoidRack:
    """G x G with (x, y) * (z, w) = (x z^-1 w, y z^-1 w)."""
    n = g.size
    x = np.repeat(np.arange(n), n)
    y = np.tile(np.arange(n), n)
    mul, inv = g.mul, g.inv
    # k[(z, w)] = z^-1 w
    k = mul[inv[x], y]
    first = mul[x[:, None], k[None, :]]
    second = mul[y[:, None], k[None, :]]
    return _verified(GroupoidRack(_pair_groupoid(n), first * n + second))


def rack_square(r: FiniteRack, literal: bool = False) -> GroupoidRack:
    """R x R with (x, y) |> (z, w) = ((x *^-1 z) * w, (y *^-1 z) * w).

    ``literal=True`` repeats the first coordinate in the second slot, which
    the axiom check rejects on any rack with more than one element.
    """
    n = r.size
    x = np.repeat(np.arange(n), n)
    y = np.tile(np.arange(n), n)
    op, opinv = r.op, r.op_inv
    first = op[opinv[x[:, None], x[None, :]], y[None, :]]
    src = x if literal else y
    second = op[opinv[src[:, None], x[None, :]], y[None, :]]
    return _verified(GroupoidRack(_pair_groupoid(n), first * n + second))


# --- augmented racks --------------------------------------------------------

@dataclass(eq=False)
class AugmentedRackData:
    rack: FiniteRack
    group: FiniteGroup
    action: np.ndarray      # action[x][g] = x . g
    boundary: np.ndarray    # boundary[x] in G

    def __post_init__(self):
        self.action = _table(self.action, self.rack.size, self.group.size, "action", self.rack.size)
        self.boundary = _vector(self.boundary, self.rack.size, "boundary", self.group.size)


def conjugation_augmented(g: FiniteGroup) -> AugmentedRackData:
    """R = G with conjugation, G acting by conjugation, boundary = identity."""
    rack = conjugation_rack(g)
    return AugmentedRackData(rack, g, rack.op, np.arange(g.size))


def check_augmented_rack(d: AugmentedRackData) -> ValidationReport:
    rep = ValidationReport("augmented rack")
    rep.merge(check_rack(d.rack), prefix="R:")
    rep.merge(check_group(d.group), prefix="G:")
    if not rep.ok:
        return rep
    act, bd, g = d.action, d.boundary, d.group
    n = d.rack.size
    idx = np.arange(n)
    rep.add_mask("action(unit)", act[:, g.unit] != idx, "x . e != x")
    # [x, g, h]: (x.g).h vs x.(gh)
    rep.add_mask("action(compat)", act[act] != act[idx[:, None, None], g.mul[None, :, :]],
                 "(x.g).h != x.(gh)")
    rep.add_mask("(i)", d.rack.op != act[idx[:, None], bd[None, :]], "x*y != x . d(y)")
    conj = g.mul[g.mul[g.inv[None, :], bd[:, None]], np.arange(g.size)[None, :]]
    rep.add_mask("(ii)", bd[act] != conj, "d(x.g) != g^-1 d(x) g")
    return rep


def augmented_groupoid_rack(d: AugmentedRackData, n: int, delta: int) -> GroupoidRack:
    """Morphisms (x, y, g) with y = x.g; the (n, delta) operation

    (x, y, g) * (z, w, h) = (x.k, y.k, k^-1 g k),  k = d(z)^n h^delta d(w)^-n.
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    rep = check_augmented_rack(d)
    if not rep.ok:
        _raise_first(rep)
    G, act, bd = d.group, d.action, d.boundary
    R = d.rack.size
    morphs = [(x, int(act[x, g]), g) for x in range(R) for g in range(G.size)]
    index = {m: i for i, m in enumerate(morphs)}
    M = len(morphs)
    src = np.array([m[0] for m in morphs])
    tgt = np.array([m[1] for m in morphs])
    lab = np.array([m[2] for m in morphs])

    comp = np.full((M, M), UNDEFINED, dtype=np.int64)
    for i, (x, y, g) in enumerate(morphs):
        for j in np.flatnonzero(src == y):
            _, z, h = morphs[j]
            comp[i, j] = index[(x, z, int(G.mul[g, h]))]
    identity = [index[(x, x, G.unit)] for x in range(R)]
    inverse = [index[(y, x, int(G.inv[g]))] for (x, y, g) in morphs]
    gpd = FiniteGroupoid(R, src, tgt, comp, identity, inverse)

    conjugator = np.empty(M, dtype=np.int64)
    for j, (z, w, h) in enumerate(morphs):
        conjugator[j] = G.product(G.power(int(bd[z]), n), G.power(h, delta), G.power(int(bd[w]), -n))
    op = np.empty((M, M), dtype=np.int64)
    for i, (x, y, g) in enumerate(morphs):
        for j in range(M):
            k = int(conjugator[j])
            op[i, j] = index[(int(act[x, k]), int(act[y, k]), G.product(int(G.inv[k]), g, k))]
    return _verified(GroupoidRack(gpd, op))


__all__ = [
    "AugmentedRackData",
    "ConditionViolated",
    "MalformedTable",
    "MultipleGroupRackData",
    "augmented_groupoid_rack",
    "check_augmented_rack",
    "check_multiple_group_rack",
    "conjugation_augmented",
    "conjugation_mgr",
    "heap_rack",
    "is_multiple_conjugation_quandle",
    "multiple_group_rack",
    "rack_square",
    "trivial_mgr",
]
