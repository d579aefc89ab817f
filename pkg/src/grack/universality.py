"""Recovering a groupoid rack from a symmetric rack with a partial product.

Given a symmetric rack (R, *, rho), a set P of ordered pairs and a product
mu : P -> R satisfying five compatibility conditions, the elements that
occur in P form a groupoid rack.  :func:`universality_construct` builds it
and asserts every intermediate fact the construction relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    UNDEFINED,
    AxiomCheckFailed,
    FiniteGroupoid,
    GroupoidRack,
    MalformedTable,
    SymmetricRackData,
    ValidationReport,
    canonical_involution,
    check_groupoid,
    check_groupoid_rack,
)
from .constructions import ConditionViolated
from .unionfind import UnionFind


class LemmaViolated(Exception):
    """The hypotheses held but an intermediate step of the construction failed."""

    def __init__(self, lemma, witness, detail=""):
        self.lemma = lemma
        self.witness = witness
        super().__init__(f"{lemma} fails at {witness}" + (f": {detail}" if detail else ""))


@dataclass(eq=False)
class UniversalityData:
    sym: SymmetricRackData
    mu: dict = field(default_factory=dict)   # (a, b) -> ab, keys are P

    def __post_init__(self):
        n = self.sym.size
        clean = {}
        for (a, b), c in self.mu.items():
            a, b, c = int(a), int(b), int(c)
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise MalformedTable(f"pair ({a}, {b}) -> {c} out of range")
            clean[(a, b)] = c
        self.mu = clean

    @property
    def pairs(self):
        return frozenset(self.mu)

    def tables(self):
        n = self.sym.size
        in_p = np.zeros((n, n), dtype=bool)
        prod = np.full((n, n), UNDEFINED, dtype=np.int64)
        for (a, b), c in self.mu.items():
            in_p[a, b] = True
            prod[a, b] = c
        return in_p, prod


def universality_data_from(gr: GroupoidRack) -> UniversalityData:
    """Symmetric rack (X, *, inverse) with P = composable pairs, mu = composition."""
    sym = canonical_involution(gr)
    comp = gr.groupoid.comp
    mu = {(int(f), int(g)): int(comp[f, g]) for f, g in np.argwhere(comp != UNDEFINED)}
    return UniversalityData(sym, mu)


def check_universality_conditions(d: UniversalityData) -> ValidationReport:
    rep = ValidationReport("universality conditions")
    n = d.sym.size
    if n == 0 or not d.mu:
        return rep
    op, rho = d.sym.rack.op, d.sym.rho
    in_p, prod = d.tables()
    safe = np.where(in_p, prod, 0)
    idx = np.arange(n)

    # (1) [(a,b) in P and (ab,c) in P]  <=>  [(b,c) in P and (a,bc) in P], indexed [a,b,c]
    left = in_p[:, :, None] & in_p[safe][:, :, :]
    right = in_p[None, :, :] & in_p[idx[:, None, None], safe[None, :, :]]
    rep.add_mask("(1)", left != right, "composability is not associative")
    # (2) (ab)c = a(bc)
    both = left & right
    lhs = safe[safe[:, :, None], idx[None, None, :]]
    rhs = safe[idx[:, None, None], safe[None, :, :]]
    rep.add_mask("(2)", both & (lhs != rhs), "(ab)c != a(bc)")
    # (3) (a,b) in P <=> (rho b, rho a) in P <=> (a*x, b*x) in P
    flipped = in_p[rho[None, :], rho[:, None]]
    rep.add_mask("(3)", in_p != flipped, "(a,b) in P but not (rho b, rho a), or conversely")
    shifted = in_p[op[:, None, :], op[None, :, :]]       # [a,b,x]
    rep.add_mask("(3)", in_p[:, :, None] != shifted, "(a,b) in P but not (a*x, b*x), or conversely")

    pairs = sorted(d.mu)
    for a, b in pairs:
        ab = d.mu[(a, b)]
        if not in_p[b, rho[ab]]:
            rep.add("(4)", (a, b), "(b, rho(ab)) not in P")
        if not in_p[rho[ab], a]:
            rep.add("(4)", (a, b), "(rho(ab), a) not in P")
    for a, b in pairs:
        ab = d.mu[(a, b)]
        if prod[rho[b], rho[a]] != rho[ab]:
            rep.add("(5)", (a, b), "rho(b)rho(a) != rho(ab)")
        if prod[ab, rho[b]] != a:
            rep.add("(5)", (a, b), "(ab)rho(b) != a")
        for x in np.flatnonzero(prod[op[a, :], op[b, :]] != op[ab, :]):
            if not rep.add("(5)", (a, b, x), "(ab)*x != (a*x)(b*x)"):
                break
        for x in np.flatnonzero(op[:, ab] != op[op[:, a], b]):
            if not rep.add("(5)", (a, b, x), "x*(ab) != (x*a)*b"):
                break
    return rep


def _check_lemmas(d: UniversalityData, support):
    op, rho = d.sym.rack.op, d.sym.rho
    mu = d.mu
    sup = set(support)
    for a in support:
        if (int(rho[a]), a) not in mu or (a, int(rho[a])) not in mu:
            raise LemmaViolated("inverse-pairs", (a,), "(rho a, a) or (a, rho a) missing from P")
    for a in support:
        e = mu[(a, int(rho[a]))]
        for (x, y), v in mu.items():
            if y == e and v != x:
                raise LemmaViolated("right-unit", (a, x), "x(a rho a) != x")
            if x == e and v != y:
                raise LemmaViolated("left-unit", (a, y), "(a rho a)y != y")
    if {int(rho[a]) for a in support} != sup:
        raise LemmaViolated("rho-closed", tuple(sorted(sup)), "rho(R') != R'")
    for x in range(d.sym.size):
        if {int(op[a, x]) for a in support} != sup:
            raise LemmaViolated("action-closed", (x,), "S_x(R') != R'")


def universality_construct(d: UniversalityData):
    """Build the groupoid rack on R' = elements occurring in P.

    Returns ``(groupoid_rack, embedding)`` where ``embedding`` maps each
    element of R' to its morphism index.
    """
    rep = check_universality_conditions(d)
    if not rep.ok:
        v = rep.first()
        raise ConditionViolated(v.axiom, v.witness, rep)
    rho, op = d.sym.rho, d.sym.rack.op
    support = sorted({a for pair in d.mu for a in pair})
    k = len(support)
    if k == 0:
        empty = FiniteGroupoid(0, [], [], np.zeros((0, 0)), [], [])
        return GroupoidRack(empty, np.zeros((0, 0))), {}
    _check_lemmas(d, support)
    pos = {a: i for i, a in enumerate(support)}

    # symbols: s_a -> i, t_a -> k + i, so numeric order is s-before-t, then element
    uf = UnionFind(2 * k)
    for a, b in d.mu:
        uf.union(k + pos[a], pos[b])
    classes = uf.classes()
    obj_of = {}
    for o, cls in enumerate(classes):
        for sym in cls:
            obj_of[sym] = o
    dom = [obj_of[i] for i in range(k)]
    cod = [obj_of[k + i] for i in range(k)]

    comp = np.full((k, k), UNDEFINED, dtype=np.int64)
    for i, a in enumerate(support):
        for j, b in enumerate(support):
            if cod[i] != dom[j]:
                continue
            if (a, b) not in d.mu:
                raise LemmaViolated("composition", (a, b), "cod(a) = dom(b) but (a, b) not in P")
            ab = d.mu[(a, b)]
            if ab not in pos:
                raise LemmaViolated("composition", (a, b), "ab outside R'")
            comp[i, j] = pos[ab]

    identity = []
    for o, cls in enumerate(classes):
        units = set()
        for sym in cls:
            a = support[sym % k]
            ra = int(rho[a])
            units.add(d.mu[(a, ra)] if sym < k else d.mu[(ra, a)])
        if len(units) != 1:
            raise LemmaViolated("identity", (o,), f"candidates {sorted(units)} differ")
        identity.append(pos[units.pop()])
    inverse = [pos[int(rho[a])] for a in support]
    gpd = FiniteGroupoid(len(classes), dom, cod, comp, identity, inverse)
    restricted = np.array([[pos[int(op[a, b])] for b in support] for a in support])
    gr = GroupoidRack(gpd, restricted)
    grep = check_groupoid(gpd)
    if not grep.ok:
        raise AxiomCheckFailed(grep)
    rrep = check_groupoid_rack(gr)
    if not rrep.ok:
        raise AxiomCheckFailed(rrep)
    return gr, pos


def same_under_embedding(a: GroupoidRack, b: GroupoidRack, embedding) -> bool:
    """True iff ``embedding`` (a-index -> b-index, total and bijective) carries
    the operation and composition of ``a`` onto ``b`` and induces a bijection
    of objects."""
    m = a.size
    if m != b.size:
        return False
    f = np.array([embedding[i] for i in range(m)], dtype=np.int64)
    if sorted(f.tolist()) != list(range(m)):
        return False
    if not np.array_equal(f[a.op], b.op[np.ix_(f, f)]):
        return False
    ca, cb = a.groupoid.comp, b.groupoid.comp
    mapped = np.where(ca != UNDEFINED, f[np.where(ca != UNDEFINED, ca, 0)], UNDEFINED)
    if not np.array_equal(mapped, cb[np.ix_(f, f)]):
        return False
    objmap = {}
    for end_a, end_b in ((a.groupoid.dom, b.groupoid.dom), (a.groupoid.cod, b.groupoid.cod)):
        for i in range(m):
            if objmap.setdefault(int(end_a[i]), int(end_b[f[i]])) != int(end_b[f[i]]):
                return False
    return (len(objmap) == a.groupoid.num_objects == b.groupoid.num_objects
            and len(set(objmap.values())) == len(objmap))
