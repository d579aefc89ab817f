"""Finite racks, symmetric racks, groups, groupoids and groupoid racks.

Every structure is a set of dense indices ``0..n-1`` with explicit integer
tables.  Constructors only check shape and range (raising
:class:`MalformedTable`); the ``check_*`` functions verify the axioms
exhaustively and return a :class:`ValidationReport`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

UNDEFINED = -1
MAX_VIOLATIONS = 100


class MalformedTable(ValueError):
    """A table has the wrong shape or an entry out of range."""


class AxiomCheckFailed(Exception):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(str(report))


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = field(default="", compare=False)

    def __str__(self):
        s = f"{self.axiom} at {self.witness}"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class ValidationReport:
    """Outcome of an exhaustive check; holds at most ``cap`` violations."""

    subject: str
    violations: list = field(default_factory=list)
    truncated: bool = False
    cap: int = MAX_VIOLATIONS

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def full(self) -> bool:
        return len(self.violations) >= self.cap

    def add(self, axiom, witness, detail="") -> bool:
        """Record one violation; returns False once the cap is reached."""
        if self.full:
            self.truncated = True
            return False
        self.violations.append(Violation(axiom, tuple(int(w) for w in witness), detail))
        return True

    def add_mask(self, axiom, mask, detail="") -> None:
        """Record every True cell of ``mask`` (row-major order)."""
        if not mask.any():
            return
        for idx in np.argwhere(mask):
            if not self.add(axiom, tuple(idx), detail):
                break

    def merge(self, other: "ValidationReport", prefix="") -> None:
        for v in other.violations:
            if not self.add(prefix + v.axiom, v.witness, v.detail):
                break
        self.truncated = self.truncated or other.truncated

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def first(self):
        return self.violations[0] if self.violations else None

    def __str__(self):
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"
                 + (" (truncated)" if self.truncated else "")]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def _table(data, rows, cols, name, hi, allow_undefined=False):
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"{name}: not an integer table ({exc})") from None
    if rows == 0 or cols == 0:
        arr = arr.reshape(rows, cols)
    if arr.shape != (rows, cols):
        raise MalformedTable(f"{name}: expected shape {(rows, cols)}, got {arr.shape}")
    lo = UNDEFINED if allow_undefined else 0
    if arr.size and (arr.min() < lo or arr.max() >= hi):
        bad = np.argwhere((arr < lo) | (arr >= hi))[0]
        raise MalformedTable(f"{name}: entry {tuple(int(i) for i in bad)} out of range")
    arr.setflags(write=False)
    return arr


def _vector(data, n, name, hi):
    try:
        arr = np.array(data, dtype=np.int64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"{name}: not an integer vector ({exc})") from None
    if arr.shape != (n,):
        raise MalformedTable(f"{name}: expected length {n}, got {arr.shape[0]}")
    if n and (arr.min() < 0 or arr.max() >= hi):
        raise MalformedTable(f"{name}: entry {int(np.argmax((arr < 0) | (arr >= hi)))} out of range")
    arr.setflags(write=False)
    return arr


def _column_inverse(op):
    n = op.shape[0]
    inv = np.full((n, n), UNDEFINED, dtype=np.int64)
    cols = np.broadcast_to(np.arange(n), (n, n))
    rows = np.broadcast_to(np.arange(n)[:, None], (n, n))
    inv[op, cols] = rows
    return inv


def _columns_bijective(op):
    n = op.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    s = np.sort(op, axis=0)
    return (s == np.arange(n)[:, None]).all(axis=0)


class FiniteRack:
    """A binary operation ``op[x][y] = x * y`` on ``0..size-1``."""

    def __init__(self, op):
        n = len(op)
        self.size = n
        self.op = _table(op, n, n, "op", n)
        self._op_inv = None

    @property
    def op_inv(self):
        """Column inverse: ``op_inv[z][y] = x`` iff ``op[x][y] = z``."""
        if self._op_inv is None:
            if not _columns_bijective(self.op).all():
                raise AxiomCheckFailed(check_rack(self))
            inv = _column_inverse(self.op)
            inv.setflags(write=False)
            self._op_inv = inv
        return self._op_inv

    def __eq__(self, other):
        return isinstance(other, FiniteRack) and np.array_equal(self.op, other.op)

    def __repr__(self):
        return f"FiniteRack(size={self.size})"


@dataclass(eq=False)
class SymmetricRackData:
    rack: FiniteRack
    rho: np.ndarray

    def __post_init__(self):
        self.rho = _vector(self.rho, self.rack.size, "rho", self.rack.size)

    @property
    def size(self):
        return self.rack.size


class FiniteGroup:
    def __init__(self, mul, unit, inv):
        n = len(mul)
        if n == 0:
            raise MalformedTable("a group needs at least one element")
        self.size = n
        self.mul = _table(mul, n, n, "mul", n)
        if not 0 <= int(unit) < n:
            raise MalformedTable("unit out of range")
        self.unit = int(unit)
        self.inv = _vector(inv, n, "inv", n)

    def power(self, a, k):
        """``a`` raised to the signed integer ``k``."""
        base = int(self.inv[a]) if k < 0 else int(a)
        out = self.unit
        for _ in range(abs(k)):
            out = int(self.mul[out, base])
        return out

    def product(self, *elems):
        out = self.unit
        for e in elems:
            out = int(self.mul[out, e])
        return out

    def __repr__(self):
        return f"FiniteGroup(size={self.size})"


class FiniteGroupoid:
    """Objects ``0..num_objects-1``, morphisms ``0..num_morphisms-1``.

    ``comp[f][g]`` is the composite "f then g" (defined when
    ``cod(f) == dom(g)``) or ``UNDEFINED``.
    """

    def __init__(self, num_objects, dom, cod, comp, identity, inverse):
        m = len(dom)
        self.num_objects = int(num_objects)
        self.num_morphisms = m
        self.dom = _vector(dom, m, "dom", self.num_objects)
        self.cod = _vector(cod, m, "cod", self.num_objects)
        self.comp = _table(comp, m, m, "comp", m, allow_undefined=True)
        self.identity = _vector(identity, self.num_objects, "id", m)
        self.inverse = _vector(inverse, m, "inv", m)

    def composable(self, f, g):
        return self.cod[f] == self.dom[g]

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.num_objects}, morphisms={self.num_morphisms})"


class GroupoidRack:
    def __init__(self, groupoid: FiniteGroupoid, op):
        m = groupoid.num_morphisms
        self.groupoid = groupoid
        self.op = _table(op, m, m, "op", m)
        self._op_inv = None

    @property
    def size(self):
        return self.groupoid.num_morphisms

    @property
    def op_inv(self):
        if self._op_inv is None:
            if not _columns_bijective(self.op).all():
                raise AxiomCheckFailed(check_groupoid_rack(self))
            inv = _column_inverse(self.op)
            inv.setflags(write=False)
            self._op_inv = inv
        return self._op_inv

    def as_rack(self) -> FiniteRack:
        return FiniteRack(self.op)

    def __repr__(self):
        g = self.groupoid
        return f"GroupoidRack(objects={g.num_objects}, morphisms={g.num_morphisms})"


# --- checkers ---------------------------------------------------------------

def _self_distributivity(op):
    lhs = op[op]                                   # [x,y,z] -> (x*y)*z
    rhs = op[op[:, None, :], op[None, :, :]]       # [x,y,z] -> (x*z)*(y*z)
    return lhs != rhs


def check_rack(r: FiniteRack) -> ValidationReport:
    rep = ValidationReport("rack")
    bij = _columns_bijective(r.op)
    for y in np.flatnonzero(~bij):
        if not rep.add("rack(i)", (y,), "column map x -> x*y is not a bijection"):
            break
    rep.add_mask("rack(ii)", _self_distributivity(r.op), "(x*y)*z != (x*z)*(y*z)")
    return rep


def rack_pow(r, x, y, n):
    """``x *^n y``: the right translation by ``y`` applied ``n`` times."""
    table = r.op if n >= 0 else r.op_inv
    for _ in range(abs(n)):
        x = int(table[x, y])
    return int(x)


def check_symmetric_rack(s: SymmetricRackData) -> ValidationReport:
    rep = ValidationReport("symmetric rack")
    rep.merge(check_rack(s.rack))
    op, rho = s.rack.op, s.rho
    n = s.size
    if len(set(rho.tolist())) != n:
        rep.add("involution(perm)", (), "rho is not a permutation")
    rep.add_mask("involution(i)", rho[rho] != np.arange(n), "rho(rho(x)) != x")
    rep.add_mask("involution(ii)", rho[op] != op[rho, :], "rho(x*y) != rho(x)*y")
    if _columns_bijective(op).all():
        opinv = _column_inverse(op)
        rep.add_mask("involution(iii)", op[:, rho] != opinv, "x*rho(y) != x*^-1 y")
    return rep


def check_group(g: FiniteGroup) -> ValidationReport:
    rep = ValidationReport("group")
    mul, e, inv = g.mul, g.unit, g.inv
    idx = np.arange(g.size)
    rep.add_mask("group(assoc)", mul[mul] != _assoc_rhs(mul), "(ab)c != a(bc)")
    rep.add_mask("group(unit)", (mul[e, :] != idx) | (mul[:, e] != idx), "unit law fails")
    rep.add_mask("group(inverse)", (mul[idx, inv] != e) | (mul[inv, idx] != e), "inverse law fails")
    return rep


def _assoc_rhs(mul):
    # [a,b,c] -> a(bc)
    return mul[np.arange(mul.shape[0])[:, None, None], mul[None, :, :]]


def check_groupoid(g: FiniteGroupoid) -> ValidationReport:
    rep = ValidationReport("groupoid")
    m = g.num_morphisms
    dom, cod, comp, ident, inv = g.dom, g.cod, g.comp, g.identity, g.inverse
    composable = cod[:, None] == dom[None, :]
    defined = comp != UNDEFINED
    rep.add_mask("groupoid(domain)", composable != defined,
                 "comp(f,g) must be defined exactly when cod(f) = dom(g)")
    safe = np.where(defined, comp, 0)
    bad_ends = defined & ((dom[safe] != dom[:, None]) | (cod[safe] != cod[None, :]))
    rep.add_mask("groupoid(ends)", bad_ends, "dom/cod of composite wrong")
    if m:
        # [f,g,h]: (fg)h vs f(gh) on composable triples
        triple = composable[:, :, None] & composable[None, :, :]
        fg = safe[:, :, None]
        gh = safe[None, :, :]
        lhs = safe[fg, np.arange(m)[None, None, :]]
        rhs = safe[np.arange(m)[:, None, None], gh]
        rep.add_mask("groupoid(assoc)", triple & (lhs != rhs), "(fg)h != f(gh)")
    objs = np.arange(g.num_objects)
    rep.add_mask("groupoid(id-ends)", (dom[ident] != objs) | (cod[ident] != objs),
                 "identity has wrong dom/cod")
    if m:
        left = comp[ident[dom], np.arange(m)]
        right = comp[np.arange(m), ident[cod]]
        rep.add_mask("groupoid(unit)", (left != np.arange(m)) | (right != np.arange(m)),
                     "identity is not a two-sided unit")
        rep.add_mask("groupoid(inverse)",
                     (comp[np.arange(m), inv] != ident[dom]) | (comp[inv, np.arange(m)] != ident[cod]),
                     "f f^-1 != id(dom f) or f^-1 f != id(cod f)")
    return rep


def check_groupoid_rack(gr: GroupoidRack) -> ValidationReport:
    rep = ValidationReport("groupoid rack")
    gp = gr.groupoid
    grep = check_groupoid(gp)
    if not grep.ok:
        rep.merge(grep)
        return rep
    m = gp.num_morphisms
    if m == 0:
        return rep
    op, comp, dom, cod = gr.op, gp.comp, gp.dom, gp.cod
    composable = comp != UNDEFINED
    safe = np.where(composable, comp, 0)
    # (i) x * (fg) = (x * f) * g, indexed [x, f, g]
    lhs = op[np.arange(m)[:, None, None], safe[None, :, :]]
    rhs = op[op[:, :, None], np.arange(m)[None, None, :]]
    rep.add_mask("(i) x*(fg)=(x*f)*g", composable[None, :, :] & (lhs != rhs))
    rep.add_mask("(i) x*id=x", op[:, gp.identity] != np.arange(m)[:, None])
    # (ii)
    rep.add_mask("(ii) self-distributivity", _self_distributivity(op))
    # (iii) (fg) * x = (f * x)(g * x), indexed [f, g, x]
    fx = op[:, None, :]
    gx = op[None, :, :]
    ok_ends = cod[fx] == dom[gx]
    prod = np.where(ok_ends, comp[fx, gx], UNDEFINED)
    fgx = op[safe]  # [f,g,x] -> (fg)*x
    rep.add_mask("(iii) (fg)*x=(f*x)(g*x)", composable[:, :, None] & (prod != fgx))
    bij = _columns_bijective(op)
    for y in np.flatnonzero(~bij):
        if not rep.add("bijective", (y,), "x -> x*y is not a bijection"):
            break
    return rep


def canonical_involution(gr: GroupoidRack) -> SymmetricRackData:
    """The symmetric rack (X, *, rho) with rho(x) = x^-1."""
    rep = check_groupoid_rack(gr)
    if not rep.ok:
        raise AxiomCheckFailed(rep)
    return SymmetricRackData(FiniteRack(gr.op), gr.groupoid.inverse)
