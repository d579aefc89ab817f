"""Line-oriented text formats for algebras.

Every file starts with a header line ``<kind> v1``.  Blank lines and
``#`` comments are ignored.  Table blocks are introduced by a keyword line
(``op``, ``mul``, ``comp``, ``action``) followed by one row per line.
In ``comp`` blocks ``-`` marks an undefined composite.

See README.md for a complete description of each kind.
"""
from __future__ import annotations

import numpy as np

from .algebra import (
    UNDEFINED,
    FiniteGroup,
    FiniteGroupoid,
    FiniteRack,
    GroupoidRack,
    MalformedTable,
    SymmetricRackData,
)
from .constructions import AugmentedRackData, MultipleGroupRackData
from .universality import UniversalityData

KINDS = ("groupoid-rack", "rack", "group", "mgr", "augmented", "universal")


class ParseError(ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class _Reader:
    def __init__(self, text):
        self.rows = []
        for no, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].split()
            if body:
                self.rows.append((no, body))
        self.pos = 0

    @property
    def lineno(self):
        if self.pos < len(self.rows):
            return self.rows[self.pos][0]
        return self.rows[-1][0] + 1 if self.rows else 1

    def done(self):
        return self.pos >= len(self.rows)

    def peek(self):
        return None if self.done() else self.rows[self.pos][1][0]

    def next(self):
        if self.done():
            raise ParseError(self.lineno, "unexpected end of input")
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def keyword(self, key, nargs=None):
        no, toks = self.next()
        if toks[0] != key:
            raise ParseError(no, f"expected '{key}', got '{toks[0]}'")
        args = toks[1:]
        if nargs is not None and len(args) != nargs:
            raise ParseError(no, f"'{key}' takes {nargs} value(s), got {len(args)}")
        return no, args

    def ints(self, key, count=None, hi=None):
        no, args = self.keyword(key)
        if count is not None and len(args) != count:
            raise ParseError(no, f"'{key}' needs {count} entries, got {len(args)}")
        return [_int(no, a, hi) for a in args]

    def count(self, key):
        no = self.lineno
        v = self.ints(key, 1)[0]
        if v < 0:
            raise ParseError(no, f"'{key}' must be non-negative")
        return v

    def table(self, key, rows, cols, allow_undefined=False, hi=None):
        self.keyword(key, 0)
        out = []
        for _ in range(rows):
            no, toks = self.next()
            if len(toks) != cols:
                raise ParseError(no, f"'{key}' row needs {cols} entries, got {len(toks)}")
            out.append([UNDEFINED if (allow_undefined and t == "-") else _int(no, t, hi) for t in toks])
        return np.array(out, dtype=np.int64).reshape(rows, cols)

    def header(self):
        no, toks = self.next()
        if len(toks) != 2 or toks[1] != "v1":
            raise ParseError(no, "expected header '<kind> v1'")
        return toks[0]

    def finish(self):
        if not self.done():
            raise ParseError(self.lineno, f"unexpected '{self.peek()}'")


def _int(no, tok, hi=None):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(no, f"not an integer: {tok!r}") from None
    if hi is not None and not 0 <= v < hi:
        raise ParseError(no, f"entry {v} out of range [0, {hi})")
    return v


def _wrap(no, build):
    try:
        return build()
    except MalformedTable as exc:
        raise ParseError(no, str(exc)) from None


# --- readers ----------------------------------------------------------------

def _read_group_body(r: _Reader, size):
    unit = r.count("unit")
    inv = r.ints("inv", size, hi=size)
    mul = r.table("mul", size, size, hi=size)
    return _wrap(r.lineno, lambda: FiniteGroup(mul, unit, inv))


def _read_rack_body(r: _Reader, size):
    op = r.table("op", size, size, hi=size)
    return _wrap(r.lineno, lambda: FiniteRack(op))


def _read_groupoid_rack(r):
    n = r.count("objects")
    m = r.count("morphisms")
    dom = r.ints("dom", m, hi=n)
    cod = r.ints("cod", m, hi=n)
    comp = r.table("comp", m, m, allow_undefined=True, hi=m)
    ident = r.ints("id", n, hi=m)
    inv = r.ints("inv", m, hi=m)
    op = r.table("op", m, m, hi=m)
    return _wrap(r.lineno, lambda: GroupoidRack(FiniteGroupoid(n, dom, cod, comp, ident, inv), op))


def _read_rack(r):
    rack = _read_rack_body(r, r.count("size"))
    if r.peek() == "rho":
        rho = r.ints("rho", rack.size, hi=rack.size)
        return _wrap(r.lineno, lambda: SymmetricRackData(rack, rho))
    return rack


def _read_group(r):
    return _read_group_body(r, r.count("size"))


def _read_mgr(r):
    k = r.count("groups")
    groups = []
    for _ in range(k):
        no, args = r.keyword("group", 2)
        if args[0] != "size":
            raise ParseError(no, "expected 'group size <n>'")
        groups.append(_read_group_body(r, _int(no, args[1])))
    total = sum(g.size for g in groups)
    op = r.table("op", total, total, hi=total)
    return _wrap(r.lineno, lambda: MultipleGroupRackData(groups, op))


def _read_augmented(r):
    no, args = r.keyword("rack", 2)
    if args[0] != "size":
        raise ParseError(no, "expected 'rack size <n>'")
    rack = _read_rack_body(r, _int(no, args[1]))
    no, args = r.keyword("group", 2)
    if args[0] != "size":
        raise ParseError(no, "expected 'group size <n>'")
    group = _read_group_body(r, _int(no, args[1]))
    action = r.table("action", rack.size, group.size, hi=rack.size)
    boundary = r.ints("boundary", rack.size, hi=group.size)
    return _wrap(r.lineno, lambda: AugmentedRackData(rack, group, action, boundary))


def _read_universal(r):
    rack = _read_rack_body(r, r.count("size"))
    rho = r.ints("rho", rack.size, hi=rack.size)
    k = r.count("pairs")
    mu = {}
    for _ in range(k):
        no, toks = r.next()
        if len(toks) != 3:
            raise ParseError(no, "pair line needs 'a b ab'")
        a, b, c = (_int(no, t, rack.size) for t in toks)
        if (a, b) in mu:
            raise ParseError(no, f"duplicate pair ({a}, {b})")
        mu[(a, b)] = c
    return _wrap(r.lineno, lambda: UniversalityData(SymmetricRackData(rack, rho), mu))


_READERS = {
    "groupoid-rack": _read_groupoid_rack,
    "rack": _read_rack,
    "group": _read_group,
    "mgr": _read_mgr,
    "augmented": _read_augmented,
    "universal": _read_universal,
}


def read_algebra(text: str):
    """Parse any supported algebra file; the header selects the type."""
    r = _Reader(text)
    no = r.lineno
    kind = r.header()
    if kind not in _READERS:
        raise ParseError(no, f"unknown algebra kind '{kind}'")
    obj = _READERS[kind](r)
    r.finish()
    return obj


def algebra_kind(text: str) -> str:
    r = _Reader(text)
    return r.header()


# --- writers ----------------------------------------------------------------

def _row(values, undefined=False):
    return " ".join("-" if (undefined and v == UNDEFINED) else str(int(v)) for v in values)


def _block(key, table, undefined=False):
    return [key] + [_row(row, undefined) for row in table]


def _group_lines(g: FiniteGroup):
    return [f"unit {g.unit}", f"inv {_row(g.inv)}".rstrip()] + _block("mul", g.mul)


def write_groupoid_rack(gr: GroupoidRack) -> str:
    g = gr.groupoid
    lines = ["groupoid-rack v1",
             f"objects {g.num_objects}",
             f"morphisms {g.num_morphisms}",
             f"dom {_row(g.dom)}".rstrip(),
             f"cod {_row(g.cod)}".rstrip()]
    lines += _block("comp", g.comp, undefined=True)
    lines += [f"id {_row(g.identity)}".rstrip(), f"inv {_row(g.inverse)}".rstrip()]
    lines += _block("op", gr.op)
    return "\n".join(lines) + "\n"


def write_rack(r) -> str:
    rack = r.rack if isinstance(r, SymmetricRackData) else r
    lines = ["rack v1", f"size {rack.size}"] + _block("op", rack.op)
    if isinstance(r, SymmetricRackData):
        lines.append(f"rho {_row(r.rho)}".rstrip())
    return "\n".join(lines) + "\n"


def write_group(g: FiniteGroup) -> str:
    return "\n".join(["group v1", f"size {g.size}"] + _group_lines(g)) + "\n"


def write_mgr(d: MultipleGroupRackData) -> str:
    lines = ["mgr v1", f"groups {len(d.groups)}"]
    for g in d.groups:
        lines.append(f"group size {g.size}")
        lines += _group_lines(g)
    lines += _block("op", d.op)
    return "\n".join(lines) + "\n"


def write_augmented(d: AugmentedRackData) -> str:
    lines = ["augmented v1", f"rack size {d.rack.size}"] + _block("op", d.rack.op)
    lines.append(f"group size {d.group.size}")
    lines += _group_lines(d.group)
    lines += _block("action", d.action)
    lines.append(f"boundary {_row(d.boundary)}".rstrip())
    return "\n".join(lines) + "\n"


def write_universal(d: UniversalityData) -> str:
    lines = ["universal v1", f"size {d.sym.size}"] + _block("op", d.sym.rack.op)
    lines.append(f"rho {_row(d.sym.rho)}".rstrip())
    lines.append(f"pairs {len(d.mu)}")
    lines += [f"{a} {b} {c}" for (a, b), c in sorted(d.mu.items())]
    return "\n".join(lines) + "\n"


def write_algebra(obj) -> str:
    if isinstance(obj, GroupoidRack):
        return write_groupoid_rack(obj)
    if isinstance(obj, (FiniteRack, SymmetricRackData)):
        return write_rack(obj)
    if isinstance(obj, FiniteGroup):
        return write_group(obj)
    if isinstance(obj, MultipleGroupRackData):
        return write_mgr(obj)
    if isinstance(obj, AugmentedRackData):
        return write_augmented(obj)
    if isinstance(obj, UniversalityData):
        return write_universal(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
