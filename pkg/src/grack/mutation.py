"""Single-cell corruptions of algebra tables, for testing the checkers."""
from __future__ import annotations

import numpy as np

from .algebra import (
    UNDEFINED,
    FiniteGroup,
    FiniteGroupoid,
    FiniteRack,
    GroupoidRack,
    check_group,
    check_groupoid_rack,
    check_rack,
)


def _poke(arr, rng, lo, hi):
    """Copy of ``arr`` with one random cell moved to another value in [lo, hi)."""
    out = np.array(arr, dtype=np.int64)
    cell = tuple(int(rng.integers(0, s)) for s in out.shape)
    old = int(out[cell])
    new = int(rng.integers(lo, hi - 1))
    if new >= old:
        new += 1
    out[cell] = new
    return out, cell, old, new


def mutate(obj, rng):
    """Return ``(mutant, description)`` differing from ``obj`` in one cell."""
    if isinstance(obj, GroupoidRack):
        g = obj.groupoid
        m, k = g.num_morphisms, g.num_objects
        tables = {"op": (obj.op, 0, m), "comp": (g.comp, UNDEFINED, m),
                  "id": (g.identity, 0, m), "inv": (g.inverse, 0, m)}
        if k > 1:
            tables.update(dom=(g.dom, 0, k), cod=(g.cod, 0, k))
        if m < 2:
            raise ValueError("nothing to mutate in a groupoid rack with < 2 morphisms")
        name = sorted(tables)[int(rng.integers(0, len(tables)))]
        arr, lo, hi = tables[name]
        new, cell, old, val = _poke(arr, rng, lo, hi)
        parts = dict(dom=g.dom, cod=g.cod, comp=g.comp, id=g.identity, inv=g.inverse, op=obj.op)
        parts[name] = new
        gpd = FiniteGroupoid(k, parts["dom"], parts["cod"], parts["comp"], parts["id"], parts["inv"])
        return GroupoidRack(gpd, parts["op"]), f"{name}{list(cell)}: {old} -> {val}"
    if isinstance(obj, FiniteRack):
        if obj.size < 2:
            raise ValueError("nothing to mutate in a rack with < 2 elements")
        new, cell, old, val = _poke(obj.op, rng, 0, obj.size)
        return FiniteRack(new), f"op{list(cell)}: {old} -> {val}"
    if isinstance(obj, FiniteGroup):
        n = obj.size
        if n < 2:
            raise ValueError("nothing to mutate in a group with < 2 elements")
        name = ("mul", "unit", "inv")[int(rng.integers(0, 3))]
        if name == "mul":
            new, cell, old, val = _poke(obj.mul, rng, 0, n)
            return FiniteGroup(new, obj.unit, obj.inv), f"mul{list(cell)}: {old} -> {val}"
        if name == "unit":
            new, cell, old, val = _poke([obj.unit], rng, 0, n)
            return FiniteGroup(obj.mul, int(new[0]), obj.inv), f"unit: {old} -> {val}"
        new, cell, old, val = _poke(obj.inv, rng, 0, n)
        return FiniteGroup(obj.mul, obj.unit, new), f"inv{list(cell)}: {old} -> {val}"
    raise TypeError(f"cannot mutate {type(obj).__name__}")


def checker_for(obj):
    if isinstance(obj, GroupoidRack):
        return check_groupoid_rack
    if isinstance(obj, FiniteRack):
        return check_rack
    if isinstance(obj, FiniteGroup):
        return check_group
    raise TypeError(f"no checker for {type(obj).__name__}")


def mutation_trial(obj, count=50, seed=0):
    """Apply ``count`` independent single-cell mutations; return the list of
    ``(description, detected)`` pairs."""
    rng = np.random.default_rng(seed)
    check = checker_for(obj)
    out = []
    for _ in range(count):
        mutant, what = mutate(obj, rng)
        out.append((what, not check(mutant).ok))
    return out
