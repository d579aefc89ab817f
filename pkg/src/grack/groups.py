"""Small built-in groups and racks used by the CLI, examples and tests."""
from itertools import permutations
import re

import numpy as np

from .algebra import FiniteGroup, FiniteRack


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, 0, (-idx) % n)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def permutation_group(perms) -> FiniteGroup:
    """Group of the given permutations (tuples), closed under composition.

    Product convention: ``(p * q)(i) = p(q(i))``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms] for p in perms]
    ident = tuple(range(len(perms[0])))
    unit = index[ident]
    inv = [index[tuple(np.argsort(p).tolist())] for p in perms]
    return FiniteGroup(mul, unit, inv)


def symmetric_group(k: int) -> FiniteGroup:
    return permutation_group(permutations(range(k)))


def dihedral_quandle(n: int) -> FiniteRack:
    """x * y = 2y - x (mod n)."""
    idx = np.arange(n)
    return FiniteRack((2 * idx[None, :] - idx[:, None]) % n)


def trivial_rack(n: int) -> FiniteRack:
    return FiniteRack(np.repeat(np.arange(n)[:, None], n, axis=1))


def conjugation_rack(g: FiniteGroup) -> FiniteRack:
    """x * y = y^-1 x y."""
    idx = np.arange(g.size)
    return FiniteRack(g.mul[g.mul[g.inv[None, :], idx[:, None]], idx[None, :]])


_BUILTIN = re.compile(r"^(Z|S)(\d+)$", re.IGNORECASE)


def builtin_group(name: str) -> FiniteGroup:
    """Resolve names like ``Z3`` (cyclic) or ``S3`` (symmetric)."""
    m = _BUILTIN.match(name.strip())
    if not m:
        raise KeyError(name)
    kind, k = m.group(1).upper(), int(m.group(2))
    if k < 1:
        raise KeyError(name)
    return cyclic_group(k) if kind == "Z" else symmetric_group(k)
