import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grack.algebra import (
    UNDEFINED,
    AxiomCheckFailed,
    FiniteGroupoid,
    FiniteRack,
    GroupoidRack,
    MalformedTable,
    SymmetricRackData,
    ValidationReport,
    canonical_involution,
    check_group,
    check_groupoid,
    check_groupoid_rack,
    check_rack,
    check_symmetric_rack,
    rack_pow,
)
from grack.constructions import heap_rack
from grack.groups import (
    conjugation_rack,
    cyclic_group,
    dihedral_quandle,
    symmetric_group,
    trivial_rack,
)
from grack.mutation import mutate

import naive


def test_singleton_rack_valid():
    assert check_rack(FiniteRack([[0]])).ok


def test_dihedral_z3_valid():
    r = dihedral_quandle(3)
    assert r.op.tolist() == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    assert check_rack(r).ok
    assert naive.is_rack(r.op.tolist())


def test_constant_op_breaks_column_bijectivity():
    rep = check_rack(FiniteRack([[0, 0], [0, 0]]))
    assert not rep.ok
    assert rep.first().axiom == "rack(i)"
    assert rep.first().witness == (0,)


def test_out_of_range_entry():
    with pytest.raises(MalformedTable):
        FiniteRack([[0, 2], [1, 0]])
    with pytest.raises(MalformedTable):
        FiniteRack([[0, 1, 0], [1, 0, 1]])


def test_rack_pow():
    r = dihedral_quandle(3)
    assert rack_pow(r, 2, 1, 0) == 2
    assert rack_pow(r, 2, 1, 1) == r.op[2, 1]
    # S_1 on D3 is an involution, so two steps return to the start
    x = 0
    for _ in range(2):
        x = int(r.op[x, 1])
    assert rack_pow(r, 0, 1, 2) == x == 0


def test_rack_pow_negative_undoes_positive():
    r = conjugation_rack(symmetric_group(3))
    for x in range(6):
        for y in range(6):
            for n in (1, 2, 5):
                assert rack_pow(r, rack_pow(r, x, y, n), y, -n) == x


def test_symmetric_identity_on_involutory_rack():
    r = dihedral_quandle(3)
    assert (r.op[r.op, np.arange(3)[None, :]] == np.arange(3)[:, None]).all()
    assert check_symmetric_rack(SymmetricRackData(r, [0, 1, 2])).ok


def test_symmetric_three_cycle_fails():
    rep = check_symmetric_rack(SymmetricRackData(trivial_rack(3), [1, 2, 0]))
    assert "involution(i)" in rep.axioms()


def test_symmetric_from_heap_swap():
    gr = heap_rack(cyclic_group(3))
    swap = [(i % 3) * 3 + i // 3 for i in range(9)]
    assert check_symmetric_rack(SymmetricRackData(FiniteRack(gr.op), swap)).ok


def test_terminal_groupoid():
    assert check_groupoid(FiniteGroupoid(1, [0], [0], [[0]], [0], [0])).ok


def _pair_groupoid_tables(n):
    dom = [i // n for i in range(n * n)]
    cod = [i % n for i in range(n * n)]
    comp = [[dom[f] * n + cod[g] if cod[f] == dom[g] else UNDEFINED for g in range(n * n)]
            for f in range(n * n)]
    ident = [i * n + i for i in range(n)]
    inv = [cod[f] * n + dom[f] for f in range(n * n)]
    return dom, cod, comp, ident, inv


def test_pair_groupoid_on_two_objects():
    t = _pair_groupoid_tables(2)
    assert naive.is_groupoid(*t)
    assert check_groupoid(FiniteGroupoid(2, *t)).ok


def test_pair_groupoid_without_inverses():
    dom, cod, comp, ident, inv = _pair_groupoid_tables(2)
    rep = check_groupoid(FiniteGroupoid(2, dom, cod, comp, ident, list(range(4))))
    assert rep.axioms() == {"groupoid(inverse)"}


def test_groupoid_undefined_where_composable():
    dom, cod, comp, ident, inv = _pair_groupoid_tables(2)
    comp[0][1] = UNDEFINED
    rep = check_groupoid(FiniteGroupoid(2, dom, cod, comp, ident, inv))
    assert "groupoid(domain)" in rep.axioms()
    assert (0, 1) in [v.witness for v in rep.violations if v.axiom == "groupoid(domain)"]


@pytest.mark.parametrize("n", [2, 3])
def test_heap_rack_valid(n):
    gr = heap_rack(cyclic_group(n))
    assert check_groupoid_rack(gr).ok
    assert naive.is_groupoid_rack(*naive.gr_tables(gr))


def test_heap_z2_corrupted_cell_located():
    gr = heap_rack(cyclic_group(2))
    op = gr.op.copy()
    op[0, 1] = (op[0, 1] + 1) % 4
    rep = check_groupoid_rack(GroupoidRack(gr.groupoid, op))
    assert not rep.ok
    # the corrupted column is no longer a bijection
    assert ("bijective", (1,)) in [(v.axiom, v.witness) for v in rep.violations]


def test_report_cap():
    # x*y = 2x + y mod 7 has bijective columns but fails self-distributivity
    # at every triple with z != 0
    idx = np.arange(7)
    rep = check_rack(FiniteRack((2 * idx[:, None] + idx[None, :]) % 7))
    assert rep.axioms() == {"rack(ii)"}
    assert len(rep.violations) == 100
    assert rep.truncated


def test_report_deterministic():
    gr = heap_rack(cyclic_group(3))
    op = gr.op.copy()
    op[4, 2] = 0
    bad = GroupoidRack(gr.groupoid, op)
    a, b = check_groupoid_rack(bad), check_groupoid_rack(bad)
    assert a.violations == b.violations
    for axiom in a.axioms():
        wits = [v.witness for v in a.violations if v.axiom == axiom]
        assert wits == sorted(wits)


def test_canonical_involution_heap_z2():
    sym = canonical_involution(heap_rack(cyclic_group(2)))
    # morphism (x, y) has index 2x + y
    assert sym.rho.tolist() == [0, 2, 1, 3]


def test_canonical_involution_fixes_identities():
    gr = heap_rack(cyclic_group(3))
    sym = canonical_involution(gr)
    for i in gr.groupoid.identity:
        assert sym.rho[i] == i


def test_canonical_involution_heap_z3_symmetric():
    assert check_symmetric_rack(canonical_involution(heap_rack(cyclic_group(3)))).ok


def test_canonical_involution_rejects_invalid():
    gr = heap_rack(cyclic_group(2))
    op = gr.op.copy()
    op[0, 0] = 3
    with pytest.raises(AxiomCheckFailed):
        canonical_involution(GroupoidRack(gr.groupoid, op))


def test_columns_of_groupoid_rack_are_bijections():
    gr = heap_rack(symmetric_group(3))
    s = np.sort(gr.op, axis=0)
    assert (s == np.arange(gr.size)[:, None]).all()


def test_groups_pass():
    for g in [cyclic_group(1), cyclic_group(5), symmetric_group(3)]:
        assert check_group(g).ok
        assert naive.is_group(g.mul.tolist(), g.unit, g.inv.tolist())


def test_empty_report_is_truthy():
    rep = ValidationReport("x")
    assert rep and rep.ok and str(rep) == "x: valid"


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.data())
def test_rack_checker_agrees_with_naive(n, data):
    op = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                            min_size=n, max_size=n))
    assert check_rack(FiniteRack(op)).ok == naive.is_rack(op)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_groupoid_rack_checker_agrees_with_naive_on_mutants(seed):
    gr = heap_rack(cyclic_group(2))
    rng = np.random.default_rng(seed)
    mutant, _ = mutate(gr, rng)
    assert check_groupoid_rack(mutant).ok == naive.is_groupoid_rack(*naive.gr_tables(mutant))
