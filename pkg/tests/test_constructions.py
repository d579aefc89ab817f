import numpy as np
import pytest

from grack.algebra import (
    AxiomCheckFailed,
    FiniteRack,
    canonical_involution,
    check_groupoid,
    check_groupoid_rack,
)
from grack.constructions import (
    AugmentedRackData,
    ConditionViolated,
    MultipleGroupRackData,
    augmented_groupoid_rack,
    check_augmented_rack,
    conjugation_augmented,
    conjugation_mgr,
    heap_rack,
    is_multiple_conjugation_quandle,
    multiple_group_rack,
    rack_square,
    trivial_mgr,
)
from grack.groups import (
    conjugation_rack,
    cyclic_group,
    dihedral_quandle,
    symmetric_group,
    trivial_group,
)

import naive


def test_mgr_single_z2_trivial_action():
    gr = multiple_group_rack(trivial_mgr([cyclic_group(2)]))
    assert gr.groupoid.num_objects == 1
    assert gr.size == 2
    assert naive.is_groupoid_rack(*naive.gr_tables(gr))


def test_mgr_s3_conjugation_is_mcq():
    d = conjugation_mgr([symmetric_group(3)])
    gr = multiple_group_rack(d)
    assert check_groupoid_rack(gr).ok
    assert is_multiple_conjugation_quandle(d)


def test_mgr_s3_trivial_is_not_mcq():
    d = trivial_mgr([symmetric_group(3)])
    multiple_group_rack(d)       # still a valid multiple group rack
    assert not is_multiple_conjugation_quandle(d)
    # brute force: some pair has x != y^-1 x y
    g = symmetric_group(3)
    assert any(g.product(int(g.inv[y]), x, y) != x for x in range(6) for y in range(6))


def test_mgr_trivial_group_is_mcq():
    assert is_multiple_conjugation_quandle(conjugation_mgr([trivial_group()]))
    assert is_multiple_conjugation_quandle(trivial_mgr([trivial_group()]))


def test_mgr_two_groups_has_no_cross_morphisms():
    d = conjugation_mgr([symmetric_group(3), cyclic_group(2)])
    gr = multiple_group_rack(d)
    assert gr.groupoid.num_objects == 2
    comp = gr.groupoid.comp
    assert (comp[:6, 6:] == -1).all() and (comp[6:, :6] == -1).all()
    assert naive.is_groupoid_rack(*naive.gr_tables(gr))


def test_mgr_condition_iii_violation():
    # Z2 + Z2 on {0,1} and {2,3}; the odd elements act by swapping the two
    # identities, which sends the first group into both groups
    swap = [2, 1, 0, 3]
    op = [[swap[x] if y in (1, 3) else x for y in range(4)] for x in range(4)]
    d = MultipleGroupRackData([cyclic_group(2), cyclic_group(2)], op)
    with pytest.raises(ConditionViolated) as exc:
        multiple_group_rack(d)
    assert exc.value.condition == "(iii)"
    assert exc.value.report.axioms() == {"(iii)"}


def test_heap_z2_shape_and_value():
    gr = heap_rack(cyclic_group(2))
    assert gr.size == 4 and gr.groupoid.num_objects == 2
    # (x, y) is index 2x + y; (0,1) * (1,0) = (0-1+0, 1-1+0) = (1, 0)
    assert gr.op[1, 2] == 2


@pytest.mark.parametrize("g", [cyclic_group(3), symmetric_group(3)], ids=["Z3", "S3"])
def test_heap_identity_acts_trivially(g):
    gr = heap_rack(g)
    n = g.size
    for z in range(n):
        assert (gr.op[:, z * n + z] == np.arange(n * n)).all()


def test_heap_rack_formula_by_hand():
    g = symmetric_group(3)
    gr = heap_rack(g)
    mul, inv = g.mul, g.inv
    for x in range(6):
        for y in range(6):
            for z in range(6):
                for w in range(6):
                    k = mul[inv[z], w]
                    assert gr.op[x * 6 + y, z * 6 + w] == mul[x, k] * 6 + mul[y, k]


def test_heap_z3_naive():
    assert naive.is_groupoid_rack(*naive.gr_tables(heap_rack(cyclic_group(3))))


@pytest.mark.parametrize("g", [cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)])
def test_heap_involution_is_swap(g):
    n = g.size
    rho = canonical_involution(heap_rack(g)).rho
    assert rho.tolist() == [(i % n) * n + i // n for i in range(n * n)]


def test_rack_square_dihedral_z3():
    gr = rack_square(dihedral_quandle(3))
    assert naive.is_groupoid_rack(*naive.gr_tables(gr))


def test_rack_square_identity_morphisms():
    r = dihedral_quandle(5)
    gr = rack_square(r)
    for z in range(5):
        assert (gr.op[:, z * 5 + z] == np.arange(25)).all()


def test_rack_square_singleton():
    gr = rack_square(FiniteRack([[0]]))
    assert gr.size == 1 and gr.groupoid.num_objects == 1


def test_rack_square_formula():
    r = conjugation_rack(symmetric_group(3))
    gr = rack_square(r)
    op, opinv = r.op, r.op_inv
    for x, y, z, w in [(0, 1, 2, 3), (5, 4, 3, 2), (1, 1, 4, 0)]:
        want = op[opinv[x, z], w] * 6 + op[opinv[y, z], w]
        assert gr.op[x * 6 + y, z * 6 + w] == want


def test_rack_square_literal_formula_fails():
    with pytest.raises(AxiomCheckFailed) as exc:
        rack_square(dihedral_quandle(3), literal=True)
    assert not exc.value.report.ok


def test_augmented_s3_conjugation_valid():
    assert check_augmented_rack(conjugation_augmented(symmetric_group(3))).ok


def test_augmented_constant_boundary_fails():
    g = symmetric_group(3)
    r = conjugation_rack(g)
    d = AugmentedRackData(r, g, r.op, np.zeros(6, dtype=int))
    assert "(i)" in check_augmented_rack(d).axioms()


def test_augmented_trivial():
    d = AugmentedRackData(FiniteRack([[0]]), trivial_group(), [[0]], [0])
    assert check_augmented_rack(d).ok
    gr = augmented_groupoid_rack(d, 1, 1)
    assert gr.size == 1


def test_augmented_n0_delta0_is_trivial_op():
    gr = augmented_groupoid_rack(conjugation_augmented(symmetric_group(3)), 0, 0)
    assert (gr.op == np.arange(gr.size)[:, None]).all()


@pytest.mark.parametrize("n,delta", [(1, 0), (0, 1)])
def test_augmented_s3_examples(n, delta):
    gr = augmented_groupoid_rack(conjugation_augmented(symmetric_group(3)), n, delta)
    assert gr.size == 36
    assert gr.groupoid.num_objects == 6
    assert check_groupoid(gr.groupoid).ok


def test_augmented_s3_naive_oracle():
    gr = augmented_groupoid_rack(conjugation_augmented(symmetric_group(3)), 1, 1)
    assert naive.is_groupoid_rack(*naive.gr_tables(gr))


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
@pytest.mark.parametrize("delta", [0, 1])
def test_augmented_grid(n, delta):
    gr = augmented_groupoid_rack(conjugation_augmented(symmetric_group(3)), n, delta)
    assert check_groupoid_rack(gr).ok


def test_augmented_bad_delta():
    with pytest.raises(ValueError):
        augmented_groupoid_rack(conjugation_augmented(cyclic_group(2)), 1, 2)


def test_augmented_rejects_invalid_datum():
    g = symmetric_group(3)
    r = conjugation_rack(g)
    d = AugmentedRackData(r, g, r.op, np.zeros(6, dtype=int))
    with pytest.raises(ConditionViolated):
        augmented_groupoid_rack(d, 1, 0)
