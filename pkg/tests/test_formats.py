import numpy as np
import pytest

from grack import formats
from grack.algebra import FiniteRack, GroupoidRack, SymmetricRackData
from grack.constructions import (
    AugmentedRackData,
    MultipleGroupRackData,
    conjugation_augmented,
    conjugation_mgr,
    heap_rack,
)
from grack.formats import ParseError, algebra_kind, read_algebra, write_algebra
from grack.groups import cyclic_group, dihedral_quandle, symmetric_group
from grack.universality import UniversalityData, universality_data_from


def _same_gr(a, b):
    ga, gb = a.groupoid, b.groupoid
    return (ga.num_objects == gb.num_objects
            and all(np.array_equal(x, y) for x, y in [
                (a.op, b.op), (ga.dom, gb.dom), (ga.cod, gb.cod), (ga.comp, gb.comp),
                (ga.identity, gb.identity), (ga.inverse, gb.inverse)]))


def test_groupoid_rack_round_trip():
    gr = heap_rack(symmetric_group(3))
    text = write_algebra(gr)
    assert algebra_kind(text) == "groupoid-rack"
    back = read_algebra(text)
    assert isinstance(back, GroupoidRack)
    assert _same_gr(gr, back)
    assert write_algebra(back) == text


def test_rack_round_trip():
    r = dihedral_quandle(5)
    back = read_algebra(write_algebra(r))
    assert isinstance(back, FiniteRack)
    assert np.array_equal(back.op, r.op)


def test_symmetric_rack_round_trip():
    sym = SymmetricRackData(dihedral_quandle(3), [0, 1, 2])
    back = read_algebra(write_algebra(sym))
    assert isinstance(back, SymmetricRackData)
    assert back.rho.tolist() == [0, 1, 2]


def test_group_round_trip():
    g = symmetric_group(3)
    back = read_algebra(write_algebra(g))
    assert np.array_equal(back.mul, g.mul) and back.unit == g.unit
    assert np.array_equal(back.inv, g.inv)


def test_mgr_round_trip():
    d = conjugation_mgr([cyclic_group(2), symmetric_group(3)])
    back = read_algebra(write_algebra(d))
    assert isinstance(back, MultipleGroupRackData)
    assert len(back.groups) == 2
    assert np.array_equal(back.op, d.op)


def test_augmented_round_trip():
    d = conjugation_augmented(symmetric_group(3))
    back = read_algebra(write_algebra(d))
    assert isinstance(back, AugmentedRackData)
    assert np.array_equal(back.action, d.action)
    assert np.array_equal(back.boundary, d.boundary)


def test_universal_round_trip():
    d = universality_data_from(heap_rack(cyclic_group(2)))
    back = read_algebra(write_algebra(d))
    assert isinstance(back, UniversalityData)
    assert back.mu == d.mu
    assert np.array_equal(back.sym.rho, d.sym.rho)


def test_comments_and_blank_lines():
    text = "# a trivial rack\nrack v1\n\nsize 2   # two elements\nop\n0 0\n1 1\n"
    assert read_algebra(text).op.tolist() == [[0, 0], [1, 1]]


def test_undefined_marker():
    text = write_algebra(heap_rack(cyclic_group(2)))
    assert "\n- - 0 1\n" in text


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("nonsense v1\n", 1),
    ("rack v1\nsize 2\nop\n0 1\n", 5),
    ("rack v1\nsize 2\nop\n0 1\n1 x\n", 5),
    ("rack v1\nsize 2\nop\n0 1 0\n1 0\n", 4),
    ("rack v1\nsize 2\nop\n0 1\n1 0\nextra\n", 6),
    ("group v1\nsize 2\nunit 0\ninv 0 1\nmul\n0 1\n1 5\n", 7),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        read_algebra(text)
    assert exc.value.line == line
    assert exc.value.reason


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        read_algebra("rack v1\nsize -1\n")


def test_writer_rejects_unknown():
    with pytest.raises(TypeError):
        formats.write_algebra(object())
