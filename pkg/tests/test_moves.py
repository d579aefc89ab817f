from collections import Counter

import pytest

from grack.coloring import count_colorings, enumerate_colorings
from grack.corpus import boundary_profile, corpus, write_pair
from grack.diagram import (
    MERGE,
    Diagram,
    NotCircleComponent,
    PatternMismatch,
    isomorphic,
    parse_diagram,
    serialize_diagram,
    Vertex,
    circle_components,
    validate,
)
from grack.moves import (
    MoveSite,
    apply_inverse_move,
    apply_move,
    parse_boundary,
    parse_site,
    rewrite,
    rewrite_sequence,
)

PAIRS = corpus()
BY_NAME = {p.name: p for p in PAIRS}


def test_corpus_shape():
    assert len(PAIRS) >= 14
    kinds = Counter(p.kind for p in PAIRS)
    assert kinds["R2+"] >= 1 and kinds["R2-"] >= 1
    assert kinds["R3"] >= 1
    for k in ("R5a", "R5b", "R5c", "R5d", "R6a", "R6b", "R6c", "R6d"):
        assert kinds[k] >= 1, k
    assert kinds["INV"] >= 2
    assert kinds["composite"] >= 1


def test_corpus_diagrams_valid_and_small():
    for p in PAIRS:
        for d in (p.before, p.after):
            assert validate(d).ok
            assert d.num_arcs <= 6


def test_boundary_is_bijection():
    for p in PAIRS:
        befores = [b.before for b in p.boundary]
        afters = [b.after for b in p.boundary]
        assert len(set(befores)) == len(befores) or p.kind.startswith("R2")
        assert len(set(zip(befores, afters))) == len(p.boundary)
        assert all(0 <= a < p.before.num_arcs for a in befores)
        assert all(0 <= a < p.after.num_arcs for a in afters)


def test_apply_move_reproduces_after():
    for p in PAIRS:
        res = rewrite_sequence(p.before, p.sites)
        assert res.diagram == p.after, p.name
        assert tuple(res.boundary) == p.boundary, p.name


@pytest.mark.parametrize("name", [p.name for p in PAIRS if p.kind != "composite"])
def test_forward_then_backward_is_isomorphic(name):
    p = BY_NAME[name]
    (site,) = p.sites
    res = rewrite(p.before, site)
    assert isomorphic(apply_move(res.diagram, res.inverse), p.before)


def test_r2_adds_two_crossings_and_two_arcs():
    p = BY_NAME["r2-plus"]
    assert len(p.after.crossings) == len(p.before.crossings) + 2
    assert p.after.num_arcs == p.before.num_arcs + 2
    assert [c.sign for c in p.after.crossings] == [1, -1]
    assert [c.sign for c in BY_NAME["r2-minus"].after.crossings[-2:]] == [-1, 1]


@pytest.mark.parametrize("kind", ["R5a", "R5b", "R5c", "R5d"])
def test_r5_forward_merges_two_crossings(kind):
    for p in PAIRS:
        if p.kind == kind:
            assert len(p.after.crossings) == len(p.before.crossings) - 1


def test_r6a_reassociates():
    # before: arc 3 = a(bc) with a = arc 2, b = arc 0, c = arc 1;
    # after: arc 3 = (ab)c
    p = BY_NAME["r6a"]
    assert Vertex(MERGE, 0, 1, 4) in p.before.vertices       # bc
    assert Vertex(MERGE, 2, 4, 3) in p.before.vertices       # a(bc)
    assert Vertex(MERGE, 2, 0, 4) in p.after.vertices        # ab
    assert Vertex(MERGE, 4, 1, 3) in p.after.vertices        # (ab)c


def test_r6a_colorings_match_labels(heap_z3):
    comp = heap_z3.groupoid.comp
    p = BY_NAME["r6a"]
    before = list(enumerate_colorings(p.before, heap_z3))
    after = list(enumerate_colorings(p.after, heap_z3))
    outer = lambda c: c[:4] + c[5:]
    assert sorted(map(outer, before)) == sorted(map(outer, after))
    for c in before:
        a, b, cc = c[2], c[0], c[1]
        assert c[4] == comp[b, cc]
        assert c[3] == comp[a, c[4]] == comp[comp[a, b], cc]
    for c in after:
        assert c[4] == comp[c[2], c[0]]


def test_wrong_reassociation_is_detected(heap_z3):
    # negative control: swapping the branch order changes the diagram class
    # and the boundary profile, so the locality check is not vacuous
    p = BY_NAME["r6a"]
    bad = parse_diagram("arcs 6\nvm 0 2 4\nvm 4 1 3\nvs 3 0 5\nvs 5 1 2\n")
    assert (boundary_profile(p.before, heap_z3, p.boundary, "before")
            != boundary_profile(bad, heap_z3, p.boundary, "after"))


def test_locality_on_corpus(algebras):
    for p in PAIRS:
        for x in algebras.values():
            assert count_colorings(p.before, x) == count_colorings(p.after, x), p.name
            assert (boundary_profile(p.before, x, p.boundary, "before")
                    == boundary_profile(p.after, x, p.boundary, "after")), p.name


def test_pattern_mismatch_r2_bad_arcs():
    d = BY_NAME["r2-plus"].before
    with pytest.raises(PatternMismatch):
        apply_move(d, "R2+ fwd 3 9")
    with pytest.raises(PatternMismatch):
        apply_move(d, "R2+ bwd 0 1")


def test_pattern_mismatch_r6_on_crossing_arc():
    d = BY_NAME["r5a"].before
    with pytest.raises(PatternMismatch) as exc:
        apply_move(d, "R6a fwd 4")
    assert exc.value.site == parse_site("R6a fwd 4")


def test_pattern_mismatch_r5_wrong_vertex():
    d = BY_NAME["r5a"].before
    with pytest.raises(PatternMismatch):
        apply_move(d, "R5b fwd 0 0 1")      # vertex 0 is a merge, R5b wants a split


def test_r3_invalid_orientation_rejected():
    p = BY_NAME["r3"]
    site = p.sites[0]
    swapped = MoveSite("R3", "fwd", (site.anchor[0], site.anchor[2], site.anchor[1]))
    with pytest.raises(PatternMismatch):
        apply_move(p.before, swapped)


def test_inv_on_vertex_component_fails():
    d = BY_NAME["inv-1"].before
    with pytest.raises(NotCircleComponent):
        apply_move(d, "INV fwd 0")
    with pytest.raises(NotCircleComponent):
        apply_inverse_move(d, [0, 1, 2])


def test_inverse_move_free_loop_is_identity():
    d = parse_diagram("loop 0\n")
    assert apply_inverse_move(d, [0]) == d


def test_inverse_move_under_once():
    d = BY_NAME["inv-1"].before
    e = apply_inverse_move(d, [3, 4, 5])
    for c0, c1 in zip(d.crossings, e.crossings):
        assert (c1.under_in, c1.under_out) == (c0.under_out, c0.under_in)
        assert c1.sign == -c0.sign


def test_inverse_move_is_involution():
    for p in PAIRS:
        d = p.before
        for comp in circle_components(d):
            assert apply_inverse_move(apply_inverse_move(d, comp), comp) == d


def test_inverse_move_self_crossing_keeps_sign():
    # a component crossing itself: both strands reverse, the sign is kept
    d = parse_diagram("x+ 0 1 0\nx+ 1 0 1\n")
    assert len(d.crossings) == 2
    e = apply_inverse_move(d, [0, 1])
    assert [c.sign for c in e.crossings] == [1, 1]


def test_site_parsing():
    s = parse_site("R2− fwd 3 0")
    assert s.kind == "R2-" and str(s) == "R2- fwd 3 0"
    with pytest.raises(ValueError):
        parse_site("R7 fwd 1")
    with pytest.raises(ValueError):
        parse_site("R2+ sideways 1 2")
    with pytest.raises(ValueError):
        parse_site("R2+")


def test_boundary_text():
    pts = parse_boundary("~3:3 0:5")
    assert pts[0].inverted and not pts[1].inverted
    assert str(pts[0]) == "~3:3" and str(pts[1]) == "0:5"


def test_write_pair_regenerates_corpus(tmp_path):
    for p in PAIRS:
        site = " ; ".join(str(s) for s in p.sites)
        write_pair(tmp_path, p.name, p.kind, p.before_path.read_text(), site, p.description)
        assert (tmp_path / f"{p.name}.after.dg").read_text() == p.after_path.read_text()
        got = (tmp_path / f"{p.name}.pair").read_text()
        assert got == p.before_path.with_name(f"{p.name}.pair").read_text()


def test_stable_ids_outside_disk():
    p = BY_NAME["r2-plus"]
    assert serialize_diagram(p.after).splitlines()[-1] == "vs 2 0 1"
    assert p.after.free_loops == p.before.free_loops


def test_empty_diagram_rejects_moves():
    with pytest.raises(PatternMismatch):
        apply_move(Diagram(0), "R3 fwd 0 1 2")
