import itertools
import json

import pytest

from quotientope.classes import weak_order
from quotientope.errors import InvalidInputError
from quotientope.fences import (
    ArcDiagram,
    Congruence,
    Fence,
    congruence_from_json,
    congruence_to_json,
    count_downsets,
    downset_closure,
    edge_fence,
    enumerate_essential_congruences,
    fence_count,
    fence_edges,
    fence_space,
    forcing_less,
    from_diagram,
    hypercube,
    is_bar,
    parse_fences,
    reduced_diagram,
    restriction,
    tamari,
)
from quotientope.perm import parse_perm

F = Fence.make


def P(s):
    return parse_perm(s)


def test_forcing_less_examples():
    assert forcing_less(F(1, 4, [2, 3]), F(2, 4, [3]))
    f = F(1, 4, [2])
    assert not forcing_less(f, f)
    assert not forcing_less(F(1, 4, [2]), F(2, 4, [3]))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_forcing_order_is_strict_partial_order(n):
    fs = fence_space(n).fences
    for f in fs:
        assert not forcing_less(f, f)
    for f, g in itertools.product(fs, repeat=2):
        if forcing_less(f, g):
            assert not forcing_less(g, f)
            for h in fs:
                if forcing_less(g, h):
                    assert forcing_less(f, h)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cover_relations(n):
    sp = fence_space(n)
    fs = sp.fences
    for f, g in itertools.product(fs, repeat=2):
        if not forcing_less(f, g):
            continue
        is_cover = not any(forcing_less(f, h) and forcing_less(h, g) for h in fs)
        short = (g.a, g.b) in ((f.a + 1, f.b), (f.a, f.b - 1))
        assert is_cover == short
        assert (sp.index(f) in sp.lower_covers[sp.index(g)]) == is_cover
    for i, f in enumerate(fs):
        down = {g for g in fs if forcing_less(g, f)}
        assert set(sp.fences_of(sp.down[i])) == down
        up = {g for g in fs if forcing_less(f, g)}
        assert set(sp.fences_of(sp.up[i])) == up


def test_downset_closure_examples():
    c = downset_closure(4, [F(2, 4, [3])])
    assert set(c.fences) == {F(2, 4, [3]), F(1, 4, [3]), F(1, 4, [2, 3])}
    assert len(downset_closure(4, [])) == 0
    full = downset_closure(4, fence_space(4).fences)
    assert len(full) == 11
    assert downset_closure(4, c.fences) == c


def test_fence_count():
    assert fence_count(4, 3) == 4
    assert sum(fence_count(4, k) for k in range(2, 4)) == 8
    for n in range(2, 10):
        assert fence_count(n, 1) == n - 1
        assert sum(fence_count(n, k) for k in range(1, n)) == fence_space(n).size
        assert sum(fence_count(n, k) for k in range(2, n)) == 2 ** n - 2 * n
        assert fence_space(n).essential_mask.bit_count() == 2 ** n - 2 * n


def test_fence_edges_examples():
    assert set(fence_edges(F(2, 4, [3]), 4)) == {(P("3241"), P("3421")), (P("1324"), P("1342")), (P("3124"), P("3142"))}
    assert fence_edges(F(1, 2), 2) == [(P("12"), P("21"))]
    assert set(fence_edges(F(1, 4, [2, 3]), 4)) == {(P("2314"), P("2341")), (P("3214"), P("3241"))}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_edges_partition_into_fences(n):
    seen = set()
    for f in fence_space(n).fences:
        edges = fence_edges(f, n)
        verts = [v for e in edges for v in e]
        assert len(verts) == len(set(verts)), "fence edges must form a matching"
        for lo, hi in edges:
            assert edge_fence(lo, hi) == f
            assert (lo, hi) not in seen
            seen.add((lo, hi))
    wo = weak_order(n)
    assert len(seen) == wo.lo.size


def test_edge_fence_and_is_bar():
    assert edge_fence(P("1324"), P("1342")) == F(2, 4, [3])
    assert edge_fence(P("12"), P("21")) == F(1, 2)
    assert edge_fence(P("3214"), P("3241")) == F(1, 4, [2, 3])
    c = downset_closure(4, [F(2, 4, [3])])
    assert is_bar(c, P("1324"), P("1342"))
    assert not is_bar(Congruence(2), P("12"), P("21"))
    assert is_bar(c, P("3214"), P("3241"))
    with pytest.raises(InvalidInputError):
        edge_fence(P("1234"), P("2143"))


def test_reduced_diagram_examples():
    c = downset_closure(4, [F(2, 4, [3])])
    assert reduced_diagram(c).arcs == (F(2, 4, [3]),)
    assert reduced_diagram(Congruence(4)).arcs == ()
    assert set(reduced_diagram(Congruence.full(4)).arcs) == {F(1, 2), F(2, 3), F(3, 4)}


def test_diagram_round_trip(essential):
    for c in essential(5):
        assert from_diagram(reduced_diagram(c)) == c
    with pytest.raises(InvalidInputError):
        from_diagram(ArcDiagram(4, (F(1, 4, [2, 3]), F(2, 4, [3]))))


def test_restriction_examples():
    assert restriction(downset_closure(4, [F(2, 4, [3])])) == Congruence(3)
    assert restriction(Congruence(4)) == Congruence(3)
    c = downset_closure(4, [F(1, 3, [2]), F(2, 4, [3])])
    assert restriction(c) == downset_closure(3, [F(1, 3, [2])])


def test_restriction_is_downset(essential):
    for c in essential(5):
        r = restriction(c)
        assert r.space.is_downset(r.mask)


def test_enumeration_counts():
    assert enumerate_essential_congruences(2) == 1
    assert enumerate_essential_congruences(3) == 4
    assert enumerate_essential_congruences(4) == 47
    assert enumerate_essential_congruences(5) == 3322
    assert count_downsets(6) == 11_396_000


def test_enumeration_visits_distinct_downsets():
    seen = []
    enumerate_essential_congruences(4, seen.append)
    assert len(set(seen)) == 47
    sp = fence_space(4)
    for c in seen:
        assert c.is_essential and sp.is_downset(c.mask)
    # brute force over all subsets of essential fences
    ess = [i for i in range(sp.size) if sp.essential_mask >> i & 1]
    brute = set()
    for bits in range(1 << len(ess)):
        mask = sum(1 << ess[k] for k in range(len(ess)) if bits >> k & 1)
        if sp.is_downset(mask):
            brute.add(mask)
    assert brute == {c.mask for c in seen}


def test_all_congruences_enumeration():
    assert enumerate_essential_congruences(4, essential=False) == count_downsets(4, essential=False)


def test_terse_syntax():
    fs = parse_fences("1-3:{};2-4:{3}")
    assert fs == [F(1, 3), F(2, 4, [3])]
    assert parse_fences("1-3") == [F(1, 3)]
    assert parse_fences("") == []
    assert str(F(2, 4, [3])) == "2-4:{3}"
    for bad in ["1-1", "3-1", "1-3:{3}", "a-b", "1-4:{x}"]:
        with pytest.raises(InvalidInputError):
            parse_fences(bad)


def test_json_round_trip():
    c = downset_closure(4, [F(2, 4, [3])])
    data = congruence_to_json(c)
    assert data == {"n": 4, "fences": [{"a": 2, "b": 4, "left": [3]}], "generators": True}
    assert congruence_from_json(json.dumps(data)) == c
    assert congruence_from_json(congruence_to_json(c, generators=False)) == c
    with pytest.raises(InvalidInputError):
        congruence_from_json({"n": 4, "fences": [{"a": 2, "b": 4, "left": [3]}], "generators": False})
    with pytest.raises(InvalidInputError):
        congruence_from_json("{bad json")


def test_named_congruences():
    assert tamari(4).is_essential and hypercube(4).is_essential
    assert all(f.left for f in reduced_diagram(tamari(5)).arcs)
    assert not Congruence.full(3).is_essential
