"""Acceptance gate: one test per criterion, named test_criterion_<k>_*.

Run with `pytest tests/test_acceptance.py`; add --runslow for the optional
n = 6 enumeration and the n = 5 Hamilton-cycle check.
"""

import itertools
import random
import time
from functools import lru_cache

import pytest

from quotientope import graphs
from quotientope.analysis import (
    build_quotient_graph,
    ceil_2sqrt,
    class_degree,
    is_regular,
    is_regular_by_degrees,
    is_vertex_transitive,
    lis_lds,
    max_degree_bound,
    max_degree_witness,
)
from quotientope.classes import compute_classes
from quotientope.counting import (
    a052528,
    catalan,
    chain_bound,
    chain_class_counts,
    count_noniso_detail,
    count_regular,
    count_vertex_transitive,
    count_vt_noniso,
    table1,
)
from quotientope.fences import count_downsets, enumerate_essential_congruences, iter_essential_congruences
from quotientope.genj import algorithm_j, build_representatives, hamilton_path, jump_sequence
from quotientope.patterns import WellBehavedSet, avoid_set, congruence_from_patterns, is_tame, parse_pattern, parse_patterns
from quotientope.perm import all_perms, join, meet, parse_perm, weak_leq


@lru_cache(maxsize=None)
def congruences(n):
    return tuple(iter_essential_congruences(n))


@lru_cache(maxsize=None)
def analysed(n):
    """(congruence, partition, quotient graph, representatives, Hamilton path) for every essential congruence."""
    out = []
    for c in congruences(n):
        part = compute_classes(c)
        reps = build_representatives(c)
        out.append((c, part, build_quotient_graph(part), reps, hamilton_path(c, part, reps)))
    return out


def test_criterion_1_table1_quotient_counts():
    t = time.perf_counter()
    assert [enumerate_essential_congruences(n) for n in range(2, 6)] == [1, 4, 47, 3322]
    assert time.perf_counter() - t < 10


@pytest.mark.slow
def test_criterion_1_optional_n6_enumeration():
    assert count_downsets(6) == 11_396_000
    assert enumerate_essential_congruences(6) == 11_396_000


def test_criterion_2_regular_counts():
    t = time.perf_counter()
    assert [count_regular(n) for n in range(2, 8)] == [catalan(n - 1) ** 2 for n in range(2, 8)]
    assert [count_regular(n) for n in range(2, 8)] == [1, 4, 25, 196, 1764, 17424]
    for n in range(2, 6):
        assert sum(is_regular(c) for c in congruences(n)) == count_regular(n)
    assert time.perf_counter() - t < 30


def test_criterion_3_vertex_transitive_counts():
    expected = [1, 4, 8, 22, 52, 132]
    assert [count_vertex_transitive(n) for n in range(2, 8)] == expected
    assert [a052528(n - 1) for n in range(2, 8)] == expected
    for n in range(2, 6):
        assert sum(is_vertex_transitive(c) for c in congruences(n)) == count_vertex_transitive(n)
    assert [count_vt_noniso(n) for n in range(2, 8)] == [1, 3, 4, 8, 11, 19]
    for n in range(2, 6):
        assert count_noniso_detail(n).vertex_transitive == count_vt_noniso(n)


def test_criterion_4_noniso_counts():
    t = time.perf_counter()
    got = [count_noniso_detail(n) for n in range(2, 6)]
    assert [g.total for g in got] == [1, 3, 19, 748]
    assert [g.regular for g in got] == [1, 3, 10, 51]
    assert time.perf_counter() - t < 120
    for n in range(2, 9):
        assert len(set(chain_class_counts(n))) == chain_bound(n) == 2 ** n - 2 * n + 1
    for n, g in zip(range(2, 6), got):
        assert g.total >= chain_bound(n)


def test_criterion_5_hamilton_paths_n5():
    t = time.perf_counter()
    rows = analysed(5)
    assert len(rows) == 3322
    for c, part, g, _, path in rows:
        assert sorted(path.classes) == list(range(part.count))
        for x, y in zip(path.classes, path.classes[1:]):
            assert y in g.adj[x]
    assert time.perf_counter() - t < 120


def test_criterion_6_algorithm_j_worked_example():
    lang = {parse_perm(s) for s in ["1243", "1423", "4123", "4213", "2134"]}
    trace = lambda s: [" ".join(map(str, p)) for p in algorithm_j(lang, parse_perm(s))]
    assert trace("1243") == ["1 2 4 3", "1 4 2 3", "4 1 2 3", "4 2 1 3", "2 1 3 4"]
    assert trace("4213") == ["4 2 1 3", "2 1 3 4"]
    assert trace("1423") == ["1 4 2 3"]


def test_criterion_7_oracle_equivalence():
    for n in range(2, 6):
        rows = analysed(n)
        for c, part, g, reps, path in rows:
            assert list(path.representatives) == jump_sequence(reps.language)


def test_criterion_8_degrees():
    for n in range(2, 6):
        for c, part, g, _, _ in analysed(n):
            assert min(g.degrees) == n - 1
    for n in range(2, 6):
        best = 0

        def visit(c):
            nonlocal best
            part = compute_classes(c)
            best = max(best, max(class_degree(part, x) for x in range(part.count)))

        enumerate_essential_congruences(n, visit, essential=False)
        assert best == 2 * n - ceil_2sqrt(n)
    for n in range(2, 13):
        w = max_degree_witness(n)
        assert w.degree == 2 * n - ceil_2sqrt(n) == max_degree_bound(n)
    rows = table1(7, enumerate_upto=5)
    assert [c.value for c in rows["min-degree"]] == [1, 2, 3, 4, 5, 6]
    assert [c.value for c in rows["max-degree"]] == [1, 2, 4, 5, 7, 8]


def test_criterion_9_characterisations_agree():
    for n in range(2, 6):
        for c, part, g, _, _ in analysed(n):
            assert is_regular(c) == (len(set(g.degrees)) == 1) == is_regular_by_degrees(c)
            assert is_vertex_transitive(c) == graphs.is_vertex_transitive(g.adj)


def _cycles(n):
    for c, part, g, _, path in analysed(n):
        if g.count < 3:
            continue
        cyc = graphs.find_hamilton_cycle(g.adj, hint=path.classes)
        assert cyc is not None and graphs.is_hamilton_cycle(g.adj, cyc), str(c)


def test_criterion_10_hamilton_cycles():
    for n in range(3, 5):
        _cycles(n)


@pytest.mark.slow
def test_criterion_10_hamilton_cycles_n5():
    _cycles(5)


def test_criterion_11_patterns():
    P1 = WellBehavedSet.of([parse_pattern("2[31]")])
    for n in range(2, 7):
        part = compute_classes(congruence_from_patterns(P1, n))
        assert part.count == catalan(n)
        assert sorted(part.min(x) for x in range(part.count)) == avoid_set(n, [parse_pattern("231")])
    P2 = WellBehavedSet.of(parse_patterns("2[41]3,3[41]2"))
    for n in range(2, 6):
        part = compute_classes(congruence_from_patterns(P2, n))
        assert part.count == len(avoid_set(n, P2.patterns))
    tame = [t for t in (parse_pattern(s) for s in ["123", "132", "213", "231", "312", "321",
                                                  "[12]3", "1[32]", "[13]2", "2[31]", "[23]1", "3[12]",
                                                  "[21]3", "2[13]", "[31]2", "1[23]", "[32]1", "3[21]"])
            if is_tame(t)]
    assert len(tame) == 6
    for t in tame:
        for n in range(1, 7):
            lang = set(avoid_set(n, [t]))
            seq = algorithm_j(lang, tuple(range(1, n + 1)))
            assert len(seq) == len(lang) == len(set(seq))


def _lattice_triple(p, q, r):
    j, m = join(p, q), meet(p, q)
    assert j == join(q, p) and m == meet(q, p)
    assert weak_leq(p, j) and weak_leq(q, j) and weak_leq(m, p) and weak_leq(m, q)
    assert join(p, m) == p and meet(p, j) == p
    assert join(j, r) == join(p, join(q, r))
    assert meet(m, r) == meet(p, meet(q, r))


def test_criterion_12_lattice_axioms_and_erdos_szekeres():
    for n in range(1, 7):
        perms = list(all_perms(n))
        for p in perms:
            r, s = lis_lds(p)
            assert r + s >= ceil_2sqrt(n) and r * s >= n
    for n in range(1, 5):
        perms = list(all_perms(n))
        for p, q, r in itertools.product(perms, repeat=3):
            _lattice_triple(p, q, r)
    for n in (5, 6):
        perms = list(all_perms(n))
        for p, q in itertools.product(perms, repeat=2) if n == 5 else zip(perms, perms[1:] + perms[:1]):
            _lattice_triple(p, q, perms[-1])
    rng = random.Random(2024)
    for n in range(5, 13):
        sample = [tuple(rng.sample(range(1, n + 1), n)) for _ in range(10_000)]
        for i, p in enumerate(sample):
            r, s = lis_lds(p)
            assert r + s >= ceil_2sqrt(n)
            _lattice_triple(p, sample[i - 1], sample[i - 2])


@pytest.mark.slow
def test_criterion_12_lattice_axioms_exhaustive_n6_pairs():
    perms = list(all_perms(6))
    for p, q in itertools.product(perms, repeat=2):
        _lattice_triple(p, q, perms[0])
