import random
from collections import deque

import pytest

from quotientope.errors import BudgetExceededError, InvalidInputError
from quotientope.perm import (
    LEFT,
    RIGHT,
    all_perms,
    asc,
    cover_neighbors,
    desc,
    format_perm,
    identity,
    insert_largest,
    inversion_set,
    inversions,
    join,
    jump,
    meet,
    parse_perm,
    remove_largest,
    weak_leq,
)


def P(s):
    return parse_perm(s)


def test_parse_and_format():
    assert P("2 4 1 3") == (2, 4, 1, 3)
    assert P("2413") == (2, 4, 1, 3)
    assert P("") == ()
    assert format_perm((2, 4, 1, 3)) == "2 4 1 3"
    with pytest.raises(InvalidInputError):
        P("1 1 2")
    with pytest.raises(InvalidInputError):
        P("1 x")
    with pytest.raises(BudgetExceededError):
        list(all_perms(13))


def test_inversion_set_examples():
    assert inversion_set(P("1234")).pairs == frozenset()
    assert inversion_set(P("321")).pairs == {(3, 2), (3, 1), (2, 1)}
    assert inversion_set(P("2314")).pairs == {(2, 1), (3, 1)}
    assert len(inversion_set(P("4321"))) == 6


def test_weak_leq_examples():
    assert weak_leq(P("1234"), P("4321"))
    assert not weak_leq(P("213"), P("132"))
    assert not weak_leq(P("132"), P("213"))
    assert weak_leq(P("231"), P("231"))
    with pytest.raises(InvalidInputError):
        weak_leq(P("12"), P("123"))


def test_join_meet_examples():
    assert join(P("213"), P("132")) == P("321")
    assert meet(P("213"), P("132")) == P("123")
    for p in all_perms(4):
        assert join(p, identity(4)) == p
        assert meet(p, identity(4)) == identity(4)


def _brute_join(p, q, perms):
    ubs = [r for r in perms if weak_leq(p, r) and weak_leq(q, r)]
    least = [r for r in ubs if all(weak_leq(r, s) for s in ubs)]
    assert len(least) == 1
    return least[0]


@pytest.mark.parametrize("n", [3, 4])
def test_join_is_least_upper_bound(n):
    perms = list(all_perms(n))
    for p in perms:
        for q in perms:
            assert join(p, q) == _brute_join(p, q, perms)


def test_join_is_least_upper_bound_sampled_n5():
    perms = list(all_perms(5))
    rng = random.Random(5)
    for _ in range(300):
        p, q = rng.choice(perms), rng.choice(perms)
        assert join(p, q) == _brute_join(p, q, perms)


def test_cover_neighbors_examples():
    down, up = cover_neighbors(P("123"))
    assert down == [] and set(up) == {P("213"), P("132")}
    down, up = cover_neighbors(P("1342"))
    assert down == [P("1324")] and set(up) == {P("3142"), P("1432")}
    down, up = cover_neighbors(P("321"))
    assert up == [] and len(down) == 2


def test_cover_neighbors_counts():
    for p in all_perms(5):
        down, up = cover_neighbors(p)
        assert len(up) == asc(p) and len(down) == desc(p)
        assert all(inversions(q) == inversions(p) + 1 for q in up)
        assert all(inversions(q) == inversions(p) - 1 for q in down)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_inversions_equal_bfs_distance(n):
    start = identity(n)
    dist = {start: 0}
    q = deque([start])
    while q:
        p = q.popleft()
        down, up = cover_neighbors(p)
        for r in down + up:
            if r not in dist:
                dist[r] = dist[p] + 1
                q.append(r)
    assert len(dist) == len(list(all_perms(n)))
    assert all(len(inversion_set(p)) == d for p, d in dist.items())


def test_insert_remove():
    assert insert_largest(P("132"), 1) == P("4132")
    assert insert_largest((), 1) == (1,)
    assert remove_largest(P("1423")) == P("123")
    for p in all_perms(4):
        for i in range(1, 6):
            assert remove_largest(insert_largest(p, i)) == p
    with pytest.raises(InvalidInputError):
        insert_largest(P("12"), 4)


def test_jump_examples():
    assert jump(P("1243"), 4, LEFT, 1) == P("1423")
    assert all(jump(P("4123"), 4, LEFT, d) is None for d in range(1, 5))
    assert jump(P("2134"), 2, RIGHT, 1) == P("1234")
    assert jump(P("1423"), 4, RIGHT, 2) == P("1234")
    assert jump(P("1423"), 2, LEFT, 1) is None  # 4 is in the way


def test_jump_by_d_equals_d_unit_jumps():
    for p in all_perms(5):
        for v in p:
            for direction in (LEFT, RIGHT):
                for d in range(1, 5):
                    q = jump(p, v, direction, d)
                    r = p
                    for _ in range(d):
                        r = jump(r, v, direction, 1) if r is not None else None
                    assert q == r
