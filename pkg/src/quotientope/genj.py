"""Zigzag languages, representatives of congruence classes, and Algorithm J."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable, Optional

from .classes import ClassPartition, compute_classes, quotient_edges, rail_segments, restriction_chain
from .errors import InvalidInputError, NotZigzagError, VerificationError
from .fences import Congruence
from .perm import LEFT, RIGHT, Perm, check_n, identity, insert_largest, jump, remove_largest

Z1 = "z1"
Z2 = "z2"


@dataclass(frozen=True)
class ZigzagLanguage:
    """levels[k] is L_k; modes[k] is 'z1' or 'z2' for k >= 1 (modes[0] is unused)."""

    n: int
    levels: tuple[frozenset, ...]
    modes: tuple[str, ...]

    @property
    def members(self) -> frozenset:
        return self.levels[self.n]

    def __contains__(self, p) -> bool:
        return tuple(p) in self.members

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def from_levels(cls, levels: list[Iterable[Perm]]) -> ZigzagLanguage:
        lv = [frozenset(map(tuple, x)) for x in levels]
        n = len(lv) - 1
        if lv[0] != frozenset({()}):
            raise NotZigzagError("L_0 must be {ε}")
        modes = [""]
        for k in range(1, n + 1):
            prev, cur = lv[k - 1], lv[k]
            if any(len(p) != k for p in cur) or {remove_largest(p) for p in cur} != prev:
                raise NotZigzagError(f"level {k} does not project onto level {k - 1}")
            if all(insert_largest(p, 1) in cur and insert_largest(p, k) in cur for p in prev):
                modes.append(Z1)
            elif cur == {insert_largest(p, k) for p in prev}:
                modes.append(Z2)
            else:
                raise NotZigzagError(f"level {k} satisfies neither zigzag condition")
        return cls(n, tuple(lv), tuple(modes))

    @classmethod
    def from_members(cls, members: Iterable[Perm]) -> ZigzagLanguage:
        top = frozenset(map(tuple, members))
        if not top:
            raise NotZigzagError("empty language")
        n = len(next(iter(top)))
        levels = [top]
        for _ in range(n):
            levels.append(frozenset(remove_largest(p) for p in levels[-1]))
        return cls.from_levels(levels[::-1])


@dataclass(frozen=True)
class RepSet:
    congruence: Congruence
    language: ZigzagLanguage

    @property
    def reps(self) -> frozenset:
        return self.language.members

    def __len__(self) -> int:
        return len(self.reps)

    def class_map(self, part: ClassPartition) -> list[Perm]:
        """Representative of every class, indexed by class id; checks one per class."""
        out: list[Optional[Perm]] = [None] * part.count
        for p in self.reps:
            x = part.class_id(p)
            if out[x] is not None:
                raise VerificationError(f"class {x} has two representatives {out[x]} and {p}")
            out[x] = p
        if any(r is None for r in out):
            raise VerificationError("some class has no representative")
        return out  # type: ignore[return-value]


def build_representatives(c: Congruence, verify: bool = False) -> RepSet:
    """One permutation per class, built level by level along the rails.

    Segments containing c_1 or c_n take that permutation; any other segment
    takes its lexicographically smallest element (n inserted furthest right).
    """
    check_n(c.n, 9)
    chain = restriction_chain(c)
    levels: list[set[Perm]] = [{()}]
    for k in range(1, c.n + 1):
        ck = chain[k]
        prev = levels[-1]
        if ck.collapses:
            levels.append({insert_largest(p, k) for p in prev})
            continue
        cur = set()
        for p in prev:
            for seg in rail_segments(ck, p):
                if k in seg:
                    i = k
                elif 1 in seg:
                    i = 1
                else:
                    i = max(seg)
                cur.add(insert_largest(p, i))
        levels.append(cur)
    rs = RepSet(c, ZigzagLanguage.from_levels(levels))
    if verify:
        part = compute_classes(c)
        if len(rs) != part.count:
            raise VerificationError(f"{len(rs)} representatives for {part.count} classes")
        rs.class_map(part)
    return rs


def minimal_jump(lang: Collection[Perm], p: Perm, value: int, direction: str) -> Optional[Perm]:
    """Shortest jump of value in the given direction that lands in lang."""
    d = 1
    while True:
        q = jump(p, value, direction, d)
        if q is None:
            return None
        if q in lang:
            return q
        d += 1


def algorithm_j(lang: Collection[Perm], start: Perm, limit: Optional[int] = None) -> list[Perm]:
    """Greedy generation by minimal jumps of the largest possible value.

    Stops when no value has a minimal jump to an unvisited member, or when
    the largest such value has one in both directions.
    """
    start = tuple(start)
    if start not in lang:
        raise InvalidInputError(f"start {start} is not in the language")
    n = len(start)
    seq = [start]
    visited = {start}
    cur = start
    while limit is None or len(seq) < limit:
        nxt = None
        for v in range(n, 1, -1):
            cands = []
            for direction in (LEFT, RIGHT):
                q = minimal_jump(lang, cur, v, direction)
                if q is not None and q not in visited:
                    cands.append(q)
            if len(cands) == 2:
                return seq
            if cands:
                nxt = cands[0]
                break
        if nxt is None:
            return seq
        seq.append(nxt)
        visited.add(nxt)
        cur = nxt
    return seq


def jump_sequence(lang: ZigzagLanguage) -> list[Perm]:
    """The ordering J(L_n) by the insertion recursion, alternating right-to-left and left-to-right."""
    seq: list[Perm] = [()]
    for k in range(1, lang.n + 1):
        level = lang.levels[k]
        if lang.modes[k] == Z2:
            seq = [p + (k,) for p in seq]
            continue
        out = []
        for j, p in enumerate(seq):
            positions = range(k, 0, -1) if j % 2 == 0 else range(1, k + 1)
            for i in positions:
                q = insert_largest(p, i)
                if q in level:
                    out.append(q)
        seq = out
    return seq


@dataclass(frozen=True)
class HamiltonPath:
    representatives: tuple[Perm, ...]
    classes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


def adjacency_sets(part: ClassPartition) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(part.count)]
    edges, _ = quotient_edges(part)
    for x, y in edges.tolist():
        adj[x].add(y)
        adj[y].add(x)
    return adj


def hamilton_path(c: Congruence, part: Optional[ClassPartition] = None, reps: Optional[RepSet] = None) -> HamiltonPath:
    """Algorithm J on the representatives, from the identity; always self-verified."""
    check_n(c.n, 9)
    if part is None:
        part = compute_classes(c)
    if reps is None:
        reps = build_representatives(c)
    seq = algorithm_j(reps.reps, identity(c.n))
    classes = [part.class_id(p) for p in seq]
    if len(classes) != part.count or len(set(classes)) != part.count:
        raise VerificationError(f"path visits {len(set(classes))} of {part.count} classes")
    adj = adjacency_sets(part)
    for x, y in zip(classes, classes[1:]):
        if y not in adj[x]:
            raise VerificationError(f"consecutive classes {x} and {y} are not adjacent")
    return HamiltonPath(tuple(seq), tuple(classes))


def is_cyclic_order(c: Congruence) -> tuple[bool, bool]:
    """(every R_k for 2 <= k <= n-1 has even size, the path's ends are adjacent)."""
    check_n(c.n, 8)
    reps = build_representatives(c)
    parity = all(len(reps.language.levels[k]) % 2 == 0 for k in range(2, c.n))
    part = compute_classes(c)
    path = hamilton_path(c, part, reps)
    if len(path) < 3:
        return parity, False
    return parity, path.classes[-1] in adjacency_sets(part)[path.classes[0]]
