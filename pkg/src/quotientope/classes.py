"""Equivalence classes of S_n under a congruence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import InvalidInputError, RailCollapseError, VerificationError
from .fences import Congruence, Fence, fence_space, restriction
from .perm import Perm, all_perms, check_n, format_perm, remove_largest

CLASS_LIMIT = 9


class WeakOrder:
    """The cover graph of S_n with permutations indexed by lexicographic rank.

    Edge k joins lo[k] (ascent at position pos[k]) to hi[k]; fidx[k] is the
    global index of its fence, pair[k] the transposed values (a, b).
    """

    def __init__(self, n: int):
        self.n = n
        self.perms: list[Perm] = list(all_perms(n))
        self.index = {p: i for i, p in enumerate(self.perms)}
        sp = fence_space(n) if n >= 1 else None
        lo, hi, fidx, pa, pb = [], [], [], [], []
        index = self.index
        for i, p in enumerate(self.perms):
            for j in range(n - 1):
                a, b = p[j], p[j + 1]
                if a > b:
                    continue
                left = 0
                for v in p[:j]:
                    if a < v < b:
                        left |= 1 << v
                lo.append(i)
                hi.append(index[p[:j] + (b, a) + p[j + 2:]])
                fidx.append(sp.offset[(a, b)] + (left >> (a + 1)))
                pa.append(a)
                pb.append(b)
        self.lo = np.array(lo, dtype=np.int64)
        self.hi = np.array(hi, dtype=np.int64)
        self.fidx = np.array(fidx, dtype=np.int64)
        self.pa = np.array(pa, dtype=np.int64)
        self.pb = np.array(pb, dtype=np.int64)
        self.size = len(self.perms)

    def bar_flags(self, c: Congruence) -> np.ndarray:
        member = mask_to_array(c.mask, c.space.size)
        return member[self.fidx]


@lru_cache(maxsize=None)
def weak_order(n: int) -> WeakOrder:
    check_n(n, CLASS_LIMIT)
    return WeakOrder(n)


def mask_to_array(mask: int, size: int) -> np.ndarray:
    if size == 0:
        return np.zeros(0, dtype=bool)
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                rx, ry = ry, rx
            self.parent[rx] = ry


@dataclass(frozen=True)
class EquivalenceClass:
    id: int
    min: Perm
    max: Perm
    size: int
    representative: Perm
    members: Optional[tuple[Perm, ...]] = None


@dataclass
class ClassPartition:
    n: int
    congruence: Congruence
    class_of: np.ndarray  # lexicographic rank -> class id
    min_index: np.ndarray  # class id -> rank of its minimum
    max_index: np.ndarray
    sizes: np.ndarray
    bar: np.ndarray = field(repr=False)  # bar flag per edge of weak_order(n)
    representatives: Optional[list[Perm]] = None

    @property
    def order(self) -> WeakOrder:
        return weak_order(self.n)

    @property
    def count(self) -> int:
        return len(self.min_index)

    def __len__(self) -> int:
        return self.count

    def class_id(self, p: Perm) -> int:
        return int(self.class_of[self.order.index[tuple(p)]])

    def min(self, x: int) -> Perm:
        return self.order.perms[self.min_index[x]]

    def max(self, x: int) -> Perm:
        return self.order.perms[self.max_index[x]]

    def members(self, x: int) -> list[Perm]:
        perms = self.order.perms
        return [perms[i] for i in np.flatnonzero(self.class_of == x)]

    def get(self, x: int, with_members: bool = False) -> EquivalenceClass:
        rep = self.representatives[x] if self.representatives else self.min(x)
        mem = tuple(self.members(x)) if with_members else None
        return EquivalenceClass(x, self.min(x), self.max(x), int(self.sizes[x]), rep, mem)

    @property
    def classes(self) -> list[EquivalenceClass]:
        return [self.get(x) for x in range(self.count)]

    def to_json(self) -> list[dict]:
        return [
            {"id": e.id, "min": format_perm(e.min), "max": format_perm(e.max), "size": e.size,
             "representative": format_perm(e.representative)}
            for e in self.classes
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def compute_classes(c: Congruence) -> ClassPartition:
    """Contract all bars; ids follow the lexicographic order of class minima."""
    n = c.n
    check_n(n, CLASS_LIMIT)
    wo = weak_order(n)
    bar = wo.bar_flags(c) if wo.lo.size else np.zeros(0, dtype=bool)
    uf = UnionFind(wo.size)
    for x, y in zip(wo.lo[bar].tolist(), wo.hi[bar].tolist()):
        uf.union(x, y)
    roots = np.fromiter((uf.find(i) for i in range(wo.size)), dtype=np.int64, count=wo.size)
    has_down = np.zeros(wo.size, dtype=bool)
    has_up = np.zeros(wo.size, dtype=bool)
    has_down[wo.hi[bar]] = True
    has_up[wo.lo[bar]] = True
    mins = np.flatnonzero(~has_down)  # ascending rank = lexicographic order
    root_ids = roots[mins]
    if len(np.unique(root_ids)) != len(mins) or len(mins) != len(np.unique(roots)):
        raise VerificationError("a class has more than one minimal element")
    class_of_root = np.full(wo.size, -1, dtype=np.int64)
    class_of_root[root_ids] = np.arange(len(mins))
    class_of = class_of_root[roots]
    maxs = np.flatnonzero(~has_up)
    if len(maxs) != len(mins):
        raise VerificationError("a class has more than one maximal element")
    max_index = np.empty(len(mins), dtype=np.int64)
    max_index[class_of[maxs]] = maxs
    sizes = np.bincount(class_of, minlength=len(mins))
    return ClassPartition(n, c, class_of, mins, max_index, sizes, bar)


def class_projection(part: ClassPartition, x: int) -> set[Perm]:
    return {remove_largest(m) for m in part.members(x)}


def rail_fence(q: Perm, i: int) -> Fence:
    """Fence of the rail edge between c_{i+1}(q) and c_i(q), 1 <= i <= len(q)."""
    n = len(q) + 1
    a = q[i - 1]
    left = 0
    for v in q[: i - 1]:
        if v > a:
            left |= 1 << v
    return Fence(a, n, left)


def rail_segments(c: Congruence, q: Perm) -> list[tuple[int, ...]]:
    """Split insertion positions n, n-1, ..., 1 into maximal runs joined by bars."""
    n = c.n
    if len(q) != n - 1:
        raise InvalidInputError(f"expected a permutation of length {n - 1}")
    if c.collapses:
        raise RailCollapseError(f"rail collapses: f({n - 1},{n},{{}}) is in the congruence")
    sp = c.space
    mask = c.mask
    segs: list[tuple[int, ...]] = []
    cur = [n]
    for i in range(n - 1, 0, -1):
        f = rail_fence(q, i)
        if mask >> sp.index(f) & 1:
            cur.append(i)
        else:
            segs.append(tuple(cur))
            cur = [i]
    segs.append(tuple(cur))
    return segs


def restriction_chain(c: Congruence) -> list[Congruence]:
    """[c_0, c_1, ..., c_n] where c_k is the restriction of c to S_k."""
    chain = [c]
    while chain[-1].n > 0:
        chain.append(restriction(chain[-1]))
    return chain[::-1]


def quotient_edges(part: ClassPartition) -> tuple[np.ndarray, np.ndarray]:
    """Distinct quotient edges as sorted (x, y) rows, x < y, with the smallest (a, b) label of each."""
    wo = part.order
    keep = ~part.bar
    x = part.class_of[wo.lo[keep]]
    y = part.class_of[wo.hi[keep]]
    u, v = np.minimum(x, y), np.maximum(x, y)
    if u.size == 0:
        return np.zeros((0, 2), dtype=np.int64), np.zeros((0, 2), dtype=np.int64)
    n1 = part.n + 1
    label = wo.pa[keep] * n1 + wo.pb[keep]
    key = (u * part.count + v) * (n1 * n1) + label
    key = np.unique(key)  # sorted, so the first row of each pair carries the smallest label
    pair = key // (n1 * n1)
    first = np.ones(len(pair), dtype=bool)
    first[1:] = pair[1:] != pair[:-1]
    pair, label = pair[first], key[first] % (n1 * n1)
    edges = np.stack([pair // part.count, pair % part.count], axis=1)
    labels = np.stack([label // n1, label % n1], axis=1)
    return edges, labels


def class_count(c: Congruence) -> int:
    """Number of classes, counted as permutations with no bar below them."""
    wo = weak_order(c.n)
    if wo.lo.size == 0:
        return wo.size
    bar = wo.bar_flags(c)
    return wo.size - int(np.unique(wo.hi[bar]).size)
