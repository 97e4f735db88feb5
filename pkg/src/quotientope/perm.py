"""Permutations of [n] and the weak order.

Permutations are plain tuples of ints in one-line notation, 1-based values.
The empty tuple is the empty permutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceededError, InvalidInputError

Perm = tuple[int, ...]

MAX_N = 12

LEFT = "left"
RIGHT = "right"


def check_n(n: int, limit: int = MAX_N, what: str = "n") -> None:
    if not isinstance(n, int) or n < 0:
        raise InvalidInputError(f"{what} must be a non-negative integer, got {n!r}")
    if n > limit:
        raise BudgetExceededError(f"{what}={n} exceeds the supported maximum {limit}")


def validate(p: Sequence[int]) -> Perm:
    """Return p as a tuple after checking that it is a permutation of [len(p)]."""
    t = tuple(int(x) for x in p)
    check_n(len(t))
    if sorted(t) != list(range(1, len(t) + 1)):
        raise InvalidInputError(f"not a permutation of 1..{len(t)}: {t}")
    return t


def parse_perm(text: str) -> Perm:
    """Parse "2 4 1 3" or, for n <= 9, the compact form "2413"."""
    s = text.strip()
    if not s or s in ("e", "ε"):
        return ()
    if any(ch.isspace() for ch in s) or "," in s:
        parts = s.replace(",", " ").split()
    else:
        parts = list(s)
    try:
        return validate(int(x) for x in parts)
    except ValueError as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"cannot parse permutation {text!r}") from None


def format_perm(p: Perm) -> str:
    return " ".join(map(str, p))


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def reverse(p: Perm) -> Perm:
    return p[::-1]


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of [n] in lexicographic order."""
    check_n(n)
    return itertools.permutations(range(1, n + 1))


def pair_index(b: int, a: int) -> int:
    """Bit position of the pair (b, a), b > a, in the order (2,1),(3,1),(3,2),(4,1),..."""
    return (b - 1) * (b - 2) // 2 + (a - 1)


@dataclass(frozen=True)
class InversionSet:
    n: int
    bits: int

    def __contains__(self, pair: tuple[int, int]) -> bool:
        b, a = pair
        return b > a and bool(self.bits >> pair_index(b, a) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __le__(self, other: InversionSet) -> bool:
        return self.bits & ~other.bits == 0

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (b, a) for b in range(2, self.n + 1) for a in range(1, b) if self.bits >> pair_index(b, a) & 1
        )


def _rows(p: Perm) -> list[int]:
    """rows[b] has bit a set iff a < b and a appears after b."""
    n = len(p)
    rows = [0] * (n + 1)
    seen = 0
    for v in reversed(p):
        rows[v] = seen & ((1 << v) - 1)
        seen |= 1 << v
    return rows


def _from_rows(rows: list[int]) -> Perm:
    n = len(rows) - 1
    # number of larger values before v, plus smaller values before v
    larger_before = [0] * (n + 1)
    for b in range(1, n + 1):
        r = rows[b]
        while r:
            low = r & -r
            larger_before[low.bit_length() - 1] += 1
            r ^= low
    out = [0] * n
    for v in range(1, n + 1):
        pos = larger_before[v] + (v - 1) - rows[v].bit_count()
        out[pos] = v
    return tuple(out)


def inversion_set(p: Perm) -> InversionSet:
    bits = 0
    for b, row in enumerate(_rows(p)):
        r = row
        while r:
            low = r & -r
            bits |= 1 << pair_index(b, low.bit_length() - 1)
            r ^= low
    return InversionSet(len(p), bits)


def _same_length(p: Perm, q: Perm) -> None:
    if len(p) != len(q):
        raise InvalidInputError(f"length mismatch: {len(p)} vs {len(q)}")


def weak_leq(p: Perm, q: Perm) -> bool:
    _same_length(p, q)
    rp, rq = _rows(p), _rows(q)
    return all(x & ~y == 0 for x, y in zip(rp, rq))


def join(p: Perm, q: Perm) -> Perm:
    """Least upper bound: transitive closure of the union of inversion sets."""
    _same_length(p, q)
    rows = [x | y for x, y in zip(_rows(p), _rows(q))]
    for c in range(2, len(rows)):
        r = rows[c]
        done = 0
        # fold in rows of every b below c that is (or becomes) inverted with c;
        # rows[b] for b < c is already closed
        while True:
            todo = r & ~done
            if not todo:
                break
            b = todo.bit_length() - 1
            done |= 1 << b
            r |= rows[b]
        rows[c] = r
    return _from_rows(rows)


def meet(p: Perm, q: Perm) -> Perm:
    return reverse(join(reverse(p), reverse(q)))


def inversions(p: Perm) -> int:
    return sum(row.bit_count() for row in _rows(p))


def asc(p: Perm) -> int:
    return sum(1 for i in range(len(p) - 1) if p[i] < p[i + 1])


def desc(p: Perm) -> int:
    return sum(1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def swap_adjacent(p: Perm, i: int) -> Perm:
    """Swap the entries at 0-based positions i and i+1."""
    return p[:i] + (p[i + 1], p[i]) + p[i + 2:]


def cover_neighbors(p: Perm) -> tuple[list[Perm], list[Perm]]:
    down, up = [], []
    for i in range(len(p) - 1):
        (up if p[i] < p[i + 1] else down).append(swap_adjacent(p, i))
    return down, up


def insert_largest(p: Perm, i: int) -> Perm:
    """c_i(p): insert n = len(p)+1 at 1-based position i."""
    n = len(p) + 1
    if not 1 <= i <= n:
        raise InvalidInputError(f"insertion position {i} out of range 1..{n}")
    return p[: i - 1] + (n,) + p[i - 1:]


def remove_largest(p: Perm) -> Perm:
    if not p:
        raise InvalidInputError("cannot remove from the empty permutation")
    n = len(p)
    return tuple(x for x in p if x != n)


def jump(p: Perm, value: int, direction: str, steps: int) -> Optional[Perm]:
    """Move value by steps positions over smaller entries; None if not a valid jump."""
    if steps < 1:
        raise InvalidInputError("steps must be >= 1")
    i = p.index(value)
    if direction == RIGHT:
        j = i + steps
        if j >= len(p) or any(x > value for x in p[i + 1: j + 1]):
            return None
        return p[:i] + p[i + 1: j + 1] + (value,) + p[j + 1:]
    if direction == LEFT:
        j = i - steps
        if j < 0 or any(x > value for x in p[j:i]):
            return None
        return p[:j] + (value,) + p[j:i] + p[i + 1:]
    raise InvalidInputError(f"direction must be 'left' or 'right', got {direction!r}")

