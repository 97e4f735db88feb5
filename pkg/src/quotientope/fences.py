"""Fences, the forcing order, and congruences as fence downsets.

A fence f(a,b,L) is stored with L as a bitmask over values (bit v set iff
v is in L).  Every FenceSpace numbers its fences so that longer intervals
come first; this is a linear extension of the forcing order with minimal
elements first, which the closure and enumeration code relies on.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from .errors import InvalidInputError
from .perm import Perm, check_n


class Fence(NamedTuple):
    a: int
    b: int
    left: int = 0

    @classmethod
    def make(cls, a: int, b: int, left: Iterable[int] = ()) -> Fence:
        mask = 0
        for v in left:
            mask |= 1 << v
        f = cls(a, b, mask)
        f.check()
        return f

    def check(self, n: Optional[int] = None) -> None:
        a, b, left = self
        if not 1 <= a < b or (n is not None and b > n):
            raise InvalidInputError(f"invalid fence endpoints {a},{b}" + (f" for n={n}" if n else ""))
        if left & ~interior_mask(a, b):
            raise InvalidInputError(f"left set of {self} must lie strictly between {a} and {b}")

    @property
    def left_set(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.a + 1, self.b) if self.left >> v & 1)

    @property
    def right_set(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.a + 1, self.b) if not self.left >> v & 1)

    @property
    def essential(self) -> bool:
        return self.b - self.a >= 2

    @property
    def simple(self) -> bool:
        return self.essential and self.left in (0, interior_mask(self.a, self.b))

    def __str__(self) -> str:
        return f"{self.a}-{self.b}:{{{','.join(map(str, self.left_set))}}}"

    def __repr__(self) -> str:
        return f"f({self.a},{self.b},{{{','.join(map(str, self.left_set))}}})"


def interior_mask(a: int, b: int) -> int:
    """Bitmask of the open interval ]a,b[."""
    return ((1 << b) - 1) & ~((1 << (a + 1)) - 1)


def forcing_less(f: Fence, g: Fence) -> bool:
    a, b, left = f
    c, d, m = g
    return a <= c < d <= b and (a, b) != (c, d) and left & interior_mask(c, d) == m


class FenceSpace:
    """All fences for a fixed n, with precomputed forcing relations as bitmasks."""

    def __init__(self, n: int):
        check_n(n)
        self.n = n
        self.pairs = sorted(((a, b) for b in range(2, n + 1) for a in range(1, b)), key=lambda ab: (ab[0] - ab[1], ab[0]))
        self.offset: dict[tuple[int, int], int] = {}
        self.fences: list[Fence] = []
        for a, b in self.pairs:
            self.offset[(a, b)] = len(self.fences)
            self.fences.extend(Fence(a, b, m << (a + 1)) for m in range(1 << (b - a - 1)))
        self.size = len(self.fences)
        self.lower_covers: list[list[int]] = [[] for _ in range(self.size)]
        self.upper_covers: list[list[int]] = [[] for _ in range(self.size)]
        for i, (c, d, m) in enumerate(self.fences):
            cands = []
            if c > 1:
                cands += [(c - 1, d, m), (c - 1, d, m | 1 << c)]
            if d < n:
                cands += [(c, d + 1, m), (c, d + 1, m | 1 << d)]
            for f in cands:
                j = self.index(Fence(*f))
                self.lower_covers[i].append(j)
                self.upper_covers[j].append(i)
        # strict down/up sets
        self.down = [0] * self.size
        for i in range(self.size):
            acc = 0
            for j in self.lower_covers[i]:
                acc |= self.down[j] | 1 << j
            self.down[i] = acc
        self.up = [0] * self.size
        for i in reversed(range(self.size)):
            acc = 0
            for j in self.upper_covers[i]:
                acc |= self.up[j] | 1 << j
            self.up[i] = acc
        self.essential_mask = 0
        self.all_mask = (1 << self.size) - 1
        for i, f in enumerate(self.fences):
            if f.essential:
                self.essential_mask |= 1 << i

    def index(self, f: Fence) -> int:
        a, b, left = f
        return self.offset[(a, b)] + (left >> (a + 1))

    def closure(self, mask: int) -> int:
        out = mask
        m = mask
        while m:
            low = m & -m
            out |= self.down[low.bit_length() - 1]
            m ^= low
        return out

    def is_downset(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def fences_of(self, mask: int) -> list[Fence]:
        out = []
        m = mask
        while m:
            low = m & -m
            out.append(self.fences[low.bit_length() - 1])
            m ^= low
        return out


@lru_cache(maxsize=None)
def fence_space(n: int) -> FenceSpace:
    return FenceSpace(n)


def fence_count(n: int, k: int) -> int:
    """Number of fences f(a,b,L) with b - a = k."""
    if not 1 <= k <= n - 1:
        raise InvalidInputError(f"k must lie in 1..{n - 1}")
    return (n - k) * 2 ** (k - 1)


@dataclass(frozen=True)
class Congruence:
    """A lattice congruence, stored as the full fence downset (bitmask over FenceSpace indices)."""

    n: int
    mask: int = 0

    @property
    def space(self) -> FenceSpace:
        return fence_space(self.n)

    @property
    def fences(self) -> list[Fence]:
        return sorted(self.space.fences_of(self.mask))

    def __contains__(self, f: Fence) -> bool:
        return bool(self.mask >> self.space.index(f) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __le__(self, other: Congruence) -> bool:
        return self.n == other.n and self.mask & ~other.mask == 0

    @property
    def is_essential(self) -> bool:
        return self.mask & ~self.space.essential_mask == 0

    @property
    def collapses(self) -> bool:
        """True iff f(n-1,n,{}) is present, i.e. all rails consist of bars."""
        return self.n >= 2 and Fence(self.n - 1, self.n, 0) in self

    @classmethod
    def from_fences(cls, n: int, fences: Iterable[Fence], generators: bool = True) -> Congruence:
        sp = fence_space(n)
        mask = 0
        for f in fences:
            f = Fence(*f)
            f.check(n)
            mask |= 1 << sp.index(f)
        closed = sp.closure(mask)
        if not generators and closed != mask:
            missing = sp.fences_of(closed & ~mask)
            raise InvalidInputError(f"fence set is not a downset; missing {', '.join(map(str, missing))}")
        return cls(n, closed)

    @classmethod
    def full(cls, n: int) -> Congruence:
        return cls(n, fence_space(n).all_mask)

    def __str__(self) -> str:
        return format_fences(reduced_diagram(self).arcs)


def downset_closure(n: int, generators: Iterable[Fence]) -> Congruence:
    return Congruence.from_fences(n, generators)


@dataclass(frozen=True)
class ArcDiagram:
    n: int
    arcs: tuple[Fence, ...]

    @property
    def simple(self) -> bool:
        return all(f.simple for f in self.arcs)


def reduced_diagram(c: Congruence) -> ArcDiagram:
    """The maximal fences of the downset."""
    sp = c.space
    arcs = [f for f in sp.fences_of(c.mask) if sp.up[sp.index(f)] & c.mask == 0]
    return ArcDiagram(c.n, tuple(sorted(arcs)))


def from_diagram(d: ArcDiagram) -> Congruence:
    for f, g in itertools.permutations(d.arcs, 2):
        if forcing_less(f, g):
            raise InvalidInputError(f"arcs {f!r} and {g!r} are comparable; a reduced diagram needs an antichain")
    return Congruence.from_fences(d.n, d.arcs)


def restriction(c: Congruence) -> Congruence:
    """Drop every fence with b = n, giving a congruence on S_{n-1}."""
    if c.n < 1:
        raise InvalidInputError("restriction needs n >= 1")
    sp = fence_space(c.n - 1)
    mask = 0
    for f in c.space.fences_of(c.mask):
        if f.b < c.n:
            mask |= 1 << sp.index(f)
    return Congruence(c.n - 1, mask)


def edge_fence(p: Perm, q: Perm) -> Fence:
    """The fence containing the cover edge between p and q."""
    if len(p) != len(q):
        raise InvalidInputError("length mismatch")
    diff = [i for i in range(len(p)) if p[i] != q[i]]
    if len(diff) != 2 or diff[1] != diff[0] + 1 or p[diff[0]] != q[diff[1]] or p[diff[1]] != q[diff[0]]:
        raise InvalidInputError(f"{p} and {q} do not differ by an adjacent transposition")
    i = diff[0]
    a, b = sorted((p[i], p[i + 1]))
    left = 0
    for v in p[:i]:
        if a < v < b:
            left |= 1 << v
    return Fence(a, b, left)


def position_fence(p: Perm, i: int) -> Fence:
    """Fence of the edge that swaps 0-based positions i and i+1 of p."""
    a, b = (p[i], p[i + 1]) if p[i] < p[i + 1] else (p[i + 1], p[i])
    left = 0
    for v in p[:i]:
        if a < v < b:
            left |= 1 << v
    return Fence(a, b, left)


def is_bar(c: Congruence, p: Perm, q: Perm) -> bool:
    return edge_fence(p, q) in c


def fence_edges(f: Fence, n: int) -> list[tuple[Perm, Perm]]:
    """All cover edges (lower, upper) of S_n that belong to f."""
    check_n(n, 10)
    f.check(n)
    a, b, _ = f
    lefts, rights = set(f.left_set), set(f.right_set)
    tokens = [v for v in range(1, n + 1) if v != b]  # a stands for the block "a b"
    out = []
    for arr in itertools.permutations(tokens):
        k = arr.index(a)
        if lefts.issubset(arr[:k]) and rights.issubset(arr[k + 1:]):
            lo = arr[:k] + (a, b) + arr[k + 1:]
            out.append((lo, arr[:k] + (b, a) + arr[k + 1:]))
    return out


def enumerate_essential_congruences(
    n: int, visitor: Optional[Callable[[Congruence], None]] = None, essential: bool = True
) -> int:
    """Visit every essential congruence of S_n exactly once; return how many there are.

    With essential=False all congruences are visited.

    Include/exclude search over fences in index order: the lowest undecided
    fence has all its lower fences already included, so both branches stay
    downsets.
    """
    check_n(n, 6)
    if n <= 1:
        if visitor:
            visitor(Congruence(n, 0))
        return 1
    sp = fence_space(n)
    up = sp.up
    count = 0
    stack = [(0, sp.essential_mask if essential else sp.all_mask)]
    while stack:
        mask, allowed = stack.pop()
        if not allowed:
            count += 1
            if visitor is not None:
                visitor(Congruence(n, mask))
            continue
        low = allowed & -allowed
        x = low.bit_length() - 1
        rest = allowed ^ low
        stack.append((mask, rest & ~up[x]))
        stack.append((mask | low, rest))
    return count


def iter_essential_congruences(n: int) -> Iterator[Congruence]:
    out: list[Congruence] = []
    enumerate_essential_congruences(n, out.append)
    return iter(out)


def count_downsets(n: int, essential: bool = True) -> int:
    """Number of (essential) congruences, by memoised counting on the undecided set."""
    check_n(n, 7)
    if n <= 1:
        return 1
    sp = fence_space(n)
    up = sp.up
    memo: dict[int, int] = {0: 1}

    def go(allowed: int) -> int:
        hit = memo.get(allowed)
        if hit is not None:
            return hit
        low = allowed & -allowed
        x = low.bit_length() - 1
        rest = allowed ^ low
        r = go(rest) + go(rest & ~up[x])
        memo[allowed] = r
        return r

    return go(sp.essential_mask if essential else sp.all_mask)


_FENCE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*(?::\s*\{([^}]*)\}\s*)?$")


def parse_fences(text: str) -> list[Fence]:
    """Parse the terse form "1-3:{};2-4:{3}"."""
    out = []
    for tok in text.split(";"):
        if not tok.strip():
            continue
        m = _FENCE_RE.match(tok)
        if not m:
            raise InvalidInputError(f"cannot parse fence {tok!r}; expected a-b:{{x,y}}")
        a, b = int(m.group(1)), int(m.group(2))
        body = (m.group(3) or "").strip()
        try:
            left = [int(x) for x in body.split(",") if x.strip()] if body else []
        except ValueError:
            raise InvalidInputError(f"cannot parse left set in {tok!r}") from None
        out.append(Fence.make(a, b, left))
    return out


def format_fences(fences: Iterable[Fence]) -> str:
    return ";".join(str(f) for f in fences)


def congruence_to_json(c: Congruence, generators: bool = True) -> dict:
    fences = reduced_diagram(c).arcs if generators else c.fences
    return {
        "n": c.n,
        "fences": [{"a": f.a, "b": f.b, "left": list(f.left_set)} for f in fences],
        "generators": generators,
    }


def congruence_from_json(data: dict | str) -> Congruence:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
    try:
        n = int(data["n"])
        check_n(n)
        fences = [Fence.make(int(f["a"]), int(f["b"]), [int(x) for x in f.get("left", [])]) for f in data["fences"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed congruence JSON: {exc}") from None
    return Congruence.from_fences(n, fences, generators=bool(data.get("generators", True)))


def tamari(n: int) -> Congruence:
    """All fences with non-empty L, the congruence whose quotient is the Tamari lattice."""
    sp = fence_space(n)
    return Congruence.from_fences(n, (f for f in sp.fences if f.left))


def hypercube(n: int) -> Congruence:
    """All essential fences; the quotient graph is the (n-1)-cube."""
    return Congruence(n, fence_space(n).essential_mask)
