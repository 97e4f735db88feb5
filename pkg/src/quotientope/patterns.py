"""Classical and vincular patterns, and congruences defined by well-behaved pattern sets."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidInputError, NotWellBehavedError, VerificationError
from .fences import Congruence, Fence, fence_space
from .perm import Perm, all_perms, check_n, inversions


@dataclass(frozen=True, order=True)
class Pattern:
    """entries is a permutation of [k]; vincular = i glues entries i and i+1 (0-based)."""

    entries: tuple[int, ...]
    vincular: Optional[int] = None

    def __post_init__(self):
        k = len(self.entries)
        if sorted(self.entries) != list(range(1, k + 1)):
            raise InvalidInputError(f"pattern entries {self.entries} are not a permutation")
        if self.vincular is not None and not 0 <= self.vincular < k - 1:
            raise InvalidInputError("vincular pair out of range")

    @property
    def k(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        s = [str(x) for x in self.entries]
        if self.vincular is not None:
            i = self.vincular
            s[i] = "[" + s[i]
            s[i + 1] = s[i + 1] + "]"
        return "".join(s)


_PAT_RE = re.compile(r"^(\d*)(?:\[(\d)(\d)\](\d*))?$")


def parse_pattern(text: str) -> Pattern:
    """"231" is classical; "2[31]" glues 3 and 1.  Entries are single digits."""
    s = text.strip()
    m = _PAT_RE.match(s)
    if not s or not m:
        raise InvalidInputError(f"cannot parse pattern {text!r}")
    head, x, y, tail = m.groups()
    if x is None:
        return Pattern(tuple(int(c) for c in head))
    return Pattern(tuple(int(c) for c in head + x + y + tail), len(head))


def parse_patterns(text: str) -> list[Pattern]:
    return [parse_pattern(t) for t in text.split(",") if t.strip()]


def _matches(p: Perm, t: Pattern):
    k = t.k
    n = len(p)
    v = t.vincular
    order = sorted(range(k), key=lambda j: t.entries[j])  # positions of pattern values 1..k
    for pos in itertools.combinations(range(n), k):
        if v is not None and pos[v + 1] != pos[v] + 1:
            continue
        vals = [p[i] for i in pos]
        if all(vals[order[j]] < vals[order[j + 1]] for j in range(k - 1)):
            yield pos


def find_match(p: Perm, t: Pattern) -> Optional[tuple[int, ...]]:
    return next(_matches(p, t), None)


def contains(p: Perm, t: Pattern) -> bool:
    return find_match(p, t) is not None


def is_tame(t: Pattern) -> bool:
    k = t.k
    m = t.entries.index(k)
    if not 0 < m < k - 1:
        return False
    return t.vincular is None or m in (t.vincular, t.vincular + 1)


def avoid_set(n: int, patterns: Iterable[Pattern]) -> list[Perm]:
    pats = list(patterns)
    return [p for p in all_perms(n) if not any(contains(p, t) for t in pats)]


def split_pattern(t: Pattern) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(A, B) for a pattern A k1 B; error if it does not have that shape."""
    v = t.vincular
    if v is None or t.entries[v] != t.k or t.entries[v + 1] != 1:
        raise NotWellBehavedError(f"pattern {t} is not of the form A[k1]B")
    return t.entries[:v], t.entries[v + 2:]


def closure_of(patterns: Iterable[Pattern]) -> set[Pattern]:
    out = set()
    for t in patterns:
        a, b = split_pattern(t)
        for pa in itertools.permutations(a):
            for pb in itertools.permutations(b):
                out.add(Pattern(pa + (t.k, 1) + pb, len(a)))
    return out


@dataclass(frozen=True)
class WellBehavedSet:
    patterns: frozenset

    @classmethod
    def of(cls, patterns: Iterable[Pattern], complete: bool = False) -> WellBehavedSet:
        """Validate the set; with complete=True silently add the missing A/B permutations."""
        given = set(patterns)
        if not given:
            raise NotWellBehavedError("empty pattern set")
        full = closure_of(given)
        if full != given and not complete:
            missing = sorted(full - given)
            raise NotWellBehavedError(
                "pattern set is not closed under permuting A and B; missing " + ", ".join(map(str, missing)),
                completion=frozenset(full),
            )
        return cls(frozenset(full))

    def sides(self) -> set[tuple[str, ...]]:
        """Side labels ('A' or 'B') of the values 2..k-1, one tuple per pattern."""
        out = set()
        for t in self.patterns:
            a, _ = split_pattern(t)
            out.add(tuple("A" if v in a else "B" for v in range(2, t.k)))
        return out


def _embeds(word: tuple[str, ...], text: tuple[str, ...]) -> bool:
    it = iter(text)
    return all(ch in it for ch in word)


def pattern_fences(P: WellBehavedSet, n: int) -> list[Fence]:
    """Fences containing an edge whose glued pair is the (k,1) of some match.

    Such an edge swaps b (playing k) and a (playing 1); a match exists iff
    the A/B labels of the pattern values 2..k-1 embed, in value order, into
    the left/right labels of the values strictly between a and b.
    """
    words = P.sides()
    out = []
    for f in fence_space(n).fences:
        text = tuple("A" if f.left >> v & 1 else "B" for v in range(f.a + 1, f.b))
        if any(_embeds(w, text) for w in words):
            out.append(f)
    return out


def congruence_from_patterns(P: WellBehavedSet, n: int, verify: bool = True) -> Congruence:
    check_n(n)
    c = Congruence.from_fences(n, pattern_fences(P, n))
    if verify and n <= 8:
        from .classes import compute_classes

        part = compute_classes(c)
        avoiders = avoid_set(n, P.patterns)
        if len(avoiders) != part.count:
            raise VerificationError(f"{part.count} classes but {len(avoiders)} avoiders")
        if sorted(part.min(x) for x in range(part.count)) != avoiders:
            raise VerificationError("class minima differ from the avoiders")
    return c


def rewrite_step(p: Perm, patterns: Iterable[Pattern]) -> Optional[Perm]:
    """Swap the glued pair (k,1) of the first match found, or None if p avoids all patterns."""
    for t in sorted(patterns):
        pos = find_match(p, t)
        if pos is not None:
            i = pos[t.vincular]
            return p[:i] + (p[i + 1], p[i]) + p[i + 2:]
    return None


def rewrite_to_minimum(p: Perm, patterns: Iterable[Pattern]) -> Perm:
    pats = list(patterns)
    cur = tuple(p)
    while True:
        nxt = rewrite_step(cur, pats)
        if nxt is None:
            return cur
        if inversions(nxt) >= inversions(cur):
            raise VerificationError("rewriting did not decrease the inversion count")
        cur = nxt
