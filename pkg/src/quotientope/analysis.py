"""Quotient graphs of congruences: degrees, regularity, vertex-transitivity."""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import graphs
from .classes import ClassPartition, compute_classes, quotient_edges
from .errors import InvalidInputError, NonEssentialError, VerificationError
from .fences import ArcDiagram, Congruence, Fence, position_fence, reduced_diagram
from .perm import Perm, asc, check_n, desc, format_perm, weak_leq


@dataclass
class QuotientGraph:
    n: int
    count: int
    edges: np.ndarray  # rows (x, y), x < y
    labels: np.ndarray  # rows (a, b): transposed values of some edge between the classes
    adj: list[list[int]]

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_json(self, part: Optional[ClassPartition] = None) -> dict:
        nodes = []
        for x in range(self.count):
            node = {"id": x, "degree": len(self.adj[x])}
            if part is not None:
                node["representative"] = format_perm(_rep(part, x))
            nodes.append(node)
        return {
            "n": self.n,
            "nodes": nodes,
            "edges": [{"source": int(x), "target": int(y), "label": f"{a},{b}"}
                      for (x, y), (a, b) in zip(self.edges.tolist(), self.labels.tolist())],
        }

    def to_dot(self, part: Optional[ClassPartition] = None) -> str:
        lines = ["graph quotient {"]
        for x in range(self.count):
            label = format_perm(_rep(part, x)) if part is not None else str(x)
            lines.append(f'  {x} [label="{label}"];')
        for (x, y), (a, b) in zip(self.edges.tolist(), self.labels.tolist()):
            lines.append(f'  {x} -- {y} [label="{a},{b}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _rep(part: ClassPartition, x: int) -> Perm:
    return part.representatives[x] if part.representatives else part.min(x)


def build_quotient_graph(part: ClassPartition) -> QuotientGraph:
    edges, labels = quotient_edges(part)
    adj: list[list[int]] = [[] for _ in range(part.count)]
    for x, y in edges.tolist():
        adj[x].append(y)
        adj[y].append(x)
    return QuotientGraph(part.n, part.count, edges, labels, adj)


def class_degree(part: ClassPartition, x: int) -> int:
    return desc(part.min(x)) + asc(part.max(x))


def min_degree(g: QuotientGraph) -> int:
    return min(g.degrees)


def max_degree(g: QuotientGraph) -> int:
    return max(g.degrees)


def ceil_2sqrt(n: int) -> int:
    """ceil(2*sqrt(n)) in exact integer arithmetic."""
    return math.isqrt(4 * n - 1) + 1 if n > 0 else 0


def max_degree_bound(n: int) -> int:
    return 2 * n - ceil_2sqrt(n)


@dataclass(frozen=True)
class MaxDegreeWitness:
    congruence: Congruence
    min: Perm
    max: Perm
    degree: int


def _table(n: int) -> tuple[int, list[list[int]]]:
    s = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
    rows = [list(range(i, min(i + s, n + 1))) for i in range(1, n + 1, s)]  # bottom row first
    return s, rows


def max_degree_witness(n: int) -> MaxDegreeWitness:
    """A congruence with a class of the largest possible degree 2n - ceil(2 sqrt n).

    The numbers 1..n fill a table with ceil(sqrt n) columns from the bottom
    row up.  The class minimum reads the columns top-down, the maximum reads
    the rows top-down, and each diagonal step a -> b (one row up, one column
    right) contributes the fence f(a, b, {entries left of b in its row}).
    """
    check_n(n)
    if n < 2:
        raise InvalidInputError("n must be at least 2")
    s, rows = _table(n)
    pi = tuple(rows[r][j] for j in range(s) for r in reversed(range(len(rows))) if j < len(rows[r]))
    rho = tuple(v for row in reversed(rows) for v in row)
    gens = []
    for r in range(len(rows) - 1):
        for j in range(s - 1):
            if j + 1 < len(rows[r + 1]):
                b = rows[r + 1][j + 1]
                gens.append(Fence.make(rows[r][j], b, rows[r + 1][: j + 1]))
    c = Congruence.from_fences(n, gens)
    _verify_class_interval(c, pi, rho)
    deg = desc(pi) + asc(rho)
    if deg != max_degree_bound(n):
        raise VerificationError(f"witness degree {deg} differs from {max_degree_bound(n)}")
    return MaxDegreeWitness(c, pi, rho, deg)


def _verify_class_interval(c: Congruence, lo: Perm, hi: Perm) -> None:
    """Check lo = min and hi = max of one class without materialising the class."""
    if not weak_leq(lo, hi):
        raise VerificationError("witness minimum is not below its maximum")
    cur = lo
    while cur != hi:
        for i in range(len(cur) - 1):
            if cur[i] < cur[i + 1]:
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                if weak_leq(nxt, hi):
                    break
        else:
            raise VerificationError("no upward step towards the maximum")
        if position_fence(cur, i) not in c:
            raise VerificationError(f"edge {cur} -> {nxt} is not a bar")
        cur = nxt
    for i in range(len(lo) - 1):
        if lo[i] > lo[i + 1] and position_fence(lo, i) in c:
            raise VerificationError("witness minimum has a bar below it")
    for i in range(len(hi) - 1):
        if hi[i] < hi[i + 1] and position_fence(hi, i) in c:
            raise VerificationError("witness maximum has a bar above it")


def lis_lds(p: Perm) -> tuple[int, int]:
    """Lengths of the longest increasing and longest decreasing subsequences."""
    def lis(seq) -> int:
        tails: list[int] = []
        for x in seq:
            k = bisect.bisect_left(tails, x)
            if k == len(tails):
                tails.append(x)
            else:
                tails[k] = x
        return len(tails)
    return lis(p), lis([-x for x in p])


def _require_essential(c: Congruence) -> None:
    if not c.is_essential:
        raise NonEssentialError("this test needs an essential congruence (no fence f(a,a+1,{}))")


def is_regular(c: Congruence) -> bool:
    """Regular iff every arc of the reduced diagram is simple."""
    _require_essential(c)
    return reduced_diagram(c).simple


def is_regular_by_degrees(c: Congruence) -> bool:
    _require_essential(c)
    g = build_quotient_graph(compute_classes(c))
    return len(set(g.degrees)) <= 1


def loops(d: ArcDiagram) -> list[int]:
    """Centres s of loops: both short arcs f(s-1,s+1,{}) and f(s-1,s+1,{s}) present."""
    arcs = set(d.arcs)
    return [s for s in range(2, d.n) if Fence(s - 1, s + 1, 0) in arcs and Fence(s - 1, s + 1, 1 << s) in arcs]


def loop_factors(d: ArcDiagram) -> list[tuple[int, int, tuple[Fence, ...]]]:
    """Split the diagram at its loops into (first point, last point, arcs) factors."""
    cuts = loops(d)
    loop_arcs = {Fence(s - 1, s + 1, m) for s in cuts for m in (0, 1 << s)}
    bounds = [1] + cuts + [d.n]
    out = []
    for lo, hi in zip(bounds, bounds[1:]):
        arcs = tuple(f for f in d.arcs if f not in loop_arcs and lo <= f.a and f.b <= hi)
        out.append((lo, hi, arcs))
    return out


def is_vertex_transitive(c: Congruence) -> bool:
    """Vertex-transitive iff every loop factor is empty or a 3-point diagram with one short arc."""
    _require_essential(c)
    for lo, hi, arcs in loop_factors(reduced_diagram(c)):
        if not arcs:
            continue
        if hi - lo == 2 and len(arcs) == 1 and (arcs[0].a, arcs[0].b) == (lo, hi):
            continue
        return False
    return True


def is_vertex_transitive_by_automorphisms(c: Congruence) -> bool:
    _require_essential(c)
    return graphs.is_vertex_transitive(build_quotient_graph(compute_classes(c)).adj)


def full_arc_set(a: int, b: int) -> set[Fence]:
    inner = list(range(a + 1, b))
    out = set()
    for m in range(1 << len(inner)):
        out.add(Fence(a, b, sum(1 << v for k, v in enumerate(inner) if m >> k & 1)))
    return out


def bipartite_conjecture(c: Congruence) -> bool:
    """Does the reduced diagram consist of full arc sets A(a,b) over pairwise non-nesting intervals?"""
    arcs = set(reduced_diagram(c).arcs)
    spans = sorted({(f.a, f.b) for f in arcs})
    if any(b - a < 2 for a, b in spans):
        return False
    for a, b in spans:
        if not full_arc_set(a, b) <= arcs:
            return False
    for (a, b) in spans:
        for (x, y) in spans:
            if (a, b) != (x, y) and a <= x and y <= b:
                return False
    return True


def bipartite_probe(c: Congruence) -> tuple[bool, bool]:
    """(quotient graph is bipartite, conjectured criterion holds); reported, never asserted."""
    g = build_quotient_graph(compute_classes(c))
    return graphs.is_bipartite(g.adj), bipartite_conjecture(c)


def degree_histogram(g: QuotientGraph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for d in g.degrees:
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


def graph_of(c: Congruence) -> QuotientGraph:
    return build_quotient_graph(compute_classes(c))


def dumps_graph(g: QuotientGraph, part: Optional[ClassPartition] = None) -> str:
    return json.dumps(g.to_json(part), indent=2)
