"""Small-graph utilities: canonical forms, vertex-transitivity, Hamilton cycles.

Graphs are adjacency lists over vertices 0..N-1.  The canonical labelling is
a plain individualisation/refinement search: colours are refined to a stable
equitable partition, the first smallest non-singleton cell is split by
individualising each of its vertices in turn, and the lexicographically
smallest relabelled edge list over all leaves is the canonical form.
Automorphisms found along the way prune sibling vertices in the same orbit.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Optional, Sequence

Adj = Sequence[Sequence[int]]


def refine(adj: Adj, colors: Sequence[int]) -> list[int]:
    """Colour refinement; new colours are ranks of (colour, sorted neighbour colours)."""
    col = list(colors)
    ncol = len(set(col))
    while True:
        sig = [(col[v], tuple(sorted(col[u] for u in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == ncol:
            return new
        col, ncol = new, len(rank)


def _ranked(values: Sequence) -> list[int]:
    rank = {s: i for i, s in enumerate(sorted(set(values)))}
    return [rank[s] for s in values]


def _target_cell(col: list[int]) -> Optional[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(col):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _individualize(col: list[int], v: int) -> list[int]:
    new = [2 * c + 1 for c in col]
    new[v] = 2 * col[v]
    return new


def _certificate(edges: list[tuple[int, int]], label: list[int]) -> tuple:
    return tuple(sorted((label[u], label[v]) if label[u] < label[v] else (label[v], label[u]) for u, v in edges))


def _edges(adj: Adj) -> list[tuple[int, int]]:
    return [(u, v) for u in range(len(adj)) for v in adj[u] if u < v]


def _orbit_rep(orbits: list[int], v: int) -> int:
    while orbits[v] != v:
        orbits[v] = orbits[orbits[v]]
        v = orbits[v]
    return v


class _Search:
    def __init__(self, adj: Adj):
        self.adj = adj
        self.edges = _edges(adj)
        self.best: Optional[tuple] = None
        self.best_label: Optional[list[int]] = None
        self.autos: list[list[int]] = []

    def _record_auto(self, label: list[int]) -> None:
        inv = [0] * len(label)
        for v, c in enumerate(self.best_label):
            inv[c] = v
        self.autos.append([inv[label[v]] for v in range(len(label))])

    def _orbits_fixing(self, prefix: list[int]) -> list[int]:
        n = len(self.adj)
        orbits = list(range(n))
        for g in self.autos:
            if all(g[v] == v for v in prefix):
                for v in range(n):
                    a, b = _orbit_rep(orbits, v), _orbit_rep(orbits, g[v])
                    if a != b:
                        orbits[max(a, b)] = min(a, b)
        return orbits

    def run(self, col: list[int], prefix: list[int]) -> None:
        col = refine(self.adj, col)
        cell = _target_cell(col)
        if cell is None:
            cert = _certificate(self.edges, col)
            if self.best is None or cert < self.best:
                self.best, self.best_label = cert, col
            elif cert == self.best:
                self._record_auto(col)
            return
        done: list[int] = []
        for v in cell:
            if done:
                orbits = self._orbits_fixing(prefix)
                rv = _orbit_rep(orbits, v)
                if any(_orbit_rep(orbits, w) == rv for w in done):
                    continue
            self.run(_individualize(col, v), prefix + [v])
            done.append(v)


def initial_colors(adj: Adj) -> list[int]:
    """Isomorphism-invariant seed colouring: degree and number of 4-cycles through each vertex."""
    n = len(adj)
    nbr = [set(a) for a in adj]
    sq = []
    for v in range(n):
        cnt = 0
        two: dict[int, int] = {}
        for u in adj[v]:
            for w in adj[u]:
                if w != v:
                    two[w] = two.get(w, 0) + 1
        for k in two.values():
            cnt += k * (k - 1) // 2
        sq.append(cnt)
    return _ranked([(len(nbr[v]), sq[v]) for v in range(n)])


def canonical_form(adj: Adj, colors: Optional[Sequence[int]] = None) -> tuple:
    """(vertex count, sorted canonical edge list); equal iff the graphs are isomorphic."""
    n = len(adj)
    if n == 0:
        return (0, ())
    s = _Search(adj)
    s.run(list(colors) if colors is not None else initial_colors(adj), [])
    return (n, s.best)


def automorphisms_found(adj: Adj) -> list[list[int]]:
    s = _Search(adj)
    s.run(initial_colors(adj), [])
    return s.autos


def is_vertex_transitive(adj: Adj) -> bool:
    """Decide whether Aut(G) acts transitively on the vertices.

    For each vertex v outside the known orbit of vertex 0, look in the
    subtree that individualises v first for a leaf with the certificate of
    a fixed leaf below vertex 0; such a leaf exists iff some automorphism
    maps v to 0.
    """
    n = len(adj)
    if n <= 1:
        return True
    col = refine(adj, [0] * n)
    if len(set(col)) != 1:
        return False
    edges = _edges(adj)

    # fixed leaf below vertex 0, with the cell-size trace along its path
    trace: list[tuple] = []
    c = _individualize(col, 0)
    while True:
        c = refine(adj, c)
        trace.append(_shape(c))
        cell = _target_cell(c)
        if cell is None:
            break
        c = _individualize(c, cell[0])
    target = _certificate(edges, c)
    target_label = c

    orbits = list(range(n))

    def add_auto(label: list[int]) -> None:
        inv = [0] * n
        for v, k in enumerate(target_label):
            inv[k] = v
        g = [inv[label[v]] for v in range(n)]
        for v in range(n):
            a, b = _orbit_rep(orbits, v), _orbit_rep(orbits, g[v])
            if a != b:
                orbits[max(a, b)] = min(a, b)

    def find(col: list[int], depth: int) -> Optional[list[int]]:
        col = refine(adj, col)
        if depth >= len(trace) or _shape(col) != trace[depth]:
            return None
        cell = _target_cell(col)
        if cell is None:
            return col if _certificate(edges, col) == target else None
        for v in cell:
            hit = find(_individualize(col, v), depth + 1)
            if hit is not None:
                return hit
        return None

    for v in range(1, n):
        if _orbit_rep(orbits, v) == _orbit_rep(orbits, 0):
            continue
        hit = find(_individualize(col, v), 0)
        if hit is None:
            return False
        add_auto(hit)
    return True


def _shape(col: list[int]) -> tuple:
    counts: dict[int, int] = {}
    for c in col:
        counts[c] = counts.get(c, 0) + 1
    return tuple(counts[c] for c in sorted(counts))


def is_bipartite(adj: Adj) -> bool:
    side = [-1] * len(adj)
    for s in range(len(adj)):
        if side[s] >= 0:
            continue
        side[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    q.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def is_hamilton_cycle(adj: Adj, cycle: Sequence[int]) -> bool:
    n = len(adj)
    if n < 3 or len(cycle) != n or len(set(cycle)) != n:
        return False
    nbr = [set(a) for a in adj]
    return all(cycle[(i + 1) % n] in nbr[cycle[i]] for i in range(n))


def rotate_to_cycle(adj: Adj, path: Sequence[int], rotations: int = 20_000, seed: int = 0) -> Optional[list[int]]:
    """Close a Hamilton path into a cycle by Posa rotations, or give up.

    If the end v_k of v_0..v_k is adjacent to v_i, the path
    v_0..v_i v_k v_{k-1}..v_{i+1} is again Hamiltonian with a new end.
    Ends are rotated at random (seeded) until the two ends are adjacent.
    """
    n = len(adj)
    nbr = [set(a) for a in adj]
    path = list(path)
    rng = random.Random(seed)
    for step in range(rotations):
        if path[0] in nbr[path[-1]]:
            return path
        if step % 2:
            path.reverse()
        pos = {v: i for i, v in enumerate(path)}
        end = path[-1]
        choices = [pos[w] for w in nbr[end] if pos[w] < n - 2]
        if not choices:
            continue
        i = rng.choice(choices)
        path[i + 1:] = path[i + 1:][::-1]
    return path if path[0] in nbr[path[-1]] else None


def find_hamilton_cycle(adj: Adj, hint: Optional[Sequence[int]] = None, budget: int = 2_000_000) -> Optional[list[int]]:
    """A Hamilton cycle, or None if none is found within `budget` search steps.

    A Hamilton path `hint` is first closed directly or by rotations.
    Otherwise a depth-first search with Warnsdorff ordering is run.
    """
    n = len(adj)
    if n < 3:
        return None
    if hint is not None and len(hint) == n and len(set(hint)) == n:
        cyc = rotate_to_cycle(adj, hint)
        if cyc is not None and is_hamilton_cycle(adj, cyc):
            return cyc
    nbr = [list(a) for a in adj]
    start = 0
    visited = [False] * n
    visited[start] = True
    path = [start]
    free_deg = [len(a) for a in nbr]
    for w in nbr[start]:
        free_deg[w] -= 1
    start_nbrs = set(nbr[start])
    steps = 0

    def order(u: int) -> list[int]:
        return sorted((w for w in nbr[u] if not visited[w]), key=lambda w: (free_deg[w], w))

    stack = [iter(order(start))]
    while stack:
        steps += 1
        if steps > budget:
            return None
        u = path[-1]
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            visited[u] = False
            for w in nbr[u]:
                free_deg[w] += 1
            continue
        if len(path) == n - 1:
            if nxt in start_nbrs:
                return path + [nxt]
            continue
        # a non-start unvisited vertex with no free neighbours left would be stranded
        visited[nxt] = True
        for w in nbr[nxt]:
            free_deg[w] -= 1
        path.append(nxt)
        if any(not visited[w] and free_deg[w] == 0 and w not in start_nbrs for w in nbr[nxt]):
            path.pop()
            visited[nxt] = False
            for w in nbr[nxt]:
                free_deg[w] += 1
            continue
        stack.append(iter(order(nxt)))
    return None
