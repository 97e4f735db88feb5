"""Counting formulas for the classes of quotient graphs, and the enumeration routes that confirm them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from . import graphs
from .analysis import build_quotient_graph, is_regular, is_vertex_transitive, max_degree_witness
from .classes import class_count, compute_classes
from .errors import BudgetExceededError, InvalidInputError, VerificationError
from .fences import Congruence, count_downsets, enumerate_essential_congruences, fence_space


def _need(n: int, lo: int = 2) -> None:
    if not isinstance(n, int) or n < lo:
        raise InvalidInputError(f"n must be an integer >= {lo}")


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def count_regular(n: int) -> int:
    _need(n)
    return catalan(n - 1) ** 2


def weighted_compositions(m: int, weight: Callable[[int], int]) -> int:
    """Sum over compositions of m of the product of part weights."""
    w = [1] + [0] * m
    for total in range(1, m + 1):
        w[total] = sum(weight(p) * w[total - p] for p in range(1, total + 1))
    return w[m]


def count_vertex_transitive(n: int) -> int:
    """Sum of 3^k over compositions of n-1, k the number of parts equal to 2."""
    _need(n)
    return weighted_compositions(n - 1, lambda p: 3 if p == 2 else 1)


def a052528(m: int) -> int:
    """b_0 = b_1 = 1, b_m = 2 b_{m-2} + sum_{i<m} b_i."""
    b = [1, 1]
    while len(b) <= m:
        k = len(b)
        b.append(2 * b[k - 2] + sum(b))
    return b[m]


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    if m < 0:
        return 0
    p = [1] + [0] * m
    for part in range(1, m + 1):
        for t in range(part, m + 1):
            p[t] += p[t - part]
    return p[m]


def twos_in_partitions(m: int) -> int:
    """t_m: the total number of parts equal to 2 over all partitions of m."""
    return sum(partition_count(m - 2 * j) for j in range(1, m // 2 + 1))


def count_vt_noniso(n: int) -> int:
    _need(n)
    return twos_in_partitions(n + 1)


def count_congruences(n: int) -> int:
    """Number of essential congruences of S_n."""
    _need(n, 1)
    if n > 6:
        raise BudgetExceededError("essential congruences are only counted up to n = 6")
    return count_downsets(n)


@dataclass(frozen=True)
class NonisoCounts:
    total: int
    regular: int
    vertex_transitive: int


def graph_canon(c: Congruence) -> tuple:
    g = build_quotient_graph(compute_classes(c))
    return graphs.canonical_form(g.adj)


def count_noniso_detail(n: int) -> NonisoCounts:
    """Bucket all essential quotient graphs by canonical form."""
    _need(n)
    if n > 5:
        raise BudgetExceededError("isomorphism classification is supported up to n = 5")
    seen: dict[tuple, tuple[bool, bool]] = {}

    def visit(c: Congruence) -> None:
        key = graph_canon(c)
        flags = (is_regular(c), is_vertex_transitive(c))
        old = seen.get(key)
        if old is not None and old != flags:
            raise VerificationError("isomorphic quotient graphs disagree on regularity or transitivity")
        seen[key] = flags

    enumerate_essential_congruences(n, visit)
    out = NonisoCounts(len(seen), sum(r for r, _ in seen.values()), sum(v for _, v in seen.values()))
    bound = chain_bound(n)
    if out.total < bound:
        raise VerificationError(f"{out.total} non-isomorphic graphs is below the chain bound {bound}")
    return out


def count_noniso(n: int) -> tuple[int, int]:
    d = count_noniso_detail(n)
    return d.total, d.regular


def chain_bound(n: int) -> int:
    return 2 ** n - 2 * n + 1


def fence_chain(n: int) -> list[Congruence]:
    """Essential congruences obtained by adding one fence at a time, longest fences first."""
    sp = fence_space(n)
    chain = [Congruence(n, 0)]
    mask = 0
    for i, f in enumerate(sp.fences):
        if f.essential:
            mask |= 1 << i
            chain.append(Congruence(n, mask))
    return chain


def chain_class_counts(n: int) -> list[int]:
    """Class counts along fence_chain(n); strictly decreasing, so the graphs are pairwise non-isomorphic."""
    counts = [class_count(c) for c in fence_chain(n)]
    if any(x <= y for x, y in zip(counts, counts[1:])):
        raise VerificationError("class counts along the fence chain are not strictly decreasing")
    return counts


# Table 1


@dataclass(frozen=True)
class Cell:
    value: Optional[int]
    source: str  # "enum", "formula" or "" for unknown

    def __str__(self) -> str:
        return "?" if self.value is None else f"{self.value}:{self.source}"


TABLE_ROWS = ("Q", "R", "V", "Q'", "R'", "V'", "min-degree", "max-degree")


def table1(max_n: int = 7, enumerate_upto: int = 5) -> dict[str, list[Cell]]:
    """Rows of the table for n = 2..max_n.

    Cells are computed by enumeration where n <= enumerate_upto (and the
    enumeration is within budget), by closed formula otherwise, and left
    unknown when neither is available.
    """
    _need(max_n)
    rows: dict[str, list[Cell]] = {k: [] for k in TABLE_ROWS}
    for n in range(2, max_n + 1):
        enum = n <= enumerate_upto and n <= 5
        noniso = count_noniso_detail(n) if enum else None
        if n <= 6:
            rows["Q"].append(Cell(count_congruences(n), "enum"))
        else:
            rows["Q"].append(Cell(None, ""))
        if enum:
            regs = vts = 0
            lo, hi = None, 0

            def visit(c: Congruence) -> None:
                nonlocal regs, vts, lo, hi
                regs += is_regular(c)
                vts += is_vertex_transitive(c)
                degs = build_quotient_graph(compute_classes(c)).degrees
                lo = min(degs) if lo is None else min(lo, min(degs))
                hi = max(hi, max(degs))
            enumerate_essential_congruences(n, visit)
            rows["R"].append(Cell(regs, "enum"))
            rows["V"].append(Cell(vts, "enum"))
            rows["Q'"].append(Cell(noniso.total, "enum"))
            rows["R'"].append(Cell(noniso.regular, "enum"))
            rows["V'"].append(Cell(noniso.vertex_transitive, "enum"))
            rows["min-degree"].append(Cell(lo, "enum"))
            rows["max-degree"].append(Cell(hi, "enum"))
        else:
            rows["R"].append(Cell(count_regular(n), "formula"))
            rows["V"].append(Cell(count_vertex_transitive(n), "formula"))
            rows["Q'"].append(Cell(None, ""))
            rows["R'"].append(Cell(None, ""))
            rows["V'"].append(Cell(count_vt_noniso(n), "formula"))
            rows["min-degree"].append(Cell(n - 1, "formula"))
            rows["max-degree"].append(Cell(max_degree_witness(n).degree, "formula"))
    return rows


def format_table1(rows: dict[str, list[Cell]]) -> str:
    width = len(next(iter(rows.values())))
    lines = ["row\t" + "\t".join(f"n={n}" for n in range(2, width + 2))]
    for key, cells in rows.items():
        lines.append(key + "\t" + "\t".join(str(c) for c in cells))
    return "\n".join(lines) + "\n"
