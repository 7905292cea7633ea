"""Pairwise sentence alignment and its decomposition into hypotheses.

Alignment is a Wagner-Fischer edit distance in which linking two equal
tokens at positions ``i`` and ``j`` is not free but costs
``bias_weight * |i - j|``. Links between words that sit far apart in the
two sentences therefore lose out against substitutions and indels, which
suppresses the lopsided groupings a plain longest-common-subsequence
alignment produces.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .store import Span

Link = Tuple[int, int]
SpanPair = Tuple[Span, Span]


@dataclass(frozen=True)
class CostConfig:
    """Edit-operation costs.

    The defaults make substitution exactly as expensive as a deletion plus an
    insertion; a bias weight above 1/3 is then enough to prefer the short
    "from ... to ..." linking over the distant "San Francisco" one.
    """

    insert_cost: float = 0.5
    delete_cost: float = 0.5
    substitute_cost: float = 1.0
    bias_weight: float = 0.5

    def __post_init__(self):
        for name in ("insert_cost", "delete_cost", "substitute_cost", "bias_weight"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


UNIT_COSTS = CostConfig(1.0, 1.0, 1.0, 0.0)


@dataclass
class AlignmentResult:
    links: List[Link]
    identical_blocks: List[SpanPair]
    distinct_pairs: List[SpanPair]


def _tokens(s) -> Sequence[str]:
    return getattr(s, "tokens", s)


def _table(a, b, cost: CostConfig):
    n, m = len(a), len(b)
    ins, dele, sub, w = cost.insert_cost, cost.delete_cost, cost.substitute_cost, cost.bias_weight
    table = [[j * ins for j in range(m + 1)]]
    for i in range(1, n + 1):
        prev = table[-1]
        row = [i * dele]
        ai = a[i - 1]
        left = row[0]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                diag = prev[j - 1] + w * abs(i - j)
            else:
                diag = prev[j - 1] + sub
            up = prev[j] + dele
            left = min(diag, up, left + ins)
            row.append(left)
        table.append(row)
    return table


def edit_cost(s1, s2, cost: CostConfig = CostConfig()) -> float:
    """Minimum total cost of an edit script turning ``s1`` into ``s2``."""
    a, b = _tokens(s1), _tokens(s2)
    return _table(a, b, cost)[len(a)][len(b)]


def align(s1, s2, cost: CostConfig = CostConfig()) -> List[Link]:
    """Links ``(i, j)`` of a minimum-cost edit script, in increasing order.

    Ties during backtracking prefer the diagonal step, then a deletion
    (advance in ``s1``), then an insertion.
    """
    a, b = _tokens(s1), _tokens(s2)
    table = _table(a, b, cost)
    ins, dele, sub, w = cost.insert_cost, cost.delete_cost, cost.substitute_cost, cost.bias_weight
    links = []
    i, j = len(a), len(b)
    while i > 0 or j > 0:
        here = table[i][j]
        if i > 0 and j > 0:
            match = a[i - 1] == b[j - 1]
            step = w * abs(i - j) if match else sub
            if table[i - 1][j - 1] + step == here:
                if match:
                    links.append((i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        if i > 0 and table[i - 1][j] + dele == here:
            i -= 1
        else:
            j -= 1
    links.reverse()
    return links


def group(links: Sequence[Link], s1, s2) -> AlignmentResult:
    """Split both sentences into identical blocks and distinct pairs.

    Maximal runs of links consecutive in both sentences become identical
    blocks; the gaps before, between and after them become distinct pairs.
    A distinct pair may have one empty side but never two.
    """
    n, m = len(_tokens(s1)), len(_tokens(s2))
    blocks: List[SpanPair] = []
    for i, j in links:
        if blocks and blocks[-1][0].end == i and blocks[-1][1].end == j:
            ba, bb = blocks[-1]
            blocks[-1] = (Span(ba.begin, i + 1), Span(bb.begin, j + 1))
        else:
            blocks.append((Span(i, i + 1), Span(j, j + 1)))
    distinct: List[SpanPair] = []
    pa = pb = 0
    for ba, bb in blocks + [(Span(n, n), Span(m, m))]:
        if ba.begin > pa or bb.begin > pb:
            distinct.append((Span(pa, ba.begin), Span(pb, bb.begin)))
        pa, pb = ba.end, bb.end
    return AlignmentResult(list(links), blocks, distinct)


def hypothesize(s1, s2, cost: CostConfig = CostConfig()) -> List[SpanPair]:
    """Distinct pairs of the best alignment; empty when nothing links."""
    links = align(s1, s2, cost)
    if not links:
        return []
    return group(links, s1, s2).distinct_pairs
