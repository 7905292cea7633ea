"""Non-crossing bracket scores and branching baselines.

Only spans of width two or more that do not cover the whole sentence are
counted, on both the learned and the gold side: the excluded spans can never
cross anything and would only inflate the scores.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List

from .corpus import TreeCorpus
from .store import HypothesisStore, Span, crosses

log = logging.getLogger(__name__)

__all__ = [
    "EvalReport", "crosses", "counted", "evaluate", "left_branching", "right_branching",
    "baseline", "evaluate_baseline",
]


@dataclass(frozen=True)
class EvalReport:
    ncbp: float
    ncbr: float
    zcs: float
    counted_learned: int
    counted_gold: int
    sentences: int
    noncrossing_learned: int = 0
    noncrossing_gold: int = 0
    zero_crossing_sentences: int = 0

    def as_table(self) -> str:
        rows = [
            ("NCBP", self.ncbp, f"{self.noncrossing_learned}/{self.counted_learned} learned brackets"),
            ("NCBR", self.ncbr, f"{self.noncrossing_gold}/{self.counted_gold} gold brackets"),
            ("ZCS", self.zcs, f"{self.zero_crossing_sentences}/{self.sentences} sentences"),
        ]
        return "".join(f"{name:<6}{value:>7.2f}  {detail}\n" for name, value, detail in rows)

    def as_keyvalue(self) -> str:
        return (
            f"ncbp={self.ncbp:.2f}\nncbr={self.ncbr:.2f}\nzcs={self.zcs:.2f}\n"
            f"counted_learned={self.counted_learned}\ncounted_gold={self.counted_gold}\n"
            f"sentences={self.sentences}\n"
        )

    def __str__(self):
        return self.as_table() + "\n" + self.as_keyvalue()


def counted(spans: Iterable, length: int) -> List[Span]:
    return sorted({Span(b, e) for b, e in spans if e - b >= 2 and not (b == 0 and e == length)})


def _learned_spans(learned, sid) -> List:
    if isinstance(learned, HypothesisStore):
        return learned.spans(sid)
    return list(learned.get(sid, ()))


def _percent(num, den, what):
    if den == 0:
        log.warning("no %s to score; reporting 100 by convention", what)
        return 100.0
    return 100.0 * num / den


def evaluate(learned, gold: TreeCorpus, corpus=None) -> EvalReport:
    """Score learned brackets against gold.

    ``learned`` is a HypothesisStore or a mapping from sentence id to spans.
    When ``corpus`` is given its token sequences must equal the gold ones.
    """
    if corpus is not None:
        if len(corpus) != len(gold):
            raise ValueError(f"corpus has {len(corpus)} sentences, gold has {len(gold)}")
        for sentence, tree in zip(corpus, gold):
            if tuple(sentence.tokens) != tuple(tree.tokens):
                raise ValueError(f"sentence {tree.id}: tokens differ between learned and gold corpus")
    sids = learned.sentences() if isinstance(learned, HypothesisStore) else learned.keys()
    for sid in sids:
        if not 0 <= sid < len(gold):
            raise ValueError(f"sentence {sid}: not present in gold corpus")
    n_learned = n_gold = ok_learned = ok_gold = zero = 0
    for tree in gold:
        length = len(tree.tokens)
        raw = _learned_spans(learned, tree.id)
        for b, e in raw:
            if not 0 <= b < e <= length:
                raise ValueError(f"sentence {tree.id}: span ({b}, {e}) out of bounds")
        lspans = counted(raw, length)
        gspans = counted(tree.spans, length)
        crossing_learned = sum(1 for s in lspans if any(crosses(s, g) for g in gspans))
        crossing_gold = sum(1 for g in gspans if any(crosses(g, s) for s in lspans))
        n_learned += len(lspans)
        n_gold += len(gspans)
        ok_learned += len(lspans) - crossing_learned
        ok_gold += len(gspans) - crossing_gold
        zero += crossing_learned == 0
    return EvalReport(
        ncbp=_percent(ok_learned, n_learned, "learned brackets"),
        ncbr=_percent(ok_gold, n_gold, "gold brackets"),
        zcs=_percent(zero, len(gold), "sentences"),
        counted_learned=n_learned,
        counted_gold=n_gold,
        sentences=len(gold),
        noncrossing_learned=ok_learned,
        noncrossing_gold=ok_gold,
        zero_crossing_sentences=zero,
    )


def _length(s) -> int:
    return s if isinstance(s, int) else len(s)


def left_branching(s) -> List[Span]:
    """``(0, k)`` for ``2 <= k <= n``; accepts a sentence or its length."""
    n = _length(s)
    return [Span(0, k) for k in range(2, n + 1)]


def right_branching(s) -> List[Span]:
    n = _length(s)
    return [Span(k, n) for k in range(0, n - 1)]


def baseline(gold: TreeCorpus, side: str) -> Dict[int, List[Span]]:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    build = left_branching if side == "left" else right_branching
    return {tree.id: build(len(tree.tokens)) for tree in gold}


def evaluate_baseline(gold: TreeCorpus, side: str) -> EvalReport:
    return evaluate(baseline(gold, side), gold)
