"""End-to-end learning runs: learn, select, evaluate, repeat."""

import statistics
from dataclasses import dataclass
from typing import List

from .align import CostConfig
from .corpus import TreeCorpus, filter_min_length, strip_structure
from .learn import LearnConfig, alignment_learning
from .metrics import EvalReport, evaluate
from .select import Scorer, apply_selection

METHODS = ("incr", "leaf", "branch")


def learn_and_select(corpus, method="branch", seed=0, cost=None, shuffle=None):
    """Structure ``corpus`` with one of the three methods; returns a store.

    ``incr`` resolves overlaps while learning and, unless ``shuffle`` is
    False, visits sentences in an order drawn from ``seed``. ``leaf`` and
    ``branch`` learn in corpus order and use ``seed`` only to break ties
    during selection.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    cost = cost or CostConfig()
    if method == "incr":
        order_seed = seed if shuffle is not False else None
        store, _ = alignment_learning(corpus, LearnConfig("incr", order_seed, cost))
        return store
    order_seed = seed if shuffle else None
    store, _ = alignment_learning(corpus, LearnConfig("all", order_seed, cost))
    return apply_selection(store, Scorer(store, corpus, method), seed)


@dataclass
class RunSummary:
    method: str
    seeds: List[int]
    reports: List[EvalReport]

    def _column(self, name):
        return [getattr(r, name) for r in self.reports]

    def mean(self, name) -> float:
        return statistics.fmean(self._column(name))

    def std(self, name) -> float:
        values = self._column(name)
        return statistics.stdev(values) if len(values) > 1 else 0.0

    def row(self) -> str:
        cells = "  ".join(f"{self.mean(m):6.2f} ({self.std(m):.2f})" for m in ("ncbp", "ncbr", "zcs"))
        return f"abl:{self.method:<7} {cells}"

    def render(self) -> str:
        lines = [f"{'run':>3}  {'seed':>6}  {'ncbp':>6}  {'ncbr':>6}  {'zcs':>6}"]
        for k, (seed, r) in enumerate(zip(self.seeds, self.reports)):
            lines.append(f"{k:>3}  {seed:>6}  {r.ncbp:6.2f}  {r.ncbr:6.2f}  {r.zcs:6.2f}")
        lines.append("")
        lines.append(f"{'':<12}{'NCBP':>14}  {'NCBR':>14}  {'ZCS':>14}")
        lines.append(self.row())
        lines.append("")
        for m in ("ncbp", "ncbr", "zcs"):
            lines.append(f"{m}_mean={self.mean(m):.2f}")
            lines.append(f"{m}_std={self.std(m):.2f}")
        return "\n".join(lines) + "\n"


def run_protocol(gold: TreeCorpus, method="branch", seed=0, repeats=1, cost=None, min_len=2):
    """Strip ``gold``, structure it ``repeats`` times with seeds seed, seed+1, ..."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    gold = filter_min_length(gold, min_len)
    corpus = strip_structure(gold)
    seeds = [seed + k for k in range(repeats)]
    if method == "incr":
        stores = (learn_and_select(corpus, method, s, cost) for s in seeds)
    else:
        # learning in corpus order does not depend on the seed
        learned, _ = alignment_learning(corpus, LearnConfig("all", None, cost or CostConfig()))
        scorer = Scorer(learned, corpus, method)
        stores = (apply_selection(learned, scorer, s) for s in seeds)
    reports = [evaluate(store, gold, corpus) for store in stores]
    return RunSummary(method, seeds, reports)
