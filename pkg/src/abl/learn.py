"""Alignment learning: compare every sentence pair and store what differs.

The distinct parts of an aligned pair are interchangeable, so both sides are
stored as constituents of one type. A side already stored in its sentence
lends its type to the other side; when both sides already exist their types
are merged in the registry, which relabels every constituent of either type.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

from .align import CostConfig, hypothesize
from .corpus import Corpus
from .store import HypothesisStore, Span, TypeRegistry

log = logging.getLogger(__name__)

MODES = ("incr", "all")


@dataclass(frozen=True)
class LearnConfig:
    """``mode="incr"`` keeps the first constituent learned whenever a newer one
    would cross it; ``mode="all"`` stores every hypothesis for later selection.
    """

    mode: str = "all"
    order_seed: Optional[int] = None
    cost: CostConfig = field(default_factory=CostConfig)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


def merge_types(registry: TypeRegistry, a: int, b: int) -> int:
    return registry.merge(a, b)


def canonical(registry: TypeRegistry, label: int) -> int:
    return registry.canonical(label)


def attach_hypotheses(pairs, sa: int, sb: int, store: HypothesisStore, mode: str = "all"):
    """Store the distinct pairs of one alignment of sentences ``sa`` and ``sb``."""
    registry = store.registry
    for span_a, span_b in pairs:
        sides = [(sid, Span(*span)) for sid, span in ((sa, span_a), (sb, span_b)) if span[0] < span[1]]
        existing = []
        new = []
        for sid, span in sides:
            label = store.get(sid, span)
            if label is not None:
                existing.append(label)
            elif mode == "incr" and store.crosses_any(sid, span):
                store.discarded += 1
            else:
                new.append((sid, span))
        if len(existing) == 2:
            registry.merge(*existing)
            label = existing[0]
        elif existing:
            label = existing[0]
        elif new:
            label = registry.fresh()
        else:
            continue
        for sid, span in new:
            store.add(sid, span, label)
    return store


def alignment_learning(corpus: Corpus, config: LearnConfig = LearnConfig()):
    """Run the pairwise loop; returns ``(store, registry)``.

    Every unordered pair is aligned once. Pairs are taken in ascending id
    order, or in the order of a seeded permutation of the sentences when
    ``config.order_seed`` is set.
    """
    if len(corpus) == 0:
        raise ValueError("cannot learn from an empty corpus")
    order = list(range(len(corpus)))
    if config.order_seed is not None:
        random.Random(config.order_seed).shuffle(order)
    sentences = [corpus[k].tokens for k in order]
    vocab = [frozenset(toks) for toks in sentences]
    store = HypothesisStore()
    for a in range(len(order)):
        s1, v1 = sentences[a], vocab[a]
        for b in range(a + 1, len(order)):
            store.pairs_processed += 1
            s2 = sentences[b]
            # no shared word means no link and nothing to learn
            if s1 == s2 or v1.isdisjoint(vocab[b]):
                continue
            pairs = hypothesize(s1, s2, config.cost)
            if pairs:
                attach_hypotheses(pairs, order[a], order[b], store, config.mode)
    log.info(
        "learned %d hypotheses over %d sentences (%d pairs, %d types, %d discarded)",
        len(store), len(corpus), store.pairs_processed, store.registry.num_types(), store.discarded,
    )
    return store, store.registry
