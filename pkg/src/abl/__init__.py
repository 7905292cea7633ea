"""Unsupervised constituent induction by aligning sentence pairs."""

from .align import CostConfig, align, edit_cost, group, hypothesize
from .corpus import (
    Corpus, CorpusFormatError, CrossingError, GoldTree, Sentence, TreeCorpus, emit_bracketed,
    emit_spans, filter_min_length, read_bracketed, read_plain, read_spans, strip_structure,
)
from .learn import LearnConfig, alignment_learning, attach_hypotheses
from .metrics import EvalReport, evaluate, left_branching, right_branching
from .select import Scorer, apply_selection, brute_force_select, geometric_mean, select_best
from .store import Constituent, HypothesisStore, Span, TypeRegistry, crosses

__version__ = "0.1.0"
