import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from abl.corpus import Corpus, read_plain
from abl.learn import alignment_learning
from abl.select import (
    Scorer, apply_selection, brute_force_select, geometric_mean, p_branch, p_leaf, select_best,
)
from abl.store import Constituent, HypothesisStore, Span, crosses


def make_store(corpus_text, entries):
    """``entries``: (sentence, begin, end, label); labels are registered as given."""
    corpus = read_plain(corpus_text)
    store = HypothesisStore()
    for sid, b, e, label in entries:
        store.add(sid, (b, e), store.registry.register(label))
    return store, corpus


def hyp(b, e, sentence=0, label=0):
    return Constituent(sentence, Span(b, e), label)


def table(probs):
    return lambda c: probs[tuple(c.span)]


# --- probability models ----------------------------------------------------


def test_p_leaf_single_shared_yield():
    store, corpus = make_store("x a\nx b\nx c\nx d\n", [(k, 0, 1, 0) for k in range(4)])
    scorer = Scorer(store, corpus, "leaf")
    assert all(p_leaf(c, scorer) == 1.0 for c in store)


def test_p_leaf_counts_yields():
    # yields Y, Y, Z, W
    store, corpus = make_store("Y\nY\nZ\nW\n", [(k, 0, 1, k) for k in range(4)])
    scorer = Scorer(store, corpus, "leaf")
    assert [p_leaf(c, scorer) for c in store] == [0.5, 0.5, 0.25, 0.25]


def test_p_leaf_rare_yield():
    text = "".join(f"w{k}\n" if k == 0 else "common\n" for k in range(10))
    store, corpus = make_store(text, [(k, 0, 1, 0) for k in range(10)])
    scorer = Scorer(store, corpus, "leaf")
    assert p_leaf(store.constituents(0)[0], scorer) == pytest.approx(0.1)


def test_p_branch_single_yield_per_root():
    store, corpus = make_store("a\na\nb\n", [(0, 0, 1, 0), (1, 0, 1, 0), (2, 0, 1, 1)])
    scorer = Scorer(store, corpus, "branch")
    assert [p_branch(c, scorer) for c in store] == [1.0, 1.0, 1.0]


def test_p_branch_conditions_on_root():
    # root 0 holds Y, Y, Z; root 1 holds Y
    store, corpus = make_store("Y\nY\nZ\nY\n", [(0, 0, 1, 0), (1, 0, 1, 0), (2, 0, 1, 0), (3, 0, 1, 1)])
    scorer = Scorer(store, corpus, "branch")
    probs = [p_branch(c, scorer) for c in store]
    assert probs[:2] == [pytest.approx(2 / 3)] * 2
    assert probs[2] == pytest.approx(1 / 3)
    assert probs[3] == 1.0


def test_p_branch_unique_yield_among_five():
    store, corpus = make_store("u\nv\nv\nv\nv\n", [(k, 0, 1, 7) for k in range(5)])
    scorer = Scorer(store, corpus, "branch")
    assert p_branch(store.constituents(0)[0], scorer) == pytest.approx(0.2)


def test_p_branch_uses_canonical_root():
    store, corpus = make_store("Y\nY\nZ\n", [(0, 0, 1, 0), (1, 0, 1, 1), (2, 0, 1, 2)])
    store.registry.merge(0, 1)
    scorer = Scorer(store, corpus, "branch")
    assert p_branch(hyp(0, 1, sentence=0, label=1), scorer) == 1.0


def test_empty_scorer_refuses():
    scorer = Scorer(HypothesisStore(), read_plain("a\n"), "leaf")
    with pytest.raises(ValueError):
        scorer.p_leaf(hyp(0, 1))
    with pytest.raises(ValueError):
        Scorer(HypothesisStore(), read_plain("a\n"), "viterbi")


def test_probabilities_sum_to_one_on_learned_store():
    corpus = read_plain("show me the flights\nshow me the fares\ngive me the fares\nlist the flights\n")
    store, registry = alignment_learning(corpus)
    leaf = Scorer(store, corpus, "leaf")
    branch = Scorer(store, corpus, "branch")
    by_yield = {leaf.yield_of(c): c for c in store}
    assert sum(p_leaf(c, leaf) for c in by_yield.values()) == pytest.approx(1.0)
    by_root = {}
    for c in store:
        by_root.setdefault(c.label, {})[branch.yield_of(c)] = c
    for members in by_root.values():
        assert sum(p_branch(c, branch) for c in members.values()) == pytest.approx(1.0)


# --- geometric mean --------------------------------------------------------


def test_geometric_mean_examples():
    assert geometric_mean([0.3]) == pytest.approx(0.3)
    assert geometric_mean([0.25, 0.25]) == pytest.approx(0.25)
    assert geometric_mean([0.5, 0.125]) == pytest.approx(0.25)
    assert geometric_mean([0.5, 0.0]) == 0.0
    with pytest.raises(ValueError):
        geometric_mean([])


@given(st.lists(st.floats(1e-300, 1.0), min_size=1, max_size=40))
def test_geometric_mean_is_stable_in_log_space(probs):
    expected = math.exp(math.fsum(math.log(p) for p in probs) / len(probs))
    assert geometric_mean(probs) == pytest.approx(expected, rel=1e-9)


# --- selection -------------------------------------------------------------


def test_select_prefers_higher_geometric_mean():
    probs = {(0, 2): 0.8, (1, 3): 0.2, (3, 5): 0.5}
    hyps = [hyp(*s) for s in probs]
    chosen = select_best(hyps, table(probs), 0)
    assert sorted(tuple(c.span) for c in chosen) == [(0, 2), (3, 5)]
    assert chosen == brute_force_select(hyps, table(probs), 0)


def test_select_single_and_empty():
    assert select_best([hyp(0, 2)], lambda c: 0.3, 1) == [hyp(0, 2)]
    assert select_best([], lambda c: 0.3, 1) == []


def test_select_ties_are_seeded_coin_flips():
    probs = {(0, 2): 0.4, (1, 3): 0.4, (3, 5): 0.9}
    hyps = [hyp(*s) for s in probs]
    picks = {}
    for seed in range(40):
        chosen = select_best(hyps, table(probs), seed)
        assert chosen == select_best(hyps, table(probs), seed)
        assert hyp(3, 5) in chosen
        picks[seed] = tuple(sorted(tuple(c.span) for c in chosen))
    assert set(picks.values()) == {((0, 2), (3, 5)), ((1, 3), (3, 5))}


def test_select_keeps_maximality_over_low_probabilities():
    # dropping the 0.01 constituent would raise the mean, but the set must stay maximal
    probs = {(0, 2): 0.9, (2, 4): 0.01}
    chosen = select_best([hyp(*s) for s in probs], table(probs), 0)
    assert len(chosen) == 2


def test_zero_probability_sets_lose():
    probs = {(0, 2): 0.0, (1, 3): 0.1}
    chosen = select_best([hyp(*s) for s in probs], table(probs), 0)
    assert chosen == [hyp(1, 3)]


def test_brute_force_limits_and_checks():
    with pytest.raises(ValueError):
        brute_force_select([hyp(k, k + 1) for k in range(21)], lambda c: 0.5)
    with pytest.raises(ValueError):
        select_best([hyp(0, 1, sentence=0), hyp(0, 1, sentence=1)], lambda c: 0.5)


@st.composite
def hypothesis_sets(draw, max_size=9, length=10):
    spans = draw(st.sets(
        st.tuples(st.integers(0, length - 1), st.integers(1, length)).filter(lambda s: s[0] < s[1]),
        min_size=1, max_size=max_size,
    ))
    values = st.sampled_from([0.05, 0.1, 0.25, 0.5, 1.0]) | st.floats(0.001, 1.0)
    probs = {s: draw(values) for s in spans}
    return [hyp(*s) for s in sorted(spans)], probs


def _assert_valid(chosen, hyps):
    spans = [c.span for c in chosen]
    assert not any(crosses(a, b) for a in spans for b in spans)
    for h in hyps:
        if h not in chosen:
            assert any(crosses(h.span, s) for s in spans)


@settings(max_examples=200, deadline=None)
@given(hypothesis_sets(), st.integers(0, 2**32))
def test_select_matches_brute_force(case, seed):
    hyps, probs = case
    fast = select_best(hyps, table(probs), seed)
    slow = brute_force_select(hyps, table(probs), seed)
    assert fast == slow
    _assert_valid(fast, hyps)


@settings(max_examples=100, deadline=None)
@given(hypothesis_sets(), st.sampled_from([1.0, 0.5, 0.25, 0.125]))
def test_scaling_probabilities_keeps_the_choice(case, k):
    hyps, probs = case
    probs = {s: p for s, p in probs.items()}
    scaled = {s: p * k for s, p in probs.items()}
    assert select_best(hyps, table(probs), 3) == select_best(hyps, table(scaled), 3)


def test_apply_selection_is_non_crossing_and_deterministic():
    corpus = read_plain(
        "give me all flights from dallas to boston\nbook delta 128 from dallas to boston\n"
        "give me help on classes\nshow me all flights from boston\n"
    )
    store, _ = alignment_learning(corpus)
    scorer = Scorer(store, corpus, "branch")
    first = apply_selection(store, scorer, 4)
    second = apply_selection(store, scorer, 4)
    assert first.constituents() == second.constituents()
    for sid in first.sentences():
        _assert_valid(first.constituents(sid), store.constituents(sid))


def test_overlapping_structures_are_resolved():
    corpus = read_plain("Book Delta 128 from Dallas to Boston\nGive me all flights from Dallas to Boston\n"
                        "Give me help on classes\n")
    store, _ = alignment_learning(corpus)
    spans = store.spans(1)
    assert spans == [(0, 4), (2, 8)] and crosses((0, 4), (2, 8))
    for kind in ("leaf", "branch"):
        chosen = apply_selection(store, Scorer(store, corpus, kind), 0).spans(1)
        assert not any(crosses(a, b) for a in chosen for b in chosen)
