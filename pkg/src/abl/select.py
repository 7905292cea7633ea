"""Selection learning: keep the most probable non-crossing constituents.

Each stored constituent is scored by how often its yield occurs among all
stored constituents (``leaf``), or among the constituents of its own type
(``branch``). Per sentence, the chosen set is the maximal non-crossing subset
of hypotheses with the highest geometric mean probability; the geometric
mean keeps the score from favouring small sets the way a plain product
would.

The optimizer splits the crossing graph of a sentence into connected
components. A set is maximal and non-crossing exactly when its restriction to
each component is a maximal independent set of that component, so the
maximal independent sets are enumerated per component (Bron-Kerbosch) and
recombined with a dynamic program over set size, where the best log-sum for
every size is kept along with anything close enough to tie.
"""

import math
import random
from collections import Counter
from typing import Callable, Dict, List, Sequence, Tuple

from .store import Constituent, HypothesisStore, crosses

KINDS = ("leaf", "branch")
TIE_TOLERANCE = 1e-12
BRUTE_FORCE_LIMIT = 20
# partial sums this close to the best partial may still end up tied
_PRUNE_SLACK = 1e-9


class Scorer:
    """Constituent probabilities from counts frozen over a whole store."""

    def __init__(self, store: HypothesisStore, corpus, kind: str = "branch"):
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        self.kind = kind
        self.registry = store.registry
        self.corpus = corpus
        self.total = 0
        self.yields = Counter()
        self.yield_roots = Counter()
        self.roots = Counter()
        for c in store.constituents():
            y = self.yield_of(c)
            self.total += 1
            self.yields[y] += 1
            self.yield_roots[y, c.label] += 1
            self.roots[c.label] += 1

    def yield_of(self, c: Constituent) -> Tuple[str, ...]:
        return tuple(self.corpus[c.sentence].tokens[c.span[0]:c.span[1]])

    def p_leaf(self, c: Constituent) -> float:
        if self.total == 0:
            raise ValueError("no constituents to estimate probabilities from")
        return self.yields[self.yield_of(c)] / self.total

    def p_branch(self, c: Constituent) -> float:
        root = self.registry.canonical(c.label)
        if self.roots[root] == 0:
            raise ValueError(f"no constituents with type {root}")
        return self.yield_roots[self.yield_of(c), root] / self.roots[root]

    def __call__(self, c: Constituent) -> float:
        return self.p_leaf(c) if self.kind == "leaf" else self.p_branch(c)


def p_leaf(c, scorer: Scorer) -> float:
    return scorer.p_leaf(c)


def p_branch(c, scorer: Scorer) -> float:
    return scorer.p_branch(c)


def _log(p: float) -> float:
    return math.log(p) if p > 0 else -math.inf


def log_geometric_mean(probs: Sequence[float]) -> float:
    if not probs:
        raise ValueError("geometric mean of an empty list")
    logs = [_log(p) for p in probs]
    if -math.inf in logs:
        return -math.inf
    return sum(logs) / len(logs)


def geometric_mean(probs: Sequence[float]) -> float:
    """``(prod p_i) ** (1/n)``, computed in log space; any zero gives 0."""
    return math.exp(log_geometric_mean(probs))


def _span_key(c):
    return (c.span[0], c.span[1])


def _set_score(chosen: Sequence[Constituent], prob: Callable) -> float:
    """Log geometric mean of a chosen set, evaluated in canonical span order."""
    if not chosen:
        return 0.0
    return log_geometric_mean([prob(c) for c in sorted(chosen, key=_span_key)])


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _pick(candidates: List[List[Constituent]], prob, seed) -> List[Constituent]:
    """Best-scoring candidate; ties are broken uniformly with the seeded RNG."""
    scored = [(_set_score(c, prob), sorted(c, key=_span_key)) for c in candidates]
    best = max(s for s, _ in scored)
    tied = [c for s, c in scored if s >= best - TIE_TOLERANCE or s == best]
    tied.sort(key=lambda c: [_span_key(x) for x in c])
    return _rng(seed).choice(tied)


def _check_one_sentence(hypotheses):
    if len({c.sentence for c in hypotheses}) > 1:
        raise ValueError("hypotheses must all belong to one sentence")
    if len({_span_key(c) for c in hypotheses}) != len(hypotheses):
        raise ValueError("duplicate spans among hypotheses")


def brute_force_select(hypotheses: Sequence[Constituent], scorer, rng_seed=0) -> List[Constituent]:
    """Reference selection by enumerating every subset (at most 20 hypotheses)."""
    hyps = list(hypotheses)
    if not hyps:
        return []
    if len(hyps) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refuses more than {BRUTE_FORCE_LIMIT} hypotheses")
    _check_one_sentence(hyps)
    n = len(hyps)
    conflict = [0] * n
    for a in range(n):
        for b in range(n):
            if crosses(hyps[a].span, hyps[b].span):
                conflict[a] |= 1 << b
    candidates = []
    for mask in range(1, 1 << n):
        members = [k for k in range(n) if mask >> k & 1]
        if any(conflict[k] & mask for k in members):
            continue
        if all(conflict[k] & mask for k in range(n) if not mask >> k & 1):
            candidates.append([hyps[k] for k in members])
    return _pick(candidates, scorer, rng_seed)


def _components(n, adj):
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _maximal_independent_sets(nodes, conflict):
    """All maximal independent sets of the crossing graph restricted to ``nodes``.

    Bron-Kerbosch with pivoting on the complement graph; sets are bitmasks.
    """
    allowed = 0
    for v in nodes:
        allowed |= 1 << v
    compat = {v: allowed & ~conflict[v] & ~(1 << v) for v in nodes}
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: bin(compat[u] & p).count("1"))
        for v in _bits(p & ~compat[pivot]):
            expand(r | 1 << v, p & compat[v], x & compat[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, allowed, 0)
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def select_best(hypotheses: Sequence[Constituent], scorer, rng_seed=0) -> List[Constituent]:
    """Maximal non-crossing subset with the highest geometric mean probability.

    ``scorer`` is any callable mapping a constituent to its probability.
    Among sets tied within 1e-12 in log space, one is drawn uniformly with
    the seeded generator; the draw matches :func:`brute_force_select` for the
    same seed.
    """
    hyps = list(hypotheses)
    if not hyps:
        return []
    _check_one_sentence(hyps)
    n = len(hyps)
    logp = [_log(scorer(c)) for c in hyps]
    adj: List[List[int]] = [[] for _ in range(n)]
    conflict = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if crosses(hyps[a].span, hyps[b].span):
                adj[a].append(b)
                adj[b].append(a)
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a

    # size -> [(log-sum, chosen mask)]
    partial: Dict[int, List[Tuple[float, int]]] = {0: [(0.0, 0)]}
    for comp in _components(n, adj):
        if len(comp) == 1:
            options = [(1, logp[comp[0]], 1 << comp[0])]
        else:
            options = [
                (bin(m).count("1"), sum(logp[v] for v in _bits(m)), m)
                for m in _maximal_independent_sets(comp, conflict)
            ]
        grown: Dict[int, List[Tuple[float, int]]] = {}
        for size, entries in partial.items():
            for osize, osum, omask in options:
                bucket = grown.setdefault(size + osize, [])
                for psum, pmask in entries:
                    bucket.append((psum + osum, pmask | omask))
        partial = {}
        for size, bucket in grown.items():
            best = max(s for s, _ in bucket)
            partial[size] = [e for e in bucket if e[0] >= best - _PRUNE_SLACK or e[0] == best]

    candidates = []
    for size, entries in partial.items():
        for _, mask in entries:
            candidates.append([hyps[v] for v in _bits(mask)])
    # the exact tie test runs on recomputed scores, same as the brute force
    return _pick(candidates, scorer, rng_seed)


def sentence_rng(seed: int, sentence: int) -> random.Random:
    return random.Random(f"{seed}:{sentence}")


def apply_selection(store: HypothesisStore, scorer, seed: int = 0) -> HypothesisStore:
    """New store holding only the selected constituents of every sentence."""
    out = HypothesisStore(store.registry)
    for sid in store.sentences():
        hyps = store.constituents(sid)
        for c in select_best(hyps, scorer, sentence_rng(seed, sid)):
            out.add(sid, c.span, c.label)
    return out
