"""Constituent storage and type bookkeeping shared by learning and selection."""

from collections import defaultdict
from typing import Dict, Iterator, List, NamedTuple, Optional


class Span(NamedTuple):
    """Half-open token range ``[begin, end)``."""

    begin: int
    end: int

    @property
    def width(self) -> int:
        return self.end - self.begin


class Constituent(NamedTuple):
    sentence: int
    span: Span
    label: int


def crosses(a, b) -> bool:
    """True iff the two spans strictly interleave.

    Containment and disjointness (including adjacency) do not cross.

    >>> crosses((0, 2), (1, 3))
    True
    >>> crosses((0, 4), (1, 3))
    False
    >>> crosses((0, 2), (2, 4))
    False
    """
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


class UnknownTypeError(KeyError):
    pass


class TypeRegistry:
    """Union-find over integer type labels.

    Fresh labels count up from zero and are never reused. The smaller label
    of a merged class is its canonical representative, so canonical labels
    do not depend on merge order.
    """

    def __init__(self):
        self.parent: Dict[int, int] = {}
        self.next_fresh = 0

    def fresh(self) -> int:
        label = self.next_fresh
        self.next_fresh += 1
        self.parent[label] = label
        return label

    def register(self, label: int) -> int:
        """Adopt an externally issued label (e.g. read back from a span table)."""
        if label not in self.parent:
            self.parent[label] = label
            self.next_fresh = max(self.next_fresh, label + 1)
        return label

    def canonical(self, label: int) -> int:
        try:
            root = self.parent[label]
        except KeyError:
            raise UnknownTypeError(f"unknown type label {label}") from None
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while label != root:
            self.parent[label], label = root, self.parent[label]
        return root

    def merge(self, a: int, b: int) -> int:
        ra, rb = self.canonical(a), self.canonical(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def same(self, a: int, b: int) -> bool:
        return self.canonical(a) == self.canonical(b)

    def __contains__(self, label):
        return label in self.parent

    def __len__(self):
        return len(self.parent)

    def num_types(self) -> int:
        """Number of distinct canonical types."""
        return sum(1 for label in self.parent if self.canonical(label) == label)


class HypothesisStore:
    """Per-sentence constituents keyed by span; one constituent per span.

    Labels are stored raw and resolved through ``registry`` on read, which is
    how a type merge reaches every constituent of the merged types.
    Constituents in one sentence may cross until selection removes that.
    """

    def __init__(self, registry: Optional[TypeRegistry] = None):
        self.registry = registry if registry is not None else TypeRegistry()
        self._spans: Dict[int, Dict[Span, int]] = defaultdict(dict)
        self.pairs_processed = 0
        self.discarded = 0

    def add(self, sentence: int, span, label: int):
        span = Span(*span)
        if span.begin < 0 or span.begin >= span.end:
            raise ValueError(f"sentence {sentence}: empty or negative span {tuple(span)}")
        if span in self._spans[sentence]:
            raise ValueError(f"sentence {sentence}: span {tuple(span)} already stored")
        self._spans[sentence][span] = label

    def get(self, sentence: int, span) -> Optional[int]:
        """Raw label stored at exactly ``span``, or None."""
        spans = self._spans.get(sentence)
        if not spans:
            return None
        return spans.get(Span(*span))

    def crosses_any(self, sentence: int, span) -> bool:
        return any(crosses(span, other) for other in self._spans.get(sentence, ()))

    def sentences(self) -> List[int]:
        return sorted(sid for sid, spans in self._spans.items() if spans)

    def spans(self, sentence: int) -> List[Span]:
        return sorted(self._spans.get(sentence, ()))

    def constituents(self, sentence: Optional[int] = None) -> List[Constituent]:
        """Constituents with canonical labels, sorted by (sentence, begin, end)."""
        sids = self.sentences() if sentence is None else [sentence]
        canonical = self.registry.canonical
        return [
            Constituent(sid, span, canonical(self._spans[sid][span]))
            for sid in sids
            for span in self.spans(sid)
        ]

    def __iter__(self) -> Iterator[Constituent]:
        return iter(self.constituents())

    def __len__(self):
        return sum(len(spans) for spans in self._spans.values())

    def __contains__(self, item):
        sentence, span = item
        return self.get(sentence, span) is not None
