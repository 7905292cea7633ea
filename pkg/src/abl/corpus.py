"""Sentences, corpora and their text formats.

Three formats are read and written:

* plain corpus: one whitespace-tokenized sentence per line;
* gold treebank: one Penn-style bracketed tree per line, e.g.
  ``(S (NP the man) (VP sleeps))``;
* span table: TSV with header ``#sent<TAB>begin<TAB>end<TAB>label``. This is
  the intermediate format between pipeline stages because hypothesis stores
  may contain crossing constituents, which no tree notation can express.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .store import HypothesisStore, Span, crosses

SPAN_HEADER = "#sent\tbegin\tend\tlabel"


class CorpusFormatError(ValueError):
    """Malformed input; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CrossingError(ValueError):
    pass


@dataclass(frozen=True)
class Sentence:
    id: int
    tokens: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise ValueError(f"sentence {self.id} has no tokens")

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(self.tokens)


@dataclass(frozen=True)
class Corpus:
    sentences: Tuple[Sentence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        for k, s in enumerate(self.sentences):
            if s.id != k:
                raise ValueError(f"sentence ids must be dense 0..n-1, found {s.id} at position {k}")

    @classmethod
    def from_tokens(cls, token_lists: Iterable[Sequence[str]]) -> "Corpus":
        return cls(tuple(Sentence(k, tuple(toks)) for k, toks in enumerate(token_lists)))

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, k):
        return self.sentences[k]


@dataclass(frozen=True)
class GoldTree:
    id: int
    tokens: Tuple[str, ...]
    spans: Dict[Span, str] = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class TreeCorpus:
    trees: Tuple[GoldTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __getitem__(self, k):
        return self.trees[k]


def _lines(text: Union[str, Iterable[str]]):
    if isinstance(text, str):
        return text.splitlines()
    return (line.rstrip("\n") for line in text)


def read_plain(text) -> Corpus:
    """One sentence per non-blank line, tokens split on runs of whitespace."""
    return Corpus.from_tokens(line.split() for line in _lines(text) if line.strip())


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_tree(line: str, lineno=None, sid=0) -> GoldTree:
    """Parse a single bracketed tree.

    A bracket's label is the token directly after ``(``; a bracket opened as
    ``( (`` is unlabelled and contributes no span (the usual treebank root
    wrapper). Unary chains over one span keep the outermost label.
    """
    tokens: List[str] = []
    spans: Dict[Span, str] = {}
    stack: List[Tuple[str, int]] = []
    seen_tree = False
    pieces = []
    for m in _TOKEN_RE.finditer(line):
        pieces.append((m.group(), m.start()))
    k = 0
    while k < len(pieces):
        piece, pos = pieces[k]
        if piece == "(":
            if seen_tree and not stack:
                raise CorpusFormatError("more than one tree on a line", lineno)
            seen_tree = True
            label = ""
            if k + 1 < len(pieces) and pieces[k + 1][0] not in "()":
                # "(S" is a label; "( S" is not valid Penn labelling
                nxt, npos = pieces[k + 1]
                if npos == pos + 1:
                    label = nxt
                    k += 1
            stack.append((label, len(tokens)))
        elif piece == ")":
            if not stack:
                raise CorpusFormatError("unbalanced parentheses: unexpected ')'", lineno)
            label, begin = stack.pop()
            if begin == len(tokens):
                raise CorpusFormatError("bracket with no leaves", lineno)
            if label:
                spans[Span(begin, len(tokens))] = label
        else:
            if not stack:
                raise CorpusFormatError(f"token {piece!r} outside any bracket", lineno)
            tokens.append(piece)
        k += 1
    if stack:
        raise CorpusFormatError("unbalanced parentheses: missing ')'", lineno)
    if not tokens:
        raise CorpusFormatError("tree has no leaves", lineno)
    return GoldTree(sid, tuple(tokens), spans)


def read_bracketed(text) -> TreeCorpus:
    trees = []
    for lineno, line in enumerate(_lines(text), 1):
        if line.strip():
            trees.append(parse_tree(line, lineno, len(trees)))
    return TreeCorpus(tuple(trees))


def strip_structure(gold: TreeCorpus) -> Corpus:
    return Corpus.from_tokens(tree.tokens for tree in gold)


def filter_min_length(corpus, min_len: int):
    """Keep sentences (or gold trees) of at least ``min_len`` tokens.

    Ids are re-densified in surviving order; works on Corpus and TreeCorpus.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    if isinstance(corpus, TreeCorpus):
        kept = [t for t in corpus if len(t.tokens) >= min_len]
        return TreeCorpus(tuple(GoldTree(k, t.tokens, t.spans) for k, t in enumerate(kept)))
    return Corpus.from_tokens(s.tokens for s in corpus if len(s) >= min_len)


def emit_spans(store: HypothesisStore, corpus=None) -> str:
    """Render the store as a span table with canonical labels."""
    out = [SPAN_HEADER]
    for c in store.constituents():
        if corpus is not None and c.span.end > len(corpus[c.sentence]):
            raise ValueError(f"sentence {c.sentence}: span {tuple(c.span)} out of bounds")
        out.append(f"{c.sentence}\t{c.span.begin}\t{c.span.end}\t{c.label}")
    return "\n".join(out) + "\n"


def read_spans(text, corpus=None) -> HypothesisStore:
    """Read a span table back into a store; labels are adopted as-is."""
    store = HypothesisStore()
    for lineno, line in enumerate(_lines(text), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise CorpusFormatError(f"expected 4 tab-separated fields, got {len(fields)}", lineno)
        try:
            sid, begin, end, label = (int(f) for f in fields)
        except ValueError:
            raise CorpusFormatError("non-integer field", lineno) from None
        if corpus is not None:
            if not 0 <= sid < len(corpus):
                raise CorpusFormatError(f"unknown sentence id {sid}", lineno)
            if end > len(corpus[sid]):
                raise CorpusFormatError(f"span ({begin}, {end}) exceeds sentence {sid}", lineno)
        try:
            store.add(sid, (begin, end), store.registry.register(label))
        except ValueError as e:
            raise CorpusFormatError(str(e), lineno) from None
    return store


def bracket_sentence(tokens: Sequence[str], constituents) -> str:
    """Render ``(begin, end, label)`` triples over ``tokens`` as nested brackets."""
    opens = [[] for _ in tokens]
    closes = [[] for _ in tokens]
    # outer brackets open first and close last
    for begin, end, label in sorted(constituents, key=lambda c: (c[0], -c[1])):
        opens[begin].append("(")
    for begin, end, label in sorted(constituents, key=lambda c: -c[0]):
        closes[end - 1].append(f")_{label}")
    return " ".join(
        "".join(opens[k]) + tok + "".join(closes[k]) for k, tok in enumerate(tokens)
    )


def emit_bracketed(store: HypothesisStore, corpus: Corpus) -> str:
    out = []
    for sentence in corpus:
        cons = store.constituents(sentence.id)
        for a in range(len(cons)):
            for b in range(a + 1, len(cons)):
                if crosses(cons[a].span, cons[b].span):
                    raise CrossingError(
                        f"sentence {sentence.id}: constituents {tuple(cons[a].span)} and "
                        f"{tuple(cons[b].span)} cross"
                    )
        out.append(bracket_sentence(sentence.tokens, [(c.span.begin, c.span.end, c.label) for c in cons]))
    return "".join(line + "\n" for line in out)
