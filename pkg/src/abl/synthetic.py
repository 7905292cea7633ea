"""A small flight-information grammar for generating test treebanks.

The trees are mostly right branching, as English is, with occasional
noun-phrase coordination so that recursive structure occurs. Output is one
bracketed tree per line, readable by :func:`abl.corpus.read_bracketed`.
"""

import random
from importlib import resources

CITIES = ["boston", "denver", "dallas", "atlanta", "pittsburgh", "baltimore",
          "san francisco", "philadelphia", "oakland", "new york"]
DAYS = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]
NOUNS = ["flights", "fares", "flight", "fare", "meals", "airlines", "seats", "tickets"]
ADJS = ["cheapest", "nonstop", "morning", "evening", "earliest", "latest", "first", "direct"]
DETS = ["the", "the", "all", "a", "any"]
AIRLINES = ["delta", "united", "american", "continental"]


def _city(rng):
    return f"(NP {rng.choice(CITIES)})"


def _pp(rng):
    kind = rng.random()
    if kind < 0.65:
        pps = (f"(PP from {_city(rng)})", f"(PP to {_city(rng)})")
        if rng.random() < 0.3:
            pps += (f"(PP on (NP {rng.choice(DAYS)}))",)
        return pps
    if kind < 0.75:
        return (f"(PP to {_city(rng)})",)
    if kind < 0.9:
        return (f"(PP on (NP {rng.choice(DAYS)}))",)
    return (f"(PP in (NP the {rng.choice(['morning', 'evening', 'afternoon'])}))",)


def _np(rng, depth=0):
    words = [rng.choice(DETS)]
    if rng.random() < 0.75:
        words.append(rng.choice(ADJS))
    if rng.random() < 0.15:
        words.append(rng.choice(AIRLINES))
    words.append(rng.choice(NOUNS))
    base = f"(NP {' '.join(words)})"
    if depth == 0 and rng.random() < 0.08:
        return f"(NP {base} and {_np(rng, depth + 1)})"
    if rng.random() < 0.8:
        return f"(NP {base} {' '.join(_pp(rng))})"
    return base


def generate_tree(rng: random.Random) -> str:
    pattern = rng.randrange(7)
    if pattern == 0:
        return f"(S (VP show (NP me) {_np(rng)}))"
    if pattern == 1:
        return f"(S (VP list {_np(rng)}))"
    if pattern == 2:
        return f"(SBARQ (WHNP what) (SQ is {_np(rng)}))"
    if pattern == 3:
        pps = " ".join(_pp(rng))
        return f"(S (NP i) (VP want (VP to (VP fly {pps}))))"
    if pattern == 4:
        return f"(S (VP give (NP me) {_np(rng)}))"
    if pattern == 5:
        return f"(S (VP book {_np(rng)}))"
    pps = " ".join(_pp(rng))
    return f"(SBARQ (WHNP which airlines) (SQ (VP fly {pps})))"


def generate_treebank(n: int, seed: int = 0):
    rng = random.Random(seed)
    return [generate_tree(rng) for _ in range(n)]


BUNDLED_SIZE = 300
BUNDLED_SEED = 1999


def bundled_treebank_text() -> str:
    """The packaged 300-sentence treebank (``generate_treebank(300, 1999)``)."""
    return resources.files("abl.data").joinpath("synthetic.mrg").read_text(encoding="utf-8")
