"""Command-line front end.

    abl learn CORPUS            plain corpus -> span table of hypotheses
    abl select SPANS CORPUS     span table -> non-crossing span table
    abl eval SPANS GOLD         score a span table against a treebank
    abl baseline GOLD           score left/right branching trees
    abl run GOLD                strip, learn, select, evaluate; repeat
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .align import CostConfig
from .corpus import (
    emit_bracketed, emit_spans, filter_min_length, read_bracketed, read_plain, read_spans,
    strip_structure,
)
from .learn import LearnConfig, alignment_learning
from .metrics import evaluate, evaluate_baseline
from .pipeline import run_protocol
from .select import Scorer, apply_selection

log = logging.getLogger("abl")


@dataclass
class RunConfig:
    command: str = "run"
    inputs: List[str] = field(default_factory=list)
    out: Optional[str] = None
    mode: str = "branch"
    seed: int = 0
    repeats: int = 1
    bias: float = CostConfig.bias_weight
    min_len: int = 2
    format: str = "spans"
    side: str = "right"
    keep_order: bool = False

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("--repeats must be >= 1")
        if self.min_len < 1:
            raise ValueError("--min-len must be >= 1")

    @property
    def cost(self) -> CostConfig:
        return CostConfig(bias_weight=self.bias)


def _read(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _plain(path, config):
    return filter_min_length(read_plain(_read(path)), config.min_len)


def _gold(path, config):
    return filter_min_length(read_bracketed(_read(path)), config.min_len)


def _render(store, corpus, config) -> str:
    if config.format == "brackets":
        return emit_bracketed(store, corpus)
    return emit_spans(store, corpus)


def cmd_learn(corpus_path, config: RunConfig):
    """Returns ``(output text, summary line)``."""
    corpus = _plain(corpus_path, config)
    if config.mode == "incr":
        learn = LearnConfig("incr", None if config.keep_order else config.seed, config.cost)
    else:
        learn = LearnConfig("all", None, config.cost)
    store, registry = alignment_learning(corpus, learn)
    summary = (
        f"sentences={len(corpus)} pairs={store.pairs_processed} hypotheses={len(store)} "
        f"types={registry.num_types()} discarded={store.discarded}"
    )
    return _render(store, corpus, config), summary


def cmd_select(spans_path, corpus_path, config: RunConfig) -> str:
    if config.mode == "incr":
        raise ValueError("incr resolves overlaps while learning; select needs --mode leaf or branch")
    corpus = _plain(corpus_path, config)
    store = read_spans(_read(spans_path), corpus)
    selected = apply_selection(store, Scorer(store, corpus, config.mode), config.seed)
    return _render(selected, corpus, config)


def cmd_eval(spans_path, gold_path, config: RunConfig) -> str:
    gold = _gold(gold_path, config)
    corpus = strip_structure(gold)
    store = read_spans(_read(spans_path), corpus)
    return str(evaluate(store, gold, corpus))


def cmd_baseline(gold_path, config: RunConfig) -> str:
    return str(evaluate_baseline(_gold(gold_path, config), config.side))


def cmd_run(gold_path, config: RunConfig) -> str:
    gold = read_bracketed(_read(gold_path))
    summary = run_protocol(gold, config.mode, config.seed, config.repeats, config.cost, config.min_len)
    return summary.render()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abl", description="Alignment-based grammar induction.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, modes=("incr", "leaf", "branch"), fmt=True):
        p.add_argument("--mode", choices=modes, default="branch")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--min-len", type=int, default=2, dest="min_len",
                       help="drop sentences shorter than this (default 2; 1 keeps all)")
        p.add_argument("--out", help="output file (default stdout)")
        if fmt:
            p.add_argument("--format", choices=("spans", "brackets"), default="spans")

    p = sub.add_parser("learn", help="align all sentence pairs and store hypotheses")
    p.add_argument("corpus")
    common(p)
    p.add_argument("--bias", type=float, default=CostConfig.bias_weight)
    p.add_argument("--keep-order", action="store_true", help="incr: do not shuffle sentence order")

    p = sub.add_parser("select", help="choose the best non-crossing hypotheses")
    p.add_argument("spans")
    p.add_argument("corpus")
    common(p)

    p = sub.add_parser("eval", help="NCBP/NCBR/ZCS of a span table against gold trees")
    p.add_argument("spans")
    p.add_argument("gold")
    p.add_argument("--min-len", type=int, default=2, dest="min_len")
    p.add_argument("--out")

    p = sub.add_parser("baseline", help="score left- or right-branching trees")
    p.add_argument("gold")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--min-len", type=int, default=2, dest="min_len")
    p.add_argument("--out")

    p = sub.add_parser("run", help="strip gold, learn, select and evaluate, repeatedly")
    p.add_argument("gold")
    common(p, fmt=False)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--bias", type=float, default=CostConfig.bias_weight)
    return parser


def _config(args) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    values = {k: v for k, v in vars(args).items() if k in keys}
    return RunConfig(**values)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        config = _config(args)
        if args.command == "learn":
            output, summary = cmd_learn(args.corpus, config)
            print(summary, file=sys.stderr)
        elif args.command == "select":
            output = cmd_select(args.spans, args.corpus, config)
        elif args.command == "eval":
            output = cmd_eval(args.spans, args.gold, config)
        elif args.command == "baseline":
            output = cmd_baseline(args.gold, config)
        else:
            output = cmd_run(args.gold, config)
        if config.out:
            Path(config.out).write_text(output, encoding="utf-8")
        else:
            sys.stdout.write(output)
    except (ValueError, KeyError, OSError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"abl: error: {message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
