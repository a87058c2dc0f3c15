"""Command-line interface: the ``minglish`` multi-command entry point.

Subcommands wire the pipeline end to end::

    train-aligner   fit the EM word aligner on a parallel corpus
    align           decode word alignments with a trained model
    generate        produce code-mixed sentences (JSONL + summary)
    cmi             score a generated JSONL file
    dcm-report      aggregate human ratings from a CSV
    transliterate   rewrite words between Roman and Devanagari

Exit codes: 0 success, 1 usage error, 2 data error.  In ``--strict``
mode any per-record diagnostic is promoted to a data error.

A JSON config file may supply the same keys as the flags (dashes or
underscores); explicit flags win.  Input paths starting with ``@data/``
resolve inside the installed package, e.g. ``@data/desk/parallel.tsv``
for the bundled demonstration corpus.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Callable, TextIO

from . import __version__
from .aligner import (
    AlignmentLinks,
    AlignmentModel,
    ParallelPair,
    align,
    apply_dictionary,
    load_model,
    save_model,
    serialize_pharaoh,
    train,
)
from .chunker import extract_phrases, lexicon_tag, load_pos, load_tag_lexicon
from .corpus_io import (
    CorpusDiagnostics,
    jsonl_line,
    load_alignments,
    load_dictionary,
    load_parallel,
    read_jsonl,
    write_jsonl,
)
from .errors import CorpusError, MinglishError, TranslitError
from .metrics import cmi as compute_cmi
from .metrics import dcm_report, load_dcm
from .mixer import PolicyMode, SubstitutionPolicy, apply_plan, plan_substitutions, render
from .tokenizer import ScriptKind, classify_kind
from .transliterator import (
    Direction,
    TranslitLexicon,
    TranslitRuleTable,
    dev_to_roman,
    invert_lexicon,
    load_lexicon,
    load_rules,
    transliterate_word,
)

_SHIPPED_RULES = {
    Direction.ROMAN_TO_DEVANAGARI: "roman_to_devanagari.rules.tsv",
    Direction.DEVANAGARI_TO_ROMAN: "devanagari_to_roman.rules.tsv",
}
_SHIPPED_LEXICON = "seed_lexicon.tsv"
_SHIPPED_TAG_LEXICON = "english_pos_lexicon.tsv"

_POLICIES = ("all", "rate", "target-cmi")
_SCRIPTS = ("devanagari", "latin")
_FORMATS = ("text", "json")
_DIRECTIONS = ("roman-to-devanagari", "devanagari-to-roman")


class UsageError(Exception):
    """Bad flags, bad config keys, or violated flag invariants."""


def _data_path(name: str) -> Path:
    return Path(str(resources.files(__package__) / "data")) / name


def _resolve(path: Path | None) -> Path | None:
    """Expand the @data/ prefix to the installed package data directory."""
    if path is None:
        return None
    text = str(path)
    if text.startswith("@data/"):
        return _data_path(text[len("@data/"):])
    return path


# ---------------------------------------------------------------------------
# Configuration


@dataclass(frozen=True)
class RunConfig:
    """Merged settings for one invocation (defaults < config file < flags)."""

    subcommand: str
    strict: bool = False
    jobs: int = 1
    dump_tokens: Path | None = None
    corpus: Path | None = None
    out: Path | None = None
    iterations: int = 5
    floor: float = 1e-6
    model: Path | None = None
    alignments: Path | None = None
    train_in_place: bool = False
    dictionary: Path | None = None
    pos: Path | None = None
    tag_lexicon: Path | None = None
    rules: Path | None = None
    reverse_rules: Path | None = None
    lexicon: Path | None = None
    no_lexicon: bool = False
    max_len: int = 3
    policy: str = "all"
    rate: float = 1.0
    target: float = 0.0
    seed: int = 0
    script: str = "devanagari"
    in_path: Path | None = None
    ratings: Path | None = None
    format: str = "text"
    direction: str = "roman-to-devanagari"
    words: tuple[str, ...] | None = None

    def validate(self) -> None:
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.iterations < 1:
            raise UsageError("--iterations must be at least 1")
        if self.floor < 0:
            raise UsageError("--floor must be non-negative")
        if self.max_len < 1:
            raise UsageError("--max-len must be at least 1")
        if not 0.0 <= self.rate <= 1.0:
            raise UsageError("--rate must be within [0, 1]")
        if not 0.0 <= self.target <= 1.0:
            raise UsageError("--target must be within [0, 1]")
        if self.policy not in _POLICIES:
            raise UsageError(f"--policy must be one of {', '.join(_POLICIES)}")
        if self.script not in _SCRIPTS:
            raise UsageError(f"--script must be one of {', '.join(_SCRIPTS)}")
        if self.format not in _FORMATS:
            raise UsageError(f"--format must be one of {', '.join(_FORMATS)}")
        if self.direction not in _DIRECTIONS:
            raise UsageError(f"--direction must be one of {', '.join(_DIRECTIONS)}")
        if self.subcommand == "generate":
            sources = [self.model is not None, self.alignments is not None,
                       self.train_in_place]
            if sum(sources) != 1:
                raise UsageError(
                    "generate needs exactly one alignment source: "
                    "--model, --alignments, or --train-in-place")

    def substitution_policy(self) -> SubstitutionPolicy:
        if self.policy == "rate":
            return SubstitutionPolicy.at_rate(self.rate, self.seed)
        if self.policy == "target-cmi":
            return SubstitutionPolicy.toward_cmi(self.target, self.seed)
        return SubstitutionPolicy(mode=PolicyMode.ALL, seed=self.seed)


_PATH_FIELDS = {"dump_tokens", "corpus", "out", "model", "alignments",
                "dictionary", "pos", "tag_lexicon", "rules", "reverse_rules",
                "lexicon", "in_path", "ratings"}
_INT_FIELDS = {"jobs", "iterations", "max_len", "seed"}
_FLOAT_FIELDS = {"floor", "rate", "target"}
_BOOL_FIELDS = {"strict", "train_in_place", "no_lexicon"}

# Per-subcommand settings beyond the common strict/jobs/dump_tokens trio.
_SUBCOMMAND_KEYS: dict[str, tuple[set[str], set[str]]] = {
    # (required keys, optional keys)
    "train-aligner": ({"corpus", "out"}, {"iterations", "floor"}),
    "align": ({"corpus", "model"}, {"dictionary", "out"}),
    "generate": ({"corpus"},
                 {"model", "alignments", "train_in_place", "iterations",
                  "floor", "dictionary", "pos", "tag_lexicon", "rules",
                  "reverse_rules", "lexicon", "no_lexicon", "max_len",
                  "policy", "rate", "target", "seed", "script", "out"}),
    "cmi": ({"in_path"}, {"out"}),
    "dcm-report": ({"ratings"}, {"format", "out"}),
    "transliterate": (set(),
                      {"direction", "rules", "lexicon", "no_lexicon",
                       "words"}),
}
_COMMON_KEYS = {"strict", "jobs", "dump_tokens"}


def _coerce(key: str, value):
    """Convert a config-file value to the field's type."""
    if key in _BOOL_FIELDS:
        if not isinstance(value, bool):
            raise UsageError(f"config key {key!r} must be true or false")
        return value
    if key in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"config key {key!r} must be an integer")
        return value
    if key in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise UsageError(f"config key {key!r} must be a number")
        return float(value)
    if key in _PATH_FIELDS:
        if not isinstance(value, str):
            raise UsageError(f"config key {key!r} must be a path string")
        return Path(value)
    if key == "words":
        if (not isinstance(value, list)
                or any(not isinstance(w, str) for w in value)):
            raise UsageError("config key 'words' must be a list of strings")
        return tuple(value)
    if not isinstance(value, str):
        raise UsageError(f"config key {key!r} must be a string")
    return value


def _load_config_file(path: Path) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"--config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config {path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"--config {path}: top level must be a JSON object")
    return raw


def build_config(subcommand: str, namespace: argparse.Namespace) -> RunConfig:
    """Merge defaults, config-file values, and explicit flags."""
    given = {k: v for k, v in vars(namespace).items()
             if k not in ("config", "subcommand")}
    required, optional = _SUBCOMMAND_KEYS[subcommand]
    allowed = required | optional | _COMMON_KEYS

    merged: dict = {}
    config_path = getattr(namespace, "config", None)
    if config_path is not None:
        for raw_key, value in _load_config_file(Path(config_path)).items():
            key = raw_key.replace("-", "_")
            if key == "in":
                key = "in_path"
            if key not in allowed:
                raise UsageError(
                    f"--config: unknown key {raw_key!r} for {subcommand}")
            merged[key] = _coerce(key, value)
    merged.update(given)

    for key in sorted(required):
        if merged.get(key) is None:
            flag = "--in" if key == "in_path" else "--" + key.replace("_", "-")
            raise UsageError(f"{subcommand} requires {flag}")

    if "words" in merged and merged["words"] is not None:
        # An empty word list means "read stdin", same as no words at all.
        merged["words"] = tuple(merged["words"]) or None
    for key in _PATH_FIELDS:
        if merged.get(key) is not None:
            merged[key] = Path(merged[key])

    valid_names = {f.name for f in fields(RunConfig)}
    merged = {k: v for k, v in merged.items() if k in valid_names}
    config = RunConfig(subcommand=subcommand, **merged)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Argument parser


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


_FORMAT_NOTES = """\
file formats:
  parallel corpus   TSV `id<TAB>english<TAB>marathi`; `#` comments and blank
                    lines ignored; UTF-8
  alignment file    one Pharaoh line (`e-m` pairs, 0-based word indices) per
                    loaded corpus record, in corpus order; blank line = none
  dictionary        TSV `marathi<TAB>english[,english...]`, glosses in
                    priority order
  pos file          blocks of `surface<TAB>TAG` lines introduced by
                    `# id = <pair-id>`; blank line ends a block
  rule table        TSV `pattern<TAB>replacement<TAB>position` with position
                    one of initial|final|any
  lexicon           TSV `english<TAB>devanagari`, whole-word overrides
  ratings           CSV with header `pair_id,rater_id,score`, scores 0..10
  output JSONL      one object per sentence with keys id, devanagari, latin,
                    tokens, replacements, cmi

paths:
  an input path starting with `@data/` resolves inside the installed
  package, e.g. `@data/desk/parallel.tsv` (bundled demonstration corpus),
  `@data/desk/pos.tsv`, `@data/desk/dictionary.tsv`,
  `@data/desk/alignments.txt`, `@data/desk/ratings.csv`.
"""


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="JSON", default=None,
                        help="JSON file with the same keys as the flags; "
                             "explicit flags win")
    parser.add_argument("--strict", action="store_true",
                        default=argparse.SUPPRESS,
                        help="promote any diagnostic to a data-error exit")
    parser.add_argument("--jobs", type=int, metavar="N",
                        default=argparse.SUPPRESS,
                        help="worker threads for per-sentence stages; "
                             "output order is always input order (default 1)")
    parser.add_argument("--dump-tokens", metavar="TSV", dest="dump_tokens",
                        default=argparse.SUPPRESS,
                        help="write token dumps (index, surface, kind, "
                             "script) for every loaded sentence")


def make_parser() -> _Parser:
    parser = _Parser(
        prog="minglish",
        description="Generate and evaluate Marathi-English code-mixed text.",
        epilog=_FORMAT_NOTES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True,
                                       metavar="SUBCOMMAND")

    def sub(name: str, help_text: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(
            name, help=help_text, description=help_text,
            epilog=_FORMAT_NOTES,
            formatter_class=argparse.RawDescriptionHelpFormatter)
        _add_common(p)
        return p

    p = sub("train-aligner", "Fit the EM word aligner and save the model.")
    p.add_argument("--corpus", metavar="TSV", default=argparse.SUPPRESS,
                   help="parallel corpus")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS,
                   help="where to save the model")
    p.add_argument("--iterations", type=int, metavar="N",
                   default=argparse.SUPPRESS, help="EM iterations (default 5)")
    p.add_argument("--floor", type=float, metavar="F",
                   default=argparse.SUPPRESS,
                   help="additive smoothing floor (default 1e-6)")

    p = sub("align", "Decode word alignments as Pharaoh lines.")
    p.add_argument("--corpus", metavar="TSV", default=argparse.SUPPRESS,
                   help="parallel corpus")
    p.add_argument("--model", metavar="PATH", default=argparse.SUPPRESS,
                   help="trained aligner model")
    p.add_argument("--dictionary", metavar="TSV", default=argparse.SUPPRESS,
                   help="gloss dictionary applied on top of the model")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS,
                   help="output file (default: stdout)")

    p = sub("generate", "Generate code-mixed sentences end to end.")
    p.add_argument("--corpus", metavar="TSV", default=argparse.SUPPRESS,
                   help="parallel corpus")
    p.add_argument("--model", metavar="PATH", default=argparse.SUPPRESS,
                   help="alignment source: trained aligner model")
    p.add_argument("--alignments", metavar="PATH", default=argparse.SUPPRESS,
                   help="alignment source: external alignment file")
    p.add_argument("--train-in-place", action="store_true",
                   dest="train_in_place", default=argparse.SUPPRESS,
                   help="alignment source: train the aligner on this corpus")
    p.add_argument("--iterations", type=int, metavar="N",
                   default=argparse.SUPPRESS,
                   help="EM iterations for --train-in-place (default 5)")
    p.add_argument("--floor", type=float, metavar="F",
                   default=argparse.SUPPRESS,
                   help="smoothing floor for --train-in-place (default 1e-6)")
    p.add_argument("--dictionary", metavar="TSV", default=argparse.SUPPRESS,
                   help="gloss dictionary applied on top of alignments")
    p.add_argument("--pos", metavar="FILE", default=argparse.SUPPRESS,
                   help="part-of-speech file for the English side "
                        "(default: tag lexicon fallback)")
    p.add_argument("--tag-lexicon", metavar="TSV", dest="tag_lexicon",
                   default=argparse.SUPPRESS,
                   help="word->tag lexicon for the fallback tagger "
                        "(default: shipped English lexicon)")
    p.add_argument("--rules", metavar="TSV", default=argparse.SUPPRESS,
                   help="Roman->Devanagari rule table (default: shipped)")
    p.add_argument("--reverse-rules", metavar="TSV", dest="reverse_rules",
                   default=argparse.SUPPRESS,
                   help="Devanagari->Roman rule table for the Latin "
                        "rendering (default: shipped)")
    p.add_argument("--lexicon", metavar="TSV", default=argparse.SUPPRESS,
                   help="transliteration lexicon (default: shipped)")
    p.add_argument("--no-lexicon", action="store_true", dest="no_lexicon",
                   default=argparse.SUPPRESS,
                   help="transliterate by rules only")
    p.add_argument("--max-len", type=int, metavar="N", dest="max_len",
                   default=argparse.SUPPRESS,
                   help="maximum phrase length in words (default 3)")
    p.add_argument("--policy", choices=_POLICIES, default=argparse.SUPPRESS,
                   help="substitution policy (default all)")
    p.add_argument("--rate", type=float, metavar="P",
                   default=argparse.SUPPRESS,
                   help="site acceptance probability for --policy rate "
                        "(default 1.0)")
    p.add_argument("--target", type=float, metavar="C",
                   default=argparse.SUPPRESS,
                   help="stop threshold for --policy target-cmi (default 0.0)")
    p.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS,
                   help="seed for site sampling (default 0)")
    p.add_argument("--script", choices=_SCRIPTS, default=argparse.SUPPRESS,
                   help="script for the plain-text echo when --out is given "
                        "(default devanagari)")
    p.add_argument("--out", metavar="JSONL", default=argparse.SUPPRESS,
                   help="JSONL output file; when given, the selected-script "
                        "text is echoed to stdout (default: JSONL to stdout)")

    p = sub("cmi", "Score a generated JSONL file sentence by sentence.")
    p.add_argument("--in", metavar="JSONL", dest="in_path",
                   default=argparse.SUPPRESS, help="generated JSONL file")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS,
                   help="output file (default: stdout)")

    p = sub("dcm-report", "Aggregate human ratings from a CSV file.")
    p.add_argument("--ratings", metavar="CSV", default=argparse.SUPPRESS,
                   help="ratings CSV")
    p.add_argument("--format", choices=_FORMATS, default=argparse.SUPPRESS,
                   help="report format (default text)")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS,
                   help="output file (default: stdout)")

    p = sub("transliterate", "Rewrite words between Roman and Devanagari.")
    p.add_argument("words", nargs="*", default=argparse.SUPPRESS,
                   help="words to transliterate (default: read stdin lines)")
    p.add_argument("--direction", choices=_DIRECTIONS,
                   default=argparse.SUPPRESS,
                   help="rewrite direction (default roman-to-devanagari)")
    p.add_argument("--rules", metavar="TSV", default=argparse.SUPPRESS,
                   help="rule table (default: shipped table for the "
                        "direction)")
    p.add_argument("--lexicon", metavar="TSV", default=argparse.SUPPRESS,
                   help="whole-word lexicon (default: shipped; inverted for "
                        "devanagari-to-roman)")
    p.add_argument("--no-lexicon", action="store_true", dest="no_lexicon",
                   default=argparse.SUPPRESS,
                   help="transliterate by rules only")

    return parser


# ---------------------------------------------------------------------------
# Shared helpers


def _print_diagnostics(diagnostics: CorpusDiagnostics, strict: bool,
                       err: TextIO) -> None:
    for item in diagnostics.items:
        print(f"{item.severity}: {item.record}: {item.message}", file=err)
    if strict and diagnostics.items:
        raise CorpusError(
            f"strict mode: {len(diagnostics.items)} diagnostic(s)")


def _dump_token_file(pairs: list[ParallelPair], path: Path) -> None:
    lines = ["index\tsurface\tkind\tscript"]
    for pair in pairs:
        for side, sentence in (("english", pair.english),
                               ("marathi", pair.marathi)):
            lines.append(f"# id = {pair.id} {side}")
            for index, token in enumerate(sentence.tokens):
                lines.append(f"{index}\t{token.surface}\t{token.kind.value}"
                             f"\t{token.script.value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_corpus(config: RunConfig, err: TextIO) -> list[ParallelPair]:
    pairs, diagnostics = load_parallel(_resolve(config.corpus))
    _print_diagnostics(diagnostics, config.strict, err)
    if not pairs:
        raise CorpusError(f"{config.corpus}: no loadable records")
    if config.dump_tokens is not None:
        _dump_token_file(pairs, config.dump_tokens)
    return pairs


def _map_ordered(function: Callable, items: list, jobs: int) -> list:
    """Apply function to items, preserving order; threads when jobs > 1."""
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


def _write_lines(lines: list[str], out: Path | None, stdout: TextIO) -> None:
    if out is None:
        for line in lines:
            print(line, file=stdout)
    else:
        Path(out).write_text("".join(line + "\n" for line in lines),
                             encoding="utf-8")


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_train_aligner(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    pairs = _load_corpus(config, err)
    model = train(pairs, iterations=config.iterations, floor=config.floor)
    for index, value in enumerate(model.log_likelihoods, 1):
        print(f"iteration {index}: log-likelihood {value:.6f}", file=err)
    save_model(model, config.out)
    print(f"trained on {len(pairs)} pairs "
          f"({model.english_vocab_size} english x "
          f"{model.marathi_vocab_size} marathi words); "
          f"model saved to {config.out}", file=err)
    return 0


def _load_gloss_dictionary(config: RunConfig, err: TextIO):
    if config.dictionary is None:
        return None
    glosses, diagnostics = load_dictionary(_resolve(config.dictionary))
    _print_diagnostics(diagnostics, config.strict, err)
    return glosses


def _cmd_align(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    pairs = _load_corpus(config, err)
    model = load_model(_resolve(config.model))
    glosses = _load_gloss_dictionary(config, err)

    def decode(pair: ParallelPair) -> str:
        links = align(model, pair)
        if glosses is not None:
            links = apply_dictionary(links, pair, glosses)
        return serialize_pharaoh(links)

    lines = _map_ordered(decode, pairs, config.jobs)
    _write_lines(lines, config.out, stdout)
    print(f"aligned {len(pairs)} pairs", file=err)
    return 0


def _links_for_pairs(config: RunConfig, pairs: list[ParallelPair],
                     err: TextIO) -> dict[str, AlignmentLinks]:
    if config.model is not None:
        model = load_model(_resolve(config.model))
        return {pair.id: align(model, pair) for pair in pairs}
    if config.alignments is not None:
        by_id, diagnostics = load_alignments(_resolve(config.alignments), pairs)
        _print_diagnostics(diagnostics, config.strict, err)
        return by_id
    model = train(pairs, iterations=config.iterations, floor=config.floor)
    print(f"trained aligner in place: {config.iterations} iterations, "
          f"final log-likelihood {model.log_likelihoods[-1]:.6f}", file=err)
    return {pair.id: align(model, pair) for pair in pairs}


def _tagger(config: RunConfig, pairs: list[ParallelPair],
            err: TextIO) -> Callable[[ParallelPair], list]:
    """Build a function mapping a pair to its English word tags."""
    blocks: dict = {}
    if config.pos is not None:
        expected = {pair.id: pair.english.word_surfaces() for pair in pairs}
        blocks, problems = load_pos(_resolve(config.pos), expected,
                                    strict=config.strict)
        for message in problems:
            print(f"warning: {message}", file=err)
        if config.strict and problems:
            raise CorpusError(f"strict mode: {len(problems)} diagnostic(s)")
    lexicon = load_tag_lexicon(_resolve(config.tag_lexicon)
                               or _data_path(_SHIPPED_TAG_LEXICON))

    def tags_for(pair: ParallelPair):
        block = blocks.get(pair.id)
        if block is not None:
            return [tag for _, tag in block]
        return lexicon_tag(pair.english.word_surfaces(), lexicon)

    return tags_for


def _cmd_generate(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    pairs = _load_corpus(config, err)
    links_by_id = _links_for_pairs(config, pairs, err)
    glosses = _load_gloss_dictionary(config, err)
    tags_for = _tagger(config, pairs, err)

    rules = load_rules(
        _resolve(config.rules)
        or _data_path(_SHIPPED_RULES[Direction.ROMAN_TO_DEVANAGARI]),
        Direction.ROMAN_TO_DEVANAGARI)
    reverse_rules = load_rules(
        _resolve(config.reverse_rules)
        or _data_path(_SHIPPED_RULES[Direction.DEVANAGARI_TO_ROMAN]),
        Direction.DEVANAGARI_TO_ROMAN)
    lexicon = None
    if not config.no_lexicon:
        lexicon = load_lexicon(_resolve(config.lexicon)
                               or _data_path(_SHIPPED_LEXICON),
                               Direction.ROMAN_TO_DEVANAGARI)
    policy = config.substitution_policy()

    def produce(pair: ParallelPair):
        notes: list[str] = []
        links = links_by_id[pair.id]
        if glosses is not None:
            links = apply_dictionary(links, pair, glosses)
        phrases = extract_phrases(tags_for(pair), max_len=config.max_len)
        plan = plan_substitutions(pair, links, phrases, policy, notes)
        sentence = apply_plan(pair, plan, rules, lexicon)
        devanagari = render(sentence, ScriptKind.DEVANAGARI)
        latin = render(sentence, ScriptKind.LATIN, reverse_rules)
        return sentence, devanagari, latin, notes

    produced = _map_ordered(produce, pairs, config.jobs)
    rows = [(sentence, devanagari, latin)
            for sentence, devanagari, latin, _ in produced]
    for _, _, _, notes in produced:
        for note in notes:
            print(f"note: {note}", file=err)

    if config.out is not None:
        write_jsonl(rows, config.out)
        column = 1 if config.script == "devanagari" else 2
        for row in rows:
            print(row[column], file=stdout)
    else:
        for sentence, devanagari, latin in rows:
            print(jsonl_line(sentence, devanagari, latin), file=stdout)

    mean = (sum(sentence.cmi for sentence, _, _ in rows) / len(rows)
            if rows else 0.0)
    print(f"generated {len(rows)} sentences; mean CMI {mean:.4f}", file=err)
    return 0


def _cmd_cmi(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    rows = read_jsonl(_resolve(config.in_path))
    lines = []
    values = []
    mismatches = 0
    for sentence, _, _ in rows:
        tags = [(classify_kind(token.surface), token.lang)
                for token in sentence.out_tokens]
        score = compute_cmi(tags)
        if abs(score.value - sentence.cmi) > 1e-9:
            mismatches += 1
            print(f"warning: {sentence.pair_id}: stored cmi {sentence.cmi} "
                  f"disagrees with recomputed {score.value}", file=err)
        values.append(score.value)
        lines.append(f"{sentence.pair_id}\t{score.embedded_words}"
                     f"\t{score.total_words}\t{score.value:.4f}")
    if config.strict and mismatches:
        raise CorpusError(f"strict mode: {mismatches} cmi mismatch(es)")
    _write_lines(lines, config.out, stdout)
    if values:
        print(f"mean CMI {sum(values) / len(values):.4f} "
              f"over {len(values)} sentences", file=err)
    else:
        print("no sentences", file=err)
    return 0


def _cmd_dcm_report(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    records = load_dcm(_resolve(config.ratings))
    report = dcm_report(records)
    raters = len({record.rater_id for record in records})
    if config.format == "json":
        payload = {
            "count": len(records),
            "raters": raters,
            "pairs": len(report.per_pair_mean),
            "mean": report.mean,
            "median": report.median,
            "histogram": list(report.histogram),
            "per_pair_mean": dict(sorted(report.per_pair_mean.items())),
        }
        lines = [json.dumps(payload, ensure_ascii=False)]
    else:
        lines = [
            f"ratings: {len(records)}",
            f"raters: {raters}",
            f"pairs: {len(report.per_pair_mean)}",
            f"mean: {report.mean:.3f}",
            f"median: {report.median:.3f}",
            "histogram:",
        ]
        lines += [f"  {score:>2}: {count}"
                  for score, count in enumerate(report.histogram)]
        lines.append("per-pair mean:")
        lines += [f"  {pair_id}: {value:.3f}"
                  for pair_id, value in sorted(report.per_pair_mean.items())]
    _write_lines(lines, config.out, stdout)
    return 0


def _transliterate_chunk(chunk: str, direction: Direction,
                         table: TranslitRuleTable,
                         lexicon: TranslitLexicon | None,
                         notes: list[str]) -> str:
    if direction is Direction.ROMAN_TO_DEVANAGARI:
        passthroughs: list = []
        try:
            result = transliterate_word(chunk, table, lexicon, passthroughs)
        except TranslitError as exc:
            notes.append(str(exc))
            return chunk
        for item in passthroughs:
            notes.append(f"no rule for {item.char!r} in {item.word!r} "
                         f"at index {item.index}")
        return result
    hit = lexicon.get(chunk) if lexicon is not None else None
    return hit if hit is not None else dev_to_roman(chunk, table)


def _cmd_transliterate(config: RunConfig, stdout: TextIO, err: TextIO) -> int:
    direction = (Direction.ROMAN_TO_DEVANAGARI
                 if config.direction == "roman-to-devanagari"
                 else Direction.DEVANAGARI_TO_ROMAN)
    table = load_rules(_resolve(config.rules)
                       or _data_path(_SHIPPED_RULES[direction]), direction)
    lexicon = None
    if not config.no_lexicon:
        if config.lexicon is not None:
            lexicon = load_lexicon(_resolve(config.lexicon), direction)
        else:
            lexicon = load_lexicon(_data_path(_SHIPPED_LEXICON),
                                   Direction.ROMAN_TO_DEVANAGARI)
            if direction is Direction.DEVANAGARI_TO_ROMAN:
                lexicon = invert_lexicon(lexicon)

    notes: list[str] = []

    def do_line(text: str) -> str:
        return " ".join(_transliterate_chunk(chunk, direction, table,
                                             lexicon, notes)
                        for chunk in text.split())

    if config.words is not None:
        print(do_line(" ".join(config.words)), file=stdout)
    else:
        for raw_line in sys.stdin:
            print(do_line(raw_line.rstrip("\n")), file=stdout)

    for note in notes:
        print(f"note: {note}", file=err)
    if config.strict and notes:
        raise TranslitError(f"strict mode: {len(notes)} "
                            f"transliteration problem(s)")
    return 0


_HANDLERS = {
    "train-aligner": _cmd_train_aligner,
    "align": _cmd_align,
    "generate": _cmd_generate,
    "cmi": _cmd_cmi,
    "dcm-report": _cmd_dcm_report,
    "transliterate": _cmd_transliterate,
}


def run(argv: list[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    """Parse argv and execute one subcommand; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = make_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = build_config(namespace.subcommand, namespace)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 1
    try:
        return _HANDLERS[config.subcommand](config, out, err)
    except MinglishError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
