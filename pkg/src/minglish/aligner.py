"""Lexical translation alignment between English and Marathi sentences.

The model is a word-translation table t(marathi | english) trained with
expectation-maximization over a parallel corpus, with a distinguished
NULL source word that absorbs Marathi words no English word explains.
English is the conditioning side throughout.  Decoding picks, for every
Marathi word, the English word with the highest table entry; NULL wins
ties, and ties between English positions go to the smallest index, so
alignment is fully deterministic.

English word forms are case-folded before they reach the table;
Devanagari has no case.  Reduction runs in corpus order so repeated
training runs on the same input produce bit-identical tables.

Alignment links index word tokens only.  Punctuation and digit runs are
invisible to the aligner.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import AlignerError, PharaohParseError
from .tokenizer import Sentence, TokenKind

NULL_WORD = "<NULL>"

_MODEL_HEADER = "minglish-alignment-model\tv1"


class LinkSource(Enum):
    MODEL = "model"
    DICTIONARY = "dictionary"
    EXTERNAL = "external"


@dataclass(frozen=True)
class ParallelPair:
    """One sentence pair; id is the corpus-supplied identifier."""

    id: str
    english: Sentence
    marathi: Sentence

    def english_forms(self) -> list[str]:
        return [t.surface.casefold() for t in self.english.tokens if t.kind is TokenKind.WORD]

    def marathi_forms(self) -> list[str]:
        return [t.surface for t in self.marathi.tokens if t.kind is TokenKind.WORD]


@dataclass
class AlignmentLinks:
    """Links between English and Marathi word-token indices.

    links maps (english_index, marathi_index) to the source that
    produced the link; the mapping doubles as a duplicate-free set.
    """

    pair_id: str
    links: dict[tuple[int, int], LinkSource] = field(default_factory=dict)

    def pairs(self) -> set[tuple[int, int]]:
        return set(self.links)


@dataclass
class AlignmentModel:
    ttable: dict[str, dict[str, float]]
    iteration_count: int
    english_vocab_size: int
    marathi_vocab_size: int
    log_likelihoods: list[float] = field(default_factory=list)


BilingualDictionary = dict[str, list[str]]


def train(corpus: list[ParallelPair], iterations: int = 5, floor: float = 1e-6) -> AlignmentModel:
    """Train the translation table with EM.

    floor is an additive smoothing constant applied in every M-step so
    no observed pairing collapses to exactly zero.  Each table row is
    renormalized over its own support, hence always sums to one.  The
    returned model records one corpus log-likelihood per iteration,
    evaluated under the parameters entering that iteration; the series
    never decreases.
    """
    if not corpus:
        raise AlignerError("training corpus is empty")
    if iterations < 1:
        raise AlignerError("iterations must be at least 1")
    if floor < 0:
        raise AlignerError("floor must be non-negative")
    tokenized: list[tuple[list[str], list[str]]] = []
    m_vocab: set[str] = set()
    e_vocab: set[str] = set()
    for pair in corpus:
        e_words = pair.english_forms()
        m_words = pair.marathi_forms()
        if not e_words or not m_words:
            side = "english" if not e_words else "marathi"
            raise AlignerError(f"pair {pair.id!r} has no word tokens on the {side} side")
        tokenized.append((e_words, m_words))
        e_vocab.update(e_words)
        m_vocab.update(m_words)

    uniform = 1.0 / len(m_vocab)
    ttable: dict[str, dict[str, float]] = defaultdict(dict)
    for e_words, m_words in tokenized:
        for e in [NULL_WORD] + e_words:
            row = ttable[e]
            for m in m_words:
                row[m] = uniform
    support = {e: len(row) for e, row in ttable.items()}

    history: list[float] = []
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = {e: defaultdict(float) for e in ttable}
        totals: dict[str, float] = defaultdict(float)
        log_likelihood = 0.0
        for e_words, m_words in tokenized:
            source = [NULL_WORD] + e_words
            for m in m_words:
                z = 0.0
                for e in source:
                    z += ttable[e].get(m, 0.0)
                log_likelihood += math.log(z / len(source))
                for e in source:
                    p = ttable[e].get(m, 0.0)
                    if p:
                        c = p / z
                        counts[e][m] += c
                        totals[e] += c
        for e, row in ttable.items():
            denom = totals[e] + floor * support[e]
            crow = counts[e]
            for m in row:
                row[m] = (crow[m] + floor) / denom
        history.append(log_likelihood)

    return AlignmentModel(
        ttable=dict(ttable),
        iteration_count=iterations,
        english_vocab_size=len(e_vocab),
        marathi_vocab_size=len(m_vocab),
        log_likelihoods=history,
    )


def align(model: AlignmentModel, pair: ParallelPair) -> AlignmentLinks:
    """Best-link decoding: one link per Marathi word, or none.

    A Marathi word stays unlinked only when the NULL word is strictly
    more probable than every English word in the sentence (or the word
    never occurred in training).  Ties among English words go to the
    smallest index; a tie with NULL goes to the English word, so NULL
    absorbs a word only on clear evidence.
    """
    null_row = model.ttable.get(NULL_WORD, {})
    e_forms = pair.english_forms()
    links: dict[tuple[int, int], LinkSource] = {}
    for mi, m in enumerate(pair.marathi_forms()):
        best_p = 0.0
        best_e = None
        for ei, e in enumerate(e_forms):
            p = model.ttable.get(e, {}).get(m, 0.0)
            if p > best_p:
                best_p = p
                best_e = ei
        if best_e is not None and best_p >= null_row.get(m, 0.0) and best_p > 0.0:
            links[(best_e, mi)] = LinkSource.MODEL
    return AlignmentLinks(pair_id=pair.id, links=links)


def apply_dictionary(links: AlignmentLinks, pair: ParallelPair,
                     dictionary: BilingualDictionary) -> AlignmentLinks:
    """Overlay curated dictionary links on top of decoded ones.

    For every Marathi word with a dictionary entry whose English gloss
    occurs in the pair (entries tried in order, leftmost occurrence
    wins), model-produced links touching that Marathi index are dropped
    and the dictionary link inserted.  Links from other sources stay.
    """
    merged = dict(links.links)
    e_forms = pair.english_forms()
    for mi, m in enumerate(pair.marathi_forms()):
        glosses = dictionary.get(m)
        if not glosses:
            continue
        for gloss in glosses:
            folded = gloss.casefold()
            try:
                ei = e_forms.index(folded)
            except ValueError:
                continue
            for key in [k for k, src in merged.items()
                        if k[1] == mi and src is LinkSource.MODEL]:
                del merged[key]
            merged[(ei, mi)] = LinkSource.DICTIONARY
            break
    return AlignmentLinks(pair_id=links.pair_id, links=merged)


def parse_pharaoh(text: str, pair_id: str = "") -> AlignmentLinks:
    """Parse a line of space-separated e-m index pairs.

    A blank line carries no links.  Malformed input raises
    PharaohParseError pointing at the 1-based column of the first
    offending character.
    """
    links: dict[tuple[int, int], LinkSource] = {}
    i = 0
    n = len(text)
    while i < n:
        if text[i] == " ":
            i += 1
            continue
        if text[i] in "\t\r\n":
            raise PharaohParseError("unexpected whitespace character", i + 1)
        e, i = _scan_int(text, i)
        if i >= n or text[i] != "-":
            raise PharaohParseError("expected '-' between indices", i + 1)
        i += 1
        m, i = _scan_int(text, i)
        if i < n and text[i] != " ":
            raise PharaohParseError("unexpected character in link", i + 1)
        links[(e, m)] = LinkSource.EXTERNAL
    return AlignmentLinks(pair_id=pair_id, links=links)


def _scan_int(text: str, i: int) -> tuple[int, int]:
    start = i
    while i < len(text) and text[i].isdigit() and text[i].isascii():
        i += 1
    if i == start:
        raise PharaohParseError("expected a non-negative integer index", i + 1)
    return int(text[start:i]), i


def serialize_pharaoh(links: AlignmentLinks) -> str:
    """Canonical form: links sorted by (english, marathi) index."""
    return " ".join(f"{e}-{m}" for e, m in sorted(links.links))


def save_model(model: AlignmentModel, path: str | Path) -> None:
    """Write the model as versioned plain text.  Probabilities are
    serialized with repr so reloading reproduces them exactly."""
    lines = [_MODEL_HEADER]
    lines.append(f"iterations\t{model.iteration_count}")
    lines.append(f"english_vocab\t{model.english_vocab_size}")
    lines.append(f"marathi_vocab\t{model.marathi_vocab_size}")
    lines.append("log_likelihoods\t" + ",".join(repr(x) for x in model.log_likelihoods))
    for e in sorted(model.ttable):
        row = model.ttable[e]
        for m in sorted(row):
            lines.append(f"t\t{e}\t{m}\t{row[m]!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> AlignmentModel:
    raw = Path(path).read_text(encoding="utf-8")
    lines = raw.splitlines()
    if not lines or lines[0] != _MODEL_HEADER:
        raise AlignerError(f"{path}: not a recognized alignment model file")
    meta: dict[str, str] = {}
    ttable: dict[str, dict[str, float]] = {}
    for lineno, line in enumerate(lines[1:], 2):
        if not line:
            continue
        fields = line.split("\t")
        if fields[0] == "t":
            if len(fields) != 4:
                raise AlignerError(f"{path}: malformed table row on line {lineno}")
            _, e, m, prob = fields
            ttable.setdefault(e, {})[m] = float(prob)
        elif len(fields) == 2:
            meta[fields[0]] = fields[1]
        else:
            raise AlignerError(f"{path}: malformed metadata on line {lineno}")
    try:
        iterations = int(meta["iterations"])
        e_vocab = int(meta["english_vocab"])
        m_vocab = int(meta["marathi_vocab"])
    except (KeyError, ValueError) as exc:
        raise AlignerError(f"{path}: missing or malformed metadata") from exc
    lls = []
    if meta.get("log_likelihoods"):
        lls = [float(x) for x in meta["log_likelihoods"].split(",")]
    return AlignmentModel(
        ttable=ttable,
        iteration_count=iterations,
        english_vocab_size=e_vocab,
        marathi_vocab_size=m_vocab,
        log_likelihoods=lls,
    )
