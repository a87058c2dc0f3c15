"""English phrase extraction over universal part-of-speech tags.

Tags are ingested from annotation files (blocks keyed by sentence id,
one surface/tag line per word token) or produced by a small lexicon
fallback tagger.  The phrase grammar is deliberately shallow:

  NP    maximal contiguous run over {ADJ, NOUN, PROPN} that contains at
        least one NOUN or PROPN
  ADJP  maximal run of ADJ not immediately followed by NOUN or PROPN
  ADVP  maximal run of ADV

Runs longer than max_len split left-to-right into chunks of at most
max_len tokens; chunks keep the kind of the run they came from.  Spans
index word tokens and are half-open.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import PosFileError


class UposTag(Enum):
    ADJ = "ADJ"
    ADP = "ADP"
    ADV = "ADV"
    AUX = "AUX"
    CCONJ = "CCONJ"
    DET = "DET"
    INTJ = "INTJ"
    NOUN = "NOUN"
    NUM = "NUM"
    PART = "PART"
    PRON = "PRON"
    PROPN = "PROPN"
    PUNCT = "PUNCT"
    SCONJ = "SCONJ"
    SYM = "SYM"
    VERB = "VERB"
    X = "X"


class PhraseKind(Enum):
    NP = "NP"
    ADJP = "ADJP"
    ADVP = "ADVP"


@dataclass(frozen=True)
class PhraseSpan:
    """Half-open interval of word-token indices with a phrase kind."""

    kind: PhraseKind
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError("phrase span must be non-empty with start >= 0")

    def __len__(self) -> int:
        return self.end - self.start


_NP_TAGS = {UposTag.ADJ, UposTag.NOUN, UposTag.PROPN}
_NOUNISH = {UposTag.NOUN, UposTag.PROPN}

_HEADER_RE = re.compile(r"#\s*id\s*=\s*(\S+)\s*$")


def parse_tag(text: str, line: int | None = None) -> UposTag:
    try:
        return UposTag(text)
    except ValueError:
        raise PosFileError(f"unknown part-of-speech tag {text!r}", line) from None


PosEntries = list[tuple[str, UposTag]]


def load_pos(path: str | Path,
             expected_words: dict[str, list[str]] | None = None,
             strict: bool = False) -> tuple[dict[str, PosEntries], list[str]]:
    """Read a part-of-speech annotation file.

    Blocks are separated by blank lines and introduced by a `# id = X`
    header; every other line is `surface<TAB>TAG`.  When expected_words
    maps ids to the word surfaces of the corresponding sentences, any
    block whose surfaces do not match one-to-one (case-insensitively) is
    dropped with a diagnostic.  Malformed blocks are likewise dropped.
    With strict=True the first problem raises PosFileError instead.

    Returns (id -> entries, diagnostics).
    """
    text = Path(path).read_text(encoding="utf-8")
    result: dict[str, PosEntries] = {}
    diagnostics: list[str] = []

    def fail(message: str, line: int | None):
        if strict:
            raise PosFileError(message, line)
        where = f"line {line}: " if line is not None else ""
        diagnostics.append(where + message)

    current_id: str | None = None
    current: PosEntries = []
    bad_block = False
    header_line = 0

    def close_block(end_line: int):
        nonlocal current_id, current, bad_block
        if current_id is None:
            return
        if bad_block:
            pass
        elif not current:
            fail(f"block {current_id!r} has no tag lines", header_line)
        elif current_id in result:
            fail(f"duplicate block id {current_id!r}", header_line)
        else:
            entries = current
            if expected_words is not None:
                expected = expected_words.get(current_id)
                if expected is None:
                    fail(f"block {current_id!r} does not match any corpus sentence", header_line)
                    entries = None
                elif len(expected) != len(entries) or any(
                        a.casefold() != b.casefold()
                        for (a, _t), b in zip(entries, expected)):
                    fail(
                        f"block {current_id!r} has {len(entries)} tags but the "
                        f"sentence has {len(expected)} word tokens"
                        if len(expected) != len(entries) else
                        f"block {current_id!r} surfaces do not match the sentence",
                        header_line)
                    entries = None
            if entries is not None:
                result[current_id] = entries
        current_id = None
        current = []
        bad_block = False

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            close_block(lineno)
            continue
        header = _HEADER_RE.match(line)
        if header:
            close_block(lineno)
            current_id = header.group(1)
            header_line = lineno
            continue
        if line.startswith("#"):
            continue
        if current_id is None:
            fail("tag line appears before any `# id = ...` header", lineno)
            continue
        if bad_block:
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0]:
            fail(f"expected `surface<TAB>TAG`, got {line!r}", lineno)
            bad_block = True
            continue
        try:
            tag = parse_tag(fields[1], lineno)
        except PosFileError as exc:
            if strict:
                raise
            diagnostics.append(str(exc))
            bad_block = True
            continue
        current.append((fields[0], tag))
    close_block(len(text.splitlines()) + 1)
    return result, diagnostics


def lexicon_tag(words: list[str], lexicon: dict[str, UposTag],
                default: UposTag = UposTag.NOUN) -> list[UposTag]:
    """Case-insensitive lexicon lookup with a default for misses."""
    return [lexicon.get(w.casefold(), default) for w in words]


def load_tag_lexicon(path: str | Path) -> dict[str, UposTag]:
    """Read a `word<TAB>TAG` lexicon for the fallback tagger."""
    lexicon: dict[str, UposTag] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0]:
            raise PosFileError(f"expected `word<TAB>TAG`, got {line!r}", lineno)
        lexicon[fields[0].casefold()] = parse_tag(fields[1], lineno)
    return lexicon


def extract_phrases(tags: list[UposTag], max_len: int = 3) -> list[PhraseSpan]:
    """Extract NP/ADJP/ADVP spans, sorted by start, non-overlapping."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    spans: list[PhraseSpan] = []
    i = 0
    n = len(tags)
    while i < n:
        if tags[i] in _NP_TAGS:
            j = i
            has_noun = False
            while j < n and tags[j] in _NP_TAGS:
                has_noun = has_noun or tags[j] in _NOUNISH
                j += 1
            kind = PhraseKind.NP if has_noun else PhraseKind.ADJP
            _chunk(spans, kind, i, j, max_len)
            i = j
        elif tags[i] is UposTag.ADV:
            j = i
            while j < n and tags[j] is UposTag.ADV:
                j += 1
            _chunk(spans, PhraseKind.ADVP, i, j, max_len)
            i = j
        else:
            i += 1
    return spans


def _chunk(spans: list[PhraseSpan], kind: PhraseKind, start: int, end: int, max_len: int):
    # Oversized runs split left-to-right; chunks inherit the run's kind.
    pos = start
    while pos < end:
        stop = min(pos + max_len, end)
        spans.append(PhraseSpan(kind, pos, stop))
        pos = stop
