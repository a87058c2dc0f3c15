"""File formats and robust loading.

This module is the reference for every external format the toolkit
reads or writes.  Loaders are total over arbitrary byte input: bad
records are skipped and reported through CorpusDiagnostics rather than
crashing, and only an unreadable path raises.  All files are UTF-8.

Parallel corpus (TSV)
    id<TAB>english<TAB>marathi
    Lines starting with `#` and blank lines are ignored.  Records with
    missing fields, duplicate ids, empty sides, sides without a single
    word token, or bytes that do not decode as UTF-8 are skipped with a
    diagnostic.

Bilingual dictionary (TSV)
    marathi<TAB>english[,english...]
    Maps a Marathi word to English glosses in priority order.  Keys are
    Devanagari words, glosses Roman words.

Part-of-speech annotations
    Blocks separated by blank lines.  Each block starts with
    `# id = <sentence-id>` and contains one `surface<TAB>UPOS` line per
    English word token of that sentence, in order.  Other `#` lines are
    comments.  (Parsing lives in chunker.load_pos, re-exported here.)

Alignment file
    One line of space-separated `e-m` word-index pairs per successfully
    loaded corpus record, in corpus order; a blank line means the
    record has no links.  `e` indexes English word tokens, `m` Marathi
    word tokens, both zero-based.  Canonical serialization sorts links
    by (e, m).

Transliteration rules (TSV)
    pattern<TAB>replacement<TAB>position with position one of
    any | initial | final.  (Parsing lives in transliterator.load_rules.)

Transliteration lexicon (TSV)
    source<TAB>target, one attested spelling per line.

Rating CSV
    Header pair_id,rater_id,score with integer scores 0..10.
    (Parsing lives in metrics.load_dcm, re-exported here.)

Generated output (JSONL)
    One JSON object per pair, UTF-8, no BOM, sorted by input order:
    {"id": ..., "devanagari": ..., "latin": ...,
     "tokens": [{"surface": ..., "lang": "matrix"|"embedded",
                 "en_surface": ...}],
     "replacements": [{"kind": ..., "en_start": ..., "en_end": ...,
                       "m_start": ..., "m_end": ..., "inserted": ...}],
     "cmi": ...}
    en_surface appears only on embedded tokens.  Key order is fixed and
    floats are serialized with repr, so identical runs are identical
    bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .aligner import AlignmentLinks, ParallelPair, parse_pharaoh
from .chunker import load_pos, load_tag_lexicon
from .errors import CorpusError, PharaohParseError
from .metrics import LangTag, load_dcm
from .mixer import CodeMixedSentence, OutToken, Replacement
from .tokenizer import ScriptKind, tokenize, word_count
from .transliterator import load_lexicon, load_rules

__all__ = [
    "Diagnostic", "CorpusDiagnostics", "load_parallel", "load_dictionary",
    "load_alignments", "write_jsonl", "read_jsonl",
    "load_pos", "load_tag_lexicon", "load_dcm", "load_rules", "load_lexicon",
]


@dataclass(frozen=True)
class Diagnostic:
    record: str  # line number or record id
    severity: str  # "warning" or "error"
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.record}: {self.message}"


@dataclass
class CorpusDiagnostics:
    """Per-load report: what was read, skipped and why.

    loaded + skipped always equals total_records, and every skipped
    record appears in items exactly once.
    """

    items: list[Diagnostic] = field(default_factory=list)
    total_records: int = 0
    loaded: int = 0
    skipped: int = 0
    ignored_lines: int = 0  # comments and blanks

    def error(self, record, message: str):
        self.items.append(Diagnostic(str(record), "error", message))

    def warning(self, record, message: str):
        self.items.append(Diagnostic(str(record), "warning", message))

    def errors(self) -> list[Diagnostic]:
        return [d for d in self.items if d.severity == "error"]

    def reconciles(self) -> bool:
        return self.loaded + self.skipped == self.total_records


def _read_lines(path: str | Path) -> list[bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    if raw.startswith(b"\xef\xbb\xbf"):
        raw = raw[3:]
    lines = raw.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return lines


def load_parallel(path: str | Path) -> tuple[list[ParallelPair], CorpusDiagnostics]:
    """Load a parallel corpus, skipping and reporting bad records."""
    diagnostics = CorpusDiagnostics()
    pairs: list[ParallelPair] = []
    seen_ids: set[str] = set()
    for lineno, raw_line in enumerate(_read_lines(path), 1):
        try:
            line = raw_line.decode("utf-8").rstrip("\r")
        except UnicodeDecodeError as exc:
            diagnostics.total_records += 1
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"not valid UTF-8 at byte {exc.start}")
            continue
        if not line.strip() or line.startswith("#"):
            diagnostics.ignored_lines += 1
            continue
        diagnostics.total_records += 1
        fields = line.split("\t")
        if len(fields) != 3:
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"expected 3 tab-separated fields, got {len(fields)}")
            continue
        pair_id, english, marathi = fields
        if not pair_id:
            diagnostics.skipped += 1
            diagnostics.error(lineno, "empty id field")
            continue
        if not english or not marathi:
            side = "english" if not english else "marathi"
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"empty {side} side for id {pair_id!r}")
            continue
        if pair_id in seen_ids:
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"duplicate id {pair_id!r}")
            continue
        en_sentence = tokenize(english, ScriptKind.LATIN)
        mr_sentence = tokenize(marathi, ScriptKind.DEVANAGARI)
        if word_count(en_sentence) == 0 or word_count(mr_sentence) == 0:
            side = "english" if word_count(en_sentence) == 0 else "marathi"
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"no word tokens on the {side} side of {pair_id!r}")
            continue
        seen_ids.add(pair_id)
        pairs.append(ParallelPair(pair_id, en_sentence, mr_sentence))
        diagnostics.loaded += 1
    return pairs, diagnostics


def load_dictionary(path: str | Path) -> tuple[dict[str, list[str]], CorpusDiagnostics]:
    """Load a Marathi-to-English gloss dictionary."""
    diagnostics = CorpusDiagnostics()
    dictionary: dict[str, list[str]] = {}
    for lineno, raw_line in enumerate(_read_lines(path), 1):
        try:
            line = raw_line.decode("utf-8").rstrip("\r")
        except UnicodeDecodeError as exc:
            diagnostics.total_records += 1
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"not valid UTF-8 at byte {exc.start}")
            continue
        if not line.strip() or line.startswith("#"):
            diagnostics.ignored_lines += 1
            continue
        diagnostics.total_records += 1
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            diagnostics.skipped += 1
            diagnostics.error(lineno, "expected `marathi<TAB>english[,english...]`")
            continue
        key = fields[0]
        glosses = [g.strip() for g in fields[1].split(",") if g.strip()]
        if not glosses:
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"no glosses for {key!r}")
            continue
        if key in dictionary:
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"duplicate key {key!r}")
            continue
        dictionary[key] = glosses
        diagnostics.loaded += 1
    return dictionary, diagnostics


def load_alignments(path: str | Path, pairs: list[ParallelPair]
                    ) -> tuple[dict[str, AlignmentLinks], CorpusDiagnostics]:
    """Load an external alignment file for an already-loaded corpus.

    The file must carry exactly one line per loaded pair, in order.
    Lines that fail to parse, or whose indices fall outside the pair's
    word counts, are replaced by an empty link set with a diagnostic.
    """
    diagnostics = CorpusDiagnostics()
    lines = []
    for raw_line in _read_lines(path):
        try:
            lines.append(raw_line.decode("utf-8").rstrip("\r"))
        except UnicodeDecodeError:
            lines.append(None)
    if len(lines) != len(pairs):
        raise CorpusError(
            f"{path}: alignment file has {len(lines)} lines but the corpus "
            f"loaded {len(pairs)} pairs")
    result: dict[str, AlignmentLinks] = {}
    for lineno, (line, pair) in enumerate(zip(lines, pairs), 1):
        diagnostics.total_records += 1
        empty = AlignmentLinks(pair_id=pair.id, links={})
        if line is None:
            diagnostics.skipped += 1
            diagnostics.error(lineno, "not valid UTF-8")
            result[pair.id] = empty
            continue
        try:
            links = parse_pharaoh(line, pair_id=pair.id)
        except PharaohParseError as exc:
            diagnostics.skipped += 1
            diagnostics.error(lineno, str(exc))
            result[pair.id] = empty
            continue
        e_count = len(pair.english_forms())
        m_count = len(pair.marathi_forms())
        bad = [(e, m) for (e, m) in links.links if e >= e_count or m >= m_count]
        if bad:
            diagnostics.skipped += 1
            diagnostics.error(lineno, f"link indices {bad} exceed word counts "
                                      f"({e_count} english, {m_count} marathi)")
            result[pair.id] = empty
            continue
        result[pair.id] = links
        diagnostics.loaded += 1
    return result, diagnostics


def _sentence_to_object(sentence: CodeMixedSentence,
                        devanagari: str, latin: str) -> dict:
    tokens = []
    for token in sentence.out_tokens:
        obj: dict = {"surface": token.surface, "lang": token.lang.value}
        if token.lang is LangTag.EMBEDDED and token.en_surface is not None:
            obj["en_surface"] = token.en_surface
        tokens.append(obj)
    replacements = [
        {"kind": r.kind, "en_start": r.en_start, "en_end": r.en_end,
         "m_start": r.m_start, "m_end": r.m_end, "inserted": r.inserted}
        for r in sentence.replacements
    ]
    return {
        "id": sentence.pair_id,
        "devanagari": devanagari,
        "latin": latin,
        "tokens": tokens,
        "replacements": replacements,
        "cmi": sentence.cmi,
    }


def jsonl_line(sentence: CodeMixedSentence, devanagari: str, latin: str) -> str:
    """Serialize one generated sentence as a JSONL line (no newline)."""
    return json.dumps(_sentence_to_object(sentence, devanagari, latin),
                      ensure_ascii=False)


def write_jsonl(rows: list[tuple[CodeMixedSentence, str, str]], path: str | Path) -> int:
    """Write generated sentences with both renderings; returns the count.

    rows holds (sentence, devanagari_rendering, latin_rendering).
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for sentence, devanagari, latin in rows:
            handle.write(jsonl_line(sentence, devanagari, latin) + "\n")
    return len(rows)


def read_jsonl(path: str | Path) -> list[tuple[CodeMixedSentence, str, str]]:
    """Read back a generated JSONL file; inverse of write_jsonl."""
    rows: list[tuple[CodeMixedSentence, str, str]] = []
    for lineno, raw_line in enumerate(_read_lines(path), 1):
        try:
            obj = json.loads(raw_line.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CorpusError(f"{path}: line {lineno}: {exc}") from exc
        tokens = tuple(
            OutToken(
                surface=t["surface"],
                lang=LangTag(t["lang"]),
                en_surface=t.get("en_surface"),
            )
            for t in obj["tokens"]
        )
        replacements = tuple(
            Replacement(kind=r["kind"], en_start=r["en_start"], en_end=r["en_end"],
                        m_start=r["m_start"], m_end=r["m_end"], inserted=r["inserted"])
            for r in obj["replacements"]
        )
        sentence = CodeMixedSentence(
            pair_id=obj["id"],
            out_tokens=tokens,
            replacements=replacements,
            cmi=obj["cmi"],
        )
        rows.append((sentence, obj["devanagari"], obj["latin"]))
    return rows
