"""Phrase substitution: English phrases replace their aligned Marathi spans.

The Marathi sentence is the matrix frame and keeps its word order and
punctuation; transliterated English phrases are embedded into it.  For
every candidate phrase the aligned Marathi indices define a covering
interval.  A phrase survives when it has links, its interval is free,
and the interval is not implausibly wide for the phrase (wider than
twice the phrase length reads as alignment noise).  Claims are made
while scanning left to right, before any policy choice, so the set of
survivors is a property of the pair alone; the policy then selects
among survivors:

  all          keep every survivor
  rate(p)      keep a survivor iff its site value drawn from
               (seed, pair id, phrase start) is below p, which makes
               plans monotone in p for a fixed seed
  target_cmi(c) keep survivors left to right until the projected
               code-mixing index reaches c

Embedded tokens remember their original Roman spelling so the Latin
rendering can echo the English words verbatim while the matrix words
are romanized through the reverse rule table.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum

from .aligner import AlignmentLinks, ParallelPair
from .chunker import PhraseSpan
from .errors import MixerError, TranslitError
from .metrics import LangTag, cmi
from .tokenizer import ScriptKind, TokenKind, classify_kind
from .transliterator import (
    TranslitLexicon,
    TranslitRuleTable,
    dev_to_roman,
    transliterate_phrase,
)

__all__ = [
    "LangTag", "PolicyMode", "SubstitutionPolicy", "PlanEntry", "OutToken",
    "Replacement", "CodeMixedSentence", "plan_substitutions", "apply_plan",
    "render",
]


class PolicyMode(Enum):
    ALL = "all"
    RATE = "rate"
    TARGET_CMI = "target-cmi"


@dataclass(frozen=True)
class SubstitutionPolicy:
    mode: PolicyMode = PolicyMode.ALL
    rate: float = 1.0
    target: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError("rate must be within [0, 1]")
        if not 0.0 <= self.target <= 1.0:
            raise ValueError("target must be within [0, 1]")

    @classmethod
    def all(cls) -> "SubstitutionPolicy":
        return cls(mode=PolicyMode.ALL)

    @classmethod
    def at_rate(cls, rate: float, seed: int = 0) -> "SubstitutionPolicy":
        return cls(mode=PolicyMode.RATE, rate=rate, seed=seed)

    @classmethod
    def toward_cmi(cls, target: float, seed: int = 0) -> "SubstitutionPolicy":
        return cls(mode=PolicyMode.TARGET_CMI, target=target, seed=seed)


@dataclass(frozen=True)
class PlanEntry:
    """A phrase to substitute and the Marathi word interval it replaces."""

    span: PhraseSpan
    m_start: int
    m_end: int


@dataclass(frozen=True)
class OutToken:
    surface: str
    lang: LangTag
    en_surface: str | None = None


@dataclass(frozen=True)
class Replacement:
    kind: str
    en_start: int
    en_end: int
    m_start: int
    m_end: int
    inserted: int


@dataclass(frozen=True)
class CodeMixedSentence:
    pair_id: str
    out_tokens: tuple[OutToken, ...]
    replacements: tuple[Replacement, ...]
    cmi: float


def site_value(seed: int, pair_id: str, phrase_start: int) -> float:
    """Deterministic value in [0, 1) for one substitution site.

    Keyed hashing rather than a stateful generator: the value depends
    only on (seed, pair id, phrase start), so rate policies with larger
    p keep strict supersets of the sites kept with smaller p.
    """
    key = f"{seed}\x1f{pair_id}\x1f{phrase_start}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2.0 ** 64


def plan_substitutions(pair: ParallelPair, links: AlignmentLinks,
                       phrases: list[PhraseSpan], policy: SubstitutionPolicy,
                       diagnostics: list[str] | None = None) -> list[PlanEntry]:
    """Choose which phrases replace which Marathi intervals."""

    def note(message: str):
        if diagnostics is not None:
            diagnostics.append(f"{pair.id}: {message}")

    by_english: dict[int, set[int]] = {}
    for (e, m) in links.links:
        by_english.setdefault(e, set()).add(m)

    survivors: list[PlanEntry] = []
    claimed: list[tuple[int, int]] = []
    for span in sorted(phrases, key=lambda s: s.start):
        linked: set[int] = set()
        for e in range(span.start, span.end):
            linked.update(by_english.get(e, ()))
        if not linked:
            note(f"{span.kind.value}[{span.start},{span.end}) skipped: no alignment links")
            continue
        lo, hi = min(linked), max(linked) + 1
        if any(lo < c_hi and c_lo < hi for c_lo, c_hi in claimed):
            note(f"{span.kind.value}[{span.start},{span.end}) skipped: "
                 f"interval [{lo},{hi}) already claimed")
            continue
        if hi - lo > 2 * len(span):
            note(f"{span.kind.value}[{span.start},{span.end}) skipped: "
                 f"interval [{lo},{hi}) too wide, alignment looks noisy")
            continue
        claimed.append((lo, hi))
        survivors.append(PlanEntry(span, lo, hi))

    if policy.mode is PolicyMode.ALL:
        return survivors
    if policy.mode is PolicyMode.RATE:
        kept = []
        for entry in survivors:
            if site_value(policy.seed, pair.id, entry.span.start) < policy.rate:
                kept.append(entry)
            else:
                note(f"{entry.span.kind.value}[{entry.span.start},{entry.span.end}) "
                     f"dropped by rate policy")
        return kept
    # target-cmi: add survivors until the projected index reaches the target.
    total_words = len(pair.marathi_forms())
    embedded = 0
    kept = []
    for entry in survivors:
        projected = embedded / total_words if total_words else 0.0
        if projected >= policy.target:
            break
        phrase_len = len(entry.span)
        total_words = total_words - (entry.m_end - entry.m_start) + phrase_len
        embedded += phrase_len
        kept.append(entry)
    return kept


def apply_plan(pair: ParallelPair, plan: list[PlanEntry],
               table: TranslitRuleTable,
               lexicon: TranslitLexicon | None = None) -> CodeMixedSentence:
    """Rewrite the Marathi sentence according to the plan.

    Word tokens inside a planned interval are removed and the
    transliterated phrase is inserted where the interval began;
    punctuation and digit runs stay where they were.  A transliteration
    failure aborts the pair with MixerError.
    """
    starts = {entry.m_start: entry for entry in plan}
    covered: set[int] = set()
    for entry in plan:
        span_range = range(entry.m_start, entry.m_end)
        if covered.intersection(span_range):
            raise MixerError(f"pair {pair.id!r}: plan intervals overlap")
        covered.update(span_range)

    english_words = [t.surface for t in pair.english.tokens if t.kind is TokenKind.WORD]
    out: list[OutToken] = []
    replacements: list[Replacement] = []
    word_index = -1
    for token in pair.marathi.tokens:
        if token.kind is not TokenKind.WORD:
            out.append(OutToken(token.surface, LangTag.MATRIX))
            continue
        word_index += 1
        entry = starts.get(word_index)
        if entry is not None:
            phrase_words = english_words[entry.span.start:entry.span.end]
            try:
                rendered = transliterate_phrase(phrase_words, table, lexicon)
            except TranslitError as exc:
                raise MixerError(f"pair {pair.id!r}: {exc}") from None
            for original, devanagari in zip(phrase_words, rendered):
                if not devanagari:
                    raise MixerError(
                        f"pair {pair.id!r}: word {original!r} transliterated to nothing")
                out.append(OutToken(devanagari, LangTag.EMBEDDED, en_surface=original))
            replacements.append(Replacement(
                kind=entry.span.kind.value,
                en_start=entry.span.start,
                en_end=entry.span.end,
                m_start=entry.m_start,
                m_end=entry.m_end,
                inserted=len(rendered),
            ))
        if word_index in covered:
            continue
        out.append(OutToken(token.surface, LangTag.MATRIX))

    tags = [(classify_kind(t.surface), t.lang) for t in out]
    score = cmi(tags)
    return CodeMixedSentence(
        pair_id=pair.id,
        out_tokens=tuple(out),
        replacements=tuple(replacements),
        cmi=score.value,
    )


def render(sentence: CodeMixedSentence, script: ScriptKind,
           reverse_table: TranslitRuleTable | None = None) -> str:
    """Render output tokens as plain text.

    Devanagari keeps embedded words in Devanagari; Latin romanizes the
    matrix words through the reverse table and echoes the embedded
    words' original Roman spellings.  Tokens are joined with single
    spaces and punctuation attaches to the preceding token.
    """
    if script is ScriptKind.OTHER:
        raise MixerError("render target must be devanagari or latin")
    if script is ScriptKind.LATIN and reverse_table is None:
        raise MixerError("latin rendering needs a devanagari-to-roman rule table")
    parts: list[str] = []
    for token in sentence.out_tokens:
        if script is ScriptKind.LATIN:
            if token.lang is LangTag.EMBEDDED and token.en_surface:
                text = token.en_surface
            else:
                text = dev_to_roman(token.surface, reverse_table)
        else:
            text = token.surface
        if parts and classify_kind(token.surface) is not TokenKind.PUNCT:
            parts.append(" ")
        parts.append(text)
    return "".join(parts)
