"""Evaluation metrics: the code-mixing index and human rating reports.

The code-mixing index of a sentence is the fraction of its word tokens
that come from the embedded language.  Punctuation and digit runs never
count, on either side of the ratio, so a sentence of five words with
two embedded ones scores 0.4 regardless of how it is punctuated.  The
index is undefined for sentences without word tokens.

Degree-of-code-mixing records are human scores from 0 to 10 for
generated pairs.  This module only ingests and aggregates them; it
never predicts them.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import DcmError, MetricsError
from .tokenizer import TokenKind


class LangTag(Enum):
    """Which language a token belongs to in mixed output: the Marathi
    matrix frame or the embedded English material."""

    MATRIX = "matrix"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class CmiScore:
    embedded_words: int
    total_words: int
    value: float


def cmi(tags: list[tuple[TokenKind, LangTag]]) -> CmiScore:
    """Score one sentence from (kind, language) per token.

    Raises MetricsError when the sentence has no word tokens.
    """
    total = 0
    embedded = 0
    for kind, lang in tags:
        if kind is not TokenKind.WORD:
            continue
        total += 1
        if lang is LangTag.EMBEDDED:
            embedded += 1
    if total == 0:
        raise MetricsError("code-mixing index is undefined without word tokens")
    return CmiScore(embedded_words=embedded, total_words=total, value=embedded / total)


def corpus_cmi(scores: list[CmiScore]) -> float:
    """Arithmetic mean of per-sentence values."""
    if not scores:
        raise MetricsError("corpus code-mixing index needs at least one sentence")
    return sum(score.value for score in scores) / len(scores)


@dataclass(frozen=True)
class DcmRecord:
    pair_id: str
    rater_id: str
    score: int


@dataclass(frozen=True)
class DcmReport:
    mean: float
    median: float
    histogram: tuple[int, ...]  # counts for scores 0..10
    per_pair_mean: dict[str, float] = field(default_factory=dict)


_DCM_HEADER = ["pair_id", "rater_id", "score"]


def load_dcm(path: str | Path) -> list[DcmRecord]:
    """Read a rating CSV with header pair_id,rater_id,score.

    Scores must be integers from 0 to 10 and a (pair_id, rater_id)
    combination may appear only once; violations raise DcmError naming
    the line.
    """
    records: list[DcmRecord] = []
    seen: set[tuple[str, str]] = set()
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != _DCM_HEADER:
            raise DcmError(f"{path}: expected header {','.join(_DCM_HEADER)!r}, "
                           f"got {header!r}")
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 3:
                raise DcmError(f"{path}: expected 3 fields on line {lineno}")
            pair_id, rater_id, raw_score = row
            if not pair_id or not rater_id:
                raise DcmError(f"{path}: empty id on line {lineno}")
            try:
                score = int(raw_score)
            except ValueError:
                raise DcmError(f"{path}: score {raw_score!r} on line {lineno} "
                               "is not an integer") from None
            if not 0 <= score <= 10:
                raise DcmError(f"{path}: score {score} on line {lineno} "
                               "is outside 0..10")
            key = (pair_id, rater_id)
            if key in seen:
                raise DcmError(f"{path}: duplicate rating for pair {pair_id!r} "
                               f"by rater {rater_id!r} on line {lineno}")
            seen.add(key)
            records.append(DcmRecord(pair_id, rater_id, score))
    return records


def dcm_report(records: list[DcmRecord]) -> DcmReport:
    """Aggregate ratings: overall mean and median, a histogram over the
    0..10 scale, and per-pair means that average across raters first."""
    if not records:
        raise DcmError("cannot report on zero rating records")
    scores = [r.score for r in records]
    histogram = [0] * 11
    for s in scores:
        histogram[s] += 1
    by_pair: dict[str, list[int]] = {}
    for r in records:
        by_pair.setdefault(r.pair_id, []).append(r.score)
    per_pair = {pair: sum(vals) / len(vals) for pair, vals in by_pair.items()}
    return DcmReport(
        mean=statistics.fmean(scores),
        median=float(statistics.median(scores)),
        histogram=tuple(histogram),
        per_pair_mean=per_pair,
    )
