"""Rule-and-lexicon transliteration between Roman and Devanagari script.

A rule table is an ordered list of (pattern, replacement, position)
string-rewriting rules applied greedily left to right: at every input
offset the longest applicable pattern wins.  Position constraints
restrict a rule to the start or end of the word; at equal pattern
length a word-final rule beats a word-initial one, which beats an
unconstrained one, and table order breaks any remaining tie.  Roman
patterns match case-insensitively.

Grapheme rules cannot recover English pronunciation from spelling, so a
transliteration lexicon of attested spellings takes precedence over the
rules; rule output is the graceful-degradation path for words the
lexicon does not know.  Characters no rule matches pass through
unchanged and are reported as diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import TranslitError

_DEV_LO = 0x0900
_DEV_HI = 0x097F


class Direction(Enum):
    ROMAN_TO_DEVANAGARI = "roman-to-devanagari"
    DEVANAGARI_TO_ROMAN = "devanagari-to-roman"


class RulePosition(Enum):
    ANY = "any"
    INITIAL = "initial"
    FINAL = "final"


_POSITION_RANK = {RulePosition.FINAL: 0, RulePosition.INITIAL: 1, RulePosition.ANY: 2}

MAX_PATTERN_LEN = 6


@dataclass(frozen=True)
class TranslitRule:
    pattern: str
    replacement: str
    position: RulePosition


@dataclass(frozen=True)
class PassThrough:
    """Diagnostic for a character no rule matched."""

    word: str
    index: int
    char: str


def _is_dev_char(ch: str) -> bool:
    return _DEV_LO <= ord(ch) <= _DEV_HI


def _is_latin_letter(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


class TranslitRuleTable:
    """Validated, indexed rule list for one direction."""

    def __init__(self, direction: Direction, rules: list[TranslitRule]):
        self.direction = direction
        self.rules = list(rules)
        self.max_len = 0
        self._lookup: dict[tuple[str, RulePosition], tuple[int, TranslitRule]] = {}
        source_ok = _is_latin_letter if direction is Direction.ROMAN_TO_DEVANAGARI else _is_dev_char
        for order, rule in enumerate(self.rules):
            if not rule.pattern:
                raise TranslitError("rule patterns must be non-empty")
            if len(rule.pattern) > MAX_PATTERN_LEN:
                raise TranslitError(
                    f"rule pattern {rule.pattern!r} exceeds {MAX_PATTERN_LEN} characters")
            if not all(source_ok(ch) for ch in rule.pattern):
                raise TranslitError(
                    f"rule pattern {rule.pattern!r} contains characters outside "
                    f"the source script for {direction.value}")
            key = (rule.pattern, rule.position)
            if key in self._lookup:
                raise TranslitError(
                    f"duplicate rule for pattern {rule.pattern!r} at position "
                    f"{rule.position.value}")
            self._lookup[key] = (order, rule)
            self.max_len = max(self.max_len, len(rule.pattern))

    def match(self, word: str, i: int) -> TranslitRule | None:
        """Best rule at offset i under greedy longest-match."""
        n = len(word)
        limit = min(self.max_len, n - i)
        for length in range(limit, 0, -1):
            segment = word[i:i + length]
            best: tuple[int, int, TranslitRule] | None = None
            for position in (RulePosition.FINAL, RulePosition.INITIAL, RulePosition.ANY):
                if position is RulePosition.INITIAL and i != 0:
                    continue
                if position is RulePosition.FINAL and i + length != n:
                    continue
                hit = self._lookup.get((segment, position))
                if hit is None:
                    continue
                order, rule = hit
                key = (_POSITION_RANK[position], order)
                if best is None or key < best[:2]:
                    best = (*key, rule)
            if best is not None:
                return best[2]
        return None


@dataclass
class TranslitLexicon:
    """Exact word spellings that bypass the rules; one direction only."""

    direction: Direction
    entries: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        folded = {}
        for source, target in self.entries.items():
            if not source or not target:
                raise TranslitError("lexicon entries must be non-empty")
            _check_script(source, self.direction)
            wrong_target = _is_dev_char if self.direction is Direction.DEVANAGARI_TO_ROMAN \
                else _is_latin_letter
            if any(wrong_target(ch) for ch in target):
                raise TranslitError(
                    f"lexicon value {target!r} is not in the target script")
            folded[source.casefold()] = target
        self.entries = folded

    def get(self, word: str) -> str | None:
        return self.entries.get(word.casefold())


def transliterate_word(word: str, table: TranslitRuleTable,
                       lexicon: TranslitLexicon | None = None,
                       diagnostics: list[PassThrough] | None = None) -> str:
    """Transliterate a single word.

    The lexicon, when given, is consulted first and its value returned
    verbatim on a hit.  Otherwise the rules rewrite the word greedily;
    unmatched characters pass through and are appended to diagnostics.
    A word mixing Roman and Devanagari characters, or written in the
    wrong script for the table's direction, raises TranslitError.
    """
    if lexicon is not None and lexicon.direction is not table.direction:
        raise TranslitError("lexicon direction does not match the rule table")
    if not word:
        return ""
    _check_script(word, table.direction)
    if lexicon is not None:
        hit = lexicon.get(word)
        if hit is not None:
            return hit
    if table.direction is Direction.ROMAN_TO_DEVANAGARI:
        # Per-character lowering keeps offsets aligned with the input
        # (full casefold can change string length).
        matchable = "".join(
            ch.lower() if len(ch.lower()) == 1 else ch for ch in word)
    else:
        matchable = word
    out: list[str] = []
    i = 0
    while i < len(matchable):
        rule = table.match(matchable, i)
        if rule is None:
            out.append(word[i])
            if diagnostics is not None:
                diagnostics.append(PassThrough(word, i, word[i]))
            i += 1
        else:
            out.append(rule.replacement)
            i += len(rule.pattern)
    return "".join(out)


def _check_script(word: str, direction: Direction) -> None:
    has_latin = any(_is_latin_letter(ch) for ch in word)
    has_dev = any(_is_dev_char(ch) for ch in word)
    if has_latin and has_dev:
        raise TranslitError(f"word {word!r} mixes Roman and Devanagari characters")
    if direction is Direction.ROMAN_TO_DEVANAGARI and has_dev:
        raise TranslitError(f"word {word!r} is not Roman script")
    if direction is Direction.DEVANAGARI_TO_ROMAN and has_latin:
        raise TranslitError(f"word {word!r} is not Devanagari script")


def transliterate_phrase(words: list[str], table: TranslitRuleTable,
                         lexicon: TranslitLexicon | None = None,
                         diagnostics: list[PassThrough] | None = None) -> list[str]:
    """Word-by-word transliteration; errors name the offending word."""
    out = []
    for index, word in enumerate(words):
        try:
            out.append(transliterate_word(word, table, lexicon, diagnostics))
        except TranslitError as exc:
            raise TranslitError(f"word {index} of phrase {words!r}: {exc}") from None
    return out


def dev_to_roman(text: str, table: TranslitRuleTable) -> str:
    """Romanize Devanagari text; characters outside the block pass
    through unchanged.  The shipped reverse table expands the inherent
    vowel (घर becomes ghara), suppresses it under virama and maps
    matras to vowel letters, so output is lowercase ASCII."""
    if table.direction is not Direction.DEVANAGARI_TO_ROMAN:
        raise TranslitError("dev_to_roman needs a devanagari-to-roman table")
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        if not _is_dev_char(text[i]):
            out.append(text[i])
            i += 1
            continue
        rule = table.match(text, i)
        if rule is None:
            out.append(text[i])
            i += 1
        else:
            out.append(rule.replacement)
            i += len(rule.pattern)
    return "".join(out)


def load_rules(path: str | Path, direction: Direction) -> TranslitRuleTable:
    """Read a `pattern<TAB>replacement<TAB>position` rule file.

    Replacements may be empty; `#` lines and blank lines are ignored.
    """
    rules: list[TranslitRule] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise TranslitError(f"{path}: expected 3 tab-separated fields on line {lineno}")
        pattern, replacement, position = fields
        try:
            pos = RulePosition(position)
        except ValueError:
            raise TranslitError(
                f"{path}: unknown position {position!r} on line {lineno}") from None
        rules.append(TranslitRule(pattern, replacement, pos))
    return TranslitRuleTable(direction, rules)


def load_lexicon(path: str | Path, direction: Direction) -> TranslitLexicon:
    """Read a `source<TAB>target` lexicon file."""
    entries: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise TranslitError(f"{path}: expected `source<TAB>target` on line {lineno}")
        if fields[0].casefold() in entries:
            raise TranslitError(f"{path}: duplicate entry {fields[0]!r} on line {lineno}")
        entries[fields[0].casefold()] = fields[1]
    return TranslitLexicon(direction, entries)


def invert_lexicon(lexicon: TranslitLexicon) -> TranslitLexicon:
    """Swap sources and targets, flipping the direction."""
    flipped = Direction.DEVANAGARI_TO_ROMAN \
        if lexicon.direction is Direction.ROMAN_TO_DEVANAGARI \
        else Direction.ROMAN_TO_DEVANAGARI
    inverted: dict[str, str] = {}
    for source, target in lexicon.entries.items():
        if target in inverted:
            raise TranslitError(f"lexicon is not invertible: duplicate target {target!r}")
        inverted[target] = source
    return TranslitLexicon(flipped, inverted)
