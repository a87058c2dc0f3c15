"""Unicode-aware tokenization for Latin and Devanagari text.

Splitting happens at whitespace and at boundaries between token kinds
(word / punctuation / digit run).  Devanagari combining marks (matras,
virama, anusvara, chandrabindu and friends) never open a token: they
attach to the preceding base character, so a cluster like क्रि stays in
one piece.  Apostrophes and hyphens flanked by Latin letters are kept
inside the word, which keeps possessives and hyphenated compounds
whole.

Spans are half-open byte intervals into the UTF-8 encoding of the raw
string.  Tokens never overlap, appear in increasing span order, and the
raw text can be reassembled losslessly from the spans.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from .errors import EncodingError

_DEV_LO = 0x0900
_DEV_HI = 0x097F
_DEV_DIGIT_LO = 0x0966
_DEV_DIGIT_HI = 0x096F
# Danda, double danda and the abbreviation sign are punctuation even
# though they live inside the Devanagari block.
_DEV_PUNCT = {0x0964, 0x0965, 0x0970}
_JOINERS = {"'", "-"}


class TokenKind(Enum):
    WORD = "word"
    PUNCT = "punct"
    DIGIT = "digit"


class ScriptKind(Enum):
    LATIN = "latin"
    DEVANAGARI = "devanagari"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    script: ScriptKind
    start: int
    end: int

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if not 0 <= self.start < self.end:
            raise ValueError("token span must be a non-empty half-open interval")


@dataclass(frozen=True)
class Sentence:
    raw: str
    tokens: tuple[Token, ...] = field(default_factory=tuple)

    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.kind is TokenKind.WORD]

    def word_surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens if t.kind is TokenKind.WORD]


def _is_dev(ch: str) -> bool:
    return _DEV_LO <= ord(ch) <= _DEV_HI


def _is_dev_digit(ch: str) -> bool:
    return _DEV_DIGIT_LO <= ord(ch) <= _DEV_DIGIT_HI


def _is_dev_punct(ch: str) -> bool:
    return ord(ch) in _DEV_PUNCT


def _is_combining(ch: str) -> bool:
    return unicodedata.category(ch).startswith("M")


def _is_latin_letter(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


def _is_other_word_char(ch: str) -> bool:
    """Alphanumeric characters outside the Latin-letter, ASCII-digit and
    Devanagari sets (Greek letters, superscripts, other scripts' digits).

    They form Word tokens in script Other: they are clearly not
    punctuation, and only ASCII and Devanagari decimal digits count as
    Digit tokens.
    """
    return ch.isalnum() and not _is_latin_letter(ch) \
        and not "0" <= ch <= "9" and not _is_dev(ch)


def classify_kind(surface: str) -> TokenKind:
    """Token kind implied by a surface string alone.

    Used to rebuild kind information for tokens that were serialized
    without it: a surface of decimal digits is a digit run, a surface of
    punctuation is punctuation, anything else is a word.
    """
    if surface and (all("0" <= ch <= "9" for ch in surface)
                    or all(_is_dev_digit(ch) for ch in surface)):
        return TokenKind.DIGIT
    if surface and all(not ch.isalnum() and not _is_combining(ch) for ch in surface):
        return TokenKind.PUNCT
    return TokenKind.WORD


def classify_script(surface: str) -> ScriptKind:
    if all(_is_dev(ch) for ch in surface):
        return ScriptKind.DEVANAGARI
    if all(_is_latin_letter(ch) or ch in _JOINERS for ch in surface):
        return ScriptKind.LATIN
    return ScriptKind.OTHER


def tokenize(text: str, script_hint: ScriptKind = ScriptKind.OTHER) -> Sentence:
    """Tokenize text into word, punctuation and digit tokens.

    script_hint names the script the caller expects to dominate.  The
    splitting rules are decided per character, so the hint does not
    change segmentation; it exists so callers that route text per
    language keep that routing explicit at the tokenizer boundary.

    Raises EncodingError when the text cannot be encoded as UTF-8
    (lone surrogates), identifying the byte offset of the failure.
    """
    del script_hint
    tokens: list[Token] = []
    i = 0
    byte = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if 0xD800 <= ord(ch) <= 0xDFFF:
            raise EncodingError("input is not valid Unicode text", byte)
        if ch.isspace():
            byte += len(ch.encode("utf-8"))
            i += 1
            continue
        start_i, start_b = i, byte
        if _is_latin_letter(ch):
            i, byte = _scan_latin(text, i, byte)
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.WORD, ScriptKind.LATIN)
        elif "0" <= ch <= "9":
            i, byte = _scan_while(text, i, byte, lambda c: "0" <= c <= "9")
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.DIGIT, ScriptKind.OTHER)
        elif _is_dev_digit(ch):
            i, byte = _scan_while(text, i, byte, _is_dev_digit)
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.DIGIT, ScriptKind.DEVANAGARI)
        elif _is_dev(ch) and not _is_dev_punct(ch):
            if _is_combining(ch):
                # No base character to attach to: isolate the orphan
                # marks.  The token keeps kind WORD but is labelled
                # script OTHER so Devanagari word tokens never start
                # with a combining mark.
                i, byte = _scan_while(text, i, byte, lambda c: _is_dev(c) and _is_combining(c))
                _emit(tokens, text, start_i, i, start_b, byte, TokenKind.WORD, ScriptKind.OTHER)
            else:
                i, byte = _scan_while(
                    text, i, byte,
                    lambda c: _is_dev(c) and not _is_dev_digit(c) and not _is_dev_punct(c),
                )
                _emit(tokens, text, start_i, i, start_b, byte, TokenKind.WORD, ScriptKind.DEVANAGARI)
        elif _is_other_word_char(ch):
            i, byte = _scan_while(text, i, byte, lambda c: _is_other_word_char(c) or (_is_combining(c) and not _is_dev(c)))
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.WORD, ScriptKind.OTHER)
        elif _is_combining(ch):
            # Orphan combining marks outside Devanagari: keep them as a
            # word token in script OTHER, mirroring the Devanagari case.
            i, byte = _scan_while(text, i, byte, _is_combining)
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.WORD, ScriptKind.OTHER)
        else:
            i, byte = _scan_while(text, i, byte, _is_punct_char)
            script = ScriptKind.DEVANAGARI if all(_is_dev(c) for c in text[start_i:i]) else ScriptKind.OTHER
            _emit(tokens, text, start_i, i, start_b, byte, TokenKind.PUNCT, script)
    return Sentence(raw=text, tokens=tuple(tokens))


def _is_punct_char(ch: str) -> bool:
    if ch.isspace() or ch.isalnum() or _is_combining(ch):
        return False
    if 0xD800 <= ord(ch) <= 0xDFFF:
        return False
    return True


def _scan_while(text: str, i: int, byte: int, pred) -> tuple[int, int]:
    n = len(text)
    while i < n and pred(text[i]):
        byte += len(text[i].encode("utf-8"))
        i += 1
    return i, byte


def _scan_latin(text: str, i: int, byte: int) -> tuple[int, int]:
    # Letters, with apostrophe or hyphen kept only between two letters.
    n = len(text)
    while i < n:
        ch = text[i]
        if _is_latin_letter(ch):
            byte += 1
            i += 1
        elif ch in _JOINERS and i + 1 < n and _is_latin_letter(text[i + 1]) \
                and i > 0 and _is_latin_letter(text[i - 1]):
            byte += 1
            i += 1
        else:
            break
    return i, byte


def _emit(tokens, text, start_i, end_i, start_b, end_b, kind, script):
    tokens.append(Token(text[start_i:end_i], kind, script, start_b, end_b))


def word_count(sentence: Sentence) -> int:
    """Number of WORD tokens; punctuation and digit runs do not count."""
    return sum(1 for t in sentence.tokens if t.kind is TokenKind.WORD)


def reconstruct(sentence: Sentence) -> str:
    """Reassemble the raw text from token spans plus the gaps between them.

    Exists for verification: the result is always byte-identical to the
    raw input.
    """
    enc = sentence.raw.encode("utf-8")
    out = bytearray()
    pos = 0
    for tok in sentence.tokens:
        out += enc[pos:tok.start]
        out += tok.surface.encode("utf-8")
        pos = tok.end
    out += enc[pos:]
    return out.decode("utf-8")
