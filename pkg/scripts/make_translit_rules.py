#!/usr/bin/env python3
"""Regenerate the shipped transliteration rule tables.

The tables are data, but large and regular, so they are generated from
the compact maps below instead of being maintained by hand.  Run from
the repository root:

    python scripts/make_translit_rules.py

Output goes to src/minglish/data/.  Both files are deterministic, so
rerunning the script must leave a clean git diff.
"""

from __future__ import annotations

from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "minglish" / "data"

VIRAMA = "्"
NUKTA = "़"

# Roman consonant units.  The value is the Devanagari string whose last
# character carries matras; multi-character bases cover cluster-like
# letters (x, qu) and the nasal digraph.
ROMAN_CONSONANTS = {
    "b": "ब", "c": "क", "d": "ड", "f": "फ", "g": "ग", "h": "ह",
    "j": "ज", "k": "क", "l": "ल", "m": "म", "n": "न", "p": "प",
    "q": "क", "r": "र", "s": "स", "t": "ट", "v": "व", "w": "व",
    "x": "क" + VIRAMA + "स", "y": "य", "z": "झ",
    "bh": "भ", "ch": "च", "ck": "क", "dh": "ध", "gh": "घ",
    "jh": "झ", "kh": "ख", "ng": "ंग", "ph": "फ",
    "qu": "क" + VIRAMA + "व", "sh": "श", "th": "थ", "wh": "व",
    "zh": "झ",
}

# Roman vowel units: (independent letter, matra).  The bare "a" is the
# inherent vowel, so its matra is empty.
ROMAN_VOWELS = {
    "a": ("अ", ""),
    "aa": ("आ", "ा"),
    "ai": ("ऐ", "ै"),
    "au": ("औ", "ौ"),
    "e": ("ए", "े"),
    "ea": ("ई", "ी"),
    "ee": ("ई", "ी"),
    "i": ("इ", "ि"),
    "ii": ("ई", "ी"),
    "o": ("ओ", "ो"),
    "oa": ("ओ", "ो"),
    "oo": ("ऊ", "ू"),
    "ou": ("औ", "ौ"),
    "u": ("उ", "ु"),
}

# Devanagari consonants with their Roman base (no inherent vowel).
DEV_CONSONANTS = {
    "क": "k", "ख": "kh", "ग": "g", "घ": "gh", "ङ": "ng",
    "च": "ch", "छ": "chh", "ज": "j", "झ": "jh", "ञ": "ny",
    "ट": "t", "ठ": "th", "ड": "d", "ढ": "dh", "ण": "n",
    "त": "t", "थ": "th", "द": "d", "ध": "dh", "न": "n",
    "प": "p", "फ": "ph", "ब": "b", "भ": "bh", "म": "m",
    "य": "y", "र": "r", "ल": "l", "ळ": "l", "व": "v",
    "श": "sh", "ष": "sh", "स": "s", "ह": "h",
}

DEV_INDEPENDENT_VOWELS = {
    "अ": "a", "आ": "aa", "इ": "i", "ई": "ii", "उ": "u", "ऊ": "uu",
    "ऋ": "ru", "ॠ": "ruu", "ऌ": "li", "ॡ": "lii",
    "ऄ": "a", "ऍ": "e", "ऎ": "e", "ए": "e", "ऐ": "ai",
    "ऑ": "o", "ऒ": "o", "ओ": "o", "औ": "au", "ॲ": "e",
    "ॳ": "o", "ॴ": "oo", "ॵ": "au", "ॶ": "u", "ॷ": "uu",
}

DEV_MATRAS = {
    "ा": "aa", "ि": "i", "ी": "ii", "ु": "u",
    "ू": "uu", "ृ": "ru", "ॄ": "ruu",
    "ॅ": "e", "ॆ": "e", "े": "e", "ै": "ai",
    "ॉ": "o", "ॊ": "o", "ो": "o", "ौ": "au",
    "ॎ": "e", "ॏ": "au",
    "ॕ": "e", "ॖ": "u", "ॗ": "uu",
    "ॢ": "li", "ॣ": "lii",
}

DEV_SIGNS = {
    "ऀ": "n", "ँ": "n", "ं": "n", "ः": "h",
    "ऽ": "", "ॐ": "om",
    "।": ".", "॥": "..", "॰": ".", "ॱ": "",
}

# Rare nukta consonants kept as single-character approximations.
DEV_NUKTA_CONSONANTS = {
    "ऩ": "n", "ऱ": "r", "ऴ": "l",
    "क़": "q", "ख़": "kh", "ग़": "g", "ज़": "z",
    "ड़": "d", "ढ़": "dh", "फ़": "f", "य़": "y",
}

DEV_DIGITS = {chr(0x0966 + n): str(n) for n in range(10)}


def roman_to_devanagari_rules():
    rules = []
    for unit, base in ROMAN_CONSONANTS.items():
        # Bare consonant: dead (virama) form in clusters, full letter at
        # the end of the word, matching the usual spelling of English
        # loans (cup -> क..प with the final letter carrying inherent a).
        rules.append((unit, base + VIRAMA, "any"))
        rules.append((unit, base, "final"))
        for vowel, (_independent, matra) in ROMAN_VOWELS.items():
            pattern = unit + vowel
            if pattern in ROMAN_CONSONANTS:
                continue  # "qu" is claimed by the consonant digraph
            rules.append((pattern, base + matra, "any"))
    for vowel, (independent, _matra) in ROMAN_VOWELS.items():
        rules.append((vowel, independent, "any"))
    return rules


def devanagari_to_roman_rules():
    rules = []
    for cons, rom in DEV_CONSONANTS.items():
        rules.append((cons + VIRAMA, rom, "any"))
        for matra, vowel in DEV_MATRAS.items():
            rules.append((cons + matra, rom + vowel, "any"))
        rules.append((cons, rom + "a", "any"))
    for cons, rom in DEV_NUKTA_CONSONANTS.items():
        rules.append((cons, rom + "a", "any"))
    for dev, rom in {**DEV_INDEPENDENT_VOWELS, **DEV_MATRAS,
                     **DEV_SIGNS, **DEV_DIGITS}.items():
        rules.append((dev, rom, "any"))
    covered = {p for p, _r, _pos in rules if len(p) == 1}
    for cp in range(0x0900, 0x0980):
        ch = chr(cp)
        if ch not in covered:
            # Rare marks and vedic signs romanize to nothing rather
            # than leaking non-ASCII into the output.
            rules.append((ch, "", "any"))
    return rules


def write_rules(path: Path, rules, title: str):
    lines = [f"# {title}", "# pattern<TAB>replacement<TAB>position"]
    seen = set()
    ordered = sorted(rules, key=lambda r: (-len(r[0]), r[0], r[2]))
    for pattern, replacement, position in ordered:
        key = (pattern, position)
        if key in seen:
            raise SystemExit(f"duplicate rule generated: {key}")
        seen.add(key)
        lines.append(f"{pattern}\t{replacement}\t{position}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(ordered)} rules)")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    r2d = roman_to_devanagari_rules()
    assert ("k", "क" + VIRAMA, "any") in r2d
    assert ("k", "क", "final") in r2d
    write_rules(OUT_DIR / "roman_to_devanagari.rules.tsv", r2d,
                "Roman to Devanagari grapheme rules (generated)")
    d2r = devanagari_to_roman_rules()
    write_rules(OUT_DIR / "devanagari_to_roman.rules.tsv", d2r,
                "Devanagari to Roman grapheme rules (generated)")


if __name__ == "__main__":
    main()
