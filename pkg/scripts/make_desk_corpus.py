#!/usr/bin/env python3
"""Regenerate the bundled demonstration corpus and its annotations.

The corpus is small enough to review by eye but large enough to train
the aligner and exercise the whole generation pipeline.  Tag lines in
the part-of-speech file are emitted from the tokenizer's own word
tokens, so surfaces always match one-to-one.

Run from the repository root:

    PYTHONPATH=src python scripts/make_desk_corpus.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from minglish.tokenizer import ScriptKind, tokenize  # noqa: E402

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "minglish" / "data" / "desk"

# id, english, marathi, english word tags (one per word token).
PAIRS = [
    ("cricket-worldcup",
     "Sachin tendulkar is an international cricketer from India who has won the 2011 world cup played in India",
     "सचिन तेंडुलकर हा भारतातील आंतरराष्ट्रीय क्रिकेटपटू आहे ज्याने २०११ मध्ये भारतात खेळलेला विश्वचषक जिंकला आहे",
     "PROPN PROPN AUX DET ADJ NOUN ADP PROPN PRON AUX VERB DET NOUN NOUN VERB ADP PROPN"),
    ("pune-university",
     "Which is the world famous university in Pune city?",
     "पुणे शहरातील जगप्रसिद्ध विद्यापीठ कोणते?",
     "PRON AUX DET ADV ADJ NOUN ADP PROPN NOUN"),
    ("mainland-coast",
     "Which is the southern coast of mainland India?",
     "भारताच्या मुख्य भूमीचा दक्षिण किनारा कोणता आहे?",
     "PRON AUX DET ADJ NOUN ADP ADJ PROPN"),
    ("temperature-extent",
     "To what extent does the temperature drop?",
     "तापमान कठं पर्यंत खाली येते?",
     "ADP DET NOUN AUX DET NOUN VERB"),
    ("curriculum-anthology",
     "Which anthology was included in the curriculum of many universities?",
     "अनेक विद्यापीठांच्या अभ्यासक्रमात कोणत्या काव्यसंग्रहाचा समावेश करण्यात आला?",
     "DET NOUN AUX VERB ADP DET NOUN ADP DET NOUN"),
    ("old-temple",
     "Which is the old temple in the city?",
     "शहरातील जुने मंदिर कोणते?",
     "PRON AUX DET ADJ NOUN ADP DET NOUN"),
    ("pune-museum",
     "The famous museum is in Pune city",
     "प्रसिद्ध संग्रहालय पुणे शहरात आहे",
     "DET ADJ NOUN AUX ADP PROPN NOUN"),
    ("long-river",
     "Which river is the longest river in India?",
     "भारतातील सर्वात लांब नदी कोणती?",
     "DET NOUN AUX DET ADJ NOUN ADP PROPN"),
    ("coast-famous",
     "The southern coast is famous",
     "दक्षिण किनारा प्रसिद्ध आहे",
     "DET ADJ NOUN AUX ADJ"),
    ("team-worldcup",
     "Which team won the world cup?",
     "विश्वचषक कोणत्या संघाने जिंकला?",
     "DET NOUN VERB DET NOUN NOUN"),
    ("winter-temperature",
     "The temperature drops in winter",
     "हिवाळ्यात तापमान खाली येते",
     "DET NOUN VERB ADP NOUN"),
    ("library-books",
     "The university library has many books",
     "विद्यापीठ ग्रंथालयात अनेक पुस्तके आहेत",
     "DET NOUN NOUN VERB DET NOUN"),
    ("famous-book",
     "Which book is famous in India?",
     "भारतात कोणते पुस्तक प्रसिद्ध आहे?",
     "DET NOUN AUX ADJ ADP PROPN"),
    ("students-study",
     "The students study science and history",
     "विद्यार्थी विज्ञान आणि इतिहास शिकतात",
     "DET NOUN VERB NOUN CCONJ NOUN"),
    ("capital-city",
     "Which city is the capital of India?",
     "भारताची राजधानी कोणते शहर आहे?",
     "DET NOUN AUX DET NOUN ADP PROPN"),
    ("history-museum",
     "The history museum is old",
     "इतिहास संग्रहालय जुने आहे",
     "DET NOUN NOUN AUX ADJ"),
    ("marathi-language",
     "Marathi is the language of Maharashtra",
     "मराठी महाराष्ट्राची भाषा आहे",
     "PROPN AUX DET NOUN ADP PROPN"),
    ("famous-player",
     "The famous player is from Pune",
     "प्रसिद्ध खेळाडू पुण्याचा आहे",
     "DET ADJ NOUN AUX ADP PROPN"),
    ("high-mountain",
     "Which mountain is the highest mountain in India?",
     "भारतातील सर्वात उंच पर्वत कोणता?",
     "DET NOUN AUX DET ADJ NOUN ADP PROPN"),
    ("music-teacher",
     "The school teacher teaches music",
     "शाळेतील शिक्षक संगीत शिकवतात",
     "DET NOUN NOUN VERB NOUN"),
    ("new-technology",
     "The computer technology is new",
     "संगणक तंत्रज्ञान नवीन आहे",
     "DET NOUN NOUN AUX ADJ"),
    ("film-award",
     "Which film won the award?",
     "कोणत्या चित्रपटाने पुरस्कार जिंकला?",
     "DET NOUN VERB DET NOUN"),
    ("clean-water",
     "The water of the river is clean",
     "नदीचे पाणी स्वच्छ आहे",
     "DET NOUN ADP DET NOUN AUX ADJ"),
    ("village-temple",
     "The temple of the village is old",
     "गावातील मंदिर जुने आहे",
     "DET NOUN ADP DET NOUN AUX ADJ"),
]

# Curated links for the first pair (english-index - marathi-index).  The
# remaining pairs rely on the dictionary or stay unaligned.
ALIGNMENTS = {"cricket-worldcup": "4-4 5-5 12-11 13-11"}

DICTIONARY = [
    ("विद्यापीठ", "university"),
    ("जगप्रसिद्ध", "famous"),
    ("आंतरराष्ट्रीय", "international"),
    ("क्रिकेटपटू", "cricketer"),
    ("विश्वचषक", "world,cup"),
    ("तापमान", "temperature"),
    ("पर्यंत", "extent"),
    ("किनारा", "coast"),
    ("दक्षिण", "southern"),
    ("अभ्यासक्रमात", "curriculum"),
    ("काव्यसंग्रहाचा", "anthology"),
]

RATINGS = [
    ("pune-university", [("r1", 10), ("r2", 9), ("r3", 10)]),
    ("temperature-extent", [("r1", 7), ("r2", 8), ("r3", 6)]),
    ("mainland-coast", [("r1", 10), ("r2", 10), ("r3", 9)]),
    ("curriculum-anthology", [("r1", 9), ("r2", 8), ("r3", 9)]),
]


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    parallel = ["# bundled demonstration corpus", "# id<TAB>english<TAB>marathi"]
    pos_blocks = ["# part-of-speech annotations for the english side"]
    alignment_lines = []
    for pair_id, english, marathi, tag_string in PAIRS:
        en_words = [t.surface for t in tokenize(english, ScriptKind.LATIN).tokens
                    if t.kind.value == "word"]
        tags = tag_string.split()
        if len(en_words) != len(tags):
            raise SystemExit(
                f"{pair_id}: {len(tags)} tags but {len(en_words)} word tokens: {en_words}")
        parallel.append(f"{pair_id}\t{english}\t{marathi}")
        pos_blocks.append("")
        pos_blocks.append(f"# id = {pair_id}")
        pos_blocks.extend(f"{w}\t{t}" for w, t in zip(en_words, tags))
        alignment_lines.append(ALIGNMENTS.get(pair_id, ""))

    (OUT_DIR / "parallel.tsv").write_text("\n".join(parallel) + "\n", encoding="utf-8")
    (OUT_DIR / "pos.tsv").write_text("\n".join(pos_blocks) + "\n", encoding="utf-8")
    (OUT_DIR / "alignments.txt").write_text("\n".join(alignment_lines) + "\n", encoding="utf-8")

    dictionary = ["# marathi<TAB>english glosses in priority order"]
    dictionary += [f"{k}\t{v}" for k, v in DICTIONARY]
    (OUT_DIR / "dictionary.tsv").write_text("\n".join(dictionary) + "\n", encoding="utf-8")

    ratings = ["pair_id,rater_id,score"]
    for pair_id, scores in RATINGS:
        ratings += [f"{pair_id},{rater},{score}" for rater, score in scores]
    (OUT_DIR / "ratings.csv").write_text("\n".join(ratings) + "\n", encoding="utf-8")

    print(f"wrote {len(PAIRS)} pairs to {OUT_DIR}")


if __name__ == "__main__":
    main()
