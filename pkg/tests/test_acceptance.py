"""Acceptance suite: nine criteria, each reporting one PASS/FAIL line.

Every test appends `ACCEPTANCE <n>: PASS — <measured detail>` (or FAIL)
to the reporter in conftest, which echoes the lines after the run
summary.  Timed criteria measure wall-clock with time.monotonic and
enforce their stated budgets.
"""

import io
import itertools
import json
import random
import time
from contextlib import contextmanager

import conftest
from conftest import make_pair
from minglish.aligner import align, train
from minglish.chunker import PhraseKind, PhraseSpan
from minglish.cli import run
from minglish.corpus_io import load_parallel
from minglish.metrics import DcmRecord, LangTag, cmi, dcm_report
from minglish.mixer import (
    AlignmentLinks,
    SubstitutionPolicy,
    apply_plan,
    plan_substitutions,
)
from minglish.aligner import LinkSource, parse_pharaoh, serialize_pharaoh
from minglish.tokenizer import TokenKind
from minglish.transliterator import (
    Direction,
    invert_lexicon,
    load_lexicon,
    load_rules,
    transliterate_word,
)
from oracles import greedy_translit_reference
from test_transliterator import RULES_30, make_table

CRICKET_SENTENCE = ("सचिन तेंडुलकर हा भारतातील इंटरनॅशनल क्रिकेटर आहे ज्याने "
                   "२०११ मध्ये भारतात खेळलेला वर्ल्ड कप जिंकला आहे")
UNIVERSITY_SENTENCE = "पुणे शहरातील फेमस युनिव्हर्सिटी कोणते?"

DESK_FLAGS = [
    "--corpus", "@data/desk/parallel.tsv",
    "--alignments", "@data/desk/alignments.txt",
    "--dictionary", "@data/desk/dictionary.tsv",
    "--pos", "@data/desk/pos.tsv",
]


@contextmanager
def criterion(number: int):
    """Collect one acceptance line; FAIL lines carry the failure text."""
    info = {"detail": ""}
    try:
        yield info
    except BaseException as exc:
        text = f"{type(exc).__name__}: {exc}".replace("\n", " ")[:200]
        conftest.ACCEPTANCE_RESULTS.append(
            f"ACCEPTANCE {number}: FAIL — {text}")
        raise
    conftest.ACCEPTANCE_RESULTS.append(
        f"ACCEPTANCE {number}: PASS — {info['detail']}")


def invoke(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(args), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def tagged(embedded_flags):
    return [(TokenKind.WORD,
             LangTag.EMBEDDED if flag else LangTag.MATRIX)
            for flag in embedded_flags]


def test_criterion_1_cmi_goldens():
    with criterion(1) as info:
        started = time.monotonic()
        # Two embedded words out of five, for both golden table rows.
        row1 = cmi(tagged([0, 0, 1, 1, 0]))
        row2 = cmi(tagged([1, 0, 1, 0, 0]))
        assert row1.value == 0.4 and row2.value == 0.4
        worked = cmi(tagged([1, 0, 1, 0, 1, 0, 0]))
        assert abs(worked.value - 0.4286) <= 5e-4
        elapsed = time.monotonic() - started
        assert elapsed < 1.0
        info["detail"] = (f"row scores 0.4/0.4, worked example "
                          f"{worked.value:.4f}, {elapsed * 1000:.0f}ms < 1s")


def test_criterion_2_end_to_end_goldens(tmp_path):
    with criterion(2) as info:
        started = time.monotonic()
        out_path = tmp_path / "desk.jsonl"
        code, echoed, _ = invoke("generate", *DESK_FLAGS,
                                 "--out", str(out_path))
        assert code == 0
        rows = {json.loads(line)["id"]: json.loads(line)
                for line in out_path.read_text(encoding="utf-8").splitlines()}
        assert rows["cricket-worldcup"]["devanagari"] == CRICKET_SENTENCE
        assert rows["pune-university"]["devanagari"] == UNIVERSITY_SENTENCE
        assert CRICKET_SENTENCE in echoed.splitlines()
        assert UNIVERSITY_SENTENCE in echoed.splitlines()
        elapsed = time.monotonic() - started
        assert elapsed < 5.0
        info["detail"] = (f"both desk sentences byte-identical, "
                          f"{elapsed:.2f}s < 5s")


def bijective_corpus():
    english = ["alpha", "bravo", "carol", "delta", "echox",
               "foxtt", "golfy", "hotel", "india", "julia"]
    marathi = ["कख", "गघ", "चछ", "जझ", "टठ", "डढ", "तथ", "दध", "पफ", "बभ"]
    pairs = []
    for i in range(10):
        idx = [i, (i + 1) % 10, (i + 2) % 10]
        pairs.append(make_pair(
            f"bij-{i}",
            " ".join(english[j] for j in idx),
            " ".join(marathi[j] for j in idx)))
    return pairs


def test_criterion_3_aligner_properties():
    with criterion(3) as info:
        started = time.monotonic()
        corpus = bijective_corpus()
        # Row stochasticity holds after every iteration count up to ten.
        for iterations in range(1, 11):
            model = train(corpus, iterations=iterations, floor=1e-6)
            for english_word, row in model.ttable.items():
                total = sum(row.values())
                assert abs(total - 1.0) <= 1e-6, (iterations, english_word)
        # The ten-iteration model recovers the position bijection.
        model = train(corpus, iterations=10, floor=1e-6)
        for pair in corpus:
            assert align(model, pair).pairs() == {(0, 0), (1, 1), (2, 2)}, pair.id
        # Log-likelihood never decreases across iterations.
        history = model.log_likelihoods
        assert len(history) == 10
        for earlier, later in zip(history, history[1:]):
            assert later >= earlier - 1e-9
        elapsed = time.monotonic() - started
        assert elapsed < 10.0
        info["detail"] = (f"bijection recovered on 10/10 pairs, LL "
                          f"monotone over {len(history)} iterations, rows "
                          f"stochastic, {elapsed:.2f}s < 10s")


def property_corpus():
    """100 deterministic synthetic pairs with links and phrases."""
    en_syllables = [c + v for c in "bdgkmnprst" for v in "aeiou"]
    mr_syllables = [c + v for c in "कखगघतथदनपब"
                    for v in ("", "ा", "ि", "ी", "ू")]
    rng = random.Random(424242)
    bundle = []
    for index in range(100):
        en_words = [rng.choice(en_syllables) + rng.choice(en_syllables)
                    for _ in range(rng.randint(4, 10))]
        mr_words = [rng.choice(mr_syllables) + rng.choice(mr_syllables)
                    for _ in range(rng.randint(4, 10))]
        pair = make_pair(f"prop-{index}", " ".join(en_words),
                         " ".join(mr_words) + "?")
        links = AlignmentLinks(pair.id, {
            (rng.randrange(len(en_words)), rng.randrange(len(mr_words))):
                LinkSource.MODEL
            for _ in range(rng.randint(1, 6))})
        phrases = []
        start = 0
        while start < len(en_words):
            end = min(start + rng.randint(1, 3), len(en_words))
            if rng.random() < 0.8:
                phrases.append(PhraseSpan(PhraseKind.NP, start, end))
            start = end
        bundle.append((pair, links, phrases))
    return bundle


def test_criterion_4_policy_properties():
    with criterion(4) as info:
        table = load_rules(
            conftest.DATA_DIR / "roman_to_devanagari.rules.tsv",
            Direction.ROMAN_TO_DEVANAGARI)
        bundle = property_corpus()
        identical = 0
        for pair, links, phrases in bundle:
            zero_plan = plan_substitutions(pair, links, phrases,
                                           SubstitutionPolicy.at_rate(0.0))
            assert zero_plan == []
            sentence = apply_plan(pair, zero_plan, table)
            source = [t.surface for t in pair.marathi.tokens]
            assert [t.surface for t in sentence.out_tokens] == source
            assert sentence.cmi == 0.0
            identical += 1

            all_plan = plan_substitutions(pair, links, phrases,
                                          SubstitutionPolicy.all())
            for seed in (0, 7):
                assert plan_substitutions(
                    pair, links, phrases,
                    SubstitutionPolicy.at_rate(1.0, seed=seed)) == all_plan

            previous = set()
            for rate in (0.2, 0.5, 0.8):
                plan = set(plan_substitutions(
                    pair, links, phrases,
                    SubstitutionPolicy.at_rate(rate, seed=11)))
                assert previous <= plan
                previous = plan
        assert identical == 100
        info["detail"] = ("rate(0) identity on 100/100 pairs, rate(1)=all, "
                          "plans monotone over p in {0.2, 0.5, 0.8}")


def test_criterion_5_desk_corpus_band(tmp_path):
    with criterion(5) as info:
        first = tmp_path / "first.jsonl"
        second = tmp_path / "second.jsonl"
        base = ["generate", "--corpus", "@data/desk/parallel.tsv",
                "--dictionary", "@data/desk/dictionary.tsv",
                "--pos", "@data/desk/pos.tsv", "--train-in-place"]
        for target in (first, second):
            code, _, _ = invoke(*base, "--out", str(target))
            assert code == 0
        values = [json.loads(line)["cmi"]
                  for line in first.read_text(encoding="utf-8").splitlines()]
        assert len(values) >= 20
        mean = sum(values) / len(values)
        assert 0.1 <= mean <= 0.5
        assert first.read_bytes() == second.read_bytes()
        info["detail"] = (f"mean CMI {mean:.4f} within [0.1, 0.5] over "
                          f"{len(values)} pairs; reruns byte-identical")


def test_criterion_6_transliteration():
    with criterion(6) as info:
        r2d = load_rules(conftest.DATA_DIR / "roman_to_devanagari.rules.tsv",
                         Direction.ROMAN_TO_DEVANAGARI)
        d2r = load_rules(conftest.DATA_DIR / "devanagari_to_roman.rules.tsv",
                         Direction.DEVANAGARI_TO_ROMAN)
        lexicon = load_lexicon(conftest.DATA_DIR / "seed_lexicon.tsv",
                               Direction.ROMAN_TO_DEVANAGARI)
        inverted = invert_lexicon(lexicon)
        assert len(lexicon.entries) == 13
        for english, devanagari in lexicon.entries.items():
            assert transliterate_word(english, r2d, lexicon) == devanagari
            assert transliterate_word(devanagari, d2r, inverted) == english

        table = make_table(RULES_30)
        assert len(table.rules) == 30
        checked = 0
        for length in range(1, 9):
            for letters in itertools.product("abc", repeat=length):
                word = "".join(letters)
                expected, _ = greedy_translit_reference(word, RULES_30)
                assert transliterate_word(word, table) == expected, word
                checked += 1
        info["detail"] = (f"13/13 lexicon entries round-trip; greedy matches "
                          f"oracle on {checked} words up to 8 letters")


def test_criterion_7_dcm_aggregation():
    with criterion(7) as info:
        report = dcm_report([DcmRecord("q1", "expert", 10),
                             DcmRecord("q2", "expert", 7),
                             DcmRecord("q3", "expert", 9)])
        assert abs(report.mean - 8.667) <= 1e-3
        assert sum(report.histogram) == 3
        info["detail"] = (f"mean {report.mean:.3f} within 1e-3 of 8.667, "
                          f"histogram sums to 3")


def corrupt_corpus_lines():
    """1000 TSV lines, exactly 50 of them defective, as (lines, bad)."""
    rng = random.Random(13)
    bad_lines = set(rng.sample(range(1, 1001), 50))
    en_vocab = ["alpha", "bravo", "case", "delta", "extra", "frame"]
    mr_vocab = ["कखग", "घचछ", "जझट", "ठडढ", "तथद", "नपफ"]
    lines: list[bytes] = []
    corruption = itertools.cycle(
        ["two-fields", "empty-english", "empty-marathi", "empty-id",
         "duplicate-id", "bad-utf8", "wordless-english"])
    first_good: str | None = None
    for lineno in range(1, 1001):
        english = " ".join(rng.choice(en_vocab) for _ in range(4))
        marathi = " ".join(rng.choice(mr_vocab) for _ in range(4))
        if lineno not in bad_lines:
            if first_good is None:
                first_good = f"pair-{lineno}"
            lines.append(f"pair-{lineno}\t{english}\t{marathi}".encode())
            continue
        kind = next(corruption)
        if kind == "duplicate-id" and first_good is None:
            kind = "two-fields"
        if kind == "two-fields":
            lines.append(f"pair-{lineno}\t{english}".encode())
        elif kind == "empty-english":
            lines.append(f"pair-{lineno}\t\t{marathi}".encode())
        elif kind == "empty-marathi":
            lines.append(f"pair-{lineno}\t{english}\t".encode())
        elif kind == "empty-id":
            lines.append(f"\t{english}\t{marathi}".encode())
        elif kind == "duplicate-id":
            lines.append(f"{first_good}\t{english}\t{marathi}".encode())
        elif kind == "bad-utf8":
            lines.append(f"pair-{lineno}\t{english}\t".encode() + b"\xff\xfe")
        else:  # wordless-english
            lines.append(f"pair-{lineno}\t123 456 789\t{marathi}".encode())
    return lines, bad_lines


def test_criterion_8_format_robustness(tmp_path):
    with criterion(8) as info:
        lines, bad_lines = corrupt_corpus_lines()
        path = tmp_path / "big.tsv"
        path.write_bytes(b"\n".join(lines) + b"\n")
        pairs, diagnostics = load_parallel(path)
        reported = {int(d.record) for d in diagnostics.errors()}
        assert reported == bad_lines
        assert len(diagnostics.items) == 50
        assert len(pairs) == 950
        assert diagnostics.loaded == 950 and diagnostics.skipped == 50
        assert diagnostics.reconciles()

        rng = random.Random(99)
        round_trips = 0
        for _ in range(1000):
            links = {(rng.randrange(40), rng.randrange(40))
                     for _ in range(rng.randrange(16))}
            serialized = serialize_pharaoh(
                AlignmentLinks("x", {link: LinkSource.MODEL
                                     for link in links}))
            parsed = parse_pharaoh(serialized, "x")
            assert parsed.pairs() == links
            assert serialize_pharaoh(parsed) == serialized
            round_trips += 1
        info["detail"] = (f"exactly the 50 corrupt lines diagnosed, 950 "
                          f"loaded; {round_trips} pharaoh round-trips exact")


def test_criterion_9_generation_speed(tmp_path):
    with criterion(9) as info:
        en_syllables = [c + v for c in "bdfgklmnprst" for v in "aeiou"]
        mr_syllables = [c + v for c in "कखगघचजझतथदनपबमयरलवसह"
                        for v in ("", "ा", "ि", "ी", "ु", "ू", "े", "ो")]
        rng = random.Random(7)
        rows = []
        for index in range(1000):
            count = rng.randint(8, 12)
            english = " ".join(
                rng.choice(en_syllables) + rng.choice(en_syllables)
                for _ in range(count))
            marathi = " ".join(
                rng.choice(mr_syllables) + rng.choice(mr_syllables)
                for _ in range(count))
            rows.append(f"synth-{index}\t{english}\t{marathi}")
        corpus = tmp_path / "synthetic.tsv"
        corpus.write_text("".join(row + "\n" for row in rows),
                          encoding="utf-8")
        out_path = tmp_path / "synthetic.jsonl"

        started = time.monotonic()
        code, _, err = invoke("generate", "--corpus", str(corpus),
                              "--train-in-place", "--jobs", "1",
                              "--out", str(out_path))
        elapsed = time.monotonic() - started
        assert code == 0
        assert "generated 1000 sentences" in err
        assert elapsed < 10.0
        info["detail"] = (f"1000 pairs generated end to end in "
                          f"{elapsed:.2f}s < 10s single-threaded")
