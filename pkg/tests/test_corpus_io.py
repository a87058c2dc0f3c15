"""Robust loading of the external file formats and JSONL round-trips."""

import json

import pytest

from conftest import make_pair
from minglish.corpus_io import (
    CorpusDiagnostics,
    load_alignments,
    load_dictionary,
    load_parallel,
    read_jsonl,
    write_jsonl,
)
from minglish.errors import CorpusError
from minglish.metrics import LangTag
from minglish.mixer import CodeMixedSentence, OutToken, Replacement


def write(tmp_path, name, body, binary=False):
    path = tmp_path / name
    if binary:
        path.write_bytes(body)
    else:
        path.write_text(body, encoding="utf-8")
    return path


GOOD_TSV = """\
# demo corpus
a\tthe house\tते घर
b\tthe book\tते पुस्तक

c\tWhich city?\tकोणते शहर?
"""


class TestLoadParallel:
    def test_loads_valid_records(self, tmp_path):
        pairs, diagnostics = load_parallel(write(tmp_path, "c.tsv", GOOD_TSV))
        assert [p.id for p in pairs] == ["a", "b", "c"]
        assert diagnostics.items == []
        assert diagnostics.loaded == 3
        assert diagnostics.skipped == 0
        assert diagnostics.ignored_lines == 2
        assert diagnostics.reconciles()

    def test_field_count_error_names_line(self, tmp_path):
        path = write(tmp_path, "c.tsv", "a\tonly-two-fields\n")
        pairs, diagnostics = load_parallel(path)
        assert pairs == []
        assert diagnostics.skipped == 1
        assert diagnostics.items[0].record == "1"
        assert "3 tab-separated" in diagnostics.items[0].message

    def test_duplicate_id_keeps_first(self, tmp_path):
        body = "a\tthe house\tते घर\na\tthe book\tते पुस्तक\n"
        pairs, diagnostics = load_parallel(write(tmp_path, "c.tsv", body))
        assert len(pairs) == 1
        assert pairs[0].english_forms() == ["the", "house"]
        assert diagnostics.items[0].record == "2"
        assert "duplicate" in diagnostics.items[0].message

    def test_empty_sides_and_ids_skipped(self, tmp_path):
        body = "\tx\tय\na\t\tय\nb\tx\t\n"
        pairs, diagnostics = load_parallel(write(tmp_path, "c.tsv", body))
        assert pairs == []
        assert diagnostics.skipped == 3
        messages = " | ".join(d.message for d in diagnostics.items)
        assert "empty id" in messages
        assert "empty english" in messages
        assert "empty marathi" in messages

    def test_wordless_side_skipped(self, tmp_path):
        body = "a\t123 456\tते घर\nb\tthe house\t?!\n"
        pairs, diagnostics = load_parallel(write(tmp_path, "c.tsv", body))
        assert pairs == []
        assert all("no word tokens" in d.message for d in diagnostics.items)

    def test_bad_utf8_line_skipped_others_survive(self, tmp_path):
        body = "a\tthe house\tते घर\n".encode() + \
            b"b\tbad \xff byte\t\xe0\xa4\x98\n" + \
            "c\tthe book\tते पुस्तक\n".encode()
        pairs, diagnostics = load_parallel(
            write(tmp_path, "c.tsv", body, binary=True))
        assert [p.id for p in pairs] == ["a", "c"]
        assert diagnostics.skipped == 1
        assert "UTF-8" in diagnostics.items[0].message
        assert diagnostics.items[0].record == "2"
        assert diagnostics.reconciles()

    def test_crlf_and_bom_tolerated(self, tmp_path):
        body = b"\xef\xbb\xbfa\tthe house\t" + "ते घर".encode() + b"\r\n"
        pairs, diagnostics = load_parallel(
            write(tmp_path, "c.tsv", body, binary=True))
        assert len(pairs) == 1
        assert pairs[0].id == "a"
        assert diagnostics.items == []

    def test_unreadable_path_raises(self, tmp_path):
        with pytest.raises(CorpusError):
            load_parallel(tmp_path / "missing.tsv")

    def test_shipped_desk_corpus_loads_cleanly(self, desk_dir):
        pairs, diagnostics = load_parallel(desk_dir / "parallel.tsv")
        assert len(pairs) == 24
        assert diagnostics.items == []
        assert diagnostics.reconciles()


class TestLoadDictionary:
    def test_multiple_glosses_in_order(self, tmp_path):
        path = write(tmp_path, "d.tsv", "विश्वचषक\tworld,cup\nघर\thouse\n")
        dictionary, diagnostics = load_dictionary(path)
        assert dictionary == {"विश्वचषक": ["world", "cup"], "घर": ["house"]}
        assert diagnostics.items == []

    def test_bad_lines_reported(self, tmp_path):
        path = write(tmp_path, "d.tsv", "nokey\nघर\t\nघर\thouse\nघर\thome\n")
        dictionary, diagnostics = load_dictionary(path)
        assert dictionary == {"घर": ["house"]}
        assert diagnostics.skipped == 3
        assert any("duplicate" in d.message for d in diagnostics.items)

    def test_gloss_whitespace_stripped(self, tmp_path):
        path = write(tmp_path, "d.tsv", "घर\t house , home \n")
        dictionary, _ = load_dictionary(path)
        assert dictionary["घर"] == ["house", "home"]

    def test_shipped_desk_dictionary_loads(self, desk_dir):
        dictionary, diagnostics = load_dictionary(desk_dir / "dictionary.tsv")
        assert diagnostics.items == []
        assert dictionary["विश्वचषक"] == ["world", "cup"]
        assert dictionary["विद्यापीठ"] == ["university"]


class TestLoadAlignments:
    def corpus(self):
        return [make_pair("a", "the house", "ते घर"),
                make_pair("b", "the book", "ते पुस्तक")]

    def test_one_line_per_pair(self, tmp_path):
        path = write(tmp_path, "a.txt", "0-0 1-1\n\n")
        links, diagnostics = load_alignments(path, self.corpus())
        assert links["a"].pairs() == {(0, 0), (1, 1)}
        assert links["b"].pairs() == set()
        assert diagnostics.loaded == 2
        assert diagnostics.items == []

    def test_count_mismatch_raises(self, tmp_path):
        path = write(tmp_path, "a.txt", "0-0\n")
        with pytest.raises(CorpusError, match="1 lines.*2 pairs"):
            load_alignments(path, self.corpus())

    def test_malformed_line_becomes_empty_with_diagnostic(self, tmp_path):
        path = write(tmp_path, "a.txt", "0-0\n0-x\n")
        links, diagnostics = load_alignments(path, self.corpus())
        assert links["b"].pairs() == set()
        assert diagnostics.skipped == 1
        assert diagnostics.items[0].record == "2"
        assert diagnostics.reconciles()

    def test_out_of_range_indices_rejected(self, tmp_path):
        path = write(tmp_path, "a.txt", "0-0 5-1\n0-0\n")
        links, diagnostics = load_alignments(path, self.corpus())
        assert links["a"].pairs() == set()
        assert links["b"].pairs() == {(0, 0)}
        assert "exceed word counts" in diagnostics.items[0].message

    def test_shipped_desk_alignments_load(self, desk_dir):
        pairs, _ = load_parallel(desk_dir / "parallel.tsv")
        links, diagnostics = load_alignments(desk_dir / "alignments.txt", pairs)
        assert diagnostics.items == []
        assert links["cricket-worldcup"].pairs() == \
            {(4, 4), (5, 5), (12, 11), (13, 11)}


def sample_sentence():
    return CodeMixedSentence(
        pair_id="row-1",
        out_tokens=(
            OutToken("पुणे", LangTag.MATRIX),
            OutToken("फेमस", LangTag.EMBEDDED, en_surface="famous"),
            OutToken("?", LangTag.MATRIX),
        ),
        replacements=(Replacement("NP", 4, 5, 2, 3, 1),),
        cmi=0.5,
    )


class TestJsonl:
    def test_empty_write(self, tmp_path):
        path = tmp_path / "out.jsonl"
        assert write_jsonl([], path) == 0
        assert path.read_bytes() == b""
        assert read_jsonl(path) == []

    def test_round_trip_identity(self, tmp_path):
        rows = [(sample_sentence(), "पुणे फेमस?", "pune famous?")]
        path = tmp_path / "out.jsonl"
        assert write_jsonl(rows, path) == 1
        assert read_jsonl(path) == rows

    def test_key_order_and_en_surface_placement(self, tmp_path):
        path = tmp_path / "out.jsonl"
        write_jsonl([(sample_sentence(), "द", "l")], path)
        obj = json.loads(path.read_text(encoding="utf-8"))
        assert list(obj) == ["id", "devanagari", "latin", "tokens",
                             "replacements", "cmi"]
        assert "en_surface" not in obj["tokens"][0]
        assert obj["tokens"][1]["en_surface"] == "famous"
        assert list(obj["replacements"][0]) == \
            ["kind", "en_start", "en_end", "m_start", "m_end", "inserted"]

    def test_output_is_not_ascii_escaped(self, tmp_path):
        path = tmp_path / "out.jsonl"
        write_jsonl([(sample_sentence(), "पुणे फेमस?", "pune famous?")], path)
        raw = path.read_text(encoding="utf-8")
        assert "पुणे" in raw and "\\u" not in raw

    def test_two_rows_two_parseable_lines(self, tmp_path):
        rows = [(sample_sentence(), "द", "l"), (sample_sentence(), "द2", "l2")]
        path = tmp_path / "out.jsonl"
        assert write_jsonl(rows, path) == 2
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        for line in lines:
            json.loads(line)

    def test_read_rejects_bad_json(self, tmp_path):
        path = write(tmp_path, "bad.jsonl", '{"id": 1\n')
        with pytest.raises(CorpusError, match="line 1"):
            read_jsonl(path)

    def test_identical_runs_identical_bytes(self, tmp_path):
        rows = [(sample_sentence(), "द", "l")]
        first = tmp_path / "a.jsonl"
        second = tmp_path / "b.jsonl"
        write_jsonl(rows, first)
        write_jsonl(rows, second)
        assert first.read_bytes() == second.read_bytes()


class TestDiagnosticsType:
    def test_reconciles_flags_mismatch(self):
        diagnostics = CorpusDiagnostics(total_records=3, loaded=2, skipped=0)
        assert not diagnostics.reconciles()

    def test_str_form(self):
        diagnostics = CorpusDiagnostics()
        diagnostics.error(7, "boom")
        diagnostics.warning("row-1", "odd")
        assert str(diagnostics.items[0]) == "error: 7: boom"
        assert diagnostics.errors() == [diagnostics.items[0]]
