"""Marathi-English code-mixed sentence generation and evaluation.

The package turns a parallel English-Marathi corpus into code-mixed
("Minglish") sentences: Marathi stays the matrix language while selected
English phrases are transliterated into Devanagari and substituted for
their aligned Marathi words.  Output quality is measured with a
word-ratio mixing index and with ingested human ratings.

Pipeline stages, one module each:

- :mod:`minglish.tokenizer` -- script-aware word/punctuation/digit tokens
- :mod:`minglish.aligner` -- EM-trained word alignment plus curated links
- :mod:`minglish.chunker` -- noun/adjective/adverb phrase extraction
- :mod:`minglish.transliterator` -- rule-table Roman/Devanagari rewriting
- :mod:`minglish.mixer` -- substitution planning and rendering
- :mod:`minglish.metrics` -- mixing index and human-rating reports
- :mod:`minglish.corpus_io` -- file formats, diagnostics, JSONL output
- :mod:`minglish.cli` -- the ``minglish`` command-line interface
"""

from .aligner import (
    NULL_WORD,
    AlignmentLinks,
    AlignmentModel,
    LinkSource,
    ParallelPair,
    align,
    apply_dictionary,
    parse_pharaoh,
    serialize_pharaoh,
    train,
)
from .chunker import PhraseKind, PhraseSpan, UposTag, extract_phrases, lexicon_tag
from .errors import (
    AlignerError,
    CorpusError,
    DcmError,
    EncodingError,
    MetricsError,
    MinglishError,
    MixerError,
    PharaohParseError,
    PosFileError,
    TranslitError,
)
from .metrics import CmiScore, DcmRecord, DcmReport, LangTag, cmi, corpus_cmi, dcm_report
from .mixer import (
    CodeMixedSentence,
    OutToken,
    PolicyMode,
    Replacement,
    SubstitutionPolicy,
    apply_plan,
    plan_substitutions,
    render,
)
from .tokenizer import ScriptKind, Sentence, Token, TokenKind, tokenize
from .transliterator import (
    Direction,
    TranslitLexicon,
    TranslitRule,
    TranslitRuleTable,
    dev_to_roman,
    transliterate_phrase,
    transliterate_word,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "MinglishError", "EncodingError", "AlignerError", "PharaohParseError",
    "PosFileError", "TranslitError", "MixerError", "MetricsError",
    "DcmError", "CorpusError",
    # tokenizer
    "Token", "Sentence", "TokenKind", "ScriptKind", "tokenize",
    # aligner
    "NULL_WORD", "ParallelPair", "AlignmentModel", "AlignmentLinks",
    "LinkSource", "train", "align", "apply_dictionary",
    "parse_pharaoh", "serialize_pharaoh",
    # chunker
    "UposTag", "PhraseKind", "PhraseSpan", "extract_phrases", "lexicon_tag",
    # transliterator
    "Direction", "TranslitRule", "TranslitRuleTable", "TranslitLexicon",
    "transliterate_word", "transliterate_phrase", "dev_to_roman",
    # mixer
    "LangTag", "PolicyMode", "SubstitutionPolicy", "OutToken",
    "Replacement", "CodeMixedSentence", "plan_substitutions",
    "apply_plan", "render",
    # metrics
    "CmiScore", "cmi", "corpus_cmi", "DcmRecord", "DcmReport", "dcm_report",
]
