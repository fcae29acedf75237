"""qx: question extraction toolkit.

Extracts question spans from student-query text or OCR output via BIO token
classification: tokenization and label alignment, span encoding/decoding, a
rule-based baseline, dataset augmentation, entity-level evaluation, and a
wire-protocol client for a pluggable neural tagger.
"""

from .augment import AugmentConfig, NoisePool, augment, verify_augmented
from .core import (AnnotatedExample, BioTag, QuestionSpan, Source, TagLevel,
                   TagSequence, Token, span_from_words, validate_example)
from .evaluation import (EvalReport, MatchCriterion, evaluate, match_spans,
                         render_table)
from .io import (OcrWord, ocr_to_text, read_dataset, read_ocr_json,
                 write_dataset)
from .labels import (MalformedTags, RepairPolicy, collapse_tags, decode_spans,
                     encode_tags, project_tags)
from .rules import RuleSet, default_ruleset, load_ruleset, rule_extract
from .tagger import (OracleTagger, RemoteTagger, RuleTagger, TaggerError,
                     chunk_long_input, extract, extract_batch,
                     merge_window_tags, tag)
from .tokenize import (Alignment, TokenizedText, Vocabulary, subword_tokenize,
                       tokenize_full, word_tokenize)

__version__ = "0.1.0"

__all__ = [
    "Alignment", "AnnotatedExample", "AugmentConfig", "BioTag", "EvalReport",
    "MalformedTags", "MatchCriterion", "NoisePool", "OcrWord", "OracleTagger",
    "QuestionSpan", "RemoteTagger", "RepairPolicy", "RuleSet", "RuleTagger",
    "Source", "TagLevel", "TagSequence", "TaggerError", "Token",
    "TokenizedText", "Vocabulary", "augment", "chunk_long_input",
    "collapse_tags", "decode_spans", "default_ruleset", "encode_tags",
    "evaluate", "extract", "extract_batch", "load_ruleset", "match_spans",
    "merge_window_tags", "ocr_to_text", "project_tags", "read_dataset",
    "read_ocr_json", "render_table", "rule_extract", "span_from_words",
    "subword_tokenize", "tag", "tokenize_full", "validate_example",
    "verify_augmented", "word_tokenize", "write_dataset",
]
