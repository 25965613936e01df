"""Example-based English to TASML preprocessing for sign-language avatars."""
from .alignment import (
    ScoringScheme,
    global_alignment_score,
    lcs_length,
    local_alignment_score,
    longest_common_subsequence,
    record_cell_visits,
)
from .corpus import CorpusStore, Template, load_corpus, parse_corpus, serialize_corpus
from .emitter import order_for_target, parse_tasml, profile_for, render_tasml
from .emotion import EmotionBlend, EmotionLexicon, fuzzy_blend, membership_split, parse_lexicon, score_intensities
from .pipeline import PipelineConfig, translate_text
from .recognizer import RecognitionConfig, recognize
from .text import normalize_sentence, split_sentences

__all__ = [
    "CorpusStore", "EmotionBlend", "EmotionLexicon", "PipelineConfig", "RecognitionConfig",
    "ScoringScheme", "Template", "fuzzy_blend", "global_alignment_score", "lcs_length",
    "load_corpus", "local_alignment_score", "longest_common_subsequence", "membership_split",
    "normalize_sentence", "order_for_target", "parse_corpus", "parse_lexicon", "parse_tasml",
    "profile_for", "record_cell_visits", "recognize", "render_tasml", "score_intensities",
    "serialize_corpus", "split_sentences", "translate_text",
]
__version__ = "0.1.0"
