"""End-to-end text to TASML translation.

Text is first brought into English by a pluggable translator, split into
sentences, and each sentence is recognized against the template corpus,
scored for emotion, marked for finger spelling, ordered for the target sign
language, timed and rendered.  Templates learned during the run are appended
to the corpus file once the whole text has been processed.
"""
from __future__ import annotations

import logging
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Protocol

from .corpus import CorpusStore, Template, append_templates, load_corpus
from .emitter import (
    SentenceElement,
    TargetLanguageProfile,
    UnrecognizedSentence,
    assign_timing,
    detect_fingerspell,
    order_for_target,
    profile_for,
    render_tasml,
)
from .emotion import EmotionLexicon, annotated_blend, fuzzy_blend, load_lexicon, score_intensities
from .recognizer import EXACT_MATCH, UNRECOGNIZED, RecognitionConfig, recognize
from .text import split_sentences

log = logging.getLogger(__name__)


class ConfigError(Exception):
    pass


class TranslatorError(Exception):
    pass


class TranslatorUnreachable(TranslatorError):
    pass


class TranslatorBadResponse(TranslatorError):
    pass


class Translator(Protocol):
    def translate(self, text: str, source_language: str = "auto") -> str: ...


class IdentityTranslator:
    def translate(self, text: str, source_language: str = "auto") -> str:
        return text

    def __repr__(self):
        return "IdentityTranslator()"


class RemoteTranslator:
    """POSTs UTF-8 text to ``endpoint`` and reads English text back.

    The source-language hint travels in the ``X-Source-Language`` header.
    Any transport failure or non-2xx status is raised, never swallowed.
    """

    def __init__(self, endpoint: str, timeout: float = 10.0):
        if urllib.parse.urlparse(endpoint).scheme not in ("http", "https"):
            raise ConfigError(f"translator endpoint must be an http(s) URL, got {endpoint!r}")
        self.endpoint = endpoint
        self.timeout = timeout

    def translate(self, text: str, source_language: str = "auto") -> str:
        request = urllib.request.Request(
            self.endpoint,
            data=text.encode("utf-8"),
            method="POST",
            headers={
                "Content-Type": "text/plain; charset=utf-8",
                "X-Source-Language": source_language,
            },
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                body = response.read()
        except urllib.error.HTTPError as exc:
            raise TranslatorBadResponse(f"{self.endpoint} answered {exc.code}") from None
        except (urllib.error.URLError, TimeoutError, OSError) as exc:
            raise TranslatorUnreachable(f"{self.endpoint}: {exc}") from None
        try:
            return body.decode("utf-8")
        except UnicodeDecodeError:
            raise TranslatorBadResponse(f"{self.endpoint} returned non UTF-8 text") from None

    def __repr__(self):
        return f"RemoteTranslator({self.endpoint!r})"


def make_translator(setting: Optional[str]) -> Translator:
    """``None`` or ``"identity"`` give the pass-through, anything else is an endpoint URL."""
    if setting in (None, "", "identity"):
        return IdentityTranslator()
    return RemoteTranslator(setting)


def normalize_source_language(text: str, translator: Translator, source_language: str = "auto") -> str:
    return translator.translate(text, source_language)


@dataclass
class PipelineConfig:
    corpus_path: Optional[Path] = None
    lexicon_path: Optional[Path] = None
    target_language: str = "ASL"
    recognition: RecognitionConfig = field(default_factory=RecognitionConfig)
    profile: Optional[TargetLanguageProfile] = None
    translator: Translator = field(default_factory=IdentityTranslator)
    source_language: str = "auto"
    speed: float = 1.0

    def __post_init__(self):
        self.target_language = self.target_language.upper()
        if self.profile is None:
            try:
                self.profile = profile_for(self.target_language)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.profile.language != self.target_language:
            raise ConfigError(f"profile is for {self.profile.language}, target is {self.target_language}")
        if self.speed <= 0:
            raise ConfigError("speed must be positive")


@dataclass
class SentenceReport:
    text: str
    kind: str
    score: int
    template_id: Optional[str] = None
    learned_id: Optional[str] = None


@dataclass
class TranslationReport:
    sentences: list[SentenceReport]
    learned: list[Template]
    document: str

    @property
    def learned_count(self) -> int:
        return len(self.learned)

    @property
    def recognized_count(self) -> int:
        return sum(s.kind != UNRECOGNIZED for s in self.sentences)

    @property
    def unrecognized_count(self) -> int:
        return sum(s.kind == UNRECOGNIZED for s in self.sentences)


def load_resources(cfg: PipelineConfig) -> tuple[CorpusStore, EmotionLexicon]:
    """Load corpus and lexicon named by ``cfg``; missing paths mean empty resources."""
    store = load_corpus(cfg.corpus_path) if cfg.corpus_path else CorpusStore()
    lexicon = load_lexicon(cfg.lexicon_path) if cfg.lexicon_path else EmotionLexicon()
    return store, lexicon


def build_sentence(outcome, store: CorpusStore, lexicon: EmotionLexicon, cfg: PipelineConfig) -> SentenceElement:
    norm = outcome.sentence
    intensities = score_intensities(norm.tokens, lexicon)
    template = store.get(outcome.template_id)
    if outcome.kind == EXACT_MATCH and template.emotions:
        blend = annotated_blend(template.emotions, intensities)
    else:
        blend = fuzzy_blend(intensities)
    pivot = detect_fingerspell(replace(outcome.pivot, emotion=blend, speed=cfg.speed), norm)
    element = assign_timing(order_for_target(pivot, cfg.profile), cfg.profile, pivot.speed)
    return replace(element, emotion=pivot.emotion, fingerspell=pivot.fingerspell)


def translate_text(
    text: str,
    cfg: PipelineConfig,
    store: Optional[CorpusStore] = None,
    lexicon: Optional[EmotionLexicon] = None,
) -> TranslationReport:
    """Translate ``text`` into a TASML document.

    Resources not passed in are loaded from ``cfg``.  When the corpus came
    from ``cfg.corpus_path`` and learning is on, learned templates are
    appended to that file after the last sentence.
    """
    persist = store is None and cfg.corpus_path is not None
    if store is None or lexicon is None:
        loaded_store, loaded_lexicon = load_resources(cfg)
        store = loaded_store if store is None else store
        lexicon = loaded_lexicon if lexicon is None else lexicon

    english = normalize_source_language(text, cfg.translator, cfg.source_language)
    elements, reports, learned = [], [], []
    for sentence in split_sentences(english):
        outcome = recognize(sentence, store, cfg.recognition)
        log.debug("%s -> %s (%s)", sentence, outcome.kind, outcome.score)
        if outcome.kind == UNRECOGNIZED:
            elements.append(UnrecognizedSentence(sentence))
        else:
            elements.append(build_sentence(outcome, store, lexicon, cfg))
        if outcome.learned is not None:
            learned.append(outcome.learned)
        reports.append(SentenceReport(
            sentence, outcome.kind, outcome.score, outcome.template_id,
            outcome.learned.id if outcome.learned else None,
        ))

    document = render_tasml(elements, cfg.target_language)
    if persist and learned:
        append_templates(cfg.corpus_path, learned)
    return TranslationReport(reports, learned, document)
