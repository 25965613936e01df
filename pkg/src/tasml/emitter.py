"""Lay out a pivot form for ASL or FSL and render it as a TASML document.

ASL keeps Subject-Verb-Object order, FSL uses Subject-Object-Verb.  Place and
time always lead.  Pauses follow the time, the subject and every non-empty
object; the sentence carries its signing speed in signs per second.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .emotion import EMOTIONS, EmotionBlend
from .pivot import Action, FingerspellSpan, PivotForm, TimeSlot
from .text import NormalizedSentence

__all__ = [
    "Action", "FingerspellSpan", "PivotForm", "TimeSlot",
    "LEXICAL_CAPITALS", "ParsedSentence", "SentenceElement", "Slot", "TargetLanguageProfile",
    "TasmlSyntaxError", "UnrecognizedSentence", "assign_timing", "detect_fingerspell",
    "order_for_target", "parse_tasml", "profile_for", "render_tasml",
]

TASML_VERSION = "1.0"
WORD_ORDERS = {"ASL": "SVO", "FSL": "SOV"}

# Capitalized in English but signed with their own lexical sign, so never
# finger-spelled: the pronoun I, weekdays, months and people/nationality words.
LEXICAL_CAPITALS = frozenset(
    """
    i monday tuesday wednesday thursday friday saturday sunday
    january february march april may june july august september october november december
    viking vikings norse norsemen norwegian norwegians danish dane danes swedish swede swedes
    english british french german american americans european african asian irish scottish
    anglo-saxon anglo-saxons christian christians
    """.split()
)


@dataclass(frozen=True)
class TargetLanguageProfile:
    language: str = "ASL"
    order: str = "SVO"
    pause_after_time: float = 1.0
    pause_after_subject: float = 0.5
    pause_after_object: float = 1.0

    def __post_init__(self):
        if WORD_ORDERS.get(self.language) != self.order:
            raise ValueError(f"{self.language} requires {WORD_ORDERS.get(self.language, 'a known language')} order")
        if min(self.pause_after_time, self.pause_after_subject, self.pause_after_object) < 0:
            raise ValueError("pauses must be >= 0")


def profile_for(language: str, **pauses) -> TargetLanguageProfile:
    language = language.upper()
    if language not in WORD_ORDERS:
        raise ValueError(f"unknown target language {language!r}")
    return TargetLanguageProfile(language, WORD_ORDERS[language], **pauses)


@dataclass(frozen=True)
class Slot:
    role: str
    tokens: tuple[str, ...] = ()
    tense: Optional[str] = None
    pause: float = 0.0

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class SentenceElement:
    slots: tuple[Slot, ...]
    speed: float = 1.0
    emotion: Optional[EmotionBlend] = None
    fingerspell: tuple[FingerspellSpan, ...] = ()


@dataclass(frozen=True)
class UnrecognizedSentence:
    text: str


def order_for_target(pivot: PivotForm, profile: TargetLanguageProfile) -> list[Slot]:
    slots = [
        Slot("place", pivot.place),
        Slot("time", pivot.time.tokens, pivot.time.tense) if pivot.time else Slot("time"),
        Slot("subject", pivot.subject),
    ]
    for action in pivot.actions:
        verb, obj = Slot("verb", action.verb), Slot("object", action.object)
        slots += [verb, obj] if profile.order == "SVO" else [obj, verb]
    return slots


def assign_timing(slots: Sequence[Slot], profile: TargetLanguageProfile, speed: float = 1.0) -> SentenceElement:
    if speed <= 0:
        raise ValueError("speed must be positive")
    pauses = {
        "time": profile.pause_after_time,
        "subject": profile.pause_after_subject,
        "object": profile.pause_after_object,
    }
    timed = tuple(
        replace(slot, pause=pauses.get(slot.role, 0.0) if slot.tokens else 0.0)
        for slot in slots
    )
    return SentenceElement(timed, speed)


def _contains(span: Sequence[str], run: Sequence[str]) -> bool:
    n = len(run)
    return any(tuple(span[k:k + n]) == tuple(run) for k in range(len(span) - n + 1))


def detect_fingerspell(
    pivot: PivotForm,
    sentence: NormalizedSentence,
    exclusions: Iterable[str] = LEXICAL_CAPITALS,
) -> PivotForm:
    """Mark capitalized mid-sentence words (proper names) for finger spelling.

    Neighbouring capitalized words separated only by whitespace form one span
    ("Harald Hardrada").  Spans the pivot's slots do not contain are skipped.
    """
    exclusions = frozenset(exclusions)
    runs: list[list[int]] = []
    for k, token in enumerate(sentence.tokens):
        if not sentence.capitalized[k] or token in exclusions:
            continue
        if runs and runs[-1][-1] == k - 1 and sentence.joined[k - 1]:
            runs[-1].append(k)
        else:
            runs.append([k])

    spans, seen = [], set()
    slot_spans = pivot.slot_spans()
    for run in runs:
        tokens = tuple(sentence.tokens[k] for k in run)
        if tokens in seen or not any(_contains(span, tokens) for span in slot_spans):
            continue
        seen.add(tokens)
        spans.append(FingerspellSpan(tokens, " ".join(sentence.originals[k] for k in run)))
    return replace(pivot, fingerspell=tuple(spans))


def _attr(value: str) -> str:
    return '"' + escape(value, {'"': "&quot;"}) + '"'


def _format_speed(speed: float) -> str:
    return f"{speed:g}"


def _render_slot(slot: Slot) -> str:
    attrs = ""
    if slot.tense and slot.tokens:
        attrs += f" tense={_attr(slot.tense)}"
    if slot.pause > 0:
        attrs += f' pause="{slot.pause:.1f}"'
    if not slot.tokens:
        return f"<{slot.role}{attrs}/>"
    return f"<{slot.role}{attrs}>{escape(slot.text)}</{slot.role}>"


def _render_sentence(number: int, sentence) -> list[str]:
    if isinstance(sentence, UnrecognizedSentence):
        return [f'  <sentence id="{number}" unrecognized="true">{escape(sentence.text)}</sentence>']
    lines = [f'  <sentence id="{number}" speed="{_format_speed(sentence.speed)}">']
    lines += ["    " + _render_slot(slot) for slot in sentence.slots]
    if sentence.emotion is not None:
        components = ",".join(f"{label}:{weight:.3f}" for label, weight in sentence.emotion.components)
        lines.append(f"    <emotion components={_attr(components)}>{sentence.emotion.compound}</emotion>")
    for span in sentence.fingerspell:
        lines.append(f"    <fingerspell original={_attr(span.original)}>{escape(span.text)}</fingerspell>")
    lines.append("  </sentence>")
    return lines


def render_tasml(sentences: Iterable[Union[SentenceElement, UnrecognizedSentence]], target: str = "ASL") -> str:
    """Render sentences, numbered from 1, as a TASML document."""
    lines = [f'<tasml version="{TASML_VERSION}" target={_attr(target)}>']
    for number, sentence in enumerate(sentences, start=1):
        lines += _render_sentence(number, sentence)
    lines.append("</tasml>")
    return "\n".join(lines) + "\n"


class TasmlSyntaxError(ValueError):
    pass


@dataclass
class ParsedSentence:
    id: int
    unrecognized: bool = False
    text: str = ""
    speed: float = 1.0
    slots: list = field(default_factory=list)
    emotion: Optional[list[tuple[str, float]]] = None
    compound: str = ""
    fingerspell: list = field(default_factory=list)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise TasmlSyntaxError(message)


def parse_tasml(document: str) -> tuple[str, list[ParsedSentence]]:
    """Re-read a TASML document, checking it against the grammar.

    Returns ``(target, sentences)``; each parsed slot is ``(role, text,
    attributes)``.
    """
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise TasmlSyntaxError(f"not well-formed: {exc}") from None
    _check(root.tag == "tasml", "root element must be <tasml>")
    _check(root.get("version") == TASML_VERSION, "unsupported version")
    target = root.get("target")
    _check(target in WORD_ORDERS, f"unknown target {target!r}")
    pair = ["verb", "object"] if WORD_ORDERS[target] == "SVO" else ["object", "verb"]

    sentences = []
    for expected_id, node in enumerate(root, start=1):
        _check(node.tag == "sentence", f"unexpected element <{node.tag}>")
        _check(node.get("id") == str(expected_id), f"sentence ids must count from 1, got {node.get('id')}")
        if node.get("unrecognized") == "true":
            _check(len(node) == 0, "unrecognized sentence carries raw text only")
            sentences.append(ParsedSentence(expected_id, True, node.text or ""))
            continue
        speed = float(node.get("speed", "nan"))
        _check(speed > 0, "sentence speed must be positive")
        children = list(node)
        tags = [child.tag for child in children]
        n_slots = len(tags) - sum(t in ("emotion", "fingerspell") for t in tags)
        slot_tags = tags[:n_slots]
        _check(slot_tags[:3] == ["place", "time", "subject"], f"sentence {expected_id}: bad slot order {slot_tags}")
        rest = slot_tags[3:]
        _check(bool(rest) and rest == pair * (len(rest) // 2), f"sentence {expected_id}: bad action order {rest}")
        trailer = tags[n_slots:]
        _check(trailer == sorted(trailer, key=("emotion", "fingerspell").index) and trailer.count("emotion") <= 1,
               f"sentence {expected_id}: emotion/fingerspell must trail the slots")

        parsed = ParsedSentence(expected_id, speed=speed)
        for child in children[:n_slots]:
            parsed.slots.append((child.tag, child.text or "", dict(child.attrib)))
            if "pause" in child.attrib:
                _check(float(child.get("pause")) > 0, "pause must be positive when present")
        for child in children[n_slots:]:
            if child.tag == "emotion":
                components = []
                for item in child.get("components", "").split(","):
                    label, _, weight = item.partition(":")
                    _check(label in EMOTIONS, f"unknown emotion {label!r}")
                    components.append((label, float(weight)))
                _check(abs(sum(w for _, w in components) - 1.0) <= 0.001, "emotion weights must sum to 1")
                _check(child.text == "-".join(label for label, _ in components), "compound name mismatch")
                parsed.emotion, parsed.compound = components, child.text
            else:
                parsed.fingerspell.append((child.text or "", child.get("original")))
        sentences.append(parsed)
    return target, sentences
