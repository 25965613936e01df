"""Lexicon-based emotion intensities and fuzzy blending on the emotion wheel.

The nine basic emotions sit on a ring; only neighbours on the ring blend into
one facial expression.  A blend holds one to three ``(label, weight)``
components whose weights sum to one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

EMOTIONS = (
    "joy", "surprise", "suffering", "fear", "anger",
    "disgust", "contempt", "love", "gaiety",
)
LEXICON_HEADER = "#TASML-EMOLEX v1"
THIRD_COMPONENT_MIN = 0.15


class LexiconSyntaxError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class EmotionWheel:
    def __init__(self, order: Iterable[str] = EMOTIONS):
        self.order = tuple(order)
        self._pos = {label: k for k, label in enumerate(self.order)}

    def position(self, label: str) -> int:
        return self._pos[label]

    def neighbors(self, label: str) -> tuple[str, str]:
        k, n = self._pos[label], len(self.order)
        return self.order[(k - 1) % n], self.order[(k + 1) % n]

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.neighbors(a)

    def is_arc(self, labels: Iterable[str]) -> bool:
        """True when the labels occupy consecutive places on the ring."""
        labels = set(labels)
        if len(labels) <= 1:
            return True
        ends = [label for label in labels if sum(nb in labels for nb in self.neighbors(label)) < 2]
        if len(labels) == len(self.order):
            return True
        if len(ends) != 2:
            return False
        # walk from one end and see whether every label is reached
        seen, current = {ends[0]}, ends[0]
        while True:
            step = [nb for nb in self.neighbors(current) if nb in labels and nb not in seen]
            if not step:
                return seen == labels
            current = step[0]
            seen.add(current)


WHEEL = EmotionWheel()


@dataclass(frozen=True)
class EmotionBlend:
    components: tuple[tuple[str, float], ...]

    def __post_init__(self):
        if not 1 <= len(self.components) <= 3:
            raise ValueError("a blend has one to three components")
        for label, weight in self.components:
            if label not in EMOTIONS:
                raise ValueError(f"unknown emotion {label!r}")
            if not weight > 0:
                raise ValueError(f"weight of {label} must be positive")
        if abs(sum(w for _, w in self.components) - 1.0) > 1e-9:
            raise ValueError("blend weights must sum to 1")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.components)

    @property
    def compound(self) -> str:
        return "-".join(self.labels)


class EmotionLexicon:
    """word -> [(emotion, intensity)] with lowercase words."""

    def __init__(self, entries: Mapping[str, Iterable[tuple[str, float]]] | None = None):
        self.entries: dict[str, tuple[tuple[str, float], ...]] = {}
        for word, pairs in (entries or {}).items():
            for label, intensity in pairs:
                self.add(word, label, intensity)

    def add(self, word: str, label: str, intensity: float) -> None:
        word = word.lower()
        if label not in EMOTIONS:
            raise ValueError(f"unknown emotion {label!r}")
        if not 0.0 <= intensity <= 1.0:
            raise ValueError(f"intensity {intensity} outside [0, 1]")
        current = self.entries.get(word, ())
        if any(existing == label for existing, _ in current):
            raise ValueError(f"duplicate entry ({word}, {label})")
        self.entries[word] = current + ((label, float(intensity)),)

    def get(self, word: str) -> tuple[tuple[str, float], ...]:
        return self.entries.get(word, ())

    def __len__(self):
        return len(self.entries)


def parse_lexicon(document: str) -> EmotionLexicon:
    lexicon = EmotionLexicon()
    lines = document.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        return lexicon
    if lines[0] != LEXICON_HEADER:
        raise LexiconSyntaxError(1, f"expected header {LEXICON_HEADER!r}")
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexiconSyntaxError(line_no, "expected word<TAB>emotion<TAB>intensity")
        word, label, raw = parts
        try:
            intensity = float(raw)
        except ValueError:
            raise LexiconSyntaxError(line_no, f"bad intensity {raw!r}") from None
        if math.isnan(intensity):
            raise LexiconSyntaxError(line_no, "intensity is NaN")
        try:
            lexicon.add(word, label, intensity)
        except ValueError as exc:
            raise LexiconSyntaxError(line_no, str(exc)) from None
    return lexicon


def load_lexicon(path) -> EmotionLexicon:
    try:
        return parse_lexicon(Path(path).read_text(encoding="utf-8"))
    except LexiconSyntaxError as exc:
        exc.path = str(path)
        raise


def score_intensities(tokens: Iterable[str], lexicon: EmotionLexicon) -> dict[str, float]:
    """Sum lexicon hits per emotion and scale so the strongest emotion reads 1.0."""
    totals = dict.fromkeys(EMOTIONS, 0.0)
    for token in tokens:
        for label, intensity in lexicon.get(token):
            totals[label] += intensity
    peak = max(totals.values())
    if peak <= 0:
        return {}
    return {label: total / peak for label, total in totals.items() if total > 0}


def _ordered(weights: Mapping[str, float], wheel: EmotionWheel) -> EmotionBlend:
    total = sum(weights.values())
    ranked = sorted(weights, key=lambda label: (-weights[label], wheel.position(label)))
    return EmotionBlend(tuple((label, weights[label] / total) for label in ranked))


def fuzzy_blend(
    profile: Mapping[str, float],
    wheel: EmotionWheel = WHEEL,
    third_min: float = THIRD_COMPONENT_MIN,
) -> Optional[EmotionBlend]:
    """Blend the dominant emotion with its strongest wheel neighbour.

    A third emotion next to either of the two joins when its share of the
    three-way total reaches ``third_min``.  With no neighbour present the
    dominant emotion stands alone.  Returns ``None`` for an empty profile.
    """
    present = {label: v for label, v in profile.items() if v > 0}
    if not present:
        return None
    ranked = sorted(present, key=lambda label: (-present[label], wheel.position(label)))
    top = ranked[0]
    partner = next((label for label in ranked[1:] if wheel.adjacent(top, label)), None)
    if partner is None:
        return EmotionBlend(((top, 1.0),))
    chosen = {top: present[top], partner: present[partner]}
    third = next(
        (label for label in ranked
         if label not in chosen and (wheel.adjacent(label, top) or wheel.adjacent(label, partner))),
        None,
    )
    if third is not None and present[third] / (sum(chosen.values()) + present[third]) >= third_min:
        chosen[third] = present[third]
    return _ordered(chosen, wheel)


def annotated_blend(
    labels: Iterable[str],
    profile: Mapping[str, float],
    wheel: EmotionWheel = WHEEL,
) -> Optional[EmotionBlend]:
    """Blend over hand-annotated labels, weighted by the detected intensities.

    Annotated labels skip the wheel-adjacency rule.  Labels the profile does
    not mention are dropped unless none is mentioned, in which case all
    labels share equally.
    """
    labels = list(dict.fromkeys(labels))[:3]
    if not labels:
        return None
    weights = {label: profile.get(label, 0.0) for label in labels}
    weights = {label: w for label, w in weights.items() if w > 0} or dict.fromkeys(labels, 1.0)
    return _ordered(weights, wheel)


def membership_split(mu: float) -> tuple[float, float]:
    """Split a membership degree into the weights of the two emotions it interpolates."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"membership degree {mu} outside [0, 1]")
    return mu, 1.0 - mu
