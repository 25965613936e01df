"""The pivot form: Place / Time / Subject / (Verb, Object)+ with annotations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .emotion import EmotionBlend

TENSES = ("past", "present", "future")


@dataclass(frozen=True)
class TimeSlot:
    tense: str
    tokens: tuple[str, ...]

    def __post_init__(self):
        if self.tense not in TENSES:
            raise ValueError(f"unknown tense {self.tense!r}")


@dataclass(frozen=True)
class Action:
    verb: tuple[str, ...]
    object: tuple[str, ...] = ()


@dataclass(frozen=True)
class FingerspellSpan:
    tokens: tuple[str, ...]
    original: str

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class PivotForm:
    """Slot spans are tuples of normalized word tokens; empty means absent."""

    subject: tuple[str, ...]
    actions: tuple[Action, ...]
    place: tuple[str, ...] = ()
    time: Optional[TimeSlot] = None
    emotion: Optional[EmotionBlend] = None
    fingerspell: tuple[FingerspellSpan, ...] = ()
    speed: float = 1.0

    def __post_init__(self):
        if not self.actions:
            raise ValueError("a pivot form needs at least one action")
        if self.speed <= 0:
            raise ValueError("speed must be positive")

    def slot_spans(self) -> list[tuple[str, ...]]:
        """Slot token spans in pivot order: place, time, subject, verb/object pairs."""
        spans = [self.place, self.time.tokens if self.time else (), self.subject]
        for action in self.actions:
            spans.append(action.verb)
            spans.append(action.object)
        return spans

    def tokens(self) -> list[str]:
        return [tok for span in self.slot_spans() for tok in span]


def tokens_of(text: str) -> tuple[str, ...]:
    return tuple(text.split())

