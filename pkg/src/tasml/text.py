"""Sentence splitting and word normalization."""
from __future__ import annotations

import re
from dataclasses import dataclass

ABBREVIATIONS = frozenset({"mr", "mrs", "dr", "st", "vs", "etc", "e.g", "i.e"})

_TERMINATOR = re.compile(r"[.!?]+(?=\s|$)")
_LAST_WORD = re.compile(r"\S*$")
_KEEP_INSIDE = "-'’"


class EmptyAfterNormalization(ValueError):
    pass


@dataclass(frozen=True)
class NormalizedSentence:
    """Word tokens of one sentence plus the per-token facts the emitter needs.

    ``capitalized[k]`` is true when token ``k`` started with an uppercase
    letter somewhere other than the first position.  ``joined[k]`` is true
    when token ``k`` and ``k+1`` were separated by whitespace only, so a run
    of capitalized tokens can be treated as one name.
    """

    tokens: tuple[str, ...]
    originals: tuple[str, ...]
    capitalized: tuple[bool, ...]
    joined: tuple[bool, ...]

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def _guarded(chunk: str, abbreviations) -> bool:
    word = chunk.lstrip("\"'([{").lower()
    if len(word) == 1 and word.isalpha():
        return True
    return word in abbreviations


def split_sentences(text: str, abbreviations=ABBREVIATIONS) -> list[str]:
    """Split on ``.``, ``!`` or ``?`` followed by whitespace or end of text.

    A terminator right after a single letter or a known abbreviation does not
    end the sentence.

    >>> split_sentences("The raid began. It ended.")
    ['The raid began.', 'It ended.']
    """
    sentences = []
    start = 0
    for match in _TERMINATOR.finditer(text):
        end = match.end()
        word = _LAST_WORD.search(text, 0, match.start()).group()
        if match.group() == "." and _guarded(word, abbreviations):
            continue
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _clean(chunk: str) -> str:
    kept = "".join(c for c in chunk if c.isalnum() or c in _KEEP_INSIDE)
    return kept.strip(_KEEP_INSIDE)


def normalize_sentence(sentence: str) -> NormalizedSentence:
    """Lowercase, drop punctuation (keeping intra-word ``-`` and ``'``), tokenize.

    Raises :class:`EmptyAfterNormalization` when no word survives.
    """
    tokens, originals, capitalized, joined = [], [], [], []
    for raw in sentence.split():
        word = _clean(raw)
        if not word:
            if joined:
                joined[-1] = False
            continue
        if joined and raw[0] in _KEEP_INSIDE + "\"([{":
            joined[-1] = False
        tokens.append(word.lower())
        originals.append(word)
        capitalized.append(len(tokens) > 1 and word[0].isupper())
        # punctuation after the word breaks a name run
        joined.append(raw[-1].isalnum())
    if not tokens:
        raise EmptyAfterNormalization(f"nothing left after normalizing {sentence!r}")
    joined[-1] = False
    return NormalizedSentence(tuple(tokens), tuple(originals), tuple(capitalized), tuple(joined))


def normalize_text(sentence: str) -> str:
    """Normalized single-string form used as the exact-lookup key."""
    return normalize_sentence(sentence).text
