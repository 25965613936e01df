"""Learned templates and their line-oriented corpus file format.

A corpus file looks like::

    #TASML-CORPUS v1

    #TEMPLATE id=t1 lang=ASL
    TEXT: During this period, Viking warriors raided nearby lands.
    PLACE: -
    TIME: past | during this period
    SUBJECT: viking warriors
    VERB: raided
    OBJECT: nearby lands
    EMOTION: anger,surprise

``VERB``/``OBJECT`` pairs repeat; every other key appears once and in this
order.  ``-`` marks an empty slot.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .emotion import EMOTIONS
from .pivot import TENSES, Action, PivotForm, TimeSlot
from .text import EmptyAfterNormalization, normalize_sentence, normalize_text

HEADER = "#TASML-CORPUS v1"
LANGUAGES = ("ASL", "FSL")
ROLES = ("PLACE", "TIME", "SUBJECT", "VERB", "OBJECT")
EMPTY = "-"

_RECORD_START = re.compile(r"#TEMPLATE id=(\S+) lang=(\S+)$")


class CorpusError(Exception):
    pass


class CorpusSyntaxError(CorpusError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(CorpusError):
    pass


class DuplicateText(CorpusError):
    pass


@dataclass(frozen=True)
class SlotAnnotation:
    role: str
    text: str = ""
    tense: Optional[str] = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown slot role {self.role!r}")
        if self.role == "TIME" and self.text:
            if self.tense not in TENSES:
                raise ValueError(f"TIME slot needs a tense out of {TENSES}, got {self.tense!r}")
        elif self.tense is not None:
            raise ValueError("only a non-empty TIME slot carries a tense")


@dataclass(frozen=True)
class Template:
    """A stored example sentence with its pivot slots.

    ``slots`` is always laid out as PLACE, TIME, SUBJECT, then one or more
    VERB/OBJECT pairs, mirroring the record layout on disk.
    """

    id: str
    target_language: str
    source_text: str
    slots: tuple[SlotAnnotation, ...]
    emotions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.target_language not in LANGUAGES:
            raise ValueError(f"unknown target language {self.target_language!r}")
        roles = [s.role for s in self.slots]
        pairs = roles[3:]
        if roles[:3] != ["PLACE", "TIME", "SUBJECT"] or not pairs or pairs != ["VERB", "OBJECT"] * (len(pairs) // 2):
            raise ValueError(f"template {self.id}: bad slot layout {roles}")
        if not all(s.text for s in self.slots if s.role == "VERB"):
            raise ValueError(f"template {self.id}: empty VERB slot")
        if any("\n" in text for text in [self.source_text, *(s.text for s in self.slots)]):
            raise ValueError(f"template {self.id}: texts must be single lines")
        unknown = set(self.emotions) - set(EMOTIONS)
        if unknown:
            raise ValueError(f"template {self.id}: unknown emotions {sorted(unknown)}")

    @classmethod
    def build(cls, id, target_language, source_text, *, subject, actions, place="", time=None, emotions=()):
        """Convenience constructor; ``time`` is ``(tense, text)`` and actions are ``(verb, object)`` pairs."""
        slots = [SlotAnnotation("PLACE", place)]
        if time and time[1]:
            slots.append(SlotAnnotation("TIME", time[1], time[0]))
        else:
            slots.append(SlotAnnotation("TIME"))
        slots.append(SlotAnnotation("SUBJECT", subject))
        for verb, obj in actions:
            slots.append(SlotAnnotation("VERB", verb))
            slots.append(SlotAnnotation("OBJECT", obj or ""))
        return cls(id, target_language, source_text, tuple(slots), tuple(emotions))

    @property
    def normalized_text(self) -> str:
        return normalize_text(self.source_text)

    def slot(self, role: str) -> SlotAnnotation:
        return next(s for s in self.slots if s.role == role)

    def actions(self) -> list[tuple[str, str]]:
        pairs = self.slots[3:]
        return [(pairs[k].text, pairs[k + 1].text) for k in range(0, len(pairs), 2)]

    def pivot(self) -> PivotForm:
        """The template's own slots as a pivot form (normalized tokens)."""
        time_slot = self.slot("TIME")
        return PivotForm(
            place=_span(self.slot("PLACE").text),
            time=TimeSlot(time_slot.tense, _span(time_slot.text)) if time_slot.text else None,
            subject=_span(self.slot("SUBJECT").text),
            actions=tuple(Action(_span(v), _span(o)) for v, o in self.actions()),
        )


def _span(text: str) -> tuple[str, ...]:
    if not text:
        return ()
    try:
        return normalize_sentence(text).tokens
    except EmptyAfterNormalization:
        return ()


class CorpusStore:
    """Ordered templates plus an index from normalized source text to id."""

    def __init__(self, templates: Iterable[Template] = ()):
        self.templates: list[Template] = []
        self.index: dict[str, str] = {}
        self._by_id: dict[str, Template] = {}
        for t in templates:
            self.add(t)

    def add(self, template: Template) -> "CorpusStore":
        if template.id in self._by_id:
            raise DuplicateId(template.id)
        key = template.normalized_text
        if key in self.index:
            raise DuplicateText(f"{template.id} repeats the sentence of {self.index[key]}")
        self.templates.append(template)
        self.index[key] = template.id
        self._by_id[template.id] = template
        return self

    def find_exact(self, normalized_text: str) -> Optional[Template]:
        tid = self.index.get(normalized_text)
        return None if tid is None else self._by_id[tid]

    def get(self, template_id: str) -> Optional[Template]:
        return self._by_id.get(template_id)

    def next_id(self, prefix: str = "learned-") -> str:
        n = len(self.templates) + 1
        while f"{prefix}{n}" in self._by_id:
            n += 1
        return f"{prefix}{n}"

    def __len__(self):
        return len(self.templates)

    def __iter__(self) -> Iterator[Template]:
        return iter(self.templates)

    def __eq__(self, other):
        if not isinstance(other, CorpusStore):
            return NotImplemented
        return self.templates == other.templates

    def __repr__(self):
        return f"CorpusStore({len(self)} templates)"


def add_template(store: CorpusStore, template: Template) -> CorpusStore:
    return store.add(template)


def find_exact(store: CorpusStore, normalized_text: str) -> Optional[Template]:
    return store.find_exact(normalized_text)


def parse_corpus(document: str) -> CorpusStore:
    """Parse a corpus document; any malformed record rejects the whole document."""
    lines = document.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    store = CorpusStore()
    if not lines:
        return store
    if lines[0] != HEADER:
        raise CorpusSyntaxError(1, f"expected header {HEADER!r}")
    pos = 1
    while pos < len(lines):
        if not lines[pos].strip():
            pos += 1
            continue
        pos = _parse_record(lines, pos, store)
    return store


def _parse_record(lines: list[str], pos: int, store: CorpusStore) -> int:
    start_line = pos + 1
    head = _RECORD_START.match(lines[pos])
    if not head:
        raise CorpusSyntaxError(start_line, f"expected '#TEMPLATE id=... lang=...', got {lines[pos]!r}")
    tid, lang = head.groups()
    if lang not in LANGUAGES:
        raise CorpusSyntaxError(start_line, f"unknown language {lang!r}")
    if store.get(tid) is not None:
        raise CorpusSyntaxError(start_line, f"duplicate template id {tid!r}")
    pos += 1

    fields: list[tuple[int, str, str]] = []
    while pos < len(lines) and lines[pos].strip():
        line = lines[pos]
        key, sep, value = line.partition(": ")
        if not sep and line.endswith(":"):
            key, sep, value = line[:-1], ":", ""
        if not sep or key not in ROLES + ("TEXT", "EMOTION"):
            raise CorpusSyntaxError(pos + 1, f"unknown key in {line!r}")
        fields.append((pos + 1, key, value.strip()))
        pos += 1

    keys = [k for _, k, _ in fields]
    end_line = fields[-1][0] if fields else start_line
    if "TEXT" not in keys:
        raise CorpusSyntaxError(start_line, f"template {tid!r} has no TEXT")
    if "VERB" not in keys:
        raise CorpusSyntaxError(start_line, f"template {tid!r} has no VERB")
    expected = ["TEXT", "PLACE", "TIME", "SUBJECT"] + ["VERB", "OBJECT"] * max(1, keys.count("VERB")) + ["EMOTION"]
    for k, (line_no, key, _) in enumerate(fields):
        if k >= len(expected) or key != expected[k]:
            want = expected[k] if k < len(expected) else "end of record"
            raise CorpusSyntaxError(line_no, f"expected {want}, got {key}")
    if len(fields) < len(expected):
        raise CorpusSyntaxError(end_line, f"template {tid!r} is missing {expected[len(fields)]}")

    values = {}
    slots = []
    for line_no, key, value in fields:
        if key == "TEXT":
            if not value or value == EMPTY:
                raise CorpusSyntaxError(line_no, "empty TEXT")
            values["TEXT"] = (line_no, value)
        elif key == "EMOTION":
            labels = () if value == EMPTY else tuple(v.strip() for v in value.split(","))
            bad = [label for label in labels if label not in EMOTIONS]
            if bad:
                raise CorpusSyntaxError(line_no, f"unknown emotion {bad[0]!r}")
            values["EMOTION"] = labels
        elif key == "TIME":
            slots.append(_parse_time(line_no, value))
        else:
            if value == EMPTY:
                if key == "VERB":
                    raise CorpusSyntaxError(line_no, "empty VERB")
                value = ""
            slots.append(SlotAnnotation(key, value))

    line_no, text = values["TEXT"]
    try:
        template = Template(tid, lang, text, tuple(slots), values["EMOTION"])
        store.add(template)
    except EmptyAfterNormalization:
        raise CorpusSyntaxError(line_no, "TEXT has no words") from None
    except DuplicateText as exc:
        raise CorpusSyntaxError(line_no, f"duplicate sentence: {exc}") from None
    except ValueError as exc:
        raise CorpusSyntaxError(line_no, str(exc)) from None
    return pos


def _parse_time(line_no: int, value: str) -> SlotAnnotation:
    if value == EMPTY:
        return SlotAnnotation("TIME")
    tense, sep, text = value.partition("|")
    tense, text = tense.strip(), text.strip()
    if not sep or not text:
        raise CorpusSyntaxError(line_no, "TIME must be '-' or '<tense> | <text>'")
    if tense not in TENSES:
        raise CorpusSyntaxError(line_no, f"bad tense {tense!r}")
    return SlotAnnotation("TIME", text, tense)


def serialize_template(template: Template) -> str:
    out = [f"#TEMPLATE id={template.id} lang={template.target_language}", f"TEXT: {template.source_text}"]
    for slot in template.slots:
        if slot.role == "TIME" and slot.text:
            out.append(f"TIME: {slot.tense} | {slot.text}")
        else:
            out.append(f"{slot.role}: {slot.text or EMPTY}")
    out.append(f"EMOTION: {','.join(template.emotions) or EMPTY}")
    return "\n".join(out) + "\n"


def serialize_corpus(store: CorpusStore) -> str:
    return HEADER + "\n" + "".join("\n" + serialize_template(t) for t in store)


def load_corpus(path) -> CorpusStore:
    try:
        return parse_corpus(Path(path).read_text(encoding="utf-8"))
    except CorpusSyntaxError as exc:
        exc.path = str(path)
        raise


def save_corpus(store: CorpusStore, path) -> None:
    Path(path).write_text(serialize_corpus(store), encoding="utf-8", newline="\n")


def append_templates(path, templates: Iterable[Template]) -> int:
    """Append records to an existing corpus file without rewriting it."""
    templates = list(templates)
    if not templates:
        return 0
    path = Path(path)
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    chunks = []
    if not existing:
        chunks.append(HEADER + "\n")
    elif not existing.endswith("\n"):
        chunks.append("\n")
    chunks.extend("\n" + serialize_template(t) for t in templates)
    with path.open("a", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(chunks))
    return len(templates)
