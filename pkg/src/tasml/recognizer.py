"""Example-based recognition of the pivot form.

A sentence goes through four stages until one succeeds:

1. exact lookup of its normalized text in the corpus;
2. global (character level) alignment against every stored sentence, accepted
   when the best score falls short of a perfect self-match by at most
   ``global_threshold``;
3. word-by-word local alignment against every template's slot words, the
   template with the highest summed score lends its slot roles to the input
   words, and the result is kept only if it preserves enough of the sentence
   (LCS gate).  A kept result is learned as a new template;
4. otherwise the sentence is unrecognized.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .alignment import DEFAULT_SCHEME, ScoringScheme, global_alignment_score, lcs_length, local_alignment_score
from .corpus import CorpusStore, DuplicateText, Template
from .pivot import Action, PivotForm, TimeSlot
from .text import EmptyAfterNormalization, NormalizedSentence, normalize_sentence, split_sentences

__all__ = [
    "EXACT_MATCH", "GLOBAL_PROXIMITY", "TEMPLATE_PROJECTION", "UNRECOGNIZED",
    "EmptyCorpus", "NoVerbProjected", "RecognitionConfig", "RecognitionOutcome",
    "SlotMatch", "TemplateWord", "decide_recognition", "global_proximity",
    "normalize_sentence", "project_slots", "recognize", "split_sentences",
    "template_from_pivot", "template_slot_match", "template_words", "verify_lcs",
]

EXACT_MATCH = "ExactMatch"
GLOBAL_PROXIMITY = "GlobalProximity"
TEMPLATE_PROJECTION = "TemplateProjection"
UNRECOGNIZED = "Unrecognized"


class EmptyCorpus(LookupError):
    pass


class NoVerbProjected(ValueError):
    pass


@dataclass(frozen=True)
class RecognitionConfig:
    scheme: ScoringScheme = DEFAULT_SCHEME
    global_threshold: int = 6
    lcs_threshold: int = 5
    learning_enabled: bool = True

    def __post_init__(self):
        if self.global_threshold < 0 or self.lcs_threshold < 0:
            raise ValueError("thresholds must be >= 0")


@dataclass(frozen=True)
class RecognitionOutcome:
    kind: str
    score: int = 0
    template_id: Optional[str] = None
    pivot: Optional[PivotForm] = None
    sentence: Optional[NormalizedSentence] = None
    learned: Optional[Template] = None

    def __post_init__(self):
        if (self.pivot is None) != (self.kind == UNRECOGNIZED):
            raise ValueError("pivot must be present exactly when the sentence was recognized")


class TemplateWord(NamedTuple):
    token: str
    role: str
    pair: int  # index of the VERB/OBJECT pair, -1 for other roles


def template_words(template: Template) -> list[TemplateWord]:
    """The template's slot words in slot order, each tagged with its role."""
    pivot = template.pivot()
    words = [TemplateWord(tok, "PLACE", -1) for tok in pivot.place]
    if pivot.time:
        words += [TemplateWord(tok, "TIME", -1) for tok in pivot.time.tokens]
    words += [TemplateWord(tok, "SUBJECT", -1) for tok in pivot.subject]
    for k, action in enumerate(pivot.actions):
        words += [TemplateWord(tok, "VERB", k) for tok in action.verb]
        words += [TemplateWord(tok, "OBJECT", k) for tok in action.object]
    return words


def global_proximity(sentence_norm: str, store: Iterable[Template], scheme: ScoringScheme = DEFAULT_SCHEME):
    """Best stored sentence by global alignment score.

    Returns ``(template, best_score, perfect_score)``; ties go to the earliest
    template.
    """
    best, best_score = None, None
    for template in store:
        score = global_alignment_score(sentence_norm, template.normalized_text, scheme)
        if best_score is None or score > best_score:
            best, best_score = template, score
    if best is None:
        raise EmptyCorpus("no templates to compare against")
    return best, best_score, len(sentence_norm) * scheme.match_score


def decide_recognition(best_score: int, perfect_score: int, cfg: RecognitionConfig) -> bool:
    return perfect_score - best_score <= cfg.global_threshold


@dataclass(frozen=True)
class SlotMatch:
    """Outcome of matching input words against one template's slot words.

    ``assignments[k]`` is the index into ``words`` that input word ``k``
    matches best, or ``None`` when it shares nothing with any template word.
    ``word_best[i]`` is the input word index that gave template word ``i`` its
    maximum, and ``total`` is the sum of those maxima.
    """

    template: Template
    words: tuple[TemplateWord, ...]
    assignments: tuple[Optional[int], ...]
    input_scores: tuple[int, ...]
    word_best: tuple[int, ...]
    total: int


def _match_one(tokens: Sequence[str], template: Template, scheme: ScoringScheme, cache: dict) -> SlotMatch:
    words = template_words(template)
    table = []
    for word in words:
        row = []
        for token in tokens:
            key = (word.token, token)
            if key not in cache:
                cache[key] = local_alignment_score(word.token, token, scheme)
            row.append(cache[key])
        table.append(row)

    word_best, total = [], 0
    for row in table:
        best = max(row)
        word_best.append(row.index(best))
        total += best

    input_scores, candidates = [], []
    for k in range(len(tokens)):
        best = max((row[k] for row in table), default=0)
        input_scores.append(best)
        candidates.append([i for i, row in enumerate(table) if row[k] == best] if best > 0 else [])

    # words with a single best template word anchor the ambiguous ones
    anchors = {k: c[0] for k, c in enumerate(candidates) if len(c) == 1}
    assignments, claimed = [], set()
    for k, token in enumerate(tokens):
        tied = candidates[k]
        if not tied:
            assignments.append(None)
            continue
        left = max((anchors[j] for j in anchors if j < k), default=-1)
        right = min((anchors[j] for j in anchors if j > k), default=len(words))
        # prefer a template word between the neighbouring anchors, then the
        # closest word length, one not yet taken, and the one nearest an anchor
        pick = min(tied, key=lambda i: (
            not left < i < right,
            abs(len(words[i].token) - len(token)),
            i in claimed,
            right - i if right < len(words) else i - left,
        ))
        claimed.add(pick)
        assignments.append(pick)
    return SlotMatch(template, tuple(words), tuple(assignments), tuple(input_scores), tuple(word_best), total)


def template_slot_match(tokens: Sequence[str], store: Iterable[Template], scheme: ScoringScheme = DEFAULT_SCHEME) -> SlotMatch:
    """Pick the template whose words, each locally aligned to its best input word, score highest in sum."""
    if not tokens:
        raise ValueError("no input words")
    best, cache = None, {}
    for template in store:
        match = _match_one(tokens, template, scheme, cache)
        if best is None or match.total > best.total:
            best = match
    if best is None:
        raise EmptyCorpus("no templates to match against")
    return best


def project_slots(tokens: Sequence[str], match: SlotMatch) -> PivotForm:
    """Give each input word the slot role of the template word it matched.

    Words that matched nothing take the role of the word to their left, or
    SUBJECT at the start.  VERB/OBJECT words keep the template's pairing.
    """
    if len(tokens) != len(match.assignments):
        raise ValueError("assignments do not belong to these tokens")
    place, time_words, subject = [], [], []
    verbs: dict[int, list[str]] = {}
    objects: dict[int, list[str]] = {}
    previous = ("SUBJECT", -1)
    for token, assigned in zip(tokens, match.assignments):
        if assigned is not None:
            word = match.words[assigned]
            previous = (word.role, word.pair)
        role, pair = previous
        if role == "PLACE":
            place.append(token)
        elif role == "TIME":
            time_words.append(token)
        elif role == "SUBJECT":
            subject.append(token)
        elif role == "VERB":
            verbs.setdefault(pair, []).append(token)
        else:
            objects.setdefault(pair, []).append(token)

    if not verbs:
        raise NoVerbProjected(f"no input word landed in a VERB slot of {match.template.id}")
    actions: list[list[list[str]]] = []
    orphans: list[str] = []
    for pair in sorted(set(verbs) | set(objects)):
        verb, obj = verbs.get(pair, []), objects.get(pair, [])
        if verb:
            actions.append([verb, orphans + obj])
            orphans = []
        elif actions:
            actions[-1][1].extend(obj)
        else:
            orphans.extend(obj)

    time_slot = None
    if time_words:
        time_slot = TimeSlot(match.template.slot("TIME").tense, tuple(time_words))
    return PivotForm(
        place=tuple(place),
        time=time_slot,
        subject=tuple(subject),
        actions=tuple(Action(tuple(v), tuple(o)) for v, o in actions),
    )


def verify_lcs(pivot: PivotForm, original_norm: str, cfg: RecognitionConfig) -> bool:
    """Keep a projection only if its slots, read in pivot order, still hold most of the sentence."""
    rebuilt = " ".join(pivot.tokens())
    return lcs_length(rebuilt, original_norm) >= len(original_norm) - cfg.lcs_threshold


def template_from_pivot(template_id: str, target_language: str, sentence: str, pivot: PivotForm) -> Template:
    return Template.build(
        template_id,
        target_language,
        " ".join(sentence.split()),
        place=" ".join(pivot.place),
        time=(pivot.time.tense, " ".join(pivot.time.tokens)) if pivot.time else None,
        subject=" ".join(pivot.subject),
        actions=[(" ".join(a.verb), " ".join(a.object)) for a in pivot.actions],
    )


def recognize(sentence: str, store: CorpusStore, cfg: RecognitionConfig = RecognitionConfig()) -> RecognitionOutcome:
    """Run the recognition stages on one sentence; may add a learned template to ``store``."""
    try:
        norm = normalize_sentence(sentence)
    except EmptyAfterNormalization:
        return RecognitionOutcome(UNRECOGNIZED)
    scheme = cfg.scheme
    perfect = len(norm.text) * scheme.match_score

    exact = store.find_exact(norm.text)
    if exact is not None:
        return RecognitionOutcome(EXACT_MATCH, perfect, exact.id, exact.pivot(), norm)
    if not len(store):
        return RecognitionOutcome(UNRECOGNIZED, sentence=norm)

    nearest, score, perfect = global_proximity(norm.text, store, scheme)
    if decide_recognition(score, perfect, cfg):
        try:
            pivot = project_slots(norm.tokens, template_slot_match(norm.tokens, [nearest], scheme))
        except NoVerbProjected:
            pass
        else:
            return RecognitionOutcome(GLOBAL_PROXIMITY, score, nearest.id, pivot, norm)

    match = template_slot_match(norm.tokens, store, scheme)
    try:
        pivot = project_slots(norm.tokens, match)
    except NoVerbProjected:
        return RecognitionOutcome(UNRECOGNIZED, match.total, match.template.id, sentence=norm)
    if not verify_lcs(pivot, norm.text, cfg):
        return RecognitionOutcome(UNRECOGNIZED, match.total, match.template.id, sentence=norm)

    learned = None
    if cfg.learning_enabled:
        candidate = template_from_pivot(store.next_id(), match.template.target_language, sentence, pivot)
        try:
            store.add(candidate)
            learned = candidate
        except DuplicateText:
            pass
    return RecognitionOutcome(TEMPLATE_PROJECTION, match.total, match.template.id, pivot, norm, learned)
