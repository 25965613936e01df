"""Walk a few sentences through the recognizer and watch the corpus grow.

Known sentences come back as exact matches, near misses are caught by global
proximity, and new sentences borrow slot roles from the best-matching
template.  Projected sentences are learned, so asking again gives an exact
match.

The template score sums, over every template word, its best local alignment
with any input word.  Long templates therefore collect many small scores: the
first pass below shows the long history template winning sentences it cannot
project.  The second pass drops that template and the raid sentence is learned.
"the hills" still fails: "hills" aligns best with "families", so the
projection moves it into the subject and the LCS check rejects the result.

    python3 demos/02_recognize_and_learn.py
"""
from pathlib import Path

from tasml.corpus import CorpusStore, load_corpus
from tasml.recognizer import RecognitionConfig, recognize

DATA = Path(__file__).parent / "data"
cfg = RecognitionConfig(global_threshold=6, lcs_threshold=5)

sentences = [
    "The warriors raided the island.",
    "The warriors raided the islands!",
    "The warriors burned the village.",
    "The warriors burned the village.",
    "Most families farmed the hills.",
    "Qxz zzv.",
]


def walk(store):
    print(f"corpus starts with {len(store)} templates\n")
    for sentence in sentences:
        outcome = recognize(sentence, store, cfg)
        print(f"{sentence!r}")
        print(f"  {outcome.kind} (score {outcome.score}, template {outcome.template_id})")
        if outcome.pivot is not None:
            pivot = outcome.pivot
            parts = [f"subject {' '.join(pivot.subject)!r}"]
            parts += [f"verb {' '.join(a.verb)!r} object {' '.join(a.object)!r}" for a in pivot.actions]
            print("  " + "  ".join(parts))
        if outcome.learned is not None:
            print(f"  learned as {outcome.learned.id}")
    print(f"\ncorpus now holds {len(store)} templates\n")


full = load_corpus(DATA / "viking_corpus.txt")  # edited in memory only
walk(full)

short = CorpusStore([t for t in load_corpus(DATA / "viking_corpus.txt") if t.id != "viking-period"])
walk(short)
