"""Translate a short history passage into TASML for both sign languages.

The corpus file is copied to a scratch directory first because translation
appends whatever it learns.  The last sentence is new, and against this corpus
the long history template outscores every shorter one for it (see demo 02),
so it travels through as a raw-text element instead of stopping the document.

    python3 demos/03_translate_document.py
"""
import shutil
import tempfile
from pathlib import Path

from tasml.pipeline import PipelineConfig, translate_text

DATA = Path(__file__).parent / "data"
PASSAGE = (
    "The Viking period in history stretched for about three to four hundred years "
    "from 790 after Jesus-Christ to 1100 after Jesus-Christ. "
    "The warriors raided the island. "
    "During the summer the sailors crossed the sea and reached new lands. "
    "The warriors burned the village."
)

with tempfile.TemporaryDirectory() as scratch:
    corpus = Path(scratch) / "corpus.txt"
    shutil.copy(DATA / "viking_corpus.txt", corpus)

    for target in ("ASL", "FSL"):
        cfg = PipelineConfig(corpus_path=corpus, lexicon_path=DATA / "emotions.tsv", target_language=target)
        report = translate_text(PASSAGE, cfg)
        print(report.document)
        for entry in report.sentences:
            print(f"# {entry.kind:18} {entry.text}")
        print(f"# learned {report.learned_count} new template(s)\n")
