import pytest

from tasml.alignment import record_cell_visits
from tasml.corpus import CorpusStore, Template
from tasml.emotion import EmotionLexicon

VIKING_SENTENCE = (
    "The Viking period in history stretched for about three to four hundred years "
    "from 790 after Jesus-Christ to 1100 after Jesus-Christ."
)

VIKING_TASML = """\
<tasml version="1.0" target="ASL">
  <sentence id="1" speed="1">
    <place/>
    <time tense="past" pause="1.0">for about three to four hundred years from 790 to 1100 after jesus-christ</time>
    <subject pause="0.5">the viking period in history</subject>
    <verb>stretched</verb>
    <object/>
    <emotion components="surprise:0.500,fear:0.500">surprise-fear</emotion>
    <fingerspell original="Jesus-Christ">jesus-christ</fingerspell>
  </sentence>
</tasml>
"""

_acceptance = []
CRITERIA = {
    "test_alignment_oracle_suite": "alignment kernels equal brute force on all {a,b} pairs up to length 5",
    "test_viking_document_reproduction": "reference Viking sentence renders to the documented TASML",
    "test_fsl_ordering": "FSL puts every object before its verb (three pairs)",
    "test_emotion_blend": "70/30 blend and membership split 0.4",
    "test_learning_loop": "learn once, then exact match, byte-stable corpus",
    "test_property_suites": "conservation, scaling, monotonicity, adjacency over 1000 instances each",
    "test_complexity_cell_visits": "every kernel call visits (m+1)(n+1) cells",
}


@pytest.fixture(autouse=True)
def audit_cell_visits():
    """Every kernel call in every test must touch exactly (m+1)(n+1) cells."""
    with record_cell_visits() as log:
        yield log
    bad = [entry for entry in log if entry.visits != entry.expected]
    assert not bad, f"kernel cell counts off: {bad[:3]}"


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        label = CRITERIA.get(name, name)
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}  [{name}]")


def viking_template(**overrides):
    fields = dict(
        subject="The Viking period in history",
        actions=[("stretched", "")],
        time=("past", "for about three to four hundred years from 790 to 1100 after Jesus-Christ"),
        emotions=("surprise", "fear"),
    )
    fields.update(overrides)
    return Template.build("viking-period", "ASL", VIKING_SENTENCE, **fields)


@pytest.fixture
def viking_store():
    return CorpusStore([viking_template()])


@pytest.fixture
def viking_lexicon():
    # equal surprise and fear intensities
    return EmotionLexicon({"stretched": [("surprise", 0.6)], "history": [("fear", 0.6)]})


@pytest.fixture
def raid_store():
    return CorpusStore([
        Template.build("raid", "ASL", "The warriors raided the island.",
                       subject="the warriors", actions=[("raided", "the island")]),
        Template.build("trade", "ASL", "Merchants sold amber in the market.",
                       subject="merchants", actions=[("sold", "amber")], place="in the market"),
    ])
