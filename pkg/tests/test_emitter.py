import pytest

from conftest import VIKING_SENTENCE, VIKING_TASML, viking_template
from tasml.emitter import (
    LEXICAL_CAPITALS,
    SentenceElement,
    Slot,
    TargetLanguageProfile,
    TasmlSyntaxError,
    UnrecognizedSentence,
    assign_timing,
    detect_fingerspell,
    order_for_target,
    parse_tasml,
    profile_for,
    render_tasml,
)
from tasml.emotion import EmotionBlend
from tasml.pivot import Action, FingerspellSpan, PivotForm, TimeSlot
from tasml.text import normalize_sentence

ASL, FSL = profile_for("asl"), profile_for("FSL")
THREE_PAIRS = PivotForm(
    subject=("warriors",),
    actions=(Action(("raided",), ("lands",)), Action(("explored",), ("seas",)), Action(("traded",), ("furs",))),
)


def roles(slots):
    return [s.role for s in slots]


class TestOrder:
    def test_asl_svo(self):
        assert roles(order_for_target(THREE_PAIRS, ASL)) == [
            "place", "time", "subject", "verb", "object", "verb", "object", "verb", "object"]

    def test_fsl_sov_per_pair(self):
        slots = order_for_target(THREE_PAIRS, FSL)
        assert roles(slots) == [
            "place", "time", "subject", "object", "verb", "object", "verb", "object", "verb"]
        assert [s.text for s in slots[3:]] == ["lands", "raided", "seas", "explored", "furs", "traded"]

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            profile_for("BSL")
        with pytest.raises(ValueError):
            TargetLanguageProfile("FSL", "SVO")


class TestTiming:
    def test_pauses(self):
        pivot = PivotForm(subject=("we",), time=TimeSlot("past", ("then",)), actions=(Action(("met",), ("them",)),))
        element = assign_timing(order_for_target(pivot, ASL), ASL, speed=1.5)
        pauses = {s.role: s.pause for s in element.slots}
        assert pauses == {"place": 0.0, "time": 1.0, "subject": 0.5, "verb": 0.0, "object": 1.0}
        assert element.speed == 1.5

    def test_empty_object_gets_no_pause(self):
        pivot = PivotForm(subject=("we",), actions=(Action(("slept",)),))
        element = assign_timing(order_for_target(pivot, ASL), ASL)
        assert all(s.pause == 0 for s in element.slots if s.role != "subject")

    def test_bad_speed(self):
        with pytest.raises(ValueError):
            assign_timing([], ASL, speed=0)


class TestFingerspell:
    def test_viking_jesus_christ_once(self):
        norm = normalize_sentence(VIKING_SENTENCE)
        pivot = detect_fingerspell(viking_template().pivot(), norm)
        assert pivot.fingerspell == (FingerspellSpan(("jesus-christ",), "Jesus-Christ"),)

    def test_viking_is_excluded(self):
        assert "viking" in LEXICAL_CAPITALS

    def test_none(self):
        norm = normalize_sentence("The warriors raided the island.")
        pivot = PivotForm(subject=("the", "warriors"), actions=(Action(("raided",), ("the", "island")),))
        assert detect_fingerspell(pivot, norm).fingerspell == ()

    def test_adjacent_names_merge(self):
        norm = normalize_sentence("Then Harald Hardrada sailed south.")
        pivot = PivotForm(subject=("then", "harald", "hardrada"), actions=(Action(("sailed",), ("south",)),))
        assert detect_fingerspell(pivot, norm).fingerspell == (
            FingerspellSpan(("harald", "hardrada"), "Harald Hardrada"),)

    def test_comma_separates_names(self):
        norm = normalize_sentence("They reached Iceland, Greenland and Vinland.")
        pivot = PivotForm(subject=("they",), actions=(Action(("reached",), ("iceland", "greenland", "and", "vinland")),))
        spans = detect_fingerspell(pivot, norm).fingerspell
        assert [s.text for s in spans] == ["iceland", "greenland", "vinland"]


class TestRender:
    def viking_element(self):
        slots = order_for_target(viking_template().pivot(), ASL)
        element = assign_timing(slots, ASL)
        return SentenceElement(
            element.slots, 1.0,
            EmotionBlend((("surprise", 0.5), ("fear", 0.5))),
            (FingerspellSpan(("jesus-christ",), "Jesus-Christ"),),
        )

    def test_viking_document(self):
        assert render_tasml([self.viking_element()], "ASL") == VIKING_TASML

    def test_empty_document(self):
        assert render_tasml([], "FSL") == '<tasml version="1.0" target="FSL">\n</tasml>\n'

    def test_unrecognized_escaped(self):
        doc = render_tasml([UnrecognizedSentence("a < b & c")])
        assert '<sentence id="1" unrecognized="true">a &lt; b &amp; c</sentence>' in doc
        _, parsed = parse_tasml(doc)
        assert parsed[0].unrecognized and parsed[0].text == "a < b & c"

    def test_speed_formatting(self):
        element = SentenceElement((Slot("place"), Slot("time"), Slot("subject"), Slot("verb", ("go",)), Slot("object")), 1.25)
        assert 'speed="1.25"' in render_tasml([element])

    def test_round_trip(self):
        target, sentences = parse_tasml(VIKING_TASML)
        assert target == "ASL" and len(sentences) == 1
        s = sentences[0]
        assert s.emotion == [("surprise", 0.5), ("fear", 0.5)] and s.compound == "surprise-fear"
        assert s.slots[1] == ("time", "for about three to four hundred years from 790 to 1100 after jesus-christ",
                              {"tense": "past", "pause": "1.0"})
        assert s.fingerspell == [("jesus-christ", "Jesus-Christ")]


class TestParseErrors:
    @pytest.mark.parametrize("mutation", [
        lambda d: d.replace("</tasml>", ""),
        lambda d: d.replace('version="1.0"', 'version="2.0"'),
        lambda d: d.replace('target="ASL"', 'target="BSL"'),
        lambda d: d.replace('id="1"', 'id="2"'),
        lambda d: d.replace('speed="1"', 'speed="0"'),
        lambda d: d.replace("<place/>\n", ""),
        lambda d: d.replace("    <verb>stretched</verb>\n    <object/>", "    <object/>\n    <verb>stretched</verb>"),
        lambda d: d.replace("surprise:0.500", "surprise:0.600"),
        lambda d: d.replace(">surprise-fear<", ">fear-surprise<"),
        lambda d: d.replace("surprise:0.500", "shock:0.500"),
    ])
    def test_rejects(self, mutation):
        with pytest.raises(TasmlSyntaxError):
            parse_tasml(mutation(VIKING_TASML))

    def test_fsl_order_accepted_for_fsl_only(self):
        doc = VIKING_TASML.replace("    <verb>stretched</verb>\n    <object/>", "    <object/>\n    <verb>stretched</verb>")
        parse_tasml(doc.replace('target="ASL"', 'target="FSL"'))
