import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from conftest import VIKING_SENTENCE, VIKING_TASML
from tasml.corpus import CorpusStore, load_corpus, save_corpus
from tasml.emitter import parse_tasml
from tasml.emotion import EmotionLexicon
from tasml.pipeline import (
    ConfigError,
    IdentityTranslator,
    PipelineConfig,
    RemoteTranslator,
    TranslatorBadResponse,
    TranslatorUnreachable,
    make_translator,
    translate_text,
)
from tasml.recognizer import EXACT_MATCH, TEMPLATE_PROJECTION, UNRECOGNIZED, RecognitionConfig


class _Upper(BaseHTTPRequestHandler):
    def do_POST(self):
        body = self.rfile.read(int(self.headers["Content-Length"]))
        if self.headers.get("X-Source-Language") == "xx":
            self.send_response(500)
            self.end_headers()
            return
        reply = body.decode("utf-8").upper().encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Length", str(len(reply)))
        self.end_headers()
        self.wfile.write(reply)

    def log_message(self, *args):
        pass


@pytest.fixture
def upper_endpoint():
    server = HTTPServer(("127.0.0.1", 0), _Upper)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/translate"
    server.shutdown()
    server.server_close()


class TestTranslators:
    def test_identity(self):
        assert IdentityTranslator().translate("Hej då", "sv") == "Hej då"

    def test_remote_round_trip(self, upper_endpoint):
        assert RemoteTranslator(upper_endpoint).translate("ship ahoy", "en") == "SHIP AHOY"

    def test_remote_bad_status(self, upper_endpoint):
        with pytest.raises(TranslatorBadResponse):
            RemoteTranslator(upper_endpoint).translate("x", "xx")

    def test_unreachable(self):
        server = HTTPServer(("127.0.0.1", 0), _Upper)
        port = server.server_address[1]
        server.server_close()
        with pytest.raises(TranslatorUnreachable):
            RemoteTranslator(f"http://127.0.0.1:{port}/", timeout=2).translate("x")

    def test_make_translator(self):
        assert isinstance(make_translator(None), IdentityTranslator)
        assert isinstance(make_translator("identity"), IdentityTranslator)
        with pytest.raises(ConfigError):
            make_translator("ftp://nowhere")


class TestTranslate:
    def test_viking_document(self, viking_store, viking_lexicon):
        report = translate_text(VIKING_SENTENCE, PipelineConfig(), viking_store, viking_lexicon)
        assert report.document == VIKING_TASML
        assert [s.kind for s in report.sentences] == [EXACT_MATCH]

    def test_fsl_target(self, viking_store, viking_lexicon):
        report = translate_text(VIKING_SENTENCE, PipelineConfig(target_language="fsl"), viking_store, viking_lexicon)
        _, (sentence,) = parse_tasml(report.document)
        assert [s[0] for s in sentence.slots] == ["place", "time", "subject", "object", "verb"]

    def test_empty_text(self, viking_store, viking_lexicon):
        report = translate_text("", PipelineConfig(), viking_store, viking_lexicon)
        assert report.document == '<tasml version="1.0" target="ASL">\n</tasml>\n'
        assert report.sentences == [] and report.learned_count == 0

    def test_gibberish_second_sentence(self, raid_store):
        text = "The warriors raided the island. Xq zzv."
        report = translate_text(text, PipelineConfig(), raid_store, EmotionLexicon())
        assert (report.recognized_count, report.unrecognized_count) == (1, 1)
        _, sentences = parse_tasml(report.document)
        assert sentences[1].unrecognized and sentences[1].text == "Xq zzv."

    def test_no_lexicon_hits_means_no_emotion(self, raid_store):
        report = translate_text("The warriors raided the island.", PipelineConfig(), raid_store, EmotionLexicon())
        assert "<emotion" not in report.document

    def test_fuzzy_blend_used_off_template(self, raid_store):
        lexicon = EmotionLexicon({"raided": [("anger", 0.7)], "island": [("fear", 0.3)]})
        report = translate_text("The warriors raided the island.", PipelineConfig(), raid_store, lexicon)
        assert '<emotion components="anger:0.700,fear:0.300">anger-fear</emotion>' in report.document

    def test_remote_translator_feeds_recognizer(self, raid_store, upper_endpoint):
        cfg = PipelineConfig(translator=RemoteTranslator(upper_endpoint))
        report = translate_text("the warriors raided the island.", cfg, raid_store, EmotionLexicon())
        assert report.sentences[0].kind == EXACT_MATCH
        assert report.sentences[0].text == "THE WARRIORS RAIDED THE ISLAND."

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            PipelineConfig(target_language="BSL")
        with pytest.raises(ConfigError):
            PipelineConfig(speed=0)


class TestPersistence:
    def test_learned_appended_in_order(self, tmp_path, raid_store):
        path = tmp_path / "corpus.txt"
        save_corpus(raid_store, path)
        before = path.read_text(encoding="utf-8")
        text = "The raiders attacked the coast. The merchants sold furs."
        report = translate_text(text, PipelineConfig(corpus_path=path))
        assert [s.kind for s in report.sentences] == [TEMPLATE_PROJECTION, TEMPLATE_PROJECTION]
        after = path.read_text(encoding="utf-8")
        assert after.startswith(before)
        reloaded = load_corpus(path)
        assert [t.id for t in reloaded][-2:] == [t.id for t in report.learned]
        assert len(reloaded) == len(raid_store) + report.learned_count

    def test_trailing_place_fails_lcs_gate(self, raid_store):
        # the place phrase moves to the front of the sign order, displacing 14 characters
        report = translate_text("The merchants sold furs in the market.", PipelineConfig(), raid_store, EmotionLexicon())
        assert report.sentences[0].kind == UNRECOGNIZED
        cfg = PipelineConfig(recognition=RecognitionConfig(lcs_threshold=14))
        report = translate_text("The merchants sold furs in the market.", cfg, raid_store, EmotionLexicon())
        assert report.sentences[0].kind == TEMPLATE_PROJECTION

    def test_no_learn_leaves_file(self, tmp_path, raid_store):
        path = tmp_path / "corpus.txt"
        save_corpus(raid_store, path)
        before = path.read_bytes()
        cfg = PipelineConfig(corpus_path=path, recognition=RecognitionConfig(learning_enabled=False))
        translate_text("The raiders attacked the coast.", cfg)
        assert path.read_bytes() == before

    def test_passed_store_is_not_written(self, tmp_path, raid_store):
        path = tmp_path / "corpus.txt"
        save_corpus(raid_store, path)
        before = path.read_bytes()
        translate_text("The raiders attacked the coast.", PipelineConfig(corpus_path=path), raid_store, EmotionLexicon())
        assert path.read_bytes() == before
        assert len(raid_store) == 3

    def test_rerun_is_exact(self, tmp_path, raid_store):
        path = tmp_path / "corpus.txt"
        save_corpus(raid_store, path)
        translate_text("The raiders attacked the coast.", PipelineConfig(corpus_path=path))
        snapshot = path.read_bytes()
        report = translate_text("The raiders attacked the coast.", PipelineConfig(corpus_path=path))
        assert report.sentences[0].kind == EXACT_MATCH
        assert path.read_bytes() == snapshot

    def test_unrecognized_never_learned(self, tmp_path):
        path = tmp_path / "corpus.txt"
        save_corpus(CorpusStore(), path)
        report = translate_text("Anything here.", PipelineConfig(corpus_path=path))
        assert report.sentences[0].kind == UNRECOGNIZED and report.learned == []
