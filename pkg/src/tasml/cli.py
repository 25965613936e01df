"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 data-file error, 3 translator error.
Only ``translate`` output (TASML) goes to standard output; diagnostics go to
standard error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import CorpusError, CorpusStore, CorpusSyntaxError, Template, append_templates, load_corpus, serialize_template
from .emotion import LexiconSyntaxError, fuzzy_blend, load_lexicon, score_intensities
from .pipeline import ConfigError, PipelineConfig, TranslatorError, make_translator, translate_text
from .recognizer import RecognitionConfig
from .text import EmptyAfterNormalization, normalize_sentence

log = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_TRANSLATOR = 0, 1, 2, 3

CONFIG_KEYS = {
    "corpus", "lexicon", "target", "global-threshold", "lcs-threshold",
    "learn", "speed", "out", "translator", "source-language",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def read_config_file(path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment line."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-")
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown setting {line!r}")
        values[key] = value.strip()
    return values


def _add_resource_flags(parser, lexicon=True):
    parser.add_argument("--config", type=Path, help="key=value file with default flag values")
    parser.add_argument("--corpus", type=Path, help="template corpus file")
    if lexicon:
        parser.add_argument("--lexicon", type=Path, help="emotion lexicon file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tasml", description="English text to TASML for sign-language avatars")
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    translate = commands.add_parser("translate", help="translate text into a TASML document")
    _add_resource_flags(translate)
    translate.add_argument("input", nargs="?", type=Path, help="text file (default: standard input)")
    translate.add_argument("--target", type=str.upper, choices=["ASL", "FSL"])
    translate.add_argument("--global-threshold", type=int)
    translate.add_argument("--lcs-threshold", type=int)
    translate.add_argument("--no-learn", action="store_true", default=None)
    translate.add_argument("--speed", type=float)
    translate.add_argument("--out", type=Path)
    translate.add_argument("--translator", help="'identity' or the URL of a translation endpoint")
    translate.add_argument("--source-language")

    corpus = commands.add_parser("corpus", help="inspect or extend the template corpus")
    corpus_commands = corpus.add_subparsers(dest="corpus_command", required=True)
    listing = corpus_commands.add_parser("list")
    _add_resource_flags(listing, lexicon=False)
    show = corpus_commands.add_parser("show")
    _add_resource_flags(show, lexicon=False)
    show.add_argument("id")
    add = corpus_commands.add_parser("add")
    _add_resource_flags(add, lexicon=False)
    add.add_argument("--id")
    add.add_argument("--lang", type=str.upper, choices=["ASL", "FSL"], default="ASL")
    add.add_argument("--text", required=True)
    add.add_argument("--place", default="")
    add.add_argument("--time", help="'<tense> | <text>'")
    add.add_argument("--subject", default="")
    add.add_argument("--verb", action="append", required=True)
    add.add_argument("--object", action="append", default=[])
    add.add_argument("--emotion", action="append", default=[])

    emotions = commands.add_parser("emotions", help="show detected emotion intensities and blend")
    _add_resource_flags(emotions)
    emotions.add_argument("sentence", nargs="+")

    check = commands.add_parser("check", help="validate corpus and lexicon files")
    _add_resource_flags(check)
    return parser


def _settings(args) -> dict:
    """Merge config-file values under explicit flags."""
    merged = read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        attr = key.replace("-", "_")
        value = getattr(args, attr, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "no_learn", None):
        merged["learn"] = "false"
    return merged


def _int(settings, key, default):
    try:
        return int(settings.get(key, default))
    except ValueError:
        raise ConfigError(f"{key} must be an integer") from None


def pipeline_config(settings: dict) -> PipelineConfig:
    if "corpus" not in settings:
        raise UsageError("a corpus is required (--corpus or 'corpus =' in --config)")
    learn = str(settings.get("learn", "true")).lower()
    if learn not in ("true", "false", "yes", "no", "1", "0"):
        raise ConfigError(f"learn must be true or false, got {learn!r}")
    try:
        speed = float(settings.get("speed", 1.0))
        recognition = RecognitionConfig(
            global_threshold=_int(settings, "global-threshold", 6),
            lcs_threshold=_int(settings, "lcs-threshold", 5),
            learning_enabled=learn in ("true", "yes", "1"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return PipelineConfig(
        corpus_path=Path(settings["corpus"]),
        lexicon_path=Path(settings["lexicon"]) if settings.get("lexicon") else None,
        target_language=str(settings.get("target", "ASL")),
        recognition=recognition,
        translator=make_translator(settings.get("translator")),
        source_language=str(settings.get("source-language", "auto")),
        speed=speed,
    )


def cmd_translate(args) -> int:
    settings = _settings(args)
    cfg = pipeline_config(settings)
    text = args.input.read_text(encoding="utf-8") if args.input else sys.stdin.read()
    report = translate_text(text, cfg)
    for entry in report.sentences:
        log.info("%s: %s", entry.kind, entry.text)
    log.info("%d recognized, %d unrecognized, %d learned",
             report.recognized_count, report.unrecognized_count, report.learned_count)
    out = settings.get("out")
    if out:
        Path(out).write_text(report.document, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(report.document)
    return EXIT_OK


def _corpus_path(args) -> Path:
    settings = _settings(args)
    if "corpus" not in settings:
        raise UsageError("a corpus is required (--corpus or 'corpus =' in --config)")
    return Path(settings["corpus"])


def cmd_corpus(args) -> int:
    path = _corpus_path(args)
    if args.corpus_command == "add" and not path.exists():
        store = CorpusStore()
    else:
        store = load_corpus(path)
    if args.corpus_command == "list":
        for t in store:
            print(f"{t.id}\t{t.target_language}\t{t.source_text}")
        return EXIT_OK
    if args.corpus_command == "show":
        template = store.get(args.id)
        if template is None:
            raise UsageError(f"no template with id {args.id!r}")
        sys.stdout.write(serialize_template(template))
        return EXIT_OK

    objects = args.object + [""] * (len(args.verb) - len(args.object))
    if len(objects) > len(args.verb):
        raise UsageError("more --object than --verb values")
    time = None
    if args.time:
        tense, sep, text = args.time.partition("|")
        if not sep:
            raise UsageError("--time takes '<tense> | <text>'")
        time = (tense.strip(), text.strip())
    labels = [label.strip() for value in args.emotion for label in value.split(",") if label.strip()]
    try:
        template = Template.build(
            args.id or store.next_id("t"), args.lang, args.text,
            place=args.place, time=time, subject=args.subject,
            actions=list(zip(args.verb, objects)), emotions=labels,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    store.add(template)
    append_templates(path, [template])
    print(template.id, file=sys.stderr)
    return EXIT_OK


def cmd_emotions(args) -> int:
    settings = _settings(args)
    if not settings.get("lexicon"):
        raise UsageError("a lexicon is required (--lexicon or 'lexicon =' in --config)")
    lexicon = load_lexicon(settings["lexicon"])
    try:
        tokens = normalize_sentence(" ".join(args.sentence)).tokens
    except EmptyAfterNormalization as exc:
        raise UsageError(str(exc)) from None
    profile = score_intensities(tokens, lexicon)
    for label, value in profile.items():
        print(f"{label}\t{value:.3f}")
    blend = fuzzy_blend(profile)
    if blend is None:
        print("blend\tneutral")
    else:
        components = ",".join(f"{label}:{weight:.3f}" for label, weight in blend.components)
        print(f"blend\t{blend.compound}\t{components}")
    return EXIT_OK


def cmd_check(args) -> int:
    settings = _settings(args)
    if "corpus" not in settings and not settings.get("lexicon"):
        raise UsageError("nothing to check: give --corpus and/or --lexicon")
    if "corpus" in settings:
        store = load_corpus(settings["corpus"])
        print(f"corpus\t{settings['corpus']}\t{len(store)} templates")
    if settings.get("lexicon"):
        lexicon = load_lexicon(settings["lexicon"])
        print(f"lexicon\t{settings['lexicon']}\t{len(lexicon)} words")
    return EXIT_OK


def _configure_logging(verbose: bool) -> None:
    # bind to the current stderr on every call so repeated in-process runs behave
    logger = logging.getLogger("tasml")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("tasml: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    logger.propagate = False


COMMANDS = {"translate": cmd_translate, "corpus": cmd_corpus, "emotions": cmd_emotions, "check": cmd_check}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tasml: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusSyntaxError, LexiconSyntaxError) as exc:
        print(f"tasml: {getattr(exc, 'path', 'data file')}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (CorpusError, ConfigError, OSError) as exc:
        print(f"tasml: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TranslatorError as exc:
        print(f"tasml: translator: {exc}", file=sys.stderr)
        return EXIT_TRANSLATOR


if __name__ == "__main__":
    sys.exit(main())
