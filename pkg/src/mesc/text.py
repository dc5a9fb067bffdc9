"""Tokenization shared by corpus, dictionary and query processing."""

import configparser
import unicodedata
from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class TokenizerConfig:
    case_fold: bool = True
    strip_punct: bool = True

    def to_dict(self):
        return asdict(self)


def _is_punct(ch):
    return unicodedata.category(ch).startswith("P")


def normalize_token(token, config=TokenizerConfig()):
    """NFC-normalize one token, then fold case and drop punctuation per ``config``.

    May return the empty string (e.g. a token made only of punctuation).
    """
    token = unicodedata.normalize("NFC", token)
    if config.case_fold:
        token = token.lower()
    if config.strip_punct:
        token = "".join(ch for ch in token if not _is_punct(ch))
    return token


def tokenize(text, config=TokenizerConfig()):
    tokens = (normalize_token(raw, config) for raw in text.split())
    return [t for t in tokens if t]


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_bool(value):
    if isinstance(value, bool):
        return value
    v = str(value).strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ValueError(f"not a boolean: {value!r}")


def read_config(path):
    """Read a ``key = value`` config file into a flat dict of strings.

    Section headers are optional; keys from every section are merged.
    """
    parser = configparser.ConfigParser(interpolation=None)
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[DEFAULT]\n" + fh.read())
    values = dict(parser.defaults())
    for section in parser.sections():
        values.update(parser[section])
    return values


def tokenizer_config_from_mapping(values):
    kwargs = {}
    for key in ("case_fold", "strip_punct"):
        if key in values:
            kwargs[key] = parse_bool(values[key])
    return TokenizerConfig(**kwargs)
