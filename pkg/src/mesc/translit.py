"""Rule-based transliteration of out-of-vocabulary source terms.

Consonants map to exactly one target string; every vowel expands into all of
its alternatives (possibly the empty string). The mapping is always data,
loaded from a rule file::

    # class  source  target(s)
    C  t   ت
    V  o   و|
    C  sh  ش

``V`` alternatives are ``|``-separated; an empty alternative is written as a
leading, trailing or doubled ``|``.
"""

import itertools
import logging
import unicodedata
from dataclasses import dataclass, field
from typing import NamedTuple

from .exceptions import FormatError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 256
CONSONANT = "C"
VOWEL = "V"


@dataclass
class TransliterationTable:
    consonant_map: dict = field(default_factory=dict)
    vowel_alternatives: dict = field(default_factory=dict)

    @property
    def grapheme_classes(self):
        classes = {g: CONSONANT for g in self.consonant_map}
        classes.update({g: VOWEL for g in self.vowel_alternatives})
        return classes

    @property
    def max_grapheme_len(self):
        return max((len(g) for g in self.grapheme_classes), default=1)


class Variants(NamedTuple):
    forms: list
    truncated: bool
    unknown: tuple = ()


class OOVSupport(NamedTuple):
    forms: list
    unverified: bool


def _norm(text):
    return unicodedata.normalize("NFC", text).lower()


def parse_translit_rules(lines, source="<rules>"):
    table = TransliterationTable()
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split(None, 2)
        cls = parts[0]
        if cls not in (CONSONANT, VOWEL):
            raise FormatError(f"unknown grapheme class {cls!r}", source, lineno)
        if len(parts) < 2:
            raise FormatError("missing source grapheme", source, lineno)
        src = _norm(parts[1])
        if src in table.consonant_map or src in table.vowel_alternatives:
            raise FormatError(f"duplicate grapheme {src!r}", source, lineno)
        if cls == CONSONANT:
            if len(parts) < 3 or len(parts[2].split()) != 1:
                raise FormatError("consonant rule needs exactly one target", source, lineno)
            table.consonant_map[src] = unicodedata.normalize("NFC", parts[2].strip())
        else:
            if len(parts) < 3:
                raise FormatError(f"empty alternative list for {src!r}", source, lineno)
            alts = [unicodedata.normalize("NFC", a.strip()) for a in parts[2].strip().split("|")]
            table.vowel_alternatives[src] = list(dict.fromkeys(alts))
    return table


def load_translit_rules(path):
    with open(path, encoding="utf-8") as fh:
        return parse_translit_rules(fh, str(path))


def segment(term, table):
    """Split ``term`` into per-grapheme alternative lists (longest grapheme match first)."""
    term = _norm(term)
    longest = table.max_grapheme_len
    segments, unknown = [], []
    i = 0
    while i < len(term):
        for size in range(min(longest, len(term) - i), 0, -1):
            g = term[i:i + size]
            if g in table.consonant_map:
                segments.append([table.consonant_map[g]])
                break
            if g in table.vowel_alternatives:
                segments.append(table.vowel_alternatives[g])
                break
        else:
            size = 1
            unknown.append(term[i])
            segments.append([term[i]])
        i += size
    return segments, tuple(unknown)


def generate_variants(term, table, cap=DEFAULT_CAP):
    """Cartesian expansion of ``term`` under ``table``, deduplicated, at most ``cap`` forms.

    Earlier alternatives come first. ``truncated`` is set when more distinct
    forms exist beyond the cap.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    segments, unknown = segment(term, table)
    if unknown:
        logger.warning("graphemes %s of %r not in table, passed through", "".join(unknown), term)
    seen = {}
    truncated = False
    for combo in itertools.product(*segments):
        form = "".join(combo)
        if not form or form in seen:
            continue
        if len(seen) == cap:
            truncated = True
            break
        seen[form] = None
    return Variants(list(seen), truncated, unknown)


def transliterate_oov(term, table, vocabulary, cap=DEFAULT_CAP):
    """Variants of ``term`` that occur in ``vocabulary``.

    If none occurs, the first generated variant is returned alone with
    ``unverified=True``.
    """
    variants = generate_variants(term, table, cap).forms
    found = [v for v in variants if v in vocabulary]
    if found:
        return OOVSupport(found, False)
    return OOVSupport(variants[:1], True)
