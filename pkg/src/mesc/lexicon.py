"""Bilingual dictionaries with rank-ordered candidate lists."""

import logging
import statistics
from dataclasses import dataclass, field

from .exceptions import EmptyDictionaryError, FormatError
from .text import TokenizerConfig, normalize_token, tokenize

logger = logging.getLogger(__name__)


@dataclass
class BilingualDictionary:
    """``entries`` maps a source term to its candidates, rank 1 first.

    Each candidate is a tuple of one or more target tokens.
    """

    entries: dict = field(default_factory=dict)
    name: str = ""

    def __len__(self):
        return len(self.entries)

    def __contains__(self, term):
        return term in self.entries

    def lookup(self, source_term):
        return list(self.entries.get(source_term, ()))


@dataclass(frozen=True)
class DictionaryStats:
    scale: float
    variance: float
    entries: int


def _source_key(text, tokenizer):
    return " ".join(normalize_token(t, tokenizer) for t in text.split() if normalize_token(t, tokenizer))


def parse_dictionary_lines(lines, tokenizer=TokenizerConfig(), name="", source="<dictionary>"):
    entries = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        src, sep, rest = line.partition("\t")
        key = _source_key(src, tokenizer)
        if not sep or not key:
            raise FormatError("expected 'source<TAB>cand1|cand2|...'", source, lineno)
        candidates = []
        for raw in rest.split("|"):
            tokens = tuple(tokenize(raw, tokenizer))
            if not tokens:
                raise FormatError(f"empty candidate in entry {key!r}", source, lineno)
            candidates.append(tokens)
        if key in entries:
            logger.warning("%s:%d: duplicate source term %r, candidates appended", source, lineno, key)
            candidates = entries[key] + candidates
        deduped = list(dict.fromkeys(candidates))
        if len(deduped) != len(candidates):
            logger.warning("%s:%d: duplicate candidates dropped for %r", source, lineno, key)
        entries[key] = deduped
    if not entries:
        logger.warning("%s: dictionary has no entries", source)
    return BilingualDictionary({k: tuple(v) for k, v in entries.items()}, name)


def load_dictionary(path, tokenizer=TokenizerConfig(), name=None):
    """Load a ``source<TAB>cand1|cand2|...`` file.

    Source terms and candidates are normalized with ``tokenizer`` so they
    line up with the corpus vocabulary. Multi-word candidates are kept as
    token tuples.
    """
    with open(path, encoding="utf-8") as fh:
        return parse_dictionary_lines(fh, tokenizer, name if name is not None else str(path), str(path))


def lookup(dictionary, source_term):
    return dictionary.lookup(source_term)


def dictionary_stats(dictionary):
    """Average candidates per entry and their population variance."""
    if not dictionary.entries:
        raise EmptyDictionaryError("dictionary has no entries")
    counts = [len(c) for c in dictionary.entries.values()]
    return DictionaryStats(statistics.fmean(counts), statistics.pvariance(counts), len(counts))
