"""Comparison translators: top-N ranked candidates and structured
(synonym-group) queries."""

import re
from dataclasses import dataclass

from .exceptions import FormatError
from .translit import DEFAULT_CAP, transliterate_oov


@dataclass
class StructuredQuery:
    """One synonym group per translatable source term.

    Each group is a tuple of candidates, each candidate a token tuple.
    ``weights`` is parallel to ``groups``; it defaults to 1.0 everywhere.
    """

    groups: list
    weights: list = None

    def __post_init__(self):
        self.groups = [tuple(g) for g in self.groups]
        if any(not g for g in self.groups):
            raise ValueError("structured query groups must be non-empty")
        if self.weights is None:
            self.weights = [1.0] * len(self.groups)

    def __len__(self):
        return len(self.groups)

    def group_terms(self, g):
        """Distinct tokens of group ``g``; multi-token members contribute every token."""
        return tuple(dict.fromkeys(tok for cand in self.groups[g] for tok in cand))

    def to_line(self):
        return " ".join("{" + "|".join(" ".join(c) for c in group) + "}" for group in self.groups)

    @classmethod
    def from_line(cls, text):
        groups = [tuple(tuple(m.split()) for m in body.split("|")) for body in _GROUP.findall(text)]
        if _GROUP.sub("", text).strip():
            raise ValueError(f"text outside synonym groups: {text!r}")
        if any(not cand for g in groups for cand in g):
            raise ValueError(f"empty group member in {text!r}")
        return cls(groups)


_GROUP = re.compile(r"\{([^{}]*)\}")


def _oov_forms(term, table, vocabulary, cap):
    if table is None:
        return [(term,)]
    forms = transliterate_oov(term, table, vocabulary if vocabulary is not None else (), cap).forms
    return [(f,) for f in forms] or [(term,)]


def top_n_translate(query, dictionary, n, table=None, vocabulary=None, cap=DEFAULT_CAP):
    """First ``n`` dictionary candidates per term, in rank order.

    Returns one candidate list per query term; dictionary misses fall back
    to the transliterator (or pass through unchanged without a table).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for term in query:
        cands = dictionary.lookup(term) or _oov_forms(term, table, vocabulary, cap)
        out.append(cands[:n])
    return out


def flatten(translation):
    """Bag-of-words token list of a per-term candidate translation."""
    return [tok for cands in translation for cand in cands for tok in cand]


def pirkola_structured(query, dictionary, table=None, vocabulary=None, cap=DEFAULT_CAP):
    """All dictionary candidates of each term as one synonym group."""
    groups = []
    for term in query:
        cands = dictionary.lookup(term) or _oov_forms(term, table, vocabulary, cap)
        groups.append(tuple(cands))
    return StructuredQuery(groups)


def format_structured(query_id, sq):
    return f"{query_id}\t{sq.to_line()}"


def read_structured_queries(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            qid, sep, text = line.partition("\t")
            if not sep:
                raise FormatError("expected 'query_id<TAB>{...} {...}'", path, lineno)
            try:
                out[qid] = StructuredQuery.from_line(text)
            except ValueError as exc:
                raise FormatError(str(exc), path, lineno) from exc
    return out
