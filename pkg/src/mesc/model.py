"""Minimum Edit Support Candidates (MESC) query translation.

For each source query term the dictionary supplies ranked candidates. The
model adds *support candidates*: corpus terms one or two edits away from a
dictionary candidate that also co-occur with a dictionary candidate of some
other query term. Every candidate is then scored by summed joint
co-occurrence probabilities with the other terms' candidates, the scores of
each term are normalized to a distribution, and the most probable candidate
is chosen.
"""

import logging
from dataclasses import dataclass, field, replace

from .corpus_index import joint_probability
from .edit_distance import NeighborFinder
from .text import tokenize
from .translit import DEFAULT_CAP, transliterate_oov

logger = logging.getLogger(__name__)

DEFAULT_MIN_SUPPORT_STEM_LEN = 3

EDIT = "edit"
TRANSLITERATION = "transliteration"

DICTIONARY = "dictionary"
SUPPORT = "support"
TRANSLIT_FALLBACK = "transliteration-fallback"
UNTRANSLATABLE = "untranslatable"


@dataclass(frozen=True)
class MESCConfig:
    min_support_stem_len: int = DEFAULT_MIN_SUPPORT_STEM_LEN
    translit_cap: int = DEFAULT_CAP
    stopwords: frozenset = frozenset()
    neighbor_strategy: str = "length"


@dataclass(frozen=True)
class SupportCandidate:
    """A generated candidate; ``anchor``/``distance`` are set for edit neighbors."""

    term: str
    origin: str = EDIT
    anchor: tuple = None
    distance: int = None


@dataclass
class QueryCandidates:
    query_terms: list
    dict_candidates: list
    support_candidates: list = None
    unverified: list = None

    def __post_init__(self):
        m = len(self.query_terms)
        if self.support_candidates is None:
            self.support_candidates = [[] for _ in range(m)]
        if self.unverified is None:
            self.unverified = [False] * m

    @classmethod
    def from_dictionary(cls, query_terms, dictionary):
        terms = list(query_terms)
        return cls(terms, [dictionary.lookup(t) for t in terms])

    def __len__(self):
        return len(self.query_terms)


@dataclass
class TermDistribution:
    p_dict: list
    p_support: list
    normalized: bool = False
    fallback_used: bool = False
    untranslatable: bool = False

    @property
    def mass(self):
        return sum(self.p_dict) + sum(self.p_support)


@dataclass
class TranslationDistribution:
    terms: list
    # number of support-support joint probabilities consulted; the model never uses them
    support_support_evaluations: int = 0


@dataclass
class TermTranslation:
    source_term: str
    chosen: tuple
    source_list: str
    score: float
    fallback: bool = False
    diagnostics: list = field(default_factory=list)


@dataclass
class TranslationResult:
    terms: list

    @property
    def chosen(self):
        return [t.chosen for t in self.terms]

    def tokens(self):
        return [tok for t in self.terms for tok in t.chosen]

    @property
    def text(self):
        return " ".join(self.tokens())


def _anchors(candidates, min_len):
    for cand in candidates:
        for tok in cand:
            if len(tok) >= min_len:
                yield tok, cand


def extract_support_candidates(qc, index, vocabulary=None,
                               min_support_stem_len=DEFAULT_MIN_SUPPORT_STEM_LEN,
                               finder=None):
    """Fill each term's support list with edit neighbors that co-occur with
    another term's dictionary candidates.

    A multi-token candidate contributes each token of at least
    ``min_support_stem_len`` characters as an edit anchor, and counts as
    co-occurring with ``v`` when any of its tokens does.
    """
    if finder is None:
        finder = NeighborFinder(vocabulary if vocabulary is not None else index.terms)
    m = len(qc)
    term_tokens = []
    for cands in qc.dict_candidates:
        ids = {index.term_ids[tok] for cand in cands for tok in cand if tok in index.term_ids}
        term_tokens.append(ids)

    new_support = []
    for i in range(m):
        existing = list(qc.support_candidates[i])
        other_ids = set().union(*(term_tokens[k] for k in range(m) if k != i))
        adjacent = set()
        for tid in sorted(other_ids):
            adjacent |= index.neighbor_ids(tid)
        own = set(qc.dict_candidates[i])
        best = {}
        if adjacent:
            for tok, cand in _anchors(qc.dict_candidates[i], min_support_stem_len):
                for nb in finder(tok):
                    vid = index.term_ids.get(nb.term)
                    if vid is None or vid not in adjacent or (nb.term,) in own:
                        continue
                    if nb.term not in best or nb.distance < best[nb.term].distance:
                        best[nb.term] = SupportCandidate(nb.term, EDIT, cand, nb.distance)
        have = {s.term for s in existing}
        edit = sorted((s for t, s in best.items() if t not in have), key=lambda s: (s.distance, s.term))
        new_support.append(existing + edit)
    return replace(qc, support_candidates=new_support, unverified=list(qc.unverified))


class _PairProbability:
    """Cached candidate-level joint probability.

    Either side may be multi-token; the value is then the maximum over
    token pairs.
    """

    def __init__(self, index):
        self.index = index
        self.support_support = 0
        self._cache = {}
        self._empty = index.total_pair_mass == 0

    def __call__(self, x, x_kind, y, y_kind):
        if x_kind == SUPPORT and y_kind == SUPPORT:
            self.support_support += 1
        key = (x, y) if x <= y else (y, x)
        value = self._cache.get(key)
        if value is None:
            if self._empty:
                value = 0.0
            else:
                value = max(joint_probability(self.index, a, b) for a in x for b in y)
            self._cache[key] = value
        return value


def _support_tokens(qc, i):
    return [(s.term,) for s in qc.support_candidates[i]]


def _empty_distribution(qc):
    return TranslationDistribution(
        [TermDistribution([0.0] * len(qc.dict_candidates[i]), [0.0] * len(qc.support_candidates[i]))
         for i in range(len(qc))]
    )


def score_dictionary_candidates(qc, index, dist=None):
    """Raw dictionary-candidate scores: for each candidate, the sum of its
    joint probabilities with every dictionary and support candidate of the
    other query terms."""
    prob = _PairProbability(index)
    dist = dist or _empty_distribution(qc)
    m = len(qc)
    terms = []
    for i in range(m):
        scores = []
        for c in qc.dict_candidates[i]:
            total = 0.0
            for k in range(m):
                if k == i:
                    continue
                for c2 in qc.dict_candidates[k]:
                    total += prob(c, DICTIONARY, c2, DICTIONARY)
                for s2 in _support_tokens(qc, k):
                    total += prob(c, DICTIONARY, s2, SUPPORT)
            scores.append(total)
        terms.append(replace(dist.terms[i], p_dict=scores))
    return TranslationDistribution(terms, dist.support_support_evaluations + prob.support_support)


def score_support_candidates(qc, index, dist=None):
    """Raw support-candidate scores, summed against the other terms'
    dictionary candidates only; support-support pairs never contribute."""
    prob = _PairProbability(index)
    dist = dist or _empty_distribution(qc)
    m = len(qc)
    terms = []
    for i in range(m):
        scores = []
        for s in _support_tokens(qc, i):
            total = 0.0
            for k in range(m):
                if k == i:
                    continue
                for c2 in qc.dict_candidates[k]:
                    total += prob(s, SUPPORT, c2, DICTIONARY)
            scores.append(total)
        terms.append(replace(dist.terms[i], p_support=scores))
    return TranslationDistribution(terms, dist.support_support_evaluations + prob.support_support)


def score_candidates(qc, index):
    return score_support_candidates(qc, index, score_dictionary_candidates(qc, index))


def normalize(dist):
    """Scale each term's scores to sum to one.

    A term with zero mass gets a uniform distribution over its dictionary
    candidates (or, lacking those, over its support list) and is flagged
    ``fallback_used``; a term with no candidates is ``untranslatable``.
    """
    terms = []
    for td in dist.terms:
        n_dict, n_sup = len(td.p_dict), len(td.p_support)
        mass = td.mass
        if n_dict + n_sup == 0:
            terms.append(replace(td, normalized=True, untranslatable=True))
        elif mass > 0:
            terms.append(replace(td, p_dict=[p / mass for p in td.p_dict],
                                 p_support=[p / mass for p in td.p_support], normalized=True))
        elif n_dict:
            terms.append(replace(td, p_dict=[1.0 / n_dict] * n_dict, p_support=[0.0] * n_sup,
                                 normalized=True, fallback_used=True))
        else:
            terms.append(replace(td, p_support=[1.0 / n_sup] * n_sup, normalized=True, fallback_used=True))
    return TranslationDistribution(terms, dist.support_support_evaluations)


def _diagnostics(qc, i, td):
    rows = []
    for rank, (c, p) in enumerate(zip(qc.dict_candidates[i], td.p_dict), 1):
        rows.append({"candidate": " ".join(c), "list": DICTIONARY, "rank": rank, "prob": p})
    for s, p in zip(qc.support_candidates[i], td.p_support):
        row = {"candidate": s.term, "list": s.origin, "prob": p}
        if s.origin == EDIT:
            row["anchor"] = " ".join(s.anchor)
            row["distance"] = s.distance
        rows.append(row)
    return rows


def select_translations(dist, qc):
    """Pick the most probable candidate per term.

    Ties go to dictionary candidates over support candidates, then to the
    better dictionary rank, then to the lexicographically smaller form.
    """
    out = []
    for i, td in enumerate(dist.terms):
        term = qc.query_terms[i]
        diag = _diagnostics(qc, i, td)
        if td.untranslatable:
            logger.warning("term %r has no candidates, passed through", term)
            out.append(TermTranslation(term, (term,), UNTRANSLATABLE, 0.0, True, diag))
            continue
        if td.fallback_used:
            if qc.dict_candidates[i]:
                out.append(TermTranslation(term, qc.dict_candidates[i][0], DICTIONARY, td.p_dict[0], True, diag))
            else:
                first = qc.support_candidates[i][0]
                out.append(TermTranslation(term, (first.term,), TRANSLIT_FALLBACK, td.p_support[0], True, diag))
            continue
        options = [((-p, 0, rank, c), c, DICTIONARY, p)
                   for rank, (c, p) in enumerate(zip(qc.dict_candidates[i], td.p_dict))]
        options += [((-p, 1, 0, (s.term,)), (s.term,), SUPPORT if s.origin == EDIT else TRANSLITERATION, p)
                    for s, p in zip(qc.support_candidates[i], td.p_support)]
        _, chosen, source, p = min(options, key=lambda o: o[0])
        out.append(TermTranslation(term, chosen, source, p, False, diag))
    return TranslationResult(out)


def build_query_candidates(query_terms, dictionary, vocabulary, table=None, cap=DEFAULT_CAP):
    """Dictionary lookup per term; dictionary misses go to the transliterator
    and its variants become that term's support list."""
    qc = QueryCandidates.from_dictionary(query_terms, dictionary)
    for i, term in enumerate(qc.query_terms):
        if qc.dict_candidates[i] or table is None:
            continue
        oov = transliterate_oov(term, table, vocabulary, cap)
        qc.support_candidates[i] = [SupportCandidate(v, TRANSLITERATION) for v in oov.forms]
        qc.unverified[i] = oov.unverified
    return qc


def prepare_query(query, tokenizer, stopwords=frozenset()):
    terms = tokenize(query, tokenizer) if isinstance(query, str) else list(query)
    return [t for t in terms if t not in stopwords]


def translate_query(query, dictionary, index, table=None, config=MESCConfig(), finder=None):
    """Translate one query (a string or a list of source terms) end to end."""
    terms = prepare_query(query, index.tokenizer, config.stopwords)
    qc = build_query_candidates(terms, dictionary, index.term_ids, table, config.translit_cap)
    if finder is None:
        finder = index.neighbor_finder(config.neighbor_strategy)
    qc = extract_support_candidates(qc, index, min_support_stem_len=config.min_support_stem_len, finder=finder)
    dist = normalize(score_candidates(qc, index))
    return select_translations(dist, qc)
