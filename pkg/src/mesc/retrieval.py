"""Okapi BM25 retrieval over a :class:`CooccurrenceIndex`, with synonym-group
scoring for structured queries and pseudo-relevance feedback."""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

from .baselines import StructuredQuery

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BM25Params:
    k1: float = 1.2
    b: float = 0.75


@dataclass(frozen=True)
class PRFParams:
    fb_docs: int = 10
    fb_terms: int = 20
    fb_alpha: float = 0.5


@dataclass
class RankedList:
    query_id: str
    hits: list = field(default_factory=list)
    k: int = None
    run_tag: str = None

    @property
    def doc_ids(self):
        return [d for d, _ in self.hits]

    def __len__(self):
        return len(self.hits)


def idf(n_docs, df):
    return math.log((n_docs - df + 0.5) / (df + 0.5) + 1.0)


def term_weight(tf, idf_value, doc_len, avgdl, params=BM25Params()):
    if tf == 0:
        return 0.0
    norm = params.k1 * (1.0 - params.b + params.b * doc_len / avgdl)
    return idf_value * tf * (params.k1 + 1.0) / (tf + norm)


def _as_weights(query):
    if isinstance(query, dict):
        return dict(query)
    return dict(Counter(query))


def _groups(query):
    """Normalize a query to ``[(member_terms, weight), ...]``."""
    if isinstance(query, StructuredQuery):
        return [(query.group_terms(g), w) for g, w in enumerate(query.weights)]
    return [((t,), w) for t, w in _as_weights(query).items()]


def _group_postings(index, members):
    """Summed tf per document over the group's members (union semantics)."""
    tfs = {}
    for term in members:
        for doc, tf in index.doc_postings(term).items():
            tfs[doc] = tfs.get(doc, 0) + tf
    return tfs


def bm25_score(index, query_terms, doc_id, params=BM25Params()):
    """BM25 score of one document for a bag-of-words query.

    ``query_terms`` is a list (repeats count) or a ``{term: weight}`` map.
    """
    if doc_id not in index.doc_length:
        raise KeyError(f"unknown doc_id {doc_id!r}")
    dl = index.doc_length[doc_id]
    score = 0.0
    for members, weight in _groups(query_terms):
        postings = _group_postings(index, members)
        tf = postings.get(doc_id, 0)
        if tf:
            score += weight * term_weight(tf, idf(index.doc_count, len(postings)), dl, index.avg_doc_length, params)
    return score


def retrieve(index, query, k=1000, params=BM25Params(), query_id=""):
    """Top-``k`` documents for a bag-of-words or structured query.

    A synonym group is scored as one pseudo-term whose tf is the sum of its
    members' tfs and whose df counts documents containing any member.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    groups = _groups(query)
    if not groups:
        logger.warning("query %r is empty", query_id)
        return RankedList(query_id, [], k)
    scores = {}
    for members, weight in groups:
        postings = _group_postings(index, members)
        if not postings:
            continue
        w_idf = idf(index.doc_count, len(postings))
        for doc in sorted(postings):
            w = weight * term_weight(postings[doc], w_idf, index.doc_length[doc], index.avg_doc_length, params)
            scores[doc] = scores.get(doc, 0.0) + w
    hits = sorted(scores.items(), key=lambda h: (-h[1], h[0]))[:k]
    return RankedList(query_id, hits, k)


def feedback_terms(index, doc_ids):
    """Terms of ``doc_ids`` ranked by summed tf*idf, best first (ties by term)."""
    weight = {}
    for doc in doc_ids:
        for tid, tf in index.forward[doc].items():
            weight[tid] = weight.get(tid, 0) + tf
    ranked = [(index.terms[tid], tf_sum * idf(index.doc_count, len(index.postings[tid])))
              for tid, tf_sum in weight.items()]
    ranked.sort(key=lambda x: (-x[1], x[0]))
    return ranked


def prf_expand(index, original_query, initial, params=PRFParams()):
    """Append the best ``fb_terms`` new terms from the top ``fb_docs`` documents
    of ``initial``, each weighted ``fb_alpha``. Original terms keep their weight."""
    if params.fb_terms <= 0 or params.fb_docs <= 0 or not initial.hits:
        return original_query if isinstance(original_query, StructuredQuery) else _as_weights(original_query)
    top = [d for d, _ in initial.hits[:params.fb_docs]]
    if isinstance(original_query, StructuredQuery):
        present = {t for g in range(len(original_query)) for t in original_query.group_terms(g)}
    else:
        present = set(_as_weights(original_query))
    new_terms = [t for t, _ in feedback_terms(index, top) if t not in present][:params.fb_terms]
    if isinstance(original_query, StructuredQuery):
        return StructuredQuery(original_query.groups + [((t,),) for t in new_terms],
                               list(original_query.weights) + [params.fb_alpha] * len(new_terms))
    expanded = _as_weights(original_query)
    for t in new_terms:
        expanded[t] = params.fb_alpha
    return expanded


def retrieve_with_feedback(index, query, k=1000, params=BM25Params(), prf=PRFParams(), query_id=""):
    initial = retrieve(index, query, k, params, query_id)
    if not initial.hits:
        return initial
    return retrieve(index, prf_expand(index, query, initial, prf), k, params, query_id)
