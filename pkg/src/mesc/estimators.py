"""scikit-learn compatible wrappers.

``fit`` takes a target-language corpus (documents, a
:class:`DocumentCollection`, or a prebuilt :class:`CooccurrenceIndex`);
``transform`` maps source-language queries to translations and ``predict``
maps queries to ranked lists. Hyperparameters follow the usual
``get_params``/``set_params`` contract, so the translators can be swapped
inside a :class:`sklearn.pipeline.Pipeline`.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .baselines import StructuredQuery, flatten, pirkola_structured, top_n_translate
from .corpus_index import DEFAULT_WINDOW, build_index
from .lexicon import BilingualDictionary
from .model import DEFAULT_MIN_SUPPORT_STEM_LEN, MESCConfig, prepare_query, translate_query
from .retrieval import BM25Params, PRFParams, retrieve, retrieve_with_feedback
from .text import TokenizerConfig
from .translit import DEFAULT_CAP
from .validation import (
    check_index,
    check_non_negative_float,
    check_non_negative_int,
    check_positive_int,
    check_queries,
    check_range,
)


class _CorpusFitMixin:
    def _tokenizer(self):
        return TokenizerConfig(case_fold=self.case_fold, strip_punct=self.strip_punct)

    def _fit_index(self, X):
        check_positive_int(self.window, "window")
        self.index_ = check_index(X, self._tokenizer(), self.window, build_index)
        self.n_documents_ = self.index_.doc_count
        self.vocabulary_size_ = self.index_.vocabulary_size
        return self

    def _query_terms(self, query):
        stopwords = frozenset(getattr(self, "stopwords", None) or ())
        return prepare_query(query, self.index_.tokenizer, stopwords)

    def _dictionary(self):
        if self.dictionary is None:
            return BilingualDictionary()
        return self.dictionary


class MESCTranslator(_CorpusFitMixin, TransformerMixin, BaseEstimator):
    """Query translator selecting one candidate per term by co-occurrence evidence.

    Parameters
    ----------
    dictionary : BilingualDictionary
    translit_table : TransliterationTable, optional
        Used for terms missing from the dictionary.
    window : int
        Co-occurrence window in tokens.
    min_support_stem_len : int
        Dictionary tokens shorter than this do not seed edit neighbors.
    """

    def __init__(self, dictionary=None, translit_table=None, window=DEFAULT_WINDOW,
                 case_fold=True, strip_punct=True,
                 min_support_stem_len=DEFAULT_MIN_SUPPORT_STEM_LEN, translit_cap=DEFAULT_CAP,
                 stopwords=None, neighbor_strategy="length"):
        self.dictionary = dictionary
        self.translit_table = translit_table
        self.window = window
        self.case_fold = case_fold
        self.strip_punct = strip_punct
        self.min_support_stem_len = min_support_stem_len
        self.translit_cap = translit_cap
        self.stopwords = stopwords
        self.neighbor_strategy = neighbor_strategy

    def fit(self, X, y=None):
        check_non_negative_int(self.min_support_stem_len, "min_support_stem_len")
        check_positive_int(self.translit_cap, "translit_cap")
        if self.neighbor_strategy not in ("length", "deletion"):
            raise ValueError(f"unknown neighbor_strategy {self.neighbor_strategy!r}")
        self._fit_index(X)
        self.config_ = MESCConfig(self.min_support_stem_len, self.translit_cap,
                                  frozenset(self.stopwords or ()), self.neighbor_strategy)
        return self

    def translate(self, queries):
        """Full :class:`TranslationResult` per query."""
        check_is_fitted(self, "index_")
        return [
            translate_query(self._query_terms(q), self._dictionary(), self.index_,
                            self.translit_table, self.config_)
            for q in check_queries(queries)
        ]

    def transform(self, queries):
        return [r.text for r in self.translate(queries)]


class TopNTranslator(_CorpusFitMixin, TransformerMixin, BaseEstimator):
    """Keeps the ``n`` best-ranked dictionary candidates of every term."""

    def __init__(self, dictionary=None, n=1, translit_table=None, window=DEFAULT_WINDOW,
                 case_fold=True, strip_punct=True, translit_cap=DEFAULT_CAP, stopwords=None):
        self.dictionary = dictionary
        self.n = n
        self.translit_table = translit_table
        self.window = window
        self.case_fold = case_fold
        self.strip_punct = strip_punct
        self.translit_cap = translit_cap
        self.stopwords = stopwords

    def fit(self, X, y=None):
        check_positive_int(self.n, "n")
        return self._fit_index(X)

    def translate(self, queries):
        check_is_fitted(self, "index_")
        return [
            top_n_translate(self._query_terms(q), self._dictionary(), self.n, self.translit_table,
                            self.index_.term_ids, self.translit_cap)
            for q in check_queries(queries)
        ]

    def transform(self, queries):
        return [" ".join(flatten(t)) for t in self.translate(queries)]


class StructuredQueryTranslator(_CorpusFitMixin, TransformerMixin, BaseEstimator):
    """Groups all candidates of a term into one synonym set."""

    def __init__(self, dictionary=None, translit_table=None, window=DEFAULT_WINDOW,
                 case_fold=True, strip_punct=True, translit_cap=DEFAULT_CAP, stopwords=None):
        self.dictionary = dictionary
        self.translit_table = translit_table
        self.window = window
        self.case_fold = case_fold
        self.strip_punct = strip_punct
        self.translit_cap = translit_cap
        self.stopwords = stopwords

    def fit(self, X, y=None):
        return self._fit_index(X)

    def transform(self, queries):
        check_is_fitted(self, "index_")
        return [
            pirkola_structured(self._query_terms(q), self._dictionary(), self.translit_table,
                               self.index_.term_ids, self.translit_cap)
            for q in check_queries(queries)
        ]


class BM25Retriever(_CorpusFitMixin, BaseEstimator):
    """Okapi BM25 ranker; ``predict`` returns one :class:`RankedList` per query.

    Queries may be strings, token lists, ``{term: weight}`` maps or
    :class:`StructuredQuery` objects.
    """

    def __init__(self, k1=1.2, b=0.75, depth=1000, prf=False, fb_docs=10, fb_terms=20,
                 fb_alpha=0.5, window=DEFAULT_WINDOW, case_fold=True, strip_punct=True):
        self.k1 = k1
        self.b = b
        self.depth = depth
        self.prf = prf
        self.fb_docs = fb_docs
        self.fb_terms = fb_terms
        self.fb_alpha = fb_alpha
        self.window = window
        self.case_fold = case_fold
        self.strip_punct = strip_punct

    def fit(self, X, y=None):
        check_non_negative_float(self.k1, "k1")
        check_range(self.b, "b", 0.0, 1.0)
        check_positive_int(self.depth, "depth")
        check_non_negative_int(self.fb_docs, "fb_docs")
        check_non_negative_int(self.fb_terms, "fb_terms")
        check_non_negative_float(self.fb_alpha, "fb_alpha")
        return self._fit_index(X)

    def _one(self, query, query_id):
        if isinstance(query, str):
            query = self._query_terms(query)
        params = BM25Params(self.k1, self.b)
        if self.prf:
            return retrieve_with_feedback(self.index_, query, self.depth, params,
                                          PRFParams(self.fb_docs, self.fb_terms, self.fb_alpha), query_id)
        return retrieve(self.index_, query, self.depth, params, query_id)

    def predict(self, queries, query_ids=None):
        check_is_fitted(self, "index_")
        queries = check_queries(queries)
        if query_ids is None:
            query_ids = [str(i) for i in range(len(queries))]
        return [self._one(q, qid) for q, qid in zip(queries, query_ids)]


__all__ = [
    "BM25Retriever",
    "MESCTranslator",
    "StructuredQuery",
    "StructuredQueryTranslator",
    "TopNTranslator",
]
