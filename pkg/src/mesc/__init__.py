"""Dictionary-based cross-lingual query translation with minimum-edit support
candidates, plus BM25 retrieval and TREC-style evaluation."""

__version__ = "0.1.0"

from .baselines import StructuredQuery, pirkola_structured, top_n_translate
from .corpus_index import (
    CooccurrenceIndex,
    DocumentCollection,
    build_index,
    cooccurs,
    ingest_corpus,
    joint_probability,
    load_index,
    save_index,
)
from .edit_distance import NeighborFinder, med, neighbors, within_distance
from .estimators import BM25Retriever, MESCTranslator, StructuredQueryTranslator, TopNTranslator
from .evaluation import Qrels, average_precision, evaluate, interpolated_pr, precision_at_k
from .lexicon import BilingualDictionary, dictionary_stats, load_dictionary
from .model import MESCConfig, QueryCandidates, TranslationResult, translate_query
from .retrieval import BM25Params, PRFParams, RankedList, bm25_score, prf_expand, retrieve
from .text import TokenizerConfig, tokenize
from .translit import TransliterationTable, generate_variants, load_translit_rules, transliterate_oov
