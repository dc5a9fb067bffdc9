"""Input checks shared by the estimators and the command line."""

import numbers

from .corpus_index import CooccurrenceIndex, DocumentCollection
from .exceptions import EmptyCorpusError
from .text import TokenizerConfig, tokenize


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_non_negative_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)


def check_non_negative_float(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or value < 0:
        raise ValueError(f"{name} must be a non-negative number, got {value!r}")
    return float(value)


def check_range(value, name, low, high):
    value = check_non_negative_float(value, name)
    if not low <= value <= high:
        raise ValueError(f"{name} must lie in [{low}, {high}], got {value!r}")
    return value


def check_documents(X, tokenizer=TokenizerConfig()):
    """Coerce ``X`` to a :class:`DocumentCollection`.

    Accepts a collection, raw strings (ids become ``"0"``, ``"1"``, ...), or
    ``(doc_id, text)`` pairs where ``text`` may already be a token list.
    """
    if isinstance(X, DocumentCollection):
        return X
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of documents, got a single string")
    docs = []
    for pos, item in enumerate(X):
        if isinstance(item, str):
            doc_id, body = str(pos), item
        else:
            doc_id, body = item
        tokens = tokenize(body, tokenizer) if isinstance(body, str) else list(body)
        if tokens:
            docs.append((str(doc_id), tokens))
    if not docs:
        raise EmptyCorpusError("empty corpus")
    return DocumentCollection.from_documents(docs, tokenizer)


def check_index(X, tokenizer, window, build):
    """Return ``X`` if it is already an index, otherwise build one from documents."""
    if isinstance(X, CooccurrenceIndex):
        return X
    return build(check_documents(X, tokenizer), window)


def check_queries(queries):
    if isinstance(queries, str):
        raise TypeError("expected an iterable of queries, got a single string")
    return list(queries)
