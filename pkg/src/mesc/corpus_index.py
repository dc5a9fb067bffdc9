"""Monolingual corpus ingestion, windowed co-occurrence statistics and the
inverted index used for retrieval.

Index file layout (all integers little-endian)::

    offset  size  field
    0       8     magic  b"MESCIDX\\x00"
    8       4     format version (uint32), currently 1
    12      8     payload length in bytes (uint64)
    20      32    SHA-256 digest of the payload
    52      n     payload: UTF-8 JSON, keys sorted, no whitespace

The payload holds the tokenizer config, the window, the sorted vocabulary,
document ids and lengths, canonical pair triples ``[a, b, count]`` with
``a <= b`` sorted by ``(a, b)``, and postings ``[term_id, [[doc, tf], ...]]``.
"""

import hashlib
import json
import logging
import struct
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .edit_distance import NeighborFinder
from .exceptions import (
    ChecksumError,
    EmptyCorpusError,
    FormatError,
    IndexFileError,
    NoCooccurrenceMassError,
    VersionMismatchError,
)
from .text import TokenizerConfig, tokenize

logger = logging.getLogger(__name__)

MAGIC = b"MESCIDX\x00"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIQ32s")

DEFAULT_WINDOW = 8


@dataclass
class DocumentCollection:
    """Tokenized documents plus a vocabulary with dense ids (sorted order)."""

    documents: list
    vocabulary: dict = field(default_factory=dict)
    tokenizer: TokenizerConfig = TokenizerConfig()

    @classmethod
    def from_documents(cls, documents, tokenizer=TokenizerConfig()):
        docs = []
        seen = set()
        for doc_id, tokens in documents:
            if doc_id in seen:
                raise ValueError(f"duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            docs.append((doc_id, tuple(tokens)))
        terms = sorted({t for _, toks in docs for t in toks})
        return cls(docs, {t: i for i, t in enumerate(terms)}, tokenizer)

    @cached_property
    def terms(self):
        return sorted(self.vocabulary, key=self.vocabulary.__getitem__)

    def __len__(self):
        return len(self.documents)


def read_corpus_lines(lines, tokenizer=TokenizerConfig(), source="<corpus>"):
    docs = []
    seen = set()
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        doc_id, sep, text = line.partition("\t")
        doc_id = doc_id.strip()
        if not sep or not doc_id:
            raise FormatError("expected 'doc_id<TAB>text'", source, lineno)
        if doc_id in seen:
            raise FormatError(f"duplicate doc_id {doc_id!r}", source, lineno)
        seen.add(doc_id)
        tokens = tokenize(text, tokenizer)
        if not tokens:
            logger.warning("%s:%d: document %r has no tokens, skipped", source, lineno, doc_id)
            continue
        docs.append((doc_id, tokens))
    if not docs:
        raise EmptyCorpusError("empty corpus")
    return DocumentCollection.from_documents(docs, tokenizer)


def ingest_corpus(corpus_path, tokenizer_config=TokenizerConfig()):
    """Read a ``doc_id<TAB>text`` corpus file into a :class:`DocumentCollection`."""
    try:
        with open(corpus_path, encoding="utf-8") as fh:
            return read_corpus_lines(fh, tokenizer_config, source=str(corpus_path))
    except UnicodeDecodeError as exc:
        raise FormatError(f"not valid UTF-8: {exc}", str(corpus_path)) from exc


class CooccurrenceIndex:
    """Immutable windowed co-occurrence table plus inverted index.

    Pairs are stored canonically (``a <= b``) as sorted int64 keys
    ``a * V + b`` with parallel counts. Nothing here mutates after
    construction, so concurrent readers are safe.
    """

    def __init__(self, terms, window, pair_keys, pair_counts, doc_ids, doc_lengths,
                 postings, tokenizer=TokenizerConfig()):
        self.terms = list(terms)
        self.term_ids = {t: i for i, t in enumerate(self.terms)}
        self.window = int(window)
        self.tokenizer = tokenizer
        self._keys = np.asarray(pair_keys, dtype=np.int64)
        self._counts = np.asarray(pair_counts, dtype=np.int64)
        self.doc_ids = list(doc_ids)
        self.doc_length = dict(zip(self.doc_ids, (int(n) for n in doc_lengths)))
        self.doc_count = len(self.doc_ids)
        self.avg_doc_length = sum(self.doc_length.values()) / self.doc_count if self.doc_count else 0.0
        # term_id -> {doc_id: tf}
        self.postings = postings
        self.unigram_count = {tid: sum(p.values()) for tid, p in postings.items()}
        self.total_pair_mass = int(self._counts.sum())

        n = max(len(self.terms), 1)
        lo, hi = np.divmod(self._keys, n)
        self._transposed_order = np.argsort(hi * n + lo, kind="stable")
        self._transposed_keys = (hi * n + lo)[self._transposed_order]

    @property
    def vocabulary_size(self):
        return len(self.terms)

    @property
    def pair_total(self):
        """Number of distinct canonical pairs."""
        return int(self._keys.size)

    @cached_property
    def pair_count(self):
        """Canonical pair map ``{(a_id, b_id): count}``, a <= b."""
        n = max(len(self.terms), 1)
        return {(int(k // n), int(k % n)): int(c) for k, c in zip(self._keys, self._counts)}

    def count_ids(self, a, b):
        if a > b:
            a, b = b, a
        key = a * max(len(self.terms), 1) + b
        pos = np.searchsorted(self._keys, key)
        if pos < self._keys.size and self._keys[pos] == key:
            return int(self._counts[pos])
        return 0

    def count(self, a, b):
        ia = self.term_ids.get(a)
        ib = self.term_ids.get(b)
        if ia is None or ib is None:
            return 0
        return self.count_ids(ia, ib)

    def neighbor_ids(self, term_id):
        """Ids of all terms co-occurring with ``term_id`` (its row of the adjacency matrix)."""
        n = max(len(self.terms), 1)
        start, stop = np.searchsorted(self._keys, [term_id * n, (term_id + 1) * n])
        row = set((self._keys[start:stop] % n).tolist())
        start, stop = np.searchsorted(self._transposed_keys, [term_id * n, (term_id + 1) * n])
        row.update((self._transposed_keys[start:stop] % n).tolist())
        return row

    def neighbor_finder(self, strategy="length"):
        """Edit-neighbor finder over this vocabulary, built once per strategy."""
        finders = self.__dict__.setdefault("_finders", {})
        if strategy not in finders:
            finders[strategy] = NeighborFinder(self.terms, strategy)
        return finders[strategy]

    @cached_property
    def forward(self):
        """doc_id -> {term_id: tf}."""
        fwd = {d: {} for d in self.doc_ids}
        for tid in sorted(self.postings):
            for d, tf in self.postings[tid].items():
                fwd[d][tid] = tf
        return fwd

    def document_frequency(self, term):
        tid = self.term_ids.get(term)
        return len(self.postings.get(tid, ())) if tid is not None else 0

    def term_frequency(self, term, doc_id):
        tid = self.term_ids.get(term)
        if tid is None:
            return 0
        return self.postings.get(tid, {}).get(doc_id, 0)

    def doc_postings(self, term):
        tid = self.term_ids.get(term)
        if tid is None:
            return {}
        return self.postings.get(tid, {})

    def _payload(self):
        n = max(len(self.terms), 1)
        pairs = [[int(k // n), int(k % n), int(c)] for k, c in zip(self._keys, self._counts)]
        doc_index = {d: i for i, d in enumerate(self.doc_ids)}
        postings = [
            [tid, sorted([doc_index[d], tf] for d, tf in self.postings[tid].items())]
            for tid in sorted(self.postings)
        ]
        return {
            "tokenizer": self.tokenizer.to_dict(),
            "window": self.window,
            "vocabulary": self.terms,
            "doc_ids": self.doc_ids,
            "doc_lengths": [self.doc_length[d] for d in self.doc_ids],
            "pairs": pairs,
            "postings": postings,
        }

    def to_bytes(self):
        payload = json.dumps(self._payload(), ensure_ascii=False, sort_keys=True,
                             separators=(",", ":")).encode("utf-8")
        header = _HEADER.pack(MAGIC, FORMAT_VERSION, len(payload), hashlib.sha256(payload).digest())
        return header + payload

    @classmethod
    def from_bytes(cls, data):
        if len(data) < _HEADER.size:
            raise ChecksumError("index file truncated (incomplete header)")
        magic, version, length, digest = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise IndexFileError("not an index file (bad magic)")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(f"index format version {version}, expected {FORMAT_VERSION}")
        payload = data[_HEADER.size:]
        if len(payload) != length or hashlib.sha256(payload).digest() != digest:
            raise ChecksumError("index checksum mismatch (file truncated or corrupted)")
        obj = json.loads(payload.decode("utf-8"))
        terms = obj["vocabulary"]
        n = max(len(terms), 1)
        pairs = np.asarray(obj["pairs"], dtype=np.int64).reshape(-1, 3)
        doc_ids = obj["doc_ids"]
        postings = {tid: {doc_ids[d]: tf for d, tf in plist} for tid, plist in obj["postings"]}
        return cls(
            terms,
            obj["window"],
            pairs[:, 0] * n + pairs[:, 1],
            pairs[:, 2],
            doc_ids,
            obj["doc_lengths"],
            postings,
            TokenizerConfig(**obj["tokenizer"]),
        )


def _window_pair_keys(ids, window, n):
    """Canonical keys of every position pair (i, j), 0 < j - i <= window, in one document."""
    chunks = []
    for offset in range(1, min(window, ids.size - 1) + 1):
        left, right = ids[:-offset], ids[offset:]
        chunks.append(np.minimum(left, right) * n + np.maximum(left, right))
    return chunks


def build_index(collection, window=DEFAULT_WINDOW, batch_tokens=1_000_000):
    """Count co-occurrences within ``window`` positions inside each document.

    Documents are processed in batches; counts are summed, so the result
    does not depend on batching.
    """
    if int(window) < 1:
        raise ValueError("window must be >= 1")
    window = int(window)
    vocab = collection.vocabulary
    n = max(len(vocab), 1)

    merged_keys = np.empty(0, dtype=np.int64)
    merged_counts = np.empty(0, dtype=np.int64)
    pending, pending_size = [], 0
    postings = {}
    doc_ids, doc_lengths = [], []

    def flush():
        nonlocal merged_keys, merged_counts, pending, pending_size
        if not pending:
            return
        keys, counts = np.unique(np.concatenate(pending), return_counts=True)
        all_keys = np.concatenate([merged_keys, keys])
        all_counts = np.concatenate([merged_counts, counts])
        merged_keys, inverse = np.unique(all_keys, return_inverse=True)
        merged_counts = np.bincount(inverse, weights=all_counts).astype(np.int64)
        pending, pending_size = [], 0

    for doc_id, tokens in collection.documents:
        ids = np.fromiter((vocab[t] for t in tokens), dtype=np.int64, count=len(tokens))
        doc_ids.append(doc_id)
        doc_lengths.append(len(tokens))
        uniq, tfs = np.unique(ids, return_counts=True)
        for tid, tf in zip(uniq.tolist(), tfs.tolist()):
            postings.setdefault(tid, {})[doc_id] = tf
        chunks = _window_pair_keys(ids, window, n)
        pending.extend(chunks)
        pending_size += sum(c.size for c in chunks)
        if pending_size >= batch_tokens:
            flush()
    flush()

    return CooccurrenceIndex(collection.terms, window, merged_keys, merged_counts,
                             doc_ids, doc_lengths, postings, collection.tokenizer)


def cooccurs(index, a, b):
    return index.count(a, b) > 0


def joint_probability(index, a, b):
    """Normalized windowed co-occurrence count of ``a`` and ``b``; 0 for unseen pairs."""
    if index.total_pair_mass == 0:
        raise NoCooccurrenceMassError("no co-occurrence mass")
    return index.count(a, b) / index.total_pair_mass


def save_index(index, path):
    with open(path, "wb") as fh:
        fh.write(index.to_bytes())


def load_index(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IndexFileError(f"cannot read index {path}: {exc}") from exc
    return CooccurrenceIndex.from_bytes(data)
