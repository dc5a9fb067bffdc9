"""Unit-cost Levenshtein distance and vocabulary neighbor search.

Strings are compared code point by code point; callers are expected to pass
NFC-normalized text (the tokenizer does).
"""

from collections import defaultdict
from dataclasses import dataclass

MAX_NEIGHBOR_DISTANCE = 2


@dataclass(frozen=True)
class NeighborQueryResult:
    term: str
    distance: int

    def sort_key(self):
        return (self.distance, self.term)


def med(s, t):
    """Levenshtein distance with unit weights for insertion, deletion and substitution.

    >>> med("kitten", "sitting")
    3
    """
    if len(s) < len(t):
        s, t = t, s
    if not t:
        return len(s)
    prev = list(range(len(t) + 1))
    for i, cs in enumerate(s, 1):
        cur = [i]
        for j, ct in enumerate(t, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cs != ct)))
        prev = cur
    return prev[-1]


def bounded_med(s, t, k):
    """Return ``med(s, t)`` if it is at most ``k``, otherwise ``k + 1``.

    Only the diagonal band of width ``2k + 1`` is filled and the scan stops
    as soon as a whole row exceeds ``k``, so the work is O(k * min(|s|, |t|)).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(s) < len(t):
        s, t = t, s
    m, n = len(s), len(t)
    if m - n > k:
        return k + 1
    if n == 0:
        return m
    over = k + 1
    # prev[j] holds D[i-1][j] for j in the band; cells outside the band are "over"
    prev = [j if j <= k else over for j in range(n + 1)]
    for i in range(1, m + 1):
        lo = max(1, i - k)
        hi = min(n, i + k)
        cur = [over] * (n + 1)
        cur[0] = i if i <= k else over
        cs = s[i - 1]
        row_min = cur[0]
        for j in range(lo, hi + 1):
            v = prev[j - 1] + (cs != t[j - 1])
            if prev[j] + 1 < v:
                v = prev[j] + 1
            if cur[j - 1] + 1 < v:
                v = cur[j - 1] + 1
            if v > over:
                v = over
            cur[j] = v
            if v < row_min:
                row_min = v
        if row_min > k:
            return over
        prev = cur
    return min(prev[n], over)


def within_distance(s, t, k):
    return bounded_med(s, t, k) <= k


def _deletions(term, depth):
    out = {term}
    frontier = {term}
    for _ in range(depth):
        nxt = set()
        for w in frontier:
            for i in range(len(w)):
                nxt.add(w[:i] + w[i + 1:])
        out |= nxt
        frontier = nxt
    return out


class NeighborFinder:
    """Finds all vocabulary terms at edit distance 1 or 2 from a query string.

    ``strategy="length"`` scans only the length buckets within two of the
    query and verifies each candidate with the banded checker.
    ``strategy="deletion"`` precomputes a symmetric deletion index (every
    term's deletions of up to two characters), which is much faster on large
    vocabularies at the cost of memory. Both return identical results.
    """

    def __init__(self, vocabulary, strategy="length", max_distance=MAX_NEIGHBOR_DISTANCE):
        if strategy not in ("length", "deletion"):
            raise ValueError(f"unknown neighbor strategy {strategy!r}")
        self.strategy = strategy
        self.max_distance = max_distance
        self.vocabulary = sorted(set(vocabulary))
        self._by_length = defaultdict(list)
        for term in self.vocabulary:
            self._by_length[len(term)].append(term)
        self._deletion_index = None
        if strategy == "deletion":
            index = defaultdict(set)
            for term in self.vocabulary:
                for variant in _deletions(term, max_distance):
                    index[variant].add(term)
            self._deletion_index = dict(index)

    def _candidates(self, query):
        if self._deletion_index is not None:
            found = set()
            for variant in _deletions(query, self.max_distance):
                found |= self._deletion_index.get(variant, set())
            return found
        out = []
        for length in range(len(query) - self.max_distance, len(query) + self.max_distance + 1):
            out.extend(self._by_length.get(length, ()))
        return out

    def __call__(self, query):
        k = self.max_distance
        results = []
        for term in self._candidates(query):
            d = bounded_med(query, term, k)
            if 1 <= d <= k:
                results.append(NeighborQueryResult(term, d))
        results.sort(key=NeighborQueryResult.sort_key)
        return results


def neighbors(vocabulary, query, strategy="length"):
    """All ``v`` in ``vocabulary`` with ``1 <= med(query, v) <= 2``, ordered by (distance, term)."""
    return NeighborFinder(vocabulary, strategy)(query)


__all__ = [
    "NeighborFinder",
    "NeighborQueryResult",
    "bounded_med",
    "med",
    "neighbors",
    "within_distance",
]

