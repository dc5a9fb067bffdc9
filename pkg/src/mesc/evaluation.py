"""TREC-style effectiveness measures and run/qrels file I/O."""

import logging
import statistics
from dataclasses import dataclass, field

from .exceptions import FormatError
from .retrieval import RankedList

logger = logging.getLogger(__name__)

RECALL_LEVELS = tuple(i / 10 for i in range(11))


@dataclass
class Qrels:
    judgments: dict = field(default_factory=dict)

    def relevant(self, query_id):
        by_query = self.__dict__.get("_by_query")
        if by_query is None:
            by_query = {}
            for (q, d), g in self.judgments.items():
                rel = by_query.setdefault(q, set())
                if g > 0:
                    rel.add(d)
            self.__dict__["_by_query"] = by_query
        return set(by_query.get(query_id, ()))

    @property
    def query_ids(self):
        return list(dict.fromkeys(q for q, _ in self.judgments))


@dataclass
class EvalReport:
    per_query: dict
    map: float
    p5: float
    p10: float
    interpolated: list
    excluded: list = field(default_factory=list)

    def rows(self):
        for qid, m in self.per_query.items():
            yield "map", qid, m["map"]
            yield "P_5", qid, m["P_5"]
            yield "P_10", qid, m["P_10"]
        yield "num_q", "all", len(self.per_query)
        yield "map", "all", self.map
        yield "P_5", "all", self.p5
        yield "P_10", "all", self.p10
        for level, p in zip(RECALL_LEVELS, self.interpolated):
            yield f"iprec_at_recall_{level:.2f}", "all", p

    @staticmethod
    def _fmt(value):
        return str(value) if isinstance(value, int) else f"{value:.4f}"

    def to_text(self):
        return "".join(f"{m:<24}{q:<12}{self._fmt(v)}\n" for m, q, v in self.rows())

    def to_tsv(self):
        return "".join(f"{m}\t{q}\t{self._fmt(v)}\n" for m, q, v in self.rows())


def _relevant_set(qrels, query_id):
    return qrels if isinstance(qrels, (set, frozenset)) else qrels.relevant(query_id)


def average_precision(run, qrels, query_id=None):
    relevant = _relevant_set(qrels, query_id or run.query_id)
    if not relevant:
        raise ValueError(f"query {query_id or run.query_id!r} has no relevant documents")
    found, total = 0, 0.0
    for rank, doc in enumerate(run.doc_ids, 1):
        if doc in relevant:
            found += 1
            total += found / rank
    return total / len(relevant)


def precision_at_k(run, qrels, query_id=None, k=10):
    if k < 1:
        raise ValueError("k must be >= 1")
    relevant = _relevant_set(qrels, query_id or run.query_id)
    return sum(1 for doc in run.doc_ids[:k] if doc in relevant) / k


def interpolated_pr(run, qrels, query_id=None):
    """Precision at recall 0.0, 0.1, ..., 1.0, each the best precision at any
    recall at or above that level (0 when the level is never reached)."""
    relevant = _relevant_set(qrels, query_id or run.query_id)
    if not relevant:
        raise ValueError(f"query {query_id or run.query_id!r} has no relevant documents")
    n_rel = len(relevant)
    points = []
    found = 0
    for rank, doc in enumerate(run.doc_ids, 1):
        if doc in relevant:
            found += 1
        points.append((found, found / rank))
    # running max of precision from the deepest rank upward
    best = 0.0
    suffix_best = []
    for found, precision in reversed(points):
        best = max(best, precision)
        suffix_best.append((found, best))
    suffix_best.reverse()
    out = []
    for i in range(len(RECALL_LEVELS)):
        # recall found/n_rel >= i/10, compared exactly in integers
        out.append(next((p for f, p in suffix_best if f * 10 >= i * n_rel), 0.0))
    return out


def evaluate(run, qrels):
    """Per-query and aggregate measures over every qrels query with a relevant
    document; queries missing from ``run`` score zero."""
    per_query, curves, excluded = {}, [], []
    for qid in qrels.query_ids:
        relevant = qrels.relevant(qid)
        if not relevant:
            logger.warning("query %s has no relevant documents, excluded", qid)
            excluded.append(qid)
            continue
        ranked = run.get(qid) or RankedList(qid, [])
        per_query[qid] = {
            "map": average_precision(ranked, relevant),
            "P_5": precision_at_k(ranked, relevant, k=5),
            "P_10": precision_at_k(ranked, relevant, k=10),
        }
        curves.append(interpolated_pr(ranked, relevant))
    if not per_query:
        return EvalReport({}, 0.0, 0.0, 0.0, [0.0] * len(RECALL_LEVELS), excluded)
    mean = lambda key: statistics.fmean(m[key] for m in per_query.values())  # noqa: E731
    curve = [statistics.fmean(c[i] for c in curves) for i in range(len(RECALL_LEVELS))]
    return EvalReport(per_query, mean("map"), mean("P_5"), mean("P_10"), curve, excluded)


def format_run_line(query_id, doc_id, rank, score, run_tag):
    return f"{query_id} Q0 {doc_id} {rank} {score:.6f} {run_tag}\n"


def write_run(run, path, run_tag=None):
    """Write ``{query_id: RankedList}`` in TREC format, queries in dict order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for qid, ranked in run.items():
            tag = run_tag or ranked.run_tag or "mesc"
            for rank, (doc, score) in enumerate(ranked.hits, 1):
                fh.write(format_run_line(qid, doc, rank, score, tag))


def read_run(path):
    rows = {}
    tags = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 6:
                raise FormatError("expected 'query_id Q0 doc_id rank score run_tag'", path, lineno)
            qid, _, doc, rank, score, tag = parts
            try:
                rows.setdefault(qid, []).append((int(rank), doc, float(score)))
            except ValueError as exc:
                raise FormatError(f"bad rank or score: {exc}", path, lineno) from exc
            tags.setdefault(qid, tag)
    run = {}
    for qid, entries in rows.items():
        entries.sort(key=lambda e: e[0])
        scores = [s for _, _, s in entries]
        ranks = [r for r, _, _ in entries]
        if any(a < b for a, b in zip(scores, scores[1:])) or ranks != list(range(1, len(ranks) + 1)):
            logger.warning("%s: ranks of query %s disagree with scores, re-ranked by score", path, qid)
            entries.sort(key=lambda e: (-e[2], e[1]))
        docs = [d for _, d, _ in entries]
        if len(set(docs)) != len(docs):
            raise FormatError(f"duplicate doc_id in query {qid}", path)
        run[qid] = RankedList(qid, [(d, s) for _, d, s in entries], len(entries), tags[qid])
    return run


def read_qrels(path):
    judgments = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 4:
                raise FormatError("expected 'query_id 0 doc_id grade'", path, lineno)
            qid, _, doc, grade = parts
            try:
                grade = int(grade)
            except ValueError as exc:
                raise FormatError(f"bad relevance grade {grade!r}", path, lineno) from exc
            if grade < 0:
                raise FormatError("relevance grade must be >= 0", path, lineno)
            if (qid, doc) in judgments:
                raise FormatError(f"duplicate judgment for ({qid}, {doc})", path, lineno)
            judgments[(qid, doc)] = grade
    return Qrels(judgments)
