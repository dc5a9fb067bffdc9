import random

import pytest

from mesc.baselines import StructuredQuery
from mesc.corpus_index import DocumentCollection, build_index
from mesc.retrieval import BM25Params, PRFParams, bm25_score, idf, prf_expand, retrieve, retrieve_with_feedback

from oracles import brute_bm25
from synth import random_docs, random_vocabulary

DOCS = {"d1": ["a", "b", "a"], "d2": ["b", "c", "d"], "d3": ["c", "c", "e"]}


def _index(docs):
    return build_index(DocumentCollection.from_documents(list(docs.items())), 2)


def test_hand_computed_bm25():
    idx = _index(DOCS)
    assert idx.avg_doc_length == 3
    # df(a) = 1, tf = 2, dl = avgdl so the length factor is 1
    expected = idf(3, 1) * 2 * 2.2 / (2 + 1.2)
    assert idf(3, 1) == pytest.approx(0.9808292530117262, abs=1e-12)
    assert bm25_score(idx, ["a"], "d1") == pytest.approx(expected, abs=1e-6)
    assert bm25_score(idx, ["a"], "d1") == pytest.approx(brute_bm25(DOCS, [["a"]], "d1"), abs=1e-6)


def test_unknown_term_and_doc():
    idx = _index(DOCS)
    assert bm25_score(idx, ["zzz"], "d1") == 0.0
    with pytest.raises(KeyError):
        bm25_score(idx, ["a"], "nope")


def test_structured_group_union_df():
    idx = _index(DOCS)
    sq = StructuredQuery([(("a",), ("b",))])
    # union df is 2: d1 and d2 contain a or b
    run = retrieve(idx, sq)
    assert run.doc_ids == ["d1", "d2"]
    assert dict(run.hits)["d1"] == pytest.approx(brute_bm25(DOCS, [["a", "b"]], "d1"), abs=1e-6)
    assert dict(run.hits)["d2"] == pytest.approx(brute_bm25(DOCS, [["a", "b"]], "d2"), abs=1e-6)


def test_retrieve_order_and_depth():
    idx = _index(DOCS)
    run = retrieve(idx, ["c"], k=1)
    assert run.doc_ids == ["d3"]
    scores = [s for _, s in retrieve(idx, ["b", "c"]).hits]
    assert scores == sorted(scores, reverse=True)


def test_ties_broken_by_doc_id():
    docs = {"z": ["a", "x"], "m": ["a", "y"], "b": ["a", "w"]}
    assert retrieve(_index(docs), ["a"]).doc_ids == ["b", "m", "z"]


def test_empty_query_warns(caplog):
    run = retrieve(_index(DOCS), [], query_id="q9")
    assert run.hits == []
    assert "q9" in caplog.text


def test_bad_depth():
    with pytest.raises(ValueError):
        retrieve(_index(DOCS), ["a"], k=0)


@pytest.mark.parametrize("seed", range(5))
def test_bm25_matches_brute_force(seed):
    rng = random.Random(seed)
    vocab = random_vocabulary(rng, 40)
    docs = dict(random_docs(rng, vocab, 25))
    idx = _index(docs)
    for _ in range(10):
        query = [rng.sample(vocab, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        sq = StructuredQuery([tuple((t,) for t in g) for g in query])
        got = dict(retrieve(idx, sq, k=1000).hits)
        for doc in docs:
            want = brute_bm25(docs, query, doc)
            assert got.get(doc, 0.0) == pytest.approx(want, abs=1e-9)


def test_prf_adds_new_terms_only():
    idx = _index(DOCS)
    initial = retrieve(idx, ["a"])
    expanded = prf_expand(idx, ["a"], initial, PRFParams(fb_docs=1, fb_terms=5, fb_alpha=0.5))
    assert expanded["a"] == 1
    assert expanded == {"a": 1, "b": 0.5}


def test_prf_zero_terms_is_identity():
    idx = _index(DOCS)
    plain = retrieve(idx, ["a", "c"])
    fb = retrieve_with_feedback(idx, ["a", "c"], prf=PRFParams(fb_terms=0))
    assert fb.hits == plain.hits


def test_prf_changes_ranking():
    idx = _index(DOCS)
    fb = retrieve_with_feedback(idx, ["a"], prf=PRFParams(fb_docs=1, fb_terms=5))
    # d2 only reachable through the feedback term b
    assert fb.doc_ids == ["d1", "d2"]


def test_prf_structured():
    idx = _index(DOCS)
    sq = StructuredQuery([(("a",),)])
    fb = retrieve_with_feedback(idx, sq, params=BM25Params(), prf=PRFParams(fb_docs=1, fb_terms=5))
    assert fb.doc_ids == ["d1", "d2"]
