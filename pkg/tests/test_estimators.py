import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from mesc.baselines import StructuredQuery
from mesc.estimators import BM25Retriever, MESCTranslator, StructuredQueryTranslator, TopNTranslator
from mesc.lexicon import load_dictionary
from mesc.translit import load_translit_rules

from conftest import FIXTURES


@pytest.fixture(scope="module")
def corpus():
    with open(FIXTURES / "corpus.tsv", encoding="utf-8") as fh:
        return [tuple(line.rstrip("\n").split("\t")) for line in fh]


@pytest.fixture(scope="module")
def dictionary():
    return load_dictionary(FIXTURES / "dictionary.tsv")


def test_get_params_and_clone(dictionary):
    est = MESCTranslator(dictionary=dictionary, window=4, min_support_stem_len=2)
    params = est.get_params()
    assert params["window"] == 4 and params["min_support_stem_len"] == 2
    twin = clone(est)
    assert twin.get_params()["window"] == 4
    assert not hasattr(twin, "index_")


def test_not_fitted(dictionary):
    with pytest.raises(NotFittedError):
        MESCTranslator(dictionary=dictionary).transform(["world cup"])


def test_mesc_transform_matches_cli(corpus, dictionary):
    table = load_translit_rules(FIXTURES / "translit.txt")
    est = MESCTranslator(dictionary=dictionary, translit_table=table, window=4,
                         stopwords={"the", "of", "in"}).fit(corpus)
    golden = (FIXTURES / "golden" / "mesc.queries").read_text(encoding="utf-8").splitlines()
    topics = [line.split("\t")[1] for line in (FIXTURES / "topics.tsv").read_text(encoding="utf-8").splitlines()]
    assert est.transform(topics) == [g.split("\t")[1] for g in golden]
    assert est.n_documents_ == 14


def test_top_n_and_structured(corpus, dictionary):
    assert TopNTranslator(dictionary=dictionary, n=1).fit(corpus).transform(["world cup"]) == ["jhân fnjân"]
    sq = StructuredQueryTranslator(dictionary=dictionary).fit(corpus).transform(["oil"])[0]
    assert isinstance(sq, StructuredQuery)
    assert sq.to_line() == "{nft|rughn}"


def test_invalid_params(corpus, dictionary):
    with pytest.raises(ValueError):
        TopNTranslator(dictionary=dictionary, n=0).fit(corpus)
    with pytest.raises(ValueError):
        BM25Retriever(b=1.5).fit(corpus)
    with pytest.raises(ValueError):
        MESCTranslator(neighbor_strategy="fast").fit(corpus)
    with pytest.raises(TypeError):
        MESCTranslator().fit(corpus).transform("a single string")


def test_retriever_predict(corpus):
    ret = BM25Retriever(depth=3).fit(corpus)
    runs = ret.predict(["qimt nft", ["jng"]], query_ids=["a", "b"])
    assert runs[0].query_id == "a"
    assert runs[0].doc_ids[:2] == ["d06", "d05"] or runs[0].doc_ids[:2] == ["d05", "d06"]
    assert set(runs[1].doc_ids) == {"d07", "d09"}
    assert len(runs[0]) <= 3


def test_pipeline_translate_then_retrieve(corpus, dictionary):
    translator = MESCTranslator(dictionary=dictionary, window=4).fit(corpus)
    retriever = BM25Retriever(depth=5).fit(translator.index_)
    pipe = Pipeline([("translate", translator)])
    translated = pipe.transform(["iran football coaches"])
    assert translated == ["irân futbâl mrbiân"]
    assert retriever.predict(translated)[0].doc_ids[:2] in (["d03", "d04"], ["d04", "d03"])
