import logging
import random
import statistics

import pytest

from mesc.exceptions import EmptyDictionaryError, FormatError
from mesc.lexicon import BilingualDictionary, dictionary_stats, load_dictionary, lookup, parse_dictionary_lines


def _write(tmp_path, text):
    path = tmp_path / "dict.tsv"
    path.write_text(text, encoding="utf-8")
    return path


def test_world_entry_ranked(tmp_path):
    d = load_dictionary(_write(tmp_path, "world\tjhân|giti|dniâ|âlm\n"))
    assert lookup(d, "world") == [("jhân",), ("giti",), ("dniâ",), ("âlm",)]


def test_cup_second_candidate(tmp_path):
    d = load_dictionary(_write(tmp_path, "cup\tfnjân|jâm|piâlh\n"))
    assert lookup(d, "cup")[1] == ("jâm",)


def test_empty_file_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        d = load_dictionary(_write(tmp_path, ""))
    assert len(d) == 0
    assert "no entries" in caplog.text


def test_oov_lookup_empty(tmp_path):
    d = load_dictionary(_write(tmp_path, "world\tjhân\n"))
    assert lookup(d, "galaxy") == []


def test_lookup_is_mutation_free():
    d = BilingualDictionary({"a": (("x",), ("y",))})
    first = lookup(d, "a")
    first.append(("z",))
    assert lookup(d, "a") == [("x",), ("y",)]


def test_multi_token_candidates_and_comments(tmp_path):
    d = load_dictionary(_write(tmp_path, "# header\nworld cup\tjâm jhâni|jâm\n"))
    assert lookup(d, "world cup") == [("jâm", "jhâni"), ("jâm",)]


def test_source_case_folded(tmp_path):
    d = load_dictionary(_write(tmp_path, "World\tJhân\n"))
    assert lookup(d, "world") == [("jhân",)]


def test_duplicate_source_appends(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        d = load_dictionary(_write(tmp_path, "a\tx|y\na\ty|z\n"))
    assert lookup(d, "a") == [("x",), ("y",), ("z",)]
    assert "duplicate" in caplog.text


@pytest.mark.parametrize("text,line", [("a\tx\nbroken line\n", 2), ("a\tx||y\n", 1), ("\tx\n", 1)])
def test_malformed_line_number(tmp_path, text, line):
    with pytest.raises(FormatError) as err:
        load_dictionary(_write(tmp_path, text))
    assert err.value.line_number == line


def test_rank_stable_across_loads(tmp_path):
    path = _write(tmp_path, "a\tq|w|e|r|t\nb\tz|x\n")
    assert load_dictionary(path).entries == load_dictionary(path).entries


def test_stats_two_entries():
    stats = dictionary_stats(BilingualDictionary({"a": (("x",), ("y",)), "b": (("z",),)}))
    assert stats.scale == 1.5
    assert stats.variance == 0.25


def test_stats_uniform_zero_variance():
    d = BilingualDictionary({k: (("x",), ("y",), ("z",)) for k in "abcd"})
    assert dictionary_stats(d).variance == 0


def test_stats_generated_counts():
    rng = random.Random(4)
    counts = [rng.randint(1, 9) for _ in range(300)]
    lines = [f"s{i}\t" + "|".join(f"c{j}" for j in range(n)) for i, n in enumerate(counts)]
    stats = dictionary_stats(parse_dictionary_lines(lines))
    mean = sum(counts) / len(counts)
    assert stats.scale == pytest.approx(mean, abs=1e-12)
    assert stats.variance == pytest.approx(sum((c - mean) ** 2 for c in counts) / len(counts), abs=1e-12)
    assert stats.variance == pytest.approx(statistics.pvariance(counts))


def test_stats_empty():
    with pytest.raises(EmptyDictionaryError):
        dictionary_stats(BilingualDictionary())
