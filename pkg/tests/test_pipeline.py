from __future__ import annotations

import random

import pytest

import util
from anxarc.pipeline import FAMILIES, ScanResult, scan_corpus
from anxarc.slicer import PRONOUNS, Tense


def write_corpus(tmp_path, lines, name="corpus.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture(scope="module")
def random_corpus(tmp_path_factory, lexicon, tables):
    tmp = tmp_path_factory.mktemp("pipe")
    rng = random.Random(2024)
    path = write_corpus(tmp, util.random_corpus_lines(rng, 1500))
    oracle = util.brute_force_recount(path, lexicon, tables)
    return path, oracle


def assert_matches_oracle(res: ScanResult, oracle: dict):
    assert util.counters_of(res.overall) == oracle["overall"]
    assert util.counters_of(res.pronoun_overall) == oracle["pronoun_overall"]
    for h in range(24):
        assert util.counters_of(res.hours[h]) == oracle["hour"][h], f"hour {h}"
    for d in range(7):
        assert util.counters_of(res.weekdays[d]) == oracle["weekday"][d], f"weekday {d}"
    for t in Tense:
        assert util.counters_of(res.tenses[t]) == oracle["tense"][t.value], f"tense {t}"
    for p in PRONOUNS:
        assert util.counters_of(res.pronouns[p]) == oracle["pronoun"][p], f"pronoun {p}"
    assert res.n_records == oracle["n_records"]
    assert res.n_empty_skips == oracle["n_empty"]
    assert res.n_tz_skips == oracle["n_tz"]


def test_scan_matches_brute_force(random_corpus, lexicon):
    path, oracle = random_corpus
    res = scan_corpus(path, lexicon=lexicon, families=FAMILIES)
    assert_matches_oracle(res, oracle)


def test_scan_parallel_matches_brute_force(random_corpus, lexicon):
    path, oracle = random_corpus
    res = scan_corpus(path, lexicon=lexicon, families=FAMILIES, workers=4, chunk_lines=128)
    assert_matches_oracle(res, oracle)


def test_worker_counts_agree_exactly(random_corpus, lexicon):
    path, _ = random_corpus
    results = [
        scan_corpus(path, lexicon=lexicon, families=FAMILIES, workers=w, chunk_lines=256)
        for w in (1, 2, 4)
    ]
    base = results[0]
    for other in results[1:]:
        assert other.overall.sample.values == base.overall.sample.values
        for h in range(24):
            assert other.hours[h].sample.values == base.hours[h].sample.values
        assert util.counters_of(other.overall) == util.counters_of(base.overall)


def test_families_limit_work(random_corpus, lexicon):
    path, oracle = random_corpus
    res = scan_corpus(path, lexicon=lexicon, families=("hour",))
    assert res.tenses == {} and res.pronouns == {} and res.weekdays == {}
    assert util.counters_of(res.overall) == oracle["overall"]
    for h in range(24):
        assert util.counters_of(res.hours[h]) == oracle["hour"][h]


def test_tz_skips_exclude_time_bins_only(tmp_path, lexicon):
    lines = [
        '{"id":"1","text":"calm000 anx000","timestamp_utc":"2020-01-01T05:00:00Z","timezone":"Mars/Colony"}',
        '{"id":"2","text":"i went home","timestamp_utc":"2020-01-01T05:00:00Z","timezone":"UTC"}',
    ]
    path = write_corpus(tmp_path, lines)
    res = scan_corpus(path, lexicon=lexicon, families=FAMILIES)
    assert res.n_tz_skips == 1
    assert res.overall.n_posts == 2  # bad-tz post still scored overall
    assert sum(a.n_posts for a in res.hours.values()) == 1
    assert res.tenses[Tense.PAST].n_posts == 1  # "went" still tense-sliced
    assert res.pronouns["i"].n_posts == 1


def test_parse_and_empty_skips_counted(tmp_path, lexicon):
    lines = [
        "not json at all",
        '{"id":"1","text":"!!! ...","timestamp_utc":"2020-01-01T05:00:00Z","timezone":"UTC"}',
        '{"id":"2","text":"neut000","timestamp_utc":"2020-01-01T05:00:00Z","timezone":"UTC"}',
    ]
    path = write_corpus(tmp_path, lines)
    res = scan_corpus(path, lexicon=lexicon, families=("hour",))
    assert res.n_records == 3
    assert res.n_parse_skips == 1
    assert res.n_empty_skips == 1
    assert res.overall.n_posts == 1
    assert res.skip_events[0].line_no == 1
    # records = scored + parse skips + empty skips
    assert res.n_records == res.overall.n_posts + res.n_parse_skips + res.n_empty_skips


def test_get_bin_lookup(random_corpus, lexicon):
    path, _ = random_corpus
    res = scan_corpus(path, lexicon=lexicon, families=FAMILIES)
    assert res.get_bin("hour", "8") is res.hours[8]
    assert res.get_bin("weekday", "0") is res.weekdays[0]
    assert res.get_bin("tense", "past") is res.tenses[Tense.PAST]
    assert res.get_bin("pronoun", "i") is res.pronouns["i"]
    with pytest.raises(KeyError):
        res.get_bin("hour", "24")
    with pytest.raises(ValueError):
        res.get_bin("hour", "eight")
    with pytest.raises(ValueError):
        res.get_bin("tense", "pluperfect")
    with pytest.raises(KeyError):
        res.get_bin("pronoun", "us")


def test_unknown_family_rejected(lexicon):
    with pytest.raises(ValueError):
        ScanResult(("hour", "minute"))


def test_merge_results_accumulates(random_corpus, lexicon):
    path, oracle = random_corpus
    a = scan_corpus(path, lexicon=lexicon, families=("hour",))
    b = scan_corpus(path, lexicon=lexicon, families=("hour",))
    a.merge_from(b)
    assert a.overall.n_posts == 2 * oracle["overall"][0]
    assert a.n_records == 2 * oracle["n_records"]
