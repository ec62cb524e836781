import csv
import json

import pytest

from multiseg.exceptions import RangeError
from multiseg.flattener import ReportFlattener
from multiseg.multisegments import Multisegment
from multiseg.search import (SearchBounds, SearchRunner, enumerate_candidates, evaluate,
                             search_counterexamples)
from multiseg.segments import Segment as S

from .strategies import all_multisegments


def M(*segments):
    return Multisegment(S(*seg) for seg in segments)


def _comparable(report):
    return report._replace(elapsed_ms=0, bounds=report.bounds._replace(shards=1))


class TestCandidates:

    def test_small_window_count(self):
        assert len(enumerate_candidates(SearchBounds(2, 2, 2))) == 18

    @pytest.mark.parametrize('bounds', [
        SearchBounds(2, 2, 2),
        SearchBounds(3, 3, 1),
        SearchBounds(3, 3, 2),
    ])
    def test_matches_independent_enumeration(self, bounds):
        expected = {m for m in all_multisegments(0, bounds.max_end, bounds.max_size, bounds.max_mult)
                    if m and min(seg.begin for seg in m) == 0}
        found = enumerate_candidates(bounds)
        assert len(found) == len(set(found))
        assert set(found) == expected

    def test_canonical_order(self):
        found = enumerate_candidates(SearchBounds(3, 3, 2))
        keys = [m.sort_key for m in found]
        assert keys == sorted(keys)

    def test_sets_only_ignores_multiplicity(self):
        found = enumerate_candidates(SearchBounds(2, 3, 3, filter='sets_only'))
        assert all(m.is_set() for m in found)

    def test_blocks_le_2(self):
        for m in enumerate_candidates(SearchBounds(3, 4, 2, filter='blocks_le_2')):
            ends = [seg.end for seg in m]
            assert all(ends.count(end) <= 2 for end in ends), m


class TestBounds:

    @pytest.mark.parametrize('bounds', [
        SearchBounds(-1, 2),
        SearchBounds(2, 0),
        SearchBounds(2, 2, max_mult=0),
        SearchBounds(2, 2, shards=0),
        SearchBounds(2, 2, mode='triple'),
        SearchBounds(2, 2, filter='odd'),
    ])
    def test_rejected(self, bounds):
        with pytest.raises(RangeError):
            search_counterexamples(bounds)

    def test_accepted(self):
        assert SearchBounds(0, 1).validate() == SearchBounds(0, 1)


def test_evaluate_speh():
    speh, distinguished, counterexample, _ = evaluate(M((0, 1), (1, 2)))
    assert speh and distinguished
    assert counterexample is None


def test_evaluate_not_distinguished():
    speh, distinguished, counterexample, violation = evaluate(M((0, 0)))
    assert not speh and not distinguished
    assert counterexample is None
    assert violation is None


def test_small_search():
    report = search_counterexamples(SearchBounds(2, 2, 2))
    assert report.checked == 18
    assert report.speh_count <= report.distinguished_count <= report.checked
    assert report.speh_count >= 1
    assert report.holds


def test_sets_have_no_counterexamples():
    report = search_counterexamples(SearchBounds(2, 3, filter='sets_only'))
    assert report.counterexamples == ()
    assert report.dual_pairs == 0


def test_star_star_mode():
    report = search_counterexamples(SearchBounds(2, 3, 2, mode='star_star'))
    assert report.holds
    assert report.checked == len(enumerate_candidates(SearchBounds(2, 3, 2)))


def test_shard_count_does_not_change_the_report():
    single = search_counterexamples(SearchBounds(3, 3, 2, shards=1))
    sharded = search_counterexamples(SearchBounds(3, 3, 2, shards=2))
    assert _comparable(single) == _comparable(sharded)


@pytest.mark.slow
def test_sets_acceptance_window():
    report = search_counterexamples(SearchBounds(4, 5, filter='sets_only', shards=2))
    assert report.counterexamples == ()
    assert report.strong_form_violations == ()


@pytest.mark.slow
def test_blocks_acceptance_window():
    report = search_counterexamples(SearchBounds(3, 6, 2, filter='blocks_le_2', shards=2))
    assert report.counterexamples == ()
    assert report.strong_form_violations == ()


class TestRunner:

    def test_quiet_by_default(self, capsys):
        report = SearchRunner().run(SearchBounds(1, 2))
        assert report.holds
        assert capsys.readouterr().out == ''

    def test_verbose_banners(self, capsys):
        SearchRunner(verbose=True).run(SearchBounds(1, 2))
        err = capsys.readouterr().err
        assert 'START' in err
        assert 'END' in err

    def test_write_json_newline(self, tmp_path):
        path = tmp_path / 'report.json'
        SearchRunner().write_json_newline([{'checked': 3}, {'checked': 4}], str(path))
        lines = path.read_text().splitlines()
        assert [json.loads(line) for line in lines] == [{'checked': 3}, {'checked': 4}]

    def test_write_csv_with_flattener(self, tmp_path):
        path = tmp_path / 'report.csv'
        rec = {'bounds': {'max_end': 2}, 'checked': 5,
               'counterexamples': [{'multisegment': '[0,1]'}, {'multisegment': '[0,0]'}]}
        SearchRunner().write_csv([rec], str(path), ReportFlattener(list_fields=['counterexamples']))
        with open(str(path), newline='') as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 2
        assert rows[0]['bounds_max_end'] == '2'
        assert rows[1]['item_multisegment'] == '[0,0]'
        assert rows[1]['index'] == '1'


class TestFlattener:

    def test_nested_and_lists(self):
        flat = ReportFlattener().process({'a': {'b': 1, 'c': {'d': 2}}, 'e': [1, 2]})
        assert flat == {'a_b': 1, 'a_c_d': 2, 'e': '[1, 2]'}

    def test_json_string_fields(self):
        flat = ReportFlattener(json_string_fields=['a']).process({'a': {'b': 1}})
        assert flat == {'a': '{"b": 1}'}

    def test_split_without_elements(self):
        rows = ReportFlattener(list_fields=['xs']).process_and_split({'n': 1, 'xs': []})
        assert rows == [{'n': 1}]
