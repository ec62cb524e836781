import io
import json

import pytest

from multiseg.cli import format_multisegment, main, parse_multisegment, parse_segment
from multiseg.exceptions import ParseError, RangeError
from multiseg.ladders import Ladder
from multiseg.multisegments import Multisegment, canonical_order
from multiseg.relevance import HypothesisResult
from multiseg.search import Finding, SearchBounds, SearchReport
from multiseg.segments import Segment as S

from .strategies import all_multisegments


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestParsing:

    def test_terms_and_multiplicities(self):
        m = parse_multisegment('2*[3,3] + [0,1]')
        assert m == Multisegment({S(3, 3): 2, S(0, 1): 1})

    def test_repeated_terms_add_up(self):
        assert parse_multisegment('[0,1]+[0,1]') == Multisegment({S(0, 1): 2})

    def test_negative_values(self):
        assert parse_segment('[-3,-1]') == S(-3, -1)

    def test_empty(self):
        assert parse_multisegment('0') == Multisegment()
        assert format_multisegment(Multisegment()) == '0'

    def test_format_is_descending(self):
        assert format_multisegment(parse_multisegment('[0,1]+2*[3,3]')) == '2*[3,3]+[0,1]'

    @pytest.mark.parametrize('text', ['[0,1]+2*[3,3]', '[5,9]+[-2,0]', '3*[0,0]'])
    def test_format_parses_back(self, text):
        m = parse_multisegment(text)
        assert parse_multisegment(format_multisegment(m)) == m

    @pytest.mark.slow
    def test_round_trip_on_bounded_window(self):
        for m in all_multisegments(0, 4, 5, 2):
            assert parse_multisegment(format_multisegment(m)) == m, m

    @pytest.mark.parametrize('text, position', [
        ('[0,1', 4),
        ('[0;1]', 2),
        ('[0,1]+', 6),
        ('[0,1] [1,2]', 6),
        ('[0,\u0663]', 3),
        ('[0,\u00b2]', 3),
        ('\u00b2*[0,1]', 0),
    ])
    def test_parse_error_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse_multisegment(text)
        assert info.value.position == position

    @pytest.mark.parametrize('text', ['[3,1]', '0*[0,1]', '[0,1000001]'])
    def test_range_errors(self, text):
        with pytest.raises(RangeError):
            parse_multisegment(text)


def test_involution(capsys):
    code, out, _ = run(capsys, 'involution', '[2,3]+[0,1]')
    assert code == 0
    assert out.strip() == '[3,3]+[1,2]+[0,0]'


def test_involution_recursive_needs_ladder(capsys):
    code, _, err = run(capsys, 'involution', '--recursive', '2*[0,1]')
    assert code == 2
    assert 'not a ladder' in err


def test_speh_json(capsys):
    code, out = run_json(capsys, 'speh', '--json', '[1,2]+[0,1]')
    assert code == 0
    assert set(out) == {'input', 'result', 'witness', 'elapsed_ms'}
    assert out['input'] == '[1,2]+[0,1]'
    assert out['result'] is True
    assert out['witness'] == '[0,1]'


def test_speh_without_witness(capsys):
    code, out = run_json(capsys, 'speh', '--json', '[0,3]')
    assert code == 0
    assert out['result'] is False
    assert 'witness' not in out


def test_dual(capsys):
    code, out, _ = run(capsys, 'dual', '[1,2]+[0,0]')
    assert code == 0
    assert out.strip() == '[0,0]+[-2,-1]'


def test_orders(capsys):
    code, out = run_json(capsys, 'orders', '--json', '[0,0]+[5,5]')
    assert code == 0
    assert len(out['result']) == 2
    code, out = run_json(capsys, 'orders', '--json', '--canonical', '[1,2]+[0,1]')
    assert out['result'] == '[1,2],[0,1]'


def test_distinguished(capsys):
    code, out = run_json(capsys, 'distinguished', '--json', '[0,1]+[4,5]')
    assert code == 0
    assert out['result'] is False
    assert 'failing_order' in out['witness']


def test_hypothesis(capsys):
    code, out = run_json(capsys, 'hypothesis', '--json', '--mode', 'star_star', '[1,2]+[0,1]')
    assert code == 0
    assert out['result'] == 'holds'
    assert out['witness']['speh_witness'] == '[0,1]'


def test_ladder_classify(capsys):
    code, out = run_json(capsys, 'ladder', 'classify', '--json', '--d', '1', '[4,7]+[0,6]')
    assert code == 0
    result = out['result']
    assert result['is_ladder'] and result['is_proper']
    assert result['klyachko'] == {'k': 4, 'r': 3, 'n': 11}
    assert result['sp_L'] is False


def test_ladder_classify_non_ladder(capsys):
    code, out = run_json(capsys, 'ladder', 'classify', '--json', '2*[0,1]')
    assert code == 0
    assert out['result']['is_ladder'] is False
    assert out['result']['klyachko'] is None


def test_irreducible(capsys):
    code, out = run_json(capsys, 'irreducible', '--json', '[0,1]', '[1,2]')
    assert code == 0
    assert out['result']['irreducible'] is False
    assert out['result']['nc_witnesses'] == [{'first': 1, 'second': 2, 'i': 1, 'j': 1, 'k': 0}]
    assert out['result']['sp_verdict'] is None

    code, out = run_json(capsys, 'irreducible', '--json', '[0,1]', '[4,5]')
    assert out['result']['sp_verdict'] == 'not_distinguished'


def test_elementary_and_closure(capsys):
    code, out, _ = run(capsys, 'elementary', '[0,1]+[1,2]', '--pair', '[0,1]', '[1,2]')
    assert code == 0
    assert out.strip() == '[1,1]+[0,2]'

    code, out = run_json(capsys, 'closure', '--json', '[0,1]+[1,2]')
    assert out['witness'] == {'truncated': False, 'count': 2}


def test_alt_sum(capsys):
    code, out = run_json(capsys, 'alt-sum', '--json', '[0,1]+[1,2]')
    assert code == 0
    assert out['result'] is True


def test_search(capsys):
    code, out, _ = run(capsys, 'search', '--max-end', '2', '--max-size', '3',
                       '--max-mult', '1', '--filter', 'sets_only')
    assert code == 0
    assert 'counterexamples 0' in out


def test_search_writes_report(capsys, tmp_path):
    path = tmp_path / 'report.json'
    code, out = run_json(capsys, 'search', '--json', '--max-end', '1', '--max-size', '2',
                         '--output', str(path))
    assert code == 0
    assert out['result']['checked'] == json.loads(path.read_text())['checked']


def test_search_rejects_bad_bounds(capsys):
    code, _, err = run(capsys, 'search', '--max-end', '2', '--max-size', '0')
    assert code == 2
    assert 'max_size' in err


def test_reads_standard_input(capsys, monkeypatch):
    monkeypatch.setattr('sys.stdin', io.StringIO('[1,2]+[0,1]\n'))
    code, out, _ = run(capsys, 'speh')
    assert code == 0
    assert out.splitlines()[0] == 'True'


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, 'speh', '[0,1')
    assert code == 2
    assert err.startswith('error:')


def test_unknown_command(capsys):
    assert main(['frobnicate']) == 2


def test_involution_paths_disagree(capsys, monkeypatch):
    monkeypatch.setattr('multiseg.cli.ladder_dual_recursive', lambda l: Ladder([S(0, 0)]))
    code, _, err = run(capsys, 'involution', '[2,3]+[0,1]')
    assert code == 3
    assert err.startswith('internal error:')


def test_hypothesis_counterexample_exit_code(capsys, monkeypatch):
    found = HypothesisResult(mode='star', holds=False, speh_witness=None, distinguished=True)
    monkeypatch.setattr('multiseg.cli.check_hypothesis', lambda m, mode: found)
    code, out = run_json(capsys, 'hypothesis', '--json', '[0,3]')
    assert code == 1
    assert out['result'] == 'counterexample'


def test_search_counterexample_exit_code(capsys, monkeypatch):
    m = Multisegment([S(0, 3)])
    report = SearchReport(bounds=SearchBounds(3, 1), checked=1, distinguished_count=1, speh_count=0,
                          counterexamples=(Finding(m, canonical_order(m)),),
                          strong_form_violations=(), dual_pairs=0, elapsed_ms=0.0)
    monkeypatch.setattr('multiseg.search.search_counterexamples', lambda bounds, pool=None: report)
    code, out, _ = run(capsys, 'search', '--max-end', '3', '--max-size', '1')
    assert code == 1
    assert 'counterexample: [0,3]' in out


@pytest.mark.parametrize('argv', [
    ['ladder', 'classify', '--d', '0', '[0,1]'],
    ['closure', '--cap', '-1', '[0,1]'],
    ['closure', '--cap', 'many', '[0,1]'],
])
def test_non_positive_options(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert 'must be a positive integer' in err or 'invalid' in err


def test_internal_errors_are_not_usage_errors(monkeypatch):
    def broken(m):
        raise ValueError('broken')

    monkeypatch.setattr('multiseg.cli.is_speh_type', broken)
    with pytest.raises(ValueError):
        main(['speh', '[0,1]'])
