import orjson
import pytest

from weightsys.cli import EXIT_BOUND
from weightsys.cli import EXIT_OK
from weightsys.cli import EXIT_USAGE
from weightsys.cli import main
from weightsys.core.config import get_version
from weightsys.diagrams.poly import parse_poly


def run(capsys, *argv):
    code = main(['--no-cache', *argv])
    return code, capsys.readouterr()


class TestEval:
    def test_standard_cycle(self, capsys):
        code, captured = run(capsys, 'eval', '(1,2,3)')
        assert code == EXIT_OK
        assert captured.out.strip() == 'C_3'

    def test_standard_representation(self, capsys):
        code, captured = run(capsys, 'eval', '(1,3,2)', '--basis', 'standard')
        assert code == EXIT_OK
        assert captured.out.strip() == '1'

    def test_so_engine(self, capsys):
        code, captured = run(capsys, 'eval', '(1,2,3)', '--engine', 'so')
        assert code == EXIT_OK
        assert parse_poly(captured.out) == parse_poly('(N - 2)/2*C_2')

    def test_json(self, capsys):
        code, captured = run(capsys, '--output', 'json', 'eval', '[3,1,2]')
        assert code == EXIT_OK
        result = orjson.loads(captured.out)
        assert result['permutation'] == '(1,3,2)'
        assert parse_poly(result['value']) == parse_poly('C_3 - N*C_2 + C_1^2')

    def test_basis_not_available(self, capsys):
        code, captured = run(capsys, 'eval', '(1,2)', '--engine', 'so', '--basis', 'S')
        assert code == EXIT_USAGE
        assert 'not available' in captured.err

    @pytest.mark.parametrize('text', ['(1,2', '[1,1]'])
    def test_bad_permutation(self, capsys, text):
        code, _ = run(capsys, 'eval', text)
        assert code == EXIT_USAGE


class TestConvert:
    def test_to_schur(self, capsys):
        code, captured = run(capsys, 'convert', 'C_1')
        assert code == EXIT_OK
        assert captured.out.strip() == 'S_1'

    def test_round_trip(self, capsys):
        _, captured = run(capsys, 'convert', '2*S_2 - S_1^2 - (N^3 - N)/12', '--to', 'C')
        assert parse_poly(captured.out) == parse_poly('C_2')

    def test_parse_error(self, capsys):
        code, _ = run(capsys, 'convert', 'C_2 +* 1')
        assert code == EXIT_USAGE


class TestChecks:
    def test_relations(self, capsys):
        code, captured = run(capsys, 'check-relations', '4')
        assert code == EXIT_OK
        assert captured.out.startswith('gl relations m=4')
        assert captured.out.rstrip().endswith('ok')

    def test_relations_json(self, capsys):
        code, captured = run(capsys, '--output', 'json', 'check-relations', '3', '--engine', 'faces')
        assert code == EXIT_OK
        assert orjson.loads(captured.out)['passed'] is True

    def test_bound(self, capsys):
        code, captured = run(capsys, '--bound', '5', 'check-relations', '6')
        assert code == EXIT_BOUND
        assert 'bound' in captured.err

    def test_oracle(self, capsys):
        code, _ = run(capsys, 'oracle', '3', '--n', '2', '--t', '2')
        assert code == EXIT_OK

    def test_oracle_too_large(self, capsys):
        code, _ = run(capsys, 'oracle', '2', '--n', '9', '--t', '2')
        assert code == EXIT_BOUND


class TestTables:
    def test_chord_table_csv(self, capsys):
        code, captured = run(capsys, '--output', 'csv', 'dims', '--table', '2')
        assert code == EXIT_OK
        lines = captured.out.splitlines()
        assert lines[0] == 'label,m,dim,primitive'
        assert lines[-1] == '{2},8,11,6'

    def test_rotational_table_honours_bound(self, capsys):
        code, captured = run(capsys, '--bound', '5', 'dims', '--table', '2')
        assert code == EXIT_BOUND
        assert 'bound' in captured.err

    def test_average_honours_bound(self, capsys):
        code, _ = run(capsys, '--bound', '2', 'average', '3')
        assert code == EXIT_BOUND

    def test_hopf_table_json(self, capsys):
        code, captured = run(capsys, '--output', 'json', 'dims', '--max-m', '3')
        assert code == EXIT_OK
        rows = orjson.loads(captured.out)
        assert rows[-1] == {'label': 'total', 'm': 3, 'dim': 4, 'primitive': 2}

    def test_average(self, capsys):
        code, captured = run(capsys, 'average', '2')
        assert code == EXIT_OK
        assert parse_poly(captured.out) == parse_poly('S_2 - (N^3 - N)/24')


def test_version(capsys):
    code, captured = run(capsys, 'version')
    assert code == EXIT_OK
    assert captured.out.strip() == get_version()


@pytest.mark.cache
def test_cache_file_written(capsys, tmp_path):
    path = tmp_path / 'memo.jsonl'
    assert main(['--cache', str(path), 'eval', '(1,3,2)']) == EXIT_OK
    records = [orjson.loads(line) for line in path.read_bytes().splitlines()]
    assert {record['engine'] for record in records} == {'gl'}


@pytest.mark.cache
def test_cache_record_of_other_format_is_ignored(capsys, tmp_path):
    path = tmp_path / 'memo.jsonl'
    foreign = {
        'format': 'weightsys-cache/2',
        'key': '[3,1,2]',
        'engine': 'gl',
        'value': 'C_3',
        'version': get_version(),
    }
    path.write_bytes(orjson.dumps(foreign) + b'\n')
    assert main(['--cache', str(path), 'eval', '(1,3,2)']) == EXIT_OK
    assert parse_poly(capsys.readouterr().out) == parse_poly('C_3 - N*C_2 + C_1^2')


@pytest.mark.cache
def test_unreadable_cache_is_an_input_error(capsys, tmp_path):
    path = tmp_path / 'memo.jsonl'
    path.write_text('{not json\n')
    assert main(['--cache', str(path), 'eval', '(1,2)']) == EXIT_USAGE
    assert 'Corrupt cache line' in capsys.readouterr().err
