"""Tests for the command-line tools and the sampled CSV format."""

import argparse
import csv
import io
import json
from unittest.mock import MagicMock

import numpy as np
import pytest
import yaml

from imagshift.tools.cli import eval_cmd, main_cmd, table_cmd, transform_cmd, verify_cmd
from imagshift.tools.cli.common import (
    load_yaml_file,
    parse_complex,
    parse_range,
    points_argument,
    write_output,
)
from imagshift.tools.sampled_io import (
    Sampled,
    read_sampled,
    sampled_function,
    sampled_to_string,
    write_matrix,
)
from imagshift.verify import Check, suites


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def run_main(module, argv):
    """Run a command's main() and return its exit code."""
    with pytest.raises(SystemExit) as exc_info:
        module.main(argv)
    return exc_info.value.code


@pytest.fixture
def fake_suites(monkeypatch):
    """Replace the kl and specfun suites with one mocked check each."""
    defects = {'kl': 1e-9, 'specfun': 1e-9}

    def make(name):
        return lambda options: [Check(f"{name}.mocked", 'mocked', 1e-6,
                                      MagicMock(side_effect=lambda: defects[name]))]

    monkeypatch.setitem(suites.SUITES, 'kl', make('kl'))
    monkeypatch.setitem(suites.SUITES, 'specfun', make('specfun'))
    return defects


@pytest.mark.parametrize("text, expected", [
    ("1", 1 + 0j), ("-0.5", -0.5 + 0j), ("0.5+0.3j", 0.5 + 0.3j), ("2i", 2j), ("-i", -1j), (" 1 - 2j ", 1 - 2j),
])
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_parse_errors():
    """Test rejected numbers, ranges and point lists."""
    with pytest.raises(ValueError):
        parse_complex('one')
    with pytest.raises(ValueError):
        parse_range('0,1')
    with pytest.raises(ValueError):
        parse_range('0,1,0')
    with pytest.raises(argparse.ArgumentTypeError):
        points_argument(',')
    with pytest.raises(argparse.ArgumentTypeError):
        points_argument('1,x')
    assert parse_range('0,1,3') == [0j, 0.5 + 0j, 1 + 0j]


def test_load_yaml_file(tmp_path):
    """Test mappings, empty files and rejected YAML."""
    good = tmp_path / 'good.yaml'
    good.write_text('suites: [kl]\n')
    assert load_yaml_file(str(good)) == {'suites': ['kl']}
    empty = tmp_path / 'empty.yaml'
    empty.write_text('')
    assert load_yaml_file(str(empty)) == {}
    listing = tmp_path / 'list.yaml'
    listing.write_text('- a\n- b\n')
    for path in (listing, tmp_path / 'missing.yaml'):
        with pytest.raises(SystemExit) as exc_info:
            load_yaml_file(str(path))
        assert exc_info.value.code == 3


def test_write_output(tmp_path, capsys):
    write_output('hello\n')
    assert capsys.readouterr().out == 'hello\n'
    target = tmp_path / 'out.txt'
    write_output('data\n', str(target))
    assert target.read_text() == 'data\n'
    with pytest.raises(SystemExit) as exc_info:
        write_output('data\n', str(tmp_path / 'no_dir' / 'out.txt'))
    assert exc_info.value.code == 3


def test_sampled_round_trip():
    """Test sorting, exact digits and ERR rows."""
    s = [2.0, 0.5, 1.0 + 0.5j]
    values = [1.0 / 3.0, 2.0 + 1e-17j, 0.0]
    text = sampled_to_string(s, values, errors=[False, False, True])
    lines = text.splitlines()
    assert lines[0] == 's_re,s_im,f_re,f_im'
    assert lines[1].startswith('0.5,0,2,')
    assert lines[2] == '1,0.5,ERR,ERR'
    sampled = read_sampled(io.StringIO(text))
    assert list(sampled.s) == [0.5, 1.0 + 0.5j, 2.0]
    assert list(sampled.errors) == [False, True, False]
    assert sampled.values[2] == 1.0 / 3.0


@pytest.mark.parametrize("text", [
    "a,b,c,d\n1,0,1,0\n",
    "s_re,s_im,f_re,f_im\n1,0,1\n",
    "s_re,s_im,f_re,f_im\n1,0,one,0\n",
    "",
])
def test_read_sampled_rejects(text):
    with pytest.raises(ValueError):
        read_sampled(io.StringIO(text))


def test_sampled_function():
    """Test the spline interpolant, its even extension and the zero exterior."""
    s = np.linspace(0.0, 4.0, 9).astype(complex)
    sampled = Sampled(s, 3.0 * s + 1.0, np.zeros(9, dtype=bool))
    f = sampled_function(sampled)
    assert f(1.3) == pytest.approx(4.9)
    assert f(5.0) == 0.0
    assert f(-1.0) == 0.0
    assert sampled_function(sampled, even=True)(-1.0) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        sampled_function(Sampled(s[:1], s[:1], np.zeros(1, dtype=bool)))
    with pytest.raises(ValueError):
        sampled_function(Sampled(s + 1j, s, np.zeros(9, dtype=bool)))


def test_write_matrix():
    buffer = io.StringIO()
    write_matrix(buffer, np.array([[1.0, 0.5j], [0.0, 2.0]]), labels=[-1, 1])
    assert rows(buffer.getvalue()) == [
        ['m', 'n', 're', 'im'], ['-1', '-1', '1', '0'], ['-1', '1', '0', '0.5'],
        ['1', '-1', '0', '0'], ['1', '1', '2', '0']]


def test_eval_gamma(capsys):
    """Test a table of Gamma values with a pole flagged ERR."""
    assert run_main(eval_cmd, ['--fn', 'gamma', '--at', '1,0,4']) == 0
    captured = capsys.readouterr()
    table = rows(captured.out)
    assert table[0] == ['at_re', 'at_im', 're', 'im', 'status']
    assert float(table[1][2]) == pytest.approx(1.0, rel=1e-14)
    assert table[2] == ['0', '0', '', '', 'ERR']
    assert float(table[3][2]) == pytest.approx(6.0, rel=1e-14)
    assert 'Warning: Pole' in captured.err


def test_eval_polynomial(capsys):
    argv = ['--fn', 'polynomial', '--family', 'mp', '--a', '1', '--phi', str(np.pi / 2), '--n', '1', '--at', '1']
    assert run_main(eval_cmd, argv) == 0
    assert float(rows(capsys.readouterr().out)[1][2]) == pytest.approx(2.0, abs=1e-14)


def test_eval_macdonald(capsys):
    assert run_main(eval_cmd, ['--fn', 'K', '--nu', '0.5', '--x', '1.0,2.0']) == 0
    table = rows(capsys.readouterr().out)
    assert float(table[1][2]) == pytest.approx(np.sqrt(np.pi / 2) * np.exp(-1.0), rel=1e-11)


def test_eval_missing_parameters(capsys):
    """Test usage errors for missing parameters and points."""
    assert run_main(eval_cmd, ['--fn', '2F1', '--b', '1', '--at', '0.5']) == 2
    assert 'needs --a, --c' in capsys.readouterr().err
    assert run_main(eval_cmd, ['--fn', 'K', '--nu', '0.5']) == 2


def test_eval_to_file(tmp_path):
    target = tmp_path / 'gamma.csv'
    assert run_main(eval_cmd, ['--fn', 'gamma', '--at', '2', '-o', str(target)]) == 0
    assert rows(target.read_text())[1][:2] == ['2', '0']


def test_transform_zero_battery(capsys):
    """Test that the zero battery gives a zero image on the grid."""
    argv = ['--name', 'mellin', '--battery', 'zero', '--grid', '1.5,0.5']
    assert run_main(transform_cmd, argv) == 0
    table = rows(capsys.readouterr().out)
    assert table[0] == ['s_re', 's_im', 'f_re', 'f_im']
    assert table[1:] == [['0.5', '0', '0', '0'], ['1.5', '0', '0', '0']]


def test_transform_double_mellin(capsys):
    """Test g1(0) = Gamma(1/4)/2 for e^{-x^2}."""
    argv = ['--name', 'double_mellin', '--battery', 'line_gaussians', '--grid', '0']
    assert run_main(transform_cmd, argv) == 0
    value = float(rows(capsys.readouterr().out)[1][2])
    assert value == pytest.approx(1.8128049541109541, rel=1e-8)


def test_transform_usage_errors(capsys, tmp_path):
    """Test a bad battery index, a bad range and a missing input file."""
    assert run_main(transform_cmd, ['--name', 'kl', '--battery', 'zero', '--index', '3', '--grid', '1']) == 2
    assert 'out of range' in capsys.readouterr().err
    assert run_main(transform_cmd, ['--name', 'kl', '--battery', 'zero', '--grid-range', '0,1']) == 2
    missing = str(tmp_path / 'missing.csv')
    assert run_main(transform_cmd, ['--name', 'kl', '--input', missing, '--grid', '1']) == 3
    with pytest.raises(SystemExit):
        transform_cmd.parse_args(['--name', 'kl', '--grid', '1'])


def test_transform_bad_sampled_file(tmp_path):
    bad = tmp_path / 'bad.csv'
    bad.write_text('x,y\n1,2\n')
    assert run_main(transform_cmd, ['--name', 'kl', '--input', str(bad), '--grid', '1']) == 3


def test_verify_unknown_suite():
    with pytest.raises(SystemExit) as exc_info:
        verify_cmd.parse_args(['--suite', 'bogus'])
    assert exc_info.value.code == 2


def test_verify_json_report(fake_suites, capsys):
    """Test a passing run and its schema-valid JSON report."""
    assert run_main(verify_cmd, ['--suite', 'kl']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['suite'] == 'kl'
    assert data['pass'] is True
    assert data['checks'][0]['id'] == 'kl.mocked'


def test_verify_failure_exit_code(fake_suites, capsys):
    fake_suites['kl'] = 1.0
    assert run_main(verify_cmd, ['--suite', 'kl', '--format', 'text', '--failures-only']) == 1
    out = capsys.readouterr().out
    assert 'mocked: defect 1.000e+00 <= 1.0e-06 FAIL' in out
    assert '0/1 checks passed' in out


def test_verify_tolerance_flags(fake_suites, capsys):
    """Test --tol, --tol-scale and their validation."""
    assert run_main(verify_cmd, ['--suite', 'kl', '--tol', '1e-12']) == 1
    capsys.readouterr()
    assert run_main(verify_cmd, ['--suite', 'kl', '--tol-scale', '0.5', '--format', 'yaml']) == 0
    assert yaml.safe_load(capsys.readouterr().out)['checks'][0]['tol'] == pytest.approx(5e-7)
    assert run_main(verify_cmd, ['--suite', 'kl', '--tol', '-1']) == 2
    assert run_main(verify_cmd, ['--suite', 'kl', '--tol-scale', '0']) == 2
    assert run_main(verify_cmd, ['--suite', 'kl', '--workers', '0']) == 2


def test_verify_config(fake_suites, tmp_path, capsys):
    """Test suite selection, deduplication and overrides from a config file."""
    config_file = tmp_path / 'verify.yaml'
    config_file.write_text(yaml.dump({
        'suites': ['kl', 'specfun', 'kl'],
        'tolerances': {'kl.mocked': 1e-10},
        'timings': True,
    }))
    assert run_main(verify_cmd, ['--config', str(config_file)]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data['suite'] == 'kl+specfun'
    results = {c['id']: c for c in data['checks']}
    assert results['kl.mocked']['tol'] == 1e-10
    assert not results['kl.mocked']['pass']
    assert results['specfun.mocked']['pass']


def test_verify_invalid_config(tmp_path, capsys):
    config_file = tmp_path / 'verify.yaml'
    config_file.write_text(yaml.dump({'tolerances': {'Bad Id': 1.0}}))
    assert run_main(verify_cmd, ['--config', str(config_file)]) == 2
    assert 'Invalid configuration' in capsys.readouterr().err


def test_verify_unknown_battery(capsys):
    assert run_main(verify_cmd, ['--suite', 'kl', '--battery', 'nope']) == 2
    assert 'Unknown battery' in capsys.readouterr().err


def test_selected_suites():
    args = argparse.Namespace(suite=None)
    assert verify_cmd.selected_suites(args, {}) == ['all']
    assert verify_cmd.selected_suites(args, {'suites': ['kl', 'all']}) == ['all']
    assert verify_cmd.selected_suites(argparse.Namespace(suite='kl'), {'suites': ['sec6']}) == ['kl']


def test_default_config_is_valid():
    """Test that the packaged default configuration matches its schema."""
    from imagshift.utils import config
    data = load_yaml_file(f"{config.RESOURCES_PATH}/verify-default.yaml")
    assert verify_cmd.validate_config(data) == (True, None)


def test_table_eigen(capsys):
    argv = ['--kind', 'eigen', '--family', 'mp', '--a', '1', '--phi', '1.0', '--size', '3']
    assert run_main(table_cmd, argv) == 0
    table = rows(capsys.readouterr().out)
    assert table[0] == ['n', 'law', 'lambda_re', 'lambda_im', 'defect']
    assert [row[:2] for row in table[1:]] == [['0', 'printed'], ['1', 'printed'], ['2', 'printed']]
    assert all(float(row[4]) < 1e-9 for row in table[1:])


def test_table_gram_dual_hahn(capsys):
    """Test a dual Hahn Gram table with the default quadrature settings."""
    argv = ['--kind', 'gram', '--family', 'dual_hahn', '--a', '0.5', '--b', '0.7', '--c', '1.2',
            '--size', '6']
    assert run_main(table_cmd, argv) == 0
    table = rows(capsys.readouterr().out)
    assert table[0] == ['m', 'n', 're', 'im']
    assert len(table) == 37
    entries = {(row[0], row[1]): complex(float(row[2]), float(row[3])) for row in table[1:]}
    largest = max(abs(entries[(str(n), str(n))]) for n in range(6))
    off = max(abs(v) for (m, n), v in entries.items() if m != n)
    assert off <= 1e-8 * largest


def test_table_usage_errors(capsys):
    assert run_main(table_cmd, ['--kind', 'gram']) == 2
    assert 'needs --family' in capsys.readouterr().err
    assert run_main(table_cmd, ['--kind', 'gram', '--family', 'mp', '--a', '1', '--phi', '1', '--size', '13']) == 2
    assert run_main(table_cmd, ['--kind', 'delta_gram', '--tau', '0.3']) == 2


def test_main_dispatch(capsys):
    """Test subcommand dispatch, --version and a missing subcommand."""
    args = main_cmd.build_parser().parse_args(['eval', '--fn', 'gamma', '--at', '2'])
    assert args.handler is eval_cmd.run
    assert run_main(main_cmd, ['eval', '--fn', 'gamma', '--at', '3']) == 0
    assert float(rows(capsys.readouterr().out)[1][2]) == pytest.approx(2.0)
    assert run_main(main_cmd, ['--version']) == 0
    assert 'imagshift 0.1.0' in capsys.readouterr().out
    assert run_main(main_cmd, []) == 2
