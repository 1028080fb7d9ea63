"""Tests for the verification suites, their reports and the report tree."""

import json
from unittest.mock import MagicMock

import numpy as np
import pytest

from imagshift.errors import DivergenceError, ParameterError
from imagshift.tools.report_tree import build_tree, render_report
from imagshift.verify import (
    SUITE_NAMES,
    CheckResult,
    SuiteReport,
    SuiteRunner,
    effective_tolerance,
    from_json,
    from_yaml,
    load_schema,
    suites,
    to_json,
    to_yaml,
    validate_report,
)
from imagshift.verify.report import finite_or_none


@pytest.fixture
def fake_suite(monkeypatch, mock_check):
    """Replace the kl suite with four mocked checks."""
    erroring = mock_check('kl.raises', None)
    erroring.run.side_effect = DivergenceError("series not converged")
    checks = [
        mock_check('kl.passes', 1e-9),
        mock_check('kl.fails', 1e-3),
        mock_check('kl.not_finite', float('nan')),
        erroring,
        mock_check('kl.noted', (2e-7, 'constant 1')),
    ]
    monkeypatch.setitem(suites.SUITES, 'kl', lambda options: checks)
    return checks


def test_report_sorted_and_summarized(sample_report):
    """Test that checks are sorted by id and failures collected."""
    report = SuiteReport('x', list(reversed(sample_report.checks)))
    assert [c.id for c in report.checks] == ['specfun.gamma_recurrence', 'specfun.kummer_barnes']
    assert not report.passed
    assert [c.id for c in report.failures] == ['specfun.kummer_barnes']
    assert SuiteReport('empty').passed


def test_report_dict_round_trip(sample_report):
    data = sample_report.to_dict()
    assert data['pass'] is False
    assert data['checks'][0]['pass'] is True
    assert 'error' not in data['checks'][0]
    assert SuiteReport.from_dict(data) == sample_report


def test_report_serialization(sample_report):
    """Test the JSON and YAML encodings of a report with a null defect."""
    text = to_json(sample_report)
    assert json.loads(text)['checks'][1]['defect'] is None
    assert from_json(text) == sample_report
    assert from_yaml(to_yaml(sample_report)) == sample_report


def test_report_json_rejects_nan():
    report = SuiteReport('x', [CheckResult('x.y', 'a', float('nan'), 1.0, False)])
    with pytest.raises(ValueError):
        to_json(report)


def test_validate_report(sample_report):
    """Test schema validation of good and bad reports."""
    assert validate_report(sample_report.to_dict()) == (True, None)
    data = sample_report.to_dict()
    data['checks'][0]['id'] = 'NoDots'
    is_valid, message = validate_report(data)
    assert not is_valid
    assert 'NoDots' in message
    data = sample_report.to_dict()
    data['checks'][0]['defect'] = -1.0
    assert not validate_report(data)[0]


def test_validate_report_schema_error(sample_report):
    is_valid, message = validate_report(sample_report.to_dict(), schema={'type': 12})
    assert not is_valid
    assert message.startswith('Schema error')


def test_load_schema():
    schema = load_schema()
    assert schema['required'] == ['suite', 'checks', 'pass']
    assert 'suites' in load_schema('verify-config-schema.json')['properties']


def test_finite_or_none():
    assert finite_or_none(None) is None
    assert finite_or_none(float('inf')) is None
    assert finite_or_none(2) == 2.0


def test_effective_tolerance(mock_check):
    """Test the precedence of a global tolerance, overrides and the scale."""
    check = mock_check('kl.passes', 0.0, tol=1e-6)
    assert effective_tolerance(check) == 1e-6
    assert effective_tolerance(check, tol_scale=10.0) == pytest.approx(1e-5)
    assert effective_tolerance(check, {'kl.passes': 1e-3}, tol_scale=2.0) == pytest.approx(2e-3)
    assert effective_tolerance(check, {'kl.passes': 1e-3}, tol_scale=2.0, tol=0.5) == 0.5


def test_runner_outcomes(fake_suite):
    """Test pass, fail, error, non-finite and noted outcomes."""
    report = SuiteRunner(workers=1).run('kl')
    results = {c.id: c for c in report.checks}
    assert [c.id for c in report.checks] == sorted(results)
    assert results['kl.passes'].passed
    assert not results['kl.fails'].passed
    assert results['kl.not_finite'].defect is None
    assert results['kl.not_finite'].error == 'defect is not finite'
    assert results['kl.raises'].defect is None
    assert 'series not converged' in results['kl.raises'].error
    assert results['kl.noted'].note == 'constant 1'
    assert results['kl.noted'].passed
    assert all(c.ms == 0 for c in report.checks)
    assert validate_report(report.to_dict()) == (True, None)
    for check in fake_suite:
        check.run.assert_called_once()


def test_runner_tolerances(fake_suite):
    report = SuiteRunner().run('kl', tolerances={'kl.fails': 1e-2}, tol_scale=0.5)
    results = {c.id: c for c in report.checks}
    assert results['kl.fails'].tol == pytest.approx(5e-3)
    assert results['kl.fails'].passed
    assert SuiteRunner().run('kl', tol=1e-12).failures


def test_runner_workers(fake_suite):
    """Test that a thread pool gives the same report."""
    serial = SuiteRunner(workers=1).run('kl')
    parallel = SuiteRunner(workers=3).run('kl')
    assert [(c.id, c.passed) for c in parallel.checks] == [(c.id, c.passed) for c in serial.checks]


def test_runner_debug_output(fake_suite, capsys):
    SuiteRunner(debug=True).run('kl')
    captured = capsys.readouterr()
    assert 'Running kl.fails' in captured.out
    assert 'FAIL' in captured.out


def test_runner_all_suites(monkeypatch):
    """Test that 'all' is the union of every named suite."""
    fake = {name: (lambda options, name=name: [suites.Check(f"{name}.only", 'a', 1.0, MagicMock(return_value=0.0))])
            for name in SUITE_NAMES}
    monkeypatch.setattr(suites, 'SUITES', fake)
    report = SuiteRunner().run('all')
    assert report.suite == 'all'
    assert len(report.checks) == len(SUITE_NAMES)
    assert report.passed


def test_runner_unknown_suite():
    with pytest.raises(ParameterError) as exc_info:
        SuiteRunner().checks('bogus')
    assert 'sec6' in str(exc_info.value)


def test_suite_ids_are_schema_ids():
    """Test that every built-in check id is dotted and unique."""
    checks = SuiteRunner().checks('all')
    ids = [c.id for c in checks]
    assert len(ids) == len(set(ids))
    for check in checks:
        assert check.id.split('.')[0] in SUITE_NAMES
        assert check.tol > 0


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("suite", ["specfun", "polynomials"])
def test_builtin_suite_passes(suite):
    report = SuiteRunner().run(suite)
    assert report.passed, [c.to_dict() for c in report.failures]


def test_render_report(sample_report):
    """Test the tree rendering and summary line."""
    text = render_report(sample_report)
    assert text.splitlines()[0] == 'specfun (FAIL)'
    assert 'gamma_recurrence: defect 3.200e-15 <= 1.0e-12 PASS [4 ms]' in text
    assert 'kummer_barnes: ERR (tol 1.0e-08) FAIL' in text
    assert 'error: Divergence: series not converged after 10 terms' in text
    assert text.rstrip().endswith('1/2 checks passed')


def test_render_report_failures_only(sample_report):
    text = render_report(sample_report, failures_only=True)
    assert 'gamma_recurrence' not in text
    assert 'kummer_barnes' in text


def test_build_tree_groups(sample_report):
    root = build_tree(sample_report)
    (group,) = root.children
    assert group.name == 'specfun (FAIL)'
    assert len(group.children) == 2


def test_suites_cover_round_trips_and_gram():
    """Test that every transform suite checks its round trip and every family its Gram matrix."""
    options = suites.SuiteOptions()
    ids = {check.id for name in ('wimp', 'vilenkin', 'polynomials')
           for check in suites.SUITES[name](options)}
    assert {'wimp.round_trip', 'vilenkin.round_trip', 'vilenkin.norm'} <= ids
    assert {f'polynomials.gram.{kind}' for kind in ('mp', 'hahn', 'dual_hahn', 'wilson')} <= ids


def test_vilenkin_intertwining_is_absolute(monkeypatch):
    calls = []
    monkeypatch.setattr(suites, 'intertwining_defect',
                        lambda *args, **kwargs: calls.append(kwargs) or 2e-5)
    (check,) = [c for c in suites.SUITES['vilenkin'](suites.SuiteOptions())
                if c.id == 'vilenkin.intertwining']
    assert check.run() == 2e-5
    assert calls == [{}]


def test_psi_gram_gates_diagonal(monkeypatch):
    """Test that a wrong diagonal fails the Psi Gram check even when the off-diagonal is clean."""
    from imagshift.extensions.psi import PsiGram
    expected = 2.0 * np.pi ** 2 / np.sin(suites.PSI_PARAMS.phi)
    matrix = np.diag([expected, 1.1 * expected, expected]).astype(complex)
    monkeypatch.setattr(suites, 'psi_gram',
                        lambda params, cfg=None: PsiGram((-1, 0, 1), matrix, 0.0, 1.1 * expected))
    defect, note = suites._psi_gram(None)
    assert defect == pytest.approx(0.1)
    assert 'off-diagonal 0.000e+00' in note
