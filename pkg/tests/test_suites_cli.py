#!/usr/bin/env python3
"""
Tests for case execution, the suite runner and the command-line front end
"""

import json
import logging
from fractions import Fraction

import pytest

from src.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, main
from src.config_manager import ConfigManager
from src.errors import (InternalAssertionError, InvalidParameterError,
                        NonGenericParameterError, SingularPointError)
from src.reports import STATUS_FAIL, STATUS_NON_GENERIC, STATUS_PASS, CaseReport, CheckResult, summarize
from src.scalars import Params
from src.suites import SUITES, Case, RunConfig, SuiteRunner, run_case


def raises(error):
    def run():
        raise error("boom")
    return run


# ============================================
# Test Fixtures
# ============================================

@pytest.fixture(autouse=True)
def restore_logging():
    """main() reconfigures the root logger; undo it after each test"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def single_thread(monkeypatch):
    """Deterministic single-worker runs"""
    monkeypatch.setenv('CALOGERO_THREADS', '1')


@pytest.fixture
def config(tmp_path, single_thread):
    """Built-in defaults, nothing written to disk"""
    return ConfigManager(tmp_path / 'config.json', create_missing=False)


@pytest.fixture
def config_arg(tmp_path):
    """--config pointing at a file that does not exist"""
    return ['--config', str(tmp_path / 'config.json')]


# ============================================
# Case execution
# ============================================

class TestRunCase:
    """Tests for exception-to-status mapping"""

    def test_pass_and_fail(self, hermite_2):
        """CheckResult.passed decides the status"""
        passed = run_case(Case('mehta', 'ok', lambda: CheckResult(True, {'x': 1}), hermite_2))
        failed = run_case(Case('mehta', 'bad', lambda: CheckResult(False), hermite_2))
        assert passed.status == STATUS_PASS
        assert passed.details == {'x': 1}
        assert passed.couplings == {'g0': '1', 'g1': '0', 'omega': '1'}
        assert failed.status == STATUS_FAIL

    def test_non_generic(self):
        """A genuine pole is reported, not failed"""
        report = run_case(Case('norms', 'pole', raises(NonGenericParameterError)))
        assert report.status == STATUS_NON_GENERIC
        assert not report.failed

    def test_other_errors_fail(self):
        """Numerical trouble becomes a failed case with the error recorded"""
        report = run_case(Case('spectrum', 'near', raises(SingularPointError)))
        assert report.status == STATUS_FAIL
        assert report.details['error'].startswith('SingularPointError')

    @pytest.mark.parametrize("error", [InvalidParameterError, InternalAssertionError])
    def test_invalid_and_internal_propagate(self, error):
        """Bad input and bugs abort the run"""
        with pytest.raises(error):
            run_case(Case('mehta', 'x', raises(error)))

    def test_report_json_is_stable(self):
        """elapsed appears only with timings"""
        report = CaseReport('mehta', 'x', STATUS_PASS, elapsed=0.25)
        assert 'elapsed' not in json.loads(report.to_json())
        assert json.loads(report.to_json(timings=True))['elapsed'] == 0.25
        assert summarize([report]) == {STATUS_PASS: 1, STATUS_FAIL: 0, STATUS_NON_GENERIC: 0}


# ============================================
# Suite runner
# ============================================

class TestSuiteRunner:
    """Tests for grids and canonical ordering"""

    def test_overrides_narrow_the_grid(self, config):
        """CLI values replace the configured samples"""
        runner = SuiteRunner(config, RunConfig(family='B', n=2, g0=1, g1=0, omega=1, max_weight=1))
        assert runner.params_grid() == [Params('B', 2, 1)]
        assert [tuple(lam) for lam in runner.partitions(Params('B', 2, 1))] == [(0, 0), (1, 0)]

    def test_integer_only_filter(self, config):
        """Half-integer couplings are skipped where the Gram form is needed"""
        runner = SuiteRunner(config, RunConfig(family='A', n=2, g0=Fraction(1, 2)))
        assert runner.params_grid(integer_only=True) == []

    def test_every_suite_builds_cases(self, config):
        """Each suite yields at least one case on a tiny grid"""
        runner = SuiteRunner(config, RunConfig(family='A', n=1, g0=0, omega=1, max_weight=1))
        for suite in SUITES:
            assert runner.cases(suite), suite

    def test_moment_cases_reach_degree_four(self, config):
        """weights-limit checks moments up to degree four"""
        runner = SuiteRunner(config, RunConfig(family='A', n=2, g0=1, omega=1, max_weight=1))
        names = [case.name for case in runner.cases('weights-limit') if case.name.startswith('moment/')]
        assert [name.rsplit('/', 1)[1] for name in names] == ['p0', 'p1', 'p2']

    def test_unknown_suite(self, config):
        """Suite names are validated"""
        with pytest.raises(InvalidParameterError):
            SuiteRunner(config, RunConfig()).cases('everything')

    def test_runs_pass(self, config):
        """A small norms run passes in canonical order"""
        runner = SuiteRunner(config, RunConfig(family='A', n=2, g0=1, omega=1, max_weight=2))
        reports = runner.run('norms')
        assert [r.lam for r in reports] == [[0, 0], [1, 0], [2, 0], [1, 1]]
        assert all(r.status == STATUS_PASS for r in reports)


# ============================================
# Command line
# ============================================

class TestCli:
    """Tests for main()"""

    def test_construct_one_variable(self, capsys, config_arg):
        """x^2 - 1/2 in the monomial basis"""
        assert main(['construct', '--family', 'a', '--lambda', '2'] + config_arg) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record['n'] == 1
        assert record['msym'] == [{'mu': [2], 'coeff': '1'}, {'mu': [0], 'coeff': '-1/2'}]

    def test_construct_free_case(self, capsys, config_arg):
        """g0 = 0, lambda = 0 is the constant 1"""
        assert main(['construct', '--n', '3', '--lambda', '0'] + config_arg) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record['lambda'] == [0, 0, 0]
        assert record['msym'] == [{'mu': [0, 0, 0], 'coeff': '1'}]

    @pytest.mark.parametrize("argv", [
        ['construct', '--lambda', '2', '--g0', '-1'],
        ['construct', '--lambda', '1,2'],
        ['construct', '--n', '1', '--lambda', '2,1'],
        ['construct'],
        ['verify', 'mehta', '--n', '0'],
        ['eval', '--lambda', '1'],
    ])
    def test_invalid_parameters(self, argv, config_arg):
        """Bad input exits with 2"""
        assert main(argv + config_arg) == EXIT_INVALID

    def test_unknown_suite_is_usage_error(self, config_arg):
        """argparse rejects unknown suites"""
        with pytest.raises(SystemExit):
            main(['verify', 'everything'] + config_arg)

    def test_decompose(self, capsys, config_arg):
        """Two harmonic components for lambda = (2,0)"""
        assert main(['decompose', '--lambda', '2,0', '--g0', '1'] + config_arg) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert [term['m'] for term in record['terms']] == [0, 1]
        assert record['terms'][1]['radial'] == ['-2', '1']

    def test_verify_json_is_deterministic(self, capsys, config_arg, single_thread):
        """Two identical runs give byte-identical reports"""
        argv = ['verify', 'normalization', '--family', 'B', '--n', '2', '--g0', '1', '--g1', '1',
                '--max-weight', '2', '--json'] + config_arg
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == first
        records = [json.loads(line) for line in first.splitlines()]
        assert {r['status'] for r in records} == {'pass'}
        assert all('elapsed' not in r for r in records)

    def test_verify_text_summary(self, capsys, config_arg, single_thread):
        """Text mode ends with a summary line"""
        argv = ['verify', 'mehta', '--family', 'A', '--n', '2', '--g0', '1', '--omega', '1'] + config_arg
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "1 cases: 1 passed, 0 failed, 0 non-generic"

    def test_eval_with_residual(self, capsys, tmp_path, config_arg):
        """One record per point with p, psi and the residual"""
        points = tmp_path / 'points.txt'
        points.write_text("0.7\n0.0\n")
        assert main(['eval', '--lambda', '2', '--points', str(points), '--residual'] + config_arg) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert len(records) == 2
        assert records[1]['p'] == pytest.approx(-0.5)
        assert all(r['withinTol'] for r in records)

    def test_eval_marks_bad_rows(self, capsys, tmp_path, config_arg):
        """Non-finite coordinates are reported and fail the run"""
        points = tmp_path / 'points.txt'
        points.write_text("0.5\nnan\n")
        out = tmp_path / 'values.jsonl'
        argv = ['eval', '--lambda', '1', '--points', str(points), '--out', str(out)] + config_arg
        assert main(argv) == EXIT_FAILED
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert 'error' not in records[0]
        assert records[1]['error'] == 'non-finite coordinate'
