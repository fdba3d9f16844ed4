#!/usr/bin/env python3
"""
Tests for the command-line interface: JSON output, table output and exit codes
"""

import json
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import EXIT_DISAGREE, EXIT_OK, EXIT_USAGE, run
from src.pareto_bridge import ParetoBridge
from src.preserver import make_preserver, preserver_to_linmap

CONFIG = str(Path(__file__).parent / "config" / "config.yaml")


def run_json(capsys, *argv):
    code = run(['--config', CONFIG, '--json', *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_spectrum_json_golden(capsys):
    code, report = run_json(capsys, 'spectrum', '0,0;1,0')
    assert code == EXIT_OK
    assert [e['value'] for e in report['spectrum']] == [0.0, 0.5]
    assert report['spectrum'][0]['interior'] is True
    assert report['spectrum'][1]['boundary_plus'] is True
    assert report['spectrum'][1]['strict_boundary'] is True

    code, report = run_json(capsys, 'spectrum', '{"a": 0, "b": 1, "c": 1, "d": 0}')
    assert [e['value'] for e in report['spectrum']] == [-1.0, 1.0]
    assert report['spectrum'][0]['boundary_minus'] is True


def test_spectrum_reads_file(capsys, tmp_path):
    path = tmp_path / "e22.json"
    path.write_text('{"a": 0, "b": 0, "c": 0, "d": 1}', encoding='utf-8')
    code, report = run_json(capsys, 'spectrum', str(path))
    assert code == EXIT_OK
    assert [e['value'] for e in report['spectrum']] == [0.5, 1.0]


@pytest.mark.parametrize("matrix", ['nan,0;0,0', '{"a": 1, "b": 2}', '1,2;3', 'x,0;0,0'])
def test_spectrum_rejects_bad_input(capsys, matrix):
    code, payload = run_json(capsys, 'spectrum', matrix)
    assert code == EXIT_USAGE
    assert 'error' in payload


def test_spectrum_table(capsys):
    code = run(['--config', CONFIG, 'spectrum', '0,0;1,0'])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("L-spectrum of [[0, 0], [1, 0]]")
    assert "interior" in out and "boundary +, strict" in out


def test_verify_single_matrices(capsys):
    code, report = run_json(capsys, 'verify', '0,0;0,1')
    assert code == EXIT_OK
    assert report['agreement'] == {'oracle': True, 'pareto': True, 'all': True}

    code, report = run_json(capsys, 'verify', '0,0;0,0')
    assert code == EXIT_OK
    assert report['pareto'] == [0.0]


def test_verify_random_batch(capsys):
    code, summary = run_json(capsys, 'verify', '--random', '100', '--seed', '42')
    assert code == EXIT_OK
    assert (summary['seed'], summary['count'], summary['agreed']) == (42, 100, 100)
    assert summary['disagreements'] == []


def test_tiny_off_diagonal_entry(capsys):
    code, report = run_json(capsys, 'spectrum', '0,1e-10;100,-0.001')
    assert code == EXIT_OK
    assert sum(e['interior'] for e in report['spectrum']) == 2

    code, report = run_json(capsys, 'verify', '0,1e-10;100,-0.001')
    assert code == EXIT_OK
    assert report['agreement']['oracle'] is True


def test_verify_batch_table_prints_disagreeing_spectra(capsys, monkeypatch):
    monkeypatch.setattr(ParetoBridge, 'spectrum', lambda self, A: [42.0])
    code = run(['--config', CONFIG, 'verify', '--random', '3', '--seed', '1'])
    out = capsys.readouterr().out
    assert code == EXIT_DISAGREE
    assert "3 disagreement(s)" in out
    assert out.count("Closed form") == 3 and out.count("Oracle") == 3
    assert out.count("Pareto       ['42']") == 3


def test_verify_usage_errors(capsys):
    assert run(['--config', CONFIG, 'verify']) == EXIT_USAGE
    assert run(['--config', CONFIG, 'verify', '0,0;0,1', '--random', '3']) == EXIT_USAGE
    assert run(['--config', CONFIG, 'verify', '--random', '0']) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_preserver_make(capsys):
    code, payload = run_json(capsys, 'preserver', 'make', '--kind', 'P', '--beta', '0')
    assert code == EXIT_OK
    assert payload['coeffs'] == [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0],
                                 [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    assert payload['alpha'] == 1.0 and payload['space'] == 'M2'

    code, payload = run_json(capsys, 'preserver', 'make', '--kind', 'Q', '--beta', '0',
                             '--space', 's2')
    assert code == EXIT_OK
    assert payload['coeffs'] == [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]


def test_preserver_make_errors(capsys):
    code, payload = run_json(capsys, 'preserver', 'make', '--kind', 'R', '--beta', '1')
    assert code == EXIT_USAGE and 'error' in payload
    code, payload = run_json(capsys, 'preserver', 'make', '--kind', 'P', '--beta', '0.5',
                             '--space', 'S2')
    assert code == EXIT_USAGE and 'error' in payload


def test_make_then_classify(capsys, tmp_path):
    code, payload = run_json(capsys, 'preserver', 'make', '--kind', 'P', '--beta', '0.75')
    path = tmp_path / "map.json"
    path.write_text(json.dumps(payload), encoding='utf-8')

    code, report = run_json(capsys, 'preserver', 'classify', str(path))
    assert code == EXIT_OK
    assert report['form']['kind'] == 'P'
    assert report['form']['beta'] == pytest.approx(0.75)


def test_classify_builtin_map(capsys):
    code, report = run_json(capsys, 'preserver', 'classify', '--map', 'transpose')
    assert code == EXIT_DISAGREE
    assert report['form'] is None and report['failed_step'] == 'e21_form'

    code, report = run_json(capsys, 'preserver', 'classify', '--map', 'transpose',
                            '--space', 'S2')
    assert code == EXIT_OK
    assert report['space'] == 'S2' and report['form']['kind'] == 'P'


def test_check_falsifies_builtin(capsys):
    code, verdict = run_json(capsys, 'preserver', 'check', '--map', 'diag12')
    assert code == EXIT_DISAGREE
    assert verdict['status'] == 'falsified' and verdict['seed'] == 42
    assert set(verdict['witness']) == {'index', 'matrix', 'spectrum', 'image', 'image_spectrum'}


def test_check_accepts_q_form(capsys):
    coeffs = json.dumps(preserver_to_linmap(make_preserver('Q', 2.0)).to_dict())
    code, verdict = run_json(capsys, 'preserver', 'check', coeffs, '--trials', '200')
    assert code == EXIT_OK
    assert verdict == {'status': 'consistent', 'trials_run': 200, 'seed': 42}


def test_check_table_and_usage(capsys):
    code = run(['--config', CONFIG, 'preserver', 'check', '--map', 'identity',
                '--trials', '50'])
    assert code == EXIT_OK
    assert "consistent over 50 trials" in capsys.readouterr().out
    assert run(['--config', CONFIG, 'preserver', 'check']) == EXIT_USAGE
    assert run(['--config', CONFIG, 'preserver', 'check', '--map', 'shear']) == EXIT_USAGE


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as excinfo:
        run(['--json', '--table', 'spectrum', '0,0;0,0'])
    assert excinfo.value.code == EXIT_USAGE


def main():
    """Run all tests"""
    print("=" * 60)
    print("LorentzEig CLI Tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))


if __name__ == "__main__":
    main()
