#!/usr/bin/env python3
"""
Tests for configuration loading, environment overrides and the helper
utilities shared by the CLI and the library
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from loguru import logger

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.core import ConfigurationError, InvalidMatrixError, Mat2, Tolerance
from src.lorentz_spectrum import l_spectrum
from utils.helpers import (colorize, configure_logging, format_number, format_time,
                           load_config, parse_matrix, random_cone_points, random_matrices,
                           read_json_argument, round_sig, tolerance_from_config)

CONFIG = str(Path(__file__).parent / "config" / "config.yaml")


def test_default_config_sections():
    config = load_config(CONFIG)
    for section in ('tolerance', 'oracle', 'sampler', 'verification', 'output', 'logging'):
        assert section in config
    assert config['sampler']['seed'] == 42


def test_missing_or_malformed_config_gives_defaults(tmp_path):
    assert load_config(str(tmp_path / "missing.yaml")) == {}
    broken = tmp_path / "broken.yaml"
    broken.write_text("tolerance: [1, 2\n", encoding='utf-8')
    assert load_config(str(broken)) == {}


def test_tolerance_from_config(monkeypatch):
    monkeypatch.delenv('LORENTZ_EIG_TOL', raising=False)
    assert tolerance_from_config({}) == Tolerance()
    assert tolerance_from_config(load_config(CONFIG)) == Tolerance()
    tol = tolerance_from_config({'tolerance': {'set_tol': 1e-5}})
    assert tol.set_tol == 1e-5 and tol.eq_tol == 1e-9


def test_tolerance_environment_override(monkeypatch):
    monkeypatch.setenv('LORENTZ_EIG_TOL', '1e-8')
    tol = tolerance_from_config({})
    assert (tol.eq_tol, tol.set_tol) == (1e-8, 1e-6)

    monkeypatch.setenv('LORENTZ_EIG_TOL', '1e-4')
    tol = tolerance_from_config({})
    assert tol.eq_tol == tol.set_tol == 1e-4


def test_invalid_tolerance_config(monkeypatch):
    monkeypatch.delenv('LORENTZ_EIG_TOL', raising=False)
    with pytest.raises(ConfigurationError):
        tolerance_from_config({'tolerance': {'eq_tol': 1e-3}})
    with pytest.raises(ConfigurationError):
        tolerance_from_config({'tolerance': {'cone_tol': -1.0}})


def test_parse_matrix_forms():
    assert parse_matrix('0,1;1,0') == Mat2(0, 1, 1, 0)
    assert parse_matrix(' 1.5, -2 ; 0.25, 3 ') == Mat2(1.5, -2, 0.25, 3)
    assert parse_matrix('{"a": 1, "b": 0, "c": 0, "d": 1}') == Mat2(1, 0, 0, 1)
    for bad in ('1,2,3;4,5', '1,2', '{"a": 1', 'inf,0;0,0'):
        with pytest.raises(InvalidMatrixError):
            parse_matrix(bad)


def test_read_json_argument(tmp_path):
    assert read_json_argument('{"x": [1, 2]}') == {'x': [1, 2]}
    path = tmp_path / "value.json"
    path.write_text('[1, 2, 3]', encoding='utf-8')
    assert read_json_argument(str(path)) == [1, 2, 3]
    with pytest.raises(ValueError):
        read_json_argument('{"x": ')


def test_number_formatting():
    assert round_sig(-0.0) == 0.0
    assert math.copysign(1.0, round_sig(-0.0)) == 1.0
    assert round_sig(1.0 / 3.0, 3) == 0.333
    assert format_number(0.5) == '0.5'
    assert format_number(1.0 + 1e-15) == '1'


def test_format_time():
    assert format_time(0.25) == '250.0ms'
    assert format_time(5.0) == '5.0s'
    assert format_time(120.0) == '2.0m'


def test_colorize():
    assert colorize('ok', 'green', enabled=False) == 'ok'
    colored = colorize('ok', 'green')
    assert colored.startswith('\x1b[') and 'ok' in colored


def test_random_matrices():
    rows = random_matrices(np.random.default_rng(0), 200, 2.0, symmetric=True)
    assert rows.shape == (200, 4)
    np.testing.assert_array_equal(rows[:, 1], rows[:, 2])
    assert np.all(np.abs(rows) <= 2.0)
    np.testing.assert_array_equal(random_matrices(np.random.default_rng(0), 5),
                                  random_matrices(np.random.default_rng(0), 5))


def test_random_cone_points():
    points = random_cone_points(np.random.default_rng(0), 100, scale=3.0)
    assert points.shape == (100, 2)
    assert np.all(np.abs(points[:, 0]) <= points[:, 1])
    assert np.all(points[:, 1] <= 3.0)


def test_configure_logging_writes_file(tmp_path, monkeypatch):
    monkeypatch.delenv('LORENTZ_EIG_LOG_LEVEL', raising=False)
    log_file = tmp_path / "logs" / "lorentz_eig.log"
    configure_logging({'logging': {'level': 'ERROR', 'file': str(log_file)}})
    logger.debug("written to the file sink only")
    l_spectrum(Mat2(0, 0, 1, 0))
    configure_logging({})
    text = log_file.read_text(encoding='utf-8')
    assert "written to the file sink only" in text
    assert "L-spectrum of {'a': 0.0, 'b': 0.0, 'c': 1.0, 'd': 0.0}" in text


def main():
    """Run all tests"""
    print("=" * 60)
    print("LorentzEig Configuration Tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))


if __name__ == "__main__":
    main()
