#!/usr/bin/env python3
"""
Tests for the Pareto bridge: support enumeration and the rotation
correspondence with L-spectra
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.core import DEFAULT_TOLERANCE, E21, E22, H, IDENTITY, ZERO, Mat2, values_match
from src.lorentz_spectrum import l_spectrum
from src.pareto_bridge import (ROTATION_R, ParetoBridge, lorentz_to_pareto,
                               pareto_eigenpairs_2x2, pareto_spectrum_2x2,
                               pareto_to_lorentz)
from utils.helpers import random_cone_points

TOL = DEFAULT_TOLERANCE

quarter = st.integers(min_value=-20, max_value=20).map(lambda k: k / 4.0)
matrices = st.builds(Mat2, quarter, quarter, quarter, quarter)


def same_values(left, right, tol=TOL.set_tol):
    return values_match(left, right, tol)


def test_rotation_is_orthogonal_and_maps_rays_to_axes():
    assert ROTATION_R.orthogonality_defect() <= TOL.eq_tol
    np.testing.assert_allclose(ROTATION_R.apply([1.0, 1.0]), [math.sqrt(2.0), 0.0], atol=1e-15)
    np.testing.assert_allclose(ROTATION_R.apply([-1.0, 1.0]), [0.0, math.sqrt(2.0)], atol=1e-15)
    np.testing.assert_allclose(ROTATION_R.apply_inverse(ROTATION_R.apply([0.3, 2.0])),
                               [0.3, 2.0])
    with pytest.raises(ValueError):
        ROTATION_R.matrix[0, 0] = 2.0


def test_rotation_maps_cone_onto_orthant():
    scale = 4.0
    cone = random_cone_points(np.random.default_rng(11), 1000, scale=scale)
    images = ROTATION_R.apply(cone.T)
    assert np.all(images >= -TOL.cone_tol * scale)

    orthant = np.random.default_rng(12).uniform(0.0, scale, size=(1000, 2))
    back = ROTATION_R.apply_inverse(orthant.T)
    assert np.all(np.abs(back[0]) <= back[1] + TOL.cone_tol * scale)


def test_lorentz_to_pareto_examples():
    np.testing.assert_allclose(lorentz_to_pareto(IDENTITY).to_array(), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(lorentz_to_pareto(ZERO).to_array(), np.zeros((2, 2)))
    np.testing.assert_allclose(lorentz_to_pareto(H).to_array(), [[1.0, 0.0], [0.0, -1.0]],
                               atol=1e-15)
    np.testing.assert_allclose(lorentz_to_pareto(E21).to_array(),
                               [[0.5, -0.5], [0.5, -0.5]], atol=1e-15)


def test_pareto_to_lorentz_inverts_rotation():
    A = Mat2(1.5, -2.0, 0.25, 3.0)
    np.testing.assert_allclose(pareto_to_lorentz(lorentz_to_pareto(A)).coords(), A.coords(),
                               atol=1e-14)


def test_pareto_spectrum_examples():
    assert pareto_spectrum_2x2(IDENTITY) == pytest.approx([1.0])
    assert pareto_spectrum_2x2(Mat2(0, -1, -1, 0)) == pytest.approx([-1.0])
    assert same_values(pareto_spectrum_2x2(lorentz_to_pareto(E21)), [0.0, 0.5])
    assert same_values(pareto_spectrum_2x2(lorentz_to_pareto(H)), [-1.0, 1.0])
    assert same_values(pareto_spectrum_2x2(lorentz_to_pareto(E22)), [0.5, 1.0])


def test_pareto_eigenvectors_are_nonnegative():
    B = Mat2(0, -1, -1, 0)
    (pair,) = pareto_eigenpairs_2x2(B)
    lam, x = pair
    assert lam == pytest.approx(-1.0)
    np.testing.assert_allclose(x, [1.0 / math.sqrt(2.0)] * 2)
    y = B.shift(lam).to_array() @ x
    assert np.all(y >= -TOL.cone_tol) and abs(x @ y) <= TOL.set_tol


def test_bridge_compare():
    report = ParetoBridge(tol=TOL).compare(E22)
    assert report['agreement'] is True
    assert report['pareto'] == pytest.approx([0.5, 1.0])


def test_correspondence_on_random_matrices():
    bridge = ParetoBridge(tol=TOL)
    rng = np.random.default_rng(161803)
    for row in rng.uniform(-5.0, 5.0, size=(10_000, 4)):
        A = Mat2.from_coords(row)
        assert bridge.spectrum(A) == pytest.approx(l_spectrum(A, TOL).values(),
                                                   abs=TOL.set_tol), row


@settings(max_examples=300, derandomize=True, deadline=None)
@given(matrices)
def test_correspondence_on_exact_ties(A):
    assert ParetoBridge(tol=TOL).compare(A)['agreement']


def main():
    """Run all tests"""
    print("=" * 60)
    print("LorentzEig Pareto Bridge Tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))


if __name__ == "__main__":
    main()
