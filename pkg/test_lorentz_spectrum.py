#!/usr/bin/env python3
"""
Tests for the closed-form L-spectrum: golden spectra of the basis matrices
and identity suites over seeded random matrices
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.core import (DEFAULT_TOLERANCE, E11, E12, E21, E22, H, IDENTITY, ZERO, Mat2,
                      antitrace, trace)
from src.lorentz_spectrum import (LorentzSpectrumSolver, boundary_spectrum,
                                  determinant_at_boundary, has_two_strict_boundary,
                                  interior_spectrum, is_standard_eigenvalue, l_eigenvector,
                                  l_spectrum, standard_eigenvalues, t_conjugate)
from src.oracle import oracle_spectrum, verify_eigenpair

TOL = DEFAULT_TOLERANCE

# Quarter-integer entries are exact in binary, so ties between the
# classification inequalities occur exactly and often.
quarter = st.integers(min_value=-20, max_value=20).map(lambda k: k / 4.0)
matrices = st.builds(Mat2, quarter, quarter, quarter, quarter)


@pytest.fixture(scope="module")
def random_batch():
    rng = np.random.default_rng(20240611)
    return [Mat2.from_coords(row) for row in rng.uniform(-5.0, 5.0, size=(10_000, 4))]


def as_tuples(spectrum):
    return [(round(e.value, 12), e.interior, e.boundary_plus, e.boundary_minus,
             e.strict_boundary) for e in spectrum]


def test_golden_spectra():
    assert as_tuples(l_spectrum(E11)) == [(0.0, True, False, False, False)]
    assert as_tuples(l_spectrum(E12)) == [(-0.5, False, False, True, True)]
    assert as_tuples(l_spectrum(E21)) == [(0.0, True, False, False, False),
                                          (0.5, False, True, False, True)]
    assert as_tuples(l_spectrum(E22)) == [(0.5, False, True, True, True),
                                          (1.0, True, False, False, False)]
    assert as_tuples(l_spectrum(H)) == [(-1.0, False, False, True, False),
                                        (1.0, False, True, False, False)]
    assert as_tuples(l_spectrum(IDENTITY)) == [(1.0, True, True, True, False)]
    assert as_tuples(l_spectrum(ZERO)) == [(0.0, True, True, True, False)]


def test_interior_spectrum_examples():
    assert interior_spectrum(E22) == pytest.approx([1.0])
    assert interior_spectrum(H) == []
    assert interior_spectrum(IDENTITY) == pytest.approx([1.0])
    assert interior_spectrum(Mat2(0, 0.5, 2, 0)) == pytest.approx([-1.0, 1.0])


@pytest.mark.parametrize("A", [
    Mat2(0.0, 1e-10, 100.0, -1e-3),
    Mat2(0.0, -1e-10, 100.0, -1e-3),
    Mat2(1.0, 1e-10, 1.0, 1.0),
])
def test_tiny_nonzero_b_uses_true_roots(A):
    interior = interior_spectrum(A, TOL)
    assert len(interior) == 2
    roots = standard_eigenvalues(A, TOL)
    assert interior == pytest.approx(roots, abs=TOL.eq_tol)
    assert all(abs(lam - A.a) > TOL.eq_tol for lam in interior)

    spectrum = l_spectrum(A, TOL)
    assert spectrum.matches(oracle_spectrum(A), TOL, by_nature=True)
    for lam in spectrum.values():
        assert verify_eigenpair(A, lam, l_eigenvector(A, lam, TOL), TOL)


def test_boundary_spectrum_examples():
    assert boundary_spectrum(E11) == []
    (item,) = boundary_spectrum(E21)
    assert item.value == pytest.approx(0.5) and item.boundary_plus and item.strict_boundary

    (item,) = boundary_spectrum(IDENTITY)
    assert item.boundary_plus and item.boundary_minus and not item.strict_boundary

    low, high = boundary_spectrum(E22 + H)
    assert low.value == pytest.approx(-0.5) and low.boundary_minus and low.strict_boundary
    assert high.value == pytest.approx(1.5) and high.boundary_plus and high.strict_boundary


def test_spectrum_of_conjugated_hyperbolic_matrix():
    spectrum = l_spectrum(Mat2(0, 0.5, 2, 0))
    assert spectrum.values() == pytest.approx([-1.0, 1.0, 1.25])
    assert spectrum.interior_values() == pytest.approx([-1.0, 1.0])
    assert spectrum.plus_values() == pytest.approx([1.25])


def test_standard_eigenvalues_and_clamping():
    assert standard_eigenvalues(E12) == pytest.approx([0.0])
    assert standard_eigenvalues(Mat2(0, -1, 1, 0)) == []
    # discriminant -1e-12 is within eq_tol of zero
    assert standard_eigenvalues(Mat2(0, 1e-6, -2.5e-7, 0)) == pytest.approx([0.0])


def test_t_conjugate_examples():
    assert t_conjugate(H) == -H
    assert t_conjugate(IDENTITY) == IDENTITY
    assert t_conjugate(Mat2(1, 2, 3, 4)) == Mat2(1, -2, -3, 4)


def test_is_standard_eigenvalue_examples():
    assert is_standard_eigenvalue(IDENTITY, 1.0)
    assert not is_standard_eigenvalue(E21, 0.5)
    assert is_standard_eigenvalue(H, 1.0)


def test_l_eigenvector():
    np.testing.assert_allclose(l_eigenvector(E22, 1.0), [0.0, 1.0])
    np.testing.assert_allclose(l_eigenvector(E21, 0.5), [1.0, 1.0])
    np.testing.assert_allclose(l_eigenvector(E12, -0.5), [-1.0, 1.0])
    np.testing.assert_allclose(l_eigenvector(Mat2(0, 0.5, 2, 0), 1.0), [0.5, 1.0])
    assert l_eigenvector(E11, 0.5) is None


def test_two_strict_boundary_values():
    assert has_two_strict_boundary(E22 + H)
    assert not has_two_strict_boundary(H)
    assert not has_two_strict_boundary(E21)
    assert boundary_spectrum(-(E22 + H)) == []


def test_solver_describe():
    report = LorentzSpectrumSolver(tol=TOL).describe(E21)
    assert [e['value'] for e in report['spectrum']] == pytest.approx([0.0, 0.5])
    assert report['spectrum'][0]['standard'] is True
    assert report['spectrum'][1]['standard'] is False
    assert report['spectrum'][1]['eigenvector'] == [1.0, 1.0]
    assert report['tolerance']['eq_tol'] == TOL.eq_tol


def test_reflection_of_interior_values(random_batch):
    for A in random_batch:
        values = interior_spectrum(A)
        reflected = interior_spectrum(-A)
        assert values == pytest.approx([-v for v in reversed(reflected)], abs=TOL.eq_tol)


def test_boundary_sum_and_difference(random_batch):
    checked = 0
    for A in random_batch:
        spectrum = l_spectrum(A)
        if spectrum.plus_values() and spectrum.minus_values():
            plus, minus = spectrum.plus_values()[0], spectrum.minus_values()[0]
            assert plus + minus == pytest.approx(trace(A), abs=TOL.eq_tol)
            assert abs(plus - minus) == pytest.approx(abs(antitrace(A)), abs=TOL.eq_tol)
            checked += 1
    assert checked > 0


def test_determinant_at_boundary_values(random_batch):
    for A in random_batch:
        expected = determinant_at_boundary(A)
        for lam in l_spectrum(A).boundary_values():
            assert A.shift(lam).det() == pytest.approx(expected, abs=TOL.set_tol)


def test_non_strict_boundary_value_is_standard():
    rng = np.random.default_rng(5)
    for a, b, d in rng.uniform(-5.0, 5.0, size=(200, 3)):
        # c - b = a - d puts the type + value on the tie
        A = Mat2(a, b, b + (a - d), d)
        (lam,) = [e.value for e in l_spectrum(A) if e.boundary_plus]
        assert not l_spectrum(A).find(lam, TOL.eq_tol).strict_boundary
        assert is_standard_eigenvalue(A, lam)


def test_t_conjugation_swaps_types(random_batch):
    for A in random_batch:
        spectrum = l_spectrum(A)
        conjugated = l_spectrum(t_conjugate(A))
        assert conjugated.flags_match(spectrum)
        assert conjugated.plus_values() == pytest.approx(spectrum.minus_values())
        assert conjugated.minus_values() == pytest.approx(spectrum.plus_values())


def test_interior_values_are_standard_eigenvalues(random_batch):
    for A in random_batch:
        for lam in l_spectrum(A).interior_values():
            assert is_standard_eigenvalue(A, lam)
            assert verify_eigenpair(A, lam, l_eigenvector(A, lam))


def test_spectrum_never_empty():
    rng = np.random.default_rng(99)
    for row in rng.uniform(-10.0, 10.0, size=(100_000, 4)):
        assert len(l_spectrum(Mat2.from_coords(row))) > 0


@settings(max_examples=400, derandomize=True, deadline=None)
@given(matrices)
def test_spectrum_properties_on_exact_ties(A):
    spectrum = l_spectrum(A)
    assert len(spectrum) > 0

    conjugated = l_spectrum(t_conjugate(A))
    assert conjugated.plus_values() == pytest.approx(spectrum.minus_values())
    assert conjugated.minus_values() == pytest.approx(spectrum.plus_values())

    for lam in spectrum.interior_values():
        assert is_standard_eigenvalue(A, lam)

    for item in spectrum:
        vector = l_eigenvector(A, item.value)
        assert verify_eigenpair(A, item.value, vector)

    if has_two_strict_boundary(A):
        assert boundary_spectrum(-A) == []


def main():
    """Run all tests"""
    print("=" * 60)
    print("LorentzEig L-Spectrum Tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))


if __name__ == "__main__":
    main()
