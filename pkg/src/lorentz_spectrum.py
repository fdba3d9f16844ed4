"""
LorentzEig - Closed-Form Lorentz Spectrum
Computes and classifies the L-eigenvalues of a 2x2 matrix
"""

import math
from typing import Dict, List, Optional

import numpy as np
from loguru import logger

from src.core import (DEFAULT_TOLERANCE, LEigenvalue, LSpectrum, Mat2,
                      SpectrumError, Tolerance)
from utils.helpers import DEFAULT_CONFIG_PATH, load_config, tolerance_from_config


def _dedupe_sorted(values: List[float], eq_tol: float) -> List[float]:
    result: List[float] = []
    for value in sorted(values):
        if not result or abs(value - result[-1]) > eq_tol:
            result.append(value)
    return result


def standard_eigenvalues(A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> List[float]:
    """
    Real roots of lam^2 - (a+d) lam + (ad - bc)

    A discriminant in [-eq_tol, 0) is treated as a double root; below that
    there are no real roots.

    Args:
        A: Input matrix
        tol: Tolerance policy

    Returns:
        Sorted, deduplicated real roots
    """
    a, b, c, d = A.a, A.b, A.c, A.d
    disc = (a - d) ** 2 + 4.0 * b * c
    if disc < -tol.eq_tol:
        return []
    root = math.sqrt(max(disc, 0.0))
    half_trace = 0.5 * (a + d)
    return _dedupe_sorted([half_trace - 0.5 * root, half_trace + 0.5 * root], tol.eq_tol)


def interior_spectrum(A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> List[float]:
    """
    Interior L-eigenvalues of A

    Only real roots of the characteristic polynomial are candidates. A root
    within eq_tol of a is interior (as a) iff b = 0 and (a = d or
    |a - d| < |c|); any other root lam is interior iff |b| < |a - lam|.
    With b exactly zero the roots are taken as {a, d}.

    Args:
        A: Input matrix
        tol: Tolerance policy

    Returns:
        Sorted, deduplicated interior values (possibly empty)
    """
    a, b, c, d = A.a, A.b, A.c, A.d
    eq = tol.eq_tol
    values: List[float] = []

    a_interior = abs(b) <= eq and (abs(a - d) <= eq or abs(a - d) < abs(c) - eq)
    roots = [a, d] if b == 0.0 else standard_eigenvalues(A, tol)

    for lam in roots:
        if abs(lam - a) <= eq:
            if a_interior:
                values.append(a)
        elif abs(b) < abs(a - lam) - eq:
            values.append(lam)

    return _dedupe_sorted(values, eq)


def boundary_spectrum(A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> List[LEigenvalue]:
    """
    Boundary L-eigenvalues of A with type and strictness flags

    Type +: (a+d+b+c)/2 when a-d <= c-b.  Type -: (a+d-b-c)/2 when a-d <= b-c.
    Non-strict conditions accept with +eq_tol slack; strictness requires
    clearance by eq_tol.

    Args:
        A: Input matrix
        tol: Tolerance policy

    Returns:
        Ascending list; a value of both types appears once with both flags
    """
    a, b, c, d = A.a, A.b, A.c, A.d
    eq = tol.eq_tol
    found: List[LEigenvalue] = []

    plus_gap = (c - b) - (a - d)
    if plus_gap >= -eq:
        found.append(LEigenvalue(value=0.5 * ((a + d) + (b + c)),
                                 boundary_plus=True,
                                 strict_boundary=plus_gap > eq))

    minus_gap = (b - c) - (a - d)
    if minus_gap >= -eq:
        found.append(LEigenvalue(value=0.5 * ((a + d) - (b + c)),
                                 boundary_minus=True,
                                 strict_boundary=minus_gap > eq))

    return list(LSpectrum.from_eigenvalues(found, eq).eigenvalues)


def l_spectrum(A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> LSpectrum:
    """
    Full L-spectrum: interior values united with boundary values

    Args:
        A: Input matrix
        tol: Tolerance policy

    Returns:
        LSpectrum (never empty)

    Raises:
        SpectrumError: the union is empty, which no 2x2 matrix admits
    """
    items = [LEigenvalue(value=v, interior=True) for v in interior_spectrum(A, tol)]
    items.extend(boundary_spectrum(A, tol))
    spectrum = LSpectrum.from_eigenvalues(items, tol.eq_tol)

    if not spectrum.eigenvalues:
        logger.error(f"empty L-spectrum for {A}")
        raise SpectrumError(f"empty L-spectrum computed for {A.to_dict()}")
    if len(spectrum.interior_values()) > 2 or len(spectrum.boundary_values()) > 2:
        raise SpectrumError(f"more than two interior or boundary values for {A.to_dict()}")

    logger.opt(lazy=True).debug("L-spectrum of {}: {}", A.to_dict, spectrum.values)
    return spectrum


def t_conjugate(A: Mat2) -> Mat2:
    """T A T with T = diag(-1, 1): flips the sign of b and c"""
    return Mat2(A.a, -A.b, -A.c, A.d)


def is_standard_eigenvalue(A: Mat2, lam: float, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff |det(A - lam*I)| <= set_tol * max(1, ||A||_F^2)"""
    scale = max(1.0, A.frobenius_norm() ** 2)
    return abs(A.shift(lam).det()) <= tol.set_tol * scale


def l_eigenvector(A: Mat2, lam: float,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[np.ndarray]:
    """
    Normalized L-eigenvector [x1, 1] for an L-eigenvalue of A

    Interior vectors are preferred; boundary values give [1, 1] (type +) or
    [-1, 1] (type -).

    Args:
        A: Input matrix
        lam: Candidate L-eigenvalue
        tol: Tolerance policy

    Returns:
        Eigenvector, or None if lam is not an L-eigenvalue of A
    """
    spectrum = l_spectrum(A, tol)
    item = spectrum.find(lam, tol.set_tol)
    if item is None:
        return None

    a, b, c, d = A.a, A.b, A.c, A.d
    if item.interior:
        lam = item.value
        if abs(a - lam) > tol.eq_tol:
            x1 = -b / (a - lam)
        elif abs(c) > tol.eq_tol:
            x1 = (lam - d) / c
        else:
            x1 = 0.0
        return np.array([x1, 1.0])

    return np.array([1.0, 1.0]) if item.boundary_plus else np.array([-1.0, 1.0])


def has_two_strict_boundary(A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff A has two distinct strict boundary L-eigenvalues"""
    boundary = boundary_spectrum(A, tol)
    return len(boundary) == 2 and all(e.strict_boundary for e in boundary)


def determinant_at_boundary(A: Mat2) -> float:
    """det(A - lam*I) at any boundary value: ((b-c)^2 - (a-d)^2) / 4"""
    return 0.25 * ((A.b - A.c) ** 2 - (A.a - A.d) ** 2)


class LorentzSpectrumSolver:
    """Closed-form L-spectrum computation driven by the configured tolerances"""

    def __init__(self, config_path: str = DEFAULT_CONFIG_PATH,
                 tol: Optional[Tolerance] = None):
        """
        Initialize solver

        Args:
            config_path: Path to configuration file
            tol: Explicit tolerance (overrides the config file)
        """
        self.config = load_config(config_path) if tol is None else {}
        self.tol = tol or tolerance_from_config(self.config)

    def solve(self, A: Mat2) -> LSpectrum:
        return l_spectrum(A, self.tol)

    def describe(self, A: Mat2) -> Dict:
        """
        Spectrum with per-value nature, standard-eigenvalue status and vector

        Args:
            A: Input matrix

        Returns:
            Dictionary with the matrix, the spectrum entries and tolerances
        """
        spectrum = self.solve(A)
        entries = []
        for item in spectrum:
            vector = l_eigenvector(A, item.value, self.tol)
            entries.append({
                **item.to_dict(),
                'standard': is_standard_eigenvalue(A, item.value, self.tol),
                'eigenvector': vector.tolist() if vector is not None else None
            })
        return {
            'matrix': A.to_dict(),
            'spectrum': entries,
            'tolerance': self.tol.to_dict()
        }

    def solve_batch(self, coords: np.ndarray) -> List[LSpectrum]:
        """
        Solve many matrices

        Args:
            coords: Array of shape (n, 4) with rows (a, b, c, d)

        Returns:
            Spectra in input order
        """
        return [self.solve(Mat2.from_coords(row)) for row in coords]
