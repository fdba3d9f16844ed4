"""
LorentzEig - Pareto Bridge
Pareto eigenvalues of 2x2 matrices by support enumeration, and the rotation
carrying the planar Lorentz cone onto the nonnegative orthant
"""

import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.core import DEFAULT_TOLERANCE, Mat2, Tolerance, values_match
from src.lorentz_spectrum import l_spectrum, standard_eigenvalues
from utils.helpers import DEFAULT_CONFIG_PATH, load_config, tolerance_from_config


class RotationR:
    """
    Clockwise rotation by pi/4

    Sends the boundary rays [1, 1] and [-1, 1] of the Lorentz cone to the
    positive x- and y-axes.
    """

    angle = -math.pi / 4

    def __init__(self):
        cos_t, sin_t = math.cos(self.angle), math.sin(self.angle)
        self.matrix = np.array([[cos_t, -sin_t], [sin_t, cos_t]])
        self.matrix.setflags(write=False)

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)

    def apply_inverse(self, x) -> np.ndarray:
        return self.matrix.T @ np.asarray(x, dtype=float)

    def orthogonality_defect(self) -> float:
        """||R R^T - I||_F"""
        return float(np.linalg.norm(self.matrix @ self.matrix.T - np.eye(2)))


ROTATION_R = RotationR()


def lorentz_to_pareto(A: Mat2) -> Mat2:
    """R A R^T"""
    R = ROTATION_R.matrix
    return Mat2.from_array(R @ A.to_array() @ R.T)


def pareto_to_lorentz(B: Mat2) -> Mat2:
    """R^T B R"""
    R = ROTATION_R.matrix
    return Mat2.from_array(R.T @ B.to_array() @ R)


def _positive_null_vector(B: Mat2, lam: float, tol: Tolerance) -> Optional[np.ndarray]:
    """Unit null vector of B - lam*I with both components > eq_tol, if any"""
    M = B.shift(lam).to_array()
    scale = 1.0 + B.frobenius_norm()
    if np.max(np.abs(M)) <= tol.eq_tol * scale:
        # every vector is an eigenvector
        return np.array([1.0, 1.0]) / math.sqrt(2.0)

    row = M[0] if np.linalg.norm(M[0]) >= np.linalg.norm(M[1]) else M[1]
    vector = np.array([-row[1], row[0]])
    vector /= np.linalg.norm(vector)
    if vector.sum() < 0:
        vector = -vector
    if np.all(vector > tol.eq_tol):
        return vector
    return None


def pareto_eigenpairs_2x2(B: Mat2,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> List[Tuple[float, np.ndarray]]:
    """
    Pareto eigenpairs by enumerating supports J of the eigenvector

    J = {i}: lam = B_ii with vector e_i, accepted iff B_ji >= -cone_tol.
    J = {1, 2}: real standard eigenvalues with a strictly positive eigenvector.

    Args:
        B: Matrix
        tol: Tolerance policy

    Returns:
        (value, eigenvector) pairs in support order
    """
    arr = B.to_array()
    pairs: List[Tuple[float, np.ndarray]] = []

    for i in (0, 1):
        j = 1 - i
        if arr[j, i] >= -tol.cone_tol:
            pairs.append((float(arr[i, i]), np.eye(2)[i]))

    for lam in standard_eigenvalues(B, tol):
        vector = _positive_null_vector(B, lam, tol)
        if vector is not None:
            pairs.append((lam, vector))

    logger.opt(lazy=True).debug("Pareto eigenpairs of {}: {}", B.to_dict,
                                lambda: [p[0] for p in pairs])
    return pairs


def pareto_spectrum_2x2(B: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> List[float]:
    """
    Pareto spectrum of B

    Args:
        B: Matrix
        tol: Tolerance policy

    Returns:
        Sorted list, values within eq_tol merged
    """
    values: List[float] = []
    for value in sorted(lam for lam, _ in pareto_eigenpairs_2x2(B, tol)):
        if not values or abs(value - values[-1]) > tol.eq_tol:
            values.append(value)
    return values


class ParetoBridge:
    """Cross-checks L-spectra against Pareto spectra of the rotated matrix"""

    def __init__(self, config_path: str = DEFAULT_CONFIG_PATH,
                 tol: Optional[Tolerance] = None):
        """
        Initialize bridge

        Args:
            config_path: Path to configuration file
            tol: Explicit tolerance (overrides the config file)
        """
        self.config = load_config(config_path) if tol is None else {}
        self.tol = tol or tolerance_from_config(self.config)

    def spectrum(self, A: Mat2) -> List[float]:
        """Pareto spectrum of R A R^T"""
        return pareto_spectrum_2x2(lorentz_to_pareto(A), self.tol)

    def compare(self, A: Mat2) -> Dict:
        """
        Compare the Pareto spectrum of R A R^T with the L-spectrum of A

        Args:
            A: Matrix

        Returns:
            Dictionary with both value lists and the agreement flag
        """
        pareto = self.spectrum(A)
        lorentz = l_spectrum(A, self.tol).values()
        agree = values_match(pareto, lorentz, self.tol.set_tol)
        return {'pareto': pareto, 'lorentz': lorentz, 'agreement': agree}
