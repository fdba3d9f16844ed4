"""
LorentzEig - Definitional Oracle
Verifies L-eigenpairs from the complementarity conditions and finds the
L-spectrum by direct search, independent of the closed-form classification
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.core import (DEFAULT_TOLERANCE, BoundaryCertificate, ConfigurationError,
                      InvalidVectorError, LEigenvalue, LSpectrum, Mat2, Tolerance)
from utils.helpers import DEFAULT_CONFIG_PATH, load_config, tolerance_from_config


@dataclass(frozen=True)
class OracleConfig:
    """Search settings for the oracle"""

    grid_points: int = 2001
    lambda_pad: float = 1.0
    residual_tol: float = 1e-9

    def __post_init__(self):
        if self.grid_points < 101 or self.grid_points % 2 == 0:
            raise ConfigurationError(
                f"grid_points must be odd and >= 101, got {self.grid_points}")
        if self.lambda_pad < 0:
            raise ConfigurationError(f"lambda_pad must be >= 0, got {self.lambda_pad}")
        if self.residual_tol <= 0:
            raise ConfigurationError(f"residual_tol must be > 0, got {self.residual_tol}")

    @classmethod
    def from_config(cls, config: dict) -> 'OracleConfig':
        section = config.get('oracle', {}) or {}
        return cls(
            grid_points=int(section.get('grid_points', cls.grid_points)),
            lambda_pad=float(section.get('lambda_pad', cls.lambda_pad)),
            residual_tol=float(section.get('residual_tol', cls.residual_tol))
        )


DEFAULT_ORACLE_CONFIG = OracleConfig()

# Certificate relations (A - lam*I)[x, 1] = s[-x, 1] rewritten as
# lam - s = a + x*b and lam + s = x*c + d
_CERTIFICATE_SYSTEM = np.array([[1.0, -1.0], [1.0, 1.0]])


def _in_cone(v: np.ndarray, slack: float) -> bool:
    return abs(v[0]) <= v[1] + slack


def verify_eigenpair(A: Mat2, lam: float, x,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Check x in K, (A - lam*I)x in K and x^T (A - lam*I) x = 0

    Cone slack is cone_tol scaled by the size of the problem; the
    complementarity residual is bounded by set_tol (1 + ||A||_F) ||x||^2.

    Args:
        A: Matrix
        lam: Candidate L-eigenvalue
        x: Candidate L-eigenvector (length 2)
        tol: Tolerance policy

    Returns:
        True if (lam, x) is an L-eigenpair of A

    Raises:
        InvalidVectorError: x is not a nonzero 2-vector
    """
    vec = np.asarray(x, dtype=float).reshape(-1)
    if vec.shape != (2,) or not np.all(np.isfinite(vec)):
        raise InvalidVectorError(f"expected a finite 2-vector, got {x!r}")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise InvalidVectorError("L-eigenvector must be nonzero")

    norm_a = A.frobenius_norm()
    y = A.shift(lam).to_array() @ vec
    slack = tol.cone_tol * (1.0 + norm_a + abs(lam)) * norm

    if not _in_cone(vec, tol.cone_tol * norm):
        return False
    if not _in_cone(y, slack):
        return False
    return abs(float(vec @ y)) <= tol.set_tol * (1.0 + norm_a) * norm ** 2


def _certificate_for(A: Mat2, lam: float, x: float,
                     tol: Tolerance) -> Optional[Tuple[BoundaryCertificate, float]]:
    """Certificate for a fixed sign x, with the unclamped slack"""
    if x > 0:
        s_first, s_second = lam - A.a - A.b, A.c + A.d - lam
    else:
        s_first, s_second = lam - A.a + A.b, A.d - A.c - lam
    if abs(s_first - s_second) > tol.set_tol:
        return None
    s = 0.5 * (s_first + s_second)
    if s < -tol.cone_tol:
        return None
    clamped = 0.0 if abs(s) <= tol.cone_tol else max(s, 0.0)
    return BoundaryCertificate(x=float(x), s=clamped), s


def boundary_certificate(A: Mat2, lam: float,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[BoundaryCertificate]:
    """
    Witness that lam is a boundary L-eigenvalue of A

    Tries x = +1 (s = lam-a-b = c+d-lam) then x = -1 (s = lam-a+b = d-c-lam).

    Args:
        A: Matrix
        lam: Candidate boundary value
        tol: Tolerance policy

    Returns:
        The first certificate found, or None
    """
    for x in (1.0, -1.0):
        found = _certificate_for(A, lam, x, tol)
        if found is not None:
            return found[0]
    return None


class LorentzOracle:
    """Brute-force L-spectrum finder used as ground truth for the closed forms"""

    def __init__(self, config_path: str = DEFAULT_CONFIG_PATH,
                 cfg: Optional[OracleConfig] = None,
                 tol: Optional[Tolerance] = None):
        """
        Initialize oracle

        Args:
            config_path: Path to configuration file
            cfg: Explicit search settings (override the config file)
            tol: Explicit tolerance (overrides the config file)
        """
        self.config = load_config(config_path) if cfg is None or tol is None else {}
        self.cfg = cfg or OracleConfig.from_config(self.config)
        self.tol = tol or tolerance_from_config(self.config)
        self.grid = np.linspace(-1.0, 1.0, self.cfg.grid_points)

    def _search_bound(self, A: Mat2) -> float:
        """Gershgorin radius plus padding"""
        radius = max(abs(A.a) + abs(A.b), abs(A.c) + abs(A.d))
        return radius + self.cfg.lambda_pad

    def _characteristic_roots(self, A: Mat2) -> List[float]:
        t = A.a + A.d
        disc = t * t - 4.0 * A.det()
        if disc < -self.tol.eq_tol:
            return []
        r = math.sqrt(max(disc, 0.0))
        roots = [0.5 * (t - r), 0.5 * (t + r)]
        if abs(roots[1] - roots[0]) <= self.tol.eq_tol:
            return [roots[0]]
        return roots

    def _scan_family(self, A: Mat2, lam: float) -> Optional[float]:
        """
        Grid scan of c*x1 + (d - lam) = 0 over |x1| < 1

        Used when the first row vanishes and the second gives no unique x1.
        The smallest |x1| wins, so the result does not depend on scan order.
        """
        residual = np.abs(A.c * self.grid + (A.d - lam))
        scale = 1.0 + abs(A.c) + abs(A.d - lam)
        mask = (np.abs(self.grid) < 1.0 - self.tol.eq_tol) & (residual <= self.cfg.residual_tol * scale)
        if not np.any(mask):
            return None
        candidates = self.grid[mask]
        return float(candidates[np.argmin(np.abs(candidates))])

    def _interior_vector(self, A: Mat2, lam: float) -> Optional[np.ndarray]:
        """Solve (A - lam*I)[x1, 1] = 0 for x1"""
        eq = self.tol.eq_tol
        if abs(A.a - lam) > eq:
            x1 = -A.b / (A.a - lam)
        elif abs(A.b) > eq:
            return None
        elif abs(A.c) > eq:
            x1 = (lam - A.d) / A.c
        else:
            x1 = self._scan_family(A, lam)
            if x1 is None:
                return None
        if abs(x1) >= 1.0 - eq:
            return None
        return np.array([x1, 1.0])

    def eigenpairs(self, A: Mat2) -> List[Tuple[LEigenvalue, np.ndarray]]:
        """
        All L-eigenvalues found by direct search, each with a verified vector

        Args:
            A: Matrix

        Returns:
            List of (flagged value, eigenvector) pairs, unmerged
        """
        bound = self._search_bound(A)
        pairs: List[Tuple[LEigenvalue, np.ndarray]] = []

        for lam in self._characteristic_roots(A):
            vector = self._interior_vector(A, lam)
            if vector is None:
                continue
            if abs(lam) > bound or not verify_eigenpair(A, lam, vector, self.tol):
                logger.warning(f"interior candidate {lam} of {A.to_dict()} failed verification")
                continue
            pairs.append((LEigenvalue(value=lam, interior=True), vector))

        for x in (1.0, -1.0):
            rhs = np.array([A.a + x * A.b, x * A.c + A.d])
            lam, _ = np.linalg.solve(_CERTIFICATE_SYSTEM, rhs)
            lam = float(lam)
            found = _certificate_for(A, lam, x, self.tol)
            if found is None:
                continue
            certificate, raw_slack = found
            if abs(lam) > bound or not verify_eigenpair(A, lam, certificate.vector, self.tol):
                logger.warning(f"boundary candidate {lam} of {A.to_dict()} failed verification")
                continue
            pairs.append((LEigenvalue(value=lam,
                                      boundary_plus=x > 0,
                                      boundary_minus=x < 0,
                                      strict_boundary=2.0 * raw_slack > self.tol.eq_tol),
                          certificate.vector))

        return pairs

    def spectrum(self, A: Mat2) -> LSpectrum:
        return LSpectrum.from_eigenvalues((item for item, _ in self.eigenpairs(A)),
                                          self.tol.eq_tol)

    def report(self, A: Mat2) -> Dict:
        """Oracle findings as a dictionary"""
        return {
            'matrix': A.to_dict(),
            'eigenpairs': [{**item.to_dict(), 'eigenvector': vector.tolist()}
                           for item, vector in self.eigenpairs(A)],
            'grid_points': self.cfg.grid_points
        }


def oracle_spectrum(A: Mat2, cfg: OracleConfig = DEFAULT_ORACLE_CONFIG,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> LSpectrum:
    """
    L-spectrum of A by definitional search

    Args:
        A: Matrix
        cfg: Search settings
        tol: Tolerance policy

    Returns:
        Flagged LSpectrum
    """
    return LorentzOracle(cfg=cfg, tol=tol).spectrum(A)


def oracle_eigenpairs(A: Mat2, cfg: OracleConfig = DEFAULT_ORACLE_CONFIG,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> List[Tuple[LEigenvalue, np.ndarray]]:
    return LorentzOracle(cfg=cfg, tol=tol).eigenpairs(A)
