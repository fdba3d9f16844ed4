"""
LorentzEig - Core Types
Matrices, tolerances and L-eigenvalue containers shared by every module
"""

import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

logger.disable("src")


class LorentzEigError(Exception):
    """Base class for all LorentzEig errors"""


class InvalidMatrixError(LorentzEigError):
    """Matrix input is malformed, non-finite, or outside the map's space"""


class InvalidVectorError(LorentzEigError):
    """Vector input is malformed or zero where a nonzero vector is required"""


class InvalidMapError(LorentzEigError):
    """Linear map is malformed or does not act on the requested space"""


class ConfigurationError(LorentzEigError):
    """Tolerance or oracle settings violate their invariants"""


class SpectrumError(LorentzEigError):
    """Internal inconsistency in a computed spectrum"""


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix [[a, b], [c, d]]"""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            raw = getattr(self, name)
            try:
                value = float(raw)
            except (TypeError, ValueError) as e:
                raise InvalidMatrixError(f"entry {name}={raw!r} is not a number") from e
            if not math.isfinite(value):
                raise InvalidMatrixError(f"entry {name}={raw!r} is not finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, array) -> 'Mat2':
        arr = np.asarray(array, dtype=float)
        if arr.shape != (2, 2):
            raise InvalidMatrixError(f"expected a 2x2 array, got shape {arr.shape}")
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    @classmethod
    def from_coords(cls, coords) -> 'Mat2':
        """Build from coordinates (a, b, c, d) in the basis (E11, E12, E21, E22)"""
        vec = np.asarray(coords, dtype=float).reshape(-1)
        if vec.shape != (4,):
            raise InvalidMatrixError(f"expected 4 coordinates, got {vec.shape[0]}")
        return cls(*vec)

    @classmethod
    def from_dict(cls, data: Dict) -> 'Mat2':
        if not isinstance(data, dict):
            raise InvalidMatrixError("matrix JSON must be an object with keys a, b, c, d")
        missing = [k for k in ('a', 'b', 'c', 'd') if k not in data]
        if missing:
            raise InvalidMatrixError(f"matrix JSON missing keys: {', '.join(missing)}")
        if any(isinstance(data[k], bool) for k in ('a', 'b', 'c', 'd')):
            raise InvalidMatrixError("matrix entries must be numbers")
        return cls(data['a'], data['b'], data['c'], data['d'])

    @classmethod
    def from_json(cls, text: str) -> 'Mat2':
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise InvalidMatrixError(f"malformed matrix JSON: {e}") from e

    @classmethod
    def identity(cls) -> 'Mat2':
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def zero(cls) -> 'Mat2':
        return cls(0.0, 0.0, 0.0, 0.0)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def coords(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def to_dict(self) -> Dict[str, float]:
        return {'a': self.a, 'b': self.b, 'c': self.c, 'd': self.d}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def frobenius_norm(self) -> float:
        return math.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2)

    def transpose(self) -> 'Mat2':
        return Mat2(self.a, self.c, self.b, self.d)

    def shift(self, lam: float) -> 'Mat2':
        """A - lam*I"""
        return Mat2(self.a - lam, self.b, self.c, self.d - lam)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return abs(self.b - self.c) <= tol

    def __add__(self, other: 'Mat2') -> 'Mat2':
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: 'Mat2') -> 'Mat2':
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> 'Mat2':
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, k: float) -> 'Mat2':
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    __rmul__ = __mul__


# Basis of M2 in coordinate order, plus the symmetric generator of S2
E11 = Mat2(1.0, 0.0, 0.0, 0.0)
E12 = Mat2(0.0, 1.0, 0.0, 0.0)
E21 = Mat2(0.0, 0.0, 1.0, 0.0)
E22 = Mat2(0.0, 0.0, 0.0, 1.0)
H = Mat2(0.0, 1.0, 1.0, 0.0)  # E12 + E21
IDENTITY = Mat2.identity()
ZERO = Mat2.zero()


def mat2_new(a: float, b: float, c: float, d: float) -> Mat2:
    """
    Create the matrix [[a, b], [c, d]]

    Raises:
        InvalidMatrixError: any entry is NaN or infinite
    """
    return Mat2(a, b, c, d)


def trace(A: Mat2) -> float:
    """Sum of the diagonal entries, a + d"""
    return A.a + A.d


def antitrace(A: Mat2) -> float:
    """Sum of the anti-diagonal entries, b + c"""
    return A.b + A.c


@dataclass(frozen=True)
class Tolerance:
    """
    Tolerance policy

    eq_tol:   scalar equality and clearance of strict inequalities
    set_tol:  matching of spectra produced by different computations
    cone_tol: slack for cone membership
    """

    eq_tol: float = 1e-9
    set_tol: float = 1e-6
    cone_tol: float = 1e-9

    def __post_init__(self):
        if not (self.eq_tol > 0 and self.set_tol > 0 and self.cone_tol >= 0):
            raise ConfigurationError(
                f"tolerances must be positive (cone_tol may be 0): {self}")
        if self.eq_tol > self.set_tol:
            raise ConfigurationError(
                f"eq_tol ({self.eq_tol:g}) must not exceed set_tol ({self.set_tol:g})")

    def to_dict(self) -> Dict[str, float]:
        return {'eq_tol': self.eq_tol, 'set_tol': self.set_tol, 'cone_tol': self.cone_tol}


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class LEigenvalue:
    """An L-eigenvalue with its nature flags"""

    value: float
    interior: bool = False
    boundary_plus: bool = False
    boundary_minus: bool = False
    strict_boundary: bool = False

    def __post_init__(self):
        if not (self.interior or self.boundary_plus or self.boundary_minus):
            raise SpectrumError(f"L-eigenvalue {self.value} carries no nature flag")
        if self.strict_boundary and not self.boundary:
            raise SpectrumError(f"L-eigenvalue {self.value} is strict but not a boundary value")

    @property
    def boundary(self) -> bool:
        return self.boundary_plus or self.boundary_minus

    def merge(self, other: 'LEigenvalue') -> 'LEigenvalue':
        """Combine flags of a coinciding value (keeps this value)"""
        return LEigenvalue(
            value=self.value,
            interior=self.interior or other.interior,
            boundary_plus=self.boundary_plus or other.boundary_plus,
            boundary_minus=self.boundary_minus or other.boundary_minus,
            strict_boundary=self.strict_boundary or other.strict_boundary
        )

    def with_types_swapped(self) -> 'LEigenvalue':
        return LEigenvalue(self.value, self.interior, self.boundary_minus,
                           self.boundary_plus, self.strict_boundary)

    def to_dict(self) -> Dict:
        return {
            'value': self.value,
            'interior': self.interior,
            'boundary_plus': self.boundary_plus,
            'boundary_minus': self.boundary_minus,
            'strict_boundary': self.strict_boundary
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'LEigenvalue':
        return cls(
            value=float(data['value']),
            interior=bool(data.get('interior', False)),
            boundary_plus=bool(data.get('boundary_plus', False)),
            boundary_minus=bool(data.get('boundary_minus', False)),
            strict_boundary=bool(data.get('strict_boundary', False))
        )


def values_match(left: List[float], right: List[float], tol: float) -> bool:
    """Every value on each side has a partner within tol on the other"""
    return (all(any(abs(x - y) <= tol for y in right) for x in left)
            and all(any(abs(x - y) <= tol for x in left) for y in right))


@dataclass(frozen=True)
class LSpectrum:
    """
    Set of L-eigenvalues, sorted ascending

    Values within eq_tol are one element; their flags are OR-combined.
    """

    eigenvalues: Tuple[LEigenvalue, ...] = ()

    @classmethod
    def from_eigenvalues(cls,
                         items: Iterable[LEigenvalue],
                         eq_tol: float = DEFAULT_TOLERANCE.eq_tol) -> 'LSpectrum':
        """
        Sort and deduplicate

        Ties are ordered type - before type +; deduplication walks left to
        right and compares against the first value of the current group.

        Args:
            items: L-eigenvalues in any order
            eq_tol: Merge distance

        Returns:
            LSpectrum
        """
        ordered = sorted(items, key=lambda e: (e.value, not e.boundary_minus))
        merged: List[LEigenvalue] = []
        for item in ordered:
            if merged and abs(item.value - merged[-1].value) <= eq_tol:
                merged[-1] = merged[-1].merge(item)
            else:
                merged.append(item)
        return cls(tuple(merged))

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    def values(self) -> List[float]:
        return [e.value for e in self.eigenvalues]

    def interior_values(self) -> List[float]:
        return [e.value for e in self.eigenvalues if e.interior]

    def boundary_values(self) -> List[float]:
        return [e.value for e in self.eigenvalues if e.boundary]

    def plus_values(self) -> List[float]:
        return [e.value for e in self.eigenvalues if e.boundary_plus]

    def minus_values(self) -> List[float]:
        return [e.value for e in self.eigenvalues if e.boundary_minus]

    def find(self, value: float, tol: float) -> Optional[LEigenvalue]:
        for item in self.eigenvalues:
            if abs(item.value - value) <= tol:
                return item
        return None

    def matches(self, other: 'LSpectrum', tol: Tolerance = DEFAULT_TOLERANCE,
                by_nature: bool = False) -> bool:
        """
        Compare value sets within set_tol

        Args:
            other: Spectrum to compare with
            tol: Tolerance policy
            by_nature: Also compare interior and boundary subsets separately

        Returns:
            True if the spectra agree
        """
        if not values_match(self.values(), other.values(), tol.set_tol):
            return False
        if by_nature:
            return (values_match(self.interior_values(), other.interior_values(), tol.set_tol)
                    and values_match(self.boundary_values(), other.boundary_values(),
                                      tol.set_tol))
        return True

    def flags_match(self, other: 'LSpectrum', tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """Same values (pairwise in order) with identical interior/boundary flags"""
        if len(self) != len(other):
            return False
        for mine, theirs in zip(self.eigenvalues, other.eigenvalues):
            if abs(mine.value - theirs.value) > tol.set_tol:
                return False
            if mine.interior != theirs.interior or mine.boundary != theirs.boundary:
                return False
        return True

    def with_types_swapped(self) -> 'LSpectrum':
        return LSpectrum(tuple(e.with_types_swapped() for e in self.eigenvalues))

    def to_list(self) -> List[Dict]:
        return [e.to_dict() for e in self.eigenvalues]

    @classmethod
    def from_list(cls, data: List[Dict], eq_tol: float = DEFAULT_TOLERANCE.eq_tol) -> 'LSpectrum':
        return cls.from_eigenvalues((LEigenvalue.from_dict(d) for d in data), eq_tol)


@dataclass(frozen=True)
class BoundaryCertificate:
    """Witness (x, s) with (A - lam*I)[x, 1] = s[-x, 1], x in {-1, +1}, s >= 0"""

    x: float
    s: float

    def __post_init__(self):
        if self.x not in (-1.0, 1.0):
            raise SpectrumError(f"certificate x must be -1 or +1, got {self.x}")
        if self.s < 0:
            raise SpectrumError(f"certificate slack must be nonnegative, got {self.s}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, 1.0])

    def to_dict(self) -> Dict[str, float]:
        return {'x': self.x, 's': self.s}
