"""
LorentzEig - L-Spectrum Preservers
Constructs the conjugations A -> P A P^-1 / Q A Q^-1 that preserve the
L-spectrum on M2 and S2, applies linear maps in coordinates, recognizes
preservers structurally and falsifies non-preservers by sampling
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from loguru import logger
from tqdm import tqdm

from src.core import (DEFAULT_TOLERANCE, E11, E12, E21, E22, H, IDENTITY,
                      InvalidMapError, InvalidMatrixError, LSpectrum, Mat2, Tolerance)
from src.lorentz_spectrum import l_eigenvector, l_spectrum, t_conjugate
from src.oracle import verify_eigenpair
from utils.helpers import (DEFAULT_CONFIG_PATH, load_config, random_matrices,
                           tolerance_from_config)


BASIS_M2 = "E11,E12,E21,E22"
BASIS_S2 = "E11,E22,E12+E21"

T_MATRIX = np.diag([-1.0, 1.0])

TRACE_ROW = np.array([1.0, 0.0, 0.0, 1.0])
ANTITRACE_ROW = np.array([0.0, 1.0, 1.0, 0.0])


class PreserverKind(str, Enum):
    P_FORM = "P"
    Q_FORM = "Q"

    @classmethod
    def parse(cls, kind: Union[str, 'PreserverKind']) -> 'PreserverKind':
        if isinstance(kind, cls):
            return kind
        key = str(kind).strip().upper().replace('_FORM', '')
        for member in cls:
            if member.value == key:
                return member
        raise InvalidMapError(f"unknown preserver kind {kind!r} (expected P or Q)")


@dataclass(frozen=True)
class PreserverForm:
    """
    Conjugation by P = [[alpha, beta], [beta, alpha]] (P form) or by
    Q = T P = [[-alpha, -beta], [beta, alpha]] (Q form), alpha = sqrt(1 + beta^2)
    """

    kind: PreserverKind
    beta: float
    alpha: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'kind', PreserverKind.parse(self.kind))
        beta = float(self.beta)
        if not math.isfinite(beta):
            raise InvalidMapError(f"beta must be finite, got {self.beta!r}")
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'alpha', math.sqrt(1.0 + beta * beta))

    def hyperbolic_part(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.beta, self.alpha]])

    def conjugator(self) -> np.ndarray:
        """P, or Q = T P"""
        P = self.hyperbolic_part()
        return P if self.kind is PreserverKind.P_FORM else T_MATRIX @ P

    def conjugator_inverse(self) -> np.ndarray:
        """P^-1 = [[alpha, -beta], [-beta, alpha]] since det P = 1; Q^-1 = P^-1 T"""
        P_inv = np.array([[self.alpha, -self.beta], [-self.beta, self.alpha]])
        return P_inv if self.kind is PreserverKind.P_FORM else P_inv @ T_MATRIX

    def apply(self, A: Mat2) -> Mat2:
        return Mat2.from_array(self.conjugator() @ A.to_array() @ self.conjugator_inverse())

    def to_dict(self) -> Dict:
        return {'kind': self.kind.value, 'alpha': self.alpha, 'beta': self.beta}


def make_preserver(kind: Union[str, PreserverKind], beta: float) -> PreserverForm:
    """
    Build a preserver form

    Args:
        kind: 'P' or 'Q'
        beta: Off-diagonal parameter; alpha = sqrt(1 + beta^2)

    Returns:
        PreserverForm
    """
    return PreserverForm(kind=kind, beta=beta)


def invert_preserver(f: PreserverForm) -> PreserverForm:
    """Inverse map: P(beta)^-1 = P(-beta); Q forms are involutions"""
    if f.kind is PreserverKind.P_FORM:
        return PreserverForm(PreserverKind.P_FORM, -f.beta)
    return f


def compose_preservers(outer: PreserverForm, inner: PreserverForm) -> PreserverForm:
    """
    Form of A -> outer(inner(A))

    Uses P(b) T = T P(-b) to collect the T factors, then the hyperbolic
    addition law beta = beta1*alpha2 + alpha1*beta2.
    """
    beta_outer = -outer.beta if inner.kind is PreserverKind.Q_FORM else outer.beta
    beta = beta_outer * inner.alpha + outer.alpha * inner.beta
    t_count = (outer.kind is PreserverKind.Q_FORM) + (inner.kind is PreserverKind.Q_FORM)
    kind = PreserverKind.Q_FORM if t_count % 2 else PreserverKind.P_FORM
    return PreserverForm(kind, beta)


class _LinMap:
    """Linear map on a space of 2x2 matrices, stored as a coordinate matrix"""

    dim = 0
    basis = ""

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (self.dim, self.dim):
            raise InvalidMapError(
                f"{type(self).__name__} needs a {self.dim}x{self.dim} matrix, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidMapError("map coefficients must be finite")
        arr.setflags(write=False)
        self.coeffs = arr

    def to_dict(self) -> Dict:
        return {'basis': self.basis, 'coeffs': self.coeffs.tolist()}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.coeffs.tolist()})"


class LinMapM2(_LinMap):
    """Map on M2 acting on coordinates (a, b, c, d) in the basis (E11, E12, E21, E22)"""

    dim = 4
    basis = BASIS_M2

    def apply(self, A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> Mat2:
        return Mat2.from_coords(self.coeffs @ A.coords())

    def compose(self, inner: 'LinMapM2') -> 'LinMapM2':
        return LinMapM2(self.coeffs @ inner.coeffs)


def s2_coords(A: Mat2) -> np.ndarray:
    """Coordinates (a, d, b) in the basis (E11, E22, E12+E21)"""
    return np.array([A.a, A.d, 0.5 * (A.b + A.c)])


def from_s2_coords(coords) -> Mat2:
    a, d, b = np.asarray(coords, dtype=float)
    return Mat2(a, b, b, d)


class LinMapS2(_LinMap):
    """Map on S2 acting on coordinates (a, d, b) in the basis (E11, E22, E12+E21)"""

    dim = 3
    basis = BASIS_S2

    def apply(self, A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> Mat2:
        if not A.is_symmetric(tol.eq_tol):
            raise InvalidMatrixError(f"S2 map applied to asymmetric matrix {A.to_dict()}")
        return from_s2_coords(self.coeffs @ s2_coords(A))

    def compose(self, inner: 'LinMapS2') -> 'LinMapS2':
        return LinMapS2(self.coeffs @ inner.coeffs)


LinMap = Union[LinMapM2, LinMapS2]


def linmap_from_dict(data: Dict) -> LinMap:
    """
    Decode {"basis": ..., "coeffs": [...]} into the matching map type

    Raises:
        InvalidMapError: unknown basis or malformed coefficients
    """
    if not isinstance(data, dict) or 'coeffs' not in data:
        raise InvalidMapError("map JSON must be an object with 'basis' and 'coeffs'")
    basis = str(data.get('basis', BASIS_M2)).replace(' ', '')
    if basis == BASIS_M2:
        return LinMapM2(data['coeffs'])
    if basis == BASIS_S2:
        return LinMapS2(data['coeffs'])
    raise InvalidMapError(f"unknown basis {basis!r} (expected {BASIS_M2!r} or {BASIS_S2!r})")


def apply_map(m: LinMapM2, A: Mat2) -> Mat2:
    """Image of A under a map on M2"""
    return m.apply(A)


def apply_map_s2(m: LinMapS2, A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> Mat2:
    """
    Image of a symmetric A under a map on S2

    Raises:
        InvalidMatrixError: A is not symmetric within eq_tol
    """
    return m.apply(A, tol)


def compose_linmaps(outer: LinMap, inner: LinMap) -> LinMap:
    """Coefficient matrix of outer after inner"""
    if type(outer) is not type(inner):
        raise InvalidMapError("cannot compose maps on different spaces")
    return outer.compose(inner)


def preserver_to_linmap(f: PreserverForm) -> LinMapM2:
    """
    Coordinate matrix of A -> C A C^-1 on M2

    For row-major coordinates vec(C A D) = (C kron D^T) vec(A).
    """
    return LinMapM2(np.kron(f.conjugator(), f.conjugator_inverse().T))


def restrict_to_s2(m: LinMapM2, tol: Tolerance = DEFAULT_TOLERANCE) -> LinMapS2:
    """
    Restrict a map on M2 to S2

    Raises:
        InvalidMapError: the map sends some symmetric basis matrix out of S2
    """
    columns = []
    for name, B in (('E11', E11), ('E22', E22), ('E12+E21', H)):
        image = m.apply(B)
        if not image.is_symmetric(tol.set_tol * max(1.0, image.frobenius_norm())):
            raise InvalidMapError(f"map does not send {name} into S2: {image.to_dict()}")
        columns.append(s2_coords(image))
    return LinMapS2(np.column_stack(columns))


def preserver_to_linmap_s2(f: PreserverForm, tol: Tolerance = DEFAULT_TOLERANCE) -> LinMapS2:
    """
    Coordinate matrix of the preserver on S2

    Raises:
        InvalidMapError: beta != 0 (the conjugation leaves S2)
    """
    if abs(f.beta) > tol.eq_tol:
        raise InvalidMapError(f"preservers on S2 need beta = 0, got beta = {f.beta:g}")
    return restrict_to_s2(preserver_to_linmap(f), tol)


def conjugation_map(C) -> LinMapM2:
    """A -> C A C^-1 for an invertible C"""
    C = np.asarray(C, dtype=float)
    try:
        C_inv = np.linalg.inv(C)
    except np.linalg.LinAlgError as e:
        raise InvalidMapError(f"conjugating matrix is singular: {C.tolist()}") from e
    return LinMapM2(np.kron(C, C_inv.T))


def transpose_map() -> LinMapM2:
    """A -> A^T"""
    return LinMapM2(np.eye(4)[[0, 2, 1, 3]])


def rotation_conjugation_map(theta: float) -> LinMapM2:
    """Conjugation by the rotation of angle theta"""
    c, s = math.cos(theta), math.sin(theta)
    return conjugation_map([[c, -s], [s, c]])


def trace_shift_map() -> LinMapM2:
    """A -> A + tr(A) E12"""
    coeffs = np.eye(4)
    coeffs[1] += TRACE_ROW
    return LinMapM2(coeffs)


def builtin_map(name: str) -> LinMapM2:
    """
    Named maps used as necessity evidence

    Args:
        name: 'identity', 'transpose', 'diag12', 'trace-shift' or 'rotation:<theta>'

    Returns:
        LinMapM2

    Raises:
        InvalidMapError: unknown name
    """
    if name.startswith('rotation:'):
        try:
            return rotation_conjugation_map(float(name.split(':', 1)[1]))
        except ValueError as e:
            raise InvalidMapError(f"bad rotation angle in {name!r}") from e
    factories: Dict[str, Callable[[], LinMapM2]] = {
        'identity': lambda: LinMapM2(np.eye(4)),
        'transpose': transpose_map,
        'diag12': lambda: conjugation_map(np.diag([1.0, 2.0])),
        'trace-shift': trace_shift_map
    }
    if name not in factories:
        raise InvalidMapError(
            f"unknown map {name!r} (expected one of {', '.join(factories)}, rotation:<theta>)")
    return factories[name]()


@dataclass(frozen=True)
class PreserverVerdict:
    """Outcome of sampling a map for spectrum preservation"""

    falsified: bool
    trials_run: int
    seed: int
    witness: Optional[Mat2] = None
    witness_index: Optional[int] = None
    witness_spectrum: Optional[LSpectrum] = None
    image: Optional[Mat2] = None
    image_spectrum: Optional[LSpectrum] = None

    @property
    def status(self) -> str:
        return 'falsified' if self.falsified else 'consistent'

    def to_dict(self) -> Dict:
        result = {'status': self.status, 'trials_run': self.trials_run, 'seed': self.seed}
        if self.falsified:
            result['witness'] = {
                'index': self.witness_index,
                'matrix': self.witness.to_dict(),
                'spectrum': self.witness_spectrum.to_list(),
                'image': self.image.to_dict(),
                'image_spectrum': self.image_spectrum.to_list()
            }
        return result


def sample_test_preserver(m: LinMap,
                          trials: int,
                          tol: Tolerance = DEFAULT_TOLERANCE,
                          seed: int = 42,
                          entry_range: float = 5.0,
                          progress: bool = False) -> PreserverVerdict:
    """
    Falsification test: compare L-spectra of A and m(A) on random matrices

    Entries are uniform in [-entry_range, entry_range]; S2 maps get
    symmetric samples. The reported witness is the lowest-index failure.

    Args:
        m: Map on M2 or S2
        trials: Number of random matrices (>= 1)
        tol: Tolerance policy
        seed: Generator seed (recorded in the verdict)
        entry_range: Half-width of the entry distribution
        progress: Show a tqdm progress bar

    Returns:
        PreserverVerdict
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(seed)
    coords = random_matrices(rng, trials, entry_range, symmetric=isinstance(m, LinMapS2))

    for index, row in enumerate(tqdm(coords, desc="Sampling", disable=not progress)):
        A = Mat2.from_coords(row)
        image = m.apply(A, tol)
        spectrum, image_spectrum = l_spectrum(A, tol), l_spectrum(image, tol)
        if not spectrum.matches(image_spectrum, tol):
            logger.info(f"map falsified at trial {index}: {spectrum.values()} -> "
                        f"{image_spectrum.values()}")
            return PreserverVerdict(True, index + 1, seed, A, index, spectrum,
                                    image, image_spectrum)

    logger.info(f"map consistent over {trials} trials (seed {seed})")
    return PreserverVerdict(False, trials, seed)


def _m2_diagnostics(m: LinMapM2, tol: Tolerance) -> Dict:
    M = m.coeffs
    scale = max(1.0, float(np.max(np.abs(M))))
    atol = tol.set_tol * scale

    def close(x, y) -> bool:
        return bool(np.allclose(x, y, rtol=0.0, atol=atol))

    steps: Dict[str, Optional[bool]] = {name: None for name in (
        'identity', 'bijective', 'trace', 'antitrace', 'hyperbolic_image',
        'e11_form', 'e21_form', 'singular', 'match')}
    report = {'space': 'M2', 'steps': steps, 'failed_step': None,
              'epsilon': None, 'form': None}

    def fail(step: str) -> Dict:
        steps[step] = False
        report['failed_step'] = step
        logger.debug(f"preserver recognition failed at step '{step}'")
        return report

    if not close(M @ IDENTITY.coords(), IDENTITY.coords()):
        return fail('identity')
    steps['identity'] = True

    if abs(np.linalg.det(M)) <= tol.eq_tol:
        return fail('bijective')
    steps['bijective'] = True

    if not close(TRACE_ROW @ M, TRACE_ROW):
        return fail('trace')
    steps['trace'] = True

    if close(ANTITRACE_ROW @ M, ANTITRACE_ROW):
        epsilon = 1
    elif close(ANTITRACE_ROW @ M, -ANTITRACE_ROW):
        epsilon = -1
    else:
        return fail('antitrace')
    steps['antitrace'] = True
    report['epsilon'] = epsilon

    if not close(M @ H.coords(), epsilon * H.coords()):
        return fail('hyperbolic_image')
    steps['hyperbolic_image'] = True

    # with epsilon = -1 the map is T (P . P^-1) T; undo T before reading P
    def untwisted(B: Mat2) -> Mat2:
        image = m.apply(B)
        return image if epsilon > 0 else t_conjugate(image)

    # P E11 P^-1 = [[alpha^2, -alpha*beta], [alpha*beta, -beta^2]]
    img11 = untwisted(E11)
    if img11.a < 1.0 - atol:
        return fail('e11_form')
    alpha = math.sqrt(max(img11.a, 1.0))
    beta = img11.c / alpha
    if not close([img11.b, img11.d], [-alpha * beta, -beta * beta]):
        return fail('e11_form')
    steps['e11_form'] = True

    # P E21 P^-1 = [[alpha*beta, -beta^2], [alpha^2, -alpha*beta]]
    img21 = untwisted(E21)
    if not close(img21.coords(), [alpha * beta, -beta * beta, alpha * alpha, -alpha * beta]):
        return fail('e21_form')
    steps['e21_form'] = True

    if abs(m.apply(E11 + E21).det()) > tol.set_tol * scale * scale:
        return fail('singular')
    steps['singular'] = True

    form = PreserverForm(PreserverKind.P_FORM if epsilon > 0 else PreserverKind.Q_FORM, beta)
    if not close(M, preserver_to_linmap(form).coeffs):
        return fail('match')
    steps['match'] = True
    report['form'] = form
    return report


def _s2_diagnostics(m: LinMapS2, tol: Tolerance) -> Dict:
    M = m.coeffs
    atol = tol.set_tol * max(1.0, float(np.max(np.abs(M))))

    def close(x, y) -> bool:
        return bool(np.allclose(x, y, rtol=0.0, atol=atol))

    identity = np.array([1.0, 1.0, 0.0])
    steps: Dict[str, Optional[bool]] = {name: None for name in (
        'identity', 'bijective', 'trace', 'e11_image', 'e22_image',
        'hyperbolic_image', 'match')}
    report = {'space': 'S2', 'steps': steps, 'failed_step': None,
              'epsilon': None, 'form': None}

    checks = [
        ('identity', lambda: close(M @ identity, identity)),
        ('bijective', lambda: abs(np.linalg.det(M)) > tol.eq_tol),
        ('trace', lambda: close(identity @ M, identity)),
        ('e11_image', lambda: close(M[:, 0], [1.0, 0.0, 0.0])),
        ('e22_image', lambda: close(M[:, 1], [0.0, 1.0, 0.0])),
        ('hyperbolic_image', lambda: close(np.abs(M[:, 2]), [0.0, 0.0, 1.0])),
    ]
    for name, check in checks:
        if not check():
            steps[name] = False
            report['failed_step'] = name
            return report
        steps[name] = True

    epsilon = 1 if M[2, 2] > 0 else -1
    report['epsilon'] = epsilon
    form = PreserverForm(PreserverKind.P_FORM if epsilon > 0 else PreserverKind.Q_FORM, 0.0)
    if not close(M, preserver_to_linmap_s2(form, tol).coeffs):
        steps['match'] = False
        report['failed_step'] = 'match'
        return report
    steps['match'] = True
    report['form'] = form
    return report


def preserver_diagnostics(m: LinMap, tol: Tolerance = DEFAULT_TOLERANCE) -> Dict:
    """
    Structural recognition pipeline, step by step

    M2 steps: identity (phi(I) = I), bijective, trace preserved on the basis,
    antitrace preserved up to a global sign epsilon, phi(E12+E21) =
    epsilon(E12+E21), the E11 and E21 image forms (read alpha, beta), phi(E11+E21)
    singular, and a final match against the recovered form. S2 steps: identity,
    bijective, trace, E11 and E22 fixed, E12+E21 -> +/-(E12+E21), match.

    Args:
        m: Map on M2 or S2
        tol: Tolerance policy

    Returns:
        Dictionary with per-step results (None = not reached), the first
        failed step, epsilon and the recovered PreserverForm (or None)
    """
    if isinstance(m, LinMapS2):
        return _s2_diagnostics(m, tol)
    return _m2_diagnostics(m, tol)


def classify_preserver(m: LinMapM2, tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[PreserverForm]:
    """
    Recognize A -> P A P^-1 or A -> Q A Q^-1 from the coefficients of m

    Returns:
        The recovered form, or None if m is not a preserver
    """
    return preserver_diagnostics(m, tol)['form']


def classify_preserver_s2(m: LinMapS2,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[PreserverForm]:
    """Recognize a preserver on S2 (only beta = 0 forms exist)"""
    return _s2_diagnostics(m, tol)['form']


def nature_check(f: PreserverForm, A: Mat2, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    True iff interior and boundary value sets of A and f(A) each match

    Each L-eigenpair of A must also carry over to f(A) through the
    conjugator, with interior eigenvectors landing inside the cone.
    """
    spectrum = l_spectrum(A, tol)
    if not spectrum.matches(l_spectrum(f.apply(A), tol), tol, by_nature=True):
        return False

    for item in spectrum.eigenvalues:
        z, ok = eigenpair_image(f, A, item.value, l_eigenvector(A, item.value, tol), tol)
        if not ok or (item.interior and abs(z[0]) >= z[1]):
            logger.debug("eigenpair at {} not carried over by {}", item.value, f.kind.value)
            return False
    return True


def cone_image(f: PreserverForm, x) -> np.ndarray:
    """P x (or Q x)"""
    return f.conjugator() @ np.asarray(x, dtype=float)


def eigenpair_image(f: PreserverForm, A: Mat2, lam: float, x,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, bool]:
    """
    Carry an L-eigenpair (lam, x) of A to (lam, C x) for f(A) = C A C^-1

    Returns:
        The image vector and whether it is an L-eigenvector of f(A) for lam
    """
    z = cone_image(f, x)
    return z, verify_eigenpair(f.apply(A), lam, z, tol)


class PreserverAnalyzer:
    """Config-driven front end for building, checking and classifying maps"""

    def __init__(self, config_path: str = DEFAULT_CONFIG_PATH,
                 tol: Optional[Tolerance] = None):
        """
        Initialize analyzer

        Args:
            config_path: Path to configuration file
            tol: Explicit tolerance (overrides the config file)
        """
        self.config = load_config(config_path)
        self.sampler_config = self.config.get('sampler', {}) or {}
        self.tol = tol or tolerance_from_config(self.config)
        self.default_trials = int(self.sampler_config.get('trials', 1000))
        self.default_seed = int(self.sampler_config.get('seed', 42))
        self.entry_range = float(self.sampler_config.get('entry_range', 5.0))

    def make(self, kind: str, beta: float, space: str = 'M2') -> LinMap:
        """
        Coefficient map of a preserver

        Args:
            kind: 'P' or 'Q'
            beta: Off-diagonal parameter
            space: 'M2' or 'S2'

        Returns:
            LinMapM2 or LinMapS2
        """
        form = make_preserver(kind, beta)
        space = space.upper()
        if space == 'M2':
            return preserver_to_linmap(form)
        if space == 'S2':
            return preserver_to_linmap_s2(form, self.tol)
        raise InvalidMapError(f"unknown space {space!r} (expected M2 or S2)")

    def check(self, m: LinMap, trials: Optional[int] = None,
              seed: Optional[int] = None, progress: bool = False) -> PreserverVerdict:
        return sample_test_preserver(
            m,
            trials=trials if trials is not None else self.default_trials,
            tol=self.tol,
            seed=seed if seed is not None else self.default_seed,
            entry_range=self.entry_range,
            progress=progress
        )

    def classify(self, m: LinMap) -> Dict:
        """Diagnostics with the form rendered as a dictionary"""
        report = preserver_diagnostics(m, self.tol)
        form = report['form']
        return {**report, 'form': form.to_dict() if form is not None else None}

    def sweep(self, betas: List[float], trials: int, seed: int) -> List[Dict]:
        """
        Sampling verdicts for P and Q forms over a list of beta values

        Args:
            betas: Parameters to test
            trials: Random matrices per form
            seed: Generator seed

        Returns:
            One summary dictionary per (kind, beta)
        """
        results = []
        for kind in PreserverKind:
            for beta in betas:
                verdict = self.check(preserver_to_linmap(make_preserver(kind, beta)),
                                     trials=trials, seed=seed)
                results.append({'kind': kind.value, 'beta': beta, 'status': verdict.status})
        return results
