"""Truncated Fock-space operator algebra.

Displacement and squeeze operators are built two independent ways: as a
matrix exponential of the generator (the oracle) and as normal-ordered
products of exponential factors (the construction under test), plus
direct coefficient expansions of D(alpha)|n> and S(z)|n>.  States are
mapped back to position space through the oscillator eigenfunctions.

Truncation to the basis {|0>, ..., |N>} is never hidden: states report
their leakage 1 - sum |c_m|^2 and operators report a unitarity defect
instead of assuming unitarity.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import GuardViolation
from .parameters import SqueezeParam
from .special import log_factorial, oscillator_eigenfunctions

__all__ = [
    "FockState",
    "FockOperator",
    "BchFactors",
    "MATRIX_EXP_NORM_CAP",
    "number_state",
    "ladder_matrices",
    "matrix_exponential",
    "displacement_bch",
    "squeeze_bch",
    "displaced_number_coeffs",
    "squeezed_number_coeffs",
    "bch_factors",
    "synthesize",
    "time_evolve",
]

# scipy's expm keeps backward error near machine precision well past this;
# the cap exists to fail loudly on absurd generators instead of returning
# silently degraded results.
MATRIX_EXP_NORM_CAP = 1024.0


@dataclass(frozen=True)
class FockState:
    """Complex coefficients on the truncated number basis."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("FockState needs a 1-d coefficient vector")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def leakage(self) -> float:
        """Probability weight lost above the truncation, 1 - sum |c_m|^2."""
        return 1.0 - self.norm_sq


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on the truncated number basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValueError("FockOperator needs a square matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def truncation(self) -> int:
        return self.matrix.shape[0] - 1

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return FockOperator(self.matrix @ other.matrix)
        return NotImplemented

    def apply(self, state: FockState) -> FockState:
        return FockState(self.matrix @ state.coeffs)

    def column_state(self, n: int) -> FockState:
        """The image of basis state |n>, i.e. column n."""
        return FockState(self.matrix[:, n].copy())

    def dagger(self):
        return FockOperator(self.matrix.conj().T)

    def unitarity_defect(self) -> float:
        """max-entry norm of U^dag U - I; truncation makes this nonzero."""
        n = self.matrix.shape[0]
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(n))))


@dataclass(frozen=True)
class BchFactors:
    """Scalars of the normal-ordered squeeze factorization.

    d = (1/2) e^{i phi} tanh r drives the two-boson exponentials;
    tau = -e^{-i phi} sinh r (cosh r + e^{i phi} sinh r) and
    y = cosh r / sqrt(cosh r + e^{i phi} sinh r) appear when the squeezed
    coefficient sum is resummed into a single Hermite polynomial.
    """

    d: complex
    tau: complex
    y: complex

    def __post_init__(self):
        if not abs(2.0 * self.d) < 1.0:
            raise ValueError(f"|2d| = tanh r must be < 1, got {abs(2 * self.d)}")


def bch_factors(sq: SqueezeParam) -> BchFactors:
    eip = cmath.exp(1j * sq.phi)
    d = 0.5 * eip * math.tanh(sq.r)
    f1 = math.cosh(sq.r) + eip * math.sinh(sq.r)
    tau = -math.sinh(sq.r) * f1 / eip
    y = math.cosh(sq.r) / cmath.sqrt(f1)
    return BchFactors(d, tau, y)


def number_state(n: int, truncation: int) -> FockState:
    if not 0 <= n <= truncation:
        raise ValueError(f"need 0 <= n <= truncation, got n={n}, truncation={truncation}")
    c = np.zeros(truncation + 1, dtype=complex)
    c[n] = 1.0
    return FockState(c)


def ladder_matrices(truncation: int):
    """Annihilation and creation matrices (a, a_dag) with a|m> = sqrt(m)|m-1>."""
    if truncation < 1:
        raise ValueError(f"truncation must be >= 1, got {truncation}")
    a = np.zeros((truncation + 1, truncation + 1), dtype=complex)
    m = np.arange(1, truncation + 1)
    a[m - 1, m] = np.sqrt(m)
    return FockOperator(a), FockOperator(a.conj().T)


def matrix_exponential(op: FockOperator) -> FockOperator:
    """exp of a truncated operator by scaling-and-squaring (the oracle route)."""
    m = op.matrix
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential of non-finite entries")
    norm = float(np.linalg.norm(m, 1))
    if norm > MATRIX_EXP_NORM_CAP:
        raise GuardViolation(
            f"generator 1-norm {norm:.3g} exceeds cap {MATRIX_EXP_NORM_CAP:g}; "
            "accuracy is not guaranteed this far out"
        )
    return FockOperator(expm(m))


def _exp_raising_series(alpha: complex, truncation: int, scale) -> np.ndarray:
    """exp(alpha a_dag) * scale in extended precision.

    The series terminates exactly in the truncated space (a_dag is
    nilpotent), so entries are generated diagonal-by-diagonal from the
    recurrence entry(k+j, k) = entry(k+j-1, k) * alpha sqrt(k+j) / j.
    Pure multiplications keep the relative error near the clongdouble
    epsilon; the later factor contraction is what needs the headroom.
    """
    n1 = truncation + 1
    out = np.zeros((n1, n1), dtype=np.clongdouble)
    diag = np.full(n1, np.clongdouble(scale))
    np.fill_diagonal(out, diag)
    al = np.clongdouble(alpha.real) + 1j * np.clongdouble(alpha.imag)
    for j in range(1, n1):
        k = np.arange(n1 - j)
        diag = diag[: n1 - j] * (al / j) * np.sqrt((k + j).astype(np.longdouble))
        out[k + j, k] = diag
    return out


def _exp_two_boson_series(d: complex, truncation: int, scale_vec) -> np.ndarray:
    """exp(d a_dag a_dag) @ diag(scale_vec) in extended precision."""
    n1 = truncation + 1
    out = np.zeros((n1, n1), dtype=np.clongdouble)
    diag = np.asarray(scale_vec, dtype=np.clongdouble)
    np.fill_diagonal(out, diag)
    dl = np.clongdouble(d.real) + 1j * np.clongdouble(d.imag)
    for j in range(1, truncation // 2 + 1):
        k = np.arange(n1 - 2 * j)
        diag = diag[: n1 - 2 * j] * (dl / j) * np.sqrt(((k + 2 * j) * (k + 2 * j - 1)).astype(np.longdouble))
        out[k + 2 * j, k] = diag
    return out


@lru_cache(maxsize=8)
def _displacement_matrix(alpha_re: float, alpha_im: float, truncation: int) -> np.ndarray:
    alpha = complex(alpha_re, alpha_im)
    # The raw two-factor product cancels catastrophically once |alpha|
    # sqrt(N) is large, so build at |alpha| <= 1 and use the exact group
    # doubling D(alpha)^2 = D(2 alpha).
    halvings = 0
    base = alpha
    while abs(base) > 1.0:
        base /= 2.0
        halvings += 1
    scale = np.exp(np.longdouble(-abs(base) ** 2 / 4.0))
    lower = _exp_raising_series(base, truncation, scale)
    upper = _exp_raising_series(-base.conjugate(), truncation, scale).T
    mat = lower @ upper
    for _ in range(halvings):
        mat = mat @ mat
    result = mat.astype(complex)
    result.flags.writeable = False  # cached and shared between operators
    return result


def displacement_bch(alpha: complex, truncation: int) -> FockOperator:
    """Displacement operator from its normal-ordered factorization.

    D(alpha) = e^{-|alpha|^2/2} exp(alpha a_dag) exp(-conj(alpha) a),
    each factor expanded as its (terminating) truncated series.  Requires
    |alpha| <= truncation/8 so the occupied block sits well below the
    truncation edge.
    """
    alpha = complex(alpha)
    if abs(alpha) > truncation / 8.0:
        raise GuardViolation(
            f"|alpha| = {abs(alpha):.3g} exceeds truncation guard {truncation / 8.0:g} at N = {truncation}"
        )
    return FockOperator(_displacement_matrix(alpha.real, alpha.imag, truncation))


@lru_cache(maxsize=8)
def _squeeze_matrix(r: float, phi: float, truncation: int) -> np.ndarray:
    # Same doubling idea as for displacement: squeezes of equal phase
    # compose by adding magnitudes, S(r/2 e^{i phi})^2 = S(r e^{i phi}).
    halvings = 0
    base_r = r
    while base_r > 1.0:
        base_r /= 2.0
        halvings += 1
    d = 0.5 * cmath.exp(1j * phi) * math.tanh(base_r)
    m = np.arange(truncation + 1, dtype=np.longdouble)
    mid = np.exp(-(m + 0.5) * np.log(np.longdouble(math.cosh(base_r))))
    raising = _exp_two_boson_series(d, truncation, np.ones(truncation + 1))
    lowering = _exp_two_boson_series(-d.conjugate(), truncation, mid).T
    mat = raising @ lowering
    for _ in range(halvings):
        mat = mat @ mat
    result = mat.astype(complex)
    result.flags.writeable = False  # cached and shared between operators
    return result


def squeeze_bch(sq: SqueezeParam, truncation: int) -> FockOperator:
    """Squeeze operator from its normal-ordered factorization.

    S(z) = exp(d a_dag a_dag) (1/cosh r)^{1/2 + a_dag a} exp(-conj(d) a a)
    with d = (1/2) e^{i phi} tanh r; the middle factor is the diagonal
    (cosh r)^{-(m + 1/2)}.
    """
    if sq.r > 3.0:
        raise GuardViolation(f"squeeze magnitude r = {sq.r:.3g} exceeds truncation guard 3")
    return FockOperator(_squeeze_matrix(sq.r, sq.phi, truncation))


def displaced_number_coeffs(n: int, alpha: complex, truncation: int) -> FockState:
    """Coefficients of D(alpha)|n> from the double-sum expansion.

    c_m = e^{-|alpha|^2/2} sum_j alpha^{m-n+j} (-conj(alpha))^j
          sqrt(m! n!) / ((m-n+j)! j! (n-j)!)

    with j running over max(0, n-m) .. n.  Factorials are handled in log
    magnitude with the phases tracked separately.
    """
    if n > truncation // 2:
        raise GuardViolation(f"need n <= truncation/2, got n = {n} at N = {truncation}")
    alpha = complex(alpha)
    if abs(alpha) > truncation / 8.0:
        raise GuardViolation(
            f"|alpha| = {abs(alpha):.3g} exceeds truncation guard {truncation / 8.0:g} at N = {truncation}"
        )
    if alpha == 0:
        return number_state(n, truncation)
    log_abs = math.log(abs(alpha))
    theta = cmath.phase(alpha)
    lg = [log_factorial(k) for k in range(truncation + 1)]
    coeffs = np.zeros(truncation + 1, dtype=complex)
    prefactor = math.exp(-abs(alpha) ** 2 / 2.0)
    for m in range(truncation + 1):
        acc = 0.0 + 0.0j
        for j in range(max(0, n - m), n + 1):
            k = m - n + j
            magnitude = math.exp(
                (k + j) * log_abs - lg[k] - lg[j] - lg[n - j] + 0.5 * (lg[m] + lg[n])
            )
            acc += magnitude * cmath.exp(1j * theta * (k - j)) * (-1.0) ** j
        coeffs[m] = prefactor * acc
    return FockState(coeffs)


def squeezed_number_coeffs(n: int, sq: SqueezeParam, truncation: int) -> FockState:
    """Coefficients of S(z)|n> from the finite-j, truncated-k expansion.

    c_m = (cosh r)^{-(n+1/2)} sqrt(n!)
          sum_j (-conj(d))^j (cosh r)^{2j} / ((n-2j)! j!)
                d^k sqrt(m!) / k!,     k = (m - n)/2 + j

    supported only on m with the parity of n; the k sum is truncated by
    the basis cutoff and the lost weight shows up as reported leakage.
    """
    if n > truncation // 4:
        raise GuardViolation(f"need n <= truncation/4, got n = {n} at N = {truncation}")
    if sq.r > 3.0:
        raise GuardViolation(f"squeeze magnitude r = {sq.r:.3g} exceeds truncation guard 3")
    if sq.r == 0.0:
        return number_state(n, truncation)
    d = 0.5 * cmath.exp(1j * sq.phi) * math.tanh(sq.r)
    log_abs_d = math.log(abs(d))
    theta = cmath.phase(d)
    log_cosh = math.log(math.cosh(sq.r))
    lg = [log_factorial(k) for k in range(truncation + 1)]
    coeffs = np.zeros(truncation + 1, dtype=complex)
    for m in range(n % 2, truncation + 1, 2):
        acc = 0.0 + 0.0j
        j_lo = max(0, (n - m) // 2)
        for j in range(j_lo, n // 2 + 1):
            k = (m - n) // 2 + j
            magnitude = math.exp(
                -(n + 0.5) * log_cosh
                + 0.5 * lg[n]
                + j * log_abs_d
                + 2.0 * j * log_cosh
                - lg[n - 2 * j]
                - lg[j]
                + k * log_abs_d
                + 0.5 * lg[m]
                - lg[k]
            )
            acc += magnitude * cmath.exp(1j * theta * (k - j)) * (-1.0) ** j
        coeffs[m] = acc
    return FockState(coeffs)


def synthesize(state: FockState, x):
    """Position-space amplitude sum_m c_m psi_m(x)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    table = oscillator_eigenfunctions(state.truncation, xs)
    values = state.coeffs @ table
    return values[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else values


def time_evolve(state: FockState, t: float) -> FockState:
    """Free-oscillator evolution: c_m -> e^{-i(m + 1/2)t} c_m."""
    m = np.arange(state.truncation + 1)
    return FockState(state.coeffs * np.exp(-1j * (m + 0.5) * t))
