"""Numerical oracles for the closed forms.

Everything here is computed a second way: on uniform periodic grids, where the
rectangle rule integrates trigonometric polynomials below Nyquist exactly, or
from explicit test functions of the class. Nothing here reads the formulas in
bounds.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .bounds import error_triangular
from .core import (
    DEFAULT_TOL,
    FloatArray,
    InvalidRange,
    PsiSequence,
    TriangularMethod,
    TrigPolynomial,
    l2_cutoff,
    periodic_grid,
    psi_tail_sq_sum,
    triangular_validate,
)
from .kernels import KernelSpec, difference_kernel, kernel_partial_sum
from .operators import apply_triangular, synthesize_class_function

logger = logging.getLogger(__name__)


def _grid_above(degree: int) -> int:
    """Return the smallest power of two N with N > 2 * degree, at least 2."""
    return max(2, 1 << (2 * degree).bit_length())


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples on t_j = -pi + 2 pi j / N, j = 0..N-1."""

    samples: FloatArray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if self.N < 2 or self.N % 2:
            raise InvalidRange(f"grid size must be even and at least 2, got {self.N}")

    @property
    def N(self) -> int:
        return len(self.samples)

    @classmethod
    def from_polynomial(cls, poly: TrigPolynomial, N: int) -> "GridFunction":
        return cls(poly.sample(N))

    @classmethod
    def from_values(cls, values: ArrayLike) -> "GridFunction":
        return cls(np.asarray(values, dtype=float))


def lp_norm_grid(g: GridFunction, p: float) -> float:
    """Return the rectangle-rule L_p norm of g over one period."""
    if p == math.inf:
        return float(np.max(np.abs(g.samples)))
    if not p >= 1.0:
        raise InvalidRange(f"p must be at least 1, got {p!r}")
    weight = 2.0 * np.pi / g.N
    return float((weight * np.sum(np.abs(g.samples) ** p)) ** (1.0 / p))


def oracle_cutoff(psi: PsiSequence, tol: float = 1e-13, cap: int = 10**6) -> int:
    """Return the smallest K with sum_{k>K} psi(k)**2 < pi * tol**2, at most cap."""
    return l2_cutoff(psi, math.pi * tol * tol, cap)


def kernel_difference_norm_quadrature(
    spec: KernelSpec, method: TriangularMethod, N: int, K: int
) -> float:
    """Return (1/pi) ||Psi_beta - U_n(Lambda; M; .)||_{L2} by grid quadrature.

    Harmonics 1..K are sampled on N points; the rest, where the method is
    zero, contribute pi * sum_{k>K} psi(k)**2 to the squared norm.
    """
    triangular_validate(method)
    if K < method.n:
        raise InvalidRange(f"truncation K={K} is below the method order {method.n}")
    if N <= 2 * K:
        raise InvalidRange(f"grid of {N} points does not resolve K={K}")
    grid = GridFunction.from_polynomial(difference_kernel(spec, method, K), N)
    in_band = lp_norm_grid(grid, 2.0) ** 2
    tail = math.pi * psi_tail_sq_sum(spec.psi, K)
    logger.debug("difference kernel: grid part %.17g, tail %.17g", in_band, tail)
    return math.sqrt(in_band + tail) / math.pi


def fejer_density(N: int) -> TrigPolynomial:
    """Return the zero-mean part of the Fejer kernel of order N over 2 pi.

    The full density 1/(2 pi) + (1/pi) sum (1 - k/(N+1)) cos kt is nonnegative
    with unit integral.
    """
    if N < 1:
        raise InvalidRange(f"Fejer order must be positive, got {N}")
    ks = np.arange(1, N + 1)
    return TrigPolynomial(0.0, (1.0 - ks / (N + 1)) / np.pi, np.zeros(N))


def fejer_lower_bounds(
    spec: KernelSpec,
    method: TriangularMethod,
    N_list: Sequence[int],
    a0: float = 0.0,
) -> list[float]:
    """Return ||f_N - U_n(f_N)||_{L2} for the Fejer test functions f_N.

    Each value is attained by a member of the class, so the list is a chain of
    lower bounds for the exact constant, nondecreasing in N.
    """
    triangular_validate(method)
    bounds = []
    for N in N_list:
        f = synthesize_class_function(fejer_density(N), spec, a0)
        residual = f - apply_triangular(f, method)
        grid = GridFunction.from_polynomial(residual, _grid_above(max(N, method.n)))
        bounds.append(lp_norm_grid(grid, 2.0))
        logger.debug("Fejer order %d: %.17g", N, bounds[-1])
    return bounds


def ls_best_l2_on_grid(spec: KernelSpec, n: int, N: int, K: int) -> float:
    """Return the least-squares distance from Psi_beta to degree-n polynomials.

    The fit runs on N samples of the degree-K kernel, with a free constant, by
    numpy least squares; the harmonics above K are added back from the tail.
    """
    if n < 0 or K < n:
        raise InvalidRange(f"need 0 <= n <= K, got n={n}, K={K}")
    if N <= 2 * K:
        raise InvalidRange(f"grid of {N} points does not resolve K={K}")
    ts = periodic_grid(N)
    samples = kernel_partial_sum(spec, K).sample(N)
    phase = np.multiply.outer(ts, np.arange(1, n + 1))
    design = np.hstack([np.ones((N, 1)), np.cos(phase), np.sin(phase)])
    coeffs, *_ = np.linalg.lstsq(design, samples, rcond=None)
    residual = GridFunction(samples - design @ coeffs)
    in_band = lp_norm_grid(residual, 2.0) ** 2
    return math.sqrt(in_band + math.pi * psi_tail_sq_sum(spec.psi, K))


@dataclass(frozen=True)
class VerificationRow:
    """One line of a verification report.

    Fejer rows are one-sided: the oracle must not exceed the closed form and
    must not decrease. The Parseval row must agree both ways.
    """

    label: str
    oracle: float
    closed_form: float
    ok: bool

    @property
    def abs_diff(self) -> float:
        return abs(self.oracle - self.closed_form)


def verification_report(
    spec: KernelSpec,
    method: TriangularMethod,
    N_list: Sequence[int] = (4, 16, 64, 256, 1024),
    tol: float = 1e-10,
    a0: float = 0.0,
    K: int | None = None,
) -> list[VerificationRow]:
    """Check error_triangular against the Fejer chain and the Parseval oracle."""
    closed = error_triangular(spec.psi, method, DEFAULT_TOL)
    rows = []
    previous = -math.inf
    for N, value in zip(N_list, fejer_lower_bounds(spec, method, N_list, a0)):
        ok = value <= closed + tol and value >= previous - tol
        rows.append(VerificationRow(str(N), value, closed, ok))
        previous = value
    if K is None:
        K = max(method.n, oracle_cutoff(spec.psi, cap=1 << 16))
    parseval = kernel_difference_norm_quadrature(spec, method, _grid_above(K), K)
    rows.append(
        VerificationRow("parseval", parseval, closed, abs(parseval - closed) <= tol)
    )
    failed = [row.label for row in rows if not row.ok]
    if failed:
        logger.warning("verification failed for rows %s", ", ".join(failed))
    return rows
