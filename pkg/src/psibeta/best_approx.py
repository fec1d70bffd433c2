"""Best linear approximation of the class through best approximation of the kernel.

When psi(k) != 0 for the harmonics a method touches, every method U_n is a
convolution with a zero-mean polynomial T_n^0 and back, so the best linear
method in L_p is generated by the polynomial of best L_p approximation of
Psi_beta, and the best linear error is E_n(Psi_beta)_{L_p} / pi.

p = 2 is exact (Fourier truncation). p = inf and p = 1 are solved as linear
programs on a uniform grid, with a grid-refinement certificate.
"""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from .core import (
    DomainError,
    FloatArray,
    InvalidRange,
    NoConvergence,
    NotInLp,
    NotZeroMean,
    TailNotSummable,
    TriangularMethod,
    TrigPolynomial,
    ZeroPsi,
    periodic_grid,
    psi_tail_sq_sum,
    triangular_validate,
)
from .kernels import KernelSpec, kernel_cutoff, kernel_partial_sum

logger = logging.getLogger(__name__)

NORMS = {"1": 1.0, "2": 2.0, "inf": math.inf}


@dataclass(frozen=True)
class BestApproxOptions:
    """How E_n(Psi_beta)_{L_p} is computed.

    grid_size is rounded up to a power of two and must be at least 8(n+1);
    conv_tol bounds the l1 truncation error of the sampled kernel.
    """

    p: float = 2.0
    grid_size: int = 4096
    max_iter: int = 100_000
    conv_tol: float = 1e-12

    def __post_init__(self):
        if self.p not in (1.0, 2.0, math.inf):
            raise DomainError(f"p must be 1, 2 or inf, got {self.p!r}")
        if self.grid_size < 1:
            raise InvalidRange(f"grid size must be positive, got {self.grid_size}")
        if self.max_iter < 1:
            raise InvalidRange(f"max_iter must be positive, got {self.max_iter}")
        if not self.conv_tol > 0:
            raise InvalidRange(f"conv_tol must be positive, got {self.conv_tol}")

    def grid_for(self, n: int) -> int:
        if self.grid_size < 8 * (n + 1):
            raise InvalidRange(
                f"grid of {self.grid_size} points is too coarse for n={n}, "
                f"need at least {8 * (n + 1)}"
            )
        return 1 << (self.grid_size - 1).bit_length()


@dataclass(frozen=True)
class BestApproximation:
    """The polynomial T_n^0 + offset closest to the kernel, and its distance.

    Unpacks as (poly, error). certificate is 0 for p = 2 and otherwise the
    change of error when the grid is doubled.
    """

    poly: TrigPolynomial
    error: float
    offset: float = 0.0
    certificate: float = 0.0

    def __iter__(self) -> Iterator:
        yield self.poly
        yield self.error


def _design_matrix(ts: FloatArray, n: int) -> FloatArray:
    ks = np.arange(1, n + 1)
    phase = np.multiply.outer(ts, ks)
    return np.hstack([np.ones((len(ts), 1)), np.cos(phase), np.sin(phase)])


def _solve(
    c: FloatArray, A_ub, b_ub: FloatArray, bounds, max_iter: int
) -> FloatArray:
    result = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=bounds,
        method="highs",
        options={"maxiter": max_iter},
    )
    if result.status == 1:
        raise NoConvergence(max_iter, best=result.x)
    if result.status != 0:
        raise NoConvergence(max_iter, best=result.x, message=result.message)
    return result.x


def _discrete_fit(
    samples: FloatArray, ts: FloatArray, n: int, p: float, max_iter: int
) -> tuple[FloatArray, float]:
    """Return the coefficients (alpha, a_1..a_n, b_1..b_n) and the grid error."""
    A = _design_matrix(ts, n)
    N, width = A.shape
    if p == math.inf:
        # minimise e subject to |samples - A x| <= e
        ones = np.ones((N, 1))
        A_ub = np.vstack([np.hstack([A, -ones]), np.hstack([-A, -ones])])
        cost = np.zeros(width + 1)
        cost[-1] = 1.0
        bounds = [(None, None)] * width + [(0.0, None)]
        x = _solve(cost, A_ub, np.concatenate([samples, -samples]), bounds, max_iter)
        coeffs = x[:width]
        error = float(np.max(np.abs(samples - A @ coeffs)))
    else:
        # minimise sum u_j subject to |samples - A x| <= u
        A_s = sparse.csr_matrix(A)
        eye = sparse.identity(N, format="csr")
        A_ub = sparse.vstack(
            [sparse.hstack([A_s, -eye]), sparse.hstack([-A_s, -eye])], format="csr"
        )
        cost = np.concatenate([np.zeros(width), np.full(N, 2.0 * np.pi / N)])
        bounds = [(None, None)] * width + [(0.0, None)] * N
        x = _solve(cost, A_ub, np.concatenate([samples, -samples]), bounds, max_iter)
        coeffs = x[:width]
        error = float(2.0 * np.pi / N * np.sum(np.abs(samples - A @ coeffs)))
    return coeffs, error


def _grid_best(
    spec: KernelSpec, n: int, K: int, N: int, opts: BestApproxOptions
) -> BestApproximation:
    ts = periodic_grid(N)
    samples = kernel_partial_sum(spec, K).sample(N)
    coeffs, error = _discrete_fit(samples, ts, n, opts.p, opts.max_iter)
    poly = TrigPolynomial(0.0, coeffs[1 : n + 1], coeffs[n + 1 :])
    logger.debug("grid %d, p=%s: E_%d = %.17g", N, opts.p, n, error)
    return BestApproximation(poly, error, offset=float(coeffs[0]))


def best_trig_poly(
    spec: KernelSpec, n: int, opts: BestApproxOptions | None = None
) -> BestApproximation:
    """Return the best approximation of Psi_beta by polynomials of degree n."""
    opts = opts or BestApproxOptions()
    if n < 0:
        raise InvalidRange(f"n must be nonnegative, got {n}")
    if opts.p == 2.0:
        tail = psi_tail_sq_sum(spec.psi, n, opts.conv_tol)
        return BestApproximation(kernel_partial_sum(spec, n), math.sqrt(math.pi * tail))

    N = opts.grid_for(n)
    try:
        K = kernel_cutoff(spec, opts.conv_tol)
    except TailNotSummable as e:
        raise NotInLp(f"cannot certify kernel samples for p={opts.p}: {e}") from e
    logger.debug("kernel truncated at K=%d for a %d point grid", K, N)
    coarse = _grid_best(spec, n, K, N, opts)
    fine = _grid_best(spec, n, K, 2 * N, opts)
    return BestApproximation(
        coarse.poly,
        coarse.error,
        offset=coarse.offset,
        certificate=abs(fine.error - coarse.error),
    )


def _check_nonzero_psi(spec: KernelSpec, n: int) -> None:
    zeros = np.flatnonzero(spec.psi.values(np.arange(1, n + 1)) == 0.0)
    if zeros.size:
        raise ZeroPsi(int(zeros[0]) + 1)


def best_linear_error(
    spec: KernelSpec, n: int, opts: BestApproxOptions | None = None
) -> float:
    """Return the best linear approximation of the class in L_p by methods U_n."""
    _check_nonzero_psi(spec, n)
    return best_trig_poly(spec, n, opts).error / math.pi


def method_from_poly(
    poly: TrigPolynomial, spec: KernelSpec, n: int
) -> TriangularMethod:
    """Return the method U_n equal to convolution with the zero-mean poly."""
    if poly.a0 != 0.0:
        raise NotZeroMean(f"polynomial has constant term {poly.constant!r}")
    if np.any(poly.cos_coeffs[n:]) or np.any(poly.sin_coeffs[n:]):
        raise InvalidRange(f"polynomial has harmonics above n={n}")
    _check_nonzero_psi(spec, n)
    psi, cos, sin = spec.harmonics(n)
    T = poly.resized(n)
    alpha, gamma = T.cos_coeffs, T.sin_coeffs
    lam = (alpha * cos + gamma * sin) / psi
    mu = (gamma * cos - alpha * sin) / psi
    return TriangularMethod(n, (1.0, *lam.tolist()), (0.0, *mu.tolist()))


def poly_from_method(method: TriangularMethod, spec: KernelSpec) -> TrigPolynomial:
    """Return the zero-mean polynomial T_n^0 whose convolution is the method."""
    triangular_validate(method)
    psi, cos, sin = spec.harmonics(method.n)
    lam, mu = method.multipliers(method.n)
    return TrigPolynomial(
        0.0, psi * (lam * cos - mu * sin), psi * (lam * sin + mu * cos)
    )


def best_method(
    spec: KernelSpec, n: int, opts: BestApproxOptions | None = None
) -> TriangularMethod:
    """Return the best linear method U_n* of the class in L_p."""
    _check_nonzero_psi(spec, n)
    return method_from_poly(best_trig_poly(spec, n, opts).poly, spec, n)
