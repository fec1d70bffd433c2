"""The generating kernel Psi_beta and the difference kernel of a method.

Psi_beta has the Fourier series sum_k psi(k) cos(kt - beta_k pi/2). Everything
here works on its coefficients; the kernel itself is never integrated.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from .core import (
    DEFAULT_TOL,
    BetaSequence,
    ConstantBeta,
    FloatArray,
    InvalidRange,
    PsiSequence,
    TriangularMethod,
    TrigPolynomial,
    compensated_sum,
    l1_cutoff,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelSpec:
    """The pair (psi, beta) defining Psi_beta."""

    psi: PsiSequence
    beta: BetaSequence = field(default_factory=lambda: ConstantBeta(0.0))

    def __post_init__(self):
        self.psi.require_square_summable()

    def harmonics(self, K: int) -> tuple[FloatArray, FloatArray, FloatArray]:
        """Return psi(k), cos(beta_k pi/2) and sin(beta_k pi/2) for k = 1..K."""
        ks = np.arange(1, K + 1)
        cos, sin = self.beta.phases(ks)
        return self.psi.values(ks), cos, sin


def kernel_partial_sum(spec: KernelSpec, K: int) -> TrigPolynomial:
    """Return the degree-K truncation of Psi_beta."""
    if K < 0:
        raise InvalidRange(f"truncation order must be nonnegative, got {K}")
    psi, cos, sin = spec.harmonics(K)
    return TrigPolynomial(0.0, psi * cos, psi * sin)


def kernel_cutoff(spec: KernelSpec, tol: float) -> int:
    """Return the truncation order certified by the l1 tail for pointwise use.

    Raises TailNotSummable for psi whose absolute series is not controlled,
    among them power laws with r <= 1.
    """
    return max(l1_cutoff(spec.psi, tol), 1)


def kernel_eval(spec: KernelSpec, t: float, tol: float = DEFAULT_TOL) -> float:
    """Return Psi_beta(t) with absolute error at most tol."""
    K = kernel_cutoff(spec, tol)
    psi, cos, sin = spec.harmonics(K)
    kt = np.arange(1, K + 1) * math.remainder(t, 2.0 * math.pi)
    return compensated_sum(psi * (cos * np.cos(kt) + sin * np.sin(kt)))


def kernel_samples(
    spec: KernelSpec, ts: ArrayLike, tol: float = DEFAULT_TOL
) -> FloatArray:
    """Return Psi_beta at every point of ts, each within tol."""
    K = kernel_cutoff(spec, tol)
    logger.debug("sampling kernel with %d harmonics", K)
    return kernel_partial_sum(spec, K).evaluate(np.remainder(ts, 2.0 * np.pi))


def difference_kernel(
    spec: KernelSpec, method: TriangularMethod, K: int
) -> TrigPolynomial:
    """Return the harmonic amplitudes of Psi_beta - U_n(Lambda; M; t) up to K.

    Harmonic k is psi(k)((1 - lambda_k) cos(kt - theta_k) + mu_k sin(kt -
    theta_k)) with theta_k = beta_k pi/2. The mu term carries the opposite
    sign to apply_triangular; amplitudes, and so every L2 norm, are the same.
    The part beyond K is the kernel tail itself.
    """
    if K < method.n:
        raise InvalidRange(f"truncation K={K} is below the method order {method.n}")
    psi, cos, sin = spec.harmonics(K)
    lam, mu = method.multipliers(K)
    keep = 1.0 - lam
    return TrigPolynomial(
        0.0,
        psi * (keep * cos - mu * sin),
        psi * (keep * sin + mu * cos),
    )

