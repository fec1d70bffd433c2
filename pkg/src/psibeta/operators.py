"""Linear summation operators and the convolution structure of the class.

All operators act on Fourier coefficients. For a harmonic (a_k, b_k) the
multipliers (lambda_k, mu_k) give

    lambda_k (a_k cos kx + b_k sin kx) + mu_k (-b_k cos kx + a_k sin kx),

which is a rotation-and-scaling of the pair (a_k, b_k).
"""

import numpy as np

from .core import (
    FloatArray,
    MultiplierScheme,
    NotZeroMean,
    TriangularMethod,
    TrigPolynomial,
    ZeroPsi,
)
from .kernels import KernelSpec, kernel_partial_sum


def _transform(
    a: FloatArray, b: FloatArray, lam: FloatArray, mu: FloatArray
) -> tuple[FloatArray, FloatArray]:
    return lam * a - mu * b, lam * b + mu * a


def apply_triangular(f: TrigPolynomial, method: TriangularMethod) -> TrigPolynomial:
    """Return U_n(Lambda; M; f), a polynomial of degree n.

    Harmonics of f above n are dropped.
    """
    g = f.resized(method.n)
    lam, mu = method.multipliers(method.n)
    a, b = _transform(g.cos_coeffs, g.sin_coeffs, lam, mu)
    return TrigPolynomial(f.a0, a, b)


def apply_scheme(
    f: TrigPolynomial, scheme: MultiplierScheme, delta: float
) -> TrigPolynomial:
    """Return U_delta(lambda; mu; f) for a polynomial f."""
    scheme.check(delta)
    lam, mu = scheme.multipliers(delta, f.degree)
    a, b = _transform(f.cos_coeffs, f.sin_coeffs, lam, mu)
    return TrigPolynomial(f.a0, a, b)


def convolve(
    phi: TrigPolynomial, kernel: TrigPolynomial, a0: float = 0.0
) -> TrigPolynomial:
    """Return a0/2 + (1/pi) * integral of phi(x - t) kernel(t) dt over a period.

    phi must be orthogonal to constants. The result has the degree of phi.
    """
    if phi.a0 != 0.0:
        raise NotZeroMean(f"phi has constant term {phi.constant!r}")
    T = kernel.resized(phi.degree)
    c, d = phi.cos_coeffs, phi.sin_coeffs
    alpha, gamma = T.cos_coeffs, T.sin_coeffs
    return TrigPolynomial(a0, c * alpha - d * gamma, c * gamma + d * alpha)


def synthesize_class_function(
    phi: TrigPolynomial, spec: KernelSpec, a0: float = 0.0
) -> TrigPolynomial:
    """Return f = a0/2 + phi * Psi_beta, the function whose derivative is phi."""
    return convolve(phi, kernel_partial_sum(spec, phi.degree), a0)


def psi_beta_derivative(f: TrigPolynomial, spec: KernelSpec) -> TrigPolynomial:
    """Return the (psi, beta)-derivative of f, a zero-mean polynomial.

    Raises ZeroPsi(k) when f has a nonzero harmonic k with psi(k) = 0.
    """
    psi, cos, sin = spec.harmonics(f.degree)
    a, b = f.cos_coeffs, f.sin_coeffs
    blocked = (psi == 0.0) & ((a != 0.0) | (b != 0.0))
    if blocked.any():
        raise ZeroPsi(int(np.flatnonzero(blocked)[0]) + 1)
    scale = np.divide(1.0, psi, out=np.zeros_like(psi), where=psi != 0.0)
    return TrigPolynomial(
        0.0,
        (a * cos + b * sin) * scale,
        (b * cos - a * sin) * scale,
    )
