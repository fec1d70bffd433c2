"""Exact L2 constants of linear summation methods on the class.

For a method with multipliers (lambda_k, mu_k) the least upper bound of
||f - U(f)||_{L2} over the class is

    (1/sqrt(pi)) * sqrt(sum_k ((1 - lambda_k)**2 + mu_k**2) psi(k)**2).

Heads (the harmonics where a method acts) are summed exactly; tails come from
psi_tail_sq_sum with a tolerance chosen so that the final square root is
within the tolerance asked of the caller.
"""

import logging
import math

import numpy as np

from .core import (
    DEFAULT_TOL,
    DomainError,
    FloatArray,
    InvalidRange,
    MultiplierScheme,
    PsiSequence,
    TailUnbounded,
    TriangularMethod,
    compensated_sum,
    psi_tail_sq_sum,
    triangular_validate,
)

logger = logging.getLogger(__name__)


def _tail_tolerance(floor: float, tol: float) -> float:
    """Return the tail accuracy keeping sqrt(total / pi) within tol.

    floor is a lower bound of the total. An error e moves the root by at most
    sqrt(e / pi), and by at most e / (2 sqrt(pi * floor)).
    """
    return max(math.pi * tol * tol, 2.0 * tol * math.sqrt(math.pi * floor))


def _constant(
    head_terms: FloatArray, psi: PsiSequence, cutoff: int, tol: float
) -> float:
    head = compensated_sum(head_terms)
    floor = head + psi(cutoff + 1) ** 2
    tail = psi_tail_sq_sum(psi, cutoff, _tail_tolerance(floor, tol))
    logger.debug("head %.17g, tail after %d: %.17g", head, cutoff, tail)
    return math.sqrt((head + tail) / math.pi)


def _deviation_terms(
    psi: PsiSequence, lam: FloatArray, mu: FloatArray
) -> FloatArray:
    psi_sq = psi.values(np.arange(1, len(lam) + 1)) ** 2
    return ((1.0 - lam) ** 2 + mu**2) * psi_sq


def error_scheme(
    psi: PsiSequence,
    scheme: MultiplierScheme,
    delta: float,
    tol: float = DEFAULT_TOL,
    cutoff: int | None = None,
) -> float:
    """Return the exact constant of U_delta(lambda; mu) on the class.

    The multipliers must vanish beyond some order: either the scheme declares
    it, or the caller passes cutoff and thereby certifies that lambda_k(delta)
    and mu_k(delta) are zero for k > cutoff.
    """
    psi.require_square_summable()
    scheme.check(delta)
    K = scheme.support(delta)
    if K is None:
        K = cutoff
    if K is None:
        raise TailUnbounded(
            f"scheme on {scheme.domain.description} has infinite support and "
            "no cutoff was given"
        )
    lam, mu = scheme.multipliers(delta, K)
    return _constant(_deviation_terms(psi, lam, mu), psi, K, tol)


def error_triangular(
    psi: PsiSequence, method: TriangularMethod, tol: float = DEFAULT_TOL
) -> float:
    """Return the exact constant of U_n(Lambda; M) on the class."""
    triangular_validate(method)
    psi.require_square_summable()
    lam, mu = method.multipliers(method.n)
    return _constant(_deviation_terms(psi, lam, mu), psi, method.n, tol)


def error_fourier(psi: PsiSequence, n: int, tol: float = DEFAULT_TOL) -> float:
    """Return the exact constant of the Fourier sum S_n on the class."""
    if n < 0:
        raise InvalidRange(f"n must be nonnegative, got {n}")
    psi.require_square_summable()
    return _constant(np.zeros(0), psi, n, tol)


def _check_geometric(q: float, n: int, m: int = 0) -> None:
    if not 0.0 < q < 1.0:
        raise DomainError(f"closed form needs 0 < q < 1, got q={q!r}")
    if n < 0:
        raise InvalidRange(f"n must be nonnegative, got {n}")
    if not 0 <= m <= n:
        raise InvalidRange(f"need 0 <= m <= n, got m={m}, n={n}")


def error_fourier_geometric(q: float, n: int) -> float:
    """Return q**(n+1) / sqrt(pi (1 - q**2)), the constant of S_n for psi = q**k."""
    _check_geometric(q, n)
    return q ** (n + 1) / math.sqrt(math.pi * (1.0 - q * q))


def _vdp_head_terms(psi_sq: FloatArray, n: int, m: int) -> FloatArray:
    """Return (k-n+m)**2 psi(k)**2 / (m+1)**2 for k = n-m+1..n."""
    ks = np.arange(n - m + 1, n + 1)
    return (ks - n + m) ** 2 * psi_sq / (m + 1) ** 2


def error_vdp(psi: PsiSequence, n: int, m: int, tol: float = DEFAULT_TOL) -> float:
    """Return the exact constant of the Vallee Poussin sum V_{n,m} on the class."""
    if n < 0 or not 0 <= m <= n:
        raise InvalidRange(f"need 0 <= m <= n, got m={m}, n={n}")
    psi.require_square_summable()
    psi_sq = psi.values(np.arange(n - m + 1, n + 1)) ** 2
    return _constant(_vdp_head_terms(psi_sq, n, m), psi, n, tol)


def vdp_geometric_lhs_rhs(q: float, n: int, m: int) -> tuple[float, float]:
    """Return both sides of the closed form of the V_{n,m} sum for psi = q**k.

    The left side sums the taper band directly and adds the geometric tail;
    the right side is the rational expression in q.
    """
    _check_geometric(q, n, m)
    q2 = q * q
    psi_sq = np.power(q2, np.arange(n - m + 1, n + 1, dtype=float))
    tail = q2 ** (n + 1) / (1.0 - q2)
    lhs = compensated_sum([*_vdp_head_terms(psi_sq, n, m).tolist(), tail])
    rhs = (
        q2 ** (n - m + 1)
        * (1.0 + q2 - q2 ** (m + 1) * (2 * m + 3 - q2 * (2 * m + 1)))
        / ((m + 1) ** 2 * (1.0 - q2) ** 3)
    )
    return lhs, rhs


def error_vdp_geometric(q: float, n: int, m: int) -> float:
    """Return the constant of V_{n,m} for psi = q**k in factored closed form."""
    _check_geometric(q, n, m)
    q2 = q * q
    inner = (1.0 + q2 - q ** (2 * (m + 1)) * (2 * m + 3 - q2 * (2 * m + 1))) / (
        1.0 - q2
    ) ** 3
    return q ** (n - m + 1) / (math.sqrt(math.pi) * (m + 1)) * math.sqrt(inner)
