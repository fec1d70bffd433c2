"""Sequences, summation methods and trigonometric polynomials.

Value types shared by every other module, the exception hierarchy, the tail
machinery for sums of psi(k)**2 and |psi(k)|, and the text grammar of sequence
and method literals used on the command line.
"""

import json
import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from shewchuk import Expansion

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-14
# explicit PowerLaw terms summed before the tail bracket is accepted as is
MAX_EXPLICIT_TERMS = 1 << 20

FloatArray = NDArray[np.float64]


class PsiBetaError(Exception):
    """Base class of every error raised by psibeta."""


class InvalidRange(PsiBetaError, ValueError):
    """An integer argument (order, index, grid size) is out of range."""


class DomainError(PsiBetaError, ValueError):
    """A real parameter lies outside the domain of a closed form."""


class NotSquareSummable(PsiBetaError):
    """The sequence psi does not satisfy sum psi(k)**2 < inf."""


class TailNotSummable(PsiBetaError):
    """The l1 tail of psi cannot be bounded to the requested tolerance."""


class TailUnbounded(PsiBetaError):
    """A scheme with infinite support was used without a certified cutoff."""


class NotZeroMean(PsiBetaError):
    """A polynomial that must be orthogonal to constants has a constant term."""


class NotInLp(PsiBetaError):
    """The kernel cannot be certified to lie in the requested L_p space."""


class ConstraintViolation(PsiBetaError):
    """A method row breaks the lambda_0 = 1, mu_0 = 0 normalisation."""

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"constraint violated at index {index}: {reason}")


class ZeroPsi(PsiBetaError):
    """Division by psi(k) = 0 was required."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"psi({k}) = 0")


class SchemeDomain(PsiBetaError):
    """The scheme parameter delta is outside the declared set E."""

    def __init__(self, delta: float, description: str):
        self.delta = delta
        super().__init__(f"delta={delta!r} is not in {description}")


class NoConvergence(PsiBetaError):
    """An iterative solver stopped before converging."""

    def __init__(self, max_iter: int, best: Any = None, message: str = ""):
        self.max_iter = max_iter
        self.best = best
        super().__init__(
            message or f"solver did not converge within {max_iter} iterations"
        )


class ParseError(PsiBetaError, ValueError):
    """A literal given on the command line or in a file could not be parsed."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


def compensated_sum(values: Iterable[float] | FloatArray) -> float:
    """Return the correctly accumulated sum of values.

    The terms are collected into a nonoverlapping floating point expansion, so
    the only rounding happens when the expansion is converted back to a float.
    """
    if isinstance(values, np.ndarray):
        terms = values.ravel().tolist()
    else:
        terms = [float(v) for v in values]
    if not terms:
        return 0.0
    return float(Expansion(*terms))


def _first_true(predicate: Callable[[int], bool], lo: int, cap: int) -> int | None:
    """Return the smallest K in [lo, cap] with predicate(K), or None.

    predicate must be monotone: once true it stays true.
    """
    if predicate(lo):
        return lo
    step = 1
    hi = min(lo + step, cap)
    while not predicate(hi):
        if hi >= cap:
            return None
        lo = hi
        step *= 2
        hi = min(hi + step, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _check_tol(tol: float) -> None:
    if not tol > 0:
        raise InvalidRange(f"tolerance must be positive, got {tol!r}")


def _check_order(name: str, value: int) -> None:
    if value < 0:
        raise InvalidRange(f"{name} must be nonnegative, got {value}")


# ---------------------------------------------------------------------------
# psi
# ---------------------------------------------------------------------------


class PsiSequence(ABC):
    """The multiplier sequence psi(k), k = 1, 2, ..."""

    @abstractmethod
    def __call__(self, k: int) -> float: ...

    def values(self, ks: ArrayLike) -> FloatArray:
        """Return psi at every index in ks."""
        return np.array([self(int(k)) for k in np.ravel(ks)], dtype=float)

    @abstractmethod
    def is_square_summable(self) -> bool: ...

    @abstractmethod
    def tail_sq_sum(self, n: int, tol: float) -> float:
        """Return sum_{k>n} psi(k)**2 with absolute error at most tol."""

    def tail_sq_upper(self, n: int) -> float:
        """Return a cheap upper bound of sum_{k>n} psi(k)**2."""
        return self.tail_sq_sum(n, DEFAULT_TOL)

    @abstractmethod
    def tail_abs_bound(self, n: int) -> float:
        """Return an upper bound of sum_{k>n} |psi(k)|, inf if unknown."""

    def require_square_summable(self) -> None:
        if not self.is_square_summable():
            raise NotSquareSummable(f"{self!r} is not square summable")


@dataclass(frozen=True)
class GeometricPsi(PsiSequence):
    """psi(k) = q**k."""

    q: float

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"geometric psi needs 0 < q < 1, got q={self.q!r}")

    def __call__(self, k: int) -> float:
        return self.q**k

    def values(self, ks: ArrayLike) -> FloatArray:
        return np.power(self.q, np.asarray(ks, dtype=float))

    def is_square_summable(self) -> bool:
        return True

    def tail_sq_sum(self, n: int, tol: float) -> float:
        return self.q ** (2 * (n + 1)) / (1.0 - self.q * self.q)

    def tail_abs_bound(self, n: int) -> float:
        return self.q ** (n + 1) / (1.0 - self.q)


def _power_integral(a: float, b: float, s: float) -> float:
    """Return the integral of x**-s over [a, b], inf for b allowed."""
    if math.isinf(b):
        return a ** (1.0 - s) / (s - 1.0)
    # a**(1-s) - b**(1-s) without cancellation when b is close to a
    return -(a ** (1.0 - s)) * math.expm1((1.0 - s) * math.log1p((b - a) / a)) / (
        s - 1.0
    )


@dataclass(frozen=True)
class PowerLawPsi(PsiSequence):
    """psi(k) = k**-r.

    Any r > 0 is accepted so that square summability can be asked of the
    sequence; operations needing sum psi(k)**2 < inf check r > 1/2 themselves.
    """

    r: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise DomainError(f"power-law psi needs r > 0, got r={self.r!r}")

    def __call__(self, k: int) -> float:
        return float(k) ** -self.r

    def values(self, ks: ArrayLike) -> FloatArray:
        return np.power(np.asarray(ks, dtype=float), -self.r)

    def is_square_summable(self) -> bool:
        return self.r > 0.5

    def _bracket(self, K: int) -> tuple[float, float]:
        """Return (lower, width) enclosing sum_{k>K} k**-2r.

        x**-2r is convex, so the trapezoid rule overestimates its integral and
        the midpoint rule underestimates it.
        """
        s = 2.0 * self.r
        first = float(K + 1) ** -s
        lower = _power_integral(K + 1.0, math.inf, s) + first / 2.0
        width = _power_integral(K + 0.5, K + 1.0, s) - first / 2.0
        return lower, max(width, 0.0)

    def tail_sq_sum(self, n: int, tol: float) -> float:
        self.require_square_summable()
        cap = n + MAX_EXPLICIT_TERMS
        K = _first_true(lambda K: self._bracket(K)[1] < tol, n, cap)
        if K is None:
            K = cap
            logger.warning(
                "power-law tail after n=%d: bracket width %.3g above tol %.3g "
                "after %d explicit terms",
                n,
                self._bracket(K)[1],
                tol,
                MAX_EXPLICIT_TERMS,
            )
        lower, width = self._bracket(K)
        logger.debug("power-law tail after n=%d: %d explicit terms", n, K - n)
        head = self.values(np.arange(n + 1, K + 1)) ** 2
        return compensated_sum([*head.tolist(), lower, width / 2.0])

    def tail_sq_upper(self, n: int) -> float:
        self.require_square_summable()
        lower, width = self._bracket(n)
        return lower + width

    def tail_abs_bound(self, n: int) -> float:
        if self.r <= 1.0:
            return math.inf
        # midpoint rule again, now for x**-r
        return _power_integral(n + 0.5, math.inf, self.r)


@dataclass(frozen=True)
class ZeroTail:
    """psi(k) = 0 beyond the explicit values."""

    def value(self, k: int) -> float:
        return 0.0

    def sq_sum_beyond(self, m: int) -> float:
        return 0.0

    def abs_sum_beyond(self, m: int) -> float:
        return 0.0


@dataclass(frozen=True)
class GeometricTail:
    """psi(k) = scale * q**k beyond the explicit values."""

    q: float
    scale: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"geometric tail needs 0 < q < 1, got q={self.q!r}")
        if not math.isfinite(self.scale):
            raise DomainError(f"geometric tail scale must be finite: {self.scale!r}")

    def value(self, k: int) -> float:
        return self.scale * self.q**k

    def sq_sum_beyond(self, m: int) -> float:
        return self.scale**2 * self.q ** (2 * (m + 1)) / (1.0 - self.q**2)

    def abs_sum_beyond(self, m: int) -> float:
        return abs(self.scale) * self.q ** (m + 1) / (1.0 - self.q)


PsiTail = ZeroTail | GeometricTail


@dataclass(frozen=True)
class ExplicitPsi(PsiSequence):
    """psi(1..K_max) given explicitly, continued by a tail rule."""

    values_: tuple[float, ...]
    tail: PsiTail = field(default_factory=ZeroTail)

    def __post_init__(self):
        values = tuple(float(v) for v in self.values_)
        for k, v in enumerate(values, start=1):
            if not math.isfinite(v):
                raise DomainError(f"psi({k}) is not finite: {v!r}")
        object.__setattr__(self, "values_", values)

    @property
    def k_max(self) -> int:
        return len(self.values_)

    def __call__(self, k: int) -> float:
        if k <= self.k_max:
            return self.values_[k - 1]
        return self.tail.value(k)

    def values(self, ks: ArrayLike) -> FloatArray:
        ks = np.asarray(ks, dtype=int)
        padded = np.concatenate(([0.0], np.asarray(self.values_, dtype=float)))
        inside = ks <= self.k_max
        out = np.empty(ks.shape, dtype=float)
        out[inside] = padded[ks[inside]]
        out[~inside] = [self.tail.value(int(k)) for k in ks[~inside]]
        return out

    def is_square_summable(self) -> bool:
        return True

    def tail_sq_sum(self, n: int, tol: float) -> float:
        head = np.asarray(self.values_[n:], dtype=float) ** 2
        beyond = self.tail.sq_sum_beyond(max(n, self.k_max))
        return compensated_sum([*head.tolist(), beyond])

    def tail_abs_bound(self, n: int) -> float:
        head = np.abs(np.asarray(self.values_[n:], dtype=float))
        beyond = self.tail.abs_sum_beyond(max(n, self.k_max))
        return compensated_sum([*head.tolist(), beyond])


def psi_eval(seq: PsiSequence, k: int) -> float:
    """Return psi(k) for k >= 1."""
    if k < 1:
        raise InvalidRange(f"psi is indexed from k=1, got k={k}")
    return seq(k)


def psi_tail_sq_sum(seq: PsiSequence, n: int, tol: float = DEFAULT_TOL) -> float:
    """Return sum_{k=n+1}^inf psi(k)**2 with absolute error at most tol."""
    _check_order("n", n)
    _check_tol(tol)
    return seq.tail_sq_sum(n, tol)


def validate_square_summable(seq: PsiSequence) -> bool:
    """Return True iff the parameters of seq guarantee sum psi(k)**2 < inf."""
    return seq.is_square_summable()


def psi_tail_abs_bound(seq: PsiSequence, n: int) -> float:
    """Return an upper bound of sum_{k=n+1}^inf |psi(k)|."""
    _check_order("n", n)
    return seq.tail_abs_bound(n)


def l1_cutoff(seq: PsiSequence, tol: float, cap: int = 1 << 22) -> int:
    """Return the smallest K with sum_{k>K} |psi(k)| <= tol.

    Raises TailNotSummable when psi is not known to be absolutely summable or
    the tolerance is not reached by K = cap.
    """
    _check_tol(tol)
    if math.isinf(seq.tail_abs_bound(0)):
        raise TailNotSummable(f"{seq!r} has no certified l1 tail")
    K = _first_true(lambda K: seq.tail_abs_bound(K) <= tol, 0, cap)
    if K is None:
        raise TailNotSummable(
            f"l1 tail of {seq!r} stays above {tol:g} for {cap} terms"
        )
    logger.debug("l1 cutoff for %r at tol %.3g: K=%d", seq, tol, K)
    return K


def l2_cutoff(seq: PsiSequence, tol_sq: float, cap: int = 10**6) -> int:
    """Return the smallest K with sum_{k>K} psi(k)**2 < tol_sq, at most cap."""
    _check_tol(tol_sq)
    seq.require_square_summable()
    K = _first_true(lambda K: seq.tail_sq_upper(K) < tol_sq, 0, cap)
    if K is None:
        logger.warning("l2 cutoff for %r capped at %d terms", seq, cap)
        return cap
    return K


# ---------------------------------------------------------------------------
# beta
# ---------------------------------------------------------------------------

_QUARTER_COS = np.array([1.0, 0.0, -1.0, 0.0])
_QUARTER_SIN = np.array([0.0, 1.0, 0.0, -1.0])


class BetaSequence(ABC):
    """The shift sequence beta_k, k = 1, 2, ..."""

    @abstractmethod
    def __call__(self, k: int) -> float: ...

    def values(self, ks: ArrayLike) -> FloatArray:
        return np.array([self(int(k)) for k in np.ravel(ks)], dtype=float)

    def phases(self, ks: ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Return cos(beta_k pi/2) and sin(beta_k pi/2) at every index in ks.

        Integer shifts give exact quarter turns.
        """
        turns = np.mod(self.values(ks), 4.0)
        cos = np.cos(turns * (np.pi / 2.0))
        sin = np.sin(turns * (np.pi / 2.0))
        whole = turns == np.floor(turns)
        quarter = turns[whole].astype(int) % 4
        cos[whole] = _QUARTER_COS[quarter]
        sin[whole] = _QUARTER_SIN[quarter]
        return cos, sin


@dataclass(frozen=True)
class ConstantBeta(BetaSequence):
    beta: float

    def __call__(self, k: int) -> float:
        return self.beta

    def values(self, ks: ArrayLike) -> FloatArray:
        return np.full(np.shape(ks), self.beta, dtype=float)


@dataclass(frozen=True)
class LinearBeta(BetaSequence):
    """beta_k = c * k."""

    c: float

    def __call__(self, k: int) -> float:
        return self.c * k

    def values(self, ks: ArrayLike) -> FloatArray:
        return self.c * np.asarray(ks, dtype=float)


@dataclass(frozen=True)
class ExplicitBeta(BetaSequence):
    values_: tuple[float, ...]
    default: float = 0.0

    def __post_init__(self):
        values = tuple(float(v) for v in self.values_)
        if not all(math.isfinite(v) for v in (*values, self.default)):
            raise DomainError("beta entries must be finite")
        object.__setattr__(self, "values_", values)

    def __call__(self, k: int) -> float:
        if 1 <= k <= len(self.values_):
            return self.values_[k - 1]
        return self.default


# ---------------------------------------------------------------------------
# summation methods
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangularMethod:
    """Row n of the matrices Lambda and M.

    lam and mu hold lambda_k and mu_k for k = 0..n; both vanish for k > n.
    """

    n: int
    lam: tuple[float, ...]
    mu: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(float(v) for v in self.lam))
        object.__setattr__(self, "mu", tuple(float(v) for v in self.mu))

    def multipliers(self, K: int) -> tuple[FloatArray, FloatArray]:
        """Return lambda_k and mu_k for k = 1..K, zero beyond n."""
        lam = np.zeros(K)
        mu = np.zeros(K)
        top = min(K, self.n)
        lam[:top] = self.lam[1 : top + 1]
        mu[:top] = self.mu[1 : top + 1]
        return lam, mu

    def as_dict(self) -> dict[str, Any]:
        return {"n": self.n, "lambda": list(self.lam), "mu": list(self.mu)}


def triangular_validate(method: TriangularMethod) -> bool:
    """Return True if method is a valid row, else raise ConstraintViolation."""
    if method.n < 0:
        raise InvalidRange(f"method order must be nonnegative, got {method.n}")
    if method.lam and method.lam[0] != 1.0:
        raise ConstraintViolation(0, f"lambda_0 = {method.lam[0]!r}, expected 1")
    if method.mu and method.mu[0] != 0.0:
        raise ConstraintViolation(0, f"mu_0 = {method.mu[0]!r}, expected 0")
    for name, row in (("lambda", method.lam), ("mu", method.mu)):
        if len(row) != method.n + 1:
            raise ConstraintViolation(
                min(len(row), method.n + 1),
                f"{name} has {len(row)} entries, expected {method.n + 1}",
            )
        for k, value in enumerate(row):
            if not math.isfinite(value):
                raise ConstraintViolation(k, f"{name}_{k} is not finite")
    return True


def fourier_method(n: int) -> TriangularMethod:
    """Return the Fourier partial sum S_n."""
    _check_order("n", n)
    return TriangularMethod(n, (1.0,) * (n + 1), (0.0,) * (n + 1))


def vdp_method(n: int, m: int) -> TriangularMethod:
    """Return the Vallee Poussin sum V_{n,m}.

    Flat up to n - m, then a linear taper that would reach zero at n + 1.
    """
    _check_order("n", n)
    if not 0 <= m <= n:
        raise InvalidRange(f"Vallee Poussin sum needs 0 <= m <= n, got m={m}, n={n}")
    lam = [1.0] * (n + 1)
    for k in range(n - m + 1, n + 1):
        lam[k] = 1.0 - (k - n + m) / (m + 1)
    return TriangularMethod(n, tuple(lam), (0.0,) * (n + 1))


def fejer_method(n: int) -> TriangularMethod:
    """Return the Fejer mean of order n, V_{n,n}."""
    return vdp_method(n, n)


def _anywhere(delta: float) -> bool:
    return math.isfinite(delta)


@dataclass(frozen=True)
class ParameterSet:
    """The set E of admissible delta and its limit point delta_0.

    delta_0 is only recorded; no limit along delta -> delta_0 is checked.
    """

    description: str
    limit_point: float
    contains: Callable[[float], bool] = _anywhere


@dataclass(frozen=True)
class MultiplierScheme:
    """The delta-parametrised family lambda_k(delta), mu_k(delta).

    k_support is a cutoff beyond which every multiplier vanishes for all
    delta; cutoff is the same promise made per delta. Both absent means
    infinite support.
    """

    domain: ParameterSet
    lambda_at: Callable[[float, int], float]
    mu_at: Callable[[float, int], float]
    k_support: int | None = None
    cutoff: Callable[[float], int] | None = None

    def check(self, delta: float) -> None:
        if not self.domain.contains(delta):
            raise SchemeDomain(delta, self.domain.description)
        if self.lambda_at(delta, 0) != 1.0:
            raise ConstraintViolation(0, f"lambda_0({delta!r}) != 1")
        if self.mu_at(delta, 0) != 0.0:
            raise ConstraintViolation(0, f"mu_0({delta!r}) != 0")

    def support(self, delta: float) -> int | None:
        if self.k_support is not None:
            return self.k_support
        if self.cutoff is not None:
            return self.cutoff(delta)
        return None

    def multipliers(self, delta: float, K: int) -> tuple[FloatArray, FloatArray]:
        """Return lambda_k(delta) and mu_k(delta) for k = 1..K."""
        lam = np.array([self.lambda_at(delta, k) for k in range(1, K + 1)], float)
        mu = np.array([self.mu_at(delta, k) for k in range(1, K + 1)], float)
        return lam, mu


def frozen_scheme(method: TriangularMethod) -> MultiplierScheme:
    """Return method as a scheme that ignores delta."""
    triangular_validate(method)
    lam, mu, n = method.lam, method.mu, method.n
    return MultiplierScheme(
        domain=ParameterSet("the real line", limit_point=0.0),
        lambda_at=lambda delta, k: lam[k] if k <= n else 0.0,
        mu_at=lambda delta, k: mu[k] if k <= n else 0.0,
        k_support=n,
    )


def scheme_from_family(
    family: Callable[[int], TriangularMethod], description: str = "{1/n : n >= 1}"
) -> MultiplierScheme:
    """Return the scheme delta = 1/n -> family(n), with limit point 0."""
    rows = lru_cache(maxsize=256)(family)

    def order(delta: float) -> int:
        return round(1.0 / delta)

    def contains(delta: float) -> bool:
        if not 0.0 < delta <= 1.0:
            return False
        return math.isclose(1.0 / order(delta), delta, rel_tol=1e-12)

    def lambda_at(delta: float, k: int) -> float:
        method = rows(order(delta))
        return method.lam[k] if k <= method.n else 0.0

    def mu_at(delta: float, k: int) -> float:
        method = rows(order(delta))
        return method.mu[k] if k <= method.n else 0.0

    def support(delta: float) -> int:
        return rows(order(delta)).n

    return MultiplierScheme(
        domain=ParameterSet(description, limit_point=0.0, contains=contains),
        lambda_at=lambda_at,
        mu_at=mu_at,
        cutoff=support,
    )


# ---------------------------------------------------------------------------
# trigonometric polynomials
# ---------------------------------------------------------------------------


def periodic_grid(N: int) -> FloatArray:
    """Return t_j = -pi + 2 pi j / N for j = 0..N-1."""
    if N < 1:
        raise InvalidRange(f"grid size must be positive, got {N}")
    return -np.pi + 2.0 * np.pi * np.arange(N) / N


def _frozen_array(values: ArrayLike) -> FloatArray:
    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """a0/2 + sum_{k=1}^N (a_k cos kx + b_k sin kx)."""

    a0: float = 0.0
    cos_coeffs: FloatArray = field(default_factory=lambda: _frozen_array([]))
    sin_coeffs: FloatArray = field(default_factory=lambda: _frozen_array([]))

    def __post_init__(self):
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", _frozen_array(self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", _frozen_array(self.sin_coeffs))
        if self.cos_coeffs.shape != self.sin_coeffs.shape:
            raise InvalidRange(
                f"{len(self.cos_coeffs)} cosine and {len(self.sin_coeffs)} sine "
                "coefficients"
            )

    @classmethod
    def zero(cls, degree: int = 0) -> "TrigPolynomial":
        return cls(0.0, np.zeros(degree), np.zeros(degree))

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    @property
    def constant(self) -> float:
        return self.a0 / 2.0

    def resized(self, degree: int) -> "TrigPolynomial":
        """Return the polynomial truncated or zero padded to degree."""
        a = np.zeros(degree)
        b = np.zeros(degree)
        top = min(degree, self.degree)
        a[:top] = self.cos_coeffs[:top]
        b[:top] = self.sin_coeffs[:top]
        return TrigPolynomial(self.a0, a, b)

    def amplitudes_sq(self) -> FloatArray:
        """Return a_k**2 + b_k**2 for k = 1..N."""
        return self.cos_coeffs**2 + self.sin_coeffs**2

    def l2_norm(self) -> float:
        """Return the L2 norm over a period by Parseval."""
        terms = [self.a0**2 / 2.0, *self.amplitudes_sq().tolist()]
        return math.sqrt(math.pi * compensated_sum(terms))

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        degree = max(self.degree, other.degree)
        left, right = self.resized(degree), other.resized(degree)
        return TrigPolynomial(
            left.a0 + right.a0,
            left.cos_coeffs + right.cos_coeffs,
            left.sin_coeffs + right.sin_coeffs,
        )

    def __mul__(self, scalar: float) -> "TrigPolynomial":
        return TrigPolynomial(
            scalar * self.a0, scalar * self.cos_coeffs, scalar * self.sin_coeffs
        )

    __rmul__ = __mul__

    def __neg__(self) -> "TrigPolynomial":
        return self * -1.0

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def evaluate(self, t: ArrayLike) -> FloatArray:
        """Return the polynomial at the points t by direct summation."""
        t = np.asarray(t, dtype=float)
        ks = np.arange(1, self.degree + 1)
        phase = np.multiply.outer(t, ks)
        return (
            self.constant
            + np.cos(phase) @ self.cos_coeffs
            + np.sin(phase) @ self.sin_coeffs
        )

    def sample(self, N: int) -> FloatArray:
        """Return the polynomial on periodic_grid(N).

        Below Nyquist the samples come from one inverse real FFT, with the
        grid offset -pi folded into the coefficients as (-1)**k.
        """
        if 2 * self.degree >= N:
            return self.evaluate(periodic_grid(N))
        spectrum = np.zeros(N // 2 + 1, dtype=complex)
        spectrum[0] = N * self.constant
        ks = np.arange(1, self.degree + 1)
        shift = np.where(ks % 2 == 0, 1.0, -1.0)
        spectrum[1 : self.degree + 1] = (
            N / 2.0 * (self.cos_coeffs - 1j * self.sin_coeffs) * shift
        )
        return np.fft.irfft(spectrum, n=N)


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------


def _split_literal(text: str, field_name: str) -> tuple[str, str]:
    kind, sep, body = text.strip().partition(":")
    if not sep or not body:
        raise ParseError(field_name, f"expected '<kind>:<parameters>', got {text!r}")
    return kind.strip().lower(), body.strip()


def _parse_params(
    body: str, field_name: str, allowed: Sequence[str], positional: str | None = None
) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in body.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            if positional is None or params:
                raise ParseError(field_name, f"expected key=value, got {item!r}")
            key, value = positional, item
        key = key.strip()
        if key not in allowed:
            raise ParseError(field_name, f"unknown parameter {key!r}")
        try:
            params[key] = float(value)
        except ValueError as e:
            raise ParseError(field_name, f"{key}={value!r} is not a number") from e
    missing = [key for key in allowed if key not in params]
    if missing:
        raise ParseError(field_name, f"missing parameter {missing[0]!r}")
    return params


def _load_document(path: str, field_name: str) -> dict[str, Any]:
    try:
        document = json.loads(Path(path).read_text())
    except OSError as e:
        raise ParseError(field_name, f"cannot read {path!r}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ParseError(field_name, f"{path!r} is not valid JSON: {e.msg}") from e
    if not isinstance(document, dict):
        raise ParseError(field_name, f"{path!r} must hold an object")
    return document


def _float_list(values: Any, field_name: str) -> tuple[float, ...]:
    if not isinstance(values, list):
        raise ParseError(field_name, "values must be a list of numbers")
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError) as e:
        raise ParseError(field_name, "values must be a list of numbers") from e


def psi_from_document(document: dict[str, Any]) -> ExplicitPsi:
    """Build an ExplicitPsi from {values: [...], tail: {kind, q, scale}}."""
    values = _float_list(document.get("values"), "psi")
    tail_doc = document.get("tail") or {"kind": "zero"}
    kind = str(tail_doc.get("kind", "zero")).lower()
    try:
        if kind == "zero":
            tail: PsiTail = ZeroTail()
        elif kind == "geometric":
            tail = GeometricTail(
                float(tail_doc["q"]), float(tail_doc.get("scale", 1.0))
            )
        else:
            raise ParseError("psi", f"unknown tail kind {kind!r}")
        return ExplicitPsi(values, tail)
    except KeyError as e:
        raise ParseError("psi", f"tail is missing {e.args[0]!r}") from e
    except DomainError as e:
        raise ParseError("psi", str(e)) from e


def parse_psi(text: str) -> PsiSequence:
    """Parse geometric:q=0.5, power:r=1.5 or file:<path>.

    The result is guaranteed square summable.
    """
    kind, body = _split_literal(text, "psi")
    try:
        if kind == "geometric":
            seq: PsiSequence = GeometricPsi(**_parse_params(body, "psi", ["q"], "q"))
        elif kind == "power":
            seq = PowerLawPsi(**_parse_params(body, "psi", ["r"], "r"))
        elif kind == "file":
            seq = psi_from_document(_load_document(body, "psi"))
        else:
            raise ParseError("psi", f"unknown kind {kind!r}")
    except DomainError as e:
        raise ParseError("psi", str(e)) from e
    if not validate_square_summable(seq):
        raise ParseError("psi", f"{text!r} is not square summable")
    return seq


def parse_beta(text: str) -> BetaSequence:
    """Parse const:1, linear:c=0.5 or file:<path>."""
    kind, body = _split_literal(text, "beta")
    if kind == "const":
        return ConstantBeta(**_parse_params(body, "beta", ["beta"], "beta"))
    if kind == "linear":
        return LinearBeta(**_parse_params(body, "beta", ["c"], "c"))
    if kind == "file":
        document = _load_document(body, "beta")
        try:
            default = float(document.get("default", 0.0))
            return ExplicitBeta(_float_list(document.get("values"), "beta"), default)
        except (TypeError, ValueError) as e:
            raise ParseError("beta", str(e)) from e
    raise ParseError("beta", f"unknown kind {kind!r}")


def method_from_document(document: dict[str, Any]) -> TriangularMethod:
    """Build and validate a method from {n, lambda, mu}."""
    try:
        n = int(document["n"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError("method", "'n' must be a nonnegative integer") from e
    lam = _float_list(document.get("lambda"), "method")
    mu = _float_list(document.get("mu", [0.0] * (n + 1)), "method")
    method = TriangularMethod(n, lam, mu)
    try:
        triangular_validate(method)
    except (ConstraintViolation, InvalidRange) as e:
        raise ParseError("method", str(e)) from e
    return method


def parse_method(text: str) -> TriangularMethod:
    """Parse an inline JSON method or the path of a file holding one."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            document = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError("method", f"invalid JSON: {e.msg}") from e
    else:
        document = _load_document(stripped, "method")
    return method_from_document(document)
