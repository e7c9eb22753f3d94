"""Truncated power series in the velocity ratio beta.

Order-N arithmetic for expressions like gamma^4 (1 - 2 beta^2): coefficients
are doubles indexed by power of beta, products are Cauchy products cut back
to the smaller operand order, and nothing ever extends an order silently.
The expansion variable is beta itself, not 1/c; the two bookkeepings agree
because every beta carries one inverse power of c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gravlink.errors import DomainError

DEFAULT_ORDER = 4


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial in beta with a hard truncation order.

    ``coefficients[n]`` multiplies beta**n; the array always has length
    ``order + 1``.
    """

    coefficients: np.ndarray
    order: int

    def __post_init__(self):
        arr = np.array(self.coefficients, dtype=float).reshape(-1)
        if self.order < 0:
            raise DomainError(f"order must be non-negative, got {self.order}")
        if arr.size != self.order + 1:
            raise DomainError(
                f"need order + 1 = {self.order + 1} coefficients, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError("series coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coefficients", arr)

    @classmethod
    def from_coefficients(cls, coefficients) -> "TruncatedSeries":
        arr = np.asarray(coefficients, dtype=float)
        return cls(arr, arr.size - 1)

    @classmethod
    def constant(cls, value: float, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        arr = np.zeros(order + 1)
        arr[0] = value
        return cls(arr, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls(np.zeros(order + 1), order)

    def truncated(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coefficients[: order + 1], order)

    def coefficient(self, power: int) -> float:
        """Coefficient of beta**power; zero beyond the truncation order."""
        if 0 <= power <= self.order:
            return float(self.coefficients[power])
        return 0.0

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, series_neg(other))

    def __neg__(self) -> "TruncatedSeries":
        return series_neg(self)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __call__(self, beta: float) -> float:
        return evaluate(self, beta)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    return TruncatedSeries(
        a.coefficients[: order + 1] + b.coefficients[: order + 1], order
    )


def series_neg(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(-a.coefficients, a.order)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated back to the smaller operand order."""
    order = min(a.order, b.order)
    full = np.convolve(a.coefficients, b.coefficients)
    return TruncatedSeries(full[: order + 1], order)


def gamma_power_series(p: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expansion of gamma**p = (1 - beta^2)^(-p/2) about beta = 0.

    Built from the binomial recurrence in u = beta^2: with c_0 = 1,
    c_{n+1} = c_n (n + p/2) / (n + 1).  Negative even p terminates exactly
    (it is the polynomial (1 - beta^2)^{|p|/2}); odd powers of beta are
    always zero.
    """
    p = int(p)
    if order < 0:
        raise DomainError(f"order must be non-negative, got {order}")
    coeffs = np.zeros(order + 1)
    c = 1.0
    coeffs[0] = c
    for n in range(order // 2):
        c *= (n + p / 2.0) / (n + 1.0)
        coeffs[2 * (n + 1)] = c
    return TruncatedSeries(coeffs, order)


def evaluate(s: TruncatedSeries, beta: float) -> float:
    """Horner evaluation at a subluminal velocity ratio."""
    beta = float(beta)
    if not abs(beta) < 1.0:
        raise DomainError(f"evaluation requires |beta| < 1, got {beta!r}")
    acc = 0.0
    for c in s.coefficients[::-1]:
        acc = acc * beta + c
    return acc
