"""Low-level numerical helpers: compensated summation, log-domain factorial ratios."""

import numpy as np
from scipy.special import gammaln


class CompensatedSum:
    """Neumaier-compensated running sum over same-shape float arrays.

    A plain running sum of a few hundred oscillatory terms loses digits;
    the compensation keeps the error at a few ulp independent of length.
    The result is independent of how the terms were produced, so chunked
    (threaded) evaluation over a grid reproduces sequential results bit
    for bit as long as the per-element term order is unchanged.
    """

    def __init__(self, shape=()):
        self._sum = np.zeros(shape)
        self._comp = np.zeros(shape)

    def add(self, term):
        term = np.asarray(term, dtype=float)
        total = self._sum + term
        big = np.abs(self._sum) >= np.abs(term)
        self._comp += np.where(big, (self._sum - total) + term,
                               (term - total) + self._sum)
        self._sum = total

    @property
    def value(self):
        return self._sum + self._comp


def sqrt_factorial_ratio(base, s1, s2):
    """exp(0.5 [ln(base+s1)! + ln(base+s2)!] - ln base!), elementwise.

    Evaluated through log-gamma so that base of order 10^3 stays finite
    where a direct factorial would overflow.
    """
    b = np.asarray(base, dtype=float)
    return np.exp(0.5 * (gammaln(b + s1 + 1.0) + gammaln(b + s2 + 1.0))
                  - gammaln(b + 1.0))


def falling_factorial(m, s):
    """m (m-1) ... (m-s+1) as an exact integer; 0 when m < s."""
    if s < 0:
        raise ValueError("order must be nonnegative")
    if m < s:
        return 0
    out = 1
    for i in range(s):
        out *= m - i
    return out
