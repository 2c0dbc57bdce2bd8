"""Exact rational and arbitrary-precision scalar helpers.

Exact arithmetic runs on ``fractions.Fraction``; floating arithmetic runs on
mpmath at a precision chosen through :class:`PrecisionContext`.  Everything
here is scalar; truncated power series live in :mod:`jfrac.series`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import GammaPole, NonConvergent


def rat(x):
    """Coerce ``x`` to an exact rational.

    Accepts Fraction, int, or a string such as ``"3/7"`` or ``"-2"``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x):
    """Render a rational as ``p/q``, or just ``p`` for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def binom(n, k):
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n):
    return math.factorial(n)


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    result = 1
    for i in range(n):
        result = result * (a + i)
    return result


def q_int(n, q):
    """The q-integer [n]_q = 1 + q + ... + q^{n-1}.  Well defined at q = 1."""
    result = 0
    power = 1
    for _ in range(n):
        result = result + power
        power = power * q
    return result


def q_pochhammer(a, q, n):
    """Finite q-shifted factorial (a; q)_n = prod_{k<n} (1 - a q^k)."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    result = 1
    aq = a
    for _ in range(n):
        result = result * (1 - aq)
        aq = aq * q
    return result


def q_binomial(n, k, q):
    """Gaussian binomial coefficient, exact for rational q.

    Computed by the Pascal-type recurrence
    [n, k]_q = [n-1, k-1]_q + q^k [n-1, k]_q, which stays valid at q = 1
    (where it degenerates to the ordinary binomial).
    """
    if k < 0 or k > n:
        return 0
    row = [1]
    for m in range(1, n + 1):
        new = [1]
        qpow = q
        for j in range(1, m):
            new.append(row[j - 1] + qpow * row[j])
            qpow = qpow * q
        new.append(1)
        row = new
    return row[k]


@dataclass
class PrecisionContext:
    """Floating evaluation settings shared by the series evaluators.

    precision_bits is the binary precision of reported values; internally
    sums are carried with extra guard bits.  rel_tolerance and
    consecutive_small define the stopping rule used by the hypergeometric
    evaluators, and max_terms bounds the work before giving up.
    """

    precision_bits: int = 256
    rel_tolerance: float = 1e-30
    max_terms: int = 10000
    consecutive_small: int = 3
    guard_bits: int = 64

    def workprec(self):
        """mpmath context manager at working precision (guard bits included)."""
        return mpmath.workprec(self.precision_bits + self.guard_bits)

    @property
    def decimal_digits(self):
        # floor(bits * log10(2)), never fewer than 8 digits
        return max(8, self.precision_bits * 30103 // 100000)

    def mpf(self, x):
        """Convert int/Fraction/str/float/mpf to mpf at working precision."""
        with self.workprec():
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            if isinstance(x, (mpmath.mpf, mpmath.mpc)):
                return +x
            return mpmath.mpf(x)

    def number(self, x):
        """Like :meth:`mpf` but passes complex values through as mpc."""
        if isinstance(x, (complex, mpmath.mpc)):
            with self.workprec():
                return +mpmath.mpc(x)
        return self.mpf(x)

    def nstr(self, x):
        """Deterministic decimal rendering at the context's digit count."""
        return mpmath.nstr(x, self.decimal_digits)

    def gamma(self, x):
        """Gamma function that refuses poles instead of returning inf/nan."""
        z = self.number(x)
        with self.workprec():
            if mpmath.im(z) == 0:
                re = mpmath.re(z)
                if re <= 0 and re == mpmath.floor(re):
                    raise GammaPole(f"gamma pole at {x}")
            return mpmath.gamma(z)


def q_pochhammer_inf(a, q, ctx=None):
    """Infinite product (a; q)_inf for |q| < 1, evaluated to ctx precision.

    Factors are multiplied until |a q^k| drops below the working epsilon;
    the abandoned tail then satisfies |tail - 1| <= exp(|a q^k|/(1-|q|)) - 1,
    which is far below the reported precision.
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec():
        av = ctx.number(a)
        qv = ctx.number(q)
        absq = abs(qv)
        if absq >= 1:
            raise NonConvergent(f"(a; q)_inf needs |q| < 1, got |q| = {absq}")
        eps = mpmath.mpf(2) ** (-(ctx.precision_bits + ctx.guard_bits // 2))
        result = mpmath.mpf(1) if isinstance(av, mpmath.mpf) and isinstance(qv, mpmath.mpf) else mpmath.mpc(1)
        term = av
        small = 0
        for k in range(ctx.max_terms):
            if abs(term) < eps:
                small += 1
                if small >= ctx.consecutive_small:
                    return result
            else:
                small = 0
            result = result * (1 - term)
            term = term * qv
        raise NonConvergent(
            "(a; q)_inf did not reach the tail threshold; |q| too close to 1",
            terms_used=ctx.max_terms,
            last_partial=result,
        )
