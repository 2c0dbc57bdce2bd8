"""Translation operators acting on moment generating functions.

Five kinds are supported: the ordinary shift t -> t + s, the q-translation
sending t^n to (t+s)(t+sq)...(t+sq^{n-1}), the non-commutative substitution
t -> t + s in the algebra st = q ts, a generalized translation given by two
coefficient sequences, and an affine change of variable wrapped around an
inner kind.

Bivariate results are coefficient tables {(i, k): c} for c * t^i s^k; the
non-commutative kind returns a :class:`NormalOrderedPoly`, whose table has
the same shape but whose multiplication picks up powers of q when an s is
moved past a t.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import InvalidParams, Unsupported
from .scalar import binom, factorial, q_binomial, q_pochhammer_inf
from .series import SeriesValue, eval_rphis


@dataclass(frozen=True)
class Classical:
    """Ordinary translation: x^n maps to the binomial expansion of (t+s)^n."""


@dataclass(frozen=True)
class QTranslation:
    """x^n maps to (t+s)(t+sq)...(t+sq^{n-1})."""

    q: object


@dataclass(frozen=True)
class NonCommutative:
    """x^n maps to (t+s)^n in the algebra st = q ts, normal-ordered."""

    q: object


@dataclass(frozen=True)
class Generalized:
    """x^m maps to sum_j c_j s^j d_{m-j} t^{m-j} for supplied sequences."""

    c_seq: object
    d_seq: object

    def c(self, j):
        seq = self.c_seq
        return seq(j) if callable(seq) else seq[j]

    def d(self, j):
        seq = self.d_seq
        return seq(j) if callable(seq) else seq[j]


@dataclass(frozen=True)
class Affine:
    """Change of variable x -> (x - b)/a applied before an inner translation."""

    a: object
    b: object
    inner: object

    def __post_init__(self):
        if self.a == 0:
            raise InvalidParams("affine translation needs a != 0")


class NormalOrderedPoly:
    """Polynomial in t, s with st = q ts, kept in normal order (t left of s).

    The coefficient table maps (i, k) to the coefficient of t^i s^k.  All
    products are normalized immediately via (t^a s^b)(t^c s^d) =
    q^{bc} t^{a+c} s^{b+d}, so associativity is inherited from addition in
    the exponents.
    """

    __slots__ = ("q", "coeffs")

    def __init__(self, q, coeffs=None):
        self.q = q
        table = {}
        for key, value in (coeffs or {}).items():
            if value != 0:
                table[key] = value
        self.coeffs = table

    @classmethod
    def zero(cls, q):
        return cls(q)

    @classmethod
    def constant(cls, q, c):
        return cls(q, {(0, 0): c})

    @classmethod
    def monomial(cls, q, c, i, k):
        return cls(q, {(i, k): c})

    def __eq__(self, other):
        if not isinstance(other, NormalOrderedPoly):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __add__(self, other):
        if not isinstance(other, NormalOrderedPoly):
            other = NormalOrderedPoly.constant(self.q, other)
        if other.q != self.q:
            raise ValueError("cannot mix q values")
        table = dict(self.coeffs)
        for key, value in other.coeffs.items():
            table[key] = table.get(key, 0) + value
        return NormalOrderedPoly(self.q, table)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (other * -1 if isinstance(other, NormalOrderedPoly) else -other)

    def __mul__(self, other):
        if not isinstance(other, NormalOrderedPoly):
            return NormalOrderedPoly(
                self.q, {key: value * other for key, value in self.coeffs.items()}
            )
        if other.q != self.q:
            raise ValueError("cannot mix q values")
        q = self.q
        table = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                key = (a + c, b + d)
                table[key] = table.get(key, 0) + u * v * q ** (b * c)
        return NormalOrderedPoly(q, table)

    def __rmul__(self, other):
        # scalar on the left commutes with everything
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("only nonnegative powers")
        out = NormalOrderedPoly.constant(self.q, Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, max_total_degree):
        return NormalOrderedPoly(
            self.q,
            {
                key: value
                for key, value in self.coeffs.items()
                if key[0] + key[1] <= max_total_degree
            },
        )

    def __repr__(self):
        items = sorted(self.coeffs.items())
        body = " + ".join(f"{v}*t^{i}*s^{k}" for (i, k), v in items) or "0"
        return f"NormalOrderedPoly(q={self.q}, {body})"


def monomial_image(kind, n):
    """The translated image of x^n as a coefficient table {(i, k): c}."""
    if isinstance(kind, Classical):
        return {(n - k, k): Fraction(binom(n, k)) for k in range(n + 1)}
    if isinstance(kind, QTranslation):
        q = kind.q
        table = {}
        for k in range(n + 1):
            qc = q ** (k * (k - 1) // 2)
            table[(n - k, k)] = q_binomial(n, k, q) * qc
        return table
    if isinstance(kind, NonCommutative):
        q = kind.q
        return {(k, n - k): q_binomial(n, k, q) for k in range(n + 1)}
    if isinstance(kind, Generalized):
        return {(n - j, j): kind.c(j) * kind.d(n - j) for j in range(n + 1)}
    raise Unsupported(f"no monomial image for translation kind {kind!r}")


def translate_series(p, kind, N):
    """Translate a univariate series into the bivariate (t, s) table.

    ``p`` is indexable by exponent (a PowerSeries or plain sequence of
    coefficients of x^n).  The result keeps total degree <= N.  For the
    non-commutative kind a NormalOrderedPoly is returned; the other kinds
    return a plain dict since their variables commute.
    """
    coeffs = list(p)
    if len(coeffs) < N + 1:
        raise ValueError(f"series must carry coefficients through degree {N}")
    table = {}
    for n in range(N + 1):
        c = coeffs[n]
        if c == 0:
            continue
        for key, value in monomial_image(kind, n).items():
            table[key] = table.get(key, 0) + c * value
    table = {key: value for key, value in table.items() if value != 0}
    if isinstance(kind, NonCommutative):
        return NormalOrderedPoly(kind.q, table)
    return table


def _classical_sum(h_row, s, t, ctx, scale=1):
    with ctx.workprec():
        x = ctx.number(t) + ctx.number(s)
        if scale != 1:
            x = x / ctx.number(scale)
        total = x * 0
        term_pow = x * 0 + 1
        last = abs(term_pow)
        n_used = 0
        for n, h in enumerate(h_row):
            if h != 0:
                term = ctx.number(h) * term_pow / factorial(n)
                total = total + term
                last = abs(term)
                n_used = n + 1
            term_pow = term_pow * x
        return total, n_used, last


def _translate_eval_family(f, kind, s, t, ctx, depth=80):
    # closed translated forms where one is known; otherwise fall back to the
    # series route over a numerically materialized tableau row
    from .families import q_function
    from .jfraction import JFraction, tableau_from_jfraction

    if isinstance(kind, Classical) or (
        isinstance(kind, Affine) and isinstance(kind.inner, Classical)
    ):
        # an affine family's own Q_0 already carries the shifted normalization
        with ctx.workprec():
            x = ctx.number(t) + ctx.number(s)
        return q_function(f, 0, x, ctx)
    if isinstance(kind, QTranslation):
        p = f.params
        q = kind.q
        with ctx.workprec():
            tv = ctx.number(t)
            sv = ctx.number(s)
            if tv != 0 and f.id == "little_q_jacobi":
                a, b = p["a"], p["b"]
                return eval_rphis(
                    [ctx.number(a * q), -sv / tv], [ctx.number(a * b * q * q)], q, tv, ctx
                )
            if tv != 0 and f.id == "big_q_jacobi":
                a, b, c = p["a"], p["b"], p["c"]
                inner = eval_rphis(
                    [ctx.number(a * q), ctx.number(a * b * q / c), -sv / tv],
                    [ctx.number(a * b * q * q), -ctx.number(a * q) * sv],
                    q,
                    ctx.number(q * c) * tv,
                    ctx,
                )
                pref = q_pochhammer_inf(-ctx.number(a * q) * sv, q, ctx) / q_pochhammer_inf(
                    ctx.number(a * q) * tv, q, ctx
                )
                return SeriesValue(
                    pref * inner.value, inner.terms_used, abs(pref) * inner.tail_bound
                )
            if tv != 0 and f.id == "al_salam_carlitz":
                a = p["a"]
                inner = eval_rphis([0, -sv / tv], [-sv], q, ctx.number(a) * tv, ctx)
                pref = q_pochhammer_inf(-sv, q, ctx) / q_pochhammer_inf(tv, q, ctx)
                return SeriesValue(
                    pref * inner.value, inner.terms_used, abs(pref) * inner.tail_bound
                )
            bs = [ctx.number(f.b_fn(n)) for n in range(depth)]
            lams = [ctx.number(f.lambda_fn(n)) for n in range(1, depth + 1)]
            row = list(tableau_from_jfraction(JFraction(bs, lams), depth - 1).row0)
        return translate_eval(row, kind, s, t, ctx)
    raise Unsupported(f"no numeric evaluation for translation kind {kind!r}")


def translate_eval(h_row, kind, s, t, ctx):
    """Numeric value of the translated moment generating function.

    ``h_row`` is either a family record or an indexable row of exact
    H_{0,n} coefficients (the tableau's row 0).  For a family the translated
    value is computed through the closed forms bound to it where available.
    For a plain row: Classical sums H_{0,n} (t+s)^n / n!; QTranslation sums
    H_{0,n} / (q;q)_n times the product (t+s)(t+sq)...(t+sq^{n-1});
    Affine(a, b, Classical) gives e^{-b(t+s)/a} times the classical sum at
    (t+s)/a, which is the translated form of the shifted family's generating
    function.  The non-commutative and generalized kinds have no numeric
    semantics here (their variables do not commute, or their value is a
    table) and raise Unsupported.
    """
    if hasattr(h_row, "b_fn") and hasattr(h_row, "params"):
        return _translate_eval_family(h_row, kind, s, t, ctx)
    if isinstance(kind, Classical):
        total, n_used, last = _classical_sum(h_row, s, t, ctx)
        return SeriesValue(total, n_used, last)
    if isinstance(kind, QTranslation):
        with ctx.workprec():
            q = ctx.number(kind.q)
            tv = ctx.number(t)
            sv = ctx.number(s)
            total = tv * 0
            prod = tv * 0 + 1  # prod_{i<n} (t + s q^i)
            qq = prod  # (q; q)_n
            qpow = prod
            last = abs(prod)
            n_used = 0
            for n, h in enumerate(h_row):
                if h != 0:
                    term = ctx.number(h) * prod / qq
                    total = total + term
                    last = abs(term)
                    n_used = n + 1
                prod = prod * (tv + sv * qpow)
                qpow = qpow * q
                qq = qq * (1 - q ** (n + 1))
            return SeriesValue(total, n_used, last)
    if isinstance(kind, Affine):
        if not isinstance(kind.inner, Classical):
            raise Unsupported("affine evaluation is defined over a classical inner kind")
        with ctx.workprec():
            total, n_used, last = _classical_sum(h_row, s, t, ctx, scale=kind.a)
            x = ctx.number(t) + ctx.number(s)
            pref = mpmath.exp(-ctx.number(kind.b) * x / ctx.number(kind.a))
            return SeriesValue(pref * total, n_used, abs(pref) * last)
    raise Unsupported(f"no numeric evaluation for translation kind {kind!r}")
