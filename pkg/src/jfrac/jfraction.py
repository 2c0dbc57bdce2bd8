"""Stieltjes tableaux, J-fraction coefficients, Hankel determinants.

Everything in this module is exact: entries are Fractions (or any exact
ring scalars).  The recurrence filled here is

    H[i][n] = H[i-1][n-1] + b_i H[i][n-1] + lambda_{i+1} H[i+1][n-1],

with H[n][n] = 1 and H[i][n] = 0 outside 0 <= i <= n.  Row 0 carries the
moments, rows connect monomials to the monic orthogonal polynomials, and
the lambda-weighted convolution of two columns reproduces row 0.
"""

from fractions import Fraction

from .errors import NonRegular
from .series import PowerSeries


class JFraction:
    """Coefficient pair b = (b_0, ..., b_{K-1}), lam = (lambda_1, ..., lambda_L).

    Regularity (every provided lambda nonzero) is checked on construction,
    because a zero lambda silently truncates the associated tableau.
    """

    __slots__ = ("b", "lam")

    def __init__(self, b, lam):
        self.b = tuple(b)
        self.lam = tuple(lam)
        for idx, v in enumerate(self.lam, start=1):
            if v == 0:
                raise NonRegular(f"lambda_{idx} is zero", index=idx)

    @classmethod
    def from_functions(cls, b_fn, lambda_fn, depth):
        """Materialize b_0..b_{depth-1} and lambda_1..lambda_depth."""
        return cls(
            [b_fn(n) for n in range(depth)],
            [lambda_fn(n) for n in range(1, depth + 1)],
        )

    def lambda_product(self, j):
        """lambda_1 * ... * lambda_j, with the empty product 1 for j = 0."""
        out = Fraction(1)
        for k in range(j):
            out = out * self.lam[k]
        return out

    def __eq__(self, other):
        if not isinstance(other, JFraction):
            return NotImplemented
        return self.b == other.b and self.lam == other.lam

    def __repr__(self):
        return f"JFraction(b={list(self.b)}, lam={list(self.lam)})"


class StieltjesTableau:
    """Triangular array H[i][n], 0 <= i <= n <= N, with H[n][n] = 1."""

    __slots__ = ("H", "N")

    def __init__(self, H):
        self.H = tuple(tuple(row) for row in H)
        self.N = len(self.H) - 1

    def entry(self, i, n):
        """H[i][n]; zero outside the triangle, IndexError past truncation."""
        if n < 0 or n > self.N:
            raise IndexError(f"column {n} beyond truncation {self.N}")
        if i < 0 or i > n:
            return 0
        return self.H[i][n]

    @property
    def row0(self):
        """The moment sequence mu_n = H[0][n]."""
        return tuple(self.H[0])

    def row(self, i):
        return tuple(self.H[i][n] if n >= i else 0 for n in range(self.N + 1))


def tableau_from_jfraction(jf, N):
    """Fill the tableau column by column up to column N.

    Needs b_0..b_{N-1} and lambda_1..lambda_{N-1}; extra coefficients are
    ignored.
    """
    if N >= 1 and len(jf.b) < N:
        raise ValueError(f"need b_0..b_{N - 1} to fill {N} columns")
    if N >= 2 and len(jf.lam) < N - 1:
        raise ValueError(f"need lambda_1..lambda_{N - 1} to fill {N} columns")
    H = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    H[0][0] = 1
    for n in range(1, N + 1):
        for i in range(n, -1, -1):
            above = H[i - 1][n - 1] if i >= 1 else 0
            same = jf.b[i] * H[i][n - 1] if i <= n - 1 else 0
            below = jf.lam[i] * H[i + 1][n - 1] if i + 1 <= n - 1 else 0
            H[i][n] = above + same + below
    return StieltjesTableau(H)


def det_bareiss(rows):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Entries may be Fractions; the intermediate divisions are exact by the
    Sylvester identity, so no spurious blowup of numerators occurs.
    """
    a = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    m = len(a)
    if m == 0:
        return Fraction(1)
    if any(len(row) != m for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def hankel(mu, kind, n, i=None):
    """Shifted Hankel determinants of a moment sequence.

    kind "Delta": the (i+1) x (i+1) determinant whose first i rows are the
    unshifted Hankel rows (mu_k .. mu_{k+i} for k = 0..i-1) and whose last
    row is (mu_n .. mu_{n+i}).  kind "D" is Delta(n, n), kind "chi" is
    Delta(n, n+1).
    """
    if kind == "D":
        return hankel(mu, "Delta", n, i=n)
    if kind == "chi":
        return hankel(mu, "Delta", n + 1, i=n)
    if kind != "Delta":
        raise ValueError(f"unknown Hankel kind {kind!r}")
    if i is None:
        raise ValueError("kind Delta needs the row index i")
    if i < 0 or n < i:
        raise ValueError("Delta(i, n) needs 0 <= i <= n")
    if n + i >= len(mu):
        raise ValueError(f"need moments through mu_{n + i}")
    rows = [[mu[k + c] for c in range(i + 1)] for k in range(i)]
    rows.append([mu[n + c] for c in range(i + 1)])
    return det_bareiss(rows)


def jfraction_from_moments(mu, depth=None):
    """Recover b_0..b_{K-1}, lambda_1..lambda_K from mu_0..mu_M, K = M // 2.

    Uses the Hankel-determinant formulas
        lambda_n = D_{n-2} D_n / D_{n-1}^2,
        b_n = chi_n / D_n - chi_{n-1} / D_{n-1},
    with D_{-1} = 1.  A vanishing D_n raises NonRegular with that index.
    """
    mu = list(mu)
    max_depth = (len(mu) - 1) // 2
    if depth is None:
        depth = max_depth
    if depth > max_depth:
        raise ValueError(f"depth {depth} needs moments through mu_{2 * depth}")
    D = [Fraction(1)]  # D[-1] stored at index 0; D[n] at index n+1
    for n in range(depth + 1):
        d = hankel(mu, "D", n)
        if d == 0:
            raise NonRegular(f"Hankel determinant D_{n} vanishes", index=n)
        D.append(d)
    chi = [hankel(mu, "chi", n) for n in range(depth)]
    b = []
    for n in range(depth):
        prev = chi[n - 1] / D[n] if n >= 1 else 0
        b.append(chi[n] / D[n + 1] - prev)
    lam = []
    for n in range(1, depth + 1):
        lam.append(D[n - 1] * D[n + 1] / (D[n] * D[n]))
    return JFraction(b, lam)


def cf_series(jf, N):
    """Moments mu_0..mu_N from the continued fraction, by truncated series.

    Evaluates 1/(1 - b_0 x - lambda_1 x^2 / (1 - b_1 x - ...)) bottom-up with
    exact truncated series arithmetic.  Truncating the descent at level
    floor(N/2) + 1 is enough because level m only influences degrees >= 2m.
    This is an independent route to row 0 of the tableau.
    """
    levels = N // 2 + 1
    if len(jf.b) < levels:
        raise ValueError(f"need b_0..b_{levels - 1} for degree {N}")
    if len(jf.lam) < N // 2:
        raise ValueError(f"need lambda_1..lambda_{N // 2} for degree {N}")
    f = PowerSeries.one(N)
    for m in range(levels - 1, -1, -1):
        u = PowerSeries.term(jf.b[m], 1, N) if N >= 1 else PowerSeries.zero(N)
        # lambda_{m+1} first matters at degree 2(m+1); at the deepest level
        # that exceeds N, so a missing final lambda is fine
        if m + 1 <= len(jf.lam) and 2 * (m + 1) <= N:
            u = u + PowerSeries.term(jf.lam[m], 2, N) * f
        f = (PowerSeries.one(N) - u).reciprocal()
    return f.coefficients


class MonicPolyTable:
    """Coefficient rows of the monic orthogonal polynomials P_0..P_N.

    coeffs[n][k] is the x^k coefficient of P_n; coeffs[n][n] = 1.
    """

    __slots__ = ("coeffs", "N")

    def __init__(self, coeffs):
        self.coeffs = tuple(tuple(row) for row in coeffs)
        self.N = len(self.coeffs) - 1

    def poly(self, n):
        return list(self.coeffs[n])

    def eval_at(self, n, x):
        acc = 0
        for c in reversed(self.coeffs[n]):
            acc = acc * x + c
        return acc


def monic_polys(jf, N):
    """P_0 = 1, P_{n+1} = (x - b_n) P_n - lambda_n P_{n-1} (lambda_0 absent)."""
    if N >= 1 and len(jf.b) < N:
        raise ValueError(f"need b_0..b_{N - 1} for P_{N}")
    if N >= 2 and len(jf.lam) < N - 1:
        raise ValueError(f"need lambda_1..lambda_{N - 1} for P_{N}")
    rows = [[Fraction(1)]]
    if N >= 1:
        rows.append([-jf.b[0], Fraction(1)])
    for n in range(1, N):
        prev, cur = rows[n - 1], rows[n]
        nxt = [0] * (n + 2)
        for k, c in enumerate(cur):
            nxt[k + 1] += c
            nxt[k] -= jf.b[n] * c
        for k, c in enumerate(prev):
            nxt[k] -= jf.lam[n - 1] * c
        rows.append(nxt)
    return MonicPolyTable(rows)


def verify_connection(tab, polys, n):
    """Check x^n = sum_j H[j][n] P_j(x) as an exact coefficient identity."""
    acc = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        h = tab.entry(j, n)
        if h == 0:
            continue
        for k, c in enumerate(polys.coeffs[j]):
            acc[k] += h * c
    return all(acc[k] == (1 if k == n else 0) for k in range(n + 1))


def verify_convolution(tab, jf, k, l):
    """Check H[0][k+l] = sum_j lambda_1..lambda_j H[j][k] H[j][l] exactly."""
    total = 0
    for j in range(min(k, l) + 1):
        total += jf.lambda_product(j) * tab.entry(j, k) * tab.entry(j, l)
    return total == tab.entry(0, k + l)
