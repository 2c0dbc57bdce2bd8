"""Verification harness for the addition formulas and related identities.

Every registered case compares an independently evaluated left-hand side
against a truncated right-hand side and returns a structured report.
Numeric cases run under a PrecisionContext and report relative error plus
an empirical tail estimate (the magnitude of the last included term).
Exact cases compare coefficient tables over Fractions and pass only on
exact equality.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from fnmatch import fnmatchcase

import mpmath

from .errors import InvalidParams, JfracError, UnknownTheorem
from .families import (
    chebyshev_u,
    cq_ultraspherical_poly,
    family_moments,
    family_tableau,
    gegenbauer_poly,
    hermite_poly,
    jacobi_poly,
    make_affine,
    make_family,
    q_function,
    q_tilde_function,
)
from .jfraction import JFraction, det_bareiss, tableau_from_jfraction
from .scalar import (
    PrecisionContext,
    binom,
    factorial,
    pochhammer,
    q_pochhammer,
    rat,
)
from .series import SeriesValue, bessel_i, bessel_j, eval_pfq
from .translation import Classical, NonCommutative, QTranslation, translate_eval, translate_series

F = Fraction

SUITE_VERSION = "1.0.0"


@dataclass
class VerificationReport:
    """Outcome of one theorem or identity check.

    ``lhs``/``rhs_partial`` are high-precision numbers in numeric mode and
    None in exact mode, where ``n_terms`` counts coefficients (or instances)
    compared and ``abs_error`` is the largest exact deviation found.
    """

    id: str
    params: dict
    s: object
    t: object
    lhs: object
    rhs_partial: object
    n_terms: int
    abs_error: object
    rel_error: object
    tail_estimate: object
    passed: bool
    mode: str


@dataclass
class TheoremCase:
    """Executable pieces of one addition formula."""

    id: str
    family: object
    kind: object
    lhs_eval: object  # (s, t, ctx) -> SeriesValue
    rhs_weight: object  # n -> scalar, weight(0) = 1
    rhs_left_fn: object  # (n, t, ctx) -> SeriesValue
    rhs_right_fn: object  # (n, s, ctx) -> SeriesValue
    mode: str
    rhs_prefactor: object = None  # optional (s, t, ctx) -> scalar
    exact_check: object = None  # ctx -> (passed, n_checked, max_dev, extra)


# ---------------------------------------------------------------------------
# numeric engine

def _numeric_report(case, params, s, t, N, tolerance, ctx):
    with ctx.workprec():
        lhs = case.lhs_eval(s, t, ctx).value
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        for n in range(N + 1):
            w = ctx.number(case.rhs_weight(n))
            lf = case.rhs_left_fn(n, t, ctx).value
            rf = case.rhs_right_fn(n, s, ctx).value
            term = w * lf * rf
            total = total + term
            last = abs(term)
        if case.rhs_prefactor is not None:
            pref = case.rhs_prefactor(s, t, ctx)
            total = pref * total
            last = abs(pref) * last
        abs_error = abs(lhs - total)
        denom = abs(lhs)
        rel_error = abs_error / denom if denom > 0 else abs_error
        passed = rel_error <= ctx.number(tolerance)
    return VerificationReport(
        id=case.id,
        params=params,
        s=s,
        t=t,
        lhs=lhs,
        rhs_partial=total,
        n_terms=N + 1,
        abs_error=abs_error,
        rel_error=rel_error,
        tail_estimate=last,
        passed=passed,
        mode="numeric",
    )


def _exact_report(case, params, ctx):
    passed, n_checked, max_dev, extra = case.exact_check(ctx)
    if extra:
        params = {**params, **extra}
    return VerificationReport(
        id=case.id,
        params=params,
        s=None,
        t=None,
        lhs=None,
        rhs_partial=None,
        n_terms=n_checked,
        abs_error=max_dev,
        rel_error=None,
        tail_estimate=None,
        passed=passed,
        mode="exact",
    )


# ---------------------------------------------------------------------------
# theorem case builders

def _case_conf_hyp_1f1(params):
    alpha, beta = params["alpha"], params["beta"]
    if alpha + beta <= -1:
        raise InvalidParams("conf_hyp_1f1 needs alpha + beta > -1")

    def weight(n):
        return (
            pochhammer(alpha + 1, n)
            * pochhammer(beta + 1, n)
            * pochhammer(alpha + beta + 1, n)
            / (
                F(factorial(n))
                * pochhammer(alpha + beta + 1, 2 * n)
                * pochhammer(alpha + beta + 2, 2 * n)
            )
        )

    def lhs(s, t, ctx):
        with ctx.workprec():
            return eval_pfq([alpha + 1], [alpha + beta + 2], ctx.number(t) + ctx.number(s), ctx)

    def factor(n, v, ctx):
        with ctx.workprec():
            vv = ctx.number(v)
            inner = eval_pfq([alpha + n + 1], [alpha + beta + 2 * n + 2], vv, ctx)
            return SeriesValue(vv ** n * inner.value, inner.terms_used, inner.tail_bound)

    return TheoremCase(
        id="conf_hyp_1f1",
        family=None,
        kind=Classical(),
        lhs_eval=lhs,
        rhs_weight=weight,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="numeric",
    )


def _case_bessel_plus(params):
    nu = params["nu"]
    if nu <= 0:
        raise InvalidParams("bessel_plus needs nu > 0")

    def weight(n):
        return (nu + n) * F(-1) ** n * pochhammer(2 * nu, n) / (nu * factorial(n))

    def lhs(s, t, ctx):
        with ctx.workprec():
            x = ctx.number(t) + ctx.number(s)
            inner = bessel_j(nu, x, ctx)
            value = inner.value / mpmath.power(x, ctx.number(nu))
            return SeriesValue(value, inner.terms_used, inner.tail_bound)

    def factor(n, v, ctx):
        return bessel_j(nu + n, ctx.number(v), ctx)

    def prefactor(s, t, ctx):
        with ctx.workprec():
            xy = ctx.number(t) * ctx.number(s)
            return ctx.gamma(nu + 1) / mpmath.power(xy / 2, ctx.number(nu))

    return TheoremCase(
        id="bessel_plus",
        family=None,
        kind=Classical(),
        lhs_eval=lhs,
        rhs_weight=weight,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="numeric",
        rhs_prefactor=prefactor,
    )


def _qtrans_case(tid, family_id, params, alt_left=False):
    spec = make_family(family_id, params)
    kind = QTranslation(spec.params["q"])

    def lhs(s, t, ctx):
        return translate_eval(spec, kind, s, t, ctx)

    left_fn = spec.alt_q_fn if alt_left else spec.q_fn

    def left(n, t, ctx):
        return left_fn(n, t, ctx)

    def right(n, s, ctx):
        return q_tilde_function(spec, n, s, ctx)

    return TheoremCase(
        id=tid,
        family=spec,
        kind=kind,
        lhs_eval=lhs,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=left,
        rhs_right_fn=right,
        mode="numeric",
    )


def _case_little_qj(params):
    return _qtrans_case("little_qj", "little_q_jacobi", params)


def _case_little_qj_alt(params):
    return _qtrans_case("little_qj_alt", "little_q_jacobi", params, alt_left=True)


def _case_big_qj(params):
    return _qtrans_case("big_qj", "big_q_jacobi", params)


def _case_asc_qtrans(params):
    return _qtrans_case("asc_qtrans", "al_salam_carlitz", params)


def _self_dual_case(tid, family_id, params):
    # addition formula over the ordinary shift with Q_n on both sides
    fparams = {k: v for k, v in params.items() if k != "degree"}
    spec = make_family(family_id, fparams)

    def lhs(s, t, ctx):
        return translate_eval(spec, Classical(), s, t, ctx)

    def factor(n, v, ctx):
        return q_function(spec, n, v, ctx)

    return TheoremCase(
        id=tid,
        family=spec,
        kind=Classical(),
        lhs_eval=lhs,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="numeric",
    )


def _case_q_ultra(params):
    return _self_dual_case("q_ultra", "q_ultraspherical", params)


def _case_q_ultra_beta0(params):
    return _self_dual_case("q_ultra_beta0", "q_ultraspherical_beta0", params)


def _case_askey_wilson(params):
    return _self_dual_case("askey_wilson", "askey_wilson_slice", params)


def _case_mp_moments(params):
    spec = make_family(
        "meixner_pollaczek_moments",
        {"lam": params["lam"], "x": params["x"], "phi_over_pi": params["phi_over_pi"]},
    )

    def lhs(s, t, ctx):
        return translate_eval(spec, Classical(), s, t, ctx)

    def factor(n, v, ctx):
        return q_function(spec, n, v, ctx)

    return TheoremCase(
        id="mp_moments",
        family=spec,
        kind=Classical(),
        lhs_eval=lhs,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="numeric",
    )


def _case_affine(params):
    base_params = {k[5:]: v for k, v in params.items() if k.startswith("base_")}
    base = make_family(params["base"], base_params)
    spec = make_affine(base, params["a"], params["b"])

    def lhs(s, t, ctx):
        return translate_eval(spec, spec.translation, s, t, ctx)

    def factor(n, v, ctx):
        return q_function(spec, n, v, ctx)

    return TheoremCase(
        id="affine",
        family=spec,
        kind=spec.translation,
        lhs_eval=lhs,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="numeric",
    )


def _bivariate_exact_check(spec, degree):
    # coefficient-level form of Q_0(t+s) = sum_n w_n Q_n(t) Q_n(s)
    weights = [spec.weight_fn(n) for n in range(degree + 1)]
    rows = [spec.q_series_fn(n, degree) for n in range(degree + 1)]
    c0 = rows[0]
    checked = 0
    mismatches = 0
    max_dev = F(0)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            lhs = c0[i + j] * binom(i + j, i)
            rhs = sum(
                (weights[n] * rows[n][i] * rows[n][j] for n in range(min(i, j) + 1)),
                F(0),
            )
            checked += 1
            if lhs != rhs:
                mismatches += 1
                dev = abs(lhs - rhs)
                if dev > max_dev:
                    max_dev = dev
    return mismatches == 0, checked, max_dev, None


def _moments_exact_case(tid, family_id, params):
    degree = params["degree"]
    fparams = {k: v for k, v in params.items() if k != "degree"}
    spec = make_family(family_id, fparams)

    def check(ctx):
        return _bivariate_exact_check(spec, degree)

    def factor(n, v, ctx):
        return q_function(spec, n, v, ctx)

    return TheoremCase(
        id=tid,
        family=spec,
        kind=Classical(),
        lhs_eval=None,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=factor,
        rhs_right_fn=factor,
        mode="exact",
        exact_check=check,
    )


def _case_hermite_moments(params):
    return _moments_exact_case("hermite_moments", "hermite_moments", params)


def _case_laguerre_moments(params):
    return _moments_exact_case("laguerre_moments", "laguerre_moments", params)


def _case_meixner_moments(params):
    return _moments_exact_case("meixner_moments", "meixner_moments", params)


def _case_gegenbauer_moments(params):
    return _moments_exact_case("gegenbauer_moments", "gegenbauer_moments", params)


def _case_asc_noncomm(params):
    a, q = params["a"], params["q"]
    degree = params["degree"]
    spec = make_family("al_salam_carlitz", {"a": a, "q": q})

    def check(ctx):
        tab = family_tableau(spec, degree)
        qq = [F(q_pochhammer(q, q, n)) for n in range(degree + 1)]
        h0 = [tab.entry(0, n) / qq[n] for n in range(degree + 1)]
        lhs_poly = translate_series(h0, NonCommutative(q), degree)
        rhs = {}
        for n in range(degree + 1):
            w = spec.weight_fn(n)
            for m in range(n, degree + 1):
                cm = tab.entry(n, m) / qq[m]
                if cm == 0:
                    continue
                for k in range(n, degree + 1 - m):
                    ck = tab.entry(n, k) / qq[k]
                    if ck != 0:
                        rhs[(m, k)] = rhs.get((m, k), F(0)) + w * cm * ck
        rhs = {key: v for key, v in rhs.items() if v != 0}
        keys = set(lhs_poly.coeffs) | set(rhs)
        mismatches = 0
        max_dev = F(0)
        for key in keys:
            dev = abs(lhs_poly.coeffs.get(key, F(0)) - rhs.get(key, F(0)))
            if dev != 0:
                mismatches += 1
                if dev > max_dev:
                    max_dev = dev
        checked = (degree + 1) * (degree + 2) // 2
        return mismatches == 0, checked, max_dev, None

    return TheoremCase(
        id="asc_noncomm",
        family=spec,
        kind=NonCommutative(q),
        lhs_eval=None,
        rhs_weight=spec.weight_fn,
        rhs_left_fn=None,
        rhs_right_fn=None,
        mode="exact",
        exact_check=check,
    )


def _random_jfraction(seed, depth):
    """Seeded rational three-term data with nonzero lambdas."""
    rng = random.Random(seed)
    b = tuple(F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(depth + 1))
    lam = tuple(
        F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(depth + 1)
    )
    return JFraction(b, lam)


def _case_classical_generic(params):
    seed, degree = params["seed"], params["degree"]
    jf = _random_jfraction(seed, degree)

    def check(ctx):
        tab = tableau_from_jfraction(jf, degree)
        h0 = [tab.entry(0, n) / F(factorial(n)) for n in range(degree + 1)]
        lhs_table = translate_series(h0, Classical(), degree)
        rhs = {}
        for n in range(degree + 1):
            w = jf.lambda_product(n)
            for i in range(n, degree + 1):
                ci = tab.entry(n, i) / F(factorial(i))
                if ci == 0:
                    continue
                for j in range(n, degree + 1 - i):
                    cj = tab.entry(n, j) / F(factorial(j))
                    if cj != 0:
                        rhs[(i, j)] = rhs.get((i, j), F(0)) + w * ci * cj
        rhs = {key: v for key, v in rhs.items() if v != 0}
        keys = set(lhs_table) | set(rhs)
        mismatches = sum(
            1 for key in keys if lhs_table.get(key, F(0)) != rhs.get(key, F(0))
        )
        max_dev = max(
            (abs(lhs_table.get(key, F(0)) - rhs.get(key, F(0))) for key in keys),
            default=F(0),
        )
        checked = (degree + 1) * (degree + 2) // 2
        return mismatches == 0, checked, max_dev, None

    return TheoremCase(
        id="classical_generic",
        family=None,
        kind=Classical(),
        lhs_eval=None,
        rhs_weight=jf.lambda_product,
        rhs_left_fn=None,
        rhs_right_fn=None,
        mode="exact",
        exact_check=check,
    )


def _case_ogf_variant(params):
    seed, degree = params["seed"], params["degree"]
    jf = _random_jfraction(seed, degree)

    def check(ctx):
        tab = tableau_from_jfraction(jf, degree)
        # numerator x h_0(x); the divided difference spreads coefficient
        # c_{n+1} over every x^i y^j with i + j = n
        p = [F(0)] + [tab.entry(0, n) for n in range(degree + 1)]
        checked = 0
        mismatches = 0
        max_dev = F(0)
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                lhs = p[i + j + 1]
                rhs = sum(
                    (
                        jf.lambda_product(n) * tab.entry(n, i) * tab.entry(n, j)
                        for n in range(min(i, j) + 1)
                    ),
                    F(0),
                )
                checked += 1
                if lhs != rhs:
                    mismatches += 1
                    dev = abs(lhs - rhs)
                    if dev > max_dev:
                        max_dev = dev
        return mismatches == 0, checked, max_dev, None

    return TheoremCase(
        id="ogf_variant",
        family=None,
        kind=Classical(),
        lhs_eval=None,
        rhs_weight=jf.lambda_product,
        rhs_left_fn=None,
        rhs_right_fn=None,
        mode="exact",
        exact_check=check,
    )


_THEOREM_BUILDERS = {
    "bessel_plus": _case_bessel_plus,
    "conf_hyp_1f1": _case_conf_hyp_1f1,
    "little_qj": _case_little_qj,
    "little_qj_alt": _case_little_qj_alt,
    "big_qj": _case_big_qj,
    "asc_noncomm": _case_asc_noncomm,
    "asc_qtrans": _case_asc_qtrans,
    "q_ultra": _case_q_ultra,
    "q_ultra_beta0": _case_q_ultra_beta0,
    "askey_wilson": _case_askey_wilson,
    "hermite_moments": _case_hermite_moments,
    "laguerre_moments": _case_laguerre_moments,
    "meixner_moments": _case_meixner_moments,
    "mp_moments": _case_mp_moments,
    "gegenbauer_moments": _case_gegenbauer_moments,
    "affine": _case_affine,
    "classical_generic": _case_classical_generic,
    "ogf_variant": _case_ogf_variant,
}

_TOL30 = F(1, 10 ** 30)
_TOL28 = F(1, 10 ** 28)

_THEOREM_DEFAULTS = {
    "bessel_plus": {
        "params": {"nu": F(1, 2)},
        "s": F(3, 10),
        "t": F(1, 2),
        "N": 25,
        "tolerance": _TOL28,
    },
    "conf_hyp_1f1": {
        "params": {"alpha": F(1, 2), "beta": F(1, 3)},
        "s": F(1, 5),
        "t": F(3, 10),
        "N": 25,
        "tolerance": _TOL30,
    },
    "little_qj": {
        "params": {"a": F(1, 3), "b": F(1, 4), "q": F(1, 2)},
        "s": F(1, 20),
        "t": F(1, 10),
        "N": 25,
        "tolerance": _TOL30,
    },
    "little_qj_alt": {
        "params": {"a": F(1, 3), "b": F(1, 4), "q": F(1, 2)},
        "s": F(1, 20),
        "t": F(1, 10),
        "N": 25,
        "tolerance": _TOL30,
    },
    "big_qj": {
        "params": {"a": F(1, 3), "b": F(1, 4), "c": F(1, 5), "q": F(1, 2)},
        "s": F(1, 20),
        "t": F(1, 10),
        "N": 25,
        "tolerance": _TOL30,
    },
    "asc_noncomm": {
        "params": {"a": F(1, 3), "q": F(1, 2), "degree": 12},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "asc_qtrans": {
        "params": {"a": F(1, 3), "q": F(1, 2)},
        "s": F(1, 20),
        "t": F(1, 10),
        "N": 25,
        "tolerance": _TOL30,
    },
    "q_ultra": {
        "params": {"beta": F(1, 3), "q": F(1, 2)},
        "s": F(1, 5),
        "t": F(1, 5),
        "N": 20,
        "tolerance": _TOL28,
    },
    "q_ultra_beta0": {
        "params": {"q": F(1, 2)},
        "s": F(1, 5),
        "t": F(1, 5),
        "N": 20,
        "tolerance": _TOL28,
    },
    "askey_wilson": {
        "params": {"a": F(1, 3), "q": F(1, 2)},
        "s": F(1, 5),
        "t": F(1, 5),
        "N": 20,
        "tolerance": _TOL28,
    },
    "hermite_moments": {
        "params": {"x": F(1), "degree": 12},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "laguerre_moments": {
        "params": {"alpha": F(1, 2), "x": F(1, 2), "degree": 10},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "meixner_moments": {
        "params": {"beta": F(3), "c": F(1, 3), "x": F(1, 2), "degree": 10},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "mp_moments": {
        "params": {"lam": F(1), "x": F(1, 2), "phi_over_pi": F(1, 3)},
        "s": F(1, 10),
        "t": F(1, 5),
        "N": 25,
        "tolerance": _TOL28,
    },
    "gegenbauer_moments": {
        "params": {"nu": F(3, 2), "x": F(1, 2), "degree": 10},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "affine": {
        "params": {"base": "laguerre", "base_alpha": F(1, 2), "a": F(3), "b": F(2)},
        "s": F(1, 10),
        "t": F(1, 5),
        "N": 25,
        "tolerance": _TOL30,
    },
    "classical_generic": {
        "params": {"seed": 0, "degree": 12},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
    "ogf_variant": {
        "params": {"seed": 0, "degree": 12},
        "s": None,
        "t": None,
        "N": None,
        "tolerance": None,
    },
}


# ---------------------------------------------------------------------------
# identities

def _identity_numeric(iid, params, lhs, total, n_terms, last, tolerance, ctx):
    with ctx.workprec():
        abs_error = abs(lhs - total)
        denom = abs(lhs)
        rel_error = abs_error / denom if denom > 0 else abs_error
        passed = rel_error <= ctx.number(tolerance)
    return VerificationReport(
        id=iid,
        params=params,
        s=None,
        t=None,
        lhs=lhs,
        rhs_partial=total,
        n_terms=n_terms,
        abs_error=abs_error,
        rel_error=rel_error,
        tail_estimate=last,
        passed=passed,
        mode="numeric",
    )


def _identity_exact(iid, params, passed, n_checked, max_dev):
    return VerificationReport(
        id=iid,
        params=params,
        s=None,
        t=None,
        lhs=None,
        rhs_partial=None,
        n_terms=n_checked,
        abs_error=max_dev,
        rel_error=None,
        tail_estimate=None,
        passed=passed,
        mode="exact",
    )


def _identity_hermite_convolution(params, ctx):
    m_max = params["m_max"]
    xs = params["xs"]
    checked = 0
    mismatches = 0
    max_dev = F(0)
    for x in xs:
        h = [hermite_poly(n, x) for n in range(2 * m_max + 1)]
        for m in range(m_max + 1):
            for n in range(m_max + 1):
                lhs = h[m + n] / F(factorial(m) * factorial(n))
                rhs = sum(
                    (
                        F(-2) ** k
                        / F(factorial(k) * factorial(m - k) * factorial(n - k))
                        * h[m - k]
                        * h[n - k]
                        for k in range(min(m, n) + 1)
                    ),
                    F(0),
                )
                checked += 1
                if lhs != rhs:
                    mismatches += 1
                    max_dev = max(max_dev, abs(lhs - rhs))
    return _identity_exact("hermite_convolution", params, mismatches == 0, checked, max_dev)


def _identity_bessel_reduction(params, ctx):
    mu, nu, z, N = params["mu"], params["nu"], params["z"], params["N"]
    tolerance = params["tolerance"]
    with ctx.workprec():
        zv = ctx.number(z)
        lhs = mpmath.power(zv / 2, ctx.number(mu - nu)) * bessel_j(nu, zv, ctx).value
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        for n in range(N + 1):
            poch = pochhammer(mu - nu, n)
            if poch == 0:
                last = mpmath.mpf(0)
                continue
            c = (
                ctx.number((mu + 2 * n) * F(-1) ** n * poch / factorial(n))
                * ctx.gamma(mu + n)
                / ctx.gamma(nu + n + 1)
            )
            term = c * bessel_j(mu + 2 * n, zv, ctx).value
            total += term
            last = abs(term)
    return _identity_numeric(
        "bessel_reduction", params, lhs, total, N + 1, last, tolerance, ctx
    )


def _identity_plane_wave_ultra(params, ctx):
    nu, x, y, N = params["nu"], params["x"], params["y"], params["N"]
    tolerance = params["tolerance"]
    with ctx.workprec():
        xv, yv = ctx.number(x), ctx.number(y)
        lhs = mpmath.exp(xv * yv)
        pref = ctx.gamma(nu) * mpmath.power(yv / 2, -ctx.number(nu))
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        for n in range(N + 1):
            term = (
                ctx.number(nu + n)
                * bessel_i(nu + n, yv, ctx).value
                * ctx.number(gegenbauer_poly(n, nu, x))
            )
            total += term
            last = abs(term)
        total = pref * total
        last = abs(pref) * last
    return _identity_numeric(
        "plane_wave_ultra", params, lhs, total, N + 1, last, tolerance, ctx
    )


def _identity_plane_wave_jacobi(params, ctx):
    alpha, beta, x, y, N = params["alpha"], params["beta"], params["x"], params["y"], params["N"]
    tolerance = params["tolerance"]
    with ctx.workprec():
        xv, yv = ctx.number(x), ctx.number(y)
        lhs = mpmath.exp(xv * yv)
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        for n in range(N + 1):
            term = (
                ctx.gamma(alpha + beta + n + 1)
                / ctx.gamma(alpha + beta + 2 * n + 1)
                * (2 * yv) ** n
                * mpmath.exp(-yv)
                * eval_pfq([beta + n + 1], [alpha + beta + 2 * n + 2], 2 * yv, ctx).value
                * ctx.number(jacobi_poly(n, alpha, beta, x))
            )
            total += term
            last = abs(term)
    return _identity_numeric(
        "plane_wave_jacobi", params, lhs, total, N + 1, last, tolerance, ctx
    )


def _identity_plane_wave_cheby(params, ctx):
    x, y, N = params["x"], params["y"], params["N"]
    tolerance = params["tolerance"]
    with ctx.workprec():
        xv, yv = ctx.number(x), ctx.number(y)
        lhs = mpmath.exp(xv * yv)
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        for n in range(N + 1):
            term = (n + 1) * bessel_i(n + 1, yv, ctx).value * ctx.number(chebyshev_u(n, x))
            total += term
            last = abs(term)
        total = 2 / yv * total
        last = abs(2 / yv) * last
    return _identity_numeric(
        "plane_wave_cheby", params, lhs, total, N + 1, last, tolerance, ctx
    )


def _identity_bessel_1f1_link(params, ctx):
    nu, x = params["nu"], params["x"]
    tolerance = params["tolerance"]
    with ctx.workprec():
        xv = ctx.number(x)
        inner = eval_pfq([nu + F(1, 2)], [2 * nu + 1], 2 * xv, ctx)
        lhs = mpmath.exp(-xv) * inner.value
        rhs = (
            ctx.gamma(nu + 1)
            * mpmath.power(2 / xv, ctx.number(nu))
            * bessel_i(nu, xv, ctx).value
        )
    return _identity_numeric(
        "bessel_1f1_link", params, lhs, rhs, inner.terms_used, mpmath.mpf(0), tolerance, ctx
    )


def _identity_hankel_gegenbauer(params, ctx):
    nu, x, n_max = params["nu"], params["x"], params["n_max"]
    spec = make_family("gegenbauer_moments", {"nu": nu, "x": x})
    mu = family_moments(spec, 2 * n_max)
    half = F(1, 2)
    checked = 0
    mismatches = 0
    max_dev = F(0)
    for n in range(n_max + 1):
        det = det_bareiss([[mu[i + j] for j in range(n + 1)] for i in range(n + 1)])
        closed = (x * x - 1) ** (n * (n + 1) // 2) / F(2) ** (n * n)
        for r in range(1, n + 1):
            closed *= (
                F(factorial(r))
                * pochhammer(2 * nu, r - 1)
                / (pochhammer(nu + half, r - 1) * pochhammer(nu + half, r))
            )
        checked += 1
        if det != closed:
            mismatches += 1
            max_dev = max(max_dev, abs(det - closed))
    return _identity_exact("hankel_gegenbauer", params, mismatches == 0, checked, max_dev)


def _identity_hankel_affine(params, ctx):
    base_params = {k[5:]: v for k, v in params.items() if k.startswith("base_")}
    base = make_family(params["base"], base_params)
    spec = make_affine(base, params["a"], params["b"])
    n_max = params["n_max"]
    mu_bar = family_moments(spec, 2 * n_max)
    mu_base = family_moments(base, 2 * n_max)
    checked = 0
    mismatches = 0
    max_dev = F(0)
    ratios = []
    for n in range(n_max + 1):
        det_bar = det_bareiss([[mu_bar[i + j] for j in range(n + 1)] for i in range(n + 1)])
        det_base = det_bareiss([[mu_base[i + j] for j in range(n + 1)] for i in range(n + 1)])
        expected = F(1)
        for k in range(1, n + 1):
            expected *= spec.weight_fn(k)
        checked += 1
        if det_bar != expected:
            mismatches += 1
            max_dev = max(max_dev, abs(det_bar - expected))
        ratios.append(det_bar / det_base if det_base != 0 else None)
    extra = {**params, "det_ratios": tuple(ratios)}
    return _identity_exact("hankel_affine", extra, mismatches == 0, checked, max_dev)


def _identity_connection_rogers(params, ctx):
    beta, gamma, q, n_max = params["beta"], params["gamma"], params["q"], params["n_max"]
    xs = [F(k, 2) for k in range(n_max + 2)]
    checked = 0
    mismatches = 0
    max_dev = F(0)
    for n in range(n_max + 1):
        for x in xs:
            lhs = cq_ultraspherical_poly(n, x, gamma, q)
            rhs = F(0)
            for k in range(n // 2 + 1):
                coef = (
                    F(beta) ** k
                    * F(q_pochhammer(gamma / beta, q, k))
                    * F(q_pochhammer(gamma, q, n - k))
                    / (
                        F(q_pochhammer(q, q, k))
                        * F(q_pochhammer(q * beta, q, n - k))
                    )
                    * (1 - beta * F(q) ** (n - 2 * k))
                    / (1 - beta)
                )
                rhs += coef * cq_ultraspherical_poly(n - 2 * k, x, beta, q)
            checked += 1
            if lhs != rhs:
                mismatches += 1
                max_dev = max(max_dev, abs(lhs - rhs))
    return _identity_exact("connection_rogers", params, mismatches == 0, checked, max_dev)


_IDENTITY_BUILDERS = {
    "hermite_convolution": _identity_hermite_convolution,
    "bessel_reduction": _identity_bessel_reduction,
    "plane_wave_ultra": _identity_plane_wave_ultra,
    "plane_wave_jacobi": _identity_plane_wave_jacobi,
    "plane_wave_cheby": _identity_plane_wave_cheby,
    "bessel_1f1_link": _identity_bessel_1f1_link,
    "hankel_gegenbauer": _identity_hankel_gegenbauer,
    "hankel_affine": _identity_hankel_affine,
    "connection_rogers": _identity_connection_rogers,
}

_IDENTITY_DEFAULTS = {
    "hermite_convolution": {"m_max": 8, "xs": (F(0), F(1), F(1, 2))},
    "bessel_reduction": {"mu": F(1), "nu": F(2), "z": F(7, 10), "N": 25, "tolerance": _TOL28},
    "plane_wave_ultra": {"nu": F(3, 2), "x": F(1, 2), "y": F(2, 5), "N": 25, "tolerance": _TOL28},
    "plane_wave_jacobi": {
        "alpha": F(1, 2),
        "beta": F(1, 3),
        "x": F(1, 2),
        "y": F(2, 5),
        "N": 25,
        "tolerance": _TOL28,
    },
    "plane_wave_cheby": {"x": F(1, 2), "y": F(2, 5), "N": 25, "tolerance": _TOL28},
    "bessel_1f1_link": {"nu": F(3, 2), "x": F(2, 5), "tolerance": _TOL30},
    "hankel_gegenbauer": {"nu": F(3, 2), "x": F(2), "n_max": 5},
    "hankel_affine": {
        "base": "laguerre",
        "base_alpha": F(1, 2),
        "a": F(3),
        "b": F(2),
        "n_max": 5,
    },
    "connection_rogers": {"beta": F(1, 3), "gamma": F(1, 4), "q": F(1, 2), "n_max": 8},
}


# ---------------------------------------------------------------------------
# public entry points

def theorem_ids():
    return sorted(_THEOREM_BUILDERS)


def identity_ids():
    return sorted(_IDENTITY_BUILDERS)


def _merge_params(defaults, overrides):
    if not overrides:
        return dict(defaults)
    merged = dict(defaults)
    for key, value in overrides.items():
        if key not in defaults:
            raise InvalidParams(f"unknown parameter {key!r}")
        base = defaults[key]
        if isinstance(base, int) and not isinstance(base, bool) and not isinstance(base, F):
            merged[key] = int(value)
        elif isinstance(base, str):
            merged[key] = str(value)
        elif isinstance(base, tuple):
            if isinstance(value, str):
                merged[key] = tuple(rat(p) for p in value.split(","))
            else:
                merged[key] = tuple(rat(p) for p in value)
        else:
            merged[key] = rat(value)
    return merged


def verify_theorem(id, params=None, s=None, t=None, N=None, ctx=None, tolerance=None):
    """Check one addition formula; returns a VerificationReport."""
    if id not in _THEOREM_BUILDERS:
        raise UnknownTheorem(f"unknown theorem id {id!r}")
    ctx = ctx or PrecisionContext()
    defaults = _THEOREM_DEFAULTS[id]
    merged = _merge_params(defaults["params"], params)
    case = _THEOREM_BUILDERS[id](merged)
    if case.mode == "exact":
        return _exact_report(case, merged, ctx)
    s = defaults["s"] if s is None else rat(s)
    t = defaults["t"] if t is None else rat(t)
    N = defaults["N"] if N is None else int(N)
    tolerance = defaults["tolerance"] if tolerance is None else rat(tolerance)
    return _numeric_report(case, merged, s, t, N, tolerance, ctx)


def verify_identity(id, params=None, ctx=None):
    """Check one standalone identity; returns a VerificationReport."""
    if id not in _IDENTITY_BUILDERS:
        raise UnknownTheorem(f"unknown identity id {id!r}")
    ctx = ctx or PrecisionContext()
    merged = _merge_params(_IDENTITY_DEFAULTS[id], params)
    return _IDENTITY_BUILDERS[id](merged, ctx)


def rhs_weight(id, n, params=None):
    """The weight sequence a theorem's right-hand side is summed against."""
    if id not in _THEOREM_BUILDERS:
        raise UnknownTheorem(f"unknown theorem id {id!r}")
    merged = _merge_params(_THEOREM_DEFAULTS[id]["params"], params)
    case = _THEOREM_BUILDERS[id](merged)
    return case.rhs_weight(n)


def run_suite(pattern=None, ctx=None):
    """Run every registered case (or those matching the glob pattern).

    Failures are recorded in the returned reports rather than raised, so a
    single broken case cannot hide the rest of the suite.
    """
    ctx = ctx or PrecisionContext()
    all_ids = [(tid, "theorem") for tid in theorem_ids()] + [
        (iid, "identity") for iid in identity_ids()
    ]
    all_ids.sort()
    reports = []
    for cid, kind in all_ids:
        if pattern is not None and not fnmatchcase(cid, pattern):
            continue
        try:
            if kind == "theorem":
                reports.append(verify_theorem(cid, ctx=ctx))
            else:
                reports.append(verify_identity(cid, ctx=ctx))
        except Exception as exc:  # recorded, not raised
            reports.append(
                VerificationReport(
                    id=cid,
                    params={"error": f"{type(exc).__name__}: {exc}"},
                    s=None,
                    t=None,
                    lhs=None,
                    rhs_partial=None,
                    n_terms=0,
                    abs_error=None,
                    rel_error=None,
                    tail_estimate=None,
                    passed=False,
                    mode="error",
                )
            )
    return reports


# ---------------------------------------------------------------------------
# serialization

def render_scalar(x, ctx):
    """JSON-ready rendering: exact rationals as "p/q", floats as decimal strings."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, F):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (mpmath.mpf, mpmath.mpc, float)):
        return ctx.nstr(ctx.number(x))
    if isinstance(x, (tuple, list)):
        return [render_scalar(v, ctx) for v in x]
    if isinstance(x, dict):
        return {k: render_scalar(v, ctx) for k, v in x.items()}
    return str(x)


def report_record(report, ctx):
    """Flatten one report into the JSON schema used by the CLI."""
    return {
        "id": report.id,
        "params": render_scalar(report.params, ctx),
        "s": render_scalar(report.s, ctx),
        "t": render_scalar(report.t, ctx),
        "mode": report.mode,
        "lhs": render_scalar(report.lhs, ctx),
        "rhs_partial": render_scalar(report.rhs_partial, ctx),
        "n_terms": report.n_terms,
        "abs_error": render_scalar(report.abs_error, ctx),
        "rel_error": render_scalar(report.rel_error, ctx),
        "tail_estimate": render_scalar(report.tail_estimate, ctx),
        "pass": report.passed,
    }


def suite_document(reports, config, ctx):
    return {
        "suite_version": SUITE_VERSION,
        "config": render_scalar(config, ctx),
        "reports": [report_record(r, ctx) for r in reports],
    }
