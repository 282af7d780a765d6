"""Machine verification of the spectral inequalities over constructed and random functions.

Every check takes a single function and returns a one-sample report with the
margin RHS - LHS (negative beyond the numerical slack counts as a failure);
``run_suite`` drives the checks over the named families plus seeded random
draws and merges the reports.  Proven inequalities must come back with zero
failures; the Bohnenblust-Hille-type quantity and the degree-d Wiener ratio
are open-constant scans and are reported, never asserted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cube import (
    BooleanFunction,
    Spectrum,
    degree,
    expectation,
    inverse_walsh,
    p_norm,
    subset_levels,
    sup_norm,
    walsh_transform,
)
from .families import (
    biased_indicator,
    dictator,
    extremal_indicator_flip,
    majority,
    parity,
    threshold,
    ThresholdSpec,
)
from .radius import boolean_radius, level_profile

#: Numerical slack: sides are sums of at most 2^14 double terms.
SLACK = 1e-9

RANDOM_MODES = ("table_uniform", "boolean_pm1", "spectral_random", "low_degree")

ASSERTABLE_SUITES = (
    "wiener",
    "split",
    "caratheodory",
    "degree-l2",
    "norm-comparison",
    "hyper",
    "level-m",
    "biased-radius",
)

REPORT_SUITES = ("bh", "cd-ratio")

#: Admissible (p, q) pairs exercised by the hypercontractivity suite.
HYPER_GRID = ((2.0, 4.0), (2.0, 3.0), (1.5, 3.0), (3.0, 6.0))

#: epsilon grid for the level-m suite.
EPSILON_GRID = tuple(i / 10.0 for i in range(1, 10))


@dataclass(frozen=True)
class InequalityReport:
    suite: str
    samples: int
    failures: int
    worst_margin: float
    witness: Optional[BooleanFunction]


def _slack(*vals: float) -> float:
    return SLACK * max(1.0, *(abs(v) for v in vals))


def _report(suite, margin, f, rhs=0.0, lhs=0.0) -> InequalityReport:
    fail = 1 if margin < -_slack(lhs, rhs) else 0
    return InequalityReport(suite, 1, fail, float(margin), f)


def random_bounded_function(N: int, seed, mode: str, d: int = 3) -> BooleanFunction:
    """Seeded random function with sup norm <= 1 (rescaled to 1 unless zero).

    Modes: uniform values, random sign table, random dense spectrum, or a
    random spectrum supported on levels <= d.  ``seed`` may be anything
    numpy's default_rng accepts, including (seed, index) sequences.
    """
    if not 1 <= N <= 14:
        raise ValueError("random draws are capped at N <= 14")
    if mode not in RANDOM_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    size = 2**N
    if mode == "boolean_pm1":
        return BooleanFunction(N, rng.choice([-1.0, 1.0], size=size))
    if mode == "table_uniform":
        values = rng.uniform(-1.0, 1.0, size=size)
    elif mode == "spectral_random":
        values = inverse_walsh(Spectrum(N, rng.normal(size=size))).values
    else:
        coeffs = np.zeros(size)
        mask = subset_levels(N) <= min(d, N)
        coeffs[mask] = rng.normal(size=int(mask.sum()))
        values = inverse_walsh(Spectrum(N, coeffs)).values
    m = np.max(np.abs(values))
    return BooleanFunction(N, values / m if m > 0 else values)


def wiener_pair_check(f: BooleanFunction) -> InequalityReport:
    """|fhat(A)| + |fhat(B)| <= 1 for every pair A != B, given ||f||_inf <= 1.

    The max over pairs is the sum of the two largest absolute coefficients.
    """
    if sup_norm(f) > 1.0 + _slack(1.0):
        raise ValueError("wiener pair check needs ||f||_inf <= 1")
    a = np.abs(walsh_transform(f).coeffs)
    if a.size < 2:
        return _report("wiener", 1.0 - a[0], f, 1.0, a[0])
    top = np.partition(a, a.size - 2)[-2:]
    lhs = float(top.sum())
    return _report("wiener", 1.0 - lhs, f, 1.0, lhs)


def split_pointwise_check(f: BooleanFunction) -> InequalityReport:
    """|fhat({}) + h(x)| + |h(x)| <= ||f||_inf at every x, h = (f - fhat({}))/2."""
    c0 = expectation(f)
    sup = sup_norm(f)
    half = 0.5 * (f.values - c0)
    lhs = float(np.max(np.abs(c0 + half) + np.abs(half)))
    return _report("split", sup - lhs, f, sup, lhs)


def caratheodory_check(f: BooleanFunction) -> InequalityReport:
    """E|f - fhat({})| <= 2 (1 - |fhat({})|) for ||f||_inf <= 1."""
    if sup_norm(f) > 1.0 + _slack(1.0):
        raise ValueError("caratheodory check needs ||f||_inf <= 1")
    c0 = expectation(f)
    lhs = float(np.mean(np.abs(f.values - c0)))
    rhs = 2.0 * (1.0 - abs(c0))
    return _report("caratheodory", rhs - lhs, f, rhs, lhs)


def caratheodory_sharpness(lambdas, p: float):
    """Rows (lambda, ratio) with ratio = ((2-2L)^p L + (2L)^p (1-L))^{1/p} / (4L).

    The denominator is the two-sided bound 2 * (2 lambda) of the averaged
    inequality; at p = 1 the ratio is exactly 1 - lambda (so it climbs to 1
    as lambda -> 0, which is why the constant 2 cannot be improved), while
    for any p > 1 it blows up as lambda -> 0 (no p > 1 version exists).
    """
    rows = []
    for lam in lambdas:
        lhs = ((2.0 - 2.0 * lam) ** p * lam + (2.0 * lam) ** p * (1.0 - lam)) ** (1.0 / p)
        rows.append((float(lam), lhs / (4.0 * lam)))
    return rows


def degree_l2_check(f: BooleanFunction, d: int) -> InequalityReport:
    """(sum_{0<|S|<=d} fhat(S)^2)^{1/2} <= 2 e^d (1 - |fhat({})|) for ||f||_inf <= 1."""
    if sup_norm(f) > 1.0 + _slack(1.0):
        raise ValueError("degree-l2 check needs ||f||_inf <= 1")
    s = walsh_transform(f)
    if degree(s) > d:
        raise ValueError(f"function has degree {degree(s)} > d = {d}")
    lv = subset_levels(f.n)
    lhs = math.sqrt(float(np.sum(s.coeffs[(lv > 0) & (lv <= d)] ** 2)))
    rhs = 2.0 * math.exp(d) * (1.0 - abs(s.coeffs[0]))
    return _report("degree-l2", rhs - lhs, f, rhs, lhs)


def norm_comparison_check(f: BooleanFunction, d: int) -> InequalityReport:
    """||f||_2 <= e^d ||f||_1 for functions of degree at most d."""
    if degree(walsh_transform(f)) > d:
        raise ValueError("degree exceeds d")
    lhs = p_norm(f, 2.0)
    rhs = math.exp(d) * p_norm(f, 1.0)
    return _report("norm-comparison", rhs - lhs, f, rhs, lhs)


def hypercontractive_bound(p: float, q: float) -> float:
    """Largest admissible noise rate sqrt((p-1)/(q-1)) for L_p -> L_q."""
    if not 1.0 <= p <= q:
        raise ValueError("need 1 <= p <= q")
    return 1.0 if p == q else math.sqrt((p - 1.0) / (q - 1.0))


def hypercontractivity_check(f: BooleanFunction, p: float, q: float, rho: float) -> InequalityReport:
    """||T_rho f||_q <= ||f||_p for rho within the admissible bound."""
    bound = hypercontractive_bound(p, q)
    if not 0.0 <= rho <= bound + 1e-12:
        raise ValueError(f"rho = {rho} exceeds the admissible bound {bound} for ({p}, {q})")
    s = walsh_transform(f)
    smoothed = inverse_walsh(Spectrum(f.n, s.coeffs * rho ** subset_levels(f.n)))
    lhs = p_norm(smoothed, q)
    rhs = p_norm(f, p)
    return _report("hyper", rhs - lhs, f, rhs, lhs)


def bh_ratio(f: BooleanFunction, d: int) -> float:
    """(sum_{|S|<=d} |fhat(S)|^{2d/(d+1)})^{(d+1)/2d} / ||f||_inf.

    Profiling quantity for the degree-d coefficient inequality; the constant
    there is existential, so the ratio is reported, never asserted.
    """
    s = walsh_transform(f)
    if degree(s) > d:
        raise ValueError("degree exceeds d")
    sup = sup_norm(f)
    if sup == 0:
        raise ValueError("zero function has no ratio")
    e = 2.0 * d / (d + 1.0)
    lhs = float(np.sum(np.abs(s.coeffs[subset_levels(f.n) <= d]) ** e)) ** (1.0 / e)
    return lhs / sup


def wiener_degree_ratio(f: BooleanFunction) -> float:
    """||f - fhat({})||_inf / (1 - |fhat({})|): the open degree-d Wiener quantity.

    Whether this admits a degree-dependent constant is open; exploratory scan
    material only.
    """
    c0 = expectation(f)
    den = 1.0 - abs(c0)
    if den <= 1e-12:
        raise ValueError("constant functions have no ratio")
    return float(np.max(np.abs(f.values - c0))) / den


def level_m_bound_check(f: BooleanFunction, m: int, epsilon: float) -> InequalityReport:
    """(sum_{|S|=m} fhat(S)^2)^{1/2} <= 2 eps^{-m/2} (delta/2)^{1/(1+eps)}.

    Needs ||f||_inf = 1 and E[f] = 1 - delta with delta in (0, 1]; callers
    normalize so that E[f] >= 0.  Levels m >= 1 only: the level-0 statement
    fails for fhat (its proof substitutes g = (1-f)/2, which only matches f
    on nonempty sets).
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("need 0 < epsilon < 1")
    if not 1 <= m <= f.n:
        raise ValueError("need 1 <= m <= n")
    if abs(sup_norm(f) - 1.0) > 1e-9:
        raise ValueError("normalize to ||f||_inf = 1 first")
    c = walsh_transform(f).coeffs
    if c[0] < -1e-12:
        raise ValueError("normalize so that E[f] >= 0 first")
    delta = 1.0 - c[0]
    if delta <= 1e-12:
        raise ValueError("constant-one function excluded (delta = 0)")
    lhs = math.sqrt(float(np.sum(c[subset_levels(f.n) == m] ** 2)))
    rhs = 2.0 * epsilon ** (-m / 2.0) * (delta / 2.0) ** (1.0 / (1.0 + epsilon))
    return _report("level-m", rhs - lhs, f, rhs, lhs)


def biased_radius_lower_check(f: BooleanFunction) -> InequalityReport:
    """rho(f) >= 1 / (5 sqrt(N) sqrt(log(2/delta))), delta the exact bias gap.

    delta is the largest value with |E f| <= (1 - delta) ||f||_inf; constants
    (delta = 0) are excluded.
    """
    sup = sup_norm(f)
    if sup == 0:
        raise ValueError("zero function excluded")
    delta = 1.0 - abs(expectation(f)) / sup
    if delta <= 1e-12:
        raise ValueError("constant functions excluded (delta = 0)")
    rho = boolean_radius(level_profile(walsh_transform(f), sup)).radius
    bound = 1.0 / (5.0 * math.sqrt(f.n) * math.sqrt(math.log(2.0 / delta)))
    return _report("biased-radius", rho - bound, f, rho, bound)


# -- suite driver ------------------------------------------------------------


def family_functions(N: int):
    """Deterministic list of (name, function) for the named families at dimension N."""
    out = [
        ("extremal", extremal_indicator_flip(N)),
        ("dictator", dictator(N, 1)),
        ("parity-full", parity(N, range(1, N + 1))),
        ("constant", parity(N, ())),
    ]
    if N >= 2:
        out.append(("parity-pair", parity(N, (1, 2))))
        out.append(("biased-quarter", biased_indicator(N, 0.25)))
    out.append(("biased-point", biased_indicator(N, 2.0**-N)))
    if N % 2 == 1:
        out.append(("majority", majority(N)))
    else:
        out.append(("threshold-1", threshold(ThresholdSpec(N, 1))))
    if N >= 3:
        out.append((f"threshold-{N - 1}", threshold(ThresholdSpec(N, N - 1))))
    return out


def _is_constant(f: BooleanFunction) -> bool:
    return float(np.ptp(f.values)) == 0.0


def _normalized_nonneg(f: BooleanFunction) -> BooleanFunction:
    sup = sup_norm(f)
    values = f.values / sup
    if np.mean(values) < 0:
        values = -values
    return BooleanFunction(f.n, values)


def _run_checks_on(suite: str, f: BooleanFunction):
    """Reports contributed by one function to one suite (may be empty if inapplicable)."""
    if suite == "wiener":
        return [wiener_pair_check(f)]
    if suite == "split":
        return [split_pointwise_check(f)]
    if suite == "caratheodory":
        return [caratheodory_check(f)]
    if suite == "degree-l2":
        return [degree_l2_check(f, max(degree(walsh_transform(f)), 1))]
    if suite == "norm-comparison":
        return [norm_comparison_check(f, max(degree(walsh_transform(f)), 1))]
    if suite == "hyper":
        out = []
        for p, q in HYPER_GRID:
            b = hypercontractive_bound(p, q)
            for rho in (0.0, 0.5 * b, b):
                out.append(hypercontractivity_check(f, p, q, rho))
        return out
    if suite == "level-m":
        if _is_constant(f):
            return []
        g = _normalized_nonneg(f)
        return [level_m_bound_check(g, m, eps) for m in range(1, g.n + 1) for eps in EPSILON_GRID]
    if suite == "biased-radius":
        if _is_constant(f):
            return []
        return [biased_radius_lower_check(f)]
    if suite == "bh":
        if sup_norm(f) == 0:
            return []
        d = max(degree(walsh_transform(f)), 1)
        return [InequalityReport("bh", 1, 0, bh_ratio(f, d), f)]
    if suite == "cd-ratio":
        if _is_constant(f):
            return []
        return [InequalityReport("cd-ratio", 1, 0, wiener_degree_ratio(f), f)]
    raise ValueError(f"unknown suite {suite!r}")


def _merge(suite: str, frags, maximize: bool) -> InequalityReport:
    samples = sum(n for n, *_ in frags)
    failures = sum(k for _, k, *_ in frags)
    worst, witness = (-math.inf, None) if maximize else (math.inf, None)
    for _, _, margin, f in frags:
        if margin is None:
            continue
        if (maximize and margin > worst) or (not maximize and margin < worst):
            worst, witness = margin, f
    if witness is None:
        worst = 0.0
    return InequalityReport(suite, samples, failures, worst, witness)


def _suite_items(n_max: int, samples: int):
    items = []
    for N in range(1, min(n_max, 10) + 1):
        for name, f in family_functions(N):
            items.append(("family", N, name, f))
    for N in range(2, n_max + 1):
        for mode_idx, mode in enumerate(RANDOM_MODES):
            for idx in range(samples):
                items.append(("random", N, (mode_idx, mode), idx))
    return items


def run_suite(
    suite: str, n_max: int, samples: int, seed: int, workers: int = 1, d: int = 3
) -> InequalityReport:
    """Drive one suite (or ``all``) over the families and seeded random draws.

    ``d`` caps the spectrum level of the low-degree draw mode.  Random draws
    use substreams keyed by (seed, N, mode, index), so the report is
    identical for any worker count; chunks merge by (failure sum, worst
    margin with first-item tie-break).  Report-only suites (bh, cd-ratio)
    carry the maximum observed ratio in ``worst_margin`` and never fail.
    """
    if suite == "all":
        parts = [run_suite(s, n_max, samples, seed, workers, d) for s in ASSERTABLE_SUITES]
        worst = min(parts, key=lambda r: r.worst_margin)
        return InequalityReport(
            "all",
            sum(p.samples for p in parts),
            sum(p.failures for p in parts),
            worst.worst_margin,
            worst.witness,
        )
    if suite not in ASSERTABLE_SUITES + REPORT_SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if not 2 <= n_max <= 14:
        raise ValueError("need 2 <= n_max <= 14")
    if d < 1:
        raise ValueError("need d >= 1 for the low-degree draw mode")
    maximize = suite in REPORT_SUITES
    items = _suite_items(n_max, samples)

    def eval_item(item):
        kind, N, tag, payload = item
        if kind == "family":
            f = payload
        else:
            mode_idx, mode = tag
            f = random_bounded_function(N, [seed, N, mode_idx, payload], mode, d=d)
        reports = _run_checks_on(suite, f)
        if not reports:
            return (0, 0, None, None)
        fails = sum(r.failures for r in reports)
        margins = [r.worst_margin for r in reports]
        margin = max(margins) if maximize else min(margins)
        return (len(reports), fails, margin, f)

    workers = max(1, int(workers))
    if workers == 1:
        frags = [eval_item(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            frags = list(pool.map(eval_item, items))
    return _merge(suite, frags, maximize)
