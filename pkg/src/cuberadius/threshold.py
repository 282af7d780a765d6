"""Exact large-N analysis of the threshold functions sign(x_1 + ... + x_N - alpha).

For integer alpha with N - alpha odd the per-level spectrum of psi_{N,alpha}
comes from the generating identity

    sum_n binom(N-1, n-1) psihat([n]) z^{n-1}
        = binom(N-1, b) 2^{1-N} (1+z)^a (1-z)^b,

with a = (N+alpha-1)/2 and b = (N-alpha-1)/2, expanded in exact integer
arithmetic; the empty-set coefficient is the exact binomial tail
2 sigma(x_1 + ... + x_N > alpha) - 1.  On top of the spectra this module
provides the torus supremum G and its antiderivative I, the Mills-ratio-type
function Y, the binomial-tail correction term bounded by sqrt(pi/2), the
radius sandwich between I(rho) and I(3 rho)/3, the majority constant gamma,
and the lower-bound root t_N for the degree-N disc polynomials.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import erfcx

from .cube import SymmetricSpectrum
from .families import canonical_alpha
from .radius import RadiusResult, boolean_radius_symmetric

#: Dimension cap for exact symmetric spectra.
MAX_SYMMETRIC_N = 4001

#: Relative slack for the sandwich inequalities.
SANDWICH_TOL = 1e-9

SQRT_HALF_PI = math.sqrt(math.pi / 2.0)

#: Quadrature: adaptive Simpson relative target and work cap.
QUAD_REL_TOL = 1e-10
QUAD_MAX_EVALS = 10**6


@dataclass(frozen=True)
class ThresholdReport:
    """Radius analysis of one threshold function at its odd-parity alpha."""

    n: int
    alpha: int
    radius: float
    ratio: float  # radius * (alpha + sqrt(n))
    mckay_c: float
    sandwich_ok: bool
    y_value: float  # Y((alpha + 1) / sqrt(n))


def _check_parity(N: int, alpha) -> int:
    if isinstance(alpha, float):
        if not alpha.is_integer():
            raise ValueError(f"alpha must be an integer here, got {alpha!r}")
        alpha = int(alpha)
    if not isinstance(alpha, (int, np.integer)):
        raise ValueError(f"alpha must be an integer here, got {alpha!r}")
    if not 1 <= N <= MAX_SYMMETRIC_N:
        raise ValueError(f"need 1 <= N <= {MAX_SYMMETRIC_N}")
    if not -1 <= alpha < N:
        raise ValueError(f"need -1 <= alpha < N, got alpha = {alpha}")
    if (N - alpha) % 2 != 1:
        raise ValueError(f"need N - alpha odd, got N = {N}, alpha = {alpha}")
    return int(alpha)


def _binomial_row(n: int) -> list:
    row = [1] * (n + 1)
    for j in range(1, n + 1):
        row[j] = row[j - 1] * (n - j + 1) // j
    return row


def _expand_product(N: int, alpha: int) -> list:
    """Integer coefficients c_0..c_{N-1} of (1+z)^a (1-z)^b.

    Convolution of signed binomial rows, done on the factorization
    (1-z^2)^min(a,b) (1+z)^alpha (resp. (1-z)^-alpha), which keeps the short
    row short: majority costs O(N) and the worst case O(N |alpha|).
    """
    a = (N + alpha - 1) // 2
    b = (N - alpha - 1) // 2
    m = min(a, b)
    base = [0] * (2 * m + 1)
    for j, c in enumerate(_binomial_row(m)):
        base[2 * j] = c if j % 2 == 0 else -c
    if alpha == 0:
        out = base
    else:
        rem = _binomial_row(abs(alpha))
        if alpha < 0:
            rem = [c if j % 2 == 0 else -c for j, c in enumerate(rem)]
        out = [0] * (2 * m + abs(alpha) + 1)
        for i, bi in enumerate(base):
            if bi:
                for j, rj in enumerate(rem):
                    out[i + j] += bi * rj
    return (out + [0] * N)[:N]


def _tail_count(N: int, upto: int) -> int:
    """sum_{m <= upto} binom(N, m), exact."""
    total, term = 0, 1
    for m in range(upto + 1):
        total += term
        term = term * (N - m) // (m + 1)
    return total


def threshold_spectrum_exact(N: int, alpha: int) -> SymmetricSpectrum:
    """Exact per-level spectrum of sign(x_1 + ... + x_N - alpha), N - alpha odd.

    Level n holds binom(N-1, b) c_{n-1} / (2^{N-1} binom(N-1, n-1)) with the
    c_k from the generating product; level 0 is the exact tail expectation.
    alpha = -1 (N even) is admitted so that canonicalized thresholds with an
    even integer alpha, where the odd-parity representative drops below zero,
    still have an exact spectrum; the identity holds there unchanged.
    """
    alpha = _check_parity(N, alpha)
    b = (N - alpha - 1) // 2
    c = _expand_product(N, alpha)
    lead = math.comb(N - 1, b)
    T = _tail_count(N, b)
    den = 2 ** (N - 1)
    coeffs = [Fraction(T, den) - 1]
    binom = 1  # binom(N-1, n-1), updated level by level
    for n in range(1, N + 1):
        coeffs.append(Fraction(lead * c[n - 1], den * binom))
        binom = binom * (N - n) // n
    return SymmetricSpectrum.from_level_coeffs(N, coeffs)


def maj_identity_eval(N: int, r: float) -> float:
    """Closed form binom(N-1, (N-1)/2) 2^{1-N} (1 + r^2)^{(N-1)/2} for odd N.

    Equals sum_n binom(N-1, n-1) |psihat([n])| r^{n-1} for the majority
    spectrum (the alternating level signs line up along the imaginary axis).
    """
    if N % 2 == 0:
        raise ValueError("majority identity needs odd N")
    if N > MAX_SYMMETRIC_N:
        raise ValueError(f"need N <= {MAX_SYMMETRIC_N}")
    h = (N - 1) // 2
    lg = math.log(math.comb(N - 1, h)) - (N - 1) * math.log(2.0) + h * math.log1p(r * r)
    return math.exp(lg) if lg <= 709.0 else math.inf


def branch_point(N: int, alpha: float) -> float:
    """r_alpha = alpha / ((N-1) + sqrt((N-1)^2 - alpha^2)), where G switches branch."""
    if alpha <= 0:
        return 0.0
    return alpha / ((N - 1) + math.sqrt((N - 1) ** 2 - alpha**2))


def _log_g(N: int, alpha: float, r: float) -> float:
    """log of the torus supremum sup_z |1+zr|^a |1-zr|^b, valid for every r >= 0.

    The interior critical point t = alpha(1+r^2)/(2r(N-1)) lies in [-1,1]
    exactly for r between r_alpha and 1/r_alpha; there the supremum has the
    r-independent product of bias factors, outside it sits at z = 1.
    """
    a = (N + alpha - 1) / 2.0
    b = (N - alpha - 1) / 2.0
    ra = branch_point(N, alpha)
    if r >= ra and (ra == 0.0 or r <= 1.0 / ra):
        lg = (N - 1) / 2.0 * math.log1p(r * r)
        if alpha > 0:
            x = alpha / (N - 1)
            lg += a / 2.0 * math.log1p(x) + b / 2.0 * math.log1p(-x)
        return lg
    return a * math.log1p(r) + b * math.log(abs(1.0 - r))


def g_function(N: int, alpha: float, r: float) -> float:
    """The supremum G(r), evaluated in the log domain.

    Branch formula: (1+r)^a (1-r)^b below the branch point r_alpha, then
    (1+r^2)^{(N-1)/2} (1 + alpha/(N-1))^{a/2} (1 - alpha/(N-1))^{b/2};
    continuous at r_alpha.  Defined for all r >= 0 (the supremum form is),
    which the sandwich check needs whenever 3 rho exceeds 1.
    """
    if r < 0:
        raise ValueError("need r >= 0")
    if not 0 <= alpha <= N - 1:
        raise ValueError("need 0 <= alpha <= N - 1")
    lg = _log_g(N, alpha, r)
    return math.exp(lg) if lg <= 709.0 else math.inf


def _adaptive_simpson(f, a: float, b: float, rel_tol: float) -> float:
    """Classic adaptive Simpson with Richardson correction and a work cap.

    The acceptance tolerance is absolute, scaled once by the coarse estimate
    of the whole integral, and halves per level; the Simpson error shrinks
    sixteenfold per halving, so the recursion always terminates.
    """
    evals = [0]

    def fc(x):
        evals[0] += 1
        if evals[0] > QUAD_MAX_EVALS:
            raise RuntimeError("quadrature exceeded its subdivision cap")
        return f(x)

    def rec(a, fa, m, fm, b, fb, whole, tol, depth):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = fc(lm), fc(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth > 40 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return rec(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) + rec(
            m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1
        )

    if a == b:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = fc(a), fc(m), fc(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return rec(a, fa, m, fm, b, fb, whole, rel_tol * max(abs(whole), 1e-300), 0)


def i_integral(N: int, alpha: float, rho: float, rel_tol: float = QUAD_REL_TOL) -> float:
    """I(rho) = integral of G over [0, rho] by adaptive Simpson.

    G is smooth away from its branch points, which are forced subdivision
    nodes.  rho may exceed 1 (the sandwich evaluates I at 3 rho).
    """
    if rho < 0:
        raise ValueError("need rho >= 0")
    ra = branch_point(N, alpha)
    cuts = [0.0]
    for c in (ra, (1.0 / ra) if ra > 0 else math.inf):
        if 0.0 < c < rho:
            cuts.append(c)
    cuts.append(rho)
    f = lambda r: g_function(N, alpha, r)
    return sum(_adaptive_simpson(f, lo, hi, rel_tol) for lo, hi in zip(cuts[:-1], cuts[1:]))


def y_function(x: float) -> float:
    """Y(x) = e^{x^2/2} int_x^inf e^{-t^2/2} dt via the scaled complementary
    error function, overflow-free for large x.  Y(0) = sqrt(pi/2), Y ~ 1/x."""
    if x < 0:
        raise ValueError("need x >= 0")
    return SQRT_HALF_PI * float(erfcx(x / math.sqrt(2.0)))


def mckay_residual(N: int, alpha: int) -> float:
    """The correction c with tail = sqrt(N) binom(N-1,b) Y((alpha+1)/sqrt(N)) e^{c/sqrt(N)}.

    tail is the exact integer sum_{n <= b} binom(N, n); every logarithm is
    taken on exact integers, so only the final combination is floating point.
    Raises if c leaves [0, sqrt(pi/2)] by more than 1e-9 (the guaranteed
    range for the admitted alpha).
    """
    alpha = _check_parity(N, alpha)
    b = (N - alpha - 1) // 2
    T = _tail_count(N, b)
    c = math.sqrt(N) * (
        math.log(T)
        - 0.5 * math.log(N)
        - math.log(math.comb(N - 1, b))
        - math.log(y_function((alpha + 1) / math.sqrt(N)))
    )
    if not -1e-9 <= c <= SQRT_HALF_PI + 1e-9:
        raise ValueError(f"tail correction {c} escaped [0, sqrt(pi/2)] at N={N}, alpha={alpha}")
    return c


def _radius_exact(N: int, alpha: int) -> RadiusResult:
    return boolean_radius_symmetric(threshold_spectrum_exact(N, alpha), 1.0)


def _sandwich_terms(N: int, alpha: int, rho: float):
    # G at formal alpha = -1 equals G at +1 (swap z -> -z in the supremum);
    # the combinatorial side keeps b from the true alpha.
    b = (N - alpha - 1) // 2
    a_eff = abs(alpha)
    log_mid = math.log(_tail_count(N, b)) - math.log(N) - math.log(math.comb(N - 1, b))
    return i_integral(N, a_eff, rho), math.exp(log_mid), i_integral(N, a_eff, 3.0 * rho) / 3.0


def sandwich_check(N: int, alpha: int) -> bool:
    """I(rho) <= tail/(N binom(N-1,b)) <= I(3 rho)/3 at the solved radius rho.

    The left side can be an equality up to rounding (for majority it is one
    exactly), hence the relative slack.
    """
    alpha = _check_parity(N, alpha)
    rho = _radius_exact(N, alpha).radius
    lo, mid, hi = _sandwich_terms(N, alpha, rho)
    return lo <= mid * (1.0 + SANDWICH_TOL) and mid <= hi * (1.0 + SANDWICH_TOL)


def threshold_radius(N: int, alpha: float) -> ThresholdReport:
    """Full radius analysis of sign(x_1 + ... + x_N - alpha).

    alpha is canonicalized to the odd-parity representative first; the report
    carries that representative, the exact-spectrum radius, the normalized
    ratio radius * (alpha + sqrt(N)), the tail correction and the sandwich
    verdict.
    """
    if not 0 <= alpha < N:
        raise ValueError(f"need 0 <= alpha < N, got alpha = {alpha}")
    a = canonical_alpha(N, alpha)
    rho = _radius_exact(N, a).radius
    lo, mid, hi = _sandwich_terms(N, a, rho)
    ok = lo <= mid * (1.0 + SANDWICH_TOL) and mid <= hi * (1.0 + SANDWICH_TOL)
    return ThresholdReport(
        n=N,
        alpha=a,
        radius=rho,
        ratio=rho * (a + math.sqrt(N)),
        mckay_c=mckay_residual(N, a),
        sandwich_ok=ok,
        y_value=y_function((a + 1) / math.sqrt(N)),
    )


_GAMMA_CACHE = []


def gamma_constant() -> float:
    """The gamma with int_0^gamma e^{u^2/2} du = sqrt(pi/2).

    Bisection on [0.5, 2] over the adaptive-Simpson integral; the integrand
    is smooth and increasing, and the bracket is driven to machine width, so
    the defining integral matches sqrt(pi/2) to well under 1e-12.
    """
    if not _GAMMA_CACHE:
        f = lambda u: math.exp(0.5 * u * u)
        lo, hi = 0.5, 2.0
        while True:
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if _adaptive_simpson(f, 0.0, mid, 1e-14) < SQRT_HALF_PI:
                lo = mid
            else:
                hi = mid
        _GAMMA_CACHE.append(0.5 * (lo + hi))
    return _GAMMA_CACHE[0]


def majority_scan(Ns, workers: int = 1):
    """Rows (N, rho(Maj_N), rho sqrt(N), rho sqrt(N)/gamma) for odd N.

    Work is partitioned by N across threads; row order follows the input, so
    output is independent of the worker count.
    """
    Ns = [int(N) for N in Ns]
    for N in Ns:
        if N % 2 == 0:
            raise ValueError(f"majority scan needs odd N, got {N}")
    gam = gamma_constant()

    def row(N: int):
        rho = _radius_exact(N, 0).radius
        return N, rho, rho * math.sqrt(N), rho * math.sqrt(N) / gam

    workers = max(1, int(workers))
    if workers == 1:
        return [row(N) for N in Ns]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, Ns))


def tail_lower_bound_check(N: int, alpha: float) -> bool:
    """sigma(x_1 + ... + x_N > alpha) >= exp(-6 (1 + alpha/sqrt(N))^2).

    The tail is exact (log of an integer tail count); alpha = N is excluded
    since its tail is empty.
    """
    if not 0 <= alpha < N:
        raise ValueError("need 0 <= alpha < N (the tail at alpha = N is empty)")
    upto = math.ceil((N - alpha) / 2) - 1  # number of -1s strictly winning the threshold
    if upto < 0:
        return False
    log_sigma = math.log(_tail_count(N, upto)) - N * math.log(2.0)
    return log_sigma >= -6.0 * (1.0 + alpha / math.sqrt(N)) ** 2 - 1e-12


def tn_lower_bound(N: int) -> float:
    """The root t_N in (0, 1] of sum_{k=1}^N cos(pi/(floor(N/k)+2)) t^k = 1/2.

    The printed equation starts the sum at k = 0, whose floor(N/0) term is
    undefined; the k >= 1 reading matches the coefficient-bound indexing the
    equation comes from, and is what is solved here.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    coefs = [math.cos(math.pi / (N // k + 2)) for k in range(1, N + 1)]

    def f(t: float) -> float:
        acc = 0.0
        for c in reversed(coefs):  # Horner from the top power
            acc = (acc + c) * t
        return acc

    if f(1.0) <= 0.5:
        return 1.0
    lo, hi = 0.0, 1.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
