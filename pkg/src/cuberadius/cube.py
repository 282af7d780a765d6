"""Real functions on the Boolean cube {-1,+1}^n and their Fourier-Walsh spectra.

A function f: {-1,+1}^n -> R is stored as a dense truth table of length 2^n.
Point encoding: bit k of the table index is 0 when x_{k+1} = +1 and 1 when
x_{k+1} = -1, so index 0 is the all-ones point.

Its Fourier-Walsh expansion is f(x) = sum_S fhat(S) x^S with x^S = prod_{k in S} x_k
and fhat(S) = E[f * chi_S].  Spectra are dense vectors indexed by the subset
bitmask S (bit k set means coordinate k+1 belongs to S).  With these two
conventions the Walsh character evaluates as chi_S(x) = (-1)^{popcount(S & x)},
which is exactly the Hadamard kernel, so the fast transform is a plain
in-place butterfly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

#: Hard cap on the dimension of dense truth tables / spectra.
MAX_DENSE_N = 24

#: Coefficients with absolute value at or below this count as zero
#: (degree, homogeneity tests).
ZERO_TOL = 1e-12


def _validate_dimension(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if n > MAX_DENSE_N:
        raise ValueError(f"dense tables are capped at n <= {MAX_DENSE_N}, got n = {n}")


def _frozen_vector(values, n: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).copy()
    if arr.ndim != 1 or arr.size != 2**n:
        raise ValueError(f"{what} must have length 2^{n} = {2**n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Dense truth table of a real function on {-1,+1}^n."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        _validate_dimension(self.n)
        object.__setattr__(self, "values", _frozen_vector(self.values, self.n, "values"))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Dense Fourier-Walsh coefficient vector, indexed by subset bitmask."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        _validate_dimension(self.n)
        object.__setattr__(self, "coeffs", _frozen_vector(self.coeffs, self.n, "coeffs"))


@dataclass(frozen=True, eq=False)
class SymmetricSpectrum:
    """Per-level spectrum of a permutation-invariant function.

    For a symmetric g every coefficient depends only on |S|, so the whole
    spectrum is the vector of level coefficients g_hat([m]) for m = 0..n.
    Coefficients are exact rationals; ``log_abs`` holds log|g_hat([m])|
    (-inf where the coefficient vanishes) for overflow-free large-n work.
    The dimension is not bounded by the dense-table cap.
    """

    n: int
    level_coeffs: tuple
    log_abs: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n!r}")
        lc = tuple(Fraction(c) for c in self.level_coeffs)
        if len(lc) != self.n + 1:
            raise ValueError(f"need {self.n + 1} level coefficients, got {len(lc)}")
        la = np.asarray(self.log_abs, dtype=float)
        if la.shape != (self.n + 1,):
            raise ValueError("log_abs must have one entry per level")
        for m, (c, l) in enumerate(zip(lc, la)):
            if c == 0:
                if l != -math.inf:
                    raise ValueError(f"level {m}: zero coefficient needs log_abs = -inf")
            elif not math.isclose(log_abs_fraction(c), l, rel_tol=1e-12, abs_tol=1e-12):
                raise ValueError(f"level {m}: log_abs inconsistent with the rational value")
        la = la.copy()
        la.flags.writeable = False
        object.__setattr__(self, "level_coeffs", lc)
        object.__setattr__(self, "log_abs", la)

    @classmethod
    def from_level_coeffs(cls, n: int, level_coeffs) -> "SymmetricSpectrum":
        lc = [Fraction(c) for c in level_coeffs]
        return cls(n, tuple(lc), np.array([log_abs_fraction(c) for c in lc]))


def log_abs_fraction(q: Fraction) -> float:
    """log|q| of an exact rational, -inf for zero.  Safe for huge numerators."""
    if q == 0:
        return -math.inf
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def subset_levels(n: int) -> np.ndarray:
    """|S| for every subset bitmask S of [n], i.e. popcounts 0..2^n-1."""
    return np.bitwise_count(np.arange(2**n, dtype=np.uint32)).astype(np.int64)


def from_truth_table(n: int, values) -> BooleanFunction:
    """Build a BooleanFunction from a length-2^n table under the bitmask point
    convention (bit k of the index is 1 exactly when x_{k+1} = -1)."""
    return BooleanFunction(n, values)


def _fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalized in-place Walsh-Hadamard butterfly along the last axis.

    Output[S] = sum_x (-1)^{popcount(S & x)} input[x]; cost O(n 2^n).
    Deterministic regardless of internal vectorization.
    """
    size = a.shape[-1]
    h = 1
    while h < size:
        b = a.reshape(a.shape[:-1] + (-1, 2 * h))
        x = b[..., :h].copy()
        y = b[..., h:].copy()
        b[..., :h] = x + y
        b[..., h:] = x - y
        h *= 2
    return a


def walsh_transform(f: BooleanFunction) -> Spectrum:
    """Fourier-Walsh coefficients fhat(S) = 2^{-n} sum_x f(x) chi_S(x).

    Fast butterfly, normalized on the forward pass so the coefficients are
    literally the expectations E[f * chi_S].
    """
    a = _fwht_inplace(f.values.copy())
    a /= 2**f.n
    return Spectrum(f.n, a)


def walsh_transform_naive(f: BooleanFunction) -> Spectrum:
    """Reference O(4^n) transform via the explicit character matrix.

    Independent of the butterfly; kept as the cross-check oracle.
    """
    idx = np.arange(2**f.n, dtype=np.uint32)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx[:, None] & idx[None, :]) & 1)
    return Spectrum(f.n, signs @ f.values / 2**f.n)


def inverse_walsh(s: Spectrum) -> BooleanFunction:
    """Evaluate f(x) = sum_S coeffs[S] x^S on the whole cube (unnormalized butterfly)."""
    return BooleanFunction(s.n, _fwht_inplace(s.coeffs.copy()))


def sup_norm(f: BooleanFunction) -> float:
    return float(np.max(np.abs(f.values)))


def p_norm(f: BooleanFunction, p: float) -> float:
    """L_p norm E[|f|^p]^{1/p} under the uniform measure; p = inf gives the sup norm."""
    if p == math.inf:
        return sup_norm(f)
    if p < 1:
        raise ValueError(f"p-norms need p >= 1, got {p}")
    return float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))


def expectation(f: BooleanFunction) -> float:
    """E[f] = 2^{-n} sum_x f(x), the coefficient at the empty set."""
    return float(np.mean(f.values))


def degree(s: Spectrum) -> int:
    """Largest |S| carrying a coefficient above ZERO_TOL; 0 for constants and zero."""
    nz = np.abs(s.coeffs) > ZERO_TOL
    if not nz.any():
        return 0
    return int(subset_levels(s.n)[nz].max())


def noise_operator(s: Spectrum, rho: float) -> Spectrum:
    """T_rho: scale each coefficient by rho^{|S|}.  T_1 = id, T_0 projects onto {}."""
    return Spectrum(s.n, s.coeffs * float(rho) ** subset_levels(s.n))


def homogeneous_part(s: Spectrum, m: int) -> Spectrum:
    """Spectrum restricted to level m (all other coefficients zeroed)."""
    if not 0 <= m <= s.n:
        raise ValueError(f"level must lie in [0, {s.n}], got {m}")
    out = np.where(subset_levels(s.n) == m, s.coeffs, 0.0)
    return Spectrum(s.n, out)
