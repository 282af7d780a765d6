import math
from fractions import Fraction

import numpy as np
import pytest

from cuberadius.cube import (
    Spectrum,
    SymmetricSpectrum,
    from_truth_table,
    inverse_walsh,
    subset_levels,
    sup_norm,
    walsh_transform,
)
from cuberadius.families import extremal_indicator_flip, majority
from cuberadius.radius import (
    LevelProfile,
    bn_radius_formula,
    boolean_radius,
    boolean_radius_symmetric,
    brute_force_bn_radius,
    class_radius,
    homogeneous_class_scan,
    level_profile,
    majorant,
)

SQRT2M1 = math.sqrt(2.0) - 1.0


def profile_of(f):
    return level_profile(walsh_transform(f), sup_norm(f))


def exact_root(weights, target=Fraction(1), iters=220):
    """Independent oracle: bisection in exact rational arithmetic."""
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if sum(Fraction(w) * mid**m for m, w in enumerate(weights)) < target:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


MAJ3_RADIUS = exact_root([0, Fraction(3, 2), 0, Fraction(1, 2)])


class TestLevelProfile:
    def test_indicator_flip_weights(self):
        p = profile_of(extremal_indicator_flip(2))
        assert np.allclose(p.weights, [0.5, 1.0, 0.5], atol=1e-15)
        assert p.sup_norm == 1.0

    def test_dictator_weights(self):
        p = profile_of(from_truth_table(3, [1, -1, 1, -1, 1, -1, 1, -1]))
        assert np.allclose(p.weights, [0, 1, 0, 0], atol=1e-15)

    def test_majority3_weights(self):
        p = profile_of(majority(3))
        assert np.allclose(p.weights, [0, 1.5, 0, 0.5], atol=1e-15)

    def test_rejects_negative_sup(self):
        with pytest.raises(ValueError):
            level_profile(walsh_transform(majority(3)), -1.0)

    def test_rejects_inconsistent_log_view(self):
        with pytest.raises(ValueError):
            LevelProfile(1, np.array([0.0, 1.0]), np.array([-math.inf, 1.0]), 1.0)


class TestMajorant:
    def test_at_zero_gives_constant_weight(self):
        p = profile_of(extremal_indicator_flip(3))
        assert majorant(p, 0.0) == pytest.approx(p.weights[0], abs=1e-15)

    def test_indicator_flip_hits_sup_at_its_radius(self):
        p = profile_of(extremal_indicator_flip(2))
        assert majorant(p, SQRT2M1) == pytest.approx(1.0, abs=1e-12)

    def test_majority3_at_one(self):
        assert majorant(profile_of(majority(3)), 1.0) == pytest.approx(2.0, abs=1e-12)

    def test_log_domain_agrees_with_linear(self):
        w = np.array([0.0, 2.0, 3.0])
        small = LevelProfile(2, w, np.log(np.where(w > 0, w, 1)) + np.where(w > 0, 0, -np.inf), 1.0)
        big_w = w * math.exp(701)
        with np.errstate(divide="ignore"):
            big = LevelProfile(2, big_w, np.log(big_w), 1.0)
        for rho in (0.1, 0.5, 1.0):
            assert majorant(big, rho) == pytest.approx(majorant(small, rho) * math.exp(701), rel=1e-12)

    def test_rejects_negative_rho(self):
        with pytest.raises(ValueError):
            majorant(profile_of(majority(3)), -0.1)

    def test_strictly_increasing_iff_nonconstant(self):
        grid = np.linspace(0.0, 1.0, 25)
        p = profile_of(majority(3))
        vals = [majorant(p, r) for r in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        const = profile_of(from_truth_table(2, [0.3] * 4))
        assert len({majorant(const, r) for r in grid}) == 1


class TestBooleanRadius:
    def test_indicator_flip_n2(self):
        r = boolean_radius(profile_of(extremal_indicator_flip(2)))
        assert r.radius == pytest.approx(SQRT2M1, abs=1e-12)
        assert r.method == "bisection"

    def test_dictator_is_one(self):
        f = from_truth_table(1, [1, -1])
        assert boolean_radius(profile_of(f)).radius == 1.0

    def test_majority3_matches_exact_cubic_root(self):
        r = boolean_radius(profile_of(majority(3)))
        assert r.radius == pytest.approx(MAJ3_RADIUS, abs=1e-12)

    def test_constant_gets_infinite_sentinel(self):
        r = boolean_radius(profile_of(from_truth_table(2, [3.0] * 4)))
        assert r.radius == math.inf
        assert r.method == "closed_form"

    def test_zero_function_gets_infinite_sentinel(self):
        assert boolean_radius(profile_of(from_truth_table(2, [0.0] * 4))).radius == math.inf

    def test_rejects_weights_below_sup(self):
        p = LevelProfile(1, np.array([0.0, 0.5]), np.array([-math.inf, math.log(0.5)]), 1.0)
        with pytest.raises(ValueError):
            boolean_radius(p)

    def test_residual_contract(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            f = from_truth_table(6, rng.normal(size=64))
            r = boolean_radius(profile_of(f))
            assert 0.0 < r.radius <= 1.0
            assert r.residual <= 1e-10 * max(1.0, sup_norm(f))
            p = profile_of(f)
            assert abs(majorant(p, r.radius) - p.sup_norm) <= 1e-10 * max(1.0, p.sup_norm)

    def test_radius_one_iff_weights_sum_to_sup(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            f = from_truth_table(5, rng.normal(size=32))
            p = profile_of(f)
            r = boolean_radius(p).radius
            tight = abs(p.weights.sum() - p.sup_norm) <= 1e-10 * p.sup_norm
            assert (r == 1.0) == tight

    def test_scaling_invariance(self):
        rng = np.random.default_rng(2)
        f = rng.normal(size=32)
        base = boolean_radius(profile_of(from_truth_table(5, f))).radius
        for c in (3.0, 1e-8, 2.0**520, -7.0):
            scaled = boolean_radius(profile_of(from_truth_table(5, c * f))).radius
            assert scaled == pytest.approx(base, rel=1e-12)


class TestSymmetricSolver:
    def test_majority3_matches_dense_path(self):
        sym = SymmetricSpectrum.from_level_coeffs(3, ["0", "1/2", "0", "-1/2"])
        r = boolean_radius_symmetric(sym, 1.0)
        assert r.radius == pytest.approx(MAJ3_RADIUS, abs=1e-12)

    def test_threshold_3_2_matches_dense_path(self):
        sym = SymmetricSpectrum.from_level_coeffs(3, ["-3/4", "1/4", "1/4", "1/4"])
        dense = boolean_radius(profile_of(from_truth_table(3, [1, -1, -1, -1, -1, -1, -1, -1])))
        r = boolean_radius_symmetric(sym, 1.0)
        assert r.radius == pytest.approx(dense.radius, abs=1e-12)

    def test_parity_as_symmetric(self):
        sym = SymmetricSpectrum.from_level_coeffs(4, ["0", "0", "0", "0", "1"])
        assert boolean_radius_symmetric(sym, 1.0).radius == 1.0

    def test_constant_symmetric(self):
        sym = SymmetricSpectrum.from_level_coeffs(2, ["1", "0", "0"])
        assert boolean_radius_symmetric(sym, 1.0).radius == math.inf

    def test_large_dimension_runs(self):
        n = 2001
        coeffs = ["0"] * (n + 1)
        coeffs[1] = "1/2001"  # sum of weights = 1 = sup: radius exactly 1
        sym = SymmetricSpectrum.from_level_coeffs(n, coeffs)
        assert boolean_radius_symmetric(sym, 1.0).radius == 1.0

    @pytest.mark.parametrize("n", range(2, 13))
    def test_random_symmetric_functions_agree_with_dense_path(self, n):
        # dyadic level coefficients so both paths see identical numbers
        rng = np.random.default_rng(1000 + n)
        levels = rng.integers(-32, 33, size=n + 1) / 64.0
        coeffs = levels[subset_levels(n)]
        f = inverse_walsh(Spectrum(n, coeffs))
        dense = boolean_radius(profile_of(f))
        sym = SymmetricSpectrum.from_level_coeffs(
            n, [Fraction(v).limit_denominator(64) for v in levels]
        )
        symr = boolean_radius_symmetric(sym, sup_norm(f))
        if math.isinf(dense.radius):
            assert math.isinf(symr.radius)
        else:
            assert symr.radius == pytest.approx(dense.radius, abs=1e-9)


class TestClassRadius:
    def test_dictator_and_parity(self):
        dic = profile_of(from_truth_table(2, [1, -1, 1, -1]))
        par = profile_of(from_truth_table(2, [1, -1, -1, 1]))
        assert class_radius([dic, par]) == 1.0

    def test_single_extremal(self):
        assert class_radius([profile_of(extremal_indicator_flip(2))]) == pytest.approx(SQRT2M1)

    def test_infinite_members_ignored(self):
        const = profile_of(from_truth_table(2, [2.0] * 4))
        maj = profile_of(majority(3))
        assert class_radius([const, maj]) == pytest.approx(MAJ3_RADIUS)
        assert class_radius([const]) == math.inf

    def test_monotone_under_enlargement(self):
        maj = profile_of(majority(3))
        ext = profile_of(extremal_indicator_flip(3))
        assert class_radius([maj, ext]) <= class_radius([maj])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            class_radius([])


class TestBnFormula:
    def test_small_values(self):
        assert bn_radius_formula(1) == 1.0
        assert bn_radius_formula(2) == pytest.approx(SQRT2M1, abs=1e-15)

    def test_limit_n_times_radius(self):
        n = 1000
        assert n * bn_radius_formula(n) == pytest.approx(math.log(2), rel=0.01)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            bn_radius_formula(0)


class TestBruteForce:
    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_matches_formula_and_extremal_attains(self, N):
        r, minimizer = brute_force_bn_radius(N)
        assert r == pytest.approx(bn_radius_formula(N), abs=1e-10)
        ext = boolean_radius(profile_of(extremal_indicator_flip(N))).radius
        assert ext == pytest.approx(r, abs=1e-10)
        assert abs(boolean_radius(profile_of(minimizer)).radius - r) <= 1e-12

    def test_worker_count_does_not_change_result(self):
        r1, f1 = brute_force_bn_radius(3, workers=1)
        r3, f3 = brute_force_bn_radius(3, workers=3)
        assert r1 == r3
        assert np.array_equal(f1.values, f3.values)

    def test_rejects_large_n(self):
        with pytest.raises(ValueError):
            brute_force_bn_radius(5)


class TestHomogeneousScan:
    def test_level_one_is_exactly_one(self):
        assert homogeneous_class_scan(6, 1, trials=5, seed=0) == 1.0

    def test_top_level_is_one(self):
        assert homogeneous_class_scan(5, 5, trials=3, seed=0) == 1.0

    def test_n10_m2_estimate(self):
        got = homogeneous_class_scan(10, 2, trials=50, seed=3)
        ref = 10 ** 0.25 * math.comb(10, 2) ** -0.25
        assert got == pytest.approx(0.6146362971528592, abs=1e-12)  # frozen seeded value
        assert ref / 3 <= got <= 3 * ref

    def test_worker_invariance(self):
        a = homogeneous_class_scan(8, 2, trials=20, seed=5, workers=1)
        b = homogeneous_class_scan(8, 2, trials=20, seed=5, workers=4)
        assert a == b

    def test_rejects_bad_level(self):
        with pytest.raises(ValueError):
            homogeneous_class_scan(5, 6, trials=1, seed=0)
