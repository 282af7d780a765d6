import json
import math

import numpy as np
import pytest

from cuberadius.cube import SymmetricSpectrum, from_truth_table, walsh_transform
from cuberadius.inequalities import InequalityReport
from cuberadius.radius import RadiusResult
from cuberadius.serialize import (
    MAJORITY_SCAN_HEADER,
    THRESHOLD_SCAN_HEADER,
    dumps_radius_result,
    dumps_report,
    dumps_spectrum,
    dumps_symmetric_spectrum,
    dumps_truth_table,
    fmt17,
    loads_spectrum,
    loads_symmetric_spectrum,
    loads_truth_table,
    majority_scan_csv,
    threshold_scan_csv,
)
from cuberadius.threshold import threshold_radius


def test_fmt17_round_trips_awkward_doubles():
    values = [0.1, 2.0 / 3.0, 1e-308, 4.9e-324, math.pi, -1.2345678901234567e300, 0.0]
    for v in values:
        assert float(fmt17(v)) == v


def test_fmt17_rejects_non_finite():
    with pytest.raises(ValueError):
        fmt17(math.inf)


def test_truth_table_round_trip_is_bit_exact():
    rng = np.random.default_rng(0)
    f = from_truth_table(5, rng.normal(size=32) * 1e3)
    back = loads_truth_table(dumps_truth_table(f))
    assert back.n == 5
    assert np.array_equal(back.values, f.values)


def test_spectrum_round_trip_is_bit_exact():
    rng = np.random.default_rng(1)
    s = walsh_transform(from_truth_table(4, rng.normal(size=16)))
    back = loads_spectrum(dumps_spectrum(s))
    assert np.array_equal(back.coeffs, s.coeffs)


def test_truth_table_schema_validated():
    with pytest.raises(ValueError):
        loads_truth_table('{"n": 2, "vals": [1, 1, 1, 1]}')


def test_symmetric_spectrum_round_trip_is_exact():
    s = SymmetricSpectrum.from_level_coeffs(3, ["-3/4", "1/4", "1/4", "1/4"])
    back = loads_symmetric_spectrum(dumps_symmetric_spectrum(s))
    assert back.level_coeffs == s.level_coeffs


def test_radius_result_json():
    obj = json.loads(dumps_radius_result(RadiusResult(0.5, 1e-12, 40, "bisection")))
    assert obj == {"radius": 0.5, "residual": 1e-12, "iterations": 40, "method": "bisection"}
    obj = json.loads(dumps_radius_result(RadiusResult(math.inf, 0.0, 0, "closed_form")))
    assert obj["radius"] == "inf"


def test_report_json_with_and_without_witness():
    f = from_truth_table(1, [1.0, -1.0])
    rep = InequalityReport("wiener", 3, 0, 0.25, f)
    obj = json.loads(dumps_report(rep))
    assert obj["suite"] == "wiener" and obj["witness"]["values"] == [1.0, -1.0]
    obj = json.loads(dumps_report(InequalityReport("split", 1, 0, 0.0, None)))
    assert obj["witness"] is None


def test_threshold_scan_csv_shape():
    text = threshold_scan_csv([threshold_radius(3, 0)])
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(THRESHOLD_SCAN_HEADER)
    fields = lines[1].split(",")
    assert fields[0] == "3" and fields[1] == "0" and fields[5] == "true"
    assert float(fields[2]) == pytest.approx(0.5960716379833215)


def test_majority_scan_csv_shape():
    text = majority_scan_csv([(3, 0.5, 0.8, 0.9)], 1.03)
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(MAJORITY_SCAN_HEADER)
    assert lines[1].split(",")[0] == "3"


def test_json_uses_17_significant_digits():
    f = from_truth_table(1, [1 / 3, -2 / 3])
    text = dumps_truth_table(f)
    assert "0.33333333333333331" in text
