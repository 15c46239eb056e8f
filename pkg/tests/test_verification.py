import pytest

from wavepacket_circuits import verification
from wavepacket_circuits.configuration import TransformSpec
from wavepacket_circuits.exceptions import TooLarge
from wavepacket_circuits.verification import (
    MAX_ANCILLA,
    VerificationReport,
    format_gatecount_table,
    gatecount_table,
    reallocation_residual,
    verify_transform,
)

RESIDUALS = ["circuit_vs_oracle", "circuit_unitarity", "basis_orthonormality", "reallocation", "round_trip"]


@pytest.mark.parametrize(
    "spec",
    [
        TransformSpec("gabor-sharp", 5, 1),
        TransformSpec("gabor-blended", 6, 2, "deg7"),
        TransformSpec("shannon", 5),
        TransformSpec("meyer", 5, beta="quadratic"),
    ],
    ids=lambda s: s.describe(),
)
def test_verify_transform_passes(spec):
    report = verify_transform(spec, num_signals=4)
    assert report.passed, report.format()
    assert list(report.residuals) == RESIDUALS
    assert report.num_ancilla <= MAX_ANCILLA
    assert report.format().endswith("PASS")
    d = report.to_dict()
    assert d["kind"] == spec.kind and d["passed"] is True


def test_verify_lowered_meyer():
    report = verify_transform(TransformSpec("meyer", 4, beta="linear"), num_signals=2, lower=True)
    assert report.passed
    assert report.num_ancilla == 2


def test_report_fails_on_large_residual():
    spec = TransformSpec("shannon", 3)
    assert not VerificationReport(spec, 1e-10, {"circuit_vs_oracle": 1e-3}, 0).passed
    assert not VerificationReport(spec, 1e-10, {"circuit_vs_oracle": 0.0}, MAX_ANCILLA + 1).passed
    text = VerificationReport(spec, 1e-10, {"circuit_vs_oracle": 1e-3}, 0).format()
    assert "FAIL" in text


def test_reallocation_residual_is_zero_for_sharp_kinds():
    assert reallocation_residual(TransformSpec("gabor-sharp", 4, 1), num_signals=3) <= 1e-12


def test_gatecount_table():
    rows = gatecount_table("meyer", range(3, 6), beta="linear")
    assert [row.n for row in rows] == [3, 4, 5]
    for row in rows:
        assert row.counts.custom_block == ()
        assert row.num_ancilla <= MAX_ANCILLA
        assert row.cost > 0
        assert row.ratio_n2 == pytest.approx(row.cost / row.n**2)
    text = format_gatecount_table(rows)
    assert len(text.splitlines()) == 4


def test_gatecount_table_blended_gabor_is_elementary():
    rows = gatecount_table("gabor-blended", [5, 6], b=2, beta="quadratic")
    assert all(row.b == 2 for row in rows)
    assert all(row.counts.custom_block == () for row in rows)
    assert rows[1].to_dict()["n"] == 6


def _too_large(spec, **kwargs):
    raise TooLarge(spec.n, 17)


def test_synthesis_error_becomes_failed_report(monkeypatch):
    monkeypatch.setattr(verification, "build_transform_circuit", _too_large)
    report = verify_transform(TransformSpec("meyer", 4, beta="deg7"), num_signals=2)
    assert not report.passed
    assert report.residuals == {}
    assert report.error.startswith("TooLarge")
    assert report.format().endswith("FAIL")
    assert report.to_dict()["error"] == report.error


@pytest.mark.parametrize("kind", ["gabor-sharp", "shannon"])
def test_cost_per_n2_stays_within_the_largest_size(kind):
    rows = gatecount_table(kind, range(4, 13))
    limit = 1.5 * rows[-1].ratio_n2
    assert all(row.ratio_n2 <= limit for row in rows), format_gatecount_table(rows)


def test_lowered_shannon_cost_is_cubic():
    rows = gatecount_table("shannon", range(4, 13))
    assert max(row.ratio_n3 for row in rows) <= 1.5 * rows[0].ratio_n3, format_gatecount_table(rows)


def test_merged_sharp_gabor_counts():
    [row] = gatecount_table("gabor-sharp", [12])
    assert row.b == 5
    assert row.cost == 113
    assert row.num_ancilla == 0


def test_meyer_cost_per_n3_is_bounded():
    rows = gatecount_table("meyer", range(4, 11), beta="linear")
    ratios = [row.ratio_n3 for row in rows]
    assert max(ratios) <= 2.5 * min(ratios), format_gatecount_table(rows)


def test_blended_gabor_cost_per_n3_does_not_grow():
    rows = gatecount_table("gabor-blended", range(4, 11), beta="linear")
    assert max(row.ratio_n3 for row in rows) <= 1.5 * rows[0].ratio_n3, format_gatecount_table(rows)
