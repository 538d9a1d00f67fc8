import orjson

from app.engine.decide import decide
from app.modules.exactalg import IMat2, IVec2
from app.tools.report import COLLINEAR_NOTE, Report, build_report, numeric_block, round_sig, to_json, to_text


def report_for(M, raw, numeric=False):
    verdict = decide(M, raw)
    return build_report(verdict, raw, numeric=numeric_block(verdict) if numeric else None)


def test_spectral_report_blocks(spectral_pair):
    report = report_for(*spectral_pair)
    assert report.status == "SPECTRAL"
    assert report.branch == "CASE_II"
    assert report.input.matrix == [[8, -5], [4, -1]]
    assert report.canonical.P == [[1, -1], [-1, 2]]
    assert report.canonical.D_tilde == [[0, 0], [1, 0], [-2, 6]]
    assert report.canonical.case == "II"
    assert report.classification.region == "R3"
    assert report.criterion.v == [18, -24]
    assert report.certificate.Q == [["1", "0"], ["0", "1/3"]]
    assert report.certificate.S == [[0, 0], [2, 2], [3, 1]]
    assert ["4/3", "-2/3"] in report.certificate.input_seed
    assert report.reason is None
    assert report.note is None


def test_json_round_trip(spectral_pair):
    report = report_for(*spectral_pair, numeric=True)
    text = to_json(report)
    assert Report.model_validate_json(text) == report

    data = orjson.loads(text)
    assert data["numeric"]["heuristic"] is True
    assert data["numeric"]["completeness_min"] >= data["numeric"]["completeness_threshold"]


def test_reports_are_deterministic(spectral_pair, nonspectral_pair):
    for pair in (spectral_pair, nonspectral_pair):
        assert to_json(report_for(*pair)) == to_json(report_for(*pair))


def test_nonspectral_report(nonspectral_pair):
    report = report_for(*nonspectral_pair, numeric=True)
    assert report.status == "NOT_SPECTRAL"
    assert report.numeric is None
    assert report.certificate is None
    assert report.reason.kind == "CRITERION_VECTOR"
    assert report.reason.criterion_vector == [14, -12]


def test_collinear_report_carries_the_note():
    raw = (IVec2(0, 0), IVec2(1, 1), IVec2(2, 2))
    report = report_for(IMat2.diag(3, 3), raw)
    assert report.status == "OPEN_COLLINEAR_SPECTRAL_SUFFICIENT"
    assert report.canonical is None
    assert report.note == COLLINEAR_NOTE


def test_orbit_evidence_in_report():
    raw = (IVec2(0, 0), IVec2(1, 0), IVec2(2, 3))
    report = report_for(IMat2.from_rows([[4, 0], [9, 3]]), raw)
    orbit = report.reason.orbit
    assert orbit.finite
    assert orbit.modulus == 9
    assert orbit.hit_point is None


def test_text_rendering(spectral_pair):
    text = to_text(report_for(*spectral_pair))
    assert text.splitlines()[0] == "status: SPECTRAL"
    assert "criterion (canonical): v=[18, -24] pass=True" in text


def test_round_sig():
    assert round_sig(0.1234567890123456) == 0.123456789012
    assert round_sig(1.0) == 1.0
