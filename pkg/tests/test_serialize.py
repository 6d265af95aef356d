import json
import math
from fractions import Fraction

import pytest

from apercut.analysis import (
    complexity_table,
    delone_report,
    period_search,
    repetitivity_radii,
)
from apercut.cutproject import Box, Scheme, generate_model_set
from apercut.errors import ProvenanceError
from apercut.growth import GenSet, bfs_balls, verify_cover
from apercut.heisenberg import GroupKind
from apercut.quadratic import QuadNum, RingSpec
from apercut.serialize import (
    analysis_report_payload,
    ball_table_csv_text,
    bounds_report_payload,
    canonical_json_bytes,
    complexity_csv_text,
    content_hash,
    cover_report_payload,
    model_set_csv_text,
    model_set_payload,
    read_json,
    read_model_set,
    seal,
    write_json,
    write_model_set,
)

E1 = GroupKind.euclidean(1)
H1 = GroupKind.heisenberg(1)


def small_1d():
    return generate_model_set(
        Scheme(E1, RingSpec(2)),
        Box(((Fraction(-9, 10), Fraction(11, 10)),)),
        Box(((Fraction(-30), Fraction(30)),)),
    )


def small_h1():
    return generate_model_set(
        Scheme(H1, RingSpec(2)),
        Box.cube(H1, Fraction(9, 10)),
        Box.gauge_box(H1, 3),
    )


def test_canonical_bytes_key_order_independent():
    a = canonical_json_bytes({"b": 1, "a": [1, 2], "c": {"y": 0, "x": 1}})
    b = canonical_json_bytes({"c": {"x": 1, "y": 0}, "a": [1, 2], "b": 1})
    assert a == b
    assert a.endswith(b"\n")
    assert b" " not in a


def test_canonical_bytes_rejects_nan():
    with pytest.raises(ValueError):
        canonical_json_bytes({"x": math.inf})


def test_content_hash_ignores_hash_field():
    payload = {"x": 1, "y": "z"}
    sealed = seal(payload)
    assert sealed["content_hash"].startswith("sha256:")
    assert content_hash(sealed) == sealed["content_hash"]
    with pytest.raises(ValueError):
        seal(sealed)


def test_write_read_json_round_trip(tmp_path):
    path = tmp_path / "x.json"
    h = write_json(path, {"payload_type": "model-set", "v": [1, 2, 3]})
    payload = read_json(path, expect_type="model-set")
    assert payload["v"] == [1, 2, 3]
    assert payload["content_hash"] == h


def test_read_json_detects_tampering(tmp_path):
    path = tmp_path / "x.json"
    write_json(path, {"payload_type": "model-set", "v": 1})
    raw = path.read_bytes().replace(b'"v":1', b'"v":2')
    path.write_bytes(raw)
    with pytest.raises(ProvenanceError):
        read_json(path)


def test_read_json_requires_hash(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"v": 1}))
    with pytest.raises(ProvenanceError):
        read_json(path)


def test_read_json_wrong_type(tmp_path):
    path = tmp_path / "x.json"
    write_json(path, {"payload_type": "cover-report"})
    with pytest.raises(ValueError):
        read_json(path, expect_type="model-set")


def test_model_set_round_trip_1d(tmp_path):
    ms = small_1d()
    path = tmp_path / "ms.json"
    write_model_set(path, ms, config={"source": "test"})
    back, payload = read_model_set(path)
    assert back == ms
    assert payload["config"] == {"source": "test"}
    assert payload["format"] == 1


def test_model_set_round_trip_h1(tmp_path):
    ms = small_h1()
    path = tmp_path / "ms.json"
    write_model_set(path, ms)
    back, payload = read_model_set(path)
    assert back == ms
    assert len(payload["float_points"]) == len(ms)
    assert payload["scheme"] == {"kind": "heisenberg", "n": 1, "d": 2,
                                 "ring": "zsqrt"}


def test_model_set_write_is_byte_identical(tmp_path):
    ms = small_h1()
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    write_model_set(p1, ms)
    write_model_set(p2, ms)
    assert p1.read_bytes() == p2.read_bytes()


def test_model_set_resealed_corruption_caught(tmp_path):
    ms = small_1d()
    path = tmp_path / "ms.json"
    write_model_set(path, ms)
    payload = json.loads(path.read_bytes())
    del payload["content_hash"]
    # push the first point far outside the region, then reseal so only the
    # structural validation can catch it
    payload["points"][0][0] = ["100000", "1", "0", "1"]
    write_json(path, payload)
    with pytest.raises(ValueError):
        read_model_set(path)


def test_model_set_csv():
    ms = small_h1()
    text = model_set_csv_text(ms)
    lines = text.splitlines()
    assert lines[0] == "x1,y1,t"
    assert len(lines) == len(ms) + 1
    first = [float(v) for v in lines[1].split(",")]
    assert first == list(ms.float_points()[0])


def test_model_set_csv_euclidean_header():
    ms = small_1d()
    assert model_set_csv_text(ms).splitlines()[0] == "x1"


def test_analysis_report_payload_serializable():
    ms = small_1d()
    payload = analysis_report_payload(
        input_hash="sha256:abc",
        delone=delone_report(ms, grid_step=Fraction(1, 10), erosion=Fraction(2)),
        complexity_rows=complexity_table(ms, [1, 2]),
        repetitivity=repetitivity_radii(ms, Fraction(2)),
        periods=period_search(ms, Fraction(4), Fraction(4)),
        config={"K": [1, 2]},
    )
    blob = canonical_json_bytes(payload)  # also proves there is no inf/nan
    parsed = json.loads(blob)
    assert parsed["input_hash"] == "sha256:abc"
    assert parsed["delone"]["separation"] > 0
    assert parsed["delone"]["separation_sq"]["d"] == 2
    assert len(parsed["complexity"]) == 2
    assert parsed["periods"]["survivors"] == []


def test_complexity_csv():
    ms = small_1d()
    text = complexity_csv_text(complexity_table(ms, [1, 2]), "sha256:abc")
    lines = text.splitlines()
    assert lines[0] == "# input_hash: sha256:abc"
    assert lines[1] == "K,classes,centers"
    assert len(lines) == 4


def test_ball_table_csv():
    table = bfs_balls(GenSet.standard(E1), 4)
    text = ball_table_csv_text(table, config={"kmax": 4})
    lines = text.splitlines()
    assert "# group: e1" in lines
    assert "# generators: [[-1],[1]]" in lines
    assert "# kmax: 4" in lines
    assert lines[-1] == "4,9"


def test_cover_report_payload():
    report = verify_cover(GenSet.standard(E1), a=10, n=2, d_used=1)
    payload = cover_report_payload(report, E1, config={"a": 10, "n": 2})
    parsed = json.loads(canonical_json_bytes(payload))
    assert parsed["covered"] is True
    assert parsed["group"] == "e1"
    assert parsed["ball_sizes"]["n"] == 5
    assert all(isinstance(g, list) for g in parsed["separated_set"])


def test_bounds_report_payload():
    payload = bounds_report_payload(1, 1, 21, 43, 43, config={"dg": 1})
    parsed = json.loads(canonical_json_bytes(payload))
    assert parsed["nuclear_dim_bound"] == 43
    assert "11^d_g" in parsed["formulas"]["nuclear"]


def test_exact_payload_shapes():
    from apercut.serialize import _exact_payload

    q = QuadNum(Fraction(1, 2), Fraction(-3, 4), 5)
    assert _exact_payload(q) == {"parts": ["1", "2", "-3", "4"], "d": 5}
    assert _exact_payload(Fraction(3, 7)) == {"value": "3/7"}
    assert _exact_payload(4) == {"value": "4"}
    with pytest.raises(TypeError):
        _exact_payload(0.5)
