import json
import shutil

import pytest

from latsym import fixtures, lattice
from latsym.lattice import standard_model


def test_table_shape():
    rows = fixtures.load_table()
    assert len(rows) == 32
    assert [r["no"] for r in rows] == list(range(1, 33))
    assert sum(1 for r in rows if r["regular"]) == 21
    for r in rows:
        assert r["order"] >= 1
        assert r["disc_order"] >= 1
        assert r["disc_order"] <= r["order"]


def test_orbit_table_shape():
    rows = fixtures.load_orbit_table()
    assert len(rows) == 6
    lam = standard_model().lattice
    for r in rows:
        assert "vector" in r
        assert lam.square(r["vector"]) == r["square"]
        assert lam.divisibility(r["vector"]) == r["div"]


def test_fixture_problems_empty():
    assert fixtures.fixture_problems() == []


def test_checksum_enforced(tmp_path):
    src = fixtures._DATA / "table1.json"
    tampered = tmp_path / "table1.json"
    data = json.loads(src.read_text())
    data["rows"][0]["order"] = 99
    tampered.write_text(json.dumps(data))
    with pytest.raises(ValueError, match="checksum"):
        fixtures._load_json(tampered, fixtures.TABLE1_SHA256)
    # explicit paths are trusted, so the same file loads fine
    rows = fixtures.load_table(tampered)
    assert rows[0]["order"] == 99


def test_bundled_checksums_match(tmp_path):
    copy = tmp_path / "table1.json"
    shutil.copy(fixtures._DATA / "table1.json", copy)
    assert fixtures._load_json(copy, fixtures.TABLE1_SHA256)
    copy2 = tmp_path / "orbits.json"
    shutil.copy(fixtures._DATA / "orbits.json", copy2)
    assert fixtures._load_json(copy2, fixtures.ORBITS_SHA256)


def test_model_vector():
    model = standard_model()
    lam = model.lattice

    v = fixtures.model_vector(model, "a1_sum")
    assert v == model.named["a1_sum"]

    v = fixtures.model_vector(model, "u2(-1)")
    assert v == model.u2_vector(-1)

    v = fixtures.model_vector(model, "u2(1)+e8_root_pair-a1_first")
    expect = [a + b - c for a, b, c in zip(
        model.u2_vector(1), model.named["e8_root_pair"],
        model.named["a1_first"])]
    assert v == expect

    v = fixtures.model_vector(model, "2*u2(1)+2*e8_root_pair-a1_sum")
    assert lam.square(v) == -4
    assert lam.divisibility(v) == 2


def test_model_vector_errors():
    model = standard_model()
    with pytest.raises(ValueError, match="unknown"):
        fixtures.model_vector(model, "mystery")
    with pytest.raises(ValueError):
        fixtures.model_vector(model, "++")
    with pytest.raises(ValueError):
        fixtures.model_vector(model, "")


def test_row_expressions_build():
    for row in fixtures.load_table():
        lat = lattice.build_named(row["invariant_expr"])
        assert lat.rank >= 1
        if row["coinvariant_expr"]:
            lattice.build_named(row["coinvariant_expr"])
