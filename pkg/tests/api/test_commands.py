import json

import pytest

from truncbt.api import (
    aut,
    kraft_gamma,
    kraft_summary,
    load_matrix,
    make_recipe,
    orbit,
    probe,
    resolve_datum,
    resolve_seed,
    traverso,
    truncation,
)
from truncbt.core.errors import InvalidArgumentError, NotCoprime, RingMismatch
from truncbt.core.kraft import minimal_datum
from truncbt.core.matrix import MatrixW
from truncbt.core.witt import RingDescriptor


def test_resolve_datum():
    assert resolve_datum(2, 3, minimal=True) == minimal_datum(2, 3)
    assert resolve_datum(1, pi=(2, 1)) == minimal_datum(1, 1)
    assert resolve_datum(blocks="1/1").pi == (2, 1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {},
        {"c": 1, "d": 1, "minimal": True, "blocks": "1/1"},
        {"minimal": True, "d": 1},
        {"c": 1, "minimal": True},
    ],
)
def test_resolve_datum_errors(kwargs):
    with pytest.raises(InvalidArgumentError):
        resolve_datum(**kwargs)


def test_resolve_datum_not_coprime():
    with pytest.raises(NotCoprime):
        resolve_datum(2, 4, minimal=True)


def test_kraft_summary():
    summary = kraft_summary(minimal_datum(2, 3))
    assert summary["gamma1"] == 6
    assert summary["period"] == 5
    assert sum(summary["pairs"].values()) == 25
    assert kraft_gamma(minimal_datum(1, 1)) == {"gamma1": 1, "dim_orbit1": 3}


def test_traverso_empty():
    with pytest.raises(InvalidArgumentError):
        traverso(" , ")


def test_load_matrix(tmp_path, f2):
    rows = tmp_path / "rows.json"
    rows.write_text(json.dumps([[1, 1], [0, 1]]))
    assert load_matrix(str(rows), f2) == MatrixW.from_ints(f2, [[1, 1], [0, 1]])

    document = tmp_path / "doc.json"
    z4 = RingDescriptor(p=2, m=2)
    document.write_text(json.dumps(MatrixW.from_ints(z4, [[3, 1], [0, 1]]).to_json()))
    assert load_matrix(str(document), z4) == MatrixW.from_ints(z4, [[3, 1], [0, 1]])
    with pytest.raises(RingMismatch):
        load_matrix(str(document), f2)


def test_resolve_seed(f2, matrix_file):
    assert resolve_seed("identity", f2, 2) == MatrixW.identity(f2, 2)
    g = MatrixW.from_ints(f2, [[0, 1], [1, 0]])
    assert resolve_seed(matrix_file(g), f2, 2) == g


def test_truncation_document(f4):
    recipe = make_recipe("minimal", c=1, d=1)
    doc = truncation(recipe, f4, power=2)
    assert set(doc) == {"c", "d", "ring", "S", "g", "A", "V", "linearized"}


def test_orbit_and_aut(f4, supersingular):
    report = orbit(supersingular, f4)
    assert report.stabilizer_count == 12
    result = aut(supersingular, f4, cross_check=True)
    assert result["aut_count"] == result["stabilizer_count"] == 12


def test_probe(ordinary, f2):
    g = MatrixW.identity(f2, 2)
    assert probe(ordinary, g, g) == {"separating_level": None}
