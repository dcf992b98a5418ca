from truncbt.core.dieudonne import DieudonneTruncation
from truncbt.core.matrix import MatrixW
from truncbt.core.witt import RingDescriptor
from tests.cli.conftest import Runner


def test_truncation_newton(runner: Runner):
    doc = runner.document(
        "truncation --p 2 --m 2 --c 1 --d 1 --base minimal --newton"
    )
    assert doc["newton"]["blocks"] == [[1, 1]]
    D = DieudonneTruncation.from_json(doc)
    assert D.A.to_json() == doc["A"]


def test_truncation_kraft_conf(runner: Runner):
    minimal = runner.document("truncation --p 3 --base minimal")
    kraft = runner.document("truncation --p 3 --base kraft -c pi=2,1")
    assert minimal["A"] == kraft["A"]


def test_truncation_dual_and_power(runner: Runner, matrix_file):
    ring = RingDescriptor(p=2, n=2)
    path = matrix_file(MatrixW.from_ints(ring, [[1, 1], [0, 1]]))
    doc = runner.document(
        f"truncation --p 2 --n 2 --base minimal --seed {path} --dual --power 2"
    )
    assert (doc["c"], doc["d"]) == (1, 1)
    assert doc["linearized"]["rows"] == 2


def test_truncation_insufficient_precision(runner: Runner):
    result = runner.invoke("truncation --p 2 --m 1 --base minimal --newton")
    assert result.exit_code == 1, (result.stdout, result.stderr)
    assert "InsufficientPrecision" in result.stderr
