import json

from truncbt.core.matrix import MatrixW
from truncbt.core.witt import RingDescriptor
from tests.cli.conftest import Runner

ORBIT = "orbit --p 2 --n 1 --m 1 --c 1 --d 1 --base minimal"


def test_orbit_identity(runner: Runner):
    doc = runner.document(ORBIT + " --seed identity")
    assert doc["orbit_size"] * doc["stabilizer_count"] == doc["group_order"] == 4
    assert doc["stabilizer_count"] == 2


def test_orbit_seed_file(runner: Runner, matrix_file):
    path = matrix_file(MatrixW.from_ints(RingDescriptor(p=2), [[0, 1], [1, 0]]))
    doc = runner.document(f"{ORBIT} --seed {path}")
    assert doc["group_order"] == 4


def test_orbit_seed_file_over_other_ring(runner: Runner, matrix_file):
    z4 = RingDescriptor(p=2, m=2)
    path = matrix_file(MatrixW.from_ints(z4, [[3, 1], [0, 1]]))
    result = runner.invoke(f"{ORBIT} --seed {path}")
    assert result.exit_code == 1, (result.stdout, result.stderr)
    assert result.stdout == ""
    assert "RingMismatch" in result.stderr


def test_orbit_budget(runner: Runner):
    result = runner.invoke(ORBIT + " --budget 1")
    assert result.exit_code == 2, (result.stdout, result.stderr)
    assert "OrbitTooLarge" in result.stderr


def test_orbit_to_file(runner: Runner, tmp_path):
    path = tmp_path / "orbit.json"
    result = runner.invoke(f"{ORBIT} --out {path}")
    assert result.exit_code == 0, (result.stdout, result.stderr)
    assert result.stdout == ""
    assert json.loads(path.read_text())["orbit_size"] == 2


def test_orbit_fit(runner: Runner):
    doc = runner.document(ORBIT + " --fit --degrees 1,2,3")
    assert doc["gamma"] == 1
    assert doc["orbit_dim"] == 3
    assert doc["consistent"]


def test_orbit_symplectic(runner: Runner):
    doc = runner.document("orbit --p 3 --base minimal --symplectic")
    assert doc["stabilizer_count"] == 6
    assert doc["context"]["symplectic"]


def test_orbit_exclusive_modes(runner: Runner):
    result = runner.invoke(ORBIT + " --fit --centralizing 1")
    assert result.exit_code == 1, (result.stdout, result.stderr)


def test_orbit_unknown_base(runner: Runner):
    result = runner.invoke("orbit --base nonexistent")
    assert result.exit_code == 1, (result.stdout, result.stderr)
