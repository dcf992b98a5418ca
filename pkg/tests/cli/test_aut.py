import pytest

from tests.cli.conftest import Runner


@pytest.mark.parametrize(
    "args,count,chi",
    [
        ("--p 2 --n 2 --base minimal", 12, 3),
        ("--p 2 --base minimal", 2, 1),
        ("--p 3 --base ordinary", 4, 4),
    ],
)
def test_aut_cross_check(runner: Runner, args, count, chi):
    doc = runner.document(f"aut {args} --cross-check")
    assert doc["aut_count"] == doc["stabilizer_count"] == count
    assert doc["chi"] == chi


def test_aut_hom_cardinality(runner: Runner):
    doc = runner.document("aut --p 3 --base ordinary")
    # diagonal endomorphisms only
    assert doc["hom_log_cardinality"] == 2
    assert "stabilizer_count" not in doc


def test_aut_chi_fit(runner: Runner):
    doc = runner.document("aut --p 2 --base minimal --chi-fit --degrees 1,2,3")
    assert doc["counts"] == [[1, 1], [2, 3], [3, 1]]
    assert doc["verdict"] == "finite"
    assert not doc["reliable"]


def test_aut_budget(runner: Runner):
    result = runner.invoke("aut --p 2 --n 2 --base minimal --budget 3")
    assert result.exit_code == 2, (result.stdout, result.stderr)
