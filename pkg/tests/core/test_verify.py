import random

import pytest

from truncbt.core.errors import InvalidArgumentError
from truncbt.core.verify import VerifyCheck, random_polygon, run_checks
from truncbt.core.witt import WittRing
from tests.conftest import long


def test_registry_ids():
    assert sorted(VerifyCheck.registry) == list(range(1, 11))


@pytest.mark.parametrize("check_id", [1, 2, 3, 9])
def test_quick_checks_pass(check_id):
    (result,) = run_checks([check_id])
    assert result.id == check_id
    assert result.passed, result.detail
    doc = result.to_json()
    assert set(doc) == {"id", "name", "passed", "detail", "seconds"}
    assert doc["seconds"] >= 0


def test_witt_check_catches_noncommuting_product(monkeypatch):
    product = WittRing.mul

    def skewed(self, a, b):
        if self.n > 1 and (a, b) == (self.one, self.generator):
            return self.zero
        return product(self, a, b)

    monkeypatch.setattr(WittRing, "mul", skewed)
    (result,) = run_checks([9])
    assert not result.passed
    assert "commutativity in W_1(F_2^2)" in result.detail
    assert "commutativity in W_1(F_2^1)" not in result.detail


def test_unknown_check():
    with pytest.raises(InvalidArgumentError):
        run_checks([42])


def test_random_polygon_is_seeded():
    first = [random_polygon(random.Random(7)) for _ in range(3)]
    second = [random_polygon(random.Random(7)) for _ in range(3)]
    assert first == second
    assert all(np.blocks for np in first)


@long
def test_all_checks_pass():
    results = run_checks()
    assert [r.id for r in results] == list(range(1, 11))
    failed = [r.to_json() for r in results if not r.passed]
    assert not failed
