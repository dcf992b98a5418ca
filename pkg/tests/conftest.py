import json
import os

import pytest
from hypothesis import settings

from truncbt import LOCAL_CONFIG
from truncbt.core.base import MinimalBase, OrdinaryBase
from truncbt.core.matrix import MatrixW
from truncbt.core.witt import RingDescriptor

long = pytest.mark.long

settings.register_profile("truncbt", max_examples=50, deadline=None)
settings.load_profile("truncbt")


@pytest.fixture(autouse=True)
def tests_mode():
    os.environ["TRUNCBT_TESTS"] = "true"
    LOCAL_CONFIG.TESTS = True


@pytest.fixture
def f2() -> RingDescriptor:
    return RingDescriptor(p=2)


@pytest.fixture
def f4() -> RingDescriptor:
    return RingDescriptor(p=2, n=2)


@pytest.fixture
def z4() -> RingDescriptor:
    return RingDescriptor(p=2, m=2)


@pytest.fixture
def w2f4() -> RingDescriptor:
    return RingDescriptor(p=2, n=2, m=2)


@pytest.fixture
def supersingular() -> MinimalBase:
    return MinimalBase(c=1, d=1)


@pytest.fixture
def ordinary() -> OrdinaryBase:
    return OrdinaryBase(c=1, d=1)


@pytest.fixture
def matrix_file(tmp_path):
    def write(matrix: MatrixW, name: str = "g.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(matrix.to_json()), encoding="utf8")
        return str(path)

    return write
