import pytest
from fsspec.implementations.local import LocalFileSystem
from pydantic import ValidationError

from truncbt.config import TruncBTConfig, project_config
from truncbt.constants import CONFIG_FILE_NAME


def test_defaults(tmp_path):
    config = project_config(str(tmp_path))
    assert config.ORBIT_BUDGET == 5_000_000
    assert config.fit_degrees == [1, 2, 3]


def test_loading_yaml(tmp_path):
    (tmp_path / CONFIG_FILE_NAME).write_text(
        "core:\n  orbit_budget: 7\n  FIT_DEGREES: 2,4\n", encoding="utf8"
    )
    config = project_config(str(tmp_path), fs=LocalFileSystem())
    assert config.ORBIT_BUDGET == 7
    assert config.fit_degrees == [2, 4]


def test_env_overrides_yaml(tmp_path, monkeypatch):
    (tmp_path / CONFIG_FILE_NAME).write_text(
        "core:\n  ORBIT_BUDGET: 7\n", encoding="utf8"
    )
    monkeypatch.setenv("TRUNCBT_ORBIT_BUDGET", "11")
    assert project_config(str(tmp_path)).ORBIT_BUDGET == 11


@pytest.mark.parametrize(
    "kwargs", [{"FIT_DEGREES": "1"}, {"FIT_DEGREES": "0,1"}, {"ORBIT_BUDGET": 0}]
)
def test_validation(kwargs):
    with pytest.raises(ValidationError):
        TruncBTConfig(**kwargs)
