import json

import pytest
from click.testing import Result
from typer.testing import CliRunner

from truncbt.cli import app


class Runner:
    def __init__(self):
        self._runner = CliRunner(mix_stderr=False)

    def invoke(self, *args, **kwargs) -> Result:
        return self._runner.invoke(app, *args, **kwargs)

    def document(self, args) -> dict:
        result = self.invoke(args)
        assert result.exit_code == 0, (
            result.stdout,
            result.stderr,
            result.exception,
        )
        return json.loads(result.stdout)


@pytest.fixture
def runner() -> Runner:
    return Runner()
