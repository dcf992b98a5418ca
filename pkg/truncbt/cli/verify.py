from typing import Optional

import typer
from typer import Option

from truncbt.api import verify
from truncbt.cli.main import (
    OutputFormat,
    emit,
    option_format,
    option_out,
    parse_int_list,
    truncbt_command,
)
from truncbt.core.errors import EXIT_INVARIANT
from truncbt.ui import EMOJI_FAIL, EMOJI_OK, echo, results_table


@truncbt_command("verify", section="other")
def verify_cmd(
    only: Optional[str] = Option(
        None, "--only", help="Comma-separated check ids to run, e.g. 1,2,3"
    ),
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Run the verification suite and emit a pass/fail table

    Examples:
        $ truncbt verify
        $ truncbt verify --only 1,2,3 --format csv
    """
    results = verify(parse_int_list(only))
    echo(
        results_table(
            "verification",
            ["id", "check", "result", "seconds", "detail"],
            [
                (
                    str(r.id),
                    r.name,
                    "pass" if r.passed else "FAIL",
                    f"{r.seconds:.3f}",
                    r.detail,
                )
                for r in results
            ],
        )
    )
    emit([r.to_json() for r in results], fmt, out)
    failed = [r.id for r in results if not r.passed]
    if failed:
        echo(EMOJI_FAIL + f"Failed checks: {failed}")
        raise typer.Exit(EXIT_INVARIANT)
    echo(EMOJI_OK + f"All {len(results)} checks passed")
