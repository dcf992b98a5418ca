from typing import Optional

from typer import Option

from truncbt.api import traverso
from truncbt.cli.main import (
    OutputFormat,
    emit,
    option_format,
    option_out,
    truncbt_command,
)


@truncbt_command("traverso", section="invariants")
def traverso_cmd(
    blocks: str = Option(
        ..., "--blocks", help="Newton polygon as coprime blocks c/d, e.g. 2/1,1/1"
    ),
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Codimension, specializing height s_D and level of a Newton polygon

    Examples:
        $ truncbt traverso --blocks 2/1,1/1
        $ truncbt traverso --blocks 1/0,0/1 --format csv
    """
    emit(traverso(blocks), fmt, out)
