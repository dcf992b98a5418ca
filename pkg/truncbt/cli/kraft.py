from typing import Optional

from typer import Option, Typer

from truncbt.api import kraft_gamma, kraft_nu, kraft_summary, resolve_datum
from truncbt.cli.main import (
    OutputFormat,
    app,
    emit,
    option_format,
    option_out,
    parse_int_list,
    truncbt_command,
    truncbt_group,
)

kraft = Typer(name="kraft", cls=truncbt_group("invariants"))
app.add_typer(kraft)

option_c = Option(None, "--c", help="Codimension c")
option_d = Option(None, "--d", help="Dimension d (with --minimal)")
option_minimal = Option(
    False, "--minimal", help="Use the minimal datum of coprime type (c, d)"
)
option_pi = Option(
    None, "--pi", help="Permutation as a 1-indexed image list, e.g. 2,1,3"
)
option_blocks = Option(
    None, "--blocks", help="Direct sum of minimal data, e.g. 2/1,1/1"
)


@kraft.callback()
def kraft_callback():
    """Kraft normal forms and their combinatorial invariants"""


@truncbt_command("gamma", parent=kraft)
def kraft_gamma_cmd(
    c: Optional[int] = option_c,
    d: Optional[int] = option_d,
    minimal: bool = option_minimal,
    pi: Optional[str] = option_pi,
    blocks: Optional[str] = option_blocks,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Compute gamma_D(1) = |J_-| and the orbit dimension r^2 - gamma_D(1)

    Examples:
        $ truncbt kraft gamma --c 2 --d 3 --minimal
        $ truncbt kraft gamma --c 1 --pi 2,1
        $ truncbt kraft gamma --blocks 2/1,1/1
    """
    datum = resolve_datum(c, d, minimal, parse_int_list(pi), blocks)
    emit(kraft_gamma(datum), fmt, out)


@truncbt_command("datum", parent=kraft)
def kraft_datum_cmd(
    c: Optional[int] = option_c,
    d: Optional[int] = option_d,
    minimal: bool = option_minimal,
    pi: Optional[str] = option_pi,
    blocks: Optional[str] = option_blocks,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Print a Kraft datum with its period, a-number and pair classes

    Examples:
        $ truncbt kraft datum --c 1 --d 1 --minimal
        $ truncbt kraft datum --blocks 1/2,1/1 --format csv
    """
    datum = resolve_datum(c, d, minimal, parse_int_list(pi), blocks)
    emit(kraft_summary(datum), fmt, out)


@truncbt_command("nu", parent=kraft)
def kraft_nu_cmd(
    c: Optional[int] = option_c,
    d: Optional[int] = option_d,
    minimal: bool = option_minimal,
    pi: Optional[str] = option_pi,
    blocks: Optional[str] = option_blocks,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Tabulate nu_pi and the landing region of every pair in J_-

    Examples:
        $ truncbt kraft nu --c 2 --d 3 --minimal --format csv
    """
    datum = resolve_datum(c, d, minimal, parse_int_list(pi), blocks)
    emit(kraft_nu(datum), fmt, out)
