from typing import List, Optional

from typer import Option

from truncbt.api import make_recipe, resolve_seed, truncation
from truncbt.cli.main import (
    OutputFormat,
    emit,
    make_ring,
    option_base,
    option_c,
    option_conf,
    option_d,
    option_format,
    option_m,
    option_n,
    option_out,
    option_p,
    option_seed,
    truncbt_command,
)


@truncbt_command("truncation", section="invariants", aliases=["trunc"])
def truncation_cmd(
    p: int = option_p,
    n: int = option_n,
    m: int = option_m,
    c: int = option_c,
    d: int = option_d,
    base: str = option_base,
    conf: List[str] = option_conf("base"),
    seed: str = option_seed,
    dual: bool = Option(False, "--dual", help="Emit the Cartier dual instead"),
    power: Optional[int] = Option(
        None, "--power", help="Also emit the W_m-linear matrix of phi^power"
    ),
    newton: bool = Option(
        False, "--newton", help="Also read the Newton polygon at this precision"
    ),
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Build the truncated Dieudonne module of a base twisted by g

    Examples:
        $ truncbt truncation --p 2 --m 2 --c 1 --d 1 --base minimal
        $ truncbt truncation --p 3 --m 3 --base kraft -c pi=2,1 --newton
        $ truncbt truncation --p 2 --n 2 --base minimal --seed g.json --dual
    """
    ring = make_ring(p, n, m)
    recipe = make_recipe(base, c, d, conf)
    g = resolve_seed(seed, ring, recipe.datum().r)
    emit(
        truncation(recipe, ring, g, dual=dual, power=power, newton=newton),
        fmt,
        out,
    )
