from typing import List, Optional

from typer import Option

from truncbt.api import aut, chi_finiteness, make_recipe, resolve_seed
from truncbt.cli.main import (
    OutputFormat,
    emit,
    make_ring,
    option_base,
    option_budget,
    option_c,
    option_conf,
    option_d,
    option_degrees,
    option_format,
    option_m,
    option_n,
    option_out,
    option_p,
    option_seed,
    parse_int_list,
    truncbt_command,
)


@truncbt_command("aut", section="orbits")
def aut_cmd(
    p: int = option_p,
    n: int = option_n,
    m: int = option_m,
    c: int = option_c,
    d: int = option_d,
    base: str = option_base,
    conf: List[str] = option_conf("base"),
    seed: str = option_seed,
    cross_check: bool = Option(
        False,
        "--cross-check",
        help="Also enumerate the stabilizer and report its size",
    ),
    chi_fit: bool = Option(
        False,
        "--chi-fit",
        help="Fit the W_0 image count over the degrees given instead",
    ),
    degrees: Optional[str] = option_degrees,
    budget: Optional[int] = option_budget,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Count automorphisms of a truncation through its endomorphism module

    Examples:
        $ truncbt aut --p 2 --n 2 --base minimal --cross-check
        $ truncbt aut --p 2 --base ordinary --chi-fit --degrees 1,2,3
    """
    recipe = make_recipe(base, c, d, conf)
    if chi_fit:
        result = chi_finiteness(
            recipe, p, m, degrees=parse_int_list(degrees), budget=budget
        )
        emit(result.to_json(), fmt, out)
        return
    ring = make_ring(p, n, m)
    g = resolve_seed(seed, ring, recipe.datum().r)
    emit(aut(recipe, ring, g, cross_check=cross_check, budget=budget), fmt, out)
