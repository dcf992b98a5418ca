from typing import List, Optional

from typer import Option

from truncbt.api import centralizing, dimensions, make_recipe, orbit, resolve_seed
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
    option_symplectic,
    parse_int_list,
    truncbt_command,
)
from truncbt.core.errors import InvalidArgumentError


@truncbt_command("orbit", section="orbits")
def orbit_cmd(
    p: int = option_p,
    n: int = option_n,
    m: int = option_m,
    c: int = option_c,
    d: int = option_d,
    base: str = option_base,
    conf: List[str] = option_conf("base"),
    seed: str = option_seed,
    symplectic: bool = option_symplectic,
    fit: bool = Option(
        False,
        "--fit",
        help="Fit stabilizer and orbit dimensions over q = p^n for the degrees given",
    ),
    centralizing_m: Optional[int] = Option(
        None,
        "--centralizing",
        help="Fit gamma(1..M) and validate the centralizing sequence",
    ),
    degrees: Optional[str] = option_degrees,
    budget: Optional[int] = option_budget,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Orbit of a twist under the action whose orbits are level-m truncations

    Examples:
        $ truncbt orbit --p 2 --n 1 --m 1 --c 1 --d 1 --base minimal --seed identity
        $ truncbt orbit --p 2 --m 1 --base minimal --fit --degrees 1,2,3
        $ truncbt orbit --p 2 --base minimal --symplectic
        $ truncbt orbit --p 2 --base minimal --centralizing 2 --degrees 1,2
    """
    recipe = make_recipe(base, c, d, conf)
    if fit and centralizing_m is not None:
        raise InvalidArgumentError("--fit and --centralizing are exclusive")
    if fit:
        report = dimensions(
            recipe,
            p,
            m,
            degrees=parse_int_list(degrees),
            symplectic=symplectic,
            budget=budget,
        )
        emit(report.to_json(), fmt, out)
        return
    if centralizing_m is not None:
        sequence = centralizing(
            recipe, p, centralizing_m, degrees=parse_int_list(degrees), budget=budget
        )
        emit(sequence.to_json(), fmt, out)
        return
    ring = make_ring(p, n, m)
    g = resolve_seed(seed, ring, recipe.datum().r)
    report = orbit(recipe, ring, g, symplectic=symplectic, budget=budget)
    emit(report.to_json(), fmt, out)
