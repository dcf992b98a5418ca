from typing import List, Optional

from typer import Option

from truncbt.api import level_exp, load_matrix, make_recipe, probe
from truncbt.cli.main import (
    OutputFormat,
    emit,
    make_ring,
    option_base,
    option_budget,
    option_c,
    option_conf,
    option_d,
    option_format,
    option_m,
    option_n,
    option_out,
    option_p,
    truncbt_command,
)
from truncbt.core.errors import InvalidArgumentError


@truncbt_command("level-exp", section="orbits", aliases=["lx"])
def level_exp_cmd(
    p: int = option_p,
    n: int = option_n,
    m: int = option_m,
    c: int = option_c,
    d: int = option_d,
    base: str = option_base,
    conf: List[str] = option_conf("base"),
    level: int = Option(1, "--level", help="Truncation level to group orbits at"),
    precision: Optional[int] = Option(
        None,
        "--precision",
        help="Precision for reading Newton polygons",
        show_default="max(level + 1, r + 1)",  # type: ignore
    ),
    seeds: List[str] = Option(
        None,
        "--seeds",
        "-s",
        help="Matrix files to use as twists; all of GL_r otherwise",
    ),
    probe_seeds: bool = Option(
        False,
        "--probe",
        help="Report the first level separating exactly two --seeds",
    ),
    budget: Optional[int] = option_budget,
    fmt: OutputFormat = option_format,  # type: ignore[valid-type]
    out: Optional[str] = option_out,
):
    """Check that orbits at a truncation level carry a single Newton polygon

    Examples:
        $ truncbt level-exp --p 2 --c 1 --d 1 --level 1
        $ truncbt level-exp --p 3 --base minimal --level 1 --format csv
        $ truncbt level-exp --p 2 --m 2 --seeds g1.json --seeds g2.json --probe
    """
    ring = make_ring(p, n, m)
    recipe = make_recipe(base, c, d, conf)
    matrices = [load_matrix(path, ring) for path in seeds] if seeds else None
    if probe_seeds:
        if matrices is None or len(matrices) != 2:
            raise InvalidArgumentError("--probe needs exactly two --seeds")
        emit(probe(recipe, *matrices, budget=budget), fmt, out)
        return
    report = level_exp(
        recipe, ring, level, matrices, precision=precision, budget=budget
    )
    emit(report.to_json(), fmt, out)
