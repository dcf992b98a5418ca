"""
truncbt's Python API
"""
import json
from typing import Any, Dict, List, Optional, Sequence

from fsspec import AbstractFileSystem
from fsspec.implementations.local import LocalFileSystem

from truncbt.config import LOCAL_CONFIG
from truncbt.constants import SEED_IDENTITY
from truncbt.core.base import BaseRecipe, build_recipe
from truncbt.core.dieudonne import (
    DieudonneTruncation,
    aut_count,
    cartier_dual,
    hom_module,
    linearize,
)
from truncbt.core.errors import InvalidArgumentError
from truncbt.core.experiments import (
    CentralizingSequence,
    ChiFit,
    DimensionReport,
    LevelReport,
    centralizing_sequence,
    chi_fit,
    chi_image_count,
    dimension_report,
    level_experiment,
    separation_probe,
)
from truncbt.core.kraft import (
    KraftDatum,
    a_number,
    classify_pairs,
    dim_orbit1,
    gamma1,
    minimal_datum,
    nu_table,
    sum_of_minimal,
)
from truncbt.core.matrix import MatrixW
from truncbt.core.newton import (
    NewtonPolygon,
    np_from_matrix,
    specializing_height,
    traverso_codim,
    traverso_level,
)
from truncbt.core.orbit import OrbitReport, enumerate_gl, orbit_bfs, stabilizer
from truncbt.core.verify import CheckResult, run_checks
from truncbt.core.witt import RingDescriptor
from truncbt.ui import EMOJI_LOAD, EMOJI_ORBIT, echo


def resolve_datum(
    c: Optional[int] = None,
    d: Optional[int] = None,
    minimal: bool = False,
    pi: Optional[Sequence[int]] = None,
    blocks: Optional[str] = None,
) -> KraftDatum:
    """Kraft datum from exactly one of: --minimal with c and d, an explicit
    permutation with c, or a block list like "2/1,1/1"
    """
    given = [minimal, pi is not None, blocks is not None]
    if sum(given) != 1:
        raise InvalidArgumentError(
            "Give exactly one of --minimal, --pi or --blocks"
        )
    if blocks is not None:
        return sum_of_minimal(list(NewtonPolygon.parse_blocks(blocks).blocks))
    if c is None:
        raise InvalidArgumentError("--c is required with --minimal and --pi")
    if minimal:
        if d is None:
            raise InvalidArgumentError("--d is required with --minimal")
        return minimal_datum(c, d)
    return KraftDatum(r=len(pi), c=c, pi=tuple(pi))


def kraft_gamma(datum: KraftDatum) -> Dict[str, int]:
    """gamma_D(1) = |J_-^pi| and the orbit dimension r^2 - gamma_D(1)

    Args:
        datum (KraftDatum): Kraft normal form.

    Returns:
        {"gamma1": ..., "dim_orbit1": ...}
    """
    return {"gamma1": gamma1(datum), "dim_orbit1": dim_orbit1(datum)}


def kraft_summary(datum: KraftDatum) -> Dict[str, Any]:
    classification = classify_pairs(datum)
    return {
        **datum.to_json(),
        "d": datum.d,
        "period": datum.period,
        "a_number": a_number(datum),
        "pairs": {
            "plus": len(classification.plus),
            "zero": len(classification.zero),
            "minus": len(classification.minus),
        },
        **kraft_gamma(datum),
    }


def kraft_nu(datum: KraftDatum) -> List[Dict]:
    return nu_table(datum)


def traverso(blocks: str) -> Dict[str, int]:
    """Codimension, specializing height and level of a Newton polygon

    Args:
        blocks (str): comma-separated coprime blocks "c/d", e.g. "2/1,1/1".

    Returns:
        {"codim": ..., "s_D": ..., "level": ...}
    """
    polygon = NewtonPolygon.parse_blocks(blocks)
    if not polygon.blocks:
        raise InvalidArgumentError("No blocks given")
    return {
        "codim": traverso_codim(polygon),
        "s_D": specializing_height(polygon),
        "level": traverso_level(polygon.c, polygon.d),
    }


def make_recipe(
    base: str,
    c: Optional[int] = None,
    d: Optional[int] = None,
    conf: Optional[List[str]] = None,
) -> BaseRecipe:
    return build_recipe(base, str_conf=conf, c=c, d=d)


def load_matrix(
    path: str, ring: RingDescriptor, fs: Optional[AbstractFileSystem] = None
) -> MatrixW:
    """Read a matrix document ({"ring", "entries"} or a bare list of rows)"""
    fs = fs or LocalFileSystem()
    with fs.open(path, "r", encoding="utf8") as f:
        obj = json.load(f)
    echo(EMOJI_LOAD + f"Loaded matrix from {path}")
    return MatrixW.from_obj(obj, ring)


def resolve_seed(
    seed: str, ring: RingDescriptor, r: int, fs: Optional[AbstractFileSystem] = None
) -> MatrixW:
    if seed == SEED_IDENTITY:
        return MatrixW.identity(ring, r)
    return load_matrix(seed, ring, fs=fs)


def truncation(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    g: Optional[MatrixW] = None,
    dual: bool = False,
    power: Optional[int] = None,
    newton: bool = False,
) -> Dict[str, Any]:
    """Build the truncation of a base twisted by g

    Args:
        recipe (BaseRecipe): base recipe giving S.
        ring (RingDescriptor): coefficient ring W_m(F_q).
        g (MatrixW, optional): twist, identity by default.
        dual (bool): return the Cartier dual instead.
        power (int, optional): also emit the matrix of phi^power.
        newton (bool): also emit the Newton polygon read at this precision.
    """
    D: DieudonneTruncation = recipe.truncation(ring, g)
    if dual:
        D = cartier_dual(D)
    result = D.to_json()
    if power is not None:
        result["linearized"] = linearize(D, power).to_json()
    if newton:
        result["newton"] = np_from_matrix(D).to_json()
    return result


def orbit(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    seed: Optional[MatrixW] = None,
    symplectic: bool = False,
    budget: Optional[int] = None,
) -> OrbitReport:
    """Orbit of the seed under the action of H_m"""
    ctx = recipe.context(ring, symplectic=symplectic)
    seed = seed or MatrixW.identity(ring, ctx.r)
    echo(EMOJI_ORBIT + f"Exploring the orbit over {ring}")
    return orbit_bfs(ctx, seed, budget=budget or LOCAL_CONFIG.ORBIT_BUDGET)


def dimensions(
    recipe: BaseRecipe,
    p: int,
    m: int,
    degrees: Optional[Sequence[int]] = None,
    symplectic: bool = False,
    budget: Optional[int] = None,
) -> DimensionReport:
    return dimension_report(
        recipe, p, m, degrees=degrees, symplectic=symplectic, budget=budget
    )


def centralizing(
    recipe: BaseRecipe,
    p: int,
    max_m: int,
    degrees: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> CentralizingSequence:
    return centralizing_sequence(recipe, p, max_m, degrees=degrees, budget=budget)


def aut(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    g: Optional[MatrixW] = None,
    cross_check: bool = False,
    budget: Optional[int] = None,
) -> Dict[str, Any]:
    """Automorphism counts of a truncation.

    With `cross_check`, the stabilizer of g in H_m is enumerated as well and
    both counts are reported.
    """
    ctx = recipe.context(ring)
    g = g or MatrixW.identity(ring, ctx.r)
    D = ctx.truncation(g)
    result = {
        "ring": ring.dict(),
        "hom_log_cardinality": hom_module(D, D).log_cardinality,
        "aut_count": aut_count(D, cap=budget),
        "chi": chi_image_count(ctx, D, cap=budget),
    }
    if cross_check:
        result["stabilizer_count"] = len(
            stabilizer(ctx, g, mode="enumerate", budget=budget)
        )
    return result


def chi_finiteness(
    recipe: BaseRecipe,
    p: int,
    m: int,
    degrees: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> ChiFit:
    return chi_fit(recipe, p, m, degrees=degrees, cap=budget)


def level_exp(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    level: int,
    seeds: Optional[List[MatrixW]] = None,
    precision: Optional[int] = None,
    budget: Optional[int] = None,
) -> LevelReport:
    """Level experiment; without seeds all of GL_r(ring) is used"""
    if seeds is None:
        seeds = enumerate_gl(ring, recipe.datum().r)
    return level_experiment(
        recipe, ring, level, seeds, precision=precision, budget=budget
    )


def probe(
    recipe: BaseRecipe,
    g1: MatrixW,
    g2: MatrixW,
    budget: Optional[int] = None,
) -> Dict[str, Optional[int]]:
    return {"separating_level": separation_probe(recipe, g1, g2, budget=budget)}


def verify(only: Optional[Sequence[int]] = None) -> List[CheckResult]:
    return run_checks(only)


__all__ = [
    "resolve_datum",
    "kraft_gamma",
    "kraft_summary",
    "kraft_nu",
    "traverso",
    "make_recipe",
    "load_matrix",
    "resolve_seed",
    "truncation",
    "orbit",
    "dimensions",
    "centralizing",
    "aut",
    "chi_finiteness",
    "level_exp",
    "probe",
    "verify",
]
