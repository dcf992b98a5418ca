"""
Point-count experiments: dimension fits over growing residue fields,
the image of automorphisms in W_0, and the level-determination experiment
for Newton polygons.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from pydantic import BaseModel

from truncbt.config import LOCAL_CONFIG
from truncbt.core.base import BaseRecipe
from truncbt.core.dieudonne import DieudonneTruncation, automorphisms, normalizes_f1
from truncbt.core.errors import (
    InsufficientData,
    InvalidArgumentError,
    InvariantViolation,
    NonIntegralQuotient,
)
from truncbt.core.matrix import Matrix, MatrixW
from truncbt.core.newton import (
    CentralizingReport,
    NewtonPolygon,
    format_fraction,
    np_from_matrix,
    specializing_height,
    validate_centralizing_sequence,
)
from truncbt.core.orbit import (
    ActionContext,
    orbit_bfs,
    stabilizer,
    w0_order,
    xi_image_count,
)
from truncbt.core.witt import RingDescriptor

logger = logging.getLogger(__name__)

# largest denominator kept when a residual is reported as a fraction
RESIDUAL_DENOMINATOR = 10**6

# Fraction first: the int validator would truncate
Number = Union[Fraction, int]


class DimensionFit(BaseModel):
    estimate: int
    residual: Fraction
    reliable: bool
    slopes: List[float]
    points: List[Tuple[int, Number]]

    class Config:
        arbitrary_types_allowed = True

    def to_json(self) -> Dict:
        return {
            "estimate": self.estimate,
            "residual": format_fraction(self.residual),
            "reliable": self.reliable,
            "points": [[n, _dump_count(count)] for n, count in self.points],
        }


def _as_count(count: Number) -> Number:
    count = Fraction(count)
    return count.numerator if count.denominator == 1 else count


def _dump_count(count: Number):
    if isinstance(count, Fraction):
        return format_fraction(count)
    return count


def dim_fit(
    counts: Sequence[Tuple[int, Number]],
    p: int,
    threshold: Optional[float] = None,
) -> DimensionFit:
    """Fit count(n) ~ q^dim with q = p^n from consecutive log-ratios"""
    if threshold is None:
        threshold = LOCAL_CONFIG.FIT_RESIDUAL_THRESHOLD
    points = sorted((int(n), _as_count(count)) for n, count in counts)
    if len(points) < 2:
        raise InsufficientData(
            f"Need counts for at least two residue degrees, got {len(points)}"
        )
    if any(count <= 0 for _, count in points):
        raise InvalidArgumentError("Counts must be positive")
    slopes = []
    for (n0, c0), (n1, c1) in zip(points, points[1:]):
        if n1 == n0:
            raise InvalidArgumentError(f"Residue degree {n0} given twice")
        slopes.append((math.log(c1, p) - math.log(c0, p)) / (n1 - n0))
    estimate = round(sum(slopes) / len(slopes))
    residual = Fraction(max(abs(s - estimate) for s in slopes)).limit_denominator(
        RESIDUAL_DENOMINATOR
    )
    fit = DimensionFit(
        estimate=estimate,
        residual=residual,
        reliable=residual <= Fraction(threshold).limit_denominator(RESIDUAL_DENOMINATOR),
        slopes=slopes,
        points=points,
    )
    logger.debug("Dimension fit over %s: %d (residual %s)", points, estimate, residual)
    return fit


def _chi_residues(
    ctx: ActionContext, D: DieudonneTruncation, auts: Iterable[Matrix]
) -> Set[Tuple[Matrix, Matrix]]:
    alg = D.algebra
    c, p = D.c, D.ring.p
    seen = set()
    for x in auts:
        if not normalizes_f1(x, c, p):
            raise InvariantViolation(
                "automorphism does not preserve the residue of F^1"
            )
        residue = alg.residue(x)
        seen.add((alg.block(residue, (0, c), (0, c)), alg.block(residue, (c, ctx.r), (c, ctx.r))))
    return seen


def chi_image_count(
    ctx: ActionContext, D: DieudonneTruncation, cap: Optional[int] = None
) -> int:
    """Distinct residue diagonal blocks of the automorphisms of D"""
    return len(_chi_residues(ctx, D, automorphisms(D, cap=cap)))


def _exact_div(numerator: int, denominator: int, what: str) -> int:
    if denominator == 0 or numerator % denominator:
        raise NonIntegralQuotient(numerator, denominator, what)
    return numerator // denominator


class StabilizerSample(BaseModel):
    """Counts for one ring W_m(F_q)

    ``orbit`` comes from the orbit search, ``stabilizer`` is counted on its
    own: automorphisms of the truncation, or stabilizing triples for the
    symplectic action.
    """

    n: int
    q: int
    m: int
    group_order: int
    orbit: int
    stabilizer: int
    chi: int
    unipotent: int
    orbit_normalized: Fraction

    class Config:
        arbitrary_types_allowed = True

    @property
    def orbit_stabilizer(self) -> bool:
        return self.orbit * self.stabilizer == self.group_order

    def to_json(self) -> Dict:
        doc = self.dict()
        doc["orbit_normalized"] = format_fraction(self.orbit_normalized)
        doc["orbit_stabilizer"] = self.orbit_stabilizer
        return doc


def sample_stabilizer(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    symplectic: bool = False,
    seed: Optional[MatrixW] = None,
    budget: Optional[int] = None,
) -> StabilizerSample:
    ctx = recipe.context(ring, symplectic=symplectic)
    g0 = seed or MatrixW.identity(ring, ctx.r)
    report = orbit_bfs(ctx, g0, budget=budget)
    if symplectic:
        found = stabilizer(ctx, g0, mode="enumerate", budget=budget)
        count = len(found)
        chi = xi_image_count(ctx, found)
        twist = ring.q ** (ctx.d**2)
    else:
        D = ctx.truncation(g0)
        auts = automorphisms(D, cap=budget)
        count = len(auts)
        chi = len(_chi_residues(ctx, D, auts))
        twist = ring.q ** (ctx.c**2 + ctx.d**2)
    unipotent = _exact_div(count, chi, "stabilizer by its W_0 image")
    # |W_0| traded for the q-power of a group of the same dimension, with the
    # finite chi image of the automorphisms put back
    orbit_normalized = Fraction(report.orbit_size * chi * twist, w0_order(ctx))
    logger.debug(
        "%s over %s: orbit %d, stabilizer %d, chi %d",
        recipe.type,
        ring,
        report.orbit_size,
        count,
        chi,
    )
    return StabilizerSample(
        n=ring.n,
        q=ring.q,
        m=ring.m,
        group_order=report.group_order,
        orbit=report.orbit_size,
        stabilizer=count,
        chi=chi,
        unipotent=unipotent,
        orbit_normalized=orbit_normalized,
    )


class DimensionReport(BaseModel):
    base: Dict
    p: int
    m: int
    symplectic: bool
    samples: List[StabilizerSample]
    stabilizer_fit: DimensionFit
    orbit_fit: DimensionFit
    total: int
    stratum_dim: int

    @property
    def gamma(self) -> int:
        return self.stabilizer_fit.estimate

    @property
    def consistent(self) -> bool:
        if not all(s.orbit_stabilizer for s in self.samples):
            return False
        return self.stabilizer_fit.estimate + self.orbit_fit.estimate == self.total

    def to_json(self) -> Dict:
        return {
            "base": self.base,
            "p": self.p,
            "m": self.m,
            "symplectic": self.symplectic,
            "samples": [s.to_json() for s in self.samples],
            "gamma": self.gamma,
            "orbit_dim": self.orbit_fit.estimate,
            "total": self.total,
            "stratum_dim": self.stratum_dim,
            "consistent": self.consistent,
            "stabilizer_fit": self.stabilizer_fit.to_json(),
            "orbit_fit": self.orbit_fit.to_json(),
        }


def dimension_report(
    recipe: BaseRecipe,
    p: int,
    m: int,
    degrees: Optional[Sequence[int]] = None,
    symplectic: bool = False,
    budget: Optional[int] = None,
) -> DimensionReport:
    degrees = list(degrees or LOCAL_CONFIG.fit_degrees)
    samples = [
        sample_stabilizer(
            recipe, RingDescriptor(p=p, n=n, m=m), symplectic=symplectic, budget=budget
        )
        for n in degrees
    ]
    datum = recipe.datum()
    if symplectic:
        total = m * datum.d * (2 * datum.d + 1)
    else:
        total = m * datum.r**2
    stabilizer_fit = dim_fit([(s.n, s.unipotent) for s in samples], p)
    orbit_fit = dim_fit([(s.n, s.orbit_normalized) for s in samples], p)
    return DimensionReport(
        base=recipe.describe(),
        p=p,
        m=m,
        symplectic=symplectic,
        samples=samples,
        stabilizer_fit=stabilizer_fit,
        orbit_fit=orbit_fit,
        total=total,
        stratum_dim=datum.c * datum.d - stabilizer_fit.estimate,
    )


class ChiFit(BaseModel):
    counts: List[Tuple[int, int]]
    fit: DimensionFit

    @property
    def verdict(self) -> str:
        # bounded counts fit to 0 even when they oscillate
        if self.fit.estimate == 0:
            return "finite"
        return "inapplicable"

    def to_json(self) -> Dict:
        return {
            "counts": [list(c) for c in self.counts],
            "fit": self.fit.to_json(),
            "verdict": self.verdict,
            "reliable": self.fit.reliable,
        }


def chi_fit(
    recipe: BaseRecipe,
    p: int,
    m: int,
    degrees: Optional[Sequence[int]] = None,
    cap: Optional[int] = None,
) -> ChiFit:
    """Finiteness test for the W_0 image of the automorphism group"""
    counts = []
    for n in degrees or LOCAL_CONFIG.fit_degrees:
        ring = RingDescriptor(p=p, n=n, m=m)
        ctx = recipe.context(ring)
        counts.append((n, chi_image_count(ctx, ctx.truncation(MatrixW.identity(ring, ctx.r)), cap=cap)))
    return ChiFit(counts=counts, fit=dim_fit(counts, p))


class CentralizingSequence(BaseModel):
    gammas: List[Tuple[int, int]]
    report: CentralizingReport

    def to_json(self) -> Dict:
        return {
            "gammas": [list(g) for g in self.gammas],
            "s_D": self.report.s_D,
            "passed": self.report.passed,
            "violations": self.report.violations,
        }


def centralizing_sequence(
    recipe: BaseRecipe,
    p: int,
    max_m: int,
    degrees: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> CentralizingSequence:
    gammas = [
        (m, dimension_report(recipe, p, m, degrees=degrees, budget=budget).gamma)
        for m in range(1, max_m + 1)
    ]
    s_D = specializing_height(recipe.newton_polygon())
    return CentralizingSequence(
        gammas=gammas, report=validate_centralizing_sequence(gammas, s_D)
    )


def _reduce_seed(g: MatrixW, m: int) -> MatrixW:
    return g if g.ring.m == m else g.change_precision(m)


def separation_probe(
    recipe: BaseRecipe,
    g1: MatrixW,
    g2: MatrixW,
    budget: Optional[int] = None,
) -> Optional[int]:
    """Smallest level where the two seeds lie in different orbits"""
    ring = g1.ring
    if g2.ring != ring:
        raise InvalidArgumentError("Seeds must live over the same ring")
    for level in range(1, ring.m + 1):
        ctx = recipe.context(ring.reduce(level))
        first = orbit_bfs(ctx, _reduce_seed(g1, level), budget=budget)
        second = orbit_bfs(ctx, _reduce_seed(g2, level), budget=budget)
        if first.canonical != second.canonical:
            return level
    return None


class LevelClass(BaseModel):
    canonical: Optional[MatrixW]
    members: int
    polygons: List[NewtonPolygon]

    @property
    def violation(self) -> bool:
        return len(self.polygons) > 1

    def to_json(self) -> Dict:
        return {
            "canonical": self.canonical.to_json() if self.canonical else None,
            "members": self.members,
            "polygons": [np.to_json() for np in self.polygons],
            "violation": self.violation,
        }


class LevelReport(BaseModel):
    base: Dict
    level: int
    precision: int
    seeds: int
    classes: List[LevelClass]
    violations_by_level: Dict[int, int]

    @property
    def violations(self) -> int:
        return sum(1 for cls in self.classes if cls.violation)

    @property
    def separating_level(self) -> Optional[int]:
        clean = [lvl for lvl, count in self.violations_by_level.items() if count == 0]
        return min(clean) if clean else None

    def to_json(self) -> Dict:
        return {
            "base": self.base,
            "level": self.level,
            "precision": self.precision,
            "seeds": self.seeds,
            "classes": [cls.to_json() for cls in self.classes],
            "violations": self.violations,
            "separating_level": self.separating_level,
            "violations_by_level": {
                str(k): v for k, v in self.violations_by_level.items()
            },
        }


def _ring_at(ring: RingDescriptor, m: int) -> RingDescriptor:
    if m <= ring.m:
        return ring.reduce(m)
    return RingDescriptor(p=ring.p, n=ring.n, m=m, modulus=ring.modulus)


def lift_matrix(g: MatrixW, m: int) -> MatrixW:
    """Naive lift: the same integer coefficients read in W_m; reduces when m is smaller"""
    if m <= g.ring.m:
        return _reduce_seed(g, m)
    return MatrixW(ring=_ring_at(g.ring, m), entries=g.entries)


def _partition(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    seeds: Sequence[MatrixW],
    budget: Optional[int],
) -> Tuple[List[int], Dict[int, MatrixW]]:
    """Orbit class id of every seed and the canonical matrix of each class"""
    ctx = recipe.context(ring)
    owner: Dict[Matrix, int] = {}
    canonical: Dict[int, MatrixW] = {}
    labels = []
    for g in seeds:
        key = g.entries
        if key not in owner:
            report = orbit_bfs(ctx, MatrixW.wrap(ring, key), budget=budget, keep_elements=True)
            label = len(canonical)
            canonical[label] = report.canonical
            for element in report.elements or ():
                owner[element] = label
        labels.append(owner[key])
    return labels, canonical


def level_experiment(
    recipe: BaseRecipe,
    ring: RingDescriptor,
    level: int,
    g_list: Sequence[MatrixW],
    precision: Optional[int] = None,
    budget: Optional[int] = None,
) -> LevelReport:
    """Group g_list by orbits at truncation `level` and compare Newton polygons.

    Level 0 puts every seed into one class. Polygons are read at
    `precision` from naive lifts of the seeds.
    """
    if level < 0:
        raise InvalidArgumentError(f"Level must be non-negative, got {level}")
    datum = recipe.datum()
    precision = precision or max(level + 1, datum.r + 1)
    if precision <= level:
        raise InvalidArgumentError(
            f"Polygons need precision above the level, got {precision} <= {level}"
        )
    polygons = []
    for g in g_list:
        lifted = lift_matrix(g, precision)
        polygons.append(np_from_matrix(recipe.truncation(lifted.ring, lifted)))

    violations_by_level: Dict[int, int] = {}
    classes: List[LevelClass] = []
    for current in range(0, level + 1):
        if current == 0:
            labels, canonical = [0] * len(g_list), {}
        else:
            labels, canonical = _partition(
                recipe,
                _ring_at(ring, current),
                [lift_matrix(g, current) for g in g_list],
                budget,
            )
        grouped: Dict[int, List[NewtonPolygon]] = {}
        for label, polygon in zip(labels, polygons):
            grouped.setdefault(label, []).append(polygon)
        classes = [
            LevelClass(
                canonical=canonical.get(label),
                members=len(members),
                polygons=sorted(set(members), key=lambda np: np.blocks),
            )
            for label, members in sorted(grouped.items())
        ]
        violations_by_level[current] = sum(1 for cls in classes if cls.violation)
        logger.debug(
            "Level %d: %d classes, %d violations",
            current,
            len(classes),
            violations_by_level[current],
        )
    return LevelReport(
        base=recipe.describe(),
        level=level,
        precision=precision,
        seeds=len(g_list),
        classes=classes,
        violations_by_level=violations_by_level,
    )
