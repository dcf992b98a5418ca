"""
Desk-scale verification suite. Each check is a registered class with a
numeric id; `run_checks` runs them in id order and times each one.
"""
import itertools
import logging
import random
import time
from abc import ABC, abstractmethod
from math import gcd
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple, Type

from pydantic import BaseModel

from truncbt.config import LOCAL_CONFIG
from truncbt.core.base import MinimalBase, OrdinaryBase
from truncbt.core.dieudonne import automorphisms
from truncbt.core.errors import InvalidArgumentError, TruncBTError
from truncbt.core.experiments import (
    dimension_report,
    level_experiment,
)
from truncbt.core.kraft import gamma1, minimal_datum, sum_of_minimal
from truncbt.core.matrix import MatrixW
from truncbt.core.newton import (
    NewtonPolygon,
    specializing_height,
    traverso_codim,
    validate_centralizing_sequence,
)
from truncbt.core.orbit import (
    elementary_values,
    enumerate_gl,
    generator_counts,
    make_context,
    orbit_bfs,
    stabilizer,
    stabilizer_to_aut,
)
from truncbt.core.witt import RingDescriptor

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> Dict:
        return {
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


class VerifyCheck(ABC):
    registry: ClassVar[Dict[int, Type["VerifyCheck"]]] = {}
    id: ClassVar[int]
    name: ClassVar[str]

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        VerifyCheck.registry[cls.id] = cls

    @abstractmethod
    def run(self) -> Tuple[bool, str]:
        """(passed, detail)"""
        raise NotImplementedError


class MinimalGammaCheck(VerifyCheck):
    id = 1
    name = "gamma1 of minimal data is cd"
    grid = [(1, 1), (1, 2), (2, 3), (3, 5), (2, 7), (4, 9)]

    def run(self):
        bad = [
            (c, d, gamma1(minimal_datum(c, d)))
            for c, d in self.grid
            if gamma1(minimal_datum(c, d)) != c * d
        ]
        return not bad, f"{len(self.grid)} pairs, mismatches: {bad}"


class TwoBlockCheck(VerifyCheck):
    id = 2
    name = "gamma1 of two-block sums"
    # (block of smaller slope, block of larger slope)
    pairs = [
        ((1, 0), (0, 1)),
        ((2, 1), (1, 1)),
        ((1, 0), (1, 1)),
        ((1, 1), (0, 1)),
        ((2, 1), (1, 2)),
        ((3, 1), (1, 1)),
        ((1, 0), (1, 2)),
        ((2, 1), (0, 1)),
        ((3, 2), (1, 1)),
        ((1, 1), (1, 2)),
        ((3, 1), (2, 3)),
    ]

    def run(self):
        bad = []
        for (c1, d1), (c2, d2) in self.pairs:
            expected = c1 * d1 + c2 * d2 + 2 * c2 * d1
            got = gamma1(sum_of_minimal([(c1, d1), (c2, d2)]))
            height = specializing_height(NewtonPolygon(blocks=[(c1, d1), (c2, d2)]))
            if got != expected or height != expected:
                bad.append(((c1, d1), (c2, d2), got, height, expected))
        return not bad, f"{len(self.pairs)} pairs, mismatches: {bad}"


def random_polygon(rng: random.Random, max_blocks: int = 4, max_rank: int = 7) -> NewtonPolygon:
    size = rng.randint(1, max_blocks)
    blocks: List[Tuple[int, int]] = []
    while len(blocks) < size:
        c, d = rng.randint(0, max_rank), rng.randint(0, max_rank)
        if gcd(c, d) == 1:
            blocks.append((c, d))
    return NewtonPolygon(blocks=blocks)


class TraversoCheck(VerifyCheck):
    id = 3
    name = "Traverso forms agree"

    def run(self):
        rng = random.Random(LOCAL_CONFIG.SEED)
        size = LOCAL_CONFIG.CORPUS_SIZE
        for _ in range(size):
            polygon = random_polygon(rng)
            traverso_codim(polygon)
            specializing_height(polygon)
        bad = [
            (c, d)
            for c, d in MinimalGammaCheck.grid
            if specializing_height(NewtonPolygon(blocks=[(c, d)]))
            != gamma1(minimal_datum(c, d))
        ]
        return not bad, f"{size} random polygons, single-block mismatches: {bad}"


ORBIT_GRID = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1)]


def _grid_contexts():
    for p, n, m in ORBIT_GRID:
        ring = RingDescriptor(p=p, n=n, m=m)
        for recipe in (OrdinaryBase(c=1, d=1), MinimalBase(c=1, d=1)):
            yield recipe, ring, recipe.context(ring)


class OrbitStabilizerCheck(VerifyCheck):
    id = 4
    name = "orbit-stabilizer exactness"

    def run(self):
        bad = []
        for recipe, ring, ctx in _grid_contexts():
            g0 = MatrixW.identity(ring, ctx.r)
            report = orbit_bfs(ctx, g0)
            enumerated = len(stabilizer(ctx, g0, mode="enumerate"))
            if (
                report.orbit_size * report.stabilizer_count != report.group_order
                or enumerated != report.stabilizer_count
            ):
                bad.append((recipe.type, str(ring), report.orbit_size, enumerated))
        return not bad, f"{2 * len(ORBIT_GRID)} instances, failures: {bad}"


class AutomorphismImageCheck(VerifyCheck):
    id = 5
    name = "stabilizer maps onto automorphisms"

    def run(self):
        bad = []
        for recipe, ring, ctx in _grid_contexts():
            g0 = MatrixW.identity(ring, ctx.r)
            images = {
                stabilizer_to_aut(ctx, h, g0).entries
                for h in stabilizer(ctx, g0, mode="enumerate")
            }
            auts = automorphisms(ctx.truncation(g0))
            count = stabilizer(ctx, g0, mode="count")
            if images != auts or count != len(auts):
                bad.append((recipe.type, str(ring), len(images), len(auts)))
        return not bad, f"{2 * len(ORBIT_GRID)} instances, failures: {bad}"


class DimensionFitCheck(VerifyCheck):
    id = 6
    name = "dimension fits at m = 1"
    expected = {"minimal": (1, 3), "ordinary": (0, 4)}

    def run(self):
        bad, details = [], []
        for recipe in (MinimalBase(c=1, d=1), OrdinaryBase(c=1, d=1)):
            report = dimension_report(recipe, 2, 1, degrees=[1, 2, 3])
            got = (report.gamma, report.orbit_fit.estimate)
            details.append(f"{recipe.type}: {got}")
            if (
                got != self.expected[recipe.type]
                or not report.stabilizer_fit.reliable
                or not report.orbit_fit.reliable
            ):
                bad.append(recipe.type)
        return not bad, "; ".join(details)


class LevelCheck(VerifyCheck):
    id = 7
    name = "Newton polygon is constant on level-1 classes"

    def run(self):
        details, passed = [], True
        recipe = OrdinaryBase(c=1, d=1)
        for p in (2, 3):
            ring = RingDescriptor(p=p)
            seeds = enumerate_gl(ring, 2)
            report = level_experiment(recipe, ring, 1, seeds)
            polygons = {np for cls in report.classes for np in cls.polygons}
            separated = len(polygons) == 2 and report.violations == 0
            passed = passed and separated
            details.append(
                f"q={p}: {len(report.classes)} classes, {report.violations} violations"
            )
        return passed, "; ".join(details)


class SymplecticCheck(VerifyCheck):
    id = 8
    name = "symplectic restriction"

    def run(self):
        bad = []
        recipe = MinimalBase(c=1, d=1)
        for p in (2, 3):
            ring = RingDescriptor(p=p)
            ctx = recipe.context(ring, symplectic=True)
            report = orbit_bfs(ctx, MatrixW.identity(ring, 2))
            enumerated = len(stabilizer(ctx, MatrixW.identity(ring, 2), mode="enumerate"))
            if report.orbit_size * enumerated != report.group_order:
                bad.append(f"orbit-stabilizer at p={p}")
        fit = dimension_report(recipe, 2, 1, degrees=[1, 2, 3], symplectic=True)
        if fit.gamma != 1:
            bad.append(f"gamma fit {fit.gamma}")
        for d in (1, 2, 3):
            ring = RingDescriptor(p=2)
            ctx = make_context(d, d, ring, symplectic=True)
            values = len(elementary_values(ctx))
            counts = generator_counts(ctx)
            e_plus = ctx.symplectic.e_plus
            if e_plus != d * (d + 1) // 2 or counts["plus"] != e_plus * values or counts["minus"] != ctx.symplectic.e_minus * values:
                bad.append(f"e_+ at d={d}")
        return not bad, f"failures: {bad}"


class WittCheck(VerifyCheck):
    id = 9
    name = "Witt ring substrate"

    def run(self):
        bad = []
        for n, m in itertools.product((1, 2), (1, 2)):
            ring = RingDescriptor(p=2, n=n, m=m)
            engine = ring.engine
            elements = list(engine.enumerate())
            for a, b, c in itertools.product(elements, repeat=3):
                if engine.mul(engine.mul(a, b), c) != engine.mul(a, engine.mul(b, c)):
                    bad.append(f"associativity in {ring}")
                    break
                if engine.mul(a, engine.add(b, c)) != engine.add(
                    engine.mul(a, b), engine.mul(a, c)
                ):
                    bad.append(f"distributivity in {ring}")
                    break
            for a, b in itertools.product(elements, repeat=2):
                if engine.mul(a, b) != engine.mul(b, a) or engine.add(a, b) != engine.add(
                    b, a
                ):
                    bad.append(f"commutativity in {ring}")
                    break
                if engine.sigma(engine.mul(a, b)) != engine.mul(
                    engine.sigma(a), engine.sigma(b)
                ) or engine.sigma(engine.add(a, b)) != engine.add(
                    engine.sigma(a), engine.sigma(b)
                ):
                    bad.append(f"sigma homomorphism in {ring}")
                    break
            for a in elements:
                if engine.add(a, engine.zero) != a or engine.mul(a, engine.one) != a:
                    bad.append(f"identities in {ring}")
                    break
                if engine.sigma_power(a, n) != a:
                    bad.append(f"sigma^n in {ring}")
                    break
                if engine.residue(engine.sigma(a)) != engine.residue(engine.pow(a, 2)):
                    bad.append(f"sigma mod p in {ring}")
                    break
            residues = list(ring.residue_field().engine.enumerate())
            for x, y in itertools.product(residues, repeat=2):
                field = ring.residue_field().engine
                if engine.teichmuller(field.mul(x, y)) != engine.mul(
                    engine.teichmuller(x), engine.teichmuller(y)
                ):
                    bad.append(f"Teichmuller multiplicativity in {ring}")
                    break
        return not bad, f"p=2, n, m <= 2; failures: {bad}"


class CentralizingCheck(VerifyCheck):
    id = 10
    name = "centralizing sequence bounds"

    def run(self):
        details, passed = [], True
        for recipe in (MinimalBase(c=1, d=1), OrdinaryBase(c=1, d=1)):
            gammas = [
                (m, dimension_report(recipe, 2, m, degrees=[1, 2]).gamma)
                for m in (1, 2)
            ]
            report = validate_centralizing_sequence(
                gammas, specializing_height(recipe.newton_polygon())
            )
            passed = passed and report.passed
            details.append(f"{recipe.type}: {gammas} <= {report.s_D}")
        return passed, "; ".join(details)


def run_checks(only: Optional[Sequence[int]] = None) -> List[CheckResult]:
    ids = sorted(VerifyCheck.registry)
    if only:
        unknown = set(only) - set(ids)
        if unknown:
            raise InvalidArgumentError(f"Unknown check ids: {sorted(unknown)}")
        ids = [i for i in ids if i in set(only)]
    results = []
    for check_id in ids:
        check = VerifyCheck.registry[check_id]()
        start = time.perf_counter()
        try:
            passed, detail = check.run()
        except TruncBTError as e:
            passed, detail = False, f"{type(e).__name__}: {e.msg}"
        seconds = time.perf_counter() - start
        logger.debug("Check %d finished in %.2fs: %s", check_id, seconds, passed)
        results.append(
            CheckResult(
                id=check_id,
                name=check.name,
                passed=passed,
                detail=detail,
                seconds=seconds,
            )
        )
    return results
