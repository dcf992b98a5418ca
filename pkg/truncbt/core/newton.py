"""
Newton polygons, Traverso's formula for the specializing height, and
slopes read off a truncation at finite precision.
"""
import itertools
import logging
from fractions import Fraction
from math import ceil, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, validator
from sympy.combinatorics import Permutation

from truncbt.constants import INFINITY
from truncbt.core.dieudonne import DieudonneTruncation, linearize
from truncbt.core.errors import (
    InsufficientPrecision,
    InvalidArgumentError,
    InvariantViolation,
)
from truncbt.core.witt import Coeffs, WittRing

logger = logging.getLogger(__name__)

Block = Tuple[int, int]
Point = Tuple[int, int]


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class NewtonPolygon(BaseModel):
    """Multiset of coprime blocks (c_s, d_s) of slope d_s / (c_s + d_s)"""

    blocks: Tuple[Block, ...]

    class Config:
        frozen = True

    @validator("blocks")
    def canonical_blocks(cls, value):  # pylint: disable=no-self-argument
        for c, d in value:
            if c < 0 or d < 0 or c + d == 0:
                raise ValueError(f"block ({c}, {d}) must have c, d >= 0 and c + d > 0")
            if gcd(c, d) != 1:
                raise ValueError(f"block ({c}, {d}) is not coprime")
        return tuple(sorted(value, key=lambda b: (Fraction(b[1], b[0] + b[1]), b[0])))

    @classmethod
    def parse_blocks(cls, text: str) -> "NewtonPolygon":
        """'2/1,1/1' -> blocks (2, 1) and (1, 1)"""
        blocks = []
        for item in text.split(","):
            if not item.strip():
                continue
            try:
                c, d = item.split("/")
                blocks.append((int(c), int(d)))
            except ValueError as e:
                raise InvalidArgumentError(
                    f"Block '{item}' should look like c/d"
                ) from e
        return cls(blocks=blocks)

    @property
    def slopes(self) -> List[Fraction]:
        return [Fraction(d, c + d) for c, d in self.blocks]

    @property
    def c(self) -> int:
        return sum(b[0] for b in self.blocks)

    @property
    def d(self) -> int:
        return sum(b[1] for b in self.blocks)

    @property
    def r(self) -> int:
        return self.c + self.d

    @property
    def v(self) -> int:
        return len(self.blocks)

    def to_json(self) -> Dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "slopes": [format_fraction(s) for s in self.slopes],
        }


def traverso_codim(np: NewtonPolygon) -> int:
    """1/2 sum_{s,t} r_s r_t |alpha_s - alpha_t|, also as 1/2 sum |c_s d_t - c_t d_s|"""
    slope_form = Fraction(0)
    cross_form = Fraction(0)
    for (cs, ds), (ct, dt) in itertools.product(np.blocks, repeat=2):
        rs, rt = cs + ds, ct + dt
        slope_form += rs * rt * abs(Fraction(ds, rs) - Fraction(dt, rt))
        cross_form += abs(cs * dt - ct * ds)
    slope_form /= 2
    cross_form /= 2
    if slope_form != cross_form or slope_form.denominator != 1:
        raise InvariantViolation(
            f"Traverso forms disagree: {slope_form} != {cross_form}"
        )
    return int(slope_form)


def specializing_height(np: NewtonPolygon) -> int:
    value = np.c * np.d - traverso_codim(np)
    alternate = sum(c * d for c, d in np.blocks)
    for (cs, ds), (ct, dt) in itertools.combinations(np.blocks, 2):
        alternate += 2 * min(cs * dt, ct * ds)
    if value != alternate:
        raise InvariantViolation(
            f"Specializing height forms disagree: {value} != {alternate}"
        )
    return value


class CentralizingReport(BaseModel):
    passed: bool
    s_D: int
    sequence: List[Tuple[int, int]]
    violations: List[str]


def validate_centralizing_sequence(
    seq: Sequence[Tuple[int, int]], s_D: int
) -> CentralizingReport:
    violations = []
    ordered = sorted(seq)
    previous: Optional[Tuple[int, int]] = None
    for m, gamma in ordered:
        if gamma < 0:
            violations.append(f"gamma({m}) = {gamma} is negative")
        if gamma > s_D:
            violations.append(f"gamma({m}) = {gamma} exceeds s_D = {s_D}")
        if previous is not None and gamma < previous[1]:
            violations.append(
                f"gamma({m}) = {gamma} < gamma({previous[0]}) = {previous[1]}"
            )
        previous = (m, gamma)
    return CentralizingReport(
        passed=not violations,
        s_D=s_D,
        sequence=list(ordered),
        violations=violations,
    )


def traverso_level(c: int, d: int) -> int:
    """ceil(cd / (c + d)); zero when cd = 0"""
    if c < 0 or d < 0 or c + d < 1:
        raise InvalidArgumentError(f"Need c, d >= 0 and c + d >= 1, got ({c}, {d})")
    return ceil(Fraction(c * d, c + d))


def experiment_level(c: int, d: int) -> int:
    return max(1, traverso_level(c, d))


def _poly_mul(ring: WittRing, a: List[Coeffs], b: List[Coeffs]) -> List[Coeffs]:
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if any(x):
            for j, y in enumerate(b):
                out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def characteristic_polynomial(ring: WittRing, matrix) -> List[Coeffs]:
    """det(xI - B) by Leibniz expansion, lowest degree first"""
    r = len(matrix)
    # entries of xI - B as polynomials [constant, linear]
    entry = [
        [
            [ring.neg(matrix[i][j]), ring.one if i == j else ring.zero]
            for j in range(r)
        ]
        for i in range(r)
    ]
    total = [ring.zero] * (r + 1)
    for perm in itertools.permutations(range(r)):
        term = [ring.one]
        for i, j in enumerate(perm):
            term = _poly_mul(ring, term, entry[i][j])
        if Permutation(list(perm)).signature() < 0:
            term = [ring.neg(t) for t in term]
        total = [ring.add(x, y) for x, y in zip(total, term)]
    return total


def lower_hull(points: Sequence[Point]) -> List[Point]:
    """Vertices of the lower convex hull of points sorted by abscissa"""
    hull: List[Point] = []
    for point in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle vertex unless it lies strictly below the chord
            if (y2 - y1) * (point[0] - x1) >= (point[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def blocks_from_hull(
    hull: Sequence[Point], n: int, d_expected: Optional[int] = None
) -> NewtonPolygon:
    multiplicity: Dict[Fraction, int] = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        alpha = Fraction(y1 - y2, x2 - x1) / n
        multiplicity[alpha] = multiplicity.get(alpha, 0) + (x2 - x1)
    blocks: List[Block] = []
    for alpha, k in multiplicity.items():
        r_s = alpha.denominator
        if k % r_s:
            raise InvariantViolation(
                f"slope {alpha} has multiplicity {k} not divisible by {r_s}"
            )
        blocks.extend([(r_s - alpha.numerator, alpha.numerator)] * (k // r_s))
    np = NewtonPolygon(blocks=blocks)
    if d_expected is not None and np.d != d_expected:
        raise InvariantViolation(
            f"Slopes give dimension {np.d}, truncation has d={d_expected}"
        )
    return np


def np_from_matrix(D: DieudonneTruncation) -> NewtonPolygon:
    ring = D.ring.engine
    m, n = D.ring.m, D.ring.n
    B = linearize(D, n).entries
    coefficients = characteristic_polynomial(ring, B)
    valuations = [ring.valuation(c) for c in coefficients]
    uncertain = [i for i, v in enumerate(valuations) if v == INFINITY]
    censored = lower_hull(
        [(i, m if v == INFINITY else int(v)) for i, v in enumerate(valuations)]
    )
    dropped = lower_hull(
        [(i, int(v)) for i, v in enumerate(valuations) if v != INFINITY]
    )
    if censored != dropped:
        logger.debug(
            "Hull not certain at m=%d: %s vs %s", m, censored, dropped
        )
        raise InsufficientPrecision(m, uncertain)
    return blocks_from_hull(censored, n, d_expected=D.d)


def np_from_datum(datum) -> NewtonPolygon:
    """Polygon of the truncation S = P_pi, g = I: each cycle of pi with l
    indices, k of them above c, contributes slope k / l"""
    blocks: List[Block] = []
    for cycle in datum.permutation.full_cyclic_form:
        length = len(cycle)
        k = sum(1 for i in cycle if i >= datum.c)
        g = gcd(k, length)
        blocks.extend([((length - k) // g, k // g)] * g)
    return NewtonPolygon(blocks=blocks)
