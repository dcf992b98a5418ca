"""
Kraft normal forms of BT_1 groups.

A datum (r, c, pi) describes the level-one truncation with
phi(e_i) = e_pi(i) for i <= c (zero otherwise) and
theta(e_pi(i)) = e_i for i > c (zero otherwise). Indices are 1-based.
"""
import logging
from math import gcd
from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, root_validator
from sympy.combinatorics import Permutation

from truncbt.core.dieudonne import DieudonneTruncation, make_truncation
from truncbt.core.errors import (
    InvalidArgumentError,
    InvariantViolation,
    NotCoprime,
    PairNotInJMinus,
)
from truncbt.core.matrix import MatrixW, algebra
from truncbt.core.witt import RingDescriptor

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

REGION_PLUS = "+"
REGION_ZERO = "0"
REGION_MINUS = "-"


class KraftDatum(BaseModel):
    r: int
    c: int
    pi: Tuple[int, ...]

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def check_permutation(cls, values):  # pylint: disable=no-self-argument
        r, c, pi = values["r"], values["c"], values["pi"]
        if r < 1:
            raise ValueError("r must be positive")
        if not 0 <= c <= r:
            raise ValueError(f"c={c} must lie in [0, {r}]")
        if sorted(pi) != list(range(1, r + 1)):
            raise ValueError(f"pi={list(pi)} is not a permutation of 1..{r}")
        return values

    @property
    def d(self) -> int:
        return self.r - self.c

    @property
    def permutation(self) -> Permutation:
        return Permutation([i - 1 for i in self.pi])

    @property
    def period(self) -> int:
        """lcm of the cycle lengths"""
        return int(self.permutation.order())

    def region(self, pair: Pair) -> str:
        i, j = pair
        c = self.c
        if j <= c < i:
            return REGION_PLUS
        if i <= c < j:
            return REGION_MINUS
        return REGION_ZERO

    def to_json(self) -> Dict:
        return {"r": self.r, "c": self.c, "pi": list(self.pi)}


class PairClassification(BaseModel):
    plus: List[Pair]
    zero: List[Pair]
    minus: List[Pair]


def classify_pairs(datum: KraftDatum) -> PairClassification:
    pairs: Dict[str, List[Pair]] = {
        REGION_PLUS: [],
        REGION_ZERO: [],
        REGION_MINUS: [],
    }
    for i in range(1, datum.r + 1):
        for j in range(1, datum.r + 1):
            pairs[datum.region((i, j))].append((i, j))
    return PairClassification(
        plus=pairs[REGION_PLUS],
        zero=pairs[REGION_ZERO],
        minus=pairs[REGION_MINUS],
    )


def _landing(datum: KraftDatum, pair: Pair) -> Tuple[int, str]:
    if datum.region(pair) != REGION_MINUS:
        raise PairNotInJMinus(pair, datum.c)
    i, j = pair
    for nu in range(1, datum.period + 1):
        i, j = datum.pi[i - 1], datum.pi[j - 1]
        region = datum.region((i, j))
        if region != REGION_ZERO:
            return nu, region
    raise InvariantViolation(  # pragma: no cover
        f"Pair {pair} never left J_0 within {datum.period} steps"
    )


def nu_pi(datum: KraftDatum, pair: Pair) -> int:
    """Smallest nu >= 1 with pi^nu applied to the pair outside J_0"""
    return _landing(datum, pair)[0]


def nu_table(datum: KraftDatum) -> List[Dict]:
    rows = []
    for pair in classify_pairs(datum).minus:
        nu, region = _landing(datum, pair)
        rows.append({"pair": list(pair), "nu": nu, "lands_in": region})
    return rows


def j_minus_pi(datum: KraftDatum) -> Set[Pair]:
    return {
        pair
        for pair in classify_pairs(datum).minus
        if _landing(datum, pair)[1] == REGION_PLUS
    }


def gamma1(datum: KraftDatum) -> int:
    return len(j_minus_pi(datum))


def dim_orbit1(datum: KraftDatum) -> int:
    return datum.r**2 - gamma1(datum)


def minimal_datum(c: int, d: int) -> KraftDatum:
    if c < 0 or d < 0 or c + d < 1 or gcd(c, d) != 1:
        raise NotCoprime(c, d)
    r = c + d
    return KraftDatum(
        r=r, c=c, pi=tuple(((i + d - 1) % r) + 1 for i in range(1, r + 1))
    )


def identity_datum(c: int, d: int) -> KraftDatum:
    r = c + d
    return KraftDatum(r=r, c=c, pi=tuple(range(1, r + 1)))


def direct_sum(a: KraftDatum, b: KraftDatum) -> KraftDatum:
    """Relabel as: F^0 of a, F^0 of b, F^1 of a, F^1 of b"""
    c = a.c + b.c
    r = a.r + b.r
    new_a = {
        i: (i if i <= a.c else c + (i - a.c)) for i in range(1, a.r + 1)
    }
    new_b = {
        i: (a.c + i if i <= b.c else c + a.d + (i - b.c))
        for i in range(1, b.r + 1)
    }
    pi = [0] * r
    for i in range(1, a.r + 1):
        pi[new_a[i] - 1] = new_a[a.pi[i - 1]]
    for i in range(1, b.r + 1):
        pi[new_b[i] - 1] = new_b[b.pi[i - 1]]
    return KraftDatum(r=r, c=c, pi=tuple(pi))


def sum_of_minimal(blocks: List[Pair]) -> KraftDatum:
    """Direct sum of minimal data in the given block order"""
    if not blocks:
        raise NotCoprime(0, 0)
    datum = minimal_datum(*blocks[0])
    for block in blocks[1:]:
        datum = direct_sum(datum, minimal_datum(*block))
    return datum


def a_number(datum: KraftDatum) -> int:
    return sum(1 for i in range(1, datum.c + 1) if datum.pi[i - 1] > datum.c)


def relabel(datum: KraftDatum, images: Tuple[int, ...]) -> KraftDatum:
    """Conjugate pi by a relabeling (1-based images); the cut must be kept"""
    if any((i <= datum.c) != (images[i - 1] <= datum.c) for i in range(1, datum.r + 1)):
        raise InvalidArgumentError(
            "relabeling must preserve {1..c} and {c+1..r}"
        )
    pi = [0] * datum.r
    for i in range(1, datum.r + 1):
        pi[images[i - 1] - 1] = images[datum.pi[i - 1] - 1]
    return KraftDatum(r=datum.r, c=datum.c, pi=tuple(pi))


def permutation_matrix(
    datum: KraftDatum, ring: RingDescriptor, symplectic: bool = False
) -> MatrixW:
    """P_pi with P[pi(i)][i] = 1. In symplectic mode the columns i > c with
    pi(i) <= c are negated, which makes P_pi preserve the standard form"""
    alg = algebra(ring)
    entries = [list(row) for row in alg.permutation([k - 1 for k in datum.pi])]
    if symplectic:
        minus_one = ring.engine.from_int(-1)
        for i in range(datum.c + 1, datum.r + 1):
            if datum.pi[i - 1] <= datum.c:
                entries[datum.pi[i - 1] - 1][i - 1] = minus_one
    return MatrixW.wrap(ring, tuple(tuple(row) for row in entries))


def to_truncation(
    datum: KraftDatum, ring: RingDescriptor, g: Optional[MatrixW] = None
) -> DieudonneTruncation:
    return make_truncation(
        datum.c, datum.d, ring, permutation_matrix(datum, ring), g
    )
