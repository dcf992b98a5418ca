"""
Linear systems over Z/p^m.

The solver is a Smith-style elimination over the chain ring Z/p^m: pivots
are chosen by minimal p-adic valuation, rows are cleared freely and column
operations are recorded so the kernel comes out as an explicit direct sum
of cyclic modules.
"""
import itertools
import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from truncbt.config import LOCAL_CONFIG
from truncbt.core.errors import EnumerationTooLarge, InvalidArgumentError
from truncbt.core.matrix import Matrix, MatrixAlgebra

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _vp(value: int, p: int) -> int:
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k


class SolutionModule(BaseModel):
    """Kernel of a linear system as sum of cyclic pieces <g_i> of order p^{e_i}.

    Every solution is uniquely sum(t_i * g_i) with 0 <= t_i < p^{e_i}.
    """

    p: int
    m: int
    unknowns: int
    generators: List[Vector]
    exponents: List[int]

    @property
    def log_cardinality(self) -> int:
        return sum(self.exponents)

    @property
    def cardinality(self) -> int:
        return self.p**self.log_cardinality

    def iterate(self, cap: Optional[int] = None) -> Iterator[Vector]:
        cap = cap or LOCAL_CONFIG.ENUMERATION_BUDGET
        if self.cardinality > cap:
            raise EnumerationTooLarge(
                "solution module", self.cardinality, cap
            )
        mod = self.p**self.m
        ranges = [range(self.p**e) for e in self.exponents]
        zero = (0,) * self.unknowns
        for coeffs in itertools.product(*ranges):
            vector = list(zero)
            for t, gen in zip(coeffs, self.generators):
                if t:
                    for k, g in enumerate(gen):
                        if g:
                            vector[k] += t * g
            yield tuple(x % mod for x in vector)


def solve_linear_zpm(
    system: Sequence[Sequence[int]],
    unknowns: int,
    p: int,
    m: int,
    levels: Optional[Sequence[int]] = None,
) -> SolutionModule:
    """Solve rows . x = 0 over Z/p^m.

    `levels[i] = e` relaxes row i to hold modulo p^e only; it is the same
    as multiplying the row by p^{m-e}.
    """
    mod = p**m
    if levels is not None and len(levels) != len(system):
        raise InvalidArgumentError("levels must match the number of rows")
    rows: List[List[int]] = []
    for idx, row in enumerate(system):
        if len(row) != unknowns:
            raise InvalidArgumentError(
                f"Row {idx} has {len(row)} coefficients, expected {unknowns}"
            )
        level = m if levels is None else levels[idx]
        if not 0 <= level <= m:
            raise InvalidArgumentError(f"Level {level} outside [0, {m}]")
        factor = p ** (m - level)
        scaled = [(c * factor) % mod for c in row]
        if any(scaled):
            rows.append(scaled)

    # transform[i][j]: x = transform . y
    transform = [[int(i == j) for j in range(unknowns)] for i in range(unknowns)]
    pivots: List[int] = []
    k = 0
    while k < min(len(rows), unknowns):
        best = None
        for i in range(k, len(rows)):
            for j in range(k, unknowns):
                c = rows[i][j]
                if c:
                    v = _vp(c, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        rows[k], rows[i] = rows[i], rows[k]
        if j != k:
            for row in rows:
                row[k], row[j] = row[j], row[k]
            for row in transform:
                row[k], row[j] = row[j], row[k]
        pv = p**v
        unit_inv = pow(rows[k][k] // pv, -1, mod)
        rows[k] = [(x * unit_inv) % mod for x in rows[k]]
        for i2, row in enumerate(rows):
            if i2 != k and row[k]:
                f = row[k] // pv
                rows[i2] = [(x - f * y) % mod for x, y in zip(row, rows[k])]
        for j2 in range(k + 1, unknowns):
            f = rows[k][j2] // pv
            if f:
                rows[k][j2] = 0
                for row in transform:
                    row[j2] = (row[j2] - f * row[k]) % mod
        pivots.append(v)
        k += 1

    generators, exponents = [], []
    for idx in range(unknowns):
        # pivot p^v leaves y in p^{m-v} Z/p^m; free columns have v = m
        e = pivots[idx] if idx < len(pivots) else m
        if e == 0:
            continue
        scale = p ** (m - e)
        generators.append(
            tuple((row[idx] * scale) % mod for row in transform)
        )
        exponents.append(e)
    logger.debug(
        "Solved %d equations in %d unknowns over Z/%d^%d: kernel order %d^%d",
        len(rows),
        unknowns,
        p,
        m,
        p,
        sum(exponents),
    )
    return SolutionModule(
        p=p,
        m=m,
        unknowns=unknowns,
        generators=generators,
        exponents=exponents,
    )


def flatten_matrix(a: Matrix) -> Vector:
    return tuple(c for row in a for x in row for c in x)


def unflatten_matrix(vector: Sequence[int], rows: int, cols: int, n: int) -> Matrix:
    return tuple(
        tuple(
            tuple(vector[(i * cols + j) * n : (i * cols + j + 1) * n])
            for j in range(cols)
        )
        for i in range(rows)
    )


def linear_conditions(
    algebra: MatrixAlgebra,
    rows: int,
    cols: int,
    maps: Sequence[Callable[[Matrix], Matrix]],
) -> List[List[int]]:
    """Flatten Z/p^m-linear maps on rows x cols matrices into equations.

    Each map is evaluated on the basis matrices (one coordinate of one
    entry set to 1); the images are the columns of the equation matrix.
    """
    n = algebra.n
    unknowns = rows * cols * n
    columns = []
    zero = [0] * unknowns
    for idx in range(unknowns):
        basis = list(zero)
        basis[idx] = 1
        x = unflatten_matrix(basis, rows, cols, n)
        columns.append(
            [c for func in maps for c in flatten_matrix(func(x))]
        )
    if not columns:
        return []
    return [list(eq) for eq in zip(*columns)]
