"""
Matrices over W_m(F_{p^n}).

:class:`MatrixAlgebra` works on raw row-major tuples of coefficient tuples
and is what the engine modules use in tight loops. :class:`MatrixW` is the
serializable, validated wrapper exposed by the API.
"""
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, root_validator
from typing_extensions import Literal

from truncbt.core.errors import (
    InvalidArgumentError,
    NotInvertible,
    RingMismatch,
    ShapeMismatch,
)
from truncbt.core.witt import (
    Coeffs,
    RingDescriptor,
    WittElement,
    WittRing,
    ring_engine,
)

Row = Tuple[Coeffs, ...]
Matrix = Tuple[Row, ...]


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


class MatrixAlgebra:
    """Exact matrix arithmetic over one Witt ring"""

    def __init__(self, ring: WittRing):
        self.ring = ring
        self.n = ring.n
        self.modulo = ring.modulo

    def identity(self, r: int) -> Matrix:
        zero, one = self.ring.zero, self.ring.one
        return tuple(
            tuple(one if i == j else zero for j in range(r)) for i in range(r)
        )

    def zero(self, rows: int, cols: int) -> Matrix:
        zero = self.ring.zero
        return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))

    def scalar(self, r: int, k: int) -> Matrix:
        value, zero = self.ring.from_int(k), self.ring.zero
        return tuple(
            tuple(value if i == j else zero for j in range(r))
            for i in range(r)
        )

    def diagonal(self, entries: Sequence[Coeffs]) -> Matrix:
        zero = self.ring.zero
        r = len(entries)
        return tuple(
            tuple(entries[i] if i == j else zero for j in range(r))
            for i in range(r)
        )

    def permutation(self, images: Sequence[int]) -> Matrix:
        """P with P[images[i]][i] = 1 (0-based images)"""
        r = len(images)
        zero, one = self.ring.zero, self.ring.one
        rows = [[zero] * r for _ in range(r)]
        for i, target in enumerate(images):
            rows[target][i] = one
        return tuple(tuple(row) for row in rows)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        rows, inner = shape(a)
        inner_b, cols = shape(b)
        if inner != inner_b:
            raise ShapeMismatch(
                f"Cannot multiply {rows}x{inner} by {inner_b}x{cols}"
            )
        mod = self.modulo
        if self.n == 1:
            bt = [[row[j][0] for row in b] for j in range(cols)]
            return tuple(
                tuple(
                    (sum(x[0] * y for x, y in zip(row, col) if x[0]) % mod,)
                    for col in bt
                )
                for row in a
            )
        ring = self.ring
        result = []
        for row in a:
            out = []
            for j in range(cols):
                acc = ring.zero
                for k in range(inner):
                    x = row[k]
                    if any(x):
                        acc = ring.add(acc, ring.mul(x, b[k][j]))
                out.append(acc)
            result.append(tuple(out))
        return tuple(result)

    def chain(self, *factors: Matrix) -> Matrix:
        result = factors[0]
        for factor in factors[1:]:
            result = self.mul(result, factor)
        return result

    def _entrywise(self, a: Matrix, b: Matrix, func) -> Matrix:
        if shape(a) != shape(b):
            raise ShapeMismatch(f"Shapes {shape(a)} and {shape(b)} differ")
        return tuple(
            tuple(func(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    def add(self, a: Matrix, b: Matrix) -> Matrix:
        return self._entrywise(a, b, self.ring.add)

    def sub(self, a: Matrix, b: Matrix) -> Matrix:
        return self._entrywise(a, b, self.ring.sub)

    def neg(self, a: Matrix) -> Matrix:
        return self.map(a, self.ring.neg)

    def scale(self, a: Matrix, k: int) -> Matrix:
        mod = self.modulo
        return tuple(
            tuple(tuple((c * k) % mod for c in x) for x in row) for row in a
        )

    def map(self, a: Matrix, func) -> Matrix:
        return tuple(tuple(func(x) for x in row) for row in a)

    def transpose(self, a: Matrix) -> Matrix:
        rows, cols = shape(a)
        return tuple(tuple(a[i][j] for i in range(rows)) for j in range(cols))

    def sigma(self, a: Matrix) -> Matrix:
        if self.n == 1:
            return a
        return self.map(a, self.ring.sigma)

    def sigma_inv(self, a: Matrix) -> Matrix:
        if self.n == 1:
            return a
        return self.map(a, self.ring.sigma_inv)

    def sigma_power(self, a: Matrix, e: int) -> Matrix:
        e %= self.n
        for _ in range(e):
            a = self.sigma(a)
        return a

    def residue(self, a: Matrix) -> Matrix:
        return self.map(a, self.ring.residue)

    def reduce(self, a: Matrix, m: int) -> Matrix:
        return self.map(a, lambda x: self.ring.reduce(x, m))

    def is_zero(self, a: Matrix) -> bool:
        return not any(any(x) for row in a for x in row)

    def block(
        self, a: Matrix, rows: Tuple[int, int], cols: Tuple[int, int]
    ) -> Matrix:
        return tuple(tuple(row[cols[0] : cols[1]]) for row in a[rows[0] : rows[1]])

    def assemble(
        self,
        top_left: Matrix,
        top_right: Matrix,
        bottom_left: Matrix,
        bottom_right: Matrix,
        c: int,
        d: int,
    ) -> Matrix:
        """Glue a 2x2 block matrix with block sizes (c, d)"""
        top = [
            tuple(top_left[i]) + tuple(top_right[i]) if d else tuple(top_left[i])
            for i in range(c)
        ]
        bottom = [
            (tuple(bottom_left[i]) if c else ()) + tuple(bottom_right[i])
            for i in range(d)
        ]
        return tuple(top + bottom)

    def _eliminate(self, a: Matrix, track: bool):
        """Gauss-Jordan over the local ring W_m with unit pivots.
        Returns the inverse (if track) or None; raises NotInvertible."""
        ring = self.ring
        r, cols = shape(a)
        if r != cols:
            raise ShapeMismatch(f"Matrix {r}x{cols} is not square")
        work = [list(row) for row in a]
        inv = [list(row) for row in self.identity(r)] if track else None
        for k in range(r):
            pivot = next(
                (i for i in range(k, r) if ring.is_unit(work[i][k])), None
            )
            if pivot is None:
                raise NotInvertible("Matrix is singular modulo p")
            if pivot != k:
                work[k], work[pivot] = work[pivot], work[k]
                if inv is not None:
                    inv[k], inv[pivot] = inv[pivot], inv[k]
            u = ring.inv(work[k][k])
            work[k] = [ring.mul(u, x) for x in work[k]]
            if inv is not None:
                inv[k] = [ring.mul(u, x) for x in inv[k]]
            for i in range(r):
                if i == k:
                    continue
                factor = work[i][k]
                if not any(factor):
                    continue
                work[i] = [
                    ring.sub(x, ring.mul(factor, y))
                    for x, y in zip(work[i], work[k])
                ]
                if inv is not None:
                    inv[i] = [
                        ring.sub(x, ring.mul(factor, y))
                        for x, y in zip(inv[i], inv[k])
                    ]
        if inv is None:
            return None
        return tuple(tuple(row) for row in inv)

    def inverse(self, a: Matrix) -> Matrix:
        return self._eliminate(a, track=True)

    def is_invertible(self, a: Matrix) -> bool:
        try:
            self._eliminate(a, track=False)
        except NotInvertible:
            return False
        return True

    def rank_mod_p(self, a: Matrix) -> int:
        """Rank of the residue matrix over F_q"""
        field = ring_engine(self.ring.descriptor.residue_field())
        work = [[field.coerce(x) for x in row] for row in a]
        rows, cols = shape(a)
        rank = 0
        for k in range(cols):
            pivot = next(
                (i for i in range(rank, rows) if field.is_unit(work[i][k])),
                None,
            )
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            u = field.inv(work[rank][k])
            work[rank] = [field.mul(u, x) for x in work[rank]]
            for i in range(rows):
                if i != rank and any(work[i][k]):
                    factor = work[i][k]
                    work[i] = [
                        field.sub(x, field.mul(factor, y))
                        for x, y in zip(work[i], work[rank])
                    ]
            rank += 1
        return rank


@lru_cache(maxsize=None)
def algebra(descriptor: RingDescriptor) -> MatrixAlgebra:
    return MatrixAlgebra(ring_engine(descriptor))


class MatrixW(BaseModel):
    """Matrix over W_m(F_{p^n}) with canonical coefficient tuples"""

    ring: RingDescriptor
    entries: Matrix

    class Config:
        frozen = True

    @root_validator(pre=True)
    def check_entries(cls, values):  # pylint: disable=no-self-argument
        values = dict(values)
        rows, cols = values.pop("rows", None), values.pop("cols", None)
        ring = values.get("ring")
        entries = values.get("entries")
        if ring is None or entries is None:
            return values
        if not isinstance(ring, RingDescriptor):
            ring = RingDescriptor.parse_obj(ring)
        engine = ring.engine
        canonical = tuple(
            tuple(engine.coerce(x) for x in row) for row in entries
        )
        if len({len(row) for row in canonical}) > 1:
            raise ValueError("matrix rows have different lengths")
        if rows is not None and rows != len(canonical):
            raise ValueError(f"rows={rows} but {len(canonical)} rows given")
        if cols is not None and canonical and cols != len(canonical[0]):
            raise ValueError(f"cols={cols} but {len(canonical[0])} columns given")
        values["ring"] = ring
        values["entries"] = canonical
        return values

    @classmethod
    def wrap(cls, ring: RingDescriptor, entries: Matrix) -> "MatrixW":
        return cls.construct(ring=ring, entries=entries)

    @classmethod
    def identity(cls, ring: RingDescriptor, r: int) -> "MatrixW":
        return cls.wrap(ring, algebra(ring).identity(r))

    @classmethod
    def from_ints(
        cls, ring: RingDescriptor, rows: Sequence[Sequence[Any]]
    ) -> "MatrixW":
        return cls(ring=ring, entries=rows)

    @classmethod
    def from_obj(cls, obj: Any, ring: RingDescriptor) -> "MatrixW":
        """A {"ring", "entries"} document over exactly ``ring``, or bare rows"""
        if isinstance(obj, dict):
            matrix = cls.parse_obj(obj)
            if matrix.ring != ring:
                raise RingMismatch(matrix.ring, ring)
            return matrix
        return cls(ring=ring, entries=obj)

    @property
    def algebra(self) -> MatrixAlgebra:
        return algebra(self.ring)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return shape(self.entries)[1]

    def __getitem__(self, item: Tuple[int, int]) -> WittElement:
        i, j = item
        return WittElement(self.ring, self.entries[i][j])

    def _check(self, other: "MatrixW"):
        if other.ring != self.ring:
            raise RingMismatch(self.ring, other.ring)

    def __matmul__(self, other: "MatrixW") -> "MatrixW":
        self._check(other)
        return self.wrap(self.ring, self.algebra.mul(self.entries, other.entries))

    def __add__(self, other: "MatrixW") -> "MatrixW":
        self._check(other)
        return self.wrap(self.ring, self.algebra.add(self.entries, other.entries))

    def __sub__(self, other: "MatrixW") -> "MatrixW":
        self._check(other)
        return self.wrap(self.ring, self.algebra.sub(self.entries, other.entries))

    def scale(self, k: int) -> "MatrixW":
        return self.wrap(self.ring, self.algebra.scale(self.entries, k))

    def inverse(self) -> "MatrixW":
        return self.wrap(self.ring, self.algebra.inverse(self.entries))

    def transpose(self) -> "MatrixW":
        return self.wrap(self.ring, self.algebra.transpose(self.entries))

    def sigma(self) -> "MatrixW":
        return self.wrap(self.ring, self.algebra.sigma(self.entries))

    def sigma_inv(self) -> "MatrixW":
        return self.wrap(self.ring, self.algebra.sigma_inv(self.entries))

    def is_invertible(self) -> bool:
        return self.algebra.is_invertible(self.entries)

    def change_precision(self, m: int) -> "MatrixW":
        target = self.ring.reduce(m)
        return self.wrap(target, self.algebra.reduce(self.entries, m))

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.dict(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[list(x) for x in row] for row in self.entries],
        }

    def to_ints(self) -> List[List[int]]:
        """Entries as plain integers (n = 1 only)"""
        if self.ring.n != 1:
            raise InvalidArgumentError("to_ints needs a prime residue field")
        return [[x[0] for x in row] for row in self.entries]


def matrix_ops(
    a: MatrixW,
    b: Optional[MatrixW],
    op: Literal["mul", "add", "inverse", "transpose", "entrywise_sigma"],
) -> MatrixW:
    if op == "inverse":
        return a.inverse()
    if op == "transpose":
        return a.transpose()
    if op == "entrywise_sigma":
        return a.sigma()
    if b is None:
        raise InvalidArgumentError(f"'{op}' needs two operands")
    if op == "mul":
        return a @ b
    if op == "add":
        return a + b
    raise InvalidArgumentError(f"Unknown matrix operation '{op}'")
