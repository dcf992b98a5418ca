"""
Truncated Dieudonne modules and sigma-semilinear algebra.

A truncation is fixed by a base matrix S (the matrix of sigma_phi) and a
twist g in GL_r(W_m). With Delta = diag(1_c, p 1_d) and
Delta~ = diag(p 1_c, 1_d):

    A = g S Delta                       phi(y) = A sigma(y)
    V = sigma^-1(Delta~ S^-1 g^-1)      theta(y) = V sigma^-1(y)

Coordinates 1..c span F^0 and c+1..r span F^1. Both formulas are integral,
so a truncation is well defined from data modulo p^m alone.
"""
import logging
from typing import Any, Dict, Iterator, Optional, Set

from pydantic import BaseModel

from truncbt.core.errors import (
    InvalidArgumentError,
    InvariantViolation,
    RingMismatch,
    ShapeMismatch,
)
from truncbt.core.linalg import (
    SolutionModule,
    linear_conditions,
    solve_linear_zpm,
    unflatten_matrix,
)
from truncbt.core.matrix import Matrix, MatrixAlgebra, MatrixW, algebra, shape
from truncbt.core.witt import RingDescriptor

logger = logging.getLogger(__name__)


def delta(alg: MatrixAlgebra, c: int, d: int, dual: bool = False) -> Matrix:
    p = alg.ring.p
    ones, ps = alg.ring.one, alg.ring.from_int(p)
    if dual:
        return alg.diagonal([ps] * c + [ones] * d)
    return alg.diagonal([ones] * c + [ps] * d)


class DieudonneTruncation(BaseModel):
    """(M/p^m M, phi, theta) of rank r = c + d over W_m(F_q)"""

    c: int
    d: int
    ring: RingDescriptor
    S: MatrixW
    g: MatrixW
    A: MatrixW
    V: MatrixW

    class Config:
        frozen = True

    @property
    def r(self) -> int:
        return self.c + self.d

    @property
    def algebra(self) -> MatrixAlgebra:
        return algebra(self.ring)

    def verify(self):
        alg = self.algebra
        r, p = self.r, self.ring.p
        p_identity = alg.scalar(r, p)
        if alg.mul(self.A.entries, alg.sigma(self.V.entries)) != p_identity:
            raise InvariantViolation("A sigma(V) != p I")
        if alg.mul(self.V.entries, alg.sigma_inv(self.A.entries)) != p_identity:
            raise InvariantViolation("V sigma^-1(A) != p I")
        if alg.rank_mod_p(self.A.entries) != self.c:
            raise InvariantViolation(f"rank of A mod p is not c={self.c}")
        if alg.rank_mod_p(self.V.entries) != self.d:
            raise InvariantViolation(f"rank of V mod p is not d={self.d}")

    def change_precision(self, m: int) -> "DieudonneTruncation":
        return make_truncation(
            self.c,
            self.d,
            self.ring.reduce(m),
            self.S.change_precision(m),
            self.g.change_precision(m),
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "d": self.d,
            "ring": self.ring.dict(),
            "S": self.S.to_json(),
            "g": self.g.to_json(),
            "A": self.A.to_json(),
            "V": self.V.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "DieudonneTruncation":
        """A and V in the document are ignored and recomputed"""
        ring = RingDescriptor.parse_obj(obj["ring"])
        return make_truncation(
            int(obj["c"]),
            int(obj["d"]),
            ring,
            MatrixW.from_obj(obj["S"], ring),
            MatrixW.from_obj(obj["g"], ring),
        )


def make_truncation(
    c: int,
    d: int,
    ring: RingDescriptor,
    S: MatrixW,
    g: Optional[MatrixW] = None,
) -> DieudonneTruncation:
    if c < 0 or d < 0 or c + d < 1:
        raise InvalidArgumentError(f"Need c, d >= 0 and c + d >= 1, got ({c}, {d})")
    r = c + d
    alg = algebra(ring)
    if g is None:
        g = MatrixW.identity(ring, r)
    for name, mat in (("S", S), ("g", g)):
        if mat.ring != ring:
            raise RingMismatch(mat.ring, ring)
        if shape(mat.entries) != (r, r):
            raise ShapeMismatch(f"{name} must be {r}x{r}, got {shape(mat.entries)}")
    s_inv = alg.inverse(S.entries)
    g_inv = alg.inverse(g.entries)
    a = alg.chain(g.entries, S.entries, delta(alg, c, d))
    v = alg.sigma_inv(alg.chain(delta(alg, c, d, dual=True), s_inv, g_inv))
    truncation = DieudonneTruncation.construct(
        c=c,
        d=d,
        ring=ring,
        S=S,
        g=g,
        A=MatrixW.wrap(ring, a),
        V=MatrixW.wrap(ring, v),
    )
    truncation.verify()
    return truncation


def linearize(D: DieudonneTruncation, j: int) -> MatrixW:
    """Matrix of phi^j: A sigma(A) ... sigma^{j-1}(A)"""
    if j < 1:
        raise InvalidArgumentError(f"j must be positive, got {j}")
    alg = D.algebra
    result = D.A.entries
    for k in range(1, j):
        result = alg.mul(result, alg.sigma_power(D.A.entries, k))
    return MatrixW.wrap(D.ring, result)


def hom_module(
    D1: DieudonneTruncation, D2: DieudonneTruncation
) -> SolutionModule:
    """Matrices x with x A1 = A2 sigma(x) and x V1 = V2 sigma^-1(x)"""
    if D1.ring != D2.ring:
        raise RingMismatch(D1.ring, D2.ring)
    if D1.r != D2.r:
        raise ShapeMismatch(f"Ranks differ: {D1.r} and {D2.r}")
    alg = D1.algebra
    a1, a2 = D1.A.entries, D2.A.entries
    v1, v2 = D1.V.entries, D2.V.entries

    def frobenius_condition(x: Matrix) -> Matrix:
        return alg.sub(alg.mul(x, a1), alg.mul(a2, alg.sigma(x)))

    def verschiebung_condition(x: Matrix) -> Matrix:
        return alg.sub(alg.mul(x, v1), alg.mul(v2, alg.sigma_inv(x)))

    r, ring = D1.r, D1.ring
    system = linear_conditions(
        alg, r, r, [frobenius_condition, verschiebung_condition]
    )
    return solve_linear_zpm(system, r * r * ring.n, ring.p, ring.m)


def iter_module_matrices(
    module: SolutionModule, ring: RingDescriptor, r: int, cap: Optional[int] = None
) -> Iterator[Matrix]:
    for vector in module.iterate(cap=cap):
        yield unflatten_matrix(vector, r, r, ring.n)


def automorphisms(
    D: DieudonneTruncation, cap: Optional[int] = None
) -> Set[Matrix]:
    alg = D.algebra
    return {
        x
        for x in iter_module_matrices(hom_module(D, D), D.ring, D.r, cap=cap)
        if alg.is_invertible(x)
    }


def aut_count(D: DieudonneTruncation, cap: Optional[int] = None) -> int:
    """F_q-points of the crystalline automorphism group of D[p^m]"""
    count = len(automorphisms(D, cap=cap))
    logger.debug("Found %d automorphisms of rank %d truncation", count, D.r)
    return count


def are_isomorphic(
    D1: DieudonneTruncation,
    D2: DieudonneTruncation,
    cap: Optional[int] = None,
) -> bool:
    if (D1.c, D1.d) != (D2.c, D2.d):
        return False
    alg = D1.algebra
    return any(
        alg.is_invertible(x)
        for x in iter_module_matrices(hom_module(D1, D2), D1.ring, D1.r, cap=cap)
    )


def normalizes_f1(x: Matrix, c: int, p: int) -> bool:
    """x mod p maps span(e_{c+1}..e_r) into itself"""
    return not any(
        v % p for row in x[:c] for entry in row[c:] for v in entry
    )


def _reorder(alg: MatrixAlgebra, c: int, d: int) -> Matrix:
    """R with (R v)_j = v_{(j + c) mod r}: the last d coordinates go first"""
    r = c + d
    images = [0] * r
    for j in range(r):
        images[(j + c) % r] = j
    return alg.permutation(images)


def cartier_dual(D: DieudonneTruncation) -> DieudonneTruncation:
    """Dual truncation of type (d, c).

    With R the reordering above, S' = R S^-T R^-1 and g' = R g^-T R^-1,
    so that A' = R sigma(V)^T R^-1 and V' = R sigma^-1(A)^T R^-1.
    Dualizing twice returns D itself.
    """
    alg = D.algebra
    reorder = _reorder(alg, D.c, D.d)
    back = alg.transpose(reorder)

    def conjugate_inverse_transpose(a: Matrix) -> Matrix:
        return alg.chain(reorder, alg.transpose(alg.inverse(a)), back)

    return make_truncation(
        D.d,
        D.c,
        D.ring,
        MatrixW.wrap(D.ring, conjugate_inverse_transpose(D.S.entries)),
        MatrixW.wrap(D.ring, conjugate_inverse_transpose(D.g.entries)),
    )


def change_precision(D: DieudonneTruncation, m: int) -> DieudonneTruncation:
    return D.change_precision(m)
