"""
The action of H_m = (W_+ x W_0 x W_-)(W_m) on GL_r(W_m):

    h . g = h1 h2 h3^p g sigma_phi(h3)^-1 sigma_phi(h2)^-1 sigma_phi(h1^p)^-1

with sigma_phi(X) = S sigma(X) S^-1. h1 = I + L (L in the lower-left d x c
block), h2 = diag(u0, u1), h3 = I + U (U in the upper-right c x d block).

The group law lives on divided matrices: B = h1 h2 h3^p has upper-right
block p*Y with Y = u0 U remembered exactly, which is what keeps the law
exact modulo p^m.
"""
import itertools
import logging
from collections import deque
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from pydantic import BaseModel
from typing_extensions import Literal

from truncbt.config import LOCAL_CONFIG
from truncbt.core.dieudonne import DieudonneTruncation, make_truncation
from truncbt.core.errors import (
    EnumerationTooLarge,
    InvalidArgumentError,
    NonIntegralQuotient,
    NotAnAutomorphism,
    NotInvertible,
    OrbitTooLarge,
    RingMismatch,
    ShapeMismatch,
    SymplecticViolation,
)
from truncbt.core.matrix import Matrix, MatrixAlgebra, MatrixW, algebra, shape
from truncbt.core.witt import Coeffs, RingDescriptor

logger = logging.getLogger(__name__)


def gl_order(k: int, q: int) -> int:
    order = 1
    for i in range(k):
        order *= q**k - q**i
    return order


class SymplecticDescriptor(BaseModel):
    """Standard alternating form J = [[0, I_d], [-I_d, 0]], F^0 first"""

    d: int

    class Config:
        frozen = True

    @property
    def e_plus(self) -> int:
        return self.d * (self.d + 1) // 2

    @property
    def e_minus(self) -> int:
        return self.d * (self.d + 1) // 2

    @property
    def e_zero(self) -> int:
        return self.d**2

    def form(self, alg: MatrixAlgebra) -> Matrix:
        d = self.d
        one, minus_one, zero = (
            alg.ring.one,
            alg.ring.from_int(-1),
            alg.ring.zero,
        )
        rows = [[zero] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            rows[i][d + i] = one
            rows[d + i][i] = minus_one
        return tuple(tuple(row) for row in rows)

    def preserves(self, alg: MatrixAlgebra, x: Matrix) -> bool:
        J = self.form(alg)
        return alg.chain(alg.transpose(x), J, x) == J


class ActionContext(BaseModel):
    c: int
    d: int
    ring: RingDescriptor
    S: MatrixW
    symplectic: Optional[SymplecticDescriptor] = None

    class Config:
        frozen = True

    @property
    def r(self) -> int:
        return self.c + self.d

    @property
    def engine(self) -> "ActionEngine":
        return action_engine(self)

    def change_precision(self, m: int) -> "ActionContext":
        return make_context(
            self.c,
            self.d,
            self.ring.reduce(m),
            self.S.change_precision(m),
            symplectic=self.symplectic is not None,
        )

    def truncation(self, g: MatrixW) -> DieudonneTruncation:
        return make_truncation(self.c, self.d, self.ring, self.S, g)

    def to_json(self) -> Dict:
        return {
            "c": self.c,
            "d": self.d,
            "ring": self.ring.dict(),
            "S": self.S.to_json(),
            "symplectic": self.symplectic is not None,
        }


def make_context(
    c: int,
    d: int,
    ring: RingDescriptor,
    S: Optional[MatrixW] = None,
    symplectic: bool = False,
) -> ActionContext:
    if c < 1 or d < 1:
        raise InvalidArgumentError(
            f"The action needs c, d >= 1, got ({c}, {d})"
        )
    r = c + d
    if S is None:
        S = MatrixW.identity(ring, r)
    if S.ring != ring:
        raise RingMismatch(S.ring, ring)
    if shape(S.entries) != (r, r):
        raise ShapeMismatch(f"S must be {r}x{r}")
    if not S.is_invertible():
        raise NotInvertible("Base matrix S is singular modulo p")
    form = None
    if symplectic:
        if c != d:
            raise SymplecticViolation(
                f"Symplectic contexts need c = d, got ({c}, {d})"
            )
        form = SymplecticDescriptor(d=d)
        if not form.preserves(algebra(ring), S.entries):
            raise SymplecticViolation("S does not preserve the standard form")
    return ActionContext(c=c, d=d, ring=ring, S=S, symplectic=form)


class ActionTriple(BaseModel):
    """h = (I + L, diag(u0, u1), I + U) with raw blocks"""

    c: int
    d: int
    ring: RingDescriptor
    lower: Matrix
    u0: Matrix
    u1: Matrix
    upper: Matrix

    class Config:
        frozen = True

    def key(self) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
        return self.lower, self.u0, self.u1, self.upper

    def matrices(self) -> Tuple[Matrix, Matrix, Matrix]:
        """(h1, h2, h3) as r x r matrices"""
        alg = algebra(self.ring)
        c, d = self.c, self.d
        zero_cd, zero_dc = alg.zero(c, d), alg.zero(d, c)
        h1 = alg.assemble(alg.identity(c), zero_cd, self.lower, alg.identity(d), c, d)
        h2 = alg.assemble(self.u0, zero_cd, zero_dc, self.u1, c, d)
        h3 = alg.assemble(alg.identity(c), self.upper, zero_dc, alg.identity(d), c, d)
        return h1, h2, h3

    def to_json(self) -> Dict:
        def dump(block: Matrix):
            return [[list(x) for x in row] for row in block]

        return {
            "L": dump(self.lower),
            "u0": dump(self.u0),
            "u1": dump(self.u1),
            "U": dump(self.upper),
        }


class DividedMatrix(BaseModel):
    """B with upper-right block p*Y, Y kept exactly"""

    c: int
    d: int
    ring: RingDescriptor
    B: Matrix
    Y: Matrix

    class Config:
        frozen = True


class ActionEngine:
    """Precomputed data for one context"""

    def __init__(self, ctx: ActionContext):
        self.ctx = ctx
        self.alg = algebra(ctx.ring)
        self.ring = self.alg.ring
        self.c, self.d, self.r = ctx.c, ctx.d, ctx.r
        self.p = ctx.ring.p
        self.S = ctx.S.entries
        self.S_inv = self.alg.inverse(self.S)
        self._pairs: Optional[List[Tuple[Matrix, Matrix]]] = None

    def blocks(self, x: Matrix) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
        c, r = self.c, self.r
        alg = self.alg
        return (
            alg.block(x, (0, c), (0, c)),
            alg.block(x, (0, c), (c, r)),
            alg.block(x, (c, r), (0, c)),
            alg.block(x, (c, r), (c, r)),
        )

    def glue(self, x00, x01, x10, x11) -> Matrix:
        return self.alg.assemble(x00, x01, x10, x11, self.c, self.d)

    def sigma_phi(self, x: Matrix) -> Matrix:
        return self.alg.chain(self.S, self.alg.sigma(x), self.S_inv)

    def triple(self, lower, u0, u1, upper) -> ActionTriple:
        return ActionTriple.construct(
            c=self.c,
            d=self.d,
            ring=self.ctx.ring,
            lower=lower,
            u0=u0,
            u1=u1,
            upper=upper,
        )

    def identity_triple(self) -> ActionTriple:
        alg = self.alg
        return self.triple(
            alg.zero(self.d, self.c),
            alg.identity(self.c),
            alg.identity(self.d),
            alg.zero(self.c, self.d),
        )

    def divided(self, h: ActionTriple) -> DividedMatrix:
        alg, p = self.alg, self.p
        l_u0 = alg.mul(h.lower, h.u0)
        y = alg.mul(h.u0, h.upper)
        b = self.glue(
            h.u0,
            alg.scale(y, p),
            l_u0,
            alg.add(h.u1, alg.scale(alg.mul(l_u0, h.upper), p)),
        )
        return DividedMatrix.construct(
            c=self.c, d=self.d, ring=self.ctx.ring, B=b, Y=y
        )

    def refactor(self, dm: DividedMatrix) -> ActionTriple:
        alg, p = self.alg, self.p
        b00, _, b10, b11 = self.blocks(dm.B)
        b00_inv = alg.inverse(b00)
        lower = alg.mul(b10, b00_inv)
        upper = alg.mul(b00_inv, dm.Y)
        u1 = alg.sub(b11, alg.scale(alg.mul(lower, dm.Y), p))
        return self.triple(lower, b00, u1, upper)

    def divided_product(self, x: DividedMatrix, y: DividedMatrix) -> DividedMatrix:
        alg, p = self.alg, self.p
        x00, _, x10, x11 = self.blocks(x.B)
        y00, _, y10, y11 = self.blocks(y.B)
        new_y = alg.add(alg.mul(x00, y.Y), alg.mul(x.Y, y11))
        b = self.glue(
            alg.add(alg.mul(x00, y00), alg.scale(alg.mul(x.Y, y10), p)),
            alg.scale(new_y, p),
            alg.add(alg.mul(x10, y00), alg.mul(x11, y10)),
            alg.add(alg.scale(alg.mul(x10, y.Y), p), alg.mul(x11, y11)),
        )
        return DividedMatrix.construct(
            c=self.c, d=self.d, ring=self.ctx.ring, B=b, Y=new_y
        )

    def phi(self, dm: DividedMatrix) -> Matrix:
        """phi(B) = S sigma([[B00, Y], [p B10, B11]]) S^-1"""
        b00, _, b10, b11 = self.blocks(dm.B)
        shifted = self.glue(b00, dm.Y, self.alg.scale(b10, self.p), b11)
        return self.sigma_phi(shifted)

    def pair(self, h: ActionTriple) -> Tuple[Matrix, Matrix]:
        """(B, phi(B)^-1) so that h . g = B g phi(B)^-1"""
        dm = self.divided(h)
        return dm.B, self.alg.inverse(self.phi(dm))

    def generator_pairs(self) -> List[Tuple[Matrix, Matrix]]:
        if self._pairs is None:
            self._pairs = [self.pair(h) for h in h_generators(self.ctx)]
        return self._pairs


@lru_cache(maxsize=None)
def action_engine(ctx: ActionContext) -> ActionEngine:
    return ActionEngine(ctx)


def identity_triple(ctx: ActionContext) -> ActionTriple:
    return ctx.engine.identity_triple()


def make_triple(
    ctx: ActionContext,
    lower: Optional[Matrix] = None,
    u0: Optional[Matrix] = None,
    u1: Optional[Matrix] = None,
    upper: Optional[Matrix] = None,
) -> ActionTriple:
    """Triple with identity defaults; validates blocks"""
    engine = ctx.engine
    base = engine.identity_triple()
    h = engine.triple(
        base.lower if lower is None else lower,
        base.u0 if u0 is None else u0,
        base.u1 if u1 is None else u1,
        base.upper if upper is None else upper,
    )
    check_triple(ctx, h)
    return h


def check_triple(ctx: ActionContext, h: ActionTriple):
    alg, c, d = ctx.engine.alg, ctx.c, ctx.d
    expected = {
        "L": (h.lower, (d, c)),
        "u0": (h.u0, (c, c)),
        "u1": (h.u1, (d, d)),
        "U": (h.upper, (c, d)),
    }
    for name, (block, dims) in expected.items():
        if shape(block) != dims:
            raise ShapeMismatch(f"Block {name} must be {dims[0]}x{dims[1]}")
    if not alg.is_invertible(h.u0) or not alg.is_invertible(h.u1):
        raise NotInvertible("Diagonal blocks of h2 must be invertible")
    if ctx.symplectic is not None:
        if h.lower != alg.transpose(h.lower) or h.upper != alg.transpose(h.upper):
            raise SymplecticViolation("L and U must be symmetric")
        if h.u1 != alg.transpose(alg.inverse(h.u0)):
            raise SymplecticViolation("h2 must be diag(u, u^-T)")


def compose_triples(
    ctx: ActionContext, h: ActionTriple, h_prime: ActionTriple
) -> ActionTriple:
    engine = ctx.engine
    return engine.refactor(
        engine.divided_product(engine.divided(h), engine.divided(h_prime))
    )


def inverse_triple(ctx: ActionContext, h: ActionTriple) -> ActionTriple:
    """(h1 h2 h3^p)^-1 = h3^-p h2^-1 h1^-1 in the dilatation"""
    engine = ctx.engine
    alg = engine.alg
    base = engine.identity_triple()
    h3_inv = engine.triple(base.lower, base.u0, base.u1, alg.neg(h.upper))
    h2_inv = engine.triple(
        base.lower, alg.inverse(h.u0), alg.inverse(h.u1), base.upper
    )
    h1_inv = engine.triple(alg.neg(h.lower), base.u0, base.u1, base.upper)
    return compose_triples(ctx, compose_triples(ctx, h3_inv, h2_inv), h1_inv)


def act(ctx: ActionContext, h: ActionTriple, g: MatrixW) -> MatrixW:
    engine = ctx.engine
    alg, p = engine.alg, engine.p
    if g.ring != ctx.ring:
        raise RingMismatch(g.ring, ctx.ring)
    if not alg.is_invertible(g.entries):
        raise NotInvertible("g must be invertible")
    if ctx.symplectic is not None:
        check_triple(ctx, h)
        if not ctx.symplectic.preserves(alg, g.entries):
            raise SymplecticViolation("g is not symplectic")
    h1, h2, h3 = h.matrices()
    identity = alg.identity(ctx.r)
    # (I + N)^p = I + pN because N^2 = 0
    h3_p = alg.add(identity, alg.scale(alg.sub(h3, identity), p))
    h1_p_inv = alg.sub(identity, alg.scale(alg.sub(h1, identity), p))
    h3_inv = alg.sub(alg.scale(identity, 2), h3)
    h2_inv = engine.glue(
        alg.inverse(h.u0),
        alg.zero(ctx.c, ctx.d),
        alg.zero(ctx.d, ctx.c),
        alg.inverse(h.u1),
    )
    result = alg.chain(
        h1,
        h2,
        h3_p,
        g.entries,
        engine.sigma_phi(h3_inv),
        engine.sigma_phi(h2_inv),
        engine.sigma_phi(h1_p_inv),
    )
    if ctx.symplectic is not None and not ctx.symplectic.preserves(alg, result):
        raise SymplecticViolation("action left the symplectic group")
    return MatrixW.wrap(ctx.ring, result)


def elementary_values(ctx: ActionContext) -> List[Coeffs]:
    """p^a tau(beta_b) for a < m and beta_b the monomial F_p-basis"""
    ring = ctx.ring.engine
    values = []
    for a in range(ctx.ring.m):
        for beta in ring.basis():
            values.append(ring.scale(ring.teichmuller(beta), ctx.ring.p**a))
    return values


def _unit_values(ctx: ActionContext) -> List[Coeffs]:
    """tau(zeta) for a primitive zeta, and 1 + p^a tau(beta_b) for a >= 1"""
    ring = ctx.ring.engine
    values = [ring.teichmuller(ring.primitive_residue())]
    for a in range(1, ctx.ring.m):
        for beta in ring.basis():
            values.append(
                ring.add(ring.one, ring.scale(ring.teichmuller(beta), ctx.ring.p**a))
            )
    return [v for v in values if v != ring.one]


def _unit_matrix(alg: MatrixAlgebra, rows: int, cols: int, entries) -> Matrix:
    out = [list(row) for row in alg.zero(rows, cols)]
    for (i, j), value in entries.items():
        out[i][j] = value
    return tuple(tuple(row) for row in out)


def _gl_generators(alg: MatrixAlgebra, k: int, values, units) -> List[Matrix]:
    identity = alg.identity(k)
    gens = []
    for i, j in itertools.permutations(range(k), 2):
        for t in values:
            gens.append(alg.add(identity, _unit_matrix(alg, k, k, {(i, j): t})))
    for i in range(k):
        for u in units:
            diag = [list(row) for row in identity]
            diag[i][i] = u
            gens.append(tuple(tuple(row) for row in diag))
    return gens


def _block_generators(
    alg: MatrixAlgebra, rows: int, cols: int, values, symmetric: bool
) -> List[Matrix]:
    gens = []
    for i in range(rows):
        for j in range(cols):
            if symmetric and j < i:
                continue
            for t in values:
                entries = {(i, j): t}
                if symmetric:
                    entries[(j, i)] = t
                gens.append(_unit_matrix(alg, rows, cols, entries))
    return gens


def h_generators(ctx: ActionContext) -> List[ActionTriple]:
    engine = ctx.engine
    alg = engine.alg
    c, d = ctx.c, ctx.d
    base = engine.identity_triple()
    values = elementary_values(ctx)
    units = _unit_values(ctx)
    symmetric = ctx.symplectic is not None
    generators = []
    for lower in _block_generators(alg, d, c, values, symmetric):
        generators.append(engine.triple(lower, base.u0, base.u1, base.upper))
    for upper in _block_generators(alg, c, d, values, symmetric):
        generators.append(engine.triple(base.lower, base.u0, base.u1, upper))
    if symmetric:
        for u in _gl_generators(alg, d, values, units):
            generators.append(
                engine.triple(
                    base.lower, u, alg.transpose(alg.inverse(u)), base.upper
                )
            )
    else:
        for u0 in _gl_generators(alg, c, values, units):
            generators.append(engine.triple(base.lower, u0, base.u1, base.upper))
        for u1 in _gl_generators(alg, d, values, units):
            generators.append(engine.triple(base.lower, base.u0, u1, base.upper))
    logger.debug("Context (%d, %d) over %s: %d generators", c, d, ctx.ring, len(generators))
    return generators


def generator_counts(ctx: ActionContext) -> Dict[str, int]:
    """Generators per factor: "plus" (L), "zero" (h2) and "minus" (U)"""
    base = ctx.engine.identity_triple()
    counts = {"plus": 0, "zero": 0, "minus": 0}
    for h in h_generators(ctx):
        if h.lower != base.lower:
            counts["plus"] += 1
        elif h.upper != base.upper:
            counts["minus"] += 1
        else:
            counts["zero"] += 1
    return counts


def group_order(ctx: ActionContext) -> int:
    q, m, c, d = ctx.ring.q, ctx.ring.m, ctx.c, ctx.d
    if ctx.symplectic is not None:
        return q ** (m * d * (d + 1)) * q ** ((m - 1) * d * d) * gl_order(d, q)
    return (
        q ** (2 * c * d * m)
        * q ** ((m - 1) * (c * c + d * d))
        * gl_order(c, q)
        * gl_order(d, q)
    )


def w0_order(ctx: ActionContext) -> int:
    """|W_0(F_q)|: GL_c x GL_d, or GL_d in the symplectic case"""
    q = ctx.ring.q
    if ctx.symplectic is not None:
        return gl_order(ctx.d, q)
    return gl_order(ctx.c, q) * gl_order(ctx.d, q)


def generated_group_order(ctx: ActionContext, cap: Optional[int] = None) -> int:
    """Closure of h_generators under the divided-matrix law"""
    cap = cap or LOCAL_CONFIG.ENUMERATION_BUDGET
    engine = ctx.engine
    start = engine.divided(engine.identity_triple())
    generators = [engine.divided(h) for h in h_generators(ctx)]
    seen = {(start.B, start.Y)}
    frontier = deque([start])
    while frontier:
        x = frontier.popleft()
        for gen in generators:
            y = engine.divided_product(x, gen)
            key = (y.B, y.Y)
            if key not in seen:
                if len(seen) >= cap:
                    raise EnumerationTooLarge("generated group", len(seen), cap)
                seen.add(key)
                frontier.append(y)
    return len(seen)


def iter_gl(
    ring: RingDescriptor, r: int, cap: Optional[int] = None
) -> Iterator[Matrix]:
    """All of GL_r(W_m(F_q)) in lexicographic order of entries"""
    cap = cap or LOCAL_CONFIG.ENUMERATION_BUDGET
    total = ring.size ** (r * r)
    if total > cap:
        raise EnumerationTooLarge(f"{r}x{r} matrices over {ring}", total, cap)
    alg = algebra(ring)
    elements = list(ring.engine.enumerate("all", cap=cap))
    for flat in itertools.product(elements, repeat=r * r):
        x = tuple(tuple(flat[i * r : (i + 1) * r]) for i in range(r))
        if alg.is_invertible(x):
            yield x


def enumerate_gl(
    ring: RingDescriptor, r: int, cap: Optional[int] = None
) -> List[MatrixW]:
    return [MatrixW.wrap(ring, x) for x in iter_gl(ring, r, cap=cap)]


def _symmetric_blocks(ring: RingDescriptor, d: int) -> Iterator[Matrix]:
    elements = list(ring.engine.enumerate("all"))
    slots = [(i, j) for i in range(d) for j in range(i, d)]
    alg = algebra(ring)
    for values in itertools.product(elements, repeat=len(slots)):
        entries = {}
        for (i, j), v in zip(slots, values):
            entries[(i, j)] = v
            entries[(j, i)] = v
        yield _unit_matrix(alg, d, d, entries)


def _all_blocks(ring: RingDescriptor, rows: int, cols: int) -> Iterator[Matrix]:
    elements = list(ring.engine.enumerate("all"))
    for flat in itertools.product(elements, repeat=rows * cols):
        yield tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(rows))


def iter_triples(ctx: ActionContext, cap: Optional[int] = None) -> Iterator[ActionTriple]:
    cap = cap or LOCAL_CONFIG.ENUMERATION_BUDGET
    order = group_order(ctx)
    if order > cap:
        raise EnumerationTooLarge("acting group", order, cap)
    engine = ctx.engine
    alg = engine.alg
    ring, c, d = ctx.ring, ctx.c, ctx.d
    if ctx.symplectic is not None:
        for u in iter_gl(ring, d):
            u1 = alg.transpose(alg.inverse(u))
            for lower in _symmetric_blocks(ring, d):
                for upper in _symmetric_blocks(ring, d):
                    yield engine.triple(lower, u, u1, upper)
        return
    gl_c = list(iter_gl(ring, c))
    gl_d = list(iter_gl(ring, d))
    for u0 in gl_c:
        for u1 in gl_d:
            for lower in _all_blocks(ring, d, c):
                for upper in _all_blocks(ring, c, d):
                    yield engine.triple(lower, u0, u1, upper)


class OrbitReport(BaseModel):
    context: ActionContext
    seed: MatrixW
    orbit_size: int
    canonical: MatrixW
    group_order: int
    stabilizer_count: int
    elements: Optional[FrozenSet[Matrix]] = None

    def to_json(self) -> Dict:
        return {
            "context": self.context.to_json(),
            "seed": self.seed.to_json(),
            "orbit_size": self.orbit_size,
            "canonical": self.canonical.to_json(),
            "stabilizer_count": self.stabilizer_count,
            "group_order": self.group_order,
        }


def _check_seed(ctx: ActionContext, g0: MatrixW):
    alg = ctx.engine.alg
    if g0.ring != ctx.ring:
        raise RingMismatch(g0.ring, ctx.ring)
    if shape(g0.entries) != (ctx.r, ctx.r):
        raise ShapeMismatch(f"Seed must be {ctx.r}x{ctx.r}")
    if not alg.is_invertible(g0.entries):
        raise NotInvertible("Seed must be invertible")
    if ctx.symplectic is not None and not ctx.symplectic.preserves(alg, g0.entries):
        raise SymplecticViolation("Seed is not symplectic")


def orbit_bfs(
    ctx: ActionContext,
    g0: MatrixW,
    budget: Optional[int] = None,
    keep_elements: bool = False,
) -> OrbitReport:
    budget = budget or LOCAL_CONFIG.ORBIT_BUDGET
    _check_seed(ctx, g0)
    engine = ctx.engine
    mul = engine.alg.mul
    pairs = engine.generator_pairs()
    seen: Set[Matrix] = {g0.entries}
    frontier = deque([g0.entries])
    while frontier:
        g = frontier.popleft()
        for left, right in pairs:
            image = mul(mul(left, g), right)
            if image not in seen:
                if len(seen) >= budget:
                    raise OrbitTooLarge(budget, len(seen))
                seen.add(image)
                frontier.append(image)
        if len(seen) % 10000 == 0:
            logger.debug("Orbit search: %d states, frontier %d", len(seen), len(frontier))
    order = group_order(ctx)
    size = len(seen)
    if order % size:
        raise NonIntegralQuotient(order, size, "group order by orbit size")
    return OrbitReport.construct(
        context=ctx,
        seed=g0,
        orbit_size=size,
        canonical=MatrixW.wrap(ctx.ring, min(seen)),
        group_order=order,
        stabilizer_count=order // size,
        elements=frozenset(seen) if keep_elements else None,
    )


def same_orbit(
    ctx: ActionContext, g1: MatrixW, g2: MatrixW, budget: Optional[int] = None
) -> bool:
    first = orbit_bfs(ctx, g1, budget=budget)
    second = orbit_bfs(ctx, g2, budget=budget)
    return first.canonical == second.canonical


def stabilizer(
    ctx: ActionContext,
    g0: MatrixW,
    mode: Literal["count", "enumerate"] = "count",
    budget: Optional[int] = None,
):
    if mode == "count":
        return orbit_bfs(ctx, g0, budget=budget).stabilizer_count
    _check_seed(ctx, g0)
    engine = ctx.engine
    mul = engine.alg.mul
    found = []
    for h in iter_triples(ctx, cap=budget):
        left, right = engine.pair(h)
        if mul(mul(left, g0.entries), right) == g0.entries:
            found.append(h)
    logger.debug("Stabilizer of seed has %d elements", len(found))
    return found


def stabilizer_to_aut(
    ctx: ActionContext, h: ActionTriple, g0: MatrixW
) -> MatrixW:
    """h1 h2 h3^p, checked to be an automorphism of the truncation of g0"""
    engine = ctx.engine
    alg = engine.alg
    image = engine.divided(h).B
    D = ctx.truncation(g0)
    a, v = D.A.entries, D.V.entries
    if alg.mul(image, a) != alg.mul(a, alg.sigma(image)):
        raise NotAnAutomorphism("image does not commute with phi")
    if alg.mul(image, v) != alg.mul(v, alg.sigma_inv(image)):
        raise NotAnAutomorphism("image does not commute with theta")
    if not alg.is_invertible(image):
        raise NotAnAutomorphism("image is not invertible")
    return MatrixW.wrap(ctx.ring, image)


def xi_image_count(ctx: ActionContext, triples: List[ActionTriple]) -> int:
    """Distinct residues of the diagonal blocks (u0, u1)"""
    alg = ctx.engine.alg
    return len({(alg.residue(h.u0), alg.residue(h.u1)) for h in triples})
