"""
Truncated Witt rings W_m(F_{p^n}).

Elements are polynomials of degree < n over Z/p^m reduced modulo a monic
lift of an irreducible polynomial over F_p. The ring is the unramified
extension of Z/p^m of degree n; the Frobenius sigma sends the generator to
the Hensel-lifted root of the modulus congruent to (generator)^p.

Hot paths (matrix products, orbit search) work on raw coefficient tuples
through :class:`WittRing`; :class:`WittElement` is the user-facing wrapper.
"""
import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, root_validator, validator
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p
from typing_extensions import Literal

from truncbt.config import LOCAL_CONFIG
from truncbt.constants import INFINITY, MAX_RING_SIZE
from truncbt.core.errors import (
    EnumerationTooLarge,
    InvalidArgumentError,
    NotAUnit,
    PrecisionIncrease,
    RingMismatch,
)

logger = logging.getLogger(__name__)

Coeffs = Tuple[int, ...]
Valuation = Union[int, float]


def _is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    # galoistools wants the leading coefficient first
    poly = [c % p for c in reversed(modulus)]
    if len(poly) == 2:
        return poly[0] != 0
    return bool(gf_irreducible_p(poly, p, ZZ))


@lru_cache(maxsize=None)
def default_modulus(p: int, n: int) -> Coeffs:
    """Lexicographically smallest monic irreducible of degree n over F_p,
    ordered on the coefficient vector lowest degree first"""
    for low in itertools.product(range(p), repeat=n):
        candidate = tuple(low) + (1,)
        if _is_irreducible_mod_p(candidate, p):
            return candidate
    raise InvalidArgumentError(  # pragma: no cover
        f"No irreducible polynomial of degree {n} over F_{p}"
    )


class RingDescriptor(BaseModel):
    """W_m(F_{p^n}) given by p, n, m and the modulus (lowest degree first)"""

    p: int
    n: int = 1
    m: int = 1
    modulus: Coeffs

    class Config:
        frozen = True

    @root_validator(pre=True)
    def fill_modulus(cls, values):  # pylint: disable=no-self-argument
        if values.get("modulus") is None and "p" in values:
            p, n = int(values["p"]), int(values.get("n", 1))
            if p >= 2 and n >= 1 and isprime(p):
                values = dict(values)
                values["modulus"] = default_modulus(p, n)
        return values

    @validator("p")
    def check_prime(cls, value):  # pylint: disable=no-self-argument
        if not isprime(value):
            raise ValueError(f"p={value} is not prime")
        return value

    @validator("n", "m")
    def check_positive(cls, value):  # pylint: disable=no-self-argument
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @validator("m")
    def check_width(cls, value, values):  # pylint: disable=no-self-argument
        p = values.get("p")
        if p is not None and p**value > MAX_RING_SIZE:
            raise ValueError(f"p^m = {p}^{value} exceeds 2^31")
        return value

    @validator("modulus")
    def check_modulus(cls, value, values):  # pylint: disable=no-self-argument
        p, n, m = values.get("p"), values.get("n"), values.get("m")
        if p is None or n is None or m is None:
            return value
        if len(value) != n + 1 or value[-1] != 1:
            raise ValueError(
                f"modulus must be monic of degree {n}, lowest degree first"
            )
        if any(c < 0 or c >= p**m for c in value):
            raise ValueError(f"modulus coefficients must lie in [0, {p**m})")
        if not _is_irreducible_mod_p(value, p):
            raise ValueError(f"modulus {list(value)} is reducible mod {p}")
        return tuple(value)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def modulo(self) -> int:
        return self.p**self.m

    @property
    def size(self) -> int:
        return self.p ** (self.n * self.m)

    @property
    def engine(self) -> "WittRing":
        return ring_engine(self)

    def reduce(self, m: int) -> "RingDescriptor":
        if m > self.m:
            raise PrecisionIncrease(self.m, m)
        if m == self.m:
            return self
        return RingDescriptor(
            p=self.p,
            n=self.n,
            m=m,
            modulus=tuple(c % self.p**m for c in self.modulus),
        )

    def residue_field(self) -> "RingDescriptor":
        return self.reduce(1)

    def element(self, coeffs: Union[int, Sequence[int]]) -> "WittElement":
        return WittElement(self, self.engine.coerce(coeffs))

    def zero(self) -> "WittElement":
        return WittElement(self, self.engine.zero)

    def one(self) -> "WittElement":
        return WittElement(self, self.engine.one)

    def generator(self) -> "WittElement":
        return WittElement(self, self.engine.generator)

    def __str__(self):
        return f"W_{self.m}(F_{self.p}^{self.n})"


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


class WittRing:
    """Arithmetic on raw coefficient tuples of one RingDescriptor"""

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.p = descriptor.p
        self.n = descriptor.n
        self.m = descriptor.m
        self.q = descriptor.q
        self.modulo = descriptor.modulo
        self.size = descriptor.size
        # x^n = sum(tail[k] x^k)
        self._tail = tuple(
            (-c) % self.modulo for c in descriptor.modulus[: self.n]
        )
        self.zero: Coeffs = (0,) * self.n
        self.one: Coeffs = (1,) + (0,) * (self.n - 1)
        self.generator: Coeffs = (
            (0, 1) + (0,) * (self.n - 2) if self.n > 1 else self.zero
        )
        self._sigma_images = self._power_table(self._frobenius_root())
        self._sigma_inverse_images = self._power_table(
            self._iterate_sigma(self.generator, self.n - 1)
        )
        logger.debug(
            "Built %s with modulus %s", descriptor, list(descriptor.modulus)
        )

    # coercion

    def coerce(self, value: Union[int, Sequence[int]]) -> Coeffs:
        if isinstance(value, int):
            return (value % self.modulo,) + (0,) * (self.n - 1)
        value = tuple(int(c) for c in value)
        if len(value) != self.n:
            raise InvalidArgumentError(
                f"{self.descriptor} elements have {self.n} coefficients, got {len(value)}"
            )
        return tuple(c % self.modulo for c in value)

    def from_int(self, value: int) -> Coeffs:
        return (value % self.modulo,) + (0,) * (self.n - 1)

    # ring operations

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        mod = self.modulo
        return tuple((x + y) % mod for x, y in zip(a, b))

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        mod = self.modulo
        return tuple((x - y) % mod for x, y in zip(a, b))

    def neg(self, a: Coeffs) -> Coeffs:
        mod = self.modulo
        return tuple((-x) % mod for x in a)

    def scale(self, a: Coeffs, k: int) -> Coeffs:
        mod = self.modulo
        return tuple((x * k) % mod for x in a)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        mod = self.modulo
        n = self.n
        if n == 1:
            return ((a[0] * b[0]) % mod,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        tail = self._tail
        for k in range(2 * n - 2, n - 1, -1):
            top = prod[k] % mod
            if top:
                base = k - n
                for j in range(n):
                    prod[base + j] += top * tail[j]
        return tuple(c % mod for c in prod[:n])

    def pow(self, a: Coeffs, e: int) -> Coeffs:
        result = self.one
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a: Coeffs) -> bool:
        return not any(a)

    def is_unit(self, a: Coeffs) -> bool:
        p = self.p
        return any(c % p for c in a)

    def inv(self, a: Coeffs) -> Coeffs:
        if not self.is_unit(a):
            raise NotAUnit(f"{list(a)} is not a unit in {self.descriptor}")
        if self.n == 1:
            return (pow(a[0], -1, self.modulo),)
        # residue inverse, then Newton lifting x <- x(2 - ax)
        x = self.pow(a, self.q - 2)
        two = self.from_int(2)
        for _ in range(_ceil_log2(self.m)):
            x = self.mul(x, self.sub(two, self.mul(a, x)))
        return x

    # valuations and precision

    def valuation(self, a: Coeffs) -> Valuation:
        if not any(a):
            return INFINITY
        p = self.p
        best = self.m
        for c in a:
            if c:
                k = 0
                while c % p == 0:
                    c //= p
                    k += 1
                best = min(best, k)
        return best

    def residue(self, a: Coeffs) -> Coeffs:
        p = self.p
        return tuple(c % p for c in a)

    def reduce(self, a: Coeffs, m: int) -> Coeffs:
        if m > self.m:
            raise PrecisionIncrease(self.m, m)
        mod = self.p**m
        return tuple(c % mod for c in a)

    # Frobenius

    def _evaluate(self, poly: Sequence[int], y: Coeffs) -> Coeffs:
        result = self.zero
        for c in reversed(poly):
            result = self.add(self.mul(result, y), self.from_int(c))
        return result

    def _frobenius_root(self) -> Coeffs:
        if self.n == 1:
            return self.generator
        modulus = self.descriptor.modulus
        derivative = [k * modulus[k] for k in range(1, len(modulus))]
        y = self.pow(self.generator, self.p)
        for _ in range(_ceil_log2(self.m)):
            step = self.mul(
                self._evaluate(modulus, y),
                self.inv(self._evaluate(derivative, y)),
            )
            y = self.sub(y, step)
        return y

    def _power_table(self, y: Coeffs) -> Tuple[Coeffs, ...]:
        table = [self.one]
        for _ in range(1, self.n):
            table.append(self.mul(table[-1], y))
        return tuple(table)

    def _apply_images(
        self, a: Coeffs, images: Tuple[Coeffs, ...]
    ) -> Coeffs:
        mod = self.modulo
        result = [0] * self.n
        for k, c in enumerate(a):
            if c:
                for l, v in enumerate(images[k]):
                    result[l] += c * v
        return tuple(x % mod for x in result)

    def sigma(self, a: Coeffs) -> Coeffs:
        if self.n == 1:
            return a
        return self._apply_images(a, self._sigma_images)

    def sigma_inv(self, a: Coeffs) -> Coeffs:
        if self.n == 1:
            return a
        return self._apply_images(a, self._sigma_inverse_images)

    def sigma_power(self, a: Coeffs, e: int) -> Coeffs:
        e %= self.n
        return self._iterate_sigma(a, e)

    def _iterate_sigma(self, a: Coeffs, times: int) -> Coeffs:
        for _ in range(times):
            a = self.sigma(a)
        return a

    # Z/p^m-linear structure

    def basis(self) -> List[Coeffs]:
        """Monomial basis x^0..x^{n-1}; also an F_p-basis of the residue field"""
        return [
            tuple(1 if k == b else 0 for k in range(self.n))
            for b in range(self.n)
        ]

    # residue field and lifts

    def teichmuller(self, residue: Sequence[int]) -> Coeffs:
        residue = tuple(int(c) % self.p for c in residue)
        if len(residue) != self.n:
            raise InvalidArgumentError(
                f"Residue must have {self.n} coefficients, got {len(residue)}"
            )
        y = residue
        for _ in range(self.m - 1):
            y = self.pow(y, self.q)
        return y

    def primitive_residue(self) -> Coeffs:
        return _primitive_residue(self.descriptor.residue_field())

    def multiplicative_order(self, a: Coeffs) -> int:
        """Order of a unit of the residue field (computed mod p)"""
        field = ring_engine(self.descriptor.residue_field())
        a = field.coerce(a)
        if not field.is_unit(a):
            raise NotAUnit(f"{list(a)} is zero in the residue field")
        order = self.q - 1
        for prime in factorint(order):
            while order % prime == 0 and field.pow(a, order // prime) == field.one:
                order //= prime
        return order

    # enumeration

    def enumerate(
        self,
        filter: Literal["all", "units"] = "all",  # pylint: disable=redefined-builtin
        cap: Optional[int] = None,
    ) -> Iterator[Coeffs]:
        cap = cap or LOCAL_CONFIG.RING_ENUMERATION_CAP
        if self.size > cap:
            raise EnumerationTooLarge(str(self.descriptor), self.size, cap)
        for coeffs in itertools.product(range(self.modulo), repeat=self.n):
            if filter == "units" and not self.is_unit(coeffs):
                continue
            yield coeffs

    def units_count(self) -> int:
        return self.p ** (self.n * (self.m - 1)) * (self.q - 1)


@lru_cache(maxsize=None)
def ring_engine(descriptor: RingDescriptor) -> WittRing:
    return WittRing(descriptor)


@lru_cache(maxsize=None)
def _primitive_residue(field: RingDescriptor) -> Coeffs:
    engine = ring_engine(field)
    for a in engine.enumerate("units"):
        if engine.multiplicative_order(a) == field.q - 1:
            return a
    raise InvalidArgumentError(  # pragma: no cover
        f"No primitive element in {field}"
    )


class WittElement:
    """An element of W_m(F_{p^n}) in canonical polynomial form"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingDescriptor, coeffs: Coeffs):
        self.ring = ring
        self.coeffs = coeffs

    @property
    def engine(self) -> WittRing:
        return ring_engine(self.ring)

    def _other(self, other) -> Coeffs:
        if isinstance(other, int):
            return self.engine.from_int(other)
        if not isinstance(other, WittElement):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(self.ring, other.ring)
        return other.coeffs

    def _wrap(self, coeffs: Coeffs) -> "WittElement":
        return WittElement(self.ring, coeffs)

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.engine.add(self.coeffs, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.engine.sub(self.coeffs, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.engine.sub(b, self.coeffs))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.engine.mul(self.coeffs, b))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.engine.neg(self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.engine.pow(self.coeffs, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.engine.from_int(other)
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __lt__(self, other: "WittElement"):
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"WittElement({list(self.coeffs)} in {self.ring})"

    def inverse(self) -> "WittElement":
        return self._wrap(self.engine.inv(self.coeffs))

    def frobenius(
        self, direction: Literal["forward", "inverse"] = "forward"
    ) -> "WittElement":
        if direction == "forward":
            return self._wrap(self.engine.sigma(self.coeffs))
        return self._wrap(self.engine.sigma_inv(self.coeffs))

    def valuation(self) -> Valuation:
        return self.engine.valuation(self.coeffs)

    def is_unit(self) -> bool:
        return self.engine.is_unit(self.coeffs)

    def residue(self) -> Coeffs:
        return self.engine.residue(self.coeffs)

    def change_precision(self, m: int) -> "WittElement":
        target = self.ring.reduce(m)
        return WittElement(target, self.engine.reduce(self.coeffs, m))

    def to_json(self) -> List[int]:
        return list(self.coeffs)


def ring_arith(
    a: WittElement,
    b: Optional[WittElement],
    op: Literal["add", "sub", "mul", "neg"],
) -> WittElement:
    if op == "neg":
        return -a
    if b is None:
        raise InvalidArgumentError(f"'{op}' needs two operands")
    if a.ring != b.ring:
        raise RingMismatch(a.ring, b.ring)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InvalidArgumentError(f"Unknown ring operation '{op}'")


def unit_inverse(a: WittElement) -> WittElement:
    return a.inverse()


def frobenius(
    a: WittElement, direction: Literal["forward", "inverse"] = "forward"
) -> WittElement:
    return a.frobenius(direction)


def teichmuller(ring: RingDescriptor, residue: Sequence[int]) -> WittElement:
    return WittElement(ring, ring.engine.teichmuller(residue))


def valuation(a: WittElement) -> Valuation:
    return a.valuation()


def change_precision(a: WittElement, m: int) -> WittElement:
    return a.change_precision(m)


def enumerate_ring(
    ring: RingDescriptor,
    filter: Literal["all", "units"] = "all",  # pylint: disable=redefined-builtin
    cap: Optional[int] = None,
) -> Iterator[WittElement]:
    for coeffs in ring.engine.enumerate(filter, cap=cap):
        yield WittElement(ring, coeffs)
