"""GF(p) and GF(p^2) arithmetic, primitive elements, discrete-log tables.

Only prime p is supported, so GF(p^2) is always the quadratic extension
``GF(p)[theta]`` with ``theta^2 = c0 + c1*theta``:

* odd p: ``theta^2 = s`` with s the smallest quadratic non-residue mod p
* p = 2: ``theta^2 = theta + 1`` (reduction polynomial x^2 + x + 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAX_PRIME = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def smallest_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(p)}
    return next(s for s in range(2, p) if s not in squares)


@dataclass(frozen=True)
class ExtField:
    """GF(p^2) as ``GF(p)[theta] / (theta^2 - c1*theta - c0)``."""

    p: int
    c0: int
    c1: int

    @property
    def order(self) -> int:
        return self.p * self.p

    @property
    def s(self) -> int | None:
        """The non-residue with ``theta^2 = s`` (odd p only)."""
        return self.c0 if self.c1 == 0 else None

    def reduction(self) -> tuple[int, int, int]:
        """Coefficients (1, b, c) of the monic reduction polynomial x^2 + b x + c."""
        p = self.p
        return 1, (-self.c1) % p, (-self.c0) % p

    def __call__(self, x: int = 0, y: int = 0) -> "FieldElement":
        return FieldElement(x % self.p, y % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return self(0, 0)

    @property
    def one(self) -> "FieldElement":
        return self(1, 0)

    @property
    def theta(self) -> "FieldElement":
        return self(0, 1)

    def elements(self):
        """All elements in lexicographic (x, y) order."""
        for x in range(self.p):
            for y in range(self.p):
                yield self(x, y)

    def nonzero(self):
        for e in self.elements():
            if e:
                yield e


@dataclass(frozen=True)
class FieldElement:
    """``x + theta*y`` with coefficients reduced mod p."""

    x: int
    y: int
    field: ExtField

    def _check(self, other):
        if isinstance(other, int):
            return self.field(other, 0)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise TypeError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return self.field(-self.x, -self.y)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field(self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        # (x1 + t y1)(x2 + t y2) with t^2 = c0 + c1 t
        yy = self.y * other.y
        return F(self.x * other.x + F.c0 * yy,
                 self.x * other.y + self.y * other.x + F.c1 * yy)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        """Square-and-multiply; ``e = 0`` gives 1, including ``0 ** 0``."""
        if e < 0:
            raise ValueError("negative exponents are not supported")
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.x or self.y)

    def in_base_field(self) -> bool:
        return self.y == 0

    def __repr__(self):
        return f"({self.x}+{self.y}θ mod {self.field.p})"


@lru_cache(maxsize=None)
def build_extension(p: int) -> ExtField:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise ValueError(f"p = {p} exceeds the supported range (<= {MAX_PRIME})")
    if p == 2:
        return ExtField(2, 1, 1)
    return ExtField(p, smallest_nonresidue(p), 0)


def is_primitive(g: FieldElement) -> bool:
    if not g:
        return False
    q1 = g.field.order - 1
    if g ** q1 != g.field.one:
        return False
    return all(g ** (q1 // r) != g.field.one for r in prime_factors(q1))


@lru_cache(maxsize=None)
def find_primitive(F: ExtField) -> FieldElement:
    """First element in lexicographic (x, y) order of multiplicative order p^2 - 1."""
    q1 = F.order - 1
    factors = prime_factors(q1)
    one = F.one
    for g in F.nonzero():
        if all(g ** (q1 // r) != one for r in factors):
            return g
    raise AssertionError("GF(p^2)* is cyclic; a generator must exist")


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteLogTable:
    generator: FieldElement
    log: dict[FieldElement, int]

    def __getitem__(self, e: FieldElement) -> int:
        return self.log[e]

    def __len__(self):
        return len(self.log)

    def power(self, exponent: int) -> FieldElement:
        """``g^exponent`` by inverse lookup (exponent taken mod p^2 - 1)."""
        q1 = len(self.log)
        exponent = (exponent - 1) % q1 + 1
        return self._inverse()[exponent]

    def _inverse(self):
        inv = self.__dict__.get("_inv")
        if inv is None:
            inv = {v: k for k, v in self.log.items()}
            object.__setattr__(self, "_inv", inv)
        return inv


def dlog_table(F: ExtField, g: FieldElement) -> DiscreteLogTable:
    """Logs in ``[1, p^2 - 1]`` by iterated multiplication; ``log(1) = p^2 - 1``."""
    if g.field != F:
        raise TypeError("generator belongs to a different field")
    q1 = F.order - 1
    log = {}
    x = g
    for e in range(1, q1 + 1):
        if x in log or not x:
            break
        log[x] = e
        if x == F.one:
            break
        x = x * g
    if len(log) != q1:
        raise NotPrimitiveError(f"{g} has order {len(log)} < {q1}")
    return DiscreteLogTable(g, log)
