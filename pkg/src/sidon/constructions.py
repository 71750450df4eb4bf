"""Sidon-type sets: powers of two, greedy, Bose-Chowla and its l-thin quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .core import Cyclic, IntegerSet, is_sidon, is_thin
from .field import build_extension, find_primitive


@dataclass(frozen=True)
class ConstructionRecord:
    set: IntegerSet
    method: str
    parameters: dict[str, Any] = field(default_factory=dict)
    verified: bool = False

    def header(self) -> list[str]:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        return [f"method={self.method} {params}".strip()]


def powers_of_two(n: int) -> IntegerSet:
    if n < 1:
        raise ValueError("n must be positive")
    return IntegerSet.interval([1 << i for i in range(n.bit_length())], n)


def greedy_sidon(n: int, seed: IntegerSet | None = None) -> IntegerSet:
    """Repeatedly adjoin the smallest admissible x in [n].

    x is admissible when it is not of the form ``a + b - c`` and not a
    midpoint ``(a + b) / 2`` of the current set.  The midpoint case only
    arises below the current maximum, i.e. with a non-empty seed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    elems = list(seed.elements) if seed is not None else []
    if elems and elems[-1] > n:
        raise ValueError("seed does not lie in [n]")
    if not is_sidon(IntegerSet(tuple(elems))):
        raise ValueError("seed is not a Sidon set")

    blocked = bytearray(n + 1)

    def block(v):
        if 1 <= v <= n:
            blocked[v] = 1

    current: list[int] = []
    for x in elems:
        _adjoin(current, x, block)

    x = 1
    while x <= n:
        if not blocked[x]:
            _adjoin(current, x, block)
        x += 1
    return IntegerSet.interval(current, n)


def _adjoin(current: list[int], x: int, block) -> None:
    current.append(x)
    for b in current:
        for c in current:
            block(x + b - c)
            block(b + c - x)
        if (x + b) % 2 == 0:
            block((x + b) // 2)


def _bose_chowla_raw(p: int):
    F = build_extension(p)
    g = find_primitive(F)
    q1 = p * p - 1
    out = []
    x = F.one
    for a in range(1, q1 + 1):
        x = x * g
        # g^a - g lies in GF(p) iff the theta-coefficients agree
        if x.y == g.y:
            out.append(a)
    return out, g


def bose_chowla(p: int) -> IntegerSet:
    """``{a in [p^2-1] : g^a - g in GF(p)}`` as a cyclic set mod ``p^2 - 1``."""
    elems, _ = _bose_chowla_raw(p)
    return IntegerSet.cyclic(elems, p * p - 1)


def bose_chowla_record(p: int) -> ConstructionRecord:
    elems, g = _bose_chowla_raw(p)
    A = IntegerSet.cyclic(elems, p * p - 1)
    ok = len(A) == p and is_sidon(A)
    return ConstructionRecord(A, "bose_chowla", {"p": p, "ell": 1, "generator": [g.x, g.y]}, ok)


def _check_thin_params(p: int, ell: int) -> None:
    if ell < 1 or (p - 1) % ell:
        raise ValueError(f"ell = {ell} must divide p - 1 = {p - 1}")


def thin_from_bose_chowla(p: int, ell: int) -> IntegerSet:
    """Reduce the Bose-Chowla set modulo ``(p^2 - 1) / ell``."""
    _check_thin_params(p, ell)
    elems, _ = _bose_chowla_raw(p)
    M = (p * p - 1) // ell
    reps = {(a - 1) % M + 1 for a in elems}
    if len(reps) != len(elems):
        raise RuntimeError(f"reduction mod {M} collided; field arithmetic is broken")
    return IntegerSet(tuple(reps), Cyclic(M))


def thin_direct(p: int, ell: int) -> IntegerSet:
    """``{x in [M] : g^(x + yM) - g in GF(p) for some y in [ell]}``, ``M = (p^2-1)/ell``.

    Evaluated by fresh exponentiation, independently of the quotient route.
    """
    _check_thin_params(p, ell)
    F = build_extension(p)
    g = find_primitive(F)
    M = (p * p - 1) // ell
    hits = [x for x in range(1, M + 1)
            if any((g ** (x + y * M) - g).in_base_field() for y in range(1, ell + 1))]
    if len(hits) != p:
        raise RuntimeError(f"expected {p} elements, found {len(hits)}")
    return IntegerSet(tuple(hits), Cyclic(M))


def thin_record(p: int, ell: int) -> ConstructionRecord:
    A = thin_from_bose_chowla(p, ell)
    g = find_primitive(build_extension(p))
    ok = len(A) == p and is_thin(A, ell)
    return ConstructionRecord(A, "thin_quotient", {"p": p, "ell": ell, "generator": [g.x, g.y]}, ok)


def greedy_record(n: int, seed: IntegerSet | None = None) -> ConstructionRecord:
    A = greedy_sidon(n, seed)
    params = {"n": n, "seed": list(seed.elements) if seed else []}
    return ConstructionRecord(A, "greedy", params, is_sidon(A))


def powers_of_two_record(n: int) -> ConstructionRecord:
    A = powers_of_two(n)
    return ConstructionRecord(A, "powers_of_two", {"n": n}, is_sidon(A))


__all__ = [
    "ConstructionRecord", "powers_of_two", "greedy_sidon", "bose_chowla",
    "thin_from_bose_chowla", "thin_direct", "bose_chowla_record", "thin_record",
    "greedy_record", "powers_of_two_record",
]
