"""Integer sets and the Sidon / weak-Sidon / thin predicates.

Interval sets live in ``[n] = {1, ..., n}``.  Cyclic sets store canonical
representatives in ``[1, M]``; residue ``M`` plays the role of 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Union


@dataclass(frozen=True)
class Interval:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"interval length must be positive, got {self.n}")


@dataclass(frozen=True)
class Cyclic:
    M: int

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"cyclic modulus must be >= 2, got {self.M}")


@dataclass(frozen=True)
class Unbounded:
    pass


Ambient = Union[Interval, Cyclic, Unbounded]
UNBOUNDED = Unbounded()


@dataclass(frozen=True)
class IntegerSet:
    """Strictly increasing positive integers with an ambient interval or modulus."""

    elements: tuple[int, ...]
    ambient: Ambient = UNBOUNDED

    def __post_init__(self):
        elems = tuple(sorted(int(e) for e in self.elements))
        if any(a == b for a, b in zip(elems, elems[1:])):
            raise ValueError("duplicate elements")
        if elems and elems[0] < 1:
            raise ValueError(f"elements must be >= 1, got {elems[0]}")
        top = self.bound
        if top is not None and elems and elems[-1] > top:
            raise ValueError(f"element {elems[-1]} outside ambient {self.ambient}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def interval(cls, elements: Iterable[int], n: int | None = None) -> "IntegerSet":
        elements = list(elements)
        if n is None:
            n = max(elements, default=1)
        return cls(tuple(elements), Interval(n))

    @classmethod
    def cyclic(cls, elements: Iterable[int], M: int) -> "IntegerSet":
        """Reduce to canonical representatives in ``[1, M]``; collisions are errors."""
        reps = [(e - 1) % M + 1 for e in elements]
        if len(set(reps)) != len(reps):
            raise ValueError(f"elements collide modulo {M}")
        return cls(tuple(reps), Cyclic(M))

    @property
    def k(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    @property
    def bound(self) -> int | None:
        if isinstance(self.ambient, Interval):
            return self.ambient.n
        if isinstance(self.ambient, Cyclic):
            return self.ambient.M
        return None

    @property
    def is_cyclic(self) -> bool:
        return isinstance(self.ambient, Cyclic)

    @property
    def modulus(self) -> int | None:
        return self.ambient.M if isinstance(self.ambient, Cyclic) else None

    @property
    def span(self) -> int:
        """Length n of the interval the set lives in (max element when unbounded)."""
        if isinstance(self.ambient, Interval):
            return self.ambient.n
        return self.elements[-1] if self.elements else 0

    def with_ambient(self, ambient: Ambient) -> "IntegerSet":
        return IntegerSet(self.elements, ambient)


def _require_integral(A: IntegerSet, what: str) -> None:
    if A.is_cyclic:
        raise ValueError(f"{what} is defined only for interval or unbounded sets")


def _positive_differences(elems):
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            yield b - a


def _cyclic_differences(elems, M):
    for a in elems:
        for b in elems:
            if a != b:
                yield (a - b) % M


def is_sidon(A: IntegerSet) -> bool:
    """All positive differences distinct (all nonzero residues distinct when cyclic)."""
    M = A.modulus
    seen = set()
    diffs = _cyclic_differences(A.elements, M) if M else _positive_differences(A.elements)
    for d in diffs:
        if d in seen:
            return False
        seen.add(d)
    return True


def is_weak_sidon(A: IntegerSet) -> bool:
    """True iff the sums ``a_i + a_j`` with ``i < j`` are pairwise distinct."""
    _require_integral(A, "weak Sidon")
    sums = 0
    for i, a in enumerate(A.elements):
        for b in A.elements[i + 1:]:
            bit = 1 << (a + b)
            if sums & bit:
                return False
            sums |= bit
    return True


@dataclass(frozen=True)
class DifferenceHistogram:
    """Multiplicity of each nonzero difference.

    Cyclic sets count ordered pairs per residue in ``[1, M-1]`` (total
    ``k(k-1)``).  Interval sets keep the positive side only, so each entry
    counts unordered pairs and the total is ``k(k-1)/2``.
    """

    entries: dict[int, int]
    modulus: int | None = None

    def __getitem__(self, d: int) -> int:
        return self.entries.get(d, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def max_multiplicity(self) -> int:
        return max(self.entries.values(), default=0)

    def support(self) -> range:
        top = self.modulus if self.modulus else max(self.entries, default=0) + 1
        return range(1, top)


def difference_histogram(A: IntegerSet) -> DifferenceHistogram:
    M = A.modulus
    if M:
        return DifferenceHistogram(dict(Counter(_cyclic_differences(A.elements, M))), M)
    return DifferenceHistogram(dict(Counter(_positive_differences(A.elements))))


def thinness(A: IntegerSet) -> int:
    """``max |A ∩ (A+c)|`` over ``c != 0``; A is l-thin iff this is <= l."""
    return difference_histogram(A).max_multiplicity()


def is_thin(A: IntegerSet, ell: int) -> bool:
    return thinness(A) <= ell


@dataclass(frozen=True)
class RepeatedDistanceSet:
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def values(self) -> frozenset[int]:
        return frozenset(self.counts)

    def __len__(self):
        return len(self.counts)


def repeated_distances(A: IntegerSet) -> RepeatedDistanceSet:
    """Positive differences realised by two or more unordered pairs."""
    _require_integral(A, "repeated distances")
    hist = Counter(_positive_differences(A.elements))
    return RepeatedDistanceSet({d: c for d, c in sorted(hist.items()) if c >= 2})


def order_differences(A: IntegerSet, ell: int) -> list[tuple[int, int, int]]:
    """Triples ``(i, j, a_j - a_i)`` (1-based) with ``i < j <= i + ell``."""
    k = A.k
    if not 1 <= ell <= k - 1:
        raise ValueError(f"order must lie in [1, {k - 1}], got {ell}")
    a = A.elements
    return [(i + 1, j + 1, a[j] - a[i])
            for i in range(k) for j in range(i + 1, min(i + ell, k - 1) + 1)]


def sums_collide(A: IntegerSet) -> bool:
    """Direct sum formulation: some ``a+b = c+d`` with ``{a,b} != {c,d}``."""
    sums = [a + b for a, b in combinations_with_replacement(A.elements, 2)]
    return len(set(sums)) < len(sums)


# --- shared set text format -------------------------------------------------

def parse_set_text(text: str) -> IntegerSet:
    """Parse whitespace-separated integers, '#' comments, optional ``mod M`` / ``n N`` header."""
    ambient: Ambient = UNBOUNDED
    values: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head in ("mod", "n"):
            if values or not isinstance(ambient, Unbounded):
                raise ValueError(f"header {line!r} must precede elements and appear once")
            try:
                size = int(rest.strip())
            except ValueError:
                raise ValueError(f"malformed header {line!r}") from None
            ambient = Cyclic(size) if head == "mod" else Interval(size)
            continue
        for tok in line.split():
            try:
                values.append(int(tok))
            except ValueError:
                raise ValueError(f"not an integer: {tok!r}") from None
    return IntegerSet(tuple(values), ambient)


def format_set_text(A: IntegerSet, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    if isinstance(A.ambient, Cyclic):
        lines.append(f"mod {A.ambient.M}")
    elif isinstance(A.ambient, Interval):
        lines.append(f"n {A.ambient.n}")
    lines.append(" ".join(map(str, A.elements)))
    return "\n".join(lines) + "\n"
