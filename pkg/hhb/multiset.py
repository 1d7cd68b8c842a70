"""hhb.multiset — Canonical multisets of vertex indices.

A multiset [v_1, ..., v_i] is stored as a sorted tuple of
(vertex index, multiplicity) pairs, so equal multisets compare and hash
equal no matter how they were written down.

Usage:
    tau = Multiset.of([1, 1, 0])
    sigma = Multiset.of([1])
    submultiset_count(sigma, tau)  # 2
    for sub, count in tau.submultisets(2):
        ...
"""

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import comb
from typing import Iterable, Iterator


@dataclass(frozen=True, order=False)
class Multiset:
    """A finite multiset of non-negative vertex indices in canonical form."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = -1
        for vertex, multiplicity in self.entries:
            if vertex <= previous or multiplicity < 1:
                raise ValueError(f"Non-canonical multiset entries: {self.entries}")
            previous = vertex

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Multiset":
        """Build the canonical multiset holding the given vertices."""
        counts = Counter(int(v) for v in vertices)
        if any(v < 0 for v in counts):
            raise ValueError(f"Negative vertex index in {sorted(counts)}")
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def empty(cls) -> "Multiset":
        return cls(())

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def size(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.entries)

    def multiplicity(self, vertex: int) -> int:
        for v, m in self.entries:
            if v == vertex:
                return m
        return 0

    def elements(self) -> tuple[int, ...]:
        """Expanded ascending tuple, e.g. [0, 1, 1] for {0: 1, 1: 2}."""
        return tuple(v for v, m in self.entries for _ in range(m))

    def orderings(self) -> Iterator[tuple[int, ...]]:
        """All k! orderings of the elements, repetitions included."""
        return permutations(self.elements())

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def __add__(self, other: "Multiset") -> "Multiset":
        counts = Counter(dict(self.entries))
        counts.update(dict(other.entries))
        return Multiset(tuple(sorted(counts.items())))

    def __sub__(self, other: "Multiset") -> "Multiset":
        counts = Counter(dict(self.entries))
        for v, m in other.entries:
            if counts[v] < m:
                raise ValueError(f"{other} is not a sub-multiset of {self}")
            counts[v] -= m
        return Multiset(tuple(sorted((v, m) for v, m in counts.items() if m > 0)))

    def contains(self, other: "Multiset") -> bool:
        own = dict(self.entries)
        return all(own.get(v, 0) >= m for v, m in other.entries)

    def submultisets(self, size: int) -> Iterator[tuple["Multiset", int]]:
        """Yield each distinct sub-multiset of the given size with its count.

        The count is the number of position subsets of this multiset that
        produce the sub-multiset, so counts sum to C(self.size, size).
        """
        if size < 0 or size > self.size:
            return
        vertices = [v for v, _ in self.entries]
        ranges = [range(m + 1) for _, m in self.entries]
        for choice in product(*ranges):
            if sum(choice) != size:
                continue
            count = 1
            for c, (_, m) in zip(choice, self.entries):
                count *= comb(m, c)
            sub = tuple((v, c) for v, c in zip(vertices, choice) if c > 0)
            yield Multiset(sub), count

    # ------------------------------------------------------------------
    # Ordering / display
    # ------------------------------------------------------------------

    def sort_key(self) -> tuple[int, ...]:
        return self.elements()

    def __lt__(self, other: "Multiset") -> bool:
        return self.elements() < other.elements()

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.elements()) + "]"


def submultiset_count(sigma: Multiset, tau: Multiset) -> int:
    """Number of position subsets of tau yielding sigma (0 if not contained).

    Equals the product over vertices e of C(mult_tau(e), mult_sigma(e)).
    """
    own = dict(tau.entries)
    count = 1
    for v, m in sigma.entries:
        count *= comb(own.get(v, 0), m)
        if count == 0:
            return 0
    return count
