"""Symmetric-group machinery: cycles, pairing graphs, matchers, compositions.

Everything here is exact integer/rational combinatorics.  Permutations act on
*sequences* by relabelling positions: position ``a`` of the transformed
sequence holds ``seq[p(a)]``.  With that convention, applying ``q`` to the
result of applying ``p`` is the same as applying the single permutation
``p * q`` (a right action), which is the composition order used throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "Perm",
    "identity",
    "from_cycles",
    "cycle_decomposition",
    "transposition_norm",
    "moebius",
    "coset_type",
    "is_hyperoctahedral",
    "block_cycle_permutation",
    "adjacent_swap_permutation",
    "constrained_compositions",
    "SetPartition",
    "set_partitions",
    "enumerate_matchers",
    "matcher_count",
]


@dataclass(frozen=True)
class Perm:
    """A permutation of {0, ..., m-1} in one-line form.

    ``map[i]`` is the image of ``i``.  Instances are immutable and hashable.
    """

    map: tuple[int, ...]

    def __post_init__(self):
        m = len(self.map)
        if sorted(self.map) != list(range(m)):
            raise ValueError(f"not a bijection of 0..{m - 1}: {self.map!r}")

    @property
    def degree(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def apply(self, seq):
        """Relabel positions of ``seq``: entry ``a`` of the result is ``seq[p(a)]``."""
        if len(seq) != len(self.map):
            raise ValueError("sequence length does not match permutation degree")
        return tuple(seq[j] for j in self.map)

    def compose(self, other: "Perm") -> "Perm":
        """Return the composition i -> self(other(i))."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.map[j] for j in other.map))

    def __mul__(self, other: "Perm") -> "Perm":
        return self.compose(other)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.map)
        for i, j in enumerate(self.map):
            inv[j] = i
        return Perm(tuple(inv))


def identity(m: int) -> Perm:
    return Perm(tuple(range(m)))


def from_cycles(m: int, cycles) -> Perm:
    """Build a degree-``m`` permutation from disjoint cycles of 0-based labels.

    A cycle ``(a, b, c)`` maps a -> b -> c -> a.  Labels absent from every
    cycle are fixed points.
    """
    mapping = list(range(m))
    seen = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < m:
                raise ValueError(f"label {x} outside 0..{m - 1}")
            if x in seen:
                raise ValueError(f"label {x} repeated across cycles")
            seen.add(x)
        for i, x in enumerate(cyc):
            mapping[x] = cyc[(i + 1) % len(cyc)]
    return Perm(tuple(mapping))


def cycle_decomposition(p: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p``, each starting at its smallest element.

    Cycles are sorted by that smallest element; fixed points appear as
    singleton cycles.
    """
    seen = [False] * p.degree
    cycles = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p.map[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p.map[x]
        cycles.append(tuple(cyc))
    return cycles


def transposition_norm(p: Perm) -> int:
    """Minimal number of transpositions whose product is ``p``.

    Equals degree minus the number of cycles (fixed points included).
    """
    return p.degree - len(cycle_decomposition(p))


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def moebius(p: Perm) -> Fraction:
    """Product over cycles of signed Catalan numbers: each cycle of length
    ``c`` contributes ``(-1)**(c-1) * Catalan(c-1)``.

    A class function of the cycle type; always an integer, returned as an
    exact :class:`~fractions.Fraction`.
    """
    out = 1
    for cyc in cycle_decomposition(p):
        c = len(cyc)
        out *= (-1) ** (c - 1) * _catalan(c - 1)
    return Fraction(out)


def _pair_component_sizes(mapping) -> list[int]:
    """Component sizes of the graph on positions 0..2m-1 whose edges are the
    fixed pairs (2k, 2k+1) together with the mapped pairs (p(2k), p(2k+1))."""
    n = len(mapping)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for k in range(0, n, 2):
        union(k, k + 1)
        union(mapping[k], mapping[k + 1])
    sizes = {}
    for x in range(n):
        r = find(x)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values(), reverse=True)


def coset_type(p: Perm) -> tuple[tuple[int, ...], int]:
    """Coset type of an even-degree permutation.

    Overlay the fixed pairing {(0,1), (2,3), ...} with its image pairing
    {(p(0),p(1)), (p(2),p(3)), ...}; every connected component of the
    resulting graph has even size 2*eta_i.  Returns the partition
    ``(eta_1 >= eta_2 >= ...)`` of half the degree and its length.
    """
    if p.degree % 2:
        raise ValueError("coset type requires even degree")
    sizes = _pair_component_sizes(p.map)
    parts = tuple(s // 2 for s in sizes)
    return parts, len(parts)


def is_hyperoctahedral(p: Perm) -> bool:
    """True iff ``p`` maps the fixed pairing {(0,1),(2,3),...} onto itself.

    Equivalent to the coset type being (1, 1, ..., 1), i.e. of maximal
    length: degree/2 components.
    """
    return coset_type(p)[1] == p.degree // 2


def block_cycle_permutation(k, n: int | None = None) -> Perm:
    """Direct sum of full-cycle rotations prescribed by a weighted composition.

    ``k = (k_1, ..., k_K)`` requests, for each part size ``a``, ``k_a``
    consecutive blocks of length ``2a``; on each block the permutation is the
    rotation i -> i+1 (cyclically).  The degree is ``2 * sum(a * k_a)``.

    If ``n`` is given it must equal ``sum(a * k_a)``.
    """
    weight = sum((a + 1) * ka for a, ka in enumerate(k))
    if any(ka < 0 for ka in k):
        raise ValueError("negative multiplicity in composition")
    if n is not None and weight != n:
        raise ValueError(f"composition {k!r} has weight {weight}, expected {n}")
    mapping = []
    pos = 0
    for a, ka in enumerate(k):
        size = 2 * (a + 1)
        for _ in range(ka):
            mapping.extend(pos + (i + 1) % size for i in range(size))
            pos += size
    return Perm(tuple(mapping))


def adjacent_swap_permutation(degree: int) -> Perm:
    """The involution (0 1)(2 3)...(degree-2 degree-1)."""
    if degree % 2:
        raise ValueError("degree must be even")
    return Perm(tuple(x ^ 1 for x in range(degree)))


def constrained_compositions(n: int) -> list[tuple[int, ...]]:
    """All multiplicity vectors ``(k_1, ..., k_n)`` with sum(a * k_a) == n.

    These are the integer partitions of ``n`` written as multiplicity
    vectors; returned in descending lexicographic order.  ``n = 0`` yields the
    single empty composition.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return [()]
    out = []

    def descend(remaining, max_part, counts):
        if remaining == 0:
            out.append(tuple(counts))
            return
        for part in range(min(remaining, max_part), 0, -1):
            counts[part - 1] += 1
            descend(remaining - part, part, counts)
            counts[part - 1] -= 1

    descend(n, n, [0] * n)
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class SetPartition:
    """A partition of {0, ..., n-1} into disjoint blocks."""

    blocks: tuple[tuple[int, ...], ...]
    n: int

    def factorial_weight(self) -> int:
        """Product of the factorials of the block sizes."""
        out = 1
        for b in self.blocks:
            out *= factorial(len(b))
        return out


def set_partitions(n: int):
    """Yield every partition of {0, ..., n-1}; the count is the Bell number."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield SetPartition(blocks=(), n=0)
        return

    def extend(blocks, next_elem):
        if next_elem == n:
            yield SetPartition(
                blocks=tuple(tuple(b) for b in blocks), n=n
            )
            return
        for i in range(len(blocks)):
            blocks[i].append(next_elem)
            yield from extend(blocks, next_elem + 1)
            blocks[i].pop()
        blocks.append([next_elem])
        yield from extend(blocks, next_elem + 1)
        blocks.pop()

    yield from extend([[0]], 1)


def _positions_by_value(seq):
    pos = {}
    for i, v in enumerate(seq):
        pos.setdefault(v, []).append(i)
    return pos


def _matcher_maps(g, h):
    """Yield raw one-line maps of every permutation rho with rho(g) = h.

    rho(g) = h means g[rho(a)] == h[a] for every position a, so for each
    value the positions carrying it in h are matched bijectively onto the
    positions carrying it in g.  Enumeration is the product of those
    per-value bijections, never a scan of the full symmetric group.
    """
    if len(g) != len(h):
        raise ValueError("sequences must have equal length")
    gpos = _positions_by_value(g)
    hpos = _positions_by_value(h)
    if set(gpos) != set(hpos):
        return
    values = sorted(gpos)
    if any(len(gpos[v]) != len(hpos[v]) for v in values):
        return
    per_value = [itertools.permutations(gpos[v]) for v in values]
    for assignment in itertools.product(*per_value):
        mapping = [0] * len(g)
        for v, image in zip(values, assignment):
            for hp, gp in zip(hpos[v], image):
                mapping[hp] = gp
        yield mapping


def enumerate_matchers(g, h):
    """Yield every permutation rho with rho(g) = h (possibly none).

    Multiset mismatch between ``g`` and ``h`` yields nothing.  The number of
    matchers is the product of the factorials of the value multiplicities.
    """
    for mapping in _matcher_maps(g, h):
        yield Perm(tuple(mapping))


def matcher_count(g, h) -> int:
    """Number of permutations rho with rho(g) = h, without enumeration."""
    if len(g) != len(h):
        raise ValueError("sequences must have equal length")
    gpos = _positions_by_value(g)
    hpos = _positions_by_value(h)
    if set(gpos) != set(hpos):
        return 0
    out = 1
    for v, plist in gpos.items():
        if len(plist) != len(hpos[v]):
            return 0
        out *= factorial(len(plist))
    return out
