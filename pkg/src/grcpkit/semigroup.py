"""Coloring semigroups of d-out digraphs and the structure of their kernels.

Maps act on the right: ``v(RS) = (vR)S``, so ``R * S`` means "apply R,
then S". This is the same as multiplying the 0-1 matrices ``R @ S``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .digraph import Digraph, Partition
from .exceptions import (
    CongruenceViolation,
    DiscreteStability,
    InternalInvariantError,
    InvalidColoring,
    InvalidInput,
    NotARange,
    NotInKernel,
    SizeCapExceeded,
)

DEFAULT_MAX_SEMIGROUP = 200_000


class VertexMap(tuple):
    """Total function on ``range(n)`` stored as its image tuple.

    ``a * b`` is composition in diagram order, ``v -> b[a[v]]``.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> VertexMap:
        return cls(range(n))

    @classmethod
    def constant(cls, n: int, value: int) -> VertexMap:
        return cls((value,) * n)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def n(self) -> int:
        return len(self)

    def __mul__(self, other: VertexMap) -> VertexMap:
        return VertexMap(other[x] for x in self)

    def __rmul__(self, other):
        return NotImplemented

    def __pow__(self, k: int) -> VertexMap:
        if k < 1:
            raise ValueError("only positive powers are defined in a semigroup")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def apply(self, vertices: Iterable[int]) -> set[int]:
        return {self[v] for v in vertices}

    @property
    def range(self) -> frozenset[int]:
        return frozenset(self)

    @property
    def rank(self) -> int:
        return len(set(self))

    @property
    def kernel_partition(self) -> Partition:
        fibers: dict[int, set[int]] = {}
        for v, x in enumerate(self):
            fibers.setdefault(x, set()).add(v)
        return Partition(tuple(fibers.values()), n=len(self))

    def is_idempotent(self) -> bool:
        return all(self[x] == x for x in self)

    def is_permutation(self) -> bool:
        return len(set(self)) == len(self)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = len(self)
        return tuple(tuple(1 if self[j] == k else 0 for k in range(n)) for j in range(n))

    def __repr__(self) -> str:
        return f"VertexMap({list(self)})"


def apply_word(maps: Sequence[VertexMap], word: Sequence[int], n: int | None = None) -> VertexMap:
    """Map induced by a color word (0-based color indices); the empty word is the identity."""
    n = len(maps[0]) if n is None else n
    out = VertexMap.identity(n)
    for c in word:
        out = out * maps[c]
    return out


@dataclass(frozen=True)
class Coloring:
    """Decomposition of a d-out digraph into ``d`` vertex maps, one per color."""

    graph: Digraph
    maps: tuple[VertexMap, ...]

    def __post_init__(self):
        maps = tuple(VertexMap(m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        g = self.graph
        if not maps:
            raise InvalidColoring("a coloring needs at least one color")
        n = g.n
        counts = [[0] * n for _ in range(n)]
        for m in maps:
            if len(m) != n or any(not 0 <= x < n for x in m):
                raise InvalidColoring(f"{m!r} is not a map on {n} vertices")
            for j, k in enumerate(m):
                counts[j][k] += 1
        if tuple(map(tuple, counts)) != g.adj:
            raise InvalidColoring("the color maps do not sum to the adjacency matrix")

    @classmethod
    def from_maps(cls, maps: Sequence[Sequence[int]]) -> Coloring:
        """Coloring of the graph that the maps themselves define."""
        maps = [VertexMap(m) for m in maps]
        n = len(maps[0])
        return cls(Digraph.from_edges(n, ((v, m[v]) for m in maps for v in range(n))), tuple(maps))

    @property
    def d(self) -> int:
        return len(self.maps)

    @property
    def n(self) -> int:
        return self.graph.n

    def word_map(self, word: Sequence[int]) -> VertexMap:
        return apply_word(self.maps, word, self.n)


def _distinct_permutations(items: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(items)))


def coloring_count(g: Digraph) -> int:
    """Number of distinct colorings: product over vertices of ``d! / prod mult!``."""
    d = g.degree
    return prod(factorial(d) // prod(factorial(m) for m in row) for row in g.adj)


def enumerate_colorings(g: Digraph) -> Iterator[Coloring]:
    """Every coloring of ``g`` exactly once, in canonical lexicographic order.

    Vertex 0 is the most significant position; at each vertex the sorted
    out-neighbour multiset is dealt to colors in every distinct order.
    """
    d = g.degree
    choices = [_distinct_permutations(g.successors(v)) for v in range(g.n)]
    for combo in itertools.product(*choices):
        maps = tuple(VertexMap(combo[v][c] for v in range(g.n)) for c in range(d))
        yield Coloring(g, maps)


class Semigroup:
    """Finite transformation semigroup generated by color maps.

    ``elements`` are listed in discovery order, which is shortlex order of
    their witness words.
    """

    def __init__(
        self,
        generators: Sequence[VertexMap],
        elements: Sequence[VertexMap],
        words: dict[VertexMap, tuple[int, ...]],
    ):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.words = words

    @property
    def n(self) -> int:
        return len(self.generators[0])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[VertexMap]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.words

    def word(self, x: VertexMap) -> tuple[int, ...]:
        return self.words[x]

    @cached_property
    def kernel(self) -> Kernel:
        return kernel(self)

    def __repr__(self) -> str:
        return f"Semigroup(n={self.n}, generators={len(self.generators)}, size={len(self)})"


def generate(source: Coloring | Sequence[Sequence[int]], max_size: int = DEFAULT_MAX_SEMIGROUP) -> Semigroup:
    """Close the generators under composition, breadth first over word length.

    Each element keeps the shortest word producing it, ties going to the
    lexicographically smallest color sequence.
    """
    gens = source.maps if isinstance(source, Coloring) else tuple(VertexMap(m) for m in source)
    if not gens:
        raise InvalidInput("need at least one generator")
    words: dict[VertexMap, tuple[int, ...]] = {}
    order: list[VertexMap] = []
    frontier: deque[VertexMap] = deque()
    for c, g in enumerate(gens):
        if g not in words:
            words[g] = (c,)
            order.append(g)
            frontier.append(g)
    while frontier:
        x = frontier.popleft()
        wx = words[x]
        for c, g in enumerate(gens):
            y = x * g
            if y not in words:
                words[y] = wx + (c,)
                order.append(y)
                frontier.append(y)
                if len(order) > max_size:
                    raise SizeCapExceeded(f"semigroup exceeds {max_size} elements", max_size)
    return Semigroup(gens, order, words)


def _partition_key(p: Partition) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in p.blocks))


@dataclass(frozen=True, eq=False)
class Kernel:
    """Minimal ideal of a coloring semigroup."""

    semigroup: Semigroup
    elements: tuple[VertexMap, ...]
    rank: int
    ranges: tuple[frozenset[int], ...]
    partitions: tuple[Partition, ...]
    idempotents: tuple[VertexMap, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[VertexMap]:
        return iter(self.elements)

    @cached_property
    def _members(self) -> frozenset[VertexMap]:
        return frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    def shortest_element(self) -> VertexMap:
        """Kernel element with the shortlex-least witness word."""
        return self.elements[0]


def kernel(s: Semigroup) -> Kernel:
    """Minimal ideal, computed as the minimal-rank stratum and checked to be an ideal."""
    if not len(s):
        raise InvalidInput("empty semigroup")
    r = min(x.rank for x in s)
    elems = tuple(x for x in s if x.rank == r)
    members = set(elems)
    for k in elems:
        for g in s.generators:
            # closure under the generators on both sides gives the ideal property
            if k * g not in members or g * k not in members:
                raise InternalInvariantError(
                    "minimal-rank stratum is not an ideal",
                    {"element": list(k), "generator": list(g)},
                )
    ranges = tuple(sorted({k.range for k in elems}, key=lambda b: tuple(sorted(b))))
    parts: dict[tuple, Partition] = {}
    for k in elems:
        p = k.kernel_partition
        parts.setdefault(_partition_key(p), p)
    partitions = tuple(parts[key] for key in sorted(parts))
    idempotents = tuple(k for k in elems if k.is_idempotent())
    return Kernel(s, elems, r, ranges, partitions, idempotents)


def _require_member(k: Kernel, x: VertexMap) -> None:
    if x not in k:
        raise NotInKernel(f"{x!r} is not a kernel element")


def minimal_left_ideal(k: Kernel, m: VertexMap) -> frozenset[VertexMap]:
    """``K m``: the kernel elements sharing the range of ``m``."""
    _require_member(k, m)
    target = m.range
    return frozenset(x for x in k if x.range == target)


def minimal_right_ideal(k: Kernel, n: VertexMap) -> frozenset[VertexMap]:
    """``n K``: the kernel elements sharing the kernel partition of ``n``."""
    _require_member(k, n)
    target = n.kernel_partition
    return frozenset(x for x in k if x.kernel_partition == target)


@dataclass(frozen=True)
class MaximalGroup:
    elements: frozenset[VertexMap]
    identity: VertexMap
    order: int
    is_cyclic: bool


def maximal_group(k: Kernel, n: VertexMap, m: VertexMap) -> MaximalGroup:
    """The group ``n K m``: bijections from the blocks of ``n`` onto ``range(m)``."""
    h = minimal_right_ideal(k, n) & minimal_left_ideal(k, m)
    rng = m.range
    evidence = {"n": list(n), "m": list(m)}
    idem = [x for x in h if x.is_idempotent()]
    if len(idem) != 1:
        raise InternalInvariantError(f"expected one idempotent, found {len(idem)}", evidence)
    e = idem[0]
    if any(e[v] != v for v in rng):
        raise InternalInvariantError("idempotent is not the identity on the range", evidence)
    for x in h:
        if x.range != rng or sorted(x[v] for v in rng) != sorted(rng):
            raise InternalInvariantError("element does not permute the range", evidence)
        if not any(x * y == e for y in h):
            raise InternalInvariantError("element has no inverse", evidence)
        for y in h:
            if x * y not in h:
                raise InternalInvariantError("intersection is not closed", evidence)
    order = len(h)
    cyclic = any(_cyclic_order(g, e) == order for g in h)
    return MaximalGroup(h, e, order, cyclic)


def _cyclic_order(g: VertexMap, e: VertexMap) -> int:
    x, k = g, 1
    while x != e:
        x = x * g
        k += 1
    return k


def is_right_group(k: Kernel) -> bool:
    return len(k.partitions) == 1


def rees_coordinates(k: Kernel, e: VertexMap) -> dict[VertexMap, tuple[VertexMap, VertexMap, VertexMap]]:
    """Coordinates ``(x, g, y)`` in ``E(Ke) x eKe x E(eK)`` with ``x * g * y == k``."""
    if e not in k or not e.is_idempotent():
        raise NotInKernel("need an idempotent kernel element")
    left_e = [x for x in k.idempotents if x.range == e.range]
    right_e = [y for y in k.idempotents if y.kernel_partition == e.kernel_partition]
    out = {}
    for z in k:
        pz = z.kernel_partition
        x = next(x for x in left_e if x.kernel_partition == pz)
        y = next(y for y in right_e if y.range == z.range)
        out[z] = (x, e * z * e, y)
    return out


def stability_classes(s: Semigroup) -> Partition:
    """Meet of all kernel partitions; equals the stability relation."""
    return reduce(Partition.meet, s.kernel.partitions)


def stably_equivalent(s: Semigroup, x: int, y: int) -> bool:
    """Definitional check: every word can be extended to merge ``x`` and ``y``."""
    return all(any(w2[w1[x]] == w2[w1[y]] for w2 in s) for w1 in s)


def quotient_graph(g: Digraph, c: Coloring, stab: Partition) -> tuple[Digraph, Coloring]:
    """Collapse the stability classes; colors act on classes as ``[v] -> [v R]``."""
    if stab.is_discrete():
        raise DiscreteStability("stability is discrete; nothing to collapse")
    labels = stab.labels()
    q = len(stab)
    qmaps = []
    for color, r in enumerate(c.maps):
        img: list[int | None] = [None] * q
        for v in range(g.n):
            k, target = labels[v], labels[r[v]]
            if img[k] is None:
                img[k] = target
            elif img[k] != target:
                raise CongruenceViolation(
                    "classes are not respected by a color",
                    {"color": color + 1, "class": sorted(stab.blocks[k]), "vertex": v},
                )
        qmaps.append(VertexMap(img))
    qc = Coloring.from_maps(qmaps)
    return qc.graph, qc


def is_f_clique(s: Semigroup, b: Iterable[int], w: VertexMap) -> bool:
    """F-clique test through kernel membership of the witness ``w``."""
    b = frozenset(b)
    if w.range != b:
        raise NotARange("witness range differs from the given set")
    if w not in s:
        raise NotARange("witness is not an element of the semigroup")
    return w in s.kernel


def f_clique_by_definition(s: Semigroup, b: Iterable[int]) -> bool:
    """No element of ``s`` ever merges two distinct vertices of ``b``."""
    pts = sorted(b)
    pairs = list(itertools.combinations(pts, 2))
    return all(u[x] != u[y] for u in s for x, y in pairs)


def cross_section_check(b: Iterable[int], p: Partition) -> bool:
    """``|P & b| == 1`` for every block ``P``."""
    b = frozenset(b)
    return all(len(blk & b) == 1 for blk in p.blocks)
