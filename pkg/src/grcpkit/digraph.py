"""Directed multigraphs, their periods and periodic partitions.

Vertices are ``0..n-1`` inside the library; the I/O layer and the CLI
translate to the 1-based labels used in reports.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .exceptions import InvalidInput, NotRegular, NotStronglyConnected
from .rational import RationalMatrix


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph given by an integer adjacency matrix.

    ``adj[i][j]`` is the number of parallel edges ``i -> j``. Every vertex
    must have at least one out-edge.
    """

    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        adj = tuple(tuple(int(x) for x in row) for row in self.adj)
        n = len(adj)
        if n < 1:
            raise InvalidInput("a digraph needs at least one vertex")
        for i, row in enumerate(adj):
            if len(row) != n:
                raise InvalidInput(f"row {i} has length {len(row)}, expected {n}")
            if any(x < 0 for x in row):
                raise InvalidInput(f"negative multiplicity in row {i}")
            if sum(row) < 1:
                raise InvalidInput(f"vertex {i} has no out-edge")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
        """Build from 0-based ``(i, j)`` pairs; repeated pairs add multiplicity."""
        adj = [[0] * n for _ in range(n)]
        for i, j in edges:
            adj[i][j] += 1
        return cls(tuple(map(tuple, adj)))

    @classmethod
    def from_successors(cls, succ: Sequence[Sequence[int]]) -> Digraph:
        n = len(succ)
        return cls.from_edges(n, ((i, j) for i, js in enumerate(succ) for j in js))

    @property
    def n(self) -> int:
        return len(self.adj)

    def out_degree(self, v: int) -> int:
        return sum(self.adj[v])

    def successors(self, v: int) -> list[int]:
        """Out-neighbours of ``v`` with multiplicity, sorted."""
        return [j for j, m in enumerate(self.adj[v]) for _ in range(m)]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Distinct edges ``(i, j)``, ignoring multiplicity."""
        for i, row in enumerate(self.adj):
            for j, m in enumerate(row):
                if m:
                    yield i, j

    def is_regular(self) -> bool:
        return len({sum(r) for r in self.adj}) == 1

    @property
    def degree(self) -> int:
        """Common out-degree ``d``; raises :class:`NotRegular` otherwise."""
        degrees = {sum(r) for r in self.adj}
        if len(degrees) != 1:
            raise NotRegular(f"out-degrees {sorted(degrees)} are not all equal")
        return degrees.pop()

    def has_self_loop(self) -> bool:
        return any(self.adj[i][i] for i in range(self.n))

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.n
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                adj[perm[i]][perm[j]] = self.adj[i][j]
        return Digraph(tuple(map(tuple, adj)))

    def transition_matrix(self) -> RationalMatrix:
        """Row-normalised adjacency matrix (uniform out-edge probabilities)."""
        return RationalMatrix(
            tuple(Fraction(x, sum(row)) for x in row) for row in self.adj
        )


@dataclass(frozen=True)
class Partition:
    """Partition of ``range(n)`` into blocks.

    With ``cyclic=True`` the block order is meaningful: edges leaving block
    ``k`` land in block ``k + 1 (mod t)``. Otherwise blocks are kept sorted
    by their least element and equality ignores order anyway.
    """

    blocks: tuple[frozenset[int], ...]
    cyclic: bool = False
    n: int = field(default=-1, compare=False)

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if any(not b for b in blocks):
            raise InvalidInput("partition blocks must be nonempty")
        seen: set[int] = set()
        for b in blocks:
            if seen & b:
                raise InvalidInput("partition blocks overlap")
            seen |= b
        n = self.n if self.n >= 0 else len(seen)
        if seen != set(range(n)):
            raise InvalidInput(f"blocks do not cover 0..{n - 1}")
        if not self.cyclic:
            blocks = tuple(sorted(blocks, key=min))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_labels(cls, labels: Sequence[int], cyclic: bool = False) -> Partition:
        """Block ``k`` collects the vertices labelled ``k``; labels must be 0..t-1."""
        t = max(labels) + 1 if labels else 0
        blocks = [set() for _ in range(t)]
        for v, k in enumerate(labels):
            blocks[k].add(v)
        return cls(tuple(blocks), cyclic=cyclic, n=len(labels))

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(tuple(frozenset({v}) for v in range(n)), n=n)

    @classmethod
    def trivial(cls, n: int) -> Partition:
        return cls((frozenset(range(n)),), n=n)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks)

    def labels(self) -> tuple[int, ...]:
        out = [0] * self.n
        for k, b in enumerate(self.blocks):
            for v in b:
                out[v] = k
        return tuple(out)

    def block_of(self, v: int) -> int:
        for k, b in enumerate(self.blocks):
            if v in b:
                return k
        raise KeyError(v)

    def block_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.blocks)

    def same_blocks(self, other: Partition) -> bool:
        """Equality of the underlying set partitions, ignoring order and cyclicity."""
        return self.block_set() == other.block_set()

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n

    def meet(self, other: Partition) -> Partition:
        """Coarsest common refinement (pairwise block intersections)."""
        if self.n != other.n:
            raise InvalidInput("partitions of different ground sets")
        blocks = [a & b for a in self.blocks for b in other.blocks]
        return Partition(tuple(b for b in blocks if b), n=self.n)

    def refines(self, other: Partition) -> bool:
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def unordered(self) -> Partition:
        return Partition(self.blocks, n=self.n)

    def as_lists(self, one_based: bool = False) -> list[list[int]]:
        off = 1 if one_based else 0
        return [sorted(v + off for v in b) for b in self.blocks]

    def __repr__(self) -> str:
        kind = "cyclic " if self.cyclic else ""
        return f"Partition({kind}{self.as_lists()})"


@dataclass(frozen=True)
class WeightVector:
    """Positive integer left eigenvector of the adjacency matrix at eigenvalue ``d``."""

    w: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if any(x <= 0 for x in w):
            raise InvalidInput("Friedman weights must be positive")
        if reduce(gcd, w, 0) != 1:
            raise InvalidInput("Friedman weights must be coprime")
        object.__setattr__(self, "w", w)

    def __getitem__(self, v: int) -> int:
        return self.w[v]

    def __len__(self) -> int:
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def total(self) -> int:
        return sum(self.w)


def _reach(g: Digraph, start: int, reverse: bool = False) -> set[int]:
    n = g.n
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in range(n):
            m = g.adj[u][v] if reverse else g.adj[v][u]
            if m and u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    """True iff every vertex reaches every other (forward and backward search from 0)."""
    everything = set(range(g.n))
    return _reach(g, 0) == everything and _reach(g, 0, reverse=True) == everything


def _require_strong(g: Digraph) -> None:
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")


def bfs_levels(g: Digraph, start: int = 0) -> list[int]:
    """Breadth-first distance from ``start``; -1 marks unreachable vertices."""
    level = [-1] * g.n
    level[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u, m in enumerate(g.adj[v]):
            if m and level[u] < 0:
                level[u] = level[v] + 1
                queue.append(u)
    return level


def _level_gcd(g: Digraph, level: Sequence[int]) -> int:
    t = 0
    for i, j in g.edges():
        t = gcd(t, abs(level[i] + 1 - level[j]))
    return t


def period(g: Digraph, start: int = 0) -> int:
    """gcd of all cycle lengths, from BFS levels: gcd over edges of ``level(i)+1-level(j)``."""
    _require_strong(g)
    return _level_gcd(g, bfs_levels(g, start))


def periodic_partition(g: Digraph) -> Partition:
    """Cyclic partition ``P_1..P_t`` with vertex 0 in the first block."""
    _require_strong(g)
    level = bfs_levels(g)
    t = _level_gcd(g, level)
    return Partition.from_labels([lv % t for lv in level], cyclic=True)


def is_periodic_partition(g: Digraph, p: Partition) -> bool:
    """Every edge advances the cyclic block index by one."""
    t = len(p)
    labels = p.labels()
    return all(labels[j] == (labels[i] + 1) % t for i, j in g.edges())


def order_cyclically(g: Digraph, p: Partition) -> Partition | None:
    """Arrange the blocks of ``p`` so that edges advance them, starting at vertex 0.

    Returns None when no such arrangement exists.
    """
    labels = p.labels()
    nxt: dict[int, int] = {}
    for i, j in g.edges():
        if nxt.setdefault(labels[i], labels[j]) != labels[j]:
            return None
    order = [labels[0]]
    while len(order) < len(p):
        k = nxt.get(order[-1])
        if k is None or k in order:
            return None
        order.append(k)
    cyc = Partition(tuple(p.blocks[k] for k in order), cyclic=True, n=p.n)
    return cyc if is_periodic_partition(g, cyc) else None


def friedman_weights(g: Digraph) -> WeightVector:
    """Coprime positive integer ``w`` with ``w @ adj == d * w``."""
    d = g.degree
    _require_strong(g)
    n = g.n
    shifted = RationalMatrix(
        tuple(g.adj[j][i] - (d if i == j else 0) for j in range(n)) for i in range(n)
    )
    basis = shifted.nullspace()
    if len(basis) != 1:
        raise NotStronglyConnected(f"eigenvalue {d} has a {len(basis)}-dimensional left eigenspace")
    v = basis[0]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g_ = reduce(gcd, ints, 0)
    ints = [x // g_ for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return WeightVector(tuple(ints))


def friedman_weight(vertices: Iterable[int], w: WeightVector) -> int:
    return sum(w[v] for v in vertices)


def simple_cycle_lengths(g: Digraph) -> set[int]:
    """Lengths of all simple directed cycles; exponential, meant for tiny graphs."""
    n = g.n
    succ = [[j for j in range(n) if g.adj[i][j]] for i in range(n)]
    lengths: set[int] = set()
    for s in range(n):
        # cycles whose least vertex is s
        stack = [(s, [s], {s})]
        while stack:
            v, path, on = stack.pop()
            for u in succ[v]:
                if u == s:
                    lengths.add(len(path))
                elif u > s and u not in on:
                    stack.append((u, path + [u], on | {u}))
    return lengths


def support_graph(a: RationalMatrix) -> Digraph:
    """Digraph with an edge ``i -> j`` wherever ``a[i, j] != 0``."""
    return Digraph(tuple(tuple(1 if x else 0 for x in row) for row in a.rows))
