"""Graph and chain generators plus brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

from grcpkit.digraph import Digraph, is_strongly_connected
from grcpkit.rational import RationalMatrix
from grcpkit.semigroup import Coloring, VertexMap

EXAMPLE_A = [
    [0, 1, 0, 0, 0],
    [0, 0, Fraction(1, 2), Fraction(1, 2), 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0],
]

# printed level-2 matrix of the worked example, pair order (1,2),(1,3),...,(4,5)
_h = Fraction(1, 2)
EXAMPLE_SYM_SQUARE = [
    [0, 0, 0, 0, _h, _h, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, _h, _h],
    [0, 0, 0, 0, 0, 0, 0, 0, _h, _h],
    [0, _h, _h, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
]

EXAMPLE_GRAPH = Digraph.from_successors([[1], [2, 3], [4], [4], [0]])
EXAMPLE_CLASSES = [{0}, {1}, {2, 3}, {4}]


def cycle_graph(n: int) -> Digraph:
    return Digraph.from_successors([[(i + 1) % n] for i in range(n)])


def cycle_chain(n: int) -> RationalMatrix:
    return cycle_graph(n).transition_matrix()


CERNY = Coloring.from_maps([[1, 2, 3, 0], [0, 1, 2, 0]])
BIPARTITE = Digraph.from_successors([[2, 3], [2, 3], [0, 1], [0, 1]])


def two_out_graphs(n: int):
    """Every labelled 2-out multigraph on ``n`` vertices."""
    options = list(itertools.combinations_with_replacement(range(n), 2))
    for choice in itertools.product(options, repeat=n):
        yield Digraph.from_successors(choice)


def canonical_adj(g: Digraph) -> tuple:
    return min(g.relabel(p).adj for p in itertools.permutations(range(g.n)))


def strongly_connected_two_out_classes(n: int) -> list[Digraph]:
    """One representative per isomorphism class of strongly connected 2-out graphs."""
    seen = {}
    for g in two_out_graphs(n):
        if not is_strongly_connected(g):
            continue
        key = canonical_adj(g)
        if key not in seen:
            seen[key] = Digraph(key)
    return list(seen.values())


def random_two_out_graph(rng: random.Random, n: int) -> Digraph:
    while True:
        g = Digraph.from_successors([[rng.randrange(n), rng.randrange(n)] for _ in range(n)])
        if is_strongly_connected(g):
            return g


def _composition(rng: random.Random, n: int, t: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, n), t - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [n])]


def random_periodic_labels(rng: random.Random, n: int, t: int) -> list[int]:
    labels = [k for k, size in enumerate(_composition(rng, n, t)) for _ in range(size)]
    rng.shuffle(labels)
    return labels


def random_periodic_two_out_graph(rng: random.Random, n: int, t: int) -> Digraph:
    """Strongly connected 2-out graph whose edges advance a random t-class labelling."""
    while True:
        labels = random_periodic_labels(rng, n, t)
        members = [[v for v in range(n) if labels[v] == k] for k in range(t)]
        succ = [[rng.choice(members[(labels[v] + 1) % t]) for _ in range(2)] for v in range(n)]
        g = Digraph.from_successors(succ)
        if is_strongly_connected(g):
            return g


def _normalise(rows: list[list[int]]) -> RationalMatrix:
    return RationalMatrix([[Fraction(x, sum(r)) for x in r] for r in rows])


def random_periodic_chain(rng: random.Random, n: int, t: int) -> RationalMatrix:
    """Irreducible chain supported on edges that advance a random t-class labelling."""
    while True:
        labels = random_periodic_labels(rng, n, t)
        members = [[v for v in range(n) if labels[v] == k] for k in range(t)]
        rows = []
        for v in range(n):
            nxt = members[(labels[v] + 1) % t]
            support = rng.sample(nxt, rng.randint(1, len(nxt)))
            rows.append([rng.randint(1, 5) if j in support else 0 for j in range(n)])
        a = _normalise(rows)
        if is_strongly_connected(Digraph(tuple(tuple(1 if x else 0 for x in r) for r in a.rows))):
            return a


def perturbed_chain(rng: random.Random, a: RationalMatrix) -> RationalMatrix:
    """Add one random extra transition to a chain (usually destroys periodicity)."""
    n = a.nrows
    rows = [[int(x * 120) for x in r] for r in a.rows]
    i, j = rng.randrange(n), rng.randrange(n)
    rows[i][j] += rng.randint(1, 60)
    return _normalise(rows)


def random_dense_chain(rng: random.Random, n: int, density: float = 0.5) -> RationalMatrix:
    while True:
        rows = [[rng.randint(1, 5) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]
        if any(sum(r) == 0 for r in rows):
            continue
        a = _normalise(rows)
        if is_strongly_connected(Digraph(tuple(tuple(1 if x else 0 for x in r) for r in a.rows))):
            return a


# ---------------------------------------------------------------- oracles


def brute_closure(gens) -> set[VertexMap]:
    """Fixpoint of pairwise composition, independent of the BFS generator."""
    els = set(gens)
    while True:
        new = {a * b for a in els for b in els} - els
        if not new:
            return els
        els |= new


def shortlex_witnesses(gens, max_len: int) -> dict[VertexMap, tuple[int, ...]]:
    """First word (shortlex) producing each element, by enumerating all words."""
    n = len(gens[0])
    out: dict[VertexMap, tuple[int, ...]] = {}
    for length in range(1, max_len + 1):
        for word in itertools.product(range(len(gens)), repeat=length):
            m = VertexMap(range(n))
            for c in word:
                m = m * gens[c]
            out.setdefault(m, word)
    return out


def brute_colorings(g: Digraph) -> set[tuple[VertexMap, ...]]:
    """All d-tuples of maps whose matrices sum to the adjacency matrix."""
    n, d = g.n, g.degree
    maps = [VertexMap(m) for m in itertools.product(range(n), repeat=n)]
    out = set()
    for combo in itertools.product(maps, repeat=d):
        counts = [[0] * n for _ in range(n)]
        for m in combo:
            for v, w in enumerate(m):
                counts[v][w] += 1
        if tuple(map(tuple, counts)) == g.adj:
            out.add(combo)
    return out


def cycle_gcd(g: Digraph) -> int:
    from grcpkit.digraph import simple_cycle_lengths

    t = 0
    for length in simple_cycle_lengths(g):
        t = gcd(t, length)
    return t


def max_cyclic_labelling(g: Digraph) -> int:
    """Largest k admitting a labelling V -> Z_k that every edge advances by one (exhaustive)."""
    n = g.n
    best = 1
    for k in range(2, n + 1):
        for rest in itertools.product(range(k), repeat=n - 1):
            lab = (0,) + rest
            if len(set(lab)) == k and all(lab[j] == (lab[i] + 1) % k for i, j in g.edges()):
                best = k
                break
    return best


def permanent(m) -> Fraction:
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        p = Fraction(1)
        for i in range(n):
            p *= m[i][perm[i]]
        total += p
    return total


def random_rational_matrix(rng: random.Random, n: int, m: int | None = None) -> RationalMatrix:
    m = n if m is None else m
    return RationalMatrix(
        [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m)] for _ in range(n)]
    )
