"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

from fractions import Fraction

from .digraph import Digraph, Partition, is_strongly_connected, support_graph
from .exceptions import InvalidInput, NotIrreducible, NotStochastic
from .rational import RationalMatrix, to_fraction


def check_digraph(X) -> Digraph:
    """Accept a :class:`Digraph` or a square array-like of nonnegative integers."""
    if isinstance(X, Digraph):
        return X
    if hasattr(X, "graph") and isinstance(X.graph, Digraph):
        return X.graph
    try:
        rows = [list(r) for r in X]
    except TypeError as exc:
        raise InvalidInput(f"expected an adjacency matrix, got {type(X).__name__}") from exc
    for row in rows:
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise InvalidInput(f"adjacency entries must be integers, got {x!r}")
    return Digraph(tuple(tuple(int(x) for x in row) for row in rows))


def check_square(a: RationalMatrix) -> RationalMatrix:
    if not a.is_square():
        raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
    return a


def is_irreducible(a: RationalMatrix) -> bool:
    return is_strongly_connected(support_graph(a))


def check_stochastic(A, irreducible: bool = True) -> RationalMatrix:
    """Exact row-stochastic matrix from a RationalMatrix, Digraph or array-like.

    A :class:`Digraph` is turned into its uniform transition matrix. Float
    entries raise :class:`~grcpkit.exceptions.FloatRejected`.
    """
    if isinstance(A, Digraph):
        a = A.transition_matrix()
    elif isinstance(A, RationalMatrix):
        a = A
    else:
        a = RationalMatrix(A)
    if a.nrows == 0:
        raise InvalidInput("empty matrix")
    check_square(a)
    if not a.is_nonnegative():
        raise NotStochastic("negative entry")
    bad = [i for i, s in enumerate(a.row_sums()) if s != 1]
    if bad:
        raise NotStochastic(f"rows {[i + 1 for i in bad]} do not sum to 1")
    if irreducible and not is_irreducible(a):
        raise NotIrreducible("support graph is not strongly connected")
    return a


def check_cyclic_partition(p: Partition) -> Partition:
    if not isinstance(p, Partition) or not p.cyclic:
        raise InvalidInput("expected a cyclic (periodic) partition")
    return p


def check_probability_vector(pi) -> tuple[Fraction, ...]:
    v = tuple(to_fraction(x) for x in pi)
    if any(x < 0 for x in v) or sum(v) != 1:
        raise InvalidInput("not a probability vector")
    return v
