"""Exact level-2 analysis of irreducible stochastic matrices.

The level-2 action ``X -> A X A^T`` on symmetric matrices restricts, on
zero-diagonal matrices, to the linear map ``A^(2)`` whose entries are the
2x2 permanents of ``A``. A chain is periodic exactly when that map fixes a
nonzero vector, and the common zeros of the fixed vectors spell out the
periodic classes. Everything here is computed over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .digraph import Partition, order_cyclically, period, periodic_partition, support_graph
from .exceptions import (
    BadDelta,
    DecompositionResidual,
    InvalidInput,
    NotAFixedPoint,
    PropertyViolated,
)
from .rational import RationalMatrix, nullspace, to_fraction
from .validation import check_cyclic_partition, check_probability_vector, check_square, check_stochastic


def pair_index(n: int) -> list[tuple[int, int]]:
    """Pairs ``i < j`` in lexicographic order: (0,1), (0,2), ..., (n-2, n-1)."""
    return list(combinations(range(n), 2))


@dataclass(frozen=True)
class PairVector:
    """Coordinates ``x_ij`` (``i < j``) of a symmetric zero-diagonal matrix."""

    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(to_fraction(x) for x in self.coords)
        if len(coords) != self.n * (self.n - 1) // 2:
            raise InvalidInput(f"expected {self.n * (self.n - 1) // 2} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_matrix(cls, X: RationalMatrix) -> PairVector:
        check_square(X)
        if not X.is_symmetric():
            raise InvalidInput("matrix is not symmetric")
        return cls(X.nrows, tuple(X[i, j] for i, j in pair_index(X.nrows)))

    def to_matrix(self) -> RationalMatrix:
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), x in zip(pair_index(n), self.coords):
            m[i][j] = m[j][i] = x
        return RationalMatrix(m, n)

    def __getitem__(self, pair: tuple[int, int]) -> Fraction:
        i, j = sorted(pair)
        if i == j:
            return Fraction(0)
        # offset of row i in the lexicographic pair list
        k = i * (2 * self.n - i - 1) // 2 + (j - i - 1)
        return self.coords[k]

    def is_zero(self) -> bool:
        return not any(self.coords)


def dist(i: int, j: int, p: Partition) -> int:
    """Circular distance between the periodic classes of ``i`` and ``j``."""
    check_cyclic_partition(p)
    t = len(p)
    diff = abs(p.block_of(i) - p.block_of(j))
    return min(diff, t - diff)


def indicator(delta: int, p: Partition) -> RationalMatrix:
    """0-1 matrix marking the vertex pairs at class distance ``delta``."""
    check_cyclic_partition(p)
    t = len(p)
    if not 0 <= delta <= t // 2:
        raise BadDelta(f"delta must lie in 0..{t // 2}, got {delta}")
    labels = p.labels()
    one, zero = Fraction(1), Fraction(0)
    rows = []
    for a in labels:
        row = []
        for b in labels:
            diff = abs(a - b)
            row.append(one if min(diff, t - diff) == delta else zero)
        rows.append(tuple(row))
    return RationalMatrix(rows)


def indicators(p: Partition) -> dict[int, RationalMatrix]:
    return {delta: indicator(delta, p) for delta in range(len(p) // 2 + 1)}


def level2(A: RationalMatrix, X: RationalMatrix) -> RationalMatrix:
    """``A X A^T``."""
    return A @ X @ A.T


def verify_indicator_fixed(A, X: RationalMatrix) -> bool:
    A = check_stochastic(A, irreducible=False)
    return level2(A, X) == X


def sym_square(A) -> RationalMatrix:
    """Matrix of the level-2 action on pair coordinates.

    Entry ``[(i,j), (l,m)]`` is the permanent ``A[i,l] A[j,m] + A[i,m] A[j,l]``.
    """
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A)
    check_square(A)
    pairs = pair_index(A.nrows)
    rows = []
    for i, j in pairs:
        ai, aj = A[i], A[j]
        rows.append(tuple(ai[l] * aj[m] + ai[m] * aj[l] for l, m in pairs))
    return RationalMatrix(rows, len(pairs))


def action_consistency(A, x: PairVector) -> tuple[RationalMatrix, bool]:
    """Compare ``Mat(A^(2) x)`` with ``A Mat(x) A^T``.

    Returns the diagonal correction ``D = A Mat(x) A^T - Mat(A^(2) x)`` and
    whether "``Mat(x)`` is level-2 fixed implies ``A^(2) x == x``" holds.
    Raises :class:`PropertyViolated` when ``D`` is not diagonal, has the
    wrong trace, or is negative for nonnegative inputs.
    """
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A)
    X = x.to_matrix()
    full = level2(A, X)
    image = PairVector(x.n, sym_square(A).matvec(x.coords))
    D = full - image.to_matrix()
    evidence = {"x": [str(c) for c in x.coords]}
    if not D.is_diagonal():
        raise PropertyViolated("diagonal correction has off-diagonal entries", evidence)
    if D.trace() != full.trace():
        raise PropertyViolated("trace of the correction differs from tr(A X A^T)", evidence)
    if A.is_nonnegative() and X.is_nonnegative() and not D.is_nonnegative():
        raise PropertyViolated("negative correction for nonnegative inputs", evidence)
    fixed = full == X
    return D, (not fixed) or image == x


def level2_determinant(A) -> Fraction:
    """``det(I - A^(2))``; the empty determinant (``n = 1``) is 1."""
    A = check_stochastic(A)
    S = sym_square(A)
    return (RationalMatrix.identity(S.nrows) - S).det()


def periodicity_test(A) -> bool:
    """True when ``det(I - A^(2)) == 0``, i.e. the chain is periodic."""
    return level2_determinant(A) == 0


def fixed_space(A) -> list[PairVector]:
    """RREF basis of the nullspace of ``I - A^(2)``."""
    A = check_stochastic(A)
    S = sym_square(A)
    basis = nullspace(RationalMatrix.identity(S.nrows) - S)
    return [PairVector(A.nrows, v) for v in basis]


def partition_from_fixed_space(basis: Sequence[PairVector], n: int) -> Partition:
    """Group ``i`` and ``j`` together when every basis vector vanishes at ``(i, j)``."""
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def common_zero(i: int, j: int) -> bool:
        return all(b[i, j] == 0 for b in basis)

    for i, j in pair_index(n):
        if common_zero(i, j):
            parent[find(j)] = find(i)
    labels = [find(v) for v in range(n)]
    for i, j in pair_index(n):
        if labels[i] == labels[j] and not common_zero(i, j):
            raise PropertyViolated(
                "common zeros do not form an equivalence relation", {"pair": [i + 1, j + 1]}
            )
    blocks: dict[int, set[int]] = {}
    for v, r in enumerate(labels):
        blocks.setdefault(r, set()).add(v)
    return Partition(tuple(blocks.values()), n=n)


def periodic_classes(A, cross_check: bool = True) -> Partition:
    """Periodic partition recovered from the fixed space, ordered cyclically.

    The blocks come from the common zeros of the level-2 fixed space and are
    put in cyclic order by following edges from vertex 0. With
    ``cross_check`` the result must coincide with the BFS oracle.
    """
    A = check_stochastic(A)
    g = support_graph(A)
    unordered = partition_from_fixed_space(fixed_space(A), A.nrows)
    cyc = order_cyclically(g, unordered)
    if cyc is None:
        raise PropertyViolated(
            "fixed-space classes are not advanced by the edges", {"classes": unordered.as_lists(True)}
        )
    if cross_check:
        oracle = periodic_partition(g)
        if cyc != oracle:
            raise PropertyViolated(
                "fixed-space classes disagree with the BFS periodic partition",
                {"spectral": cyc.as_lists(True), "oracle": oracle.as_lists(True)},
            )
    return cyc


def decompose_fixed_point(X, A, p: Partition) -> dict[int, Fraction]:
    """Coefficients ``c_delta = tr(X X_delta) / tr(X_delta^2)`` of a level-2 fixed point.

    Checks that ``X`` is rebuilt exactly by ``sum(c_delta * X_delta)`` with
    nonnegative coefficients.
    """
    if isinstance(X, PairVector):
        X = X.to_matrix()
    elif not isinstance(X, RationalMatrix):
        X = RationalMatrix(X)
    if not isinstance(A, RationalMatrix):
        A = check_stochastic(A, irreducible=False)
    check_cyclic_partition(p)
    if not X.is_symmetric():
        raise InvalidInput("X must be symmetric")
    if not X.is_nonnegative():
        raise InvalidInput("X must be nonnegative")
    if level2(A, X) != X:
        raise NotAFixedPoint("A X A^T differs from X")
    coeffs: dict[int, Fraction] = {}
    rebuilt = RationalMatrix.zeros(X.nrows)
    for delta, Xd in indicators(p).items():
        c = (X @ Xd).trace() / (Xd @ Xd).trace()
        coeffs[delta] = c
        rebuilt = rebuilt + Xd.scale(c)
    if rebuilt != X or any(c < 0 for c in coeffs.values()):
        raise DecompositionResidual(
            "fixed point is not a nonnegative combination of indicators",
            {
                "X": X.to_strings(),
                "coefficients": {str(k): str(v) for k, v in coeffs.items()},
                "residual": (X - rebuilt).to_strings(),
            },
        )
    return coeffs


def invariant_measure(A) -> tuple[Fraction, ...]:
    """Stationary distribution ``pi A = pi`` with ``sum(pi) == 1``."""
    A = check_stochastic(A)
    n = A.nrows
    basis = (A - RationalMatrix.identity(n)).left_nullspace()
    if len(basis) != 1:
        raise PropertyViolated(f"eigenvalue 1 has geometric multiplicity {len(basis)}")
    v = basis[0]
    total = sum(v, Fraction(0))
    pi = tuple(x / total for x in v)
    if any(x <= 0 for x in pi):
        raise PropertyViolated("stationary vector is not positive", {"pi": [str(x) for x in pi]})
    return pi


@dataclass(frozen=True)
class ClassProbabilityReport:
    t: int
    class_probabilities: tuple[Fraction, ...]
    delta_weights: dict[int, int]
    off_class_total: Fraction

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "class_probabilities": [str(x) for x in self.class_probabilities],
            "delta_weights": {str(d): c for d, c in self.delta_weights.items()},
            "off_class_total": str(self.off_class_total),
        }


def class_probability_report(pi, p: Partition) -> ClassProbabilityReport:
    """Check that each periodic class carries mass ``1/t`` and tally ``pi X_delta``.

    For ``delta > 0``, ``pi X_delta`` is ``(c/t) u`` where ``c`` counts the
    classes at distance ``delta`` (one when ``delta == t/2``, else two).
    """
    pi = check_probability_vector(pi)
    check_cyclic_partition(p)
    t = len(p)
    if len(pi) != p.n:
        raise InvalidInput("measure and partition sizes differ")
    probs = tuple(sum((pi[v] for v in b), Fraction(0)) for b in p.blocks)
    evidence = {"pi": [str(x) for x in pi], "classes": p.as_lists(True)}
    if any(q != Fraction(1, t) for q in probs):
        raise PropertyViolated("periodic classes are not equiprobable", evidence)
    weights: dict[int, int] = {}
    for delta, Xd in indicators(p).items():
        row = Xd.vecmat(pi)
        expected = 1 if delta == 0 or 2 * delta == t else 2
        if any(x != Fraction(expected, t) for x in row):
            raise PropertyViolated(f"pi X_{delta} is not {expected}/{t} times all-ones", evidence)
        if delta:
            weights[delta] = expected
    total = sum((Fraction(c, t) for c in weights.values()), Fraction(0))
    if total != 1 - Fraction(1, t):
        raise PropertyViolated("off-class masses do not total 1 - 1/t", evidence)
    return ClassProbabilityReport(t, probs, weights, total)


def spectral_period_agrees(A) -> bool:
    """Does the determinant test agree with the BFS period of the support graph?"""
    A = check_stochastic(A)
    return periodicity_test(A) == (period(support_graph(A)) >= 2)
