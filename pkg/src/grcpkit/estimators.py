"""scikit-learn style front ends.

Each estimator is fitted on one graph, coloring or stochastic matrix and
then answers per-vertex queries through ``predict``. Hyperparameters are
plain constructor arguments, so ``get_params``/``set_params`` and
``sklearn.base.clone`` work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .digraph import is_strongly_connected, period, periodic_partition, support_graph
from .exceptions import NotFound, PropertyViolated
from .grcp import DEFAULT_MAX_COLORINGS, find_t_synchronizing_coloring
from .semigroup import (
    DEFAULT_MAX_SEMIGROUP,
    Coloring,
    generate,
    is_right_group,
    maximal_group,
    stability_classes,
)
from .spectral import (
    class_probability_report,
    fixed_space,
    invariant_measure,
    level2_determinant,
    periodic_classes,
)
from .validation import check_digraph, check_stochastic


def _check_vertices(X, n: int) -> np.ndarray:
    v = np.asarray(X, dtype=int).ravel()
    if v.size and (v.min() < 0 or v.max() >= n):
        raise ValueError(f"vertex ids must lie in 0..{n - 1}")
    return v


class SpectralPeriodicity(BaseEstimator):
    """Periodicity of an irreducible Markov chain from its level-2 action.

    Parameters
    ----------
    cross_check : bool, default=True
        Compare the determinant test and the recovered classes with the BFS
        period of the support graph, raising ``PropertyViolated`` on any
        disagreement.

    Attributes
    ----------
    transition_matrix_ : RationalMatrix
    determinant_ : Fraction
        ``det(I - A^(2))``.
    is_periodic_ : bool
    fixed_space_ : list of PairVector
    classes_ : Partition
        Periodic classes in cyclic order, vertex 0 in the first class.
    period_ : int
    labels_ : ndarray of shape (n,)
    invariant_measure_ : tuple of Fraction
    class_probabilities_ : ClassProbabilityReport
    """

    def __init__(self, cross_check: bool = True):
        self.cross_check = cross_check

    def fit(self, X, y=None):
        """Fit on a stochastic matrix, or on a digraph (uniform out-edge weights)."""
        A = check_stochastic(X)
        self.transition_matrix_ = A
        self.determinant_ = level2_determinant(A)
        self.is_periodic_ = self.determinant_ == 0
        self.fixed_space_ = fixed_space(A)
        self.classes_ = periodic_classes(A, cross_check=self.cross_check)
        self.period_ = len(self.classes_)
        if self.cross_check and self.is_periodic_ != (period(support_graph(A)) >= 2):
            raise PropertyViolated(
                "determinant test disagrees with the BFS period",
                {"determinant": str(self.determinant_), "classes": self.classes_.as_lists(True)},
            )
        self.labels_ = np.array(self.classes_.labels(), dtype=int)
        self.invariant_measure_ = invariant_measure(A)
        self.class_probabilities_ = class_probability_report(self.invariant_measure_, self.classes_)
        self.n_vertices_ = A.nrows
        return self

    def predict(self, X):
        """Periodic class index of each vertex id in ``X``."""
        check_is_fitted(self, "labels_")
        return self.labels_[_check_vertices(X, self.n_vertices_)]

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_.copy()


class SynchronizingColoring(BaseEstimator):
    """Find a coloring whose kernel is a right group of rank ``period(G)``.

    ``predict`` sends each vertex through the synchronizing word of the
    coloring found, so the predicted vertices hit every periodic class
    exactly once.
    """

    def __init__(self, max_colorings: int = DEFAULT_MAX_COLORINGS, max_semigroup: int = DEFAULT_MAX_SEMIGROUP):
        self.max_colorings = max_colorings
        self.max_semigroup = max_semigroup

    def fit(self, X, y=None):
        g = check_digraph(X)
        report = find_t_synchronizing_coloring(
            g, max_colorings=self.max_colorings, max_semigroup=self.max_semigroup
        )
        self.report_ = report
        self.found_ = report.found
        self.period_ = report.t
        self.coloring_ = report.coloring
        self.sync_word_ = report.sync_word
        self.n_vertices_ = g.n
        return self

    def predict(self, X):
        check_is_fitted(self, "report_")
        if not self.found_:
            raise NotFound("no t-synchronizing coloring was found")
        sync = self.coloring_.word_map(self.sync_word_)
        return np.array([sync[v] for v in _check_vertices(X, self.n_vertices_)], dtype=int)


class ColoringSemigroup(BaseEstimator):
    """Kernel structure and stability classes of a coloring semigroup.

    Fit on a :class:`Coloring` or a sequence of color maps; ``predict``
    returns stability class labels.
    """

    def __init__(self, max_size: int = DEFAULT_MAX_SEMIGROUP):
        self.max_size = max_size

    def fit(self, X, y=None):
        c = X if isinstance(X, Coloring) else Coloring.from_maps(X)
        s = generate(c, max_size=self.max_size)
        k = s.kernel
        e = k.shortest_element()
        self.coloring_ = c
        self.semigroup_ = s
        self.kernel_ = k
        self.rank_ = k.rank
        self.is_right_group_ = is_right_group(k)
        self.group_ = maximal_group(k, e, e)
        self.stability_ = stability_classes(s)
        self.labels_ = np.array(self.stability_.labels(), dtype=int)
        strong = is_strongly_connected(c.graph)
        self.period_ = period(c.graph) if strong else None
        self.periodic_partition_ = periodic_partition(c.graph) if strong else None
        return self

    def predict(self, X):
        check_is_fitted(self, "labels_")
        return self.labels_[_check_vertices(X, len(self.labels_))]

