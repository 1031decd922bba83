"""Coloring semigroups, generalized road coloring, and exact periodicity tests."""

__version__ = "0.1.0"

from .digraph import (  # noqa: E402
    Digraph,
    Partition,
    WeightVector,
    friedman_weight,
    friedman_weights,
    is_strongly_connected,
    period,
    periodic_partition,
)
from .estimators import ColoringSemigroup, SpectralPeriodicity, SynchronizingColoring  # noqa: E402
from .grcp import GrcpReport, check_coloring, find_t_synchronizing_coloring, synchronizing_word  # noqa: E402
from .rational import RationalMatrix  # noqa: E402
from .semigroup import Coloring, Semigroup, VertexMap, enumerate_colorings, generate, kernel  # noqa: E402
from .spectral import (  # noqa: E402
    fixed_space,
    invariant_measure,
    periodic_classes,
    periodicity_test,
    sym_square,
)

__all__ = [
    "Coloring",
    "ColoringSemigroup",
    "Digraph",
    "GrcpReport",
    "Partition",
    "RationalMatrix",
    "Semigroup",
    "SpectralPeriodicity",
    "SynchronizingColoring",
    "VertexMap",
    "WeightVector",
    "check_coloring",
    "enumerate_colorings",
    "find_t_synchronizing_coloring",
    "fixed_space",
    "friedman_weight",
    "friedman_weights",
    "generate",
    "invariant_measure",
    "is_strongly_connected",
    "kernel",
    "period",
    "periodic_classes",
    "periodic_partition",
    "periodicity_test",
    "sym_square",
    "synchronizing_word",
]
