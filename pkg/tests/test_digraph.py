import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    CERNY,
    EXAMPLE_CLASSES,
    EXAMPLE_GRAPH,
    cycle_gcd,
    cycle_graph,
    max_cyclic_labelling,
    random_periodic_two_out_graph,
    random_two_out_graph,
)

from grcpkit.digraph import (
    Digraph,
    Partition,
    WeightVector,
    bfs_levels,
    friedman_weight,
    friedman_weights,
    is_periodic_partition,
    is_strongly_connected,
    order_cyclically,
    period,
    periodic_partition,
    simple_cycle_lengths,
)
from grcpkit.exceptions import InvalidInput, NotRegular, NotStronglyConnected


@st.composite
def strong_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    if n >= 2 and draw(st.booleans()):
        return random_periodic_two_out_graph(rng, n, draw(st.integers(2, n)))
    return random_two_out_graph(rng, n)


class TestDigraph:
    def test_validation(self):
        with pytest.raises(InvalidInput):
            Digraph(((1, 0), (0, 0)))  # sink row
        with pytest.raises(InvalidInput):
            Digraph(((1, -1), (0, 1)))
        with pytest.raises(InvalidInput):
            Digraph(((1, 0),))
        with pytest.raises(InvalidInput):
            Digraph(())

    def test_successors_and_degree(self):
        g = Digraph.from_successors([[1, 1], [0, 1]])
        assert g.successors(0) == [1, 1]
        assert g.degree == 2
        assert g.has_self_loop
        with pytest.raises(NotRegular):
            EXAMPLE_GRAPH.degree

    def test_relabel_preserves_period(self):
        g = EXAMPLE_GRAPH.relabel([4, 3, 2, 1, 0])
        assert period(g) == 4

    def test_transition_matrix_rows(self):
        a = EXAMPLE_GRAPH.transition_matrix()
        assert all(s == 1 for s in a.row_sums())


class TestConnectivityAndPeriod:
    def test_strongly_connected(self):
        assert is_strongly_connected(cycle_graph(3))
        assert not is_strongly_connected(Digraph.from_successors([[1], [1]]))
        assert is_strongly_connected(Digraph.from_successors([[0]]))

    @pytest.mark.parametrize("g,t", [(cycle_graph(3), 3), (EXAMPLE_GRAPH, 4), (Digraph.from_successors([[0, 1], [0]]), 1)])
    def test_period_examples(self, g, t):
        assert period(g) == t

    def test_period_requires_strong(self):
        with pytest.raises(NotStronglyConnected):
            period(Digraph.from_successors([[1], [1]]))

    def test_example_partition(self):
        p = periodic_partition(EXAMPLE_GRAPH)
        assert p.cyclic
        assert [set(b) for b in p.blocks] == EXAMPLE_CLASSES
        assert is_periodic_partition(EXAMPLE_GRAPH, p)

    def test_bfs_levels(self):
        assert bfs_levels(EXAMPLE_GRAPH) == [0, 1, 2, 2, 3]

    @settings(max_examples=60, deadline=None)
    @given(strong_graphs())
    def test_period_is_cycle_gcd(self, g):
        t = period(g)
        assert t == cycle_gcd(g)
        assert all(length % t == 0 for length in simple_cycle_lengths(g))

    @settings(max_examples=40, deadline=None)
    @given(strong_graphs())
    def test_start_vertex_independent(self, g):
        assert {period(g, s) for s in range(g.n)} == {period(g)}

    @settings(max_examples=30, deadline=None)
    @given(strong_graphs(max_n=6))
    def test_no_finer_periodic_partition(self, g):
        p = periodic_partition(g)
        assert is_periodic_partition(g, p)
        assert p.block_of(0) == 0
        assert max_cyclic_labelling(g) == len(p)


class TestPartition:
    def test_meet(self):
        a = Partition.from_labels([0, 0, 1, 1])
        b = Partition.from_labels([0, 0, 1, 2])
        assert a.meet(b).same_blocks(b)
        assert b.refines(a)
        assert not a.refines(b)

    def test_discrete_trivial(self):
        assert Partition.discrete(3).is_discrete()
        assert len(Partition.trivial(3)) == 1

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            Partition((frozenset({0}), frozenset({0, 1})))

    def test_order_cyclically(self):
        scrambled = Partition((frozenset({4}), frozenset({2, 3}), frozenset({0}), frozenset({1})))
        cyc = order_cyclically(EXAMPLE_GRAPH, scrambled)
        assert cyc == periodic_partition(EXAMPLE_GRAPH)
        assert order_cyclically(EXAMPLE_GRAPH, Partition.from_labels([0, 1, 0, 1, 0])) is None

    def test_as_lists(self):
        assert periodic_partition(EXAMPLE_GRAPH).as_lists(one_based=True) == [[1], [2], [3, 4], [5]]


class TestFriedman:
    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_cycle(self, n):
        assert tuple(friedman_weights(cycle_graph(n))) == (1,) * n

    def test_complete_two_vertex(self):
        g = Digraph.from_successors([[0, 1], [0, 1]])
        assert tuple(friedman_weights(g)) == (1, 1)

    def test_cerny_matches_sympy(self):
        g = CERNY.graph
        w = tuple(friedman_weights(g))
        assert w == (2, 2, 2, 1)
        m = sympy.Matrix(g.adj).T - 2 * sympy.eye(4)
        (ref,) = m.nullspace()
        ratio = ref[0] / w[0]
        assert all(ref[i] == ratio * w[i] for i in range(4))

    def test_weight_of_set(self):
        assert friedman_weight({0, 2}, WeightVector((2, 2, 1, 1, 2))) == 3

    def test_weight_vector_validation(self):
        with pytest.raises(InvalidInput):
            WeightVector((2, 4))
        with pytest.raises(InvalidInput):
            WeightVector((0, 1))

    @settings(max_examples=40, deadline=None)
    @given(strong_graphs())
    def test_left_eigenvector(self, g):
        w = friedman_weights(g)
        d = g.degree
        assert all(sum(w[i] * g.adj[i][j] for i in range(g.n)) == d * w[j] for j in range(g.n))
        assert all(x > 0 for x in w)
