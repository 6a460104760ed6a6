import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vqaseg.graph import (
    GridGraph, QuboMatrix, complement, cut_cost, grid_edges, image_to_graph, laplacian,
    qubo_value, random_grid, read_graph, to_qubo, write_graph,
)


def all_bits(n):
    return [np.array(b, dtype=np.uint8) for b in itertools.product((0, 1), repeat=n)]


def naive_cut(g, x):
    # independent of cut_cost: walk edges one by one
    return sum(w for u, v, w in g.edges if x[u] != x[v])


EXAMPLE = GridGraph(2, 2, ((0, 1, 0.5), (0, 2, -0.3), (1, 3, 0.2), (2, 3, 0.8)))

seeds = st.integers(min_value=0, max_value=2**64 - 1)


def test_random_grid_2x2():
    g = random_grid(2, 7)
    assert g.n == 4
    assert len(g.edges) == 4
    assert all(-1 <= w <= 1 for _, _, w in g.edges)


def test_random_grid_single_node():
    g = random_grid(1, 3)
    assert g.n == 1 and g.edges == ()


@pytest.mark.parametrize("side", [1, 2, 3, 4, 5])
def test_random_grid_edge_count(side):
    g = random_grid(side, 0)
    assert len(g.edges) == 2 * side * side - 2 * side
    if side == 4:
        assert (g.n, len(g.edges)) == (16, 24)


def test_random_grid_rejects_zero_side():
    with pytest.raises(ValueError):
        random_grid(0, 1)


@given(seeds)
@settings(max_examples=30)
def test_random_grid_reproducible(seed):
    a, b = random_grid(3, seed), random_grid(3, seed)
    assert a.edges == b.edges


def test_random_grid_seeds_differ():
    assert random_grid(3, 1).edges != random_grid(3, 2).edges


def test_random_grid_first_weight_frozen():
    # SplitMix64(0) first output is 0xE220A8397B1DCDAF
    expected = (0xE220A8397B1DCDAF >> 12) * 2.0**-51 - 1.0
    assert random_grid(2, 0).edges[0] == (0, 1, expected)


def test_grid_invariants():
    w, h = 3, 5
    pairs = grid_edges(w, h)
    assert len(pairs) == 2 * w * h - w - h
    assert pairs == sorted(set(pairs))
    for u, v in pairs:
        ru, cu, rv, cv = u // w, u % w, v // w, v % w
        assert u < v and abs(ru - rv) + abs(cu - cv) == 1


def test_grid_rejects_non_neighbours():
    with pytest.raises(ValueError):
        GridGraph(2, 2, ((0, 3, 1.0),))
    with pytest.raises(ValueError):
        GridGraph(2, 2, ((0, 1, 1.0), (0, 1, 2.0)))


def test_image_constant():
    g = image_to_graph([7] * 6, 3, 2)
    assert all(w == 1.0 for _, _, w in g.edges)


def test_image_two_tone():
    g = image_to_graph([0, 255, 0, 255], 2, 2, 255)
    weights = {(u, v): w for u, v, w in g.edges}
    assert weights[(0, 2)] == 1.0 and weights[(1, 3)] == 1.0
    assert weights[(0, 1)] == -1.0 and weights[(2, 3)] == -1.0


def test_image_dimension_mismatch():
    with pytest.raises(ValueError):
        image_to_graph([1, 2, 3], 2, 2)


def test_cut_cost_examples():
    g = random_grid(3, 9)
    assert cut_cost(g, np.zeros(9)) == 0.0
    assert cut_cost(g, np.ones(9)) == 0.0
    assert cut_cost(EXAMPLE, [0, 1, 0, 1]) == pytest.approx(1.3, abs=1e-15)
    assert cut_cost(EXAMPLE, [0, 1, 0, 1]) == naive_cut(EXAMPLE, [0, 1, 0, 1])


def test_cut_cost_length_mismatch():
    with pytest.raises(ValueError):
        cut_cost(EXAMPLE, [0, 1])


def test_to_qubo_single_edge():
    g = GridGraph(2, 1, ((0, 1, 1.0),))
    q = to_qubo(g).entries
    assert q[0, 0] == 1 and q[1, 1] == 1 and q[0, 1] == -2 and q[1, 0] == 0
    assert qubo_value(to_qubo(g), [1, 0]) == 1.0


def test_to_qubo_zero_weights():
    g = GridGraph(2, 2, tuple((u, v, 0.0) for u, v in grid_edges(2, 2)))
    assert not to_qubo(g).entries.any()


def test_qubo_value_examples():
    q = QuboMatrix(np.eye(5))
    assert qubo_value(q, np.zeros(5)) == 0.0
    assert qubo_value(q, np.ones(5)) == 5.0
    with pytest.raises(ValueError):
        qubo_value(q, [1, 0])


def test_qubo_rejects_lower_triangle():
    with pytest.raises(ValueError):
        QuboMatrix(np.array([[0.0, 0.0], [1.0, 0.0]]))


@given(seeds)
@settings(max_examples=40)
def test_qubo_matches_cut_exhaustively(seed):
    g = random_grid(2, seed)
    q = to_qubo(g)
    for x in all_bits(4):
        assert abs(qubo_value(q, x) - cut_cost(g, x)) < 1e-12
        assert cut_cost(g, x) == naive_cut(g, x) or math.isclose(cut_cost(g, x), naive_cut(g, x), abs_tol=1e-15)


@given(seeds, st.lists(st.integers(0, 1), min_size=16, max_size=16))
@settings(max_examples=60)
def test_cut_complement_symmetry(seed, bits):
    g = random_grid(4, seed)
    assert cut_cost(g, bits) == cut_cost(g, complement(bits))


def test_laplacian_two_nodes():
    lap = laplacian(GridGraph(2, 1, ((0, 1, 0.7),)))
    np.testing.assert_array_equal(lap, [[0.7, -0.7], [-0.7, 0.7]])


def test_laplacian_padding():
    g = GridGraph(3, 1, ((0, 1, 0.3), (1, 2, -0.4)))
    lap = laplacian(g)
    assert lap.shape == (4, 4)
    assert not lap[3].any() and not lap[:, 3].any()


@given(seeds, st.integers(1, 4))
@settings(max_examples=30)
def test_laplacian_rows_and_symmetry(seed, side):
    g = random_grid(side, seed)
    lap = laplacian(g)
    assert lap.shape[0] >= g.n and lap.shape[0] & (lap.shape[0] - 1) == 0
    assert (lap == lap.T).all()
    assert np.all(np.abs(lap[: g.n].sum(axis=1)) < 1e-12)
    assert not lap[g.n :].any()


@given(seeds, st.lists(st.integers(0, 1), min_size=9, max_size=9), st.lists(st.integers(0, 1), min_size=7, max_size=7))
@settings(max_examples=50)
def test_laplacian_quadratic_form_is_cut(seed, bits, pad):
    g = random_grid(3, seed)
    lap = laplacian(g)  # 16 x 16, seven padded indices
    x = np.array(bits + pad, dtype=float)
    assert abs(x @ lap @ x - cut_cost(g, bits)) < 1e-12


def test_graph_file_roundtrip(tmp_path):
    g = random_grid(3, 42)
    path = tmp_path / "g.txt"
    write_graph(g, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "3 3" and len(lines) == 1 + 12
    assert read_graph(path) == g


def test_graph_file_malformed(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n0 1\n")
    with pytest.raises(ValueError):
        read_graph(path)
