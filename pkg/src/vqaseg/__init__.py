"""Image segmentation as min-cut, solved with qubit-efficient variational circuits."""

from .encodings import solve
from .graph import GridGraph, QuboMatrix, cut_cost, image_to_graph, laplacian, qubo_value, random_grid, to_qubo
from .oracle import brute_force_min_cut, brute_force_qubo

__version__ = "0.1.0"
