"""
Finite-difference gradient oracle for coordinate gradients.
"""

import numpy as np

from ..models.polytope import Polytope
from ..utils.errors import StencilError
from .wachspress import wachspress


def gradient_fd_oracle(p: Polytope, x, h: float = 1e-4) -> np.ndarray:
    """
    Central differences of every lambda_i with one Richardson level.

    Returns an array of shape (v, n), one row per vertex.

    Raises:
        StencilError: x is within 2h of the boundary
    """
    x = np.array(x, dtype=float).reshape(-1)
    if h <= 0:
        raise ValueError(f"Step length must be positive, got {h}")
    clearance = p.facet_distances(x).min()
    if clearance <= 2.0 * h:
        raise StencilError(
            f"Stencil of half-width {h:g} at {x.tolist()} leaves the polytope "
            f"(boundary distance {clearance:.3g})")

    def central(step: float) -> np.ndarray:
        columns = []
        for axis in range(p.dimension):
            offset = np.zeros(p.dimension)
            offset[axis] = step
            forward = wachspress(p, x + offset).values
            backward = wachspress(p, x - offset).values
            columns.append((forward - backward) / (2.0 * step))
        return np.column_stack(columns)

    coarse = central(h)
    fine = central(h / 2.0)
    return (4.0 * fine - coarse) / 3.0
