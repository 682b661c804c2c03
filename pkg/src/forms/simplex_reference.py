"""
Classical simplicial basis functions from affine barycentric coordinates.

Independent of the Wachspress code path: coordinates come from a direct
linear solve and forms from a generic wedge of gradient covectors.
"""

from itertools import combinations
from math import factorial
from typing import Dict, Sequence, Tuple

import numpy as np

from ..models.basis import BasisDescriptor, Family, FieldSample
from ..models.polytope import Polytope
from ..utils.errors import DescriptorError, NotASimplexError


def affine_coordinates(simplex: Polytope, x) -> Tuple[np.ndarray, np.ndarray]:
    """Barycentric values and (constant) gradients of a triangle or tetrahedron."""
    if not simplex.is_simplex:
        raise NotASimplexError(
            f"Expected {simplex.dimension + 1} vertices for a simplex, got {simplex.num_vertices}")
    n = simplex.dimension
    system = np.vstack([simplex.vertices.T, np.ones(n + 1)])
    inverse = np.linalg.inv(system)
    x = np.asarray(x, dtype=float).reshape(-1)
    values = inverse @ np.append(x, 1.0)
    return values, inverse[:, :n]


def wedge(covectors: np.ndarray) -> Dict[Tuple[int, ...], float]:
    """Components of the wedge of k covectors on increasing axis tuples."""
    k, n = covectors.shape
    return {sigma: float(np.linalg.det(covectors[:, list(sigma)]))
            for sigma in combinations(range(n), k)}


def _proxy(components: Dict[Tuple[int, ...], float], n: int, k: int) -> np.ndarray:
    if k == 1:
        return np.array([components[(a,)] for a in range(n)])
    if k == 2 and n == 3:
        return np.array([components[(1, 2)], -components[(0, 2)], components[(0, 1)]])
    if k == 2:
        # scalar pairing a . rot(b) is the negated wedge
        return np.array([-components[(0, 1)]])
    return np.array([components[(0, 1, 2)]])


def whitney_simplex_reference(d: BasisDescriptor, simplex: Polytope, x) -> FieldSample:
    """
    Closed-form simplicial value of a descriptor.

    P family: lambda_i dl_j ^ ... ; Pminus: c sum_m (-1)^m lambda_{i_m}
    dl_{i_0} ^ ... (omit i_m) ... ^ dl_{i_k}, with c = 3! for 3-forms and
    c = 1 for edge and face forms.
    """
    values, gradients = affine_coordinates(simplex, x)
    n = simplex.dimension
    if d.k > n or max(d.indices) > n:
        raise DescriptorError(f"Descriptor {d.label} does not fit a {n}-simplex")
    if d.k == 0:
        return FieldSample.scalar(values[d.indices[0]])

    terms: Sequence[Tuple[float, Tuple[int, ...]]]
    if d.family is Family.P:
        terms = [(values[d.indices[0]], d.indices[1:])]
    else:
        scale = factorial(d.k) if d.k == 3 else 1
        terms = [((-1) ** m * scale * values[index],
                  tuple(r for position, r in enumerate(d.indices) if position != m))
                 for m, index in enumerate(d.indices)]

    total = np.zeros(n if (d.k == 1 or (d.k == 2 and n == 3)) else 1)
    for weight, slots in terms:
        total = total + weight * _proxy(wedge(gradients[list(slots)]), n, d.k)

    if d.rot:
        total = np.array([-total[1], total[0]])
    if total.shape[0] == 1:
        return FieldSample.scalar(total[0])
    return FieldSample.vector(total)
