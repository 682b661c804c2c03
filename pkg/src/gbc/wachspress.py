"""
Wachspress generalized barycentric coordinates on convex polygons and polyhedra.

Both constructions use the polynomial-numerator form: every weight is a
product of affine factors (triangle areas in 2D, face distances in 3D), so
values and analytic gradients stay finite on the closed polytope.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..models.polytope import Polytope
from ..utils.errors import CoordinateConsistencyError, DomainError
from ..utils.logger import get_logger

logger = get_logger("wachspress")

DOMAIN_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class CoordinateSet:
    """Values and gradients of all coordinates of one polytope at one point."""
    point: np.ndarray
    values: np.ndarray
    gradients: np.ndarray
    vertex_ids: Tuple[int, ...] = ()

    @property
    def dimension(self) -> int:
        return self.point.shape[0]

    @property
    def num_vertices(self) -> int:
        return self.values.shape[0]

    @property
    def has_gradients(self) -> bool:
        return bool(np.all(np.isfinite(self.gradients)))


def product_with_gradient(factors: np.ndarray, gradients: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Product of scalar factors and its gradient by the product rule.

    Uses prefix and suffix products so vanishing factors need no division.
    """
    count = factors.shape[0]
    if count == 0:
        return 1.0, np.zeros(gradients.shape[-1])
    prefix = np.ones(count + 1)
    suffix = np.ones(count + 1)
    for m in range(count):
        prefix[m + 1] = prefix[m] * factors[m]
        suffix[count - m - 1] = suffix[count - m] * factors[count - m - 1]
    others = prefix[:count] * suffix[1:]
    return float(prefix[count]), others @ gradients


def _check_inside(p: Polytope, x: np.ndarray, tol: float) -> None:
    distances = p.facet_distances(x)
    if distances.min() < -tol * p.diameter:
        raise DomainError(
            f"Point {x.tolist()} lies outside the polytope "
            f"(distance {-distances.min():.3g} beyond facet {int(np.argmin(distances))})")


def _normalize(p: Polytope, x: np.ndarray, weights: np.ndarray,
               weight_gradients: np.ndarray) -> CoordinateSet:
    total = weights.sum()
    if not total > 0:
        raise CoordinateConsistencyError(
            f"Wachspress weights sum to {total:.6g} at {x.tolist()}; expected a positive value")
    values = weights / total
    total_gradient = weight_gradients.sum(axis=0)
    gradients = (weight_gradients - np.outer(values, total_gradient)) / total
    return CoordinateSet(x, values, gradients, p.vertex_ids)


def wachspress_2d(p: Polytope, x, tol: float = DOMAIN_TOLERANCE) -> CoordinateSet:
    """
    Wachspress coordinates of a convex polygon.

    With A_j(x) the signed area of (x, v_j, v_j+1) and C_i the signed area of
    (v_i-1, v_i, v_i+1), the weight is w_i = C_i * prod_{j not in {i-1, i}} A_j(x).
    """
    if p.dimension != 2:
        raise DomainError(f"wachspress_2d needs a polygon, got dimension {p.dimension}")
    x = np.array(x, dtype=float).reshape(-1)
    if x.shape != (2,):
        raise DomainError(f"Point must have 2 coordinates, got {x.shape[0]}")
    _check_inside(p, x, tol)

    v = p.num_vertices
    vertices = p.vertices
    following = np.roll(vertices, -1, axis=0)
    relative = vertices - x
    relative_next = following - x
    areas = 0.5 * (relative[:, 0] * relative_next[:, 1] - relative[:, 1] * relative_next[:, 0])
    edges = following - vertices
    area_gradients = 0.5 * np.column_stack([-edges[:, 1], edges[:, 0]])

    previous = np.roll(vertices, 1, axis=0)
    a, b = vertices - previous, following - previous
    corners = 0.5 * (a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0])

    weights = np.empty(v)
    weight_gradients = np.empty((v, 2))
    for i in range(v):
        keep = [j for j in range(v) if j not in ((i - 1) % v, i)]
        product, gradient = product_with_gradient(areas[keep], area_gradients[keep])
        weights[i] = corners[i] * product
        weight_gradients[i] = corners[i] * gradient
    return _normalize(p, x, weights, weight_gradients)


def wachspress_3d(p: Polytope, x, tol: float = DOMAIN_TOLERANCE) -> CoordinateSet:
    """
    Wachspress coordinates of a convex polyhedron.

    With h_f(x) = (q_f - x).n_f and the incident faces f_1..f_d of v_i in
    cyclic order, w_i = sum_t det(n_f1, n_ft, n_ft+1) * prod_{f outside the
    triple} h_f(x). At a vertex with more than three faces all weights vanish;
    there the values are the Kronecker delta and the gradients are NaN.
    """
    if p.dimension != 3:
        raise DomainError(f"wachspress_3d needs a polyhedron, got dimension {p.dimension}")
    x = np.array(x, dtype=float).reshape(-1)
    if x.shape != (3,):
        raise DomainError(f"Point must have 3 coordinates, got {x.shape[0]}")
    _check_inside(p, x, tol)

    stars = p.oriented_vertex_stars
    hit = np.flatnonzero(np.linalg.norm(p.vertices - x, axis=1) <= 1e-12 * p.diameter)
    if hit.size and len(stars[hit[0]]) > 3:
        vertex = int(hit[0])
        logger.warning(f"Gradient requested at non-simple vertex {p.vertex_ids[vertex]}; "
                       f"returning delta values and NaN gradients")
        values = np.zeros(p.num_vertices)
        values[vertex] = 1.0
        return CoordinateSet(x, values, np.full((p.num_vertices, 3), np.nan), p.vertex_ids)

    normals = p.facet_normals
    distances = p.facet_distances(x)
    faces = np.arange(len(p.faces))

    weights = np.zeros(p.num_vertices)
    weight_gradients = np.zeros((p.num_vertices, 3))
    for i, star in enumerate(stars):
        for t in range(1, len(star) - 1):
            triple = (star[0], star[t], star[t + 1])
            volume = np.linalg.det(normals[list(triple)])
            keep = faces[~np.isin(faces, triple)]
            product, gradient = product_with_gradient(distances[keep], -normals[keep])
            weights[i] += volume * product
            weight_gradients[i] += volume * gradient
    return _normalize(p, x, weights, weight_gradients)


def wachspress(p: Polytope, x, tol: float = DOMAIN_TOLERANCE) -> CoordinateSet:
    """Dispatch on the polytope dimension."""
    if p.dimension == 2:
        return wachspress_2d(p, x, tol)
    return wachspress_3d(p, x, tol)
