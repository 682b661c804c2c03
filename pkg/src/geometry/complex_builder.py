"""
Mesh complex assembly: element construction, facet matching and facet frames.
"""

from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from ..models.polytope import Facet, MeshComplex, Polytope, newell_normal
from ..utils.errors import (DegeneratePolytopeError, InconsistentMeshError, MeshIndexError,
                            NonManifoldError, PolytopeValidationError)
from ..utils.logger import get_logger
from .validation import DEFAULT_TOLERANCE, validate_polytope

logger = get_logger("complex_builder")

# 2D: CCW global vertex ids. 3D: faces as global vertex-id cycles, CCW from outside.
ElementSpec = Union[Sequence[int], Sequence[Sequence[int]]]


def make_element(vertices: np.ndarray, spec: ElementSpec, dimension: int) -> Polytope:
    """Build one element from global coordinates and its element spec."""
    num_vertices = vertices.shape[0]
    if dimension == 2:
        ids = [int(i) for i in spec]
        _check_ids(ids, num_vertices)
        return Polytope(2, vertices[ids], vertex_ids=tuple(ids))

    faces = [[int(i) for i in face] for face in spec]
    ids = sorted({i for face in faces for i in face})
    _check_ids(ids, num_vertices)
    local = {global_id: index for index, global_id in enumerate(ids)}
    local_faces = tuple(tuple(local[i] for i in face) for face in faces)
    return Polytope(3, vertices[ids], faces=local_faces, vertex_ids=tuple(ids))


def _check_ids(ids: Sequence[int], num_vertices: int) -> None:
    for i in ids:
        if not 0 <= i < num_vertices:
            raise MeshIndexError(f"Vertex id {i} out of range (0..{num_vertices - 1})")


def tangent_frame(points: np.ndarray, normal: np.ndarray) -> List[np.ndarray]:
    """
    Orthonormal tangents of a facet.

    2D: the normal rotated by +90 degrees. 3D: the normalized first edge of the
    cycle, then normal x t1.
    """
    scale = max(np.ptp(points, axis=0).max(), np.finfo(float).tiny)
    if points.shape[1] == 2:
        if np.linalg.norm(points[1] - points[0]) <= 1e-14 * scale:
            raise DegeneratePolytopeError("Facet has zero length")
        return [np.array([-normal[1], normal[0]])]

    if np.linalg.norm(newell_normal(points)) <= 1e-14 * scale ** 2:
        raise DegeneratePolytopeError("Facet has zero area")
    edge = points[1] - points[0]
    edge = edge - (edge @ normal) * normal
    first = edge / np.linalg.norm(edge)
    second = np.cross(normal, first)
    return [first, second / np.linalg.norm(second)]


def facet_frame(f: Facet) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Unit normal (outward from the first incident element) and tangent frame."""
    return f.normal, tangent_frame(f.points, f.normal)


def build_complex(vertices, elements: Sequence[ElementSpec],
                  tol: float = DEFAULT_TOLERANCE) -> MeshComplex:
    """
    Assemble validated elements into a mesh complex.

    Facets are matched by their sorted global vertex-id sets; facet ids follow
    first appearance (element order, then local facet order).

    Raises:
        PolytopeValidationError: an element fails validate_polytope
        NonManifoldError: a facet is claimed by more than two elements
        InconsistentMeshError: a shared facet is not glued back to back
    """
    vertices = np.array(vertices, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] not in (2, 3):
        raise ValueError(f"Vertices must have shape (p, 2) or (p, 3), got {vertices.shape}")
    dimension = vertices.shape[1]
    vertices.flags.writeable = False

    polytopes: List[Polytope] = []
    for element_id, spec in enumerate(elements):
        polytope = make_element(vertices, spec, dimension)
        result = validate_polytope(polytope, tol)
        if not result.passed:
            first = result.violations[0]
            raise PolytopeValidationError(
                f"Element {element_id} failed validation: {first.message}",
                element_id=element_id, violations=result.violations)
        polytopes.append(polytope)

    incidences: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for element_id, polytope in enumerate(polytopes):
        for local_facet, cycle in enumerate(polytope.facets):
            key = tuple(sorted(polytope.vertex_ids[i] for i in cycle))
            incidences.setdefault(key, []).append((element_id, local_facet))

    facets: List[Facet] = []
    for facet_id, (key, incident) in enumerate(incidences.items()):
        if len(incident) > 2:
            raise NonManifoldError(
                f"Facet {list(key)} is shared by elements {[e for e, _ in incident]}")
        facets.append(_make_facet(facet_id, key, incident, polytopes, tol))

    _check_overlap(polytopes, tol)

    mesh = MeshComplex(dimension, vertices, tuple(polytopes), tuple(facets))
    logger.info(f"Built {dimension}D complex: {len(polytopes)} elements, "
                f"{len(mesh.interior_facets)} interior and {len(mesh.boundary_facets)} boundary facets")
    return mesh


def _make_facet(facet_id: int, key: Tuple[int, ...], incident: List[Tuple[int, int]],
                polytopes: List[Polytope], tol: float) -> Facet:
    first, local_facet = incident[0]
    owner = polytopes[first]
    cycle = owner.facets[local_facet]
    points = owner.vertices[list(cycle)]
    normals = [owner.facet_normals[local_facet]]

    if len(incident) == 2:
        other, other_facet = incident[1]
        other_normal = polytopes[other].facet_normals[other_facet]
        if normals[0] @ other_normal > -1.0 + tol:
            raise InconsistentMeshError(
                f"Facet {list(key)} of elements {first} and {other} is not glued back to back "
                f"(normal dot product {normals[0] @ other_normal:.6g})")
        normals.append(other_normal)

    points.flags.writeable = False
    tangents = np.array(tangent_frame(points, normals[0]))
    tangents.flags.writeable = False
    return Facet(facet_id, key, tuple(e for e, _ in incident), tuple(normals), tangents, points)


def _check_overlap(polytopes: List[Polytope], tol: float) -> None:
    """Reject element pairs where one vertex centroid lies strictly inside the other."""
    for a, first in enumerate(polytopes):
        for b, second in enumerate(polytopes):
            if a == b:
                continue
            margin = tol * first.diameter
            if np.all(first.facet_distances(second.centroid) > margin):
                raise InconsistentMeshError(f"Elements {a} and {b} overlap")
