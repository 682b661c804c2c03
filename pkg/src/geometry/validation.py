"""
Convexity, planarity and orientation checks for single polytopes.
"""

from typing import Dict, List, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..models.polytope import Polytope, newell_normal
from ..models.reports import ValidationResult, Violation, ViolationKind
from ..utils.errors import DegeneratePolytopeError
from ..utils.logger import get_logger

logger = get_logger("validation")

DEFAULT_TOLERANCE = 1e-9


def validate_polytope(p: Polytope, tol: float = DEFAULT_TOLERANCE) -> ValidationResult:
    """
    Check the hypotheses the coordinate construction relies on.

    Tolerances are relative and scaled by the polytope diameter. Vertex ids in
    the returned violations are the polytope's own vertex ids (global ids for
    mesh elements).

    Raises:
        DegeneratePolytopeError: the vertex set spans no area or volume
    """
    if p.dimension == 2:
        result = ValidationResult(_check_polygon(p, tol))
    else:
        result = ValidationResult(_check_polyhedron(p, tol))

    if result.passed:
        logger.debug(f"Polytope with vertices {p.vertex_ids} passed validation")
    else:
        logger.debug(f"Polytope with vertices {p.vertex_ids} has {len(result.violations)} violations")
    return result


def hull_measure(p: Polytope) -> float:
    """Area or volume of the convex hull of the vertex set; zero when it is flat."""
    try:
        return float(ConvexHull(p.vertices).volume)
    except QhullError:
        return 0.0


def _check_polygon(p: Polytope, tol: float) -> List[Violation]:
    scale = max(p.diameter, np.finfo(float).tiny)
    if hull_measure(p) <= tol * scale ** 2:
        raise DegeneratePolytopeError(f"Polygon {p.vertex_ids} has zero area")

    violations: List[Violation] = []
    area = p.signed_measure
    orientation = 1.0 if area >= 0 else -1.0
    if area < -tol * scale ** 2:
        violations.append(Violation(
            ViolationKind.WRONG_ORIENTATION,
            f"Vertices are clockwise (signed area {area:.6g})",
            magnitude=-area))
    elif area <= tol * scale ** 2:
        violations.append(Violation(
            ViolationKind.WRONG_ORIENTATION,
            "Vertex order is self-intersecting (signed area 0)",
            magnitude=0.0))

    flagged = set()
    v = p.num_vertices
    for i in range(v):
        previous, current, following = p.vertices[i - 1], p.vertices[i], p.vertices[(i + 1) % v]
        a, b = current - previous, following - current
        turn = orientation * (a[0] * b[1] - a[1] * b[0])
        if turn <= tol * scale ** 2:
            flagged.add(i)
            violations.append(Violation(
                ViolationKind.NON_CONVEX_VERTEX,
                f"Vertex {p.vertex_ids[i]} is reflex or flat (turn {turn:.6g})",
                vertex_id=p.vertex_ids[i], magnitude=-turn))

    # Every edge line must support the polygon, which also rejects
    # self-overlapping orders whose local turns all look convex.
    for e in range(v):
        start, end = p.vertices[e], p.vertices[(e + 1) % v]
        edge = end - start
        normal = orientation * np.array([edge[1], -edge[0]]) / np.linalg.norm(edge)
        for i in range(v):
            if i in (e, (e + 1) % v) or i in flagged:
                continue
            depth = float((start - p.vertices[i]) @ normal)
            if depth <= tol * scale:
                flagged.add(i)
                violations.append(Violation(
                    ViolationKind.NON_CONVEX_VERTEX,
                    f"Vertex {p.vertex_ids[i]} is not strictly inside edge {e}",
                    vertex_id=p.vertex_ids[i], face_index=e, magnitude=-depth))
    return violations


def _check_polyhedron(p: Polytope, tol: float) -> List[Violation]:
    scale = max(p.diameter, np.finfo(float).tiny)
    if hull_measure(p) <= tol * scale ** 3:
        raise DegeneratePolytopeError(f"Polyhedron {p.vertex_ids} has zero volume")

    violations: List[Violation] = []
    volume = p.signed_measure
    if volume <= tol * scale ** 3:
        violations.append(Violation(
            ViolationKind.WRONG_ORIENTATION,
            f"Faces are not oriented outward (signed volume {volume:.6g})",
            magnitude=-volume))

    violations.extend(_check_incidence(p))

    normals = []
    for index, face in enumerate(p.faces):
        points = p.vertices[list(face)]
        normal = newell_normal(points)
        length = np.linalg.norm(normal)
        if length <= tol * scale ** 2:
            raise DegeneratePolytopeError(f"Face {index} {face} has zero area")
        normal = normal / length
        center = points.mean(axis=0)

        offsets = np.abs((points - center) @ normal)
        if offsets.max() > tol * scale:
            worst = int(np.argmax(offsets))
            violations.append(Violation(
                ViolationKind.NON_PLANAR_FACE,
                f"Face {index} deviates from its plane by {offsets.max():.3g}",
                vertex_id=p.vertex_ids[face[worst]], face_index=index,
                magnitude=float(offsets.max())))

        if (center - p.centroid) @ normal <= 0:
            if volume > 0:
                violations.append(Violation(
                    ViolationKind.WRONG_ORIENTATION,
                    f"Face {index} normal points into the polyhedron",
                    face_index=index))
            normal = -normal
        normals.append((center, normal))

    flagged = set()
    for index, (center, normal) in enumerate(normals):
        on_face = set(p.faces[index])
        for i in range(p.num_vertices):
            if i in on_face or i in flagged:
                continue
            depth = float((center - p.vertices[i]) @ normal)
            if depth <= tol * scale:
                flagged.add(i)
                violations.append(Violation(
                    ViolationKind.NON_CONVEX_VERTEX,
                    f"Vertex {p.vertex_ids[i]} is not strictly inside the plane of face {index}",
                    vertex_id=p.vertex_ids[i], face_index=index, magnitude=-depth))
    return violations


def _check_incidence(p: Polytope) -> List[Violation]:
    """Each edge on exactly two faces, traversed once in each direction."""
    violations: List[Violation] = []
    directed: Dict[Tuple[int, int], int] = {}
    for face in p.faces:
        for a, b in zip(face, face[1:] + face[:1]):
            directed[(a, b)] = directed.get((a, b), 0) + 1

    for (a, b) in p.edges:
        forward, backward = directed.get((a, b), 0), directed.get((b, a), 0)
        if forward != 1 or backward != 1:
            violations.append(Violation(
                ViolationKind.BAD_EDGE_INCIDENCE,
                f"Edge ({p.vertex_ids[a]}, {p.vertex_ids[b]}) is used {forward}+{backward} times, "
                f"expected once in each direction",
                vertex_id=p.vertex_ids[a]))

    used = {i for face in p.faces for i in face}
    for i in range(p.num_vertices):
        if i not in used:
            violations.append(Violation(
                ViolationKind.BAD_EDGE_INCIDENCE,
                f"Vertex {p.vertex_ids[i]} belongs to no face",
                vertex_id=p.vertex_ids[i]))

    euler = p.num_vertices - len(p.edges) + len(p.faces)
    if euler != 2:
        violations.append(Violation(
            ViolationKind.EULER,
            f"v - e + f = {euler}, expected 2"))
    return violations
