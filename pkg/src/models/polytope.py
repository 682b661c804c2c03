"""
Polytope, facet and mesh-complex models.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import DegeneratePolytopeError, MeshIndexError, TopologyError

# A point is a length-n float array (n = 2 or 3).
Point = np.ndarray


def as_point(coords: Sequence[float], dimension: Optional[int] = None) -> Point:
    """Convert a coordinate sequence to a read-only float point."""
    point = np.array(coords, dtype=float).reshape(-1)
    if dimension is not None and point.shape[0] != dimension:
        raise ValueError(f"Point has {point.shape[0]} coordinates, expected {dimension}")
    point.flags.writeable = False
    return point


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


def newell_normal(points: np.ndarray) -> np.ndarray:
    """Area-weighted normal of a closed 3D polygon (not normalized)."""
    following = np.roll(points, -1, axis=0)
    return 0.5 * np.cross(points, following).sum(axis=0)


@dataclass(frozen=True, eq=False)
class Polytope:
    """A convex polygon (CCW vertices) or polyhedron (faces CCW from outside)."""
    dimension: int
    vertices: np.ndarray
    faces: Tuple[Tuple[int, ...], ...] = ()
    vertex_ids: Tuple[int, ...] = ()

    def __post_init__(self):
        """Normalize storage and check the shape contract."""
        if self.dimension not in (2, 3):
            raise ValueError(f"Dimension must be 2 or 3, got {self.dimension}")
        vertices = _frozen(self.vertices)
        if vertices.ndim != 2 or vertices.shape[1] != self.dimension:
            raise ValueError(f"Vertices must have shape (v, {self.dimension}), got {vertices.shape}")
        if vertices.shape[0] < self.dimension + 1:
            raise DegeneratePolytopeError(
                f"A {self.dimension}D polytope needs at least {self.dimension + 1} vertices, "
                f"got {vertices.shape[0]}")
        object.__setattr__(self, 'vertices', vertices)

        vertex_ids = tuple(int(i) for i in self.vertex_ids) or tuple(range(vertices.shape[0]))
        if len(vertex_ids) != vertices.shape[0]:
            raise ValueError("vertex_ids must have one entry per vertex")
        object.__setattr__(self, 'vertex_ids', vertex_ids)

        faces = tuple(tuple(int(i) for i in face) for face in self.faces)
        if self.dimension == 3:
            if len(faces) < 4:
                raise TopologyError(f"A polyhedron needs at least 4 faces, got {len(faces)}")
            for face in faces:
                if len(face) < 3 or len(set(face)) != len(face):
                    raise TopologyError(f"Face {face} is not a simple vertex cycle")
                if min(face) < 0 or max(face) >= vertices.shape[0]:
                    raise MeshIndexError(f"Face {face} references a missing vertex")
        elif faces:
            raise ValueError("2D polygons take their edges from the vertex order; faces must be empty")
        object.__setattr__(self, 'faces', faces)

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_simplex(self) -> bool:
        return self.num_vertices == self.dimension + 1

    @cached_property
    def centroid(self) -> np.ndarray:
        """Vertex centroid."""
        return _frozen(self.vertices.mean(axis=0))

    @cached_property
    def diameter(self) -> float:
        """Largest vertex-to-vertex distance."""
        deltas = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((deltas ** 2).sum(axis=-1)).max())

    @cached_property
    def facets(self) -> Tuple[Tuple[int, ...], ...]:
        """Local vertex cycles of the codimension-1 faces."""
        if self.dimension == 2:
            v = self.num_vertices
            return tuple((i, (i + 1) % v) for i in range(v))
        return self.faces

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted local vertex pairs of all edges."""
        pairs = set()
        for cycle in self.facets:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                pairs.add((min(a, b), max(a, b)))
        return tuple(sorted(pairs))

    @cached_property
    def facet_normals(self) -> np.ndarray:
        """Unit outward normals derived from the stored orientation, one row per facet."""
        normals = []
        for index, cycle in enumerate(self.facets):
            points = self.vertices[list(cycle)]
            if self.dimension == 2:
                edge = points[1] - points[0]
                normal = np.array([edge[1], -edge[0]])
            else:
                normal = newell_normal(points)
            length = np.linalg.norm(normal)
            if length <= 1e-14 * max(self.diameter, 1.0) ** (self.dimension - 1):
                raise DegeneratePolytopeError(f"Facet {index} {cycle} has zero measure")
            normals.append(normal / length)
        return _frozen(np.array(normals))

    @cached_property
    def facet_anchors(self) -> np.ndarray:
        """One point on each facet plane (its first vertex)."""
        return _frozen(np.array([self.vertices[cycle[0]] for cycle in self.facets]))

    def facet_distances(self, x: np.ndarray) -> np.ndarray:
        """h_f(x) = (q_f - x)·n_f for every facet; positive strictly inside."""
        return np.einsum('fi,fi->f', self.facet_anchors - np.asarray(x, dtype=float),
                         self.facet_normals)

    @cached_property
    def signed_measure(self) -> float:
        """Signed area (2D shoelace) or signed volume (3D face fan about the centroid)."""
        if self.dimension == 2:
            x, y = self.vertices[:, 0], self.vertices[:, 1]
            return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        center = self.centroid
        volume = 0.0
        for cycle in self.faces:
            a = self.vertices[cycle[0]] - center
            for t in range(1, len(cycle) - 1):
                b = self.vertices[cycle[t]] - center
                c = self.vertices[cycle[t + 1]] - center
                volume += np.dot(a, np.cross(b, c)) / 6.0
        return float(volume)

    @cached_property
    def _directed_edge_faces(self) -> Dict[Tuple[int, int], List[int]]:
        table: Dict[Tuple[int, int], List[int]] = {}
        for index, cycle in enumerate(self.faces):
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                table.setdefault((a, b), []).append(index)
        return table

    def vertex_star(self, vertex: int) -> Tuple[int, ...]:
        """Faces around a 3D vertex in cyclic order."""
        if self.dimension != 3:
            raise ValueError("Vertex stars are only defined for polyhedra")
        incident = [f for f, cycle in enumerate(self.faces) if vertex in cycle]
        if len(incident) < 3:
            raise TopologyError(f"Vertex {vertex} lies on {len(incident)} faces, need at least 3")
        star = [incident[0]]
        current = incident[0]
        for _ in range(len(incident)):
            cycle = self.faces[current]
            successor = cycle[(cycle.index(vertex) + 1) % len(cycle)]
            neighbours = self._directed_edge_faces.get((successor, vertex), [])
            if len(neighbours) != 1:
                raise TopologyError(
                    f"Edge ({vertex}, {successor}) has no unique opposite face; star of "
                    f"vertex {vertex} cannot be ordered")
            current = neighbours[0]
            if current == star[0]:
                break
            star.append(current)
        if len(star) != len(incident) or current != star[0]:
            raise TopologyError(f"Faces around vertex {vertex} do not form a single cycle")
        return tuple(star)

    @cached_property
    def oriented_vertex_stars(self) -> Tuple[Tuple[int, ...], ...]:
        """Vertex stars oriented so every fan determinant det(n_f1, n_ft, n_ft+1) is positive."""
        stars = []
        for vertex in range(self.num_vertices):
            star = list(self.vertex_star(vertex))
            normals = self.facet_normals[star]
            total = sum(np.linalg.det(np.array([normals[0], normals[t], normals[t + 1]]))
                        for t in range(1, len(star) - 1))
            if total < 0:
                star = [star[0]] + star[1:][::-1]
            stars.append(tuple(star))
        return tuple(stars)

    def local_index(self, global_id: int) -> int:
        """Local position of a global vertex id."""
        try:
            return self.vertex_ids.index(global_id)
        except ValueError:
            raise MeshIndexError(f"Vertex {global_id} is not a vertex of this polytope") from None

    def has_vertex(self, global_id: int) -> bool:
        return global_id in self.vertex_ids

    def facet_index(self, global_ids: Sequence[int]) -> int:
        """Local facet whose vertex set equals the given global ids."""
        wanted = set(global_ids)
        for index, cycle in enumerate(self.facets):
            if {self.vertex_ids[i] for i in cycle} == wanted:
                return index
        raise MeshIndexError(f"No facet with vertices {sorted(wanted)}")


@dataclass(frozen=True, eq=False)
class Facet:
    """A codimension-1 face shared by one (boundary) or two (interior) elements."""
    facet_id: int
    vertex_ids: Tuple[int, ...]
    element_ids: Tuple[int, ...]
    normals: Tuple[np.ndarray, ...]
    tangents: np.ndarray
    points: np.ndarray

    @property
    def is_interior(self) -> bool:
        return len(self.element_ids) == 2

    @property
    def normal(self) -> np.ndarray:
        """Outward normal of the first incident element."""
        return self.normals[0]

    def normal_for(self, element_id: int) -> np.ndarray:
        """Outward normal as seen from the given incident element."""
        try:
            return self.normals[self.element_ids.index(element_id)]
        except ValueError:
            raise MeshIndexError(f"Element {element_id} is not incident to facet {self.facet_id}") from None

    @property
    def centroid(self) -> np.ndarray:
        return self.points.mean(axis=0)


@dataclass(frozen=True, eq=False)
class MeshComplex:
    """Polytopes glued along shared facets, indexed by global vertex ids."""
    dimension: int
    vertices: np.ndarray
    elements: Tuple[Polytope, ...]
    facets: Tuple[Facet, ...] = field(default_factory=tuple)

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    def element(self, element_id: int) -> Polytope:
        if not 0 <= element_id < len(self.elements):
            raise MeshIndexError(f"Element id {element_id} out of range (0..{len(self.elements) - 1})")
        return self.elements[element_id]

    def facet(self, facet_id: int) -> Facet:
        if not 0 <= facet_id < len(self.facets):
            raise MeshIndexError(f"Facet id {facet_id} out of range (0..{len(self.facets) - 1})")
        return self.facets[facet_id]

    def check_vertex(self, vertex_id: int) -> None:
        if not 0 <= vertex_id < self.num_vertices:
            raise MeshIndexError(f"Vertex id {vertex_id} out of range (0..{self.num_vertices - 1})")

    @property
    def interior_facets(self) -> List[Facet]:
        return [f for f in self.facets if f.is_interior]

    @property
    def boundary_facets(self) -> List[Facet]:
        return [f for f in self.facets if not f.is_interior]

    def facets_of_element(self, element_id: int) -> List[Facet]:
        return [f for f in self.facets if element_id in f.element_ids]
