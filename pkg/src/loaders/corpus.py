"""
Bundled corpus of reference polygons, polyhedra and small meshes.

Every geometry is produced as a mesh document (the JSON layout read by
MeshLoader), so single polytopes load as one-element complexes.
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence

import numpy as np

from ..models.polytope import newell_normal
from ..utils.logger import get_logger

logger = get_logger("corpus")

Document = Dict[str, Any]

# Unit-cube corners; faces below are listed against this order.
CUBE_CORNERS = np.array([
    [0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0],
    [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1],
], dtype=float)
CUBE_FACES = [[0, 3, 2, 1], [4, 5, 6, 7], [0, 1, 5, 4], [2, 3, 7, 6], [0, 4, 7, 3], [1, 2, 6, 5]]

SKEW = np.array([[1.0, 0.3, 0.2], [0.0, 1.1, 0.25], [0.0, 0.0, 0.9]])


def orient_outward(vertices: np.ndarray, faces: Sequence[Sequence[int]]) -> List[List[int]]:
    """Reverse any face of a convex polyhedron whose Newell normal points inward."""
    vertices = np.asarray(vertices, dtype=float)
    used = sorted({i for face in faces for i in face})
    center = vertices[used].mean(axis=0)
    oriented = []
    for face in faces:
        points = vertices[list(face)]
        if newell_normal(points) @ (points.mean(axis=0) - center) < 0:
            face = [face[0]] + list(face[1:])[::-1]
        oriented.append([int(i) for i in face])
    return oriented


def _document(dimension: int, vertices, elements: List[Dict[str, Any]]) -> Document:
    return {
        'dimension': dimension,
        'vertices': np.asarray(vertices, dtype=float).tolist(),
        'elements': elements,
    }


def _polygon(vertices) -> Document:
    return _document(2, vertices, [{'vertices': list(range(len(vertices)))}])


def _polyhedron(vertices, faces) -> Document:
    return _document(3, vertices, [{'faces': orient_outward(vertices, faces)}])


def _box(vertices: np.ndarray, corner_ids: Sequence[int]) -> Dict[str, Any]:
    """Element dict for a hexahedron whose corners follow CUBE_CORNERS order."""
    faces = [[corner_ids[i] for i in face] for face in CUBE_FACES]
    return {'faces': orient_outward(vertices, faces)}


def reference_triangle() -> Document:
    return _polygon([[0, 0], [1, 0], [0, 1]])


def unit_square() -> Document:
    return _polygon([[0, 0], [1, 0], [1, 1], [0, 1]])


def regular_pentagon() -> Document:
    angles = np.pi / 2 + 2 * np.pi * np.arange(5) / 5
    return _polygon(np.column_stack([np.cos(angles), np.sin(angles)]))


def irregular_hexagon() -> Document:
    return _polygon([[0, 0], [2, 0], [3, 1], [2.5, 2.5], [1, 3], [-0.5, 1.5]])


def two_squares() -> Document:
    vertices = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [2, 1]]
    return _document(2, vertices, [{'vertices': [0, 1, 4, 3]}, {'vertices': [1, 2, 5, 4]}])


def square_pentagon() -> Document:
    vertices = [[0, 0], [1, 0], [1, 1], [0, 1], [2, 0], [2.4, 0.6], [1.6, 1.3]]
    return _document(2, vertices, [{'vertices': [0, 1, 2, 3]}, {'vertices': [1, 4, 5, 6, 2]}])


def reference_tetrahedron() -> Document:
    vertices = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    return _polyhedron(vertices, [[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]])


def unit_cube() -> Document:
    return _polyhedron(CUBE_CORNERS, CUBE_FACES)


def skewed_hexahedron() -> Document:
    return _polyhedron(CUBE_CORNERS @ SKEW.T, CUBE_FACES)


def triangular_prism() -> Document:
    vertices = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1]]
    faces = [[0, 2, 1], [3, 4, 5], [0, 1, 4, 3], [1, 2, 5, 4], [2, 0, 3, 5]]
    return _polyhedron(vertices, faces)


def square_pyramid() -> Document:
    vertices = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0.5, 0.5, 1]]
    faces = [[0, 3, 2, 1], [0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]]
    return _polyhedron(vertices, faces)


def two_cubes() -> Document:
    # id = x + 3y + 6z on the 3 x 2 x 2 lattice
    vertices = np.array([[x, y, z] for z in (0, 1) for y in (0, 1) for x in (0, 1, 2)], dtype=float)

    def corner_ids(offset: int) -> List[int]:
        return [int(x + offset + 3 * y + 6 * z) for x, y, z in CUBE_CORNERS.astype(int)]

    return _document(3, vertices, [_box(vertices, corner_ids(0)), _box(vertices, corner_ids(1))])


def cube_prism() -> Document:
    vertices = np.vstack([CUBE_CORNERS, [[1.5, 0, 0.5], [1.5, 1, 0.5]]])
    prism = [[1, 5, 8], [2, 9, 6], [1, 8, 9, 2], [5, 6, 9, 8], [1, 2, 6, 5]]
    return _document(3, vertices, [_box(vertices, list(range(8))),
                                   {'faces': orient_outward(vertices, prism)}])


CORPUS: Dict[str, Callable[[], Document]] = {
    'triangle': reference_triangle,
    'square': unit_square,
    'pentagon': regular_pentagon,
    'hexagon': irregular_hexagon,
    'two-squares': two_squares,
    'square-pentagon': square_pentagon,
    'tetrahedron': reference_tetrahedron,
    'cube': unit_cube,
    'skewed-hexahedron': skewed_hexahedron,
    'prism': triangular_prism,
    'pyramid': square_pyramid,
    'two-cubes': two_cubes,
    'cube-prism': cube_prism,
}

CORPUS_NAMES = tuple(CORPUS)


def corpus_document(name: str) -> Document:
    """Mesh document of a bundled geometry; KeyError for unknown names."""
    return CORPUS[name]()


def generate_corpus(out_dir) -> List[Path]:
    """
    Write every corpus geometry as '<name>.json' into out_dir.

    Raises:
        OSError: the directory cannot be created or written
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in CORPUS_NAMES:
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(corpus_document(name), indent=2, sort_keys=True) + "\n",
                        encoding='utf-8')
        written.append(path)
    logger.info(f"Wrote {len(written)} corpus meshes to {out_dir}")
    return written
