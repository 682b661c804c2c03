"""
Mesh loader for JSON mesh documents and bundled corpus geometries.
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..geometry.complex_builder import ElementSpec, build_complex
from ..models.polytope import MeshComplex
from ..utils.errors import MeshParseError
from ..utils.logger import get_logger

logger = get_logger("mesh_loader")

CORPUS_PREFIX = "corpus:"


@dataclass(frozen=True, eq=False)
class MeshDocument:
    """Parsed but not yet validated mesh document."""
    dimension: int
    vertices: np.ndarray
    elements: List[ElementSpec]
    digest: str
    source: str

    def build(self, tol: float = 1e-9) -> MeshComplex:
        return build_complex(self.vertices, self.elements, tol)


def document_digest(data: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON form (sorted keys, compact separators)."""
    canonical = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


class MeshLoader:
    """Loads mesh documents from JSON files or the bundled corpus."""

    def __init__(self):
        self.logger = logger

    def load(self, source: str) -> MeshDocument:
        """
        Load a mesh document from a path or a 'corpus:<name>' reference.

        Raises:
            MeshParseError: malformed document (with field path and line)
            OSError: the file cannot be read
        """
        if source.startswith(CORPUS_PREFIX):
            from .corpus import corpus_document
            name = source[len(CORPUS_PREFIX):]
            try:
                data = corpus_document(name)
            except KeyError:
                raise MeshParseError(f"Unknown corpus geometry '{name}'", field="source") from None
            return self.parse(data, source)
        return self.load_from_json(source)

    def load_from_json(self, file_path: str) -> MeshDocument:
        """Read and parse a JSON mesh file."""
        path = Path(file_path)
        text = path.read_text(encoding='utf-8')
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise MeshParseError(f"Invalid JSON: {e.msg}", field="document", line=e.lineno) from None
        document = self.parse(data, str(path))
        self.logger.info(f"Loaded {document.dimension}D mesh '{path.name}' with "
                         f"{len(document.vertices)} vertices and {len(document.elements)} elements")
        return document

    def parse(self, data: Any, source: str = "<memory>") -> MeshDocument:
        """Validate field structure and convert a decoded document."""
        if not isinstance(data, dict):
            raise MeshParseError("Mesh document must be a JSON object", field="document")

        dimension = data.get('dimension')
        if dimension not in (2, 3) or isinstance(dimension, bool):
            raise MeshParseError(f"dimension must be 2 or 3, got {dimension!r}", field="dimension")

        vertices = self._parse_vertices(data.get('vertices'), dimension)
        elements = self._parse_elements(data.get('elements'), dimension, len(vertices))
        return MeshDocument(dimension, vertices, elements, document_digest(data), source)

    def _parse_vertices(self, raw: Any, dimension: int) -> np.ndarray:
        if not isinstance(raw, list) or not raw:
            raise MeshParseError("vertices must be a non-empty list", field="vertices")
        for index, point in enumerate(raw):
            if not isinstance(point, list) or len(point) != dimension:
                raise MeshParseError(f"vertex must have {dimension} coordinates",
                                     field=f"vertices[{index}]")
            for axis, value in enumerate(point):
                if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
                    raise MeshParseError(f"coordinate must be a finite number, got {value!r}",
                                         field=f"vertices[{index}][{axis}]")
        return np.array(raw, dtype=float)

    def _parse_elements(self, raw: Any, dimension: int, num_vertices: int) -> List[ElementSpec]:
        if not isinstance(raw, list) or not raw:
            raise MeshParseError("elements must be a non-empty list", field="elements")
        elements: List[ElementSpec] = []
        for index, element in enumerate(raw):
            path = f"elements[{index}]"
            if not isinstance(element, dict):
                raise MeshParseError("element must be an object", field=path)
            if dimension == 2:
                elements.append(self._parse_cycle(element.get('vertices'), f"{path}.vertices", num_vertices))
            else:
                faces = element.get('faces')
                if not isinstance(faces, list) or not faces:
                    raise MeshParseError("3D elements need a non-empty 'faces' list", field=f"{path}.faces")
                elements.append([self._parse_cycle(face, f"{path}.faces[{f}]", num_vertices)
                                 for f, face in enumerate(faces)])
        return elements

    def _parse_cycle(self, raw: Any, path: str, num_vertices: int) -> List[int]:
        if not isinstance(raw, list) or len(raw) < 3:
            raise MeshParseError("vertex cycle must list at least 3 ids", field=path)
        for position, vertex_id in enumerate(raw):
            if isinstance(vertex_id, bool) or not isinstance(vertex_id, int):
                raise MeshParseError(f"vertex id must be an integer, got {vertex_id!r}",
                                     field=f"{path}[{position}]")
            if not 0 <= vertex_id < num_vertices:
                raise MeshParseError(f"vertex id {vertex_id} out of range (0..{num_vertices - 1})",
                                     field=f"{path}[{position}]")
        return list(raw)


def load_mesh(source: str, tol: float = 1e-9, loader: Optional[MeshLoader] = None):
    """Load, validate and build a mesh; returns (document, complex)."""
    document = (loader or MeshLoader()).load(source)
    return document, document.build(tol)
