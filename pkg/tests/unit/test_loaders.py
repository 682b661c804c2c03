"""
Unit tests for the mesh loader and the bundled corpus.
"""

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.loaders.corpus import CORPUS_NAMES, corpus_document, generate_corpus, orient_outward
from src.loaders.mesh_loader import MeshLoader, document_digest, load_mesh
from src.utils.errors import MeshParseError, PolytopeValidationError

SQUARE = {"dimension": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "elements": [{"vertices": [0, 1, 2, 3]}]}


class TestMeshLoader:
    """Parsing JSON mesh documents."""

    @pytest.fixture
    def loader(self):
        return MeshLoader()

    def test_parse_square(self, loader):
        """Test a valid 2D document."""
        document = loader.parse(SQUARE)
        assert document.dimension == 2
        assert_allclose(document.vertices, SQUARE["vertices"])
        assert document.elements == [[0, 1, 2, 3]]
        assert document.build().element(0).num_vertices == 4

    @pytest.mark.parametrize("data, field", [
        ({"dimension": 4, "vertices": [[0]], "elements": []}, "dimension"),
        ({"dimension": True, "vertices": [[0, 0]], "elements": []}, "dimension"),
        ({"dimension": 2, "vertices": [], "elements": []}, "vertices"),
        ({"dimension": 2, "vertices": [[0, 0], [1]], "elements": []}, "vertices[1]"),
        ({"dimension": 2, "vertices": [[0, 0], [1, "a"]], "elements": []}, "vertices[1][1]"),
        ({"dimension": 2, "vertices": [[0, 0], [1, True]], "elements": []}, "vertices[1][1]"),
        ({"dimension": 2, "vertices": [[0, 0], [1, 0]], "elements": []}, "elements"),
        ({"dimension": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "elements": [{"vertices": [0, 1]}]},
         "elements[0].vertices"),
        ({"dimension": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "elements": [{"vertices": [0, 1, 7]}]},
         "elements[0].vertices[2]"),
        ({"dimension": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]], "elements": [{"vertices": [0, 1, 2]}]},
         "elements[0].faces"),
        ({"dimension": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]], "elements": [{"faces": [[0, 1, 2.5]]}]},
         "elements[0].faces[0][2]"),
    ])
    def test_field_paths(self, loader, data, field):
        """Test malformed documents name the offending field."""
        with pytest.raises(MeshParseError) as info:
            loader.parse(data)
        assert info.value.field == field

    def test_non_object(self, loader):
        """Test a top-level array is rejected."""
        with pytest.raises(MeshParseError):
            loader.parse([1, 2, 3])

    def test_invalid_json_line(self, loader, tmp_path):
        """Test JSON syntax errors carry the line number."""
        path = tmp_path / "broken.json"
        path.write_text('{\n  "dimension": 2,\n  "vertices": [[0, 0],,]\n}\n')
        with pytest.raises(MeshParseError) as info:
            loader.load(str(path))
        assert info.value.field == "document"
        assert info.value.line == 3

    def test_missing_file(self, loader, tmp_path):
        """Test unreadable files surface as OSError."""
        with pytest.raises(OSError):
            loader.load(str(tmp_path / "missing.json"))

    def test_load_file(self, loader, tmp_path):
        """Test loading from disk records the source path and digest."""
        path = tmp_path / "square.json"
        path.write_text(json.dumps(SQUARE))
        document = loader.load(str(path))
        assert document.source == str(path)
        assert document.digest == document_digest(SQUARE)

    def test_unknown_corpus_name(self, loader):
        """Test unknown corpus names are parse errors on the source."""
        with pytest.raises(MeshParseError) as info:
            loader.load("corpus:dodecahedron")
        assert info.value.field == "source"

    def test_invalid_element_propagates(self):
        """Test element validation failures surface from load_mesh."""
        data = {"dimension": 2, "vertices": [[0, 0], [0, 1], [1, 1], [1, 0]],
                "elements": [{"vertices": [0, 1, 2, 3]}]}
        with pytest.raises(PolytopeValidationError):
            MeshLoader().parse(data).build()


class TestDigest:
    """Canonical document digests."""

    def test_key_order_irrelevant(self):
        """Test the digest ignores key order and whitespace."""
        shuffled = {"elements": SQUARE["elements"], "vertices": SQUARE["vertices"], "dimension": 2}
        assert document_digest(shuffled) == document_digest(SQUARE)

    def test_content_sensitive(self):
        """Test a moved vertex changes the digest."""
        moved = dict(SQUARE, vertices=[[0, 0], [1, 0], [1, 1.5], [0, 1]])
        assert document_digest(moved) != document_digest(SQUARE)
        assert len(document_digest(SQUARE)) == 64


class TestCorpus:
    """Bundled reference geometries."""

    def test_names(self):
        """Test the thirteen bundled geometries."""
        assert len(CORPUS_NAMES) == 13
        assert "cube-prism" in CORPUS_NAMES
        with pytest.raises(KeyError):
            corpus_document("nonexistent")

    @pytest.mark.parametrize("name, elements, interior", [
        ("pentagon", 1, 0), ("two-squares", 2, 1), ("square-pentagon", 2, 1),
        ("pyramid", 1, 0), ("two-cubes", 2, 1), ("cube-prism", 2, 1),
    ])
    def test_meshes_build(self, name, elements, interior):
        """Test corpus meshes build with the expected interior facets."""
        _, mesh = load_mesh(f"corpus:{name}")
        assert len(mesh.elements) == elements
        assert len(mesh.interior_facets) == interior

    def test_orient_outward(self):
        """Test an inward face of a tetrahedron is flipped."""
        vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
        faces = orient_outward(vertices, [[0, 1, 2], [0, 1, 3], [1, 2, 3], [0, 3, 2]])
        assert faces[0] == [0, 2, 1]
        assert faces[1] == [0, 1, 3]
        assert faces[3] == [0, 3, 2]

    def test_generate_corpus(self, tmp_path):
        """Test every geometry is written and reloads to the same digest."""
        paths = generate_corpus(tmp_path / "corpus")
        assert len(paths) == 13
        for path in paths:
            name = path.stem
            document = MeshLoader().load(str(path))
            assert document.digest == document_digest(corpus_document(name))
