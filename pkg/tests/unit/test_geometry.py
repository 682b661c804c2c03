"""
Unit tests for polytope validation, complex building, facet frames and sampling.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.geometry.complex_builder import build_complex, facet_frame, make_element, tangent_frame
from src.geometry.sampling import sample_facet, sample_interior, sample_rng
from src.geometry.validation import validate_polytope
from src.loaders.corpus import CORPUS_NAMES
from src.loaders.mesh_loader import load_mesh
from src.models.polytope import Polytope
from src.models.reports import ViolationKind
from src.utils.errors import (DegeneratePolytopeError, InconsistentMeshError, MeshIndexError,
                              NonManifoldError, PolytopeValidationError)

TET = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
TET_FACES = [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)]


class TestValidatePolytope:
    """Convexity, planarity and orientation predicates."""

    def test_corpus_elements_pass(self):
        """Test every bundled geometry validates."""
        for name in CORPUS_NAMES:
            _, mesh = load_mesh(f"corpus:{name}")
            for element in mesh.elements:
                assert validate_polytope(element).passed, name

    def test_clockwise_polygon(self):
        """Test clockwise order is an orientation violation."""
        polygon = Polytope(2, [[0, 0], [0, 1], [1, 1], [1, 0]])
        result = validate_polytope(polygon)
        assert not result.passed
        assert ViolationKind.WRONG_ORIENTATION in result.kinds()

    def test_swapped_vertices(self):
        """Test a self-intersecting vertex order is an orientation violation, not a degenerate polygon."""
        bowtie = Polytope(2, [[0, 0], [1, 0], [0, 1], [1, 1]])
        result = validate_polytope(bowtie)
        assert not result.passed
        assert result.violations[0].kind is ViolationKind.WRONG_ORIENTATION

    def test_swapped_square_in_mesh(self):
        """Test a mesh element with swapped vertices fails validation."""
        with pytest.raises(PolytopeValidationError):
            build_complex([[0, 0], [1, 0], [0, 1], [1, 1]], [[0, 1, 2, 3]])

    def test_reflex_vertex_reported(self):
        """Test a reflex vertex is reported with its id."""
        polygon = Polytope(2, [[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]], vertex_ids=(10, 11, 12, 13, 14))
        result = validate_polytope(polygon)
        assert ViolationKind.NON_CONVEX_VERTEX in result.kinds()
        assert result.violations[0].vertex_id == 13

    def test_collinear_vertex_rejected(self):
        """Test a flat vertex counts as non-convex."""
        polygon = Polytope(2, [[0, 0], [1, 0], [2, 0], [2, 1], [0, 1]])
        result = validate_polytope(polygon)
        assert result.violations[0].kind is ViolationKind.NON_CONVEX_VERTEX
        assert result.violations[0].vertex_id == 1

    def test_zero_area_raises(self):
        """Test degenerate polygons raise."""
        with pytest.raises(DegeneratePolytopeError):
            validate_polytope(Polytope(2, [[0, 0], [1, 0], [2, 0]]))

    def test_simplex_and_mirror(self):
        """Test a positively oriented tetrahedron passes and its mirror fails."""
        assert validate_polytope(Polytope(3, TET, faces=TET_FACES)).passed
        mirrored = [face[::-1] for face in TET_FACES]
        result = validate_polytope(Polytope(3, TET, faces=mirrored))
        assert ViolationKind.WRONG_ORIENTATION in result.kinds()

    def test_non_planar_face(self):
        """Test a lifted cube corner breaks planarity."""
        vertices = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0],
                             [0, 0, 1], [1, 0, 1], [1, 1, 1.2], [0, 1, 1]], dtype=float)
        faces = [(0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4), (2, 3, 7, 6), (0, 4, 7, 3), (1, 2, 6, 5)]
        result = validate_polytope(Polytope(3, vertices, faces=faces))
        assert ViolationKind.NON_PLANAR_FACE in result.kinds()

    def test_open_surface(self):
        """Test a missing face breaks edge incidence."""
        vertices = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0.5, 0.5, 1]]
        faces = [(0, 3, 2, 1), (0, 1, 4), (1, 2, 4), (2, 3, 4)]
        result = validate_polytope(Polytope(3, vertices, faces=faces))
        assert ViolationKind.BAD_EDGE_INCIDENCE in result.kinds()
        assert ViolationKind.EULER in result.kinds()


class TestBuildComplex:
    """Facet matching and mesh-level consistency."""

    SQUARES = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [2, 1]]

    def test_two_squares(self):
        """Test one interior facet with opposite normals."""
        mesh = build_complex(self.SQUARES, [[0, 1, 4, 3], [1, 2, 5, 4]])
        assert len(mesh.facets) == 7
        interior = mesh.interior_facets
        assert len(interior) == 1
        facet = interior[0]
        assert facet.facet_id == 1
        assert facet.vertex_ids == (1, 4)
        assert facet.element_ids == (0, 1)
        assert_allclose(facet.normal, [1, 0], atol=1e-15)
        assert_allclose(facet.normal_for(1), [-1, 0], atol=1e-15)

    def test_invalid_element(self):
        """Test a reflex element raises with its element and vertex ids."""
        vertices = [[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]]
        with pytest.raises(PolytopeValidationError) as info:
            build_complex(vertices, [[0, 1, 2, 3, 4]])
        assert info.value.element_id == 0
        assert info.value.vertex_id == 3

    def test_non_manifold(self):
        """Test three triangles on one edge."""
        vertices = [[0, 0], [1, 0], [0.5, 1], [0.5, -1], [0.5, 2]]
        with pytest.raises(NonManifoldError):
            build_complex(vertices, [[0, 1, 2], [1, 0, 3], [0, 1, 4]])

    def test_same_side_gluing(self):
        """Test two elements on the same side of a shared edge."""
        vertices = [[0, 0], [1, 0], [0.5, 1], [0.3, 0.8]]
        with pytest.raises(InconsistentMeshError):
            build_complex(vertices, [[0, 1, 2], [0, 1, 3]])

    def test_out_of_range_id(self):
        """Test element ids are checked against the vertex array."""
        with pytest.raises(MeshIndexError):
            build_complex([[0, 0], [1, 0], [0, 1]], [[0, 1, 5]])

    def test_3d_local_order_is_sorted(self):
        """Test polyhedron vertices are stored by ascending global id."""
        vertices = np.array(TET + [[5, 5, 5]], dtype=float)
        faces = [[3, 2, 0], [3, 0, 1], [0, 2, 1], [3, 1, 2]]
        element = make_element(vertices, faces, 3)
        assert element.vertex_ids == (0, 1, 2, 3)

    def test_two_cubes_shared_face(self):
        """Test the cube pair shares exactly the x = 1 face."""
        _, mesh = load_mesh("corpus:two-cubes")
        interior = mesh.interior_facets
        assert len(interior) == 1
        assert_allclose(interior[0].points[:, 0], 1.0)
        assert_allclose(interior[0].normal, [1, 0, 0], atol=1e-15)


class TestFacetFrame:
    """Orthonormal facet frames."""

    def test_2d_tangent(self):
        """Test the 2D tangent is the normal rotated by +90 degrees."""
        tangents = tangent_frame(np.array([[1.0, 0.0], [1.0, 1.0]]), np.array([1.0, 0.0]))
        assert_allclose(tangents[0], [0, 1])

    def test_3d_frame_orthonormal(self):
        """Test normal and tangents of a skewed face are orthonormal."""
        _, mesh = load_mesh("corpus:skewed-hexahedron")
        for facet in mesh.facets:
            normal, tangents = facet_frame(facet)
            basis = np.vstack([normal, *tangents])
            assert_allclose(basis @ basis.T, np.eye(3), atol=1e-12)

    def test_zero_length_edge(self):
        """Test a collapsed edge raises."""
        with pytest.raises(DegeneratePolytopeError):
            tangent_frame(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([1.0, 0.0]))


class TestSampling:
    """Deterministic interior and facet samples."""

    @pytest.fixture
    def hexagon(self):
        return load_mesh("corpus:hexagon")[1].element(0)

    def test_deterministic(self, hexagon):
        """Test equal seeds give equal samples and different seeds differ."""
        first = sample_interior(hexagon, 25, 7)
        second = sample_interior(hexagon, 25, 7)
        other = sample_interior(hexagon, 25, 8)
        assert_allclose(np.array(first), np.array(second), rtol=0, atol=0)
        assert not np.allclose(np.array(first[1:]), np.array(other[1:]))

    def test_centroid_first_and_inside(self, hexagon):
        """Test the centroid leads and every sample is strictly inside."""
        samples = sample_interior(hexagon, 50, 3)
        assert len(samples) == 50
        assert_allclose(samples[0], hexagon.centroid)
        for x in samples:
            assert hexagon.facet_distances(x).min() > 0

    def test_facet_samples_on_plane(self):
        """Test facet samples lie on the facet plane."""
        _, mesh = load_mesh("corpus:pyramid")
        for facet in mesh.facets:
            samples = np.array(sample_facet(facet, 20, 42))
            offsets = (samples - facet.points[0]) @ facet.normal
            assert_allclose(offsets, 0.0, atol=1e-12)

    def test_zero_and_negative_counts(self, hexagon):
        """Test empty requests and bad counts."""
        assert sample_interior(hexagon, 0, 1) == []
        with pytest.raises(ValueError):
            sample_interior(hexagon, -1, 1)

    def test_rng_streams(self):
        """Test keyed generator streams are reproducible and distinct."""
        assert sample_rng(42, 1, 2).uniform() == sample_rng(42, 1, 2).uniform()
        assert sample_rng(42, 1, 2).uniform() != sample_rng(42, 2, 1).uniform()
