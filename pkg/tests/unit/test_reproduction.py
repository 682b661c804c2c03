"""
Unit tests for the Koszul operator, reproduction coefficients and the span oracle.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.geometry.sampling import sample_interior
from src.loaders.mesh_loader import load_mesh
from src.models.basis import Family
from src.models.fields import FieldKind, KoszulForm, PolyField
from src.reproduction.coefficients import (coefficients_for, expand_whitney, fold_p, fold_whitney,
                                           permutation_sign)
from src.reproduction.koszul import koszul_apply, koszul_matrix, phi_sign_matrix
from src.reproduction.verify import identity_label, random_payload, span_contains, verify_reproduction
from src.harness.checks import whitney_in_full_residual
from src.utils.errors import (ContractViolationError, DomainError, InsufficientSamplesError,
                              UnsupportedTargetError)


def corpus_element(name, element_id=0):
    return load_mesh(f"corpus:{name}")[1].element(element_id)


class TestKoszul:
    """Koszul operator and its matrix form."""

    def test_volume_form_image(self):
        """Test the image of dx^dy^dz is x dy^dz - y dx^dz + z dx^dy."""
        image = koszul_apply(KoszulForm.constant(3, {(0, 1, 2): 1.0}))
        assert image.degree == 2
        assert_allclose(image.coefficients[(1, 2)], [0, 1, 0, 0])
        assert_allclose(image.coefficients[(0, 2)], [0, 0, -1, 0])
        assert_allclose(image.coefficients[(0, 1)], [0, 0, 0, 1])

    def test_sign_pattern(self):
        """Test the sign pattern of the image of dy^dz."""
        signs = phi_sign_matrix(KoszulForm.constant(3, {(1, 2): 1.0}))
        assert signs[1, 2] == -1
        assert signs[2, 1] == 1
        assert not signs[0].any()

    def test_two_dimensional_rotation(self):
        """Test dx^dy maps to the rotation field."""
        matrix = koszul_matrix(koszul_apply(KoszulForm.constant(2, {(0, 1): 1.0})))
        assert_allclose(matrix, [[0, -1], [1, 0]])
        assert_allclose(phi_sign_matrix(KoszulForm.constant(2, {(0, 1): 1.0})), [[0, -1], [1, 0]])

    def test_zero_form(self):
        """Test 0-forms map to the zero form."""
        assert koszul_apply(KoszulForm.constant(2, {(): 3.0})).is_zero

    def test_contract_violations(self):
        """Test non-constant inputs and forms with constant parts."""
        image = koszul_apply(KoszulForm.constant(3, {(0, 1): 1.0}))
        with pytest.raises(ContractViolationError):
            koszul_apply(image)
        with pytest.raises(ContractViolationError):
            koszul_matrix(KoszulForm.constant(3, {(0,): 1.0}))
        with pytest.raises(ContractViolationError):
            koszul_matrix(KoszulForm.constant(3, {(0, 1): 1.0}))


class TestFolding:
    """Folding ordered tuples onto canonical descriptors."""

    def test_permutation_sign(self):
        """Test permutation parity."""
        assert permutation_sign((0, 1, 2)) == 1
        assert permutation_sign((1, 0, 2)) == -1
        assert permutation_sign((2, 0, 1)) == 1

    def test_fold_whitney(self):
        """Test reversed Whitney indices fold with a sign and repeats drop."""
        acc = {}
        fold_whitney(acc, (1, 0), 2.0)
        fold_whitney(acc, (1, 1), 5.0)
        assert acc == {(0, 1): -2.0}

    def test_fold_p_eliminates_lambda_slot(self):
        """Test l_i dl_i is rewritten through the gradient sum."""
        acc = {}
        fold_p(acc, 3, 0, (0,), 1.0)
        assert acc == {(0, 1): -1.0, (0, 2): -1.0}

    def test_fold_p_sorts_slots(self):
        """Test gradient slots are sorted with the permutation sign."""
        acc = {}
        fold_p(acc, 4, 0, (3, 1), 2.0)
        assert acc == {(0, 1, 3): -2.0}


class TestCoefficients:
    """Explicit coefficients against pointwise evaluation."""

    @pytest.mark.parametrize("name", ["square", "hexagon", "pentagon"])
    def test_identity_in_2d(self, name):
        """Test every 2D 1-form flavour reproduces the identity matrix."""
        p = corpus_element(name)
        samples = sample_interior(p, 20, 1)
        for family in (Family.P, Family.PMINUS):
            for rot_flag in (False, True):
                report = verify_reproduction(p, family, 1, PolyField.identity(2), samples, rot_flag)
                assert report.max_residual < 1e-10, report.identity_id

    @pytest.mark.parametrize("name", ["cube", "prism", "pyramid", "skewed-hexahedron"])
    def test_identity_in_3d(self, name):
        """Test edge and face forms reproduce the identity matrix in 3D."""
        p = corpus_element(name)
        samples = sample_interior(p, 15, 2)
        for family in (Family.P, Family.PMINUS):
            for k in (1, 2):
                report = verify_reproduction(p, family, k, PolyField.identity(3), samples)
                assert report.max_residual < 1e-10, report.identity_id

    def test_scalar_targets(self):
        """Test scalar one and linear targets on the scalar and top forms."""
        hexagon = corpus_element("hexagon")
        samples = sample_interior(hexagon, 20, 3)
        assert verify_reproduction(hexagon, Family.P, 0, PolyField.scalar_one(2), samples).max_residual < 1e-12
        linear = PolyField.scalar_linear([0.5, -2.0])
        assert verify_reproduction(hexagon, Family.P, 0, linear, samples).max_residual < 1e-10
        assert verify_reproduction(hexagon, Family.P, 2, PolyField.scalar_one(2), samples).max_residual < 1e-9
        assert verify_reproduction(hexagon, Family.P, 2, linear, samples).max_residual < 1e-9

    def test_scalar_coefficients_are_vertex_values(self):
        """Test linear scalar coefficients are the target at each vertex."""
        square = corpus_element("square")
        cv = coefficients_for(PolyField.scalar_linear([1.0, 2.0]), square, Family.P, 0)
        assert_allclose(cv.values, [0.0, 1.0, 3.0, 2.0])

    def test_linear_fields(self):
        """Test position and Koszul targets."""
        cube = corpus_element("cube")
        samples = sample_interior(cube, 15, 4)
        assert verify_reproduction(cube, Family.P, 1, PolyField.position(3), samples).max_residual < 1e-10
        assert verify_reproduction(cube, Family.PMINUS, 2, PolyField.position(3), samples).max_residual < 1e-10
        koszul = PolyField.from_koszul(KoszulForm.constant(3, {(0, 1): 1.0, (1, 2): -0.5}))
        assert verify_reproduction(cube, Family.PMINUS, 1, koszul, samples).max_residual < 1e-10

        pentagon = corpus_element("pentagon")
        rotation = PolyField.from_koszul(KoszulForm.constant(2, {(0, 1): 2.0}))
        samples = sample_interior(pentagon, 15, 4)
        assert verify_reproduction(pentagon, Family.PMINUS, 1, rotation, samples).max_residual < 1e-10
        scaled = PolyField.linear_matrix(0.7 * np.eye(2))
        assert verify_reproduction(pentagon, Family.PMINUS, 1, scaled, samples, rot_flag=True).max_residual < 1e-10

    def test_random_payloads(self):
        """Test seeded payloads stay in the reproducible span."""
        rng = np.random.default_rng(42)
        square = corpus_element("square")
        samples = sample_interior(square, 10, 5)
        for family, k, rot_flag in [(Family.P, 1, False), (Family.P, 1, True),
                                    (Family.PMINUS, 1, False), (Family.PMINUS, 1, True), (Family.P, 2, False)]:
            payload = random_payload(rng, family, k, 2, rot_flag)
            assert verify_reproduction(square, family, k, payload, samples, rot_flag).max_residual < 1e-9

    def test_unsupported_targets(self):
        """Test targets outside the closed-form cases."""
        square = corpus_element("square")
        symmetric = PolyField.linear_matrix([[1.0, 0.0], [0.0, 2.0]])
        with pytest.raises(UnsupportedTargetError):
            coefficients_for(symmetric, square, Family.PMINUS, 1)
        with pytest.raises(UnsupportedTargetError):
            coefficients_for(PolyField.scalar_one(2), square, Family.PMINUS, 2)
        with pytest.raises(UnsupportedTargetError):
            coefficients_for(PolyField.identity(2), square, Family.P, 1)
        with pytest.raises(UnsupportedTargetError):
            coefficients_for(PolyField.scalar_one(2), square, Family.P, 1, rot_flag=True)
        with pytest.raises(UnsupportedTargetError):
            coefficients_for(PolyField.linear_matrix(np.ones((3, 3))), corpus_element("cube"), Family.PMINUS, 2)

    def test_domain_errors(self):
        """Test dimension mismatch, bad degree and misplaced rot."""
        square = corpus_element("square")
        with pytest.raises(DomainError):
            coefficients_for(PolyField.constant([1, 0, 0]), square, Family.P, 1)
        with pytest.raises(DomainError):
            coefficients_for(PolyField.scalar_one(2), square, Family.P, 3)
        with pytest.raises(DomainError):
            coefficients_for(PolyField.constant([1, 0, 0]), corpus_element("cube"), Family.P, 1, rot_flag=True)

    def test_identity_label(self):
        """Test stable identity identifiers."""
        assert identity_label(Family.PMINUS, 1, PolyField.identity(2), True) == "W1.rot.identity"
        assert identity_label(Family.P, 0, PolyField.scalar_one(3)) == "L.one"


class TestExpandWhitney:
    """Trimmed coefficients rewritten over the full family."""

    def test_edge_forms(self):
        """Test expanded edge coefficients reproduce the same constant."""
        hexagon = corpus_element("hexagon")
        assert whitney_in_full_residual(hexagon, 1, sample_interior(hexagon, 10, 6)) < 1e-10

    def test_face_forms(self):
        """Test expanded face coefficients reproduce the same constant."""
        prism = corpus_element("prism")
        assert whitney_in_full_residual(prism, 2, sample_interior(prism, 10, 6)) < 1e-10

    def test_expanded_family(self):
        """Test the expansion is labelled with the full family."""
        square = corpus_element("square")
        cv = expand_whitney(coefficients_for(PolyField.constant([1.0, 0.0]), square, Family.PMINUS, 1), square)
        assert all(d.family is Family.P for d in cv.descriptors)
        assert len(cv.descriptors) == 12


class TestSpanOracle:
    """Least-squares span membership."""

    def test_trimmed_top_forms_reach_one(self):
        """Test constant one lies in the span of trimmed 2-forms on a pentagon."""
        pentagon = corpus_element("pentagon")
        result = span_contains(pentagon, Family.PMINUS, 2, PolyField.scalar_one(2),
                               sample_interior(pentagon, 40, 7))
        assert result.contains(1e-8)
        assert result.columns == 10

    def test_volume_forms_reach_linear(self):
        """Test linear scalars lie in the span of full 3-forms on a cube."""
        cube = corpus_element("cube")
        result = span_contains(cube, Family.P, 3, PolyField.scalar_linear([1.0, 2.0, 3.0]),
                               sample_interior(cube, 400, 7))
        assert result.contains(1e-8)

    def test_quadratic_rejected(self):
        """Test a quadratic field lies outside the full 1-forms on a triangle."""
        triangle = corpus_element("triangle")
        tensor = np.zeros((2, 2, 2))
        tensor[0, 0, 0] = 1.0
        result = span_contains(triangle, Family.P, 1, PolyField.quadratic(tensor),
                               sample_interior(triangle, 30, 8))
        assert not result.underresolved
        assert result.relative_residual > 1e-3

    def test_insufficient_samples(self):
        """Test fewer rows than descriptors raise."""
        pentagon = corpus_element("pentagon")
        with pytest.raises(InsufficientSamplesError):
            span_contains(pentagon, Family.P, 1, PolyField.constant([1.0, 0.0]), sample_interior(pentagon, 5, 1))

    def test_component_mismatch(self):
        """Test scalar targets against vector-valued families."""
        square = corpus_element("square")
        with pytest.raises(DomainError):
            span_contains(square, Family.P, 1, PolyField.scalar_one(2), sample_interior(square, 20, 1))

    def test_target_kind(self):
        """Test quadratic targets carry their own kind."""
        assert PolyField.quadratic(np.eye(2)).kind is FieldKind.QUADRATIC
