"""
Explicit reproduction coefficients for linear targets.

Reproduction formulas are written as sums over all ordered index tuples.
They are folded onto the enumerated descriptors: gradient slots are sorted
with the permutation sign, repeated gradient slots vanish, and a gradient
slot equal to the lambda index is eliminated with
grad l_i = -sum_{m != i} grad l_m.
"""

from itertools import combinations, permutations
from typing import Dict, Tuple

import numpy as np

from ..forms.basis import ROT, enumerate_basis
from ..models.basis import Family
from ..models.fields import CoefficientVector, FieldKind, PolyField
from ..models.polytope import Polytope
from ..utils.errors import DomainError, UnsupportedTargetError
from ..utils.logger import get_logger

logger = get_logger("coefficients")

Accumulator = Dict[Tuple[int, ...], float]


def permutation_sign(values: Tuple[int, ...]) -> int:
    """Sign of the permutation sorting distinct values."""
    sign = 1
    values = list(values)
    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            if values[a] > values[b]:
                sign = -sign
    return sign


def fold_p(acc: Accumulator, num_vertices: int, i: int, slots: Tuple[int, ...], coefficient: float) -> None:
    """Add coefficient * lambda_i dl_slots to a P-family accumulator keyed by canonical tuples."""
    if coefficient == 0.0 or len(set(slots)) != len(slots):
        return
    if i in slots:
        position = slots.index(i)
        for m in range(num_vertices):
            if m != i:
                fold_p(acc, num_vertices, i, slots[:position] + (m,) + slots[position + 1:], -coefficient)
        return
    if len(slots) == 1:
        key = (i,) + slots
    else:
        key = (i,) + tuple(sorted(slots))
        coefficient *= permutation_sign(slots)
    acc[key] = acc.get(key, 0.0) + coefficient


def fold_whitney(acc: Accumulator, indices: Tuple[int, ...], coefficient: float) -> None:
    """Add coefficient * W_indices to a Whitney accumulator keyed by ascending tuples."""
    if coefficient == 0.0 or len(set(indices)) != len(indices):
        return
    key = tuple(sorted(indices))
    acc[key] = acc.get(key, 0.0) + permutation_sign(indices) * coefficient


def _vector(p: Polytope, family: Family, k: int, rot_flag: bool, acc: Accumulator) -> CoefficientVector:
    descriptors = enumerate_basis(p, k, family, rot_flag)
    return CoefficientVector(descriptors, [acc.get(d.indices, 0.0) for d in descriptors])


def _unrotate(target: PolyField) -> PolyField:
    """Target T for rot-flavoured functions becomes -ROT T for the plain ones."""
    if target.kind is FieldKind.CONSTANT_VECTOR:
        return PolyField.constant(-ROT @ target.vector)
    if target.kind is FieldKind.LINEAR_MATRIX:
        return PolyField.linear_matrix(-ROT @ target.matrix)
    if target.kind is FieldKind.POSITION:
        return PolyField.linear_matrix(-ROT)
    raise UnsupportedTargetError(f"Target '{target.label}' has no rot-flavoured reproduction")


def _linear_matrix(target: PolyField) -> np.ndarray:
    if target.kind is FieldKind.POSITION:
        return np.eye(target.dimension)
    return target.matrix


def coefficients_for(target: PolyField, p: Polytope, family: Family, k: int,
                     rot_flag: bool = False) -> CoefficientVector:
    """
    Coefficients c_d with sum_d c_d F_d equal to the target on p.

    Coefficients depend only on the vertex positions.

    Raises:
        DomainError: k outside 0..n, rot outside 2D 1-forms, dimension mismatch
        UnsupportedTargetError: target outside the family's guaranteed span,
            or a family whose reproduction has no closed-form coefficients
    """
    if target.dimension != p.dimension:
        raise DomainError(f"Target dimension {target.dimension} does not match polytope dimension {p.dimension}")
    if not 0 <= k <= p.dimension:
        raise DomainError(f"Form degree {k} is outside 0..{p.dimension}")
    if target.kind is FieldKind.IDENTITY:
        raise UnsupportedTargetError("The identity target is matrix-valued; use its columns")
    if rot_flag:
        if p.dimension != 2 or k != 1:
            raise DomainError("The rot flavour exists only for 2D 1-forms")
        target = _unrotate(target)

    v = p.num_vertices
    vertices = p.vertices
    kind = target.kind
    acc: Accumulator = {}

    def unsupported() -> UnsupportedTargetError:
        return UnsupportedTargetError(
            f"Target '{target.label}' has no closed-form coefficients for "
            f"{family.value} k={k} in {p.dimension}D")

    if k == 0:
        if kind is FieldKind.SCALAR_ONE:
            acc = {(i,): 1.0 for i in range(v)}
        elif kind is FieldKind.SCALAR_LINEAR:
            acc = {(i,): float(target.vector @ vertices[i]) for i in range(v)}
        else:
            raise unsupported()
        return _vector(p, Family.P, 0, False, acc)

    if k == 1 and family is Family.P:
        if kind is FieldKind.CONSTANT_VECTOR:
            for i, j in permutations(range(v), 2):
                fold_p(acc, v, i, (j,), float((vertices[j] - vertices[i]) @ target.vector))
        elif kind in (FieldKind.LINEAR_MATRIX, FieldKind.POSITION):
            matrix = _linear_matrix(target)
            for i in range(v):
                image = matrix @ vertices[i]
                for j in range(v):
                    fold_p(acc, v, i, (j,), float(image @ vertices[j]))
        else:
            raise unsupported()

    elif k == 1:
        if kind is FieldKind.CONSTANT_VECTOR:
            for i, j in combinations(range(v), 2):
                fold_whitney(acc, (i, j), float((vertices[j] - vertices[i]) @ target.vector))
        elif kind in (FieldKind.LINEAR_MATRIX, FieldKind.POSITION):
            matrix = _linear_matrix(target)
            if not np.allclose(matrix, -matrix.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(matrix).max())):
                raise UnsupportedTargetError(
                    "Trimmed 1-forms reproduce only constants plus antisymmetric linear fields")
            for i, j in combinations(range(v), 2):
                fold_whitney(acc, (i, j), float((matrix @ vertices[i]) @ vertices[j]))
        else:
            raise unsupported()

    elif k == 2 and p.dimension == 3 and family is Family.P:
        if kind is FieldKind.CONSTANT_VECTOR:
            for i, j, l in permutations(range(v), 3):
                area = np.cross(vertices[j] - vertices[i], vertices[l] - vertices[i])
                fold_p(acc, v, i, (j, l), 0.5 * float(target.vector @ area))
        elif kind in (FieldKind.LINEAR_MATRIX, FieldKind.POSITION):
            matrix = _linear_matrix(target)
            for i in range(v):
                image = matrix @ vertices[i]
                for j, l in permutations(range(v), 2):
                    fold_p(acc, v, i, (j, l), 0.5 * float(image @ np.cross(vertices[j], vertices[l])))
        else:
            raise unsupported()

    elif k == 2 and p.dimension == 3:
        if kind is FieldKind.CONSTANT_VECTOR:
            for i, j, l in combinations(range(v), 3):
                area = np.cross(vertices[j] - vertices[i], vertices[l] - vertices[i])
                fold_whitney(acc, (i, j, l), float(target.vector @ area))
        elif kind in (FieldKind.LINEAR_MATRIX, FieldKind.POSITION):
            matrix = _linear_matrix(target)
            scale = matrix[0, 0]
            if not np.allclose(matrix, scale * np.eye(3), rtol=0.0, atol=1e-12 * max(1.0, abs(scale))):
                raise UnsupportedTargetError(
                    "Trimmed 2-forms in 3D reproduce only constants plus multiples of x")
            for i, j, l in combinations(range(v), 3):
                volume = float(vertices[i] @ np.cross(vertices[j], vertices[l]))
                fold_whitney(acc, (i, j, l), scale * volume)
        else:
            raise unsupported()

    elif k == 2 and family is Family.P:
        rotated = vertices @ ROT.T
        if kind is FieldKind.SCALAR_ONE:
            for i, j, l in permutations(range(v), 3):
                value = (vertices[j] - vertices[i]) @ (rotated[l] - rotated[i])
                fold_p(acc, v, i, (j, l), 0.5 * float(value))
        elif kind is FieldKind.SCALAR_LINEAR:
            for i in range(v):
                weight = float(target.vector @ vertices[i])
                for j, l in permutations(range(v), 2):
                    fold_p(acc, v, i, (j, l), 0.5 * weight * float(vertices[j] @ rotated[l]))
        else:
            raise unsupported()

    else:
        raise unsupported()

    return _vector(p, family, k, rot_flag, acc)


def expand_whitney(cv: CoefficientVector, p: Polytope) -> CoefficientVector:
    """
    Rewrite trimmed coefficients over the full family of the same degree.

    Uses W_ij = l_i dl_j - l_j dl_i, the cyclic three-term form of W_ijk and
    W_ijkl = 6 sum_m (-1)^m l_{i_m} (wedge of the others).
    """
    if not cv.descriptors:
        return cv
    first = cv.descriptors[0]
    k, rot_flag = first.k, first.rot
    if k == 0:
        return cv
    v = p.num_vertices
    acc: Accumulator = {}
    for descriptor, coefficient in zip(cv.descriptors, cv.values):
        if descriptor.family is not Family.PMINUS:
            raise DomainError(f"expand_whitney expects trimmed descriptors, got {descriptor.label}")
        indices = descriptor.indices
        scale = 6.0 if k == 3 else 1.0
        if k == 2:
            i, j, l = indices
            fold_p(acc, v, i, (j, l), float(coefficient))
            fold_p(acc, v, j, (l, i), float(coefficient))
            fold_p(acc, v, l, (i, j), float(coefficient))
            continue
        for m, index in enumerate(indices):
            rest = indices[:m] + indices[m + 1:]
            fold_p(acc, v, index, rest, (-1) ** m * scale * float(coefficient))
    return _vector(p, Family.P, k, rot_flag, acc)

