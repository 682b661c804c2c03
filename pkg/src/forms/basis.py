"""
Enumeration and evaluation of the linear form-basis families.

Descriptors index local vertices. The P family uses a lambda slot followed
by gradient slots; the Pminus family holds generalized Whitney forms.
"""

from itertools import combinations, permutations
from typing import List, Sequence, Tuple

import numpy as np

from ..gbc.wachspress import CoordinateSet
from ..models.basis import BasisDescriptor, Family, FieldSample
from ..models.polytope import Polytope
from ..utils.errors import DescriptorError, DomainError

# rot F = ROT @ F
ROT = np.array([[0.0, -1.0], [1.0, 0.0]])


def rot(vector: np.ndarray) -> np.ndarray:
    """Rotate a 2D vector by +90 degrees."""
    return np.array([-vector[1], vector[0]])


def cross2(a: np.ndarray, b: np.ndarray) -> float:
    """Two-dimensional cross product a . rot(b)."""
    return float(a[1] * b[0] - a[0] * b[1])


def enumerate_tuples(labels: Sequence[int], k: int, family: Family) -> List[Tuple[int, ...]]:
    """
    Canonical index tuples over the given vertex labels.

    k = 0: (i,). P, k = 1: all ordered pairs. P, k >= 2: the lambda index
    followed by the remaining indices ascending. Pminus: ascending tuples.
    """
    labels = sorted(labels)
    if k == 0:
        return [(i,) for i in labels]
    if family is Family.P and k == 1:
        return list(permutations(labels, 2))
    if family is Family.PMINUS:
        return list(combinations(labels, k + 1))
    tuples = []
    for group in combinations(labels, k + 1):
        for i in group:
            tuples.append((i,) + tuple(j for j in group if j != i))
    return tuples


def enumerate_basis(p: Polytope, k: int, family: Family, rot_flag: bool = False) -> List[BasisDescriptor]:
    """
    All descriptors of one family and form degree on p.

    Raises:
        DomainError: k outside 0..n, or rot requested outside 2D 1-forms
    """
    if not 0 <= k <= p.dimension:
        raise DomainError(f"Form degree {k} is outside 0..{p.dimension}")
    if rot_flag and (p.dimension != 2 or k != 1):
        raise DomainError("The rot flavour exists only for 2D 1-forms")
    if k == 0:
        family = Family.P
    return [BasisDescriptor(family, k, indices, rot_flag)
            for indices in enumerate_tuples(range(p.num_vertices), k, family)]


def evaluate(d: BasisDescriptor, cs: CoordinateSet) -> FieldSample:
    """
    Value of one basis function from a coordinate set.

    Vector proxies: 1-forms and 3D 2-forms are vectors, 2D 2-forms and 3D
    3-forms are scalars. Repeated indices give the degenerate value (zero
    wherever antisymmetry forces it).
    """
    n = cs.dimension
    if d.k > n:
        raise DescriptorError(f"Descriptor {d.label} has degree {d.k} > dimension {n}")
    if d.rot and n != 2:
        raise DescriptorError(f"Descriptor {d.label} uses rot outside 2D")
    if max(d.indices) >= cs.num_vertices:
        raise DescriptorError(
            f"Descriptor {d.label} references vertex {max(d.indices)} of a "
            f"{cs.num_vertices}-vertex polytope")

    lam, grad = cs.values, cs.gradients
    if d.k == 0:
        return FieldSample.scalar(lam[d.indices[0]])

    if d.k == 1:
        i, j = d.indices
        value = lam[i] * grad[j]
        if d.family is Family.PMINUS:
            value = value - lam[j] * grad[i]
        return FieldSample.vector(rot(value) if d.rot else value)

    if d.k == 2:
        i, j, k = d.indices
        if n == 2:
            value = lam[i] * cross2(grad[j], grad[k])
            if d.family is Family.PMINUS:
                value += lam[j] * cross2(grad[k], grad[i]) + lam[k] * cross2(grad[i], grad[j])
            return FieldSample.scalar(value)
        value = lam[i] * np.cross(grad[j], grad[k])
        if d.family is Family.PMINUS:
            value = value + lam[j] * np.cross(grad[k], grad[i]) + lam[k] * np.cross(grad[i], grad[j])
        return FieldSample.vector(value)

    if d.family is Family.P:
        i, j, k, l = d.indices
        return FieldSample.scalar(lam[i] * np.linalg.det(grad[[j, k, l]]))
    value = 0.0
    for m, index in enumerate(d.indices):
        rest = [r for position, r in enumerate(d.indices) if position != m]
        value += (-1) ** m * lam[index] * np.linalg.det(grad[rest])
    return FieldSample.scalar(6.0 * value)


def evaluate_all(descriptors: Sequence[BasisDescriptor], cs: CoordinateSet) -> np.ndarray:
    """Stack evaluate() over descriptors: shape (components, len(descriptors))."""
    return np.column_stack([evaluate(d, cs).as_array() for d in descriptors])
