"""
Residuals of the defining coordinate identities.
"""

import numpy as np

from ..models.polytope import Polytope
from ..models.reports import IdentityResiduals
from .wachspress import CoordinateSet


def coordinate_identity_residuals(cs: CoordinateSet, p: Polytope) -> IdentityResiduals:
    """
    Partition of unity, linear precision, gradient sum and gradient precision.

    Returns |sum l_i - 1|, |sum v_i l_i - x|, |sum grad l_i| and
    max |sum v_i grad l_i^T - I|.
    """
    vertices = p.vertices
    values, gradients = cs.values, cs.gradients
    n = p.dimension
    return IdentityResiduals(
        partition_of_unity=float(abs(values.sum() - 1.0)),
        linear_precision=float(np.linalg.norm(vertices.T @ values - cs.point)),
        gradient_sum=float(np.linalg.norm(gradients.sum(axis=0))),
        gradient_precision=float(np.abs(vertices.T @ gradients - np.eye(n)).max()),
    )
