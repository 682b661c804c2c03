"""
Koszul operator on constant-coefficient forms and the matrix of its image.
"""

from typing import Dict, Tuple

import numpy as np

from ..models.fields import KoszulForm
from ..utils.errors import ContractViolationError


def koszul_apply(omega: KoszulForm) -> KoszulForm:
    """
    kappa(a dx_s1 ^ ... ^ dx_sk) = a sum_i (-1)^(i+1) x_si dx_s1 ^ ..(omit si).. ^ dx_sk.

    The result carries linear coefficients in the [const, x_1, ..., x_n]
    layout of KoszulForm. A 0-form maps to the zero form.
    """
    if not omega.is_constant:
        raise ContractViolationError("koszul_apply expects a constant-coefficient form")
    n = omega.dimension
    if omega.degree == 0:
        return KoszulForm(n, 0, {})

    image: Dict[Tuple[int, ...], np.ndarray] = {}
    for sigma, coefficients in omega.terms():
        for position, axis in enumerate(sigma):
            rest = sigma[:position] + sigma[position + 1:]
            vector = image.setdefault(rest, np.zeros(n + 1))
            vector[1 + axis] += (-1) ** position * coefficients[0]
    return KoszulForm(n, omega.degree - 1, image)


def koszul_matrix(form: KoszulForm) -> np.ndarray:
    """
    Matrix B with B x equal to the vector proxy of a linear homogeneous 1-form.

    Row c holds the x-coefficients of the dx_c component.
    """
    n = form.dimension
    if form.is_zero:
        return np.zeros((n, n))
    if form.degree != 1:
        raise ContractViolationError(f"Expected a 1-form, got degree {form.degree}")
    matrix = np.zeros((n, n))
    for (axis,), coefficients in form.terms():
        if coefficients[0] != 0.0:
            raise ContractViolationError("Form has a constant part; expected a Koszul image")
        matrix[axis] = coefficients[1:]
    return matrix


def phi_sign_matrix(form: KoszulForm) -> np.ndarray:
    """
    Sign pattern of the antisymmetric matrix of kappa(omega).

    Accepts either the Koszul image (a linear 1-form) or the constant 2-form
    omega itself, which is mapped through koszul_apply first. The matrix B is
    the vector proxy convention, B @ x equal to the proxy of kappa(omega), so
    omega = dx ^ dy gives rot and omega = dy ^ dz gives B[1, 2] = -1, B[2, 1] = +1.
    """
    if form.degree == 2 and form.is_constant:
        form = koszul_apply(form)
    if form.is_zero:
        return np.zeros((form.dimension, form.dimension), dtype=int)
    matrix = koszul_matrix(form)
    if not np.allclose(matrix, -matrix.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(matrix).max())):
        raise ContractViolationError("Koszul image is not antisymmetric")
    return np.sign(matrix).astype(int)
