"""
Pointwise reproduction checks and the least-squares span oracle.
"""

from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import qr, solve_triangular

from ..forms.basis import enumerate_basis, evaluate_all
from ..gbc.wachspress import CoordinateSet, wachspress
from ..models.basis import Family
from ..models.fields import CoefficientVector, KoszulForm, PolyField
from ..models.polytope import Polytope
from ..models.reports import ResidualReport, SpanResult
from ..utils.errors import DomainError, InsufficientSamplesError
from ..utils.logger import get_logger
from .coefficients import coefficients_for

logger = get_logger("verify")

RANK_TOLERANCE = 1e-10


def identity_label(family: Family, k: int, target: PolyField, rot_flag: bool = False) -> str:
    """Stable identifier such as 'P1.const' or 'W1.rot.matrix'."""
    head = "L" if k == 0 else ("P" if family is Family.P else "W")
    degree = "" if k == 0 else str(k)
    return f"{head}{degree}{'.rot' if rot_flag else ''}.{target.label}"


def combine(cv: CoefficientVector, cs: CoordinateSet) -> np.ndarray:
    """sum_d c_d evaluate(d, cs) as a component array."""
    return evaluate_all(cv.descriptors, cs) @ cv.values


def verify_reproduction(p: Polytope, family: Family, k: int, target: PolyField,
                        samples: Sequence[np.ndarray], rot_flag: bool = False,
                        identity_id: Optional[str] = None) -> ResidualReport:
    """
    Max pointwise residual of sum_d c_d F_d - target over the samples.

    Identity targets are checked column by column as constant fields; the
    residual at a sample is the worst column. Ties between samples resolve to
    the lowest sample index.
    """
    columns = target.columns()
    vectors = [coefficients_for(column, p, family, k, rot_flag) for column in columns]
    residuals: List[float] = []
    for x in samples:
        cs = wachspress(p, x)
        worst = 0.0
        for column, cv in zip(columns, vectors):
            difference = combine(cv, cs) - column.value(cs.point)
            worst = max(worst, float(np.abs(difference).max()))
        residuals.append(worst)

    worst_sample = int(np.argmax(residuals)) if residuals else -1
    report = ResidualReport(
        identity_id=identity_id or identity_label(family, k, target, rot_flag),
        max_residual=residuals[worst_sample] if residuals else 0.0,
        worst_sample=worst_sample,
        sample_residuals=residuals,
        coefficients=vectors)
    logger.debug(f"{report.identity_id}: max residual {report.max_residual:.3e} "
                 f"over {len(residuals)} samples")
    return report


def span_contains(p: Polytope, family: Family, k: int, target: PolyField,
                  samples: Sequence[np.ndarray], rot_flag: bool = False,
                  rank_tol: float = RANK_TOLERANCE) -> SpanResult:
    """
    Least-squares membership of target in the span of one family.

    Solves [evaluate(d, x_s)] c ~ target(x_s) with column-pivoted QR. The rank
    counts diagonal entries of R above rank_tol times the largest one. A
    result whose rank equals the row count fits any right-hand side and is
    flagged as underresolved.

    Raises:
        InsufficientSamplesError: fewer rows than descriptors
        DomainError: target and basis have different component counts
    """
    descriptors = enumerate_basis(p, k, family, rot_flag)
    columns = target.columns()
    components = columns[0].components
    scalar_basis = k in (0, p.dimension)
    if (components == 1) != scalar_basis:
        raise DomainError(
            f"Target '{target.label}' has {components} components; "
            f"{family.value} k={k} functions have {1 if scalar_basis else p.dimension}")
    rows = len(samples) * components
    if rows < len(descriptors):
        raise InsufficientSamplesError(
            f"{len(samples)} samples x {components} components = {rows} rows "
            f"< {len(descriptors)} descriptors")

    blocks, right_hand = [], [[] for _ in columns]
    for x in samples:
        cs = wachspress(p, x)
        blocks.append(evaluate_all(descriptors, cs))
        for index, column in enumerate(columns):
            right_hand[index].append(column.value(cs.point))
    system = np.vstack(blocks)

    q, r, pivots = qr(system, mode='economic', pivoting=True)
    diagonal = np.abs(np.diag(r))
    rank = int(np.count_nonzero(diagonal > rank_tol * diagonal[0])) if diagonal.size and diagonal[0] > 0 else 0

    worst = 0.0
    for values in right_hand:
        b = np.concatenate(values)
        solution = np.zeros(system.shape[1])
        if rank:
            reduced = solve_triangular(r[:rank, :rank], (q.T @ b)[:rank])
            solution[pivots[:rank]] = reduced
        residual = np.linalg.norm(system @ solution - b)
        scale = np.linalg.norm(b)
        worst = max(worst, float(residual / scale) if scale > 0 else float(residual))

    result = SpanResult(worst, rank, rows, system.shape[1], rank >= rows)
    logger.debug(f"span {identity_label(family, k, target, rot_flag)}: relative residual "
                 f"{worst:.3e}, rank {rank}/{system.shape[1]}")
    return result


def random_payload(rng: np.random.Generator, family: Family, k: int, dimension: int,
                   rot_flag: bool = False) -> PolyField:
    """
    Seeded linear target inside the guaranteed span of (family, k).

    Entries are uniform in [-1, 1]. Trimmed 1-forms get an antisymmetric
    matrix built as the Koszul image of a random constant 2-form; trimmed
    top-degree forms only reach the constant one.
    """
    if k == 0 or (k == dimension and family is Family.P):
        return PolyField.scalar_linear(rng.uniform(-1.0, 1.0, dimension))
    if k == dimension:
        return PolyField.scalar_one(dimension)
    if family is Family.P:
        return PolyField.linear_matrix(rng.uniform(-1.0, 1.0, (dimension, dimension)))
    if k == 1 and rot_flag:
        return PolyField.linear_matrix(rng.uniform(-1.0, 1.0) * np.eye(2))
    if k == 1:
        pairs = [(a, b) for a in range(dimension) for b in range(a + 1, dimension)]
        omega = KoszulForm.constant(dimension, {pair: rng.uniform(-1.0, 1.0) for pair in pairs})
        return PolyField.from_koszul(omega)
    return PolyField.linear_matrix(rng.uniform(-1.0, 1.0) * np.eye(dimension))

