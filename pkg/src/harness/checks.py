"""
Per-element and per-facet checks run by the verification suites.

Each check function is pure in (mesh, id, settings) and returns a list of
CheckRecords, so the orchestrator can run them in any order.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, List

import numpy as np

from ..conformity.hat import hat_continuity_check
from ..conformity.traces import (boundary_vanishing_check, frame_residual, normal_jump,
                                 random_span_jump, tangential_jump)
from ..forms.basis import enumerate_basis, evaluate
from ..forms.counting import count_table
from ..forms.simplex_reference import whitney_simplex_reference
from ..gbc.identities import coordinate_identity_residuals
from ..gbc.oracle import gradient_fd_oracle
from ..gbc.wachspress import wachspress
from ..geometry.sampling import sample_facet, sample_interior, sample_rng
from ..models.basis import Family
from ..models.fields import PolyField
from ..models.polytope import MeshComplex, Polytope
from ..models.reports import CheckRecord, JumpReport
from ..reproduction.coefficients import coefficients_for, expand_whitney
from ..reproduction.verify import combine, identity_label, random_payload, span_contains, verify_reproduction
from ..utils.errors import StencilError
from ..utils.logger import get_logger

logger = get_logger("checks")

VALUE_TOLERANCE = 1e-10
NONNEGATIVITY_TOLERANCE = 1e-12
SIMPLEX_TOLERANCE = 1e-12
SCALAR_IDENTITY_TOLERANCE = 1e-9
FD_TOLERANCE = 1e-8
FD_STEP = 1e-4
FD_POINTS = 8
NEGATIVE_CONTROL_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SuiteSettings:
    """Effective settings of one suite run; recorded in the report header."""
    tolerance: float = 1e-8
    seed: int = 42
    samples: int = 100
    facet_samples: int = 20
    random_span_draws: int = 5
    workers: int = 4
    geometric_tolerance: float = 1e-9

    @classmethod
    def from_dict(cls, settings: Dict[str, Any]) -> "SuiteSettings":
        known = {key: settings[key] for key in cls.__dataclass_fields__ if key in settings}
        return cls(**known)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _element(element_id: int) -> str:
    return f"element:{element_id}"


def _facet(facet_id: int) -> str:
    return f"facet:{facet_id}"


def _record(check_id: str, target: str, residual: float, tolerance: float, detail: str = "") -> CheckRecord:
    return CheckRecord(check_id, target, float(residual), float(tolerance), bool(residual <= tolerance), detail)


# Identities

def identity_checks(mesh: MeshComplex, element_id: int, settings: SuiteSettings) -> List[CheckRecord]:
    """Coordinate identities, non-negativity, FD gradients and simplex recovery on one element."""
    p = mesh.element(element_id)
    target = _element(element_id)
    samples = sample_interior(p, settings.samples, settings.seed)

    worst = np.zeros(4)
    lowest = np.inf
    for x in samples:
        cs = wachspress(p, x)
        worst = np.maximum(worst, coordinate_identity_residuals(cs, p))
        lowest = min(lowest, float(cs.values.min()))

    tol = settings.tolerance
    records = [
        _record("gbc.partition_of_unity", target, worst[0], VALUE_TOLERANCE),
        _record("gbc.linear_precision", target, worst[1], VALUE_TOLERANCE * max(1.0, p.diameter)),
        _record("gbc.gradient_sum", target, worst[2], tol),
        _record("gbc.gradient_precision", target, worst[3], tol),
        _record("gbc.nonnegativity", target, max(0.0, -lowest), NONNEGATIVITY_TOLERANCE),
    ]

    fd_worst, fitted = 0.0, 0
    for x in samples[:FD_POINTS]:
        try:
            estimate = gradient_fd_oracle(p, x, FD_STEP)
        except StencilError as e:
            logger.debug(f"Skipping FD gradient at a point of element {element_id}: {e}")
            continue
        analytic = wachspress(p, x).gradients
        scale = max(1.0, float(np.abs(analytic).max()))
        fd_worst = max(fd_worst, float(np.abs(analytic - estimate).max()) / scale)
        fitted += 1
    if fitted:
        records.append(_record("gbc.fd_gradient", target, fd_worst, FD_TOLERANCE, f"points={fitted}"))
    else:
        logger.debug(f"Skipping FD gradient check on element {element_id}: no stencil fits")

    if p.is_simplex:
        records.append(_record("forms.simplicial_recovery", target,
                               simplicial_recovery_residual(p, samples), SIMPLEX_TOLERANCE))
    return records


def simplicial_recovery_residual(simplex: Polytope, samples) -> float:
    """Largest difference between every catalog function and the affine-coordinate formula."""
    descriptors = []
    for k in range(simplex.dimension + 1):
        for family in (Family.P, Family.PMINUS):
            if k == 0 and family is Family.PMINUS:
                continue
            descriptors.extend(enumerate_basis(simplex, k, family))
            if simplex.dimension == 2 and k == 1:
                descriptors.extend(enumerate_basis(simplex, k, family, rot_flag=True))
    worst = 0.0
    for x in samples:
        cs = wachspress(simplex, x)
        for d in descriptors:
            difference = evaluate(d, cs).as_array() - whitney_simplex_reference(d, simplex, x).as_array()
            worst = max(worst, float(np.abs(difference).max()))
    return worst


# Reproduction

def matrix_identity_cases(dimension: int):
    """(family, k, rot) combinations whose coefficients reproduce the identity matrix."""
    if dimension == 2:
        return [(Family.P, 1, False), (Family.P, 1, True), (Family.PMINUS, 1, False), (Family.PMINUS, 1, True)]
    return [(Family.P, 1, False), (Family.P, 2, False), (Family.PMINUS, 1, False), (Family.PMINUS, 2, False)]


def linear_payload_cases(dimension: int):
    """Combinations with closed-form coefficients for linear payloads."""
    cases = [(Family.P, 0, False)] + matrix_identity_cases(dimension)
    if dimension == 2:
        cases.append((Family.P, 2, False))
    return cases


def span_cases(dimension: int):
    """Top-degree families verified through the span oracle: (family, k, target)."""
    if dimension == 2:
        return [(Family.PMINUS, 2, PolyField.scalar_one(2))]
    return [(Family.P, 3, PolyField.scalar_one(3)),
            (Family.P, 3, PolyField.scalar_linear(np.ones(3))),
            (Family.PMINUS, 3, PolyField.scalar_one(3))]


def repro_checks(mesh: MeshComplex, element_id: int, settings: SuiteSettings) -> List[CheckRecord]:
    """Matrix and scalar identities, seeded linear payloads, span membership and controls."""
    p = mesh.element(element_id)
    n = p.dimension
    target = _element(element_id)
    tol = settings.tolerance
    samples = sample_interior(p, settings.samples, settings.seed)
    records: List[CheckRecord] = []

    for family, k, rot_flag in matrix_identity_cases(n):
        report = verify_reproduction(p, family, k, PolyField.identity(n), samples, rot_flag)
        records.append(_record(f"repro.{report.identity_id}", target, report.max_residual, tol))

    if n == 2:
        report = verify_reproduction(p, Family.P, 2, PolyField.scalar_one(2), samples)
        records.append(_record(f"repro.{report.identity_id}", target, report.max_residual,
                               SCALAR_IDENTITY_TOLERANCE))
    report = verify_reproduction(p, Family.P, 0, PolyField.scalar_one(n), samples)
    records.append(_record(f"repro.{report.identity_id}", target, report.max_residual, tol))

    for case, (family, k, rot_flag) in enumerate(linear_payload_cases(n)):
        rng = sample_rng(settings.seed, element_id, case)
        worst, label = 0.0, ""
        for _ in range(settings.random_span_draws):
            payload = random_payload(rng, family, k, n, rot_flag)
            report = verify_reproduction(p, family, k, payload, samples, rot_flag)
            worst = max(worst, report.max_residual)
            label = identity_label(family, k, payload, rot_flag)
        records.append(_record(f"repro.{label}.random", target, worst, tol,
                               f"draws={settings.random_span_draws}"))

    for family, k, field in span_cases(n):
        columns = len(enumerate_basis(p, k, family))
        span_samples = sample_interior(p, max(settings.samples, 2 * columns + 10), settings.seed)
        result = span_contains(p, family, k, field, span_samples)
        passed = result.contains(tol)
        records.append(CheckRecord(f"repro.span.{identity_label(family, k, field)}", target,
                                   result.relative_residual, tol, passed,
                                   f"rank={result.rank} columns={result.columns} rows={result.rows}"))

    if p.is_simplex:
        quadratic = np.zeros((n, n, n))
        quadratic[0, 0, 0] = 1.0
        result = span_contains(p, Family.P, 1, PolyField.quadratic(quadratic), samples)
        records.append(CheckRecord("repro.span.negative_control", target, result.relative_residual,
                                   NEGATIVE_CONTROL_THRESHOLD,
                                   result.relative_residual > NEGATIVE_CONTROL_THRESHOLD,
                                   "quadratic target must be rejected"))

    for k in range(1, n):
        records.append(_record(f"repro.W{k}_in_P{k}", target, whitney_in_full_residual(p, k, samples), tol))
    return records


def whitney_in_full_residual(p: Polytope, k: int, samples) -> float:
    """Reproduce a constant with trimmed coefficients re-expanded over the full family."""
    constant = PolyField.constant(np.arange(1, p.dimension + 1, dtype=float))
    expanded = expand_whitney(coefficients_for(constant, p, Family.PMINUS, k), p)
    worst = 0.0
    for x in samples:
        cs = wachspress(p, x)
        worst = max(worst, float(np.abs(combine(expanded, cs) - constant.value(cs.point)).max()))
    return worst


# Conformity

def _jump_record(check_id: str, report: JumpReport) -> CheckRecord:
    return CheckRecord(check_id, _facet(report.facet_id), report.max_jump, report.tolerance,
                       report.passed, f"trace={report.trace} functions={len(report.records)}")


def facet_conformity_checks(mesh: MeshComplex, facet_id: int, settings: SuiteSettings) -> List[CheckRecord]:
    """Hat, tangential, normal and random-span continuity across one interior facet."""
    facet = mesh.facet(facet_id)
    tol = settings.tolerance
    samples = sample_facet(facet, settings.facet_samples, settings.seed)
    records = [_jump_record("conf.hat.value", hat_continuity_check(mesh, facet_id, samples, tol=tol))]

    cases = []
    for family in (Family.P, Family.PMINUS):
        head = "P" if family is Family.P else "W"
        records.append(_jump_record(f"conf.tangential.{head}1",
                                    tangential_jump(mesh, facet_id, family, samples, tol=tol)))
        normal_label = f"{head}1.rot" if mesh.dimension == 2 else f"{head}2"
        records.append(_jump_record(f"conf.normal.{normal_label}",
                                    normal_jump(mesh, facet_id, family, samples, tol=tol)))
        cases.append((family, 1, False, f"{head}1"))
        if mesh.dimension == 2:
            cases.append((family, 1, True, f"{head}1.rot"))
        else:
            cases.append((family, 2, False, f"{head}2"))

    for family, k, rot_flag, label in cases:
        worst = 0.0
        for draw in range(settings.random_span_draws):
            report = random_span_jump(mesh, facet_id, family, k, settings.seed + draw, samples,
                                      rot_flag=rot_flag, tol=tol)
            worst = max(worst, report.max_jump)
        records.append(_record(f"conf.random.{label}", _facet(facet_id), worst, tol,
                               f"draws={settings.random_span_draws}"))
    return records


def element_boundary_checks(mesh: MeshComplex, element_id: int, settings: SuiteSettings) -> List[CheckRecord]:
    """Boundary vanishing of off-facet coordinates and frame orthonormality on every facet of an element."""
    p = mesh.element(element_id)
    records = []
    for facet in mesh.facets_of_element(element_id):
        samples = sample_facet(facet, settings.facet_samples, settings.seed)
        report = boundary_vanishing_check(p, facet, samples, VALUE_TOLERANCE, settings.tolerance)
        detail = f"element={element_id}"
        target = _facet(facet.facet_id)
        records.append(_record("conf.vanishing.value", target, report.max_value, report.value_tolerance, detail))
        records.append(_record("conf.vanishing.tangential", target, report.max_tangential_gradient,
                               report.gradient_tolerance, detail))
        records.append(CheckRecord("conf.vanishing.inward", target, report.min_inward_gradient, 0.0,
                                   report.min_inward_gradient > 0.0, detail))
        if facet.element_ids[0] == element_id:
            records.append(_record("conf.frame", target, frame_residual(facet), settings.geometric_tolerance))
    return records


# Counting

def count_checks(mesh: MeshComplex, element_id: int, settings: SuiteSettings) -> List[CheckRecord]:
    """Table counts against the length of the enumerated catalog."""
    p = mesh.element(element_id)
    records = []
    for row in count_table(p):
        enumerated = len(enumerate_basis(p, row.k, row.family))
        head = "L" if row.k == 0 else ("P" if row.family is Family.P else "W")
        detail = f"constructed={row.constructed} boundary={row.boundary} polynomial={row.polynomial}"
        if row.note:
            detail += f" note={row.note}"
        records.append(_record(f"count.{head}{row.k}", _element(element_id),
                               abs(row.constructed - enumerated), 0.0, detail))
    return records
