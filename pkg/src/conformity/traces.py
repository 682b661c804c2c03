"""
Facet traces of basis functions: boundary vanishing and inter-element jumps.

Functions are matched across elements by global vertex-id tuples (ascending
for Whitney forms, lambda index first then ascending for the P family). On
each element a global tuple is evaluated with its local indices in that same
order, so both sides carry the same sign convention.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..forms.basis import enumerate_tuples, evaluate, evaluate_all
from ..gbc.wachspress import wachspress
from ..geometry.complex_builder import tangent_frame
from ..geometry.sampling import sample_facet
from ..models.basis import BasisDescriptor, Family
from ..models.polytope import Facet, MeshComplex, Polytope
from ..models.reports import BoundaryVanishingReport, JumpReport, TraceRecord
from ..utils.errors import DomainError, NonInteriorFacetError
from ..utils.logger import get_logger

logger = get_logger("traces")

GlobalTuple = Tuple[int, ...]


def boundary_vanishing_check(p: Polytope, f: Facet, samples: Sequence[np.ndarray],
                             value_tol: float = 1e-10, gradient_tol: float = 1e-8) -> BoundaryVanishingReport:
    """
    Coordinates of vertices off a facet vanish on it with inward normal gradients.

    Reports the largest |lambda_k|, the largest tangential part of grad lambda_k
    and the smallest grad lambda_k . (inward normal) over all samples and all
    vertices k of p not on f.
    """
    local_facet = p.facet_index(f.vertex_ids)
    normal = p.facet_normals[local_facet]
    off_facet = [i for i, vertex_id in enumerate(p.vertex_ids) if vertex_id not in f.vertex_ids]

    max_value, max_tangential, min_inward = 0.0, 0.0, np.inf
    for x in samples:
        cs = wachspress(p, x)
        for i in off_facet:
            gradient = cs.gradients[i]
            inward = -float(gradient @ normal)
            tangential = float(np.linalg.norm(gradient + inward * normal))
            max_value = max(max_value, abs(float(cs.values[i])))
            max_tangential = max(max_tangential, tangential)
            min_inward = min(min_inward, inward)
    if not off_facet or not len(samples):
        min_inward = np.inf
    return BoundaryVanishingReport(f.vertex_ids, max_value, max_tangential, float(min_inward),
                                   value_tol, gradient_tol)


def trace_kind(dimension: int, k: int, rot_flag: bool = False) -> str:
    """Which trace a family must keep continuous: 'value', 'tangential' or 'normal'."""
    if k == 0:
        return "value"
    if k == 1 and not rot_flag:
        return "tangential"
    if (k == 1 and dimension == 2) or (k == 2 and dimension == 3):
        return "normal"
    raise DomainError(f"{k}-forms in {dimension}D carry no inter-element continuity")


def facet_trace(value: np.ndarray, facet: Facet, kind: str) -> np.ndarray:
    """Tangent-frame components, the normal component in the first element's frame, or the value."""
    if kind == "tangential":
        return facet.tangents @ value
    if kind == "normal":
        return np.atleast_1d(facet.normal @ value)
    return np.atleast_1d(value)


def element_tuples(element: Polytope, k: int, family: Family) -> List[GlobalTuple]:
    """Canonical global tuples of one family on an element."""
    return enumerate_tuples(element.vertex_ids, k, family)


def local_descriptor(element: Polytope, family: Family, k: int, rot_flag: bool,
                     global_tuple: GlobalTuple) -> BasisDescriptor:
    """Descriptor with local indices in the global tuple's order."""
    if k == 0:
        family = Family.P
    return BasisDescriptor(family, k, tuple(element.local_index(g) for g in global_tuple), rot_flag)


def _interior(mesh: MeshComplex, facet_id: int) -> Facet:
    facet = mesh.facet(facet_id)
    if not facet.is_interior:
        raise NonInteriorFacetError(f"Facet {facet_id} is a boundary facet; traces jump only across interior facets")
    return facet


def _side_traces(mesh: MeshComplex, facet: Facet, family: Family, k: int, rot_flag: bool,
                 kind: str, samples: Sequence[np.ndarray]) -> List[Dict[GlobalTuple, List[np.ndarray]]]:
    """Per element: global tuple -> traces at every sample."""
    sides = []
    for element_id in facet.element_ids:
        element = mesh.element(element_id)
        tuples = element_tuples(element, k, family)
        descriptors = [local_descriptor(element, family, k, rot_flag, t) for t in tuples]
        traces: Dict[GlobalTuple, List[np.ndarray]] = {t: [] for t in tuples}
        for x in samples:
            cs = wachspress(element, x)
            for t, d in zip(tuples, descriptors):
                traces[t].append(facet_trace(evaluate(d, cs).as_array(), facet, kind))
        sides.append(traces)
    return sides


def shared_jump(mesh: MeshComplex, facet_id: int, family: Family, k: int, rot_flag: bool = False,
                samples: Optional[Sequence[np.ndarray]] = None, count: int = 20, seed: int = 42,
                tol: float = 1e-8) -> JumpReport:
    """
    Trace jumps of every globally indexed function of a family across a facet.

    Functions present on both sides report the trace difference; functions
    present on one side only report that side's trace, which must vanish
    because the other side's extension is zero.
    """
    facet = _interior(mesh, facet_id)
    kind = trace_kind(mesh.dimension, k, rot_flag)
    if samples is None:
        samples = sample_facet(facet, count, seed)
    first, second = _side_traces(mesh, facet, family, k, rot_flag, kind, samples)

    records: List[TraceRecord] = []
    for t in sorted(set(first) | set(second)):
        if t in first and t in second:
            jump = max(float(np.linalg.norm(a - b)) for a, b in zip(first[t], second[t]))
            side = "both"
        else:
            owner = facet.element_ids[0] if t in first else facet.element_ids[1]
            values = first[t] if t in first else second[t]
            jump = max(float(np.linalg.norm(a)) for a in values)
            side = str(owner)
        records.append(TraceRecord(t, side, jump))

    report = JumpReport(facet_id, kind, tol, records)
    logger.debug(f"Facet {facet_id} {kind} jump of {family.value} k={k}: {report.max_jump:.3e} "
                 f"over {len(records)} functions")
    return report


def tangential_jump(mesh: MeshComplex, facet_id: int, family: Family,
                    samples: Optional[Sequence[np.ndarray]] = None, count: int = 20,
                    seed: int = 42, tol: float = 1e-8) -> JumpReport:
    """Tangential trace jumps of the 1-form families across an interior facet."""
    return shared_jump(mesh, facet_id, family, 1, False, samples, count, seed, tol)


def normal_jump(mesh: MeshComplex, facet_id: int, family: Family,
                samples: Optional[Sequence[np.ndarray]] = None, count: int = 20,
                seed: int = 42, tol: float = 1e-8) -> JumpReport:
    """Normal trace jumps: rot 1-forms in 2D, 2-forms in 3D."""
    if mesh.dimension == 2:
        return shared_jump(mesh, facet_id, family, 1, True, samples, count, seed, tol)
    return shared_jump(mesh, facet_id, family, 2, False, samples, count, seed, tol)


def random_span_jump(mesh: MeshComplex, facet_id: int, family: Family, k: int, seed: int,
                     samples: Optional[Sequence[np.ndarray]] = None, count: int = 20,
                     rot_flag: bool = False, mismatch: float = 0.0, tol: float = 1e-8) -> JumpReport:
    """
    Trace jump of a random element of the global span.

    Coefficients are drawn uniformly in [-1, 1] per global tuple and shared
    by both elements. A non-zero mismatch adds an independent perturbation of
    that size to the second element's coefficients.
    """
    facet = _interior(mesh, facet_id)
    kind = trace_kind(mesh.dimension, k, rot_flag)
    if samples is None:
        samples = sample_facet(facet, count, seed)

    elements = [mesh.element(e) for e in facet.element_ids]
    tuples = [element_tuples(element, k, family) for element in elements]
    union = sorted(set(tuples[0]) | set(tuples[1]))
    rng = np.random.default_rng(seed)
    drawn = dict(zip(union, rng.uniform(-1.0, 1.0, len(union))))
    perturbation = dict(zip(union, rng.uniform(-1.0, 1.0, len(union))))

    jump = 0.0
    for x in samples:
        traces = []
        for side, (element, own) in enumerate(zip(elements, tuples)):
            descriptors = [local_descriptor(element, family, k, rot_flag, t) for t in own]
            coefficients = np.array([drawn[t] + (mismatch * perturbation[t] if side else 0.0)
                                     for t in own])
            value = evaluate_all(descriptors, wachspress(element, x)) @ coefficients
            traces.append(facet_trace(value, facet, kind))
        jump = max(jump, float(np.linalg.norm(traces[0] - traces[1])))

    return JumpReport(facet_id, kind, tol, [TraceRecord((), f"span seed={seed}", jump)])


def frame_residual(facet: Facet) -> float:
    """Largest deviation of the facet frame from orthonormality."""
    basis = np.vstack([facet.normal, *tangent_frame(facet.points, facet.normal)])
    return float(np.abs(basis @ basis.T - np.eye(basis.shape[0])).max())
