"""
Global hat functions assembled from per-element Wachspress coordinates.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from ..gbc.wachspress import wachspress
from ..geometry.sampling import sample_facet
from ..models.polytope import MeshComplex
from ..models.reports import JumpReport, TraceRecord
from ..utils.errors import NonInteriorFacetError


def hat_evaluate(mesh: MeshComplex, element_id: int, vertex_id: int, x) -> Tuple[float, np.ndarray]:
    """
    Value and gradient of the hat function of a global vertex on one element.

    Zero on elements that do not contain the vertex.
    """
    element = mesh.element(element_id)
    mesh.check_vertex(vertex_id)
    if not element.has_vertex(vertex_id):
        return 0.0, np.zeros(mesh.dimension)
    cs = wachspress(element, x)
    local = element.local_index(vertex_id)
    return float(cs.values[local]), cs.gradients[local].copy()


def hat_continuity_check(mesh: MeshComplex, facet_id: int, samples: Optional[Sequence[np.ndarray]] = None,
                         count: int = 20, seed: int = 42, tol: float = 1e-10) -> JumpReport:
    """Value jump of every hat function touching either side of an interior facet."""
    facet = mesh.facet(facet_id)
    if not facet.is_interior:
        raise NonInteriorFacetError(f"Facet {facet_id} is a boundary facet")
    if samples is None:
        samples = sample_facet(facet, count, seed)

    first, second = facet.element_ids
    vertex_ids = sorted(set(mesh.element(first).vertex_ids) | set(mesh.element(second).vertex_ids))
    jumps = np.zeros(len(vertex_ids))
    for x in samples:
        left = wachspress(mesh.element(first), x)
        right = wachspress(mesh.element(second), x)
        for index, vertex_id in enumerate(vertex_ids):
            a = left.values[left.vertex_ids.index(vertex_id)] if vertex_id in left.vertex_ids else 0.0
            b = right.values[right.vertex_ids.index(vertex_id)] if vertex_id in right.vertex_ids else 0.0
            jumps[index] = max(jumps[index], abs(a - b))

    records = [TraceRecord((vertex_id,), "both", float(jump)) for vertex_id, jump in zip(vertex_ids, jumps)]
    return JumpReport(facet_id, "value", tol, records)
