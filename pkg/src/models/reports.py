"""
Result records produced by validation, verification and counting.

Every record exposes ``to_dict()`` returning plain JSON-serialisable data
so the harness can write reports without knowing the record type.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from .basis import Family


class ViolationKind(Enum):
    """Ways a polytope can fail validation."""
    NON_CONVEX_VERTEX = "non-convex-vertex"
    NON_PLANAR_FACE = "non-planar-face"
    BAD_EDGE_INCIDENCE = "bad-edge-incidence"
    WRONG_ORIENTATION = "wrong-orientation"
    EULER = "euler"


@dataclass(frozen=True)
class Violation:
    """One failed geometric or topological predicate."""
    kind: ViolationKind
    message: str
    vertex_id: Optional[int] = None
    face_index: Optional[int] = None
    magnitude: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'message': self.message,
            'vertex_id': self.vertex_id,
            'face_index': self.face_index,
            'magnitude': self.magnitude,
        }


@dataclass
class ValidationResult:
    """Outcome of validate_polytope: pass, or the list of violations."""
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def kinds(self) -> List[ViolationKind]:
        return [v.kind for v in self.violations]

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'violations': [v.to_dict() for v in self.violations]}


class IdentityResiduals(NamedTuple):
    """Residuals of the four coordinate identities at one point."""
    partition_of_unity: float
    linear_precision: float
    gradient_sum: float
    gradient_precision: float


@dataclass
class ResidualReport:
    """Pointwise reproduction residuals of one (family, k, target) combination."""
    identity_id: str
    max_residual: float
    worst_sample: int
    sample_residuals: List[float]
    coefficients: List[Any] = field(default_factory=list)

    def passed(self, tol: float) -> bool:
        return self.max_residual <= tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            'identity_id': self.identity_id,
            'max_residual': self.max_residual,
            'worst_sample': self.worst_sample,
        }


@dataclass
class SpanResult:
    """Least-squares span membership of a target at sample resolution."""
    relative_residual: float
    rank: int
    rows: int
    columns: int
    underresolved: bool

    def contains(self, tol: float = 1e-8) -> bool:
        return not self.underresolved and self.relative_residual < tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            'relative_residual': self.relative_residual,
            'rank': self.rank,
            'rows': self.rows,
            'columns': self.columns,
            'underresolved': self.underresolved,
        }


@dataclass(frozen=True)
class TraceRecord:
    """Trace mismatch of one globally indexed function on one facet."""
    global_indices: Tuple[int, ...]
    side: str  # 'both' for shared functions, else the element id whose trace must vanish
    jump: float


@dataclass
class JumpReport:
    """Trace jumps of one family across one facet."""
    facet_id: int
    trace: str  # 'tangential', 'normal' or 'value'
    tolerance: float
    records: List[TraceRecord] = field(default_factory=list)

    @property
    def max_jump(self) -> float:
        return max((r.jump for r in self.records), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_jump <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        worst = max(self.records, key=lambda r: r.jump, default=None)
        return {
            'facet_id': self.facet_id,
            'trace': self.trace,
            'max_jump': self.max_jump,
            'tolerance': self.tolerance,
            'passed': self.passed,
            'functions_checked': len(self.records),
            'worst': None if worst is None else {
                'indices': list(worst.global_indices), 'side': worst.side},
        }


@dataclass
class BoundaryVanishingReport:
    """Coordinate behaviour on one facet for vertices off that facet."""
    facet_vertex_ids: Tuple[int, ...]
    max_value: float
    max_tangential_gradient: float
    min_inward_gradient: float
    value_tolerance: float = 1e-10
    gradient_tolerance: float = 1e-8

    @property
    def passed(self) -> bool:
        return (self.max_value <= self.value_tolerance
                and self.max_tangential_gradient <= self.gradient_tolerance
                and self.min_inward_gradient > 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'facet_vertex_ids': list(self.facet_vertex_ids),
            'max_value': self.max_value,
            'max_tangential_gradient': self.max_tangential_gradient,
            'min_inward_gradient': self.min_inward_gradient,
            'passed': self.passed,
        }


@dataclass(frozen=True)
class CountRecord:
    """Construction/boundary/polynomial counts for one (n, k, family)."""
    n: int
    k: int
    family: Family
    constructed: int
    boundary: int
    polynomial: int
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'k': self.k,
            'family': self.family.value,
            'constructed': self.constructed,
            'boundary': self.boundary,
            'polynomial': self.polynomial,
            'note': self.note,
        }


@dataclass(frozen=True)
class CheckRecord:
    """One suite check: residual against tolerance on one element or facet."""
    check_id: str
    target: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    @property
    def sort_key(self) -> Tuple[str, str, int]:
        kind, _, number = self.target.partition(":")
        return (self.check_id, kind, int(number) if number.isdigit() else -1)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'check_id': self.check_id,
            'target': self.target,
            'residual': self.residual,
            'tolerance': self.tolerance,
            'pass': self.passed,
        }
        if self.detail:
            data['detail'] = self.detail
        return data


@dataclass
class SuiteReport:
    """Header plus ordered check records; passes iff every record passes."""
    tool_version: str
    mesh_digest: str
    settings: Dict[str, Any]
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def sorted_records(self) -> List[CheckRecord]:
        return sorted(self.records, key=lambda r: r.sort_key)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.sorted_records() if not r.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tool_version': self.tool_version,
            'mesh_digest': self.mesh_digest,
            'settings': dict(sorted(self.settings.items())),
            'overall_pass': self.passed,
            'records': [r.to_dict() for r in self.sorted_records()],
        }
