"""
Error hierarchy for gbc-forms.

Every error is a ValueError so callers that only care about bad input can
catch the builtin; the CLI maps the classes onto exit codes.
"""

from typing import List, Optional


class GbcFormsError(ValueError):
    """Base class for all library errors."""

    kind = "error"


class DegeneratePolytopeError(GbcFormsError):
    """Zero-area polygon, zero-volume polyhedron or zero-length facet."""

    kind = "degenerate"


class PolytopeValidationError(GbcFormsError):
    """An element failed validate_polytope."""

    kind = "validation"

    def __init__(self, message: str, element_id: Optional[int] = None,
                 violations: Optional[List] = None):
        super().__init__(message)
        self.element_id = element_id
        self.violations = violations or []

    @property
    def vertex_id(self) -> Optional[int]:
        """Global id of the first offending vertex, if any."""
        for violation in self.violations:
            if violation.vertex_id is not None:
                return violation.vertex_id
        return None


class NonManifoldError(GbcFormsError):
    """A facet is claimed by more than two elements."""

    kind = "non-manifold"


class InconsistentMeshError(GbcFormsError):
    """Facet vertex sets match but the geometry does not."""

    kind = "inconsistent"


class DomainError(GbcFormsError):
    """Argument outside the supported domain (point outside, k > n, ...)."""

    kind = "domain"


class TopologyError(GbcFormsError):
    """Combinatorics that cannot belong to a convex polytope."""

    kind = "topology"


class CoordinateConsistencyError(GbcFormsError):
    """Wachspress weights summed to a non-positive value."""

    kind = "coordinates"


class StencilError(GbcFormsError):
    """Finite-difference stencil leaves the polytope."""

    kind = "stencil"


class NotASimplexError(GbcFormsError):
    """Simplicial oracle called on a polytope with more than n+1 vertices."""

    kind = "not-simplex"


class DescriptorError(GbcFormsError):
    """Malformed basis descriptor or mismatch with a coordinate set."""

    kind = "descriptor"


class UnsupportedTargetError(GbcFormsError):
    """Target field outside the guaranteed span of a family."""

    kind = "unsupported-target"


class InsufficientSamplesError(GbcFormsError):
    """Too few sample rows for a least-squares span test."""

    kind = "samples"


class ContractViolationError(GbcFormsError):
    """Input breaks a documented precondition."""

    kind = "contract"


class NonInteriorFacetError(GbcFormsError):
    """Trace jumps only exist on interior facets."""

    kind = "boundary-facet"


class MeshIndexError(GbcFormsError):
    """Element or vertex id out of range."""

    kind = "index"


class MeshParseError(GbcFormsError):
    """Mesh document could not be parsed."""

    kind = "parse"

    def __init__(self, message: str, field: str = "", line: Optional[int] = None):
        super().__init__(message)
        self.field = field
        self.line = line
