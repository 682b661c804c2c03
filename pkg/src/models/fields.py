"""
Target polynomial fields, Koszul forms and coefficient vectors.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .basis import BasisDescriptor
from ..utils.errors import DomainError


class FieldKind(Enum):
    """Kinds of target fields, in vector-proxy form."""
    IDENTITY = "identity"
    LINEAR_MATRIX = "matrix"
    CONSTANT_VECTOR = "const"
    SCALAR_ONE = "one"
    SCALAR_LINEAR = "linear"
    POSITION = "position"
    QUADRATIC = "quadratic"


@dataclass(frozen=True, eq=False)
class PolyField:
    """A polynomial target field: I, A·x, c, 1, a·x, x, or componentwise xᵀQx."""
    kind: FieldKind
    dimension: int
    matrix: Optional[np.ndarray] = None
    vector: Optional[np.ndarray] = None
    tensor: Optional[np.ndarray] = None

    def __post_init__(self):
        """Check payload dimensions against the ambient dimension."""
        n = self.dimension
        if n not in (2, 3):
            raise DomainError(f"Ambient dimension must be 2 or 3, got {n}")
        if self.kind is FieldKind.LINEAR_MATRIX:
            if self.matrix is None or np.shape(self.matrix) != (n, n):
                raise DomainError(f"Matrix payload must be {n}x{n}")
            object.__setattr__(self, 'matrix', np.array(self.matrix, dtype=float))
        if self.kind in (FieldKind.CONSTANT_VECTOR, FieldKind.SCALAR_LINEAR):
            if self.vector is None or np.shape(self.vector) != (n,):
                raise DomainError(f"Vector payload must have length {n}")
            object.__setattr__(self, 'vector', np.array(self.vector, dtype=float))
        if self.kind is FieldKind.QUADRATIC:
            tensor = np.array(self.tensor, dtype=float)
            if tensor.shape not in ((n, n), (n, n, n)):
                raise DomainError(f"Quadratic payload must be {n}x{n} or {n}x{n}x{n}")
            object.__setattr__(self, 'tensor', tensor)

    # Constructors
    @classmethod
    def identity(cls, n: int) -> "PolyField":
        return cls(FieldKind.IDENTITY, n)

    @classmethod
    def linear_matrix(cls, matrix) -> "PolyField":
        matrix = np.asarray(matrix, dtype=float)
        return cls(FieldKind.LINEAR_MATRIX, matrix.shape[0], matrix=matrix)

    @classmethod
    def constant(cls, vector) -> "PolyField":
        vector = np.asarray(vector, dtype=float)
        return cls(FieldKind.CONSTANT_VECTOR, vector.shape[0], vector=vector)

    @classmethod
    def scalar_one(cls, n: int) -> "PolyField":
        return cls(FieldKind.SCALAR_ONE, n)

    @classmethod
    def scalar_linear(cls, vector) -> "PolyField":
        vector = np.asarray(vector, dtype=float)
        return cls(FieldKind.SCALAR_LINEAR, vector.shape[0], vector=vector)

    @classmethod
    def position(cls, n: int) -> "PolyField":
        return cls(FieldKind.POSITION, n)

    @classmethod
    def quadratic(cls, tensor) -> "PolyField":
        """Scalar xᵀQx for an (n, n) payload, vector field for (n, n, n)."""
        tensor = np.asarray(tensor, dtype=float)
        return cls(FieldKind.QUADRATIC, tensor.shape[-1], tensor=tensor)

    @classmethod
    def from_koszul(cls, omega: "KoszulForm") -> "PolyField":
        """Vector proxy Φ(κω)·x of the Koszul image of a constant 2-form."""
        from ..reproduction.koszul import koszul_apply, koszul_matrix
        return cls.linear_matrix(koszul_matrix(koszul_apply(omega)))

    @property
    def is_scalar(self) -> bool:
        if self.kind is FieldKind.QUADRATIC:
            return self.tensor.ndim == 2
        return self.kind in (FieldKind.SCALAR_ONE, FieldKind.SCALAR_LINEAR)

    @property
    def components(self) -> int:
        return 1 if self.is_scalar else self.dimension

    def columns(self) -> List["PolyField"]:
        """Identity targets split into constant unit-vector fields."""
        if self.kind is not FieldKind.IDENTITY:
            return [self]
        return [PolyField.constant(np.eye(self.dimension)[c]) for c in range(self.dimension)]

    def value(self, x: np.ndarray) -> np.ndarray:
        """Field components at x as a 1D array."""
        x = np.asarray(x, dtype=float)
        if self.kind is FieldKind.IDENTITY:
            raise DomainError("The identity target is a matrix; evaluate its columns instead")
        if self.kind is FieldKind.LINEAR_MATRIX:
            return self.matrix @ x
        if self.kind is FieldKind.CONSTANT_VECTOR:
            return self.vector.copy()
        if self.kind is FieldKind.SCALAR_ONE:
            return np.ones(1)
        if self.kind is FieldKind.SCALAR_LINEAR:
            return np.atleast_1d(self.vector @ x)
        if self.kind is FieldKind.POSITION:
            return x.copy()
        if self.tensor.ndim == 2:
            return np.atleast_1d(x @ self.tensor @ x)
        return np.einsum('i,cij,j->c', x, self.tensor, x)

    @property
    def label(self) -> str:
        return self.kind.value


@dataclass(frozen=True, eq=False)
class KoszulForm:
    """
    A k-form with affine coefficients.

    Each increasing axis tuple σ maps to a length n+1 vector
    [constant, coefficient of x_1, ..., coefficient of x_n].
    """
    dimension: int
    degree: int
    coefficients: Dict[Tuple[int, ...], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        """Canonicalize keys and coefficient vectors."""
        n = self.dimension
        cleaned: Dict[Tuple[int, ...], np.ndarray] = {}
        for sigma, coeff in self.coefficients.items():
            sigma = tuple(int(s) for s in sigma)
            if len(sigma) != self.degree:
                raise DomainError(f"Axis tuple {sigma} does not match degree {self.degree}")
            if list(sigma) != sorted(set(sigma)) or (sigma and not 0 <= sigma[0] <= sigma[-1] < n):
                raise DomainError(f"Axis tuple {sigma} must be strictly increasing within 0..{n - 1}")
            vector = np.zeros(n + 1)
            coeff = np.atleast_1d(np.asarray(coeff, dtype=float))
            vector[:coeff.shape[0]] = coeff
            if not np.all(np.isfinite(vector)):
                raise DomainError(f"Non-finite coefficient on {sigma}")
            if np.any(vector != 0.0):
                cleaned[sigma] = vector
        object.__setattr__(self, 'coefficients', cleaned)

    @classmethod
    def constant(cls, dimension: int, terms: Dict[Tuple[int, ...], float]) -> "KoszulForm":
        """Constant-coefficient form Σ a_σ dx_σ."""
        degrees = {len(sigma) for sigma in terms}
        if len(degrees) > 1:
            raise DomainError("All terms of a form must share one degree")
        degree = degrees.pop() if degrees else 0
        return cls(dimension, degree, {sigma: [a] for sigma, a in terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_constant(self) -> bool:
        return all(not np.any(vector[1:]) for vector in self.coefficients.values())

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], np.ndarray]]:
        return iter(sorted(self.coefficients.items()))


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Real coefficients over the descriptors of one enumerate_basis result."""
    descriptors: Tuple[BasisDescriptor, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape[0] != len(self.descriptors):
            raise ValueError("One coefficient per descriptor is required")
        object.__setattr__(self, 'descriptors', tuple(self.descriptors))
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_mapping(cls, descriptors: List[BasisDescriptor],
                     mapping: Dict[BasisDescriptor, float]) -> "CoefficientVector":
        return cls(tuple(descriptors), np.array([mapping.get(d, 0.0) for d in descriptors]))

    def as_dict(self) -> Dict[BasisDescriptor, float]:
        return dict(zip(self.descriptors, self.values.tolist()))

    def __getitem__(self, descriptor: BasisDescriptor) -> float:
        return float(self.values[self.descriptors.index(descriptor)])

    def __len__(self) -> int:
        return len(self.descriptors)

    def nonzero(self, tol: float = 0.0) -> Dict[str, float]:
        """Label → coefficient for entries with magnitude above tol."""
        return {d.label: float(c) for d, c in zip(self.descriptors, self.values) if abs(c) > tol}


