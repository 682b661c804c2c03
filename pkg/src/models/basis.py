"""
Basis descriptor and field sample models.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from ..utils.errors import DescriptorError


class Family(Enum):
    """Full (P) or trimmed (Pminus, Whitney) linear family."""
    P = "P"
    PMINUS = "Pminus"

    @classmethod
    def parse(cls, text: str) -> "Family":
        """Accept 'P', 'Pminus', 'P-', 'W' (any case)."""
        key = text.strip().lower()
        if key == "p":
            return cls.P
        if key in ("pminus", "p-", "w", "whitney"):
            return cls.PMINUS
        raise DescriptorError(f"Unknown family '{text}'")


@dataclass(frozen=True)
class BasisDescriptor:
    """One function of the catalog: family, form degree, index tuple, rot flag."""
    family: Family
    k: int
    indices: Tuple[int, ...]
    rot: bool = False

    def __post_init__(self):
        """Validate the index count against the form degree."""
        indices = tuple(int(i) for i in self.indices)
        object.__setattr__(self, 'indices', indices)
        if self.k < 0:
            raise DescriptorError(f"Form degree must be non-negative, got {self.k}")
        if len(indices) != self.k + 1:
            raise DescriptorError(
                f"A {self.k}-form descriptor needs {self.k + 1} indices, got {indices}")
        if any(i < 0 for i in indices):
            raise DescriptorError(f"Negative vertex index in {indices}")
        if self.rot and self.k != 1:
            raise DescriptorError("rot flavour only exists for 1-forms")

    @property
    def is_whitney(self) -> bool:
        return self.family is Family.PMINUS and self.k > 0

    @property
    def is_degenerate(self) -> bool:
        """True when indices repeat where the function is antisymmetric."""
        if self.k == 0:
            return False
        if self.family is Family.PMINUS:
            return len(set(self.indices)) != len(self.indices)
        gradient_slots = self.indices[1:]
        return len(set(gradient_slots)) != len(gradient_slots)

    def is_canonical(self) -> bool:
        """Whether this tuple is one enumerate_basis would produce."""
        if len(set(self.indices)) != len(self.indices):
            return False
        if self.family is Family.PMINUS or self.k == 0:
            return list(self.indices) == sorted(self.indices)
        if self.k == 1:
            return True
        tail = self.indices[1:]
        return list(tail) == sorted(tail)

    def with_indices(self, indices: Tuple[int, ...]) -> "BasisDescriptor":
        return BasisDescriptor(self.family, self.k, tuple(indices), self.rot)

    @property
    def label(self) -> str:
        """Compact text form, e.g. 'W:0,1', 'P:2,0,1', 'P:0,1:rot'."""
        if self.k == 0:
            head = "L"
        else:
            head = "W" if self.family is Family.PMINUS else "P"
        text = f"{head}:{','.join(str(i) for i in self.indices)}"
        return text + (":rot" if self.rot else "")

    @classmethod
    def parse(cls, text: str) -> "BasisDescriptor":
        """Inverse of label: 'L:i', 'P:i,j[,k[,l]]', 'W:...', optional ':rot'."""
        parts = text.strip().split(":")
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2].lower() != "rot"):
            raise DescriptorError(f"Cannot parse descriptor '{text}'")
        head = parts[0].upper()
        try:
            indices = tuple(int(i) for i in parts[1].split(","))
        except ValueError:
            raise DescriptorError(f"Bad index list in descriptor '{text}'") from None
        rot = len(parts) == 3
        if head == "L":
            if len(indices) != 1:
                raise DescriptorError(f"'L' descriptors take one index: '{text}'")
            return cls(Family.P, 0, indices)
        if head not in ("P", "W"):
            raise DescriptorError(f"Unknown descriptor kind '{parts[0]}'")
        family = Family.P if head == "P" else Family.PMINUS
        return cls(family, len(indices) - 1, indices, rot)


@dataclass(frozen=True, eq=False)
class FieldSample:
    """Value of one basis function at one point: scalar or vector proxy."""
    kind: str
    value: Union[float, np.ndarray]

    @classmethod
    def scalar(cls, value: float) -> "FieldSample":
        return cls("scalar", float(value))

    @classmethod
    def vector(cls, value: np.ndarray) -> "FieldSample":
        return cls("vector", np.asarray(value, dtype=float))

    @property
    def is_scalar(self) -> bool:
        return self.kind == "scalar"

    def as_array(self) -> np.ndarray:
        """Components as a 1D array (length 1 for scalars)."""
        return np.atleast_1d(np.asarray(self.value, dtype=float))
