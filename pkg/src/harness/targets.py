"""
Text forms of target fields used on the command line.

    identity | one | position | const:c1,c2[,c3] | linear:a1,a2[,a3]
    matrix:r1c1,r1c2;r2c1,r2c2 | koszul:i,j=a;... | random

Koszul axes are 0-based. 'random' draws a payload inside the guaranteed
span of the requested family.
"""

from typing import List, Optional

import numpy as np

from ..models.basis import Family
from ..models.fields import KoszulForm, PolyField
from ..reproduction.verify import random_payload
from ..utils.errors import DescriptorError


def _numbers(text: str, count: Optional[int], what: str) -> List[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise DescriptorError(f"Bad number list '{text}' in {what}") from None
    if count is not None and len(values) != count:
        raise DescriptorError(f"{what} needs {count} numbers, got {len(values)}")
    return values


def parse_target(text: str, dimension: int, family: Family = Family.P, k: int = 1,
                 rot_flag: bool = False, seed: int = 42) -> PolyField:
    """
    Parse a target string for an n-dimensional polytope.

    Raises:
        DescriptorError: unknown keyword or malformed payload
    """
    head, _, payload = text.strip().partition(":")
    head = head.lower()
    if head == "identity":
        return PolyField.identity(dimension)
    if head == "one":
        return PolyField.scalar_one(dimension)
    if head == "position":
        return PolyField.position(dimension)
    if head == "const":
        return PolyField.constant(_numbers(payload, dimension, "const"))
    if head == "linear":
        return PolyField.scalar_linear(_numbers(payload, dimension, "linear"))
    if head == "matrix":
        rows = [_numbers(row, dimension, "matrix row") for row in payload.split(";")]
        if len(rows) != dimension:
            raise DescriptorError(f"matrix needs {dimension} rows, got {len(rows)}")
        return PolyField.linear_matrix(rows)
    if head == "koszul":
        terms = {}
        for term in filter(None, payload.split(";")):
            axes, equals, value = term.partition("=")
            if not equals:
                raise DescriptorError(f"Koszul term '{term}' must read 'i,j=a'")
            try:
                key = tuple(int(a) for a in axes.split(","))
            except ValueError:
                raise DescriptorError(f"Bad axis list '{axes}' in koszul term") from None
            if len(key) != 2:
                raise DescriptorError(f"Koszul terms take two axes, got '{axes}'")
            terms[key] = _numbers(value, 1, "koszul coefficient")[0]
        return PolyField.from_koszul(KoszulForm.constant(dimension, terms))
    if head == "random":
        return random_payload(np.random.default_rng(seed), family, k, dimension, rot_flag)
    raise DescriptorError(f"Unknown target '{text}'")
