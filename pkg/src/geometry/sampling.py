"""
Deterministic sample points inside polytopes and on facets.

Weights are exponential variates from ``numpy.random.default_rng(seed)``
normalized to sum 1, which is uniform on the weight simplex. The first
sample is always the (vertex or facet) centroid.
"""

from typing import List

import numpy as np

from ..models.polytope import Facet, Polytope


def sample_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator stream for (seed, keys...)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *[int(k) for k in keys]]))


def convex_samples(points: np.ndarray, count: int, seed: int) -> List[np.ndarray]:
    """Centroid followed by count-1 random strictly positive convex combinations."""
    if count < 0:
        raise ValueError(f"Sample count must be non-negative, got {count}")
    if count == 0:
        return []
    points = np.asarray(points, dtype=float)
    samples = [points.mean(axis=0)]
    if count > 1:
        rng = np.random.default_rng(seed)
        weights = rng.standard_exponential((count - 1, points.shape[0]))
        weights /= weights.sum(axis=1, keepdims=True)
        # Anchored form keeps coordinates shared by all points exact.
        offsets = points[1:] - points[0]
        samples.extend(points[0] + w[1:] @ offsets for w in weights)
    return samples


def sample_interior(p: Polytope, count: int, seed: int) -> List[np.ndarray]:
    """Points in the open interior of p, deterministic in (p, count, seed)."""
    return convex_samples(p.vertices, count, seed)


def sample_facet(f: Facet, count: int, seed: int) -> List[np.ndarray]:
    """Points in the relative interior of a facet, deterministic in (f, count, seed)."""
    return convex_samples(f.points, count, seed)

