"""
Construction, boundary and polynomial dimension counts per element.

"boundary" counts the functions whose indices all lie on one facet, the
ones that take part in inter-element continuity.
"""

from math import comb
from typing import List, Sequence

from ..models.basis import Family
from ..models.polytope import Polytope
from ..models.reports import CountRecord
from ..utils.errors import DomainError, TopologyError

# Polynomial space dimensions of the linear families.
POLYNOMIAL_2D = {(0, Family.P): 3, (1, Family.P): 6, (1, Family.PMINUS): 3,
                 (2, Family.P): 3, (2, Family.PMINUS): 1}
POLYNOMIAL_3D = {(0, Family.P): 4, (1, Family.P): 12, (1, Family.PMINUS): 6,
                 (2, Family.P): 12, (2, Family.PMINUS): 4,
                 (3, Family.P): 4, (3, Family.PMINUS): 1}

HEXAHEDRON_NOTE = ("hexahedron text reports 20 continuity-relevant functions; "
                   "the per-face formula gives 24 and is reported")


def count_2d(v: int, e: int, k: int, family: Family) -> CountRecord:
    """Counts on a polygon with v vertices and e edges."""
    if v != e or v < 3:
        raise TopologyError(f"A simple polygon needs v = e >= 3, got v={v}, e={e}")
    if k not in (0, 1, 2):
        raise DomainError(f"Form degree {k} is outside 0..2")
    if k == 0:
        family = Family.P
    constructed = _constructed(v, k, family)
    if k == 0:
        boundary = v
    elif k == 1:
        boundary = 2 * e if family is Family.P else e
    else:
        boundary = 0
    return CountRecord(2, k, family, constructed, boundary, POLYNOMIAL_2D[(k, family)])


def count_3d(v: int, e: int, f: int, face_vertex_counts: Sequence[int], k: int,
             family: Family) -> CountRecord:
    """Counts on a polyhedron; face_vertex_counts lists the vertex count of every face."""
    if v - e + f != 2:
        raise TopologyError(f"Euler relation fails: v - e + f = {v - e + f}")
    if len(face_vertex_counts) != f or sum(face_vertex_counts) != 2 * e:
        raise TopologyError(
            f"Face vertex counts {list(face_vertex_counts)} do not match f={f}, e={e}")
    if k not in (0, 1, 2, 3):
        raise DomainError(f"Form degree {k} is outside 0..3")
    if k == 0:
        family = Family.P

    counts = list(face_vertex_counts)
    note = ""
    if k == 0:
        boundary = v
    elif k == 1 and family is Family.P:
        boundary = sum(a * (a - 1) for a in counts) - 2 * e
    elif k == 1:
        boundary = sum(comb(a, 2) for a in counts) - e
        if (v, e, f) == (8, 12, 6) and all(a == 4 for a in counts):
            note = HEXAHEDRON_NOTE
    elif k == 2 and family is Family.P:
        boundary = sum(a * (a - 1) * (a - 2) // 2 for a in counts)
    elif k == 2:
        boundary = sum(comb(a, 3) for a in counts)
    else:
        boundary = 0
    return CountRecord(3, k, family, _constructed(v, k, family), boundary,
                       POLYNOMIAL_3D[(k, family)], note)


def _constructed(v: int, k: int, family: Family) -> int:
    if k == 0:
        return v
    if family is Family.PMINUS:
        return comb(v, k + 1)
    return (k + 1) * comb(v, k + 1)


def count_polytope(p: Polytope, k: int, family: Family) -> CountRecord:
    """Counts with (v, e, f, v_a) read off a polytope."""
    if p.dimension == 2:
        return count_2d(p.num_vertices, len(p.edges), k, family)
    return count_3d(p.num_vertices, len(p.edges), len(p.faces),
                    [len(face) for face in p.faces], k, family)


def count_table(p: Polytope) -> List[CountRecord]:
    """Every (k, family) row for p; k = 0 appears once."""
    rows = [count_polytope(p, 0, Family.P)]
    for k in range(1, p.dimension + 1):
        for family in (Family.P, Family.PMINUS):
            rows.append(count_polytope(p, k, family))
    return rows
