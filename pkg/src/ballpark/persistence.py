"""Persistence over Z/2: diagram computation, PBN queries, discontinuities.

The reduction is the standard boundary-matrix column algorithm with columns
stored as integer bitmasks.  Sublevels are closed (membership at value <= u),
so a pair (b, d) contributes to beta(u, v) iff b <= u and d > v; zero-length
pairs never contribute and are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .filtration import FilteredComplex
from .geometry import Simplex, SimplicialComplex

INF = math.inf


@dataclass(frozen=True)
class PersistenceDiagram:
    """Degree-indexed multiset of (birth, death) pairs, deaths possibly inf."""

    pairs_by_degree: Mapping[int, tuple[tuple[float, float], ...]]

    @classmethod
    def from_pairs(cls, pairs: Mapping[int, Iterable[tuple[float, float]]],
                   drop_zero: bool = True) -> "PersistenceDiagram":
        canon = {}
        for deg, ps in pairs.items():
            kept = []
            for b, d in ps:
                if d < b:
                    raise ValueError("death before birth")
                if drop_zero and d == b:
                    continue
                kept.append((float(b), float(d)))
            if kept:
                canon[int(deg)] = tuple(sorted(kept))
        return cls(canon)

    def pairs(self, degree: int) -> tuple[tuple[float, float], ...]:
        return self.pairs_by_degree.get(degree, ())

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.pairs_by_degree))

    def infinite_count(self, degree: int) -> int:
        return sum(1 for _, d in self.pairs(degree) if d == INF)

    def significant(self, degree: int, min_persistence: float) -> tuple[tuple[float, float], ...]:
        return tuple((b, d) for b, d in self.pairs(degree) if d - b > min_persistence)


@dataclass(frozen=True)
class PBNValue:
    degree: int
    u: tuple
    v: tuple
    value: int


@dataclass(frozen=True)
class Segment:
    """Axis-aligned discontinuity segment in the (u, v) plane.

    axis='vertical' fixes u=value over v in [lo, hi]; axis='horizontal' fixes
    v=value over u in [lo, hi]; axis='diagonal' stands for the boundary u=v.
    """

    axis: str
    value: float
    lo: float
    hi: float

    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"

    def maxnorm_distance(self, u: float, v: float) -> float:
        if self.axis == self.DIAGONAL:
            return abs(v - u) / 2.0
        if self.axis == self.VERTICAL:
            du = abs(u - self.value)
            dv = 0.0 if self.lo <= v <= self.hi else min(abs(v - self.lo), abs(v - self.hi))
        else:
            dv = abs(v - self.value)
            du = 0.0 if self.lo <= u <= self.hi else min(abs(u - self.lo), abs(u - self.hi))
        return max(du, dv)


def _canonical_order(F: FilteredComplex) -> list[Simplex]:
    return sorted(F.complex.simplices,
                  key=lambda s: (F.values[s][0], len(s), s))


def reduce_filtration(F: FilteredComplex) -> PersistenceDiagram:
    """Persistence diagram of a 1-parameter filtered complex over Z/2."""
    if F.n != 1:
        raise ValueError("reduction requires a 1-parameter filtration")
    if not F.check_monotone():
        raise ValueError("invalid filtration")
    order = _canonical_order(F)
    index = {s: i for i, s in enumerate(order)}
    columns: list[int] = []
    for s in order:
        col = 0
        if len(s) > 1:
            for drop in range(len(s)):
                col ^= 1 << index[s[:drop] + s[drop + 1:]]
        columns.append(col)

    low_owner: dict[int, int] = {}
    pair_of: dict[int, int] = {}
    for j in range(len(order)):
        col = columns[j]
        while col:
            low = col.bit_length() - 1
            owner = low_owner.get(low)
            if owner is None:
                break
            col ^= columns[owner]
        columns[j] = col
        if col:
            low = col.bit_length() - 1
            low_owner[low] = j
            pair_of[low] = j

    pairs: dict[int, list[tuple[float, float]]] = {}
    paired = set(pair_of) | set(pair_of.values())
    for low, j in pair_of.items():
        deg = len(order[low]) - 1
        birth = F.values[order[low]][0]
        death = F.values[order[j]][0]
        pairs.setdefault(deg, []).append((birth, death))
    for i, s in enumerate(order):
        if i not in paired:
            pairs.setdefault(len(s) - 1, []).append((F.values[s][0], INF))
    return PersistenceDiagram.from_pairs(pairs)


def count_alive(D: PersistenceDiagram, degree: int, u: float, v: float) -> int:
    """Number of classes with birth <= u and death > v."""
    return sum(1 for b, d in D.pairs(degree) if b <= u and d > v)


def pbn_query_1d(D: PersistenceDiagram, degree: int, u: float, v: float) -> PBNValue:
    """Rank of the map induced by including the sublevel at u into the one at v."""
    if not u < v:
        raise ValueError("not in the domain above the diagonal")
    return PBNValue(degree, (float(u),), (float(v),), count_alive(D, degree, u, v))


def count_alive_grid(D: PersistenceDiagram, degree: int,
                     us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Vectorized count_alive over parallel arrays of queries."""
    ps = D.pairs(degree)
    if not ps:
        return np.zeros(np.shape(us), dtype=int)
    births = np.array([b for b, _ in ps])
    deaths = np.array([d for _, d in ps])
    u = np.asarray(us)[..., None]
    v = np.asarray(vs)[..., None]
    return ((births <= u) & (deaths > v)).sum(axis=-1)


# ---------------------------------------------------------------------------
# GF(2) linear algebra on integer bitmask rows.


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank of a set of GF(2) row vectors encoded as integers."""
    pivots: list[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def _boundary_rows(simplices: Sequence[Simplex], face_index: Mapping[Simplex, int]) -> list[int]:
    rows = []
    for s in simplices:
        row = 0
        for drop in range(len(s)):
            row ^= 1 << face_index[s[:drop] + s[drop + 1:]]
        rows.append(row)
    return rows


def betti_numbers(K: SimplicialComplex, max_degree: Optional[int] = None) -> tuple[int, ...]:
    """Betti numbers over Z/2 from boundary-operator ranks."""
    top = K.dim if max_degree is None else max_degree
    if top < 0:
        return ()
    counts = [len(K.of_dim(d)) for d in range(top + 2)]
    ranks = [0] * (top + 2)
    for d in range(1, top + 2):
        faces = K.of_dim(d - 1)
        cells = K.of_dim(d)
        if not faces or not cells:
            continue
        fidx = {s: i for i, s in enumerate(faces)}
        ranks[d] = gf2_rank(_boundary_rows(cells, fidx))
    out = []
    for d in range(top + 1):
        out.append(counts[d] - ranks[d] - ranks[d + 1])
    return tuple(out)


def _sub_simplices(F: FilteredComplex, threshold: np.ndarray) -> list[Simplex]:
    thr = np.asarray(threshold, dtype=np.float64)
    return [s for s, val in F.values.items() if np.all(np.asarray(val) <= thr)]


def pbn_query_multi(F: FilteredComplex, degree: int, u, v) -> PBNValue:
    """Multidimensional PBN as two GF(2) rank computations.

    The value is dim Z_i(K_u) - dim(Z_i(K_u) ∩ B_i(K_v)) where K_w collects
    simplices with value componentwise <= w.
    """
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    vv = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if uu.shape != vv.shape or uu.shape[0] != F.n:
        raise ValueError("query dimension mismatch")
    if not np.all(uu < vv):
        raise ValueError("not in the domain above the diagonal")

    sub_v = sorted(_sub_simplices(F, vv), key=lambda s: (len(s), s))
    in_v = set(sub_v)
    i_cells_v = [s for s in sub_v if len(s) == degree + 1]
    idx_v = {s: i for i, s in enumerate(i_cells_v)}
    i_cells_u = [s for s in i_cells_v if np.all(F.value(s) <= uu)]

    # Cycle space of K_u expressed in K_v's i-cell coordinates.
    if degree == 0:
        cycles = [1 << idx_v[s] for s in i_cells_u]
    else:
        faces_u = sorted({s[:d] + s[d + 1:] for s in i_cells_u for d in range(len(s))})
        fidx = {s: i for i, s in enumerate(faces_u)}
        cols = {s: r for s, r in zip(i_cells_u, _boundary_rows(i_cells_u, fidx))}
        cycles = _nullspace_bitmasks(i_cells_u, cols, idx_v)

    if not cycles:
        return PBNValue(degree, tuple(uu), tuple(vv), 0)

    # Boundary space of K_v in the same coordinates.
    up_cells_v = [s for s in in_v if len(s) == degree + 2]
    boundaries = _boundary_rows(up_cells_v, idx_v) if up_cells_v else []

    dim_z = gf2_rank(cycles)
    dim_b = gf2_rank(boundaries)
    dim_sum = gf2_rank(list(cycles) + list(boundaries))
    dim_meet = dim_z + dim_b - dim_sum
    return PBNValue(degree, tuple(uu), tuple(vv), dim_z - dim_meet)


def _nullspace_bitmasks(cells: Sequence[Simplex], boundary_of: Mapping[Simplex, int],
                        out_index: Mapping[Simplex, int]) -> list[int]:
    """Basis of the kernel of the boundary map, as bitmasks over out_index."""
    pivots: list[tuple[int, int]] = []  # (reduced boundary row, combination mask)
    kernel: list[int] = []
    for j, s in enumerate(cells):
        row = boundary_of[s]
        comb = 1 << out_index[s]
        for prow, pcomb in pivots:
            if row ^ prow < row:
                row ^= prow
                comb ^= pcomb
        if row == 0:
            kernel.append(comb)
        else:
            pivots.append((row, comb))
            pivots.sort(key=lambda rc: rc[0], reverse=True)
    return kernel


def discontinuity_set(D: PersistenceDiagram, degree: int) -> tuple[Segment, ...]:
    """Axis-aligned segments where the PBN function can jump, plus the diagonal.

    Each pair (b, d) contributes the vertical segment u=b for v in (b, d] and,
    when finite, the horizontal segment v=d for u in [b, d); infinite deaths
    leave an infinite vertical ray.
    """
    segs = [Segment(Segment.DIAGONAL, 0.0, -INF, INF)]
    for b, d in D.pairs(degree):
        segs.append(Segment(Segment.VERTICAL, b, b, d))
        if d != INF:
            segs.append(Segment(Segment.HORIZONTAL, d, b, d))
    return tuple(segs)
