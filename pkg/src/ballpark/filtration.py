"""Filtering functions, moduli of continuity, sublevel filtrations, leaves.

A filtering function maps ambient points to R^n; a complex is filtered by the
componentwise max of the function over each simplex's vertices.  For n > 1 the
domain is foliated into 1D leaves by admissible pairs, reducing every query to
scalar persistence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .geometry import PointCloud, Simplex, SimplicialComplex

ABS_COORDINATE = "abs-coordinate"
COORDINATE = "coordinate"
DISTANCE_TO_POINT = "distance-to-point"
VERTEX_TABLE = "vertex-table"
COLOR_PLANE = "color-plane"

# Orthonormal frame taking color-plane coordinates (x, y, 0) into RGB space;
# the offset drops the frame onto the plane R + G + B = (4 - sqrt(2)) / 2.
_S2, _S3, _S6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)
COLOR_FRAME_MATRIX = np.array([
    [-1.0 / _S2, -1.0 / _S6, 1.0 / _S3],
    [1.0 / _S2, -1.0 / _S6, 1.0 / _S3],
    [0.0, math.sqrt(2.0 / 3.0), 1.0 / _S3],
])
COLOR_FRAME_OFFSET = np.array([(4.0 - _S2) / 4.0, (4.0 - _S2) / 4.0, 0.0])


def plane_to_rgb(xy) -> np.ndarray:
    x, y = np.asarray(xy, dtype=np.float64)
    return COLOR_FRAME_MATRIX @ np.array([x, y, 0.0]) + COLOR_FRAME_OFFSET


def rgb_to_plane(rgb) -> np.ndarray:
    xyz = COLOR_FRAME_MATRIX.T @ (np.asarray(rgb, dtype=np.float64) - COLOR_FRAME_OFFSET)
    return xyz[:2]


@dataclass(frozen=True)
class FilteringFunction:
    """Continuous map from the ambient space to R^n.

    Built-in kinds carry their analytic Lipschitz constants; vertex tables
    need one supplied explicitly before any modulus query.
    """

    kind: str
    n_components: int
    axis: Optional[int] = None
    point: Optional[tuple] = None
    table: Optional[Mapping[int, tuple]] = None
    lipschitz: Optional[tuple] = None

    @classmethod
    def abs_coordinate(cls, axis: int) -> "FilteringFunction":
        return cls(ABS_COORDINATE, 1, axis=axis, lipschitz=(1.0,))

    @classmethod
    def coordinate(cls, axis: int) -> "FilteringFunction":
        return cls(COORDINATE, 1, axis=axis, lipschitz=(1.0,))

    @classmethod
    def distance_to_point(cls, point) -> "FilteringFunction":
        return cls(DISTANCE_TO_POINT, 1, point=tuple(map(float, point)), lipschitz=(1.0,))

    @classmethod
    def vertex_table(cls, table: Mapping[int, Sequence[float]],
                     lipschitz: Optional[Sequence[float]] = None) -> "FilteringFunction":
        vals = {int(k): tuple(map(float, np.atleast_1d(v))) for k, v in table.items()}
        n = len(next(iter(vals.values())))
        lip = tuple(map(float, lipschitz)) if lipschitz is not None else None
        return cls(VERTEX_TABLE, n, table=vals, lipschitz=lip)

    @classmethod
    def color_plane(cls) -> "FilteringFunction":
        # Isometric frame: each RGB component is 1-Lipschitz in (x, y).
        return cls(COLOR_PLANE, 3, lipschitz=(1.0, 1.0, 1.0))


def evaluate(f: FilteringFunction, p) -> np.ndarray:
    """Value of f at a point (or at a vertex id for table-backed functions)."""
    if f.kind == VERTEX_TABLE:
        if np.ndim(p) == 0:
            key = int(p)
            if key not in f.table:
                raise KeyError("no value for vertex")
            return np.array(f.table[key], dtype=np.float64)
        raise KeyError("no value for vertex")
    q = np.asarray(p, dtype=np.float64)
    if f.kind == ABS_COORDINATE:
        return np.array([abs(q[f.axis])])
    if f.kind == COORDINATE:
        return np.array([q[f.axis]])
    if f.kind == DISTANCE_TO_POINT:
        return np.array([float(np.linalg.norm(q - np.array(f.point)))])
    if f.kind == COLOR_PLANE:
        return plane_to_rgb(q[:2])
    raise ValueError(f"unknown filtering kind {f.kind!r}")


def evaluate_grid(f: FilteringFunction, xx: np.ndarray, yy: np.ndarray) -> np.ndarray:
    """Vectorized scalar evaluation on 2D coordinate arrays (n=1 kinds only)."""
    if f.n_components != 1:
        raise ValueError("grid evaluation needs a scalar filtering function")
    if f.kind == ABS_COORDINATE:
        return np.abs(yy if f.axis == 1 else xx)
    if f.kind == COORDINATE:
        return (yy if f.axis == 1 else xx).astype(np.float64)
    if f.kind == DISTANCE_TO_POINT:
        px, py = f.point
        return np.hypot(xx - px, yy - py)
    raise ValueError(f"grid evaluation unsupported for kind {f.kind!r}")


@dataclass(frozen=True)
class OmegaVector:
    """Modulus of continuity at a given scale, replicated to all n components."""

    eps: float
    omega_scalar: float
    n: int

    def __post_init__(self):
        if self.eps < 0 or self.omega_scalar < 0:
            raise ValueError("modulus must be nonnegative")

    @property
    def vector(self) -> np.ndarray:
        return np.full(self.n, self.omega_scalar)


def modulus(f: FilteringFunction, eps: float) -> OmegaVector:
    """Largest per-component variation of f over ambient moves of length eps."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if f.lipschitz is None:
        raise ValueError("modulus unavailable")
    return OmegaVector(eps, max(f.lipschitz) * eps, f.n_components)


@dataclass(frozen=True)
class AdmissiblePair:
    """Unit positive direction l and zero-sum offset b defining a 1D leaf."""

    l: tuple
    b: tuple

    def __post_init__(self):
        l = np.asarray(self.l, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        if l.shape != b.shape:
            raise ValueError("l and b must have matching dimension")
        if not np.all(l > 0):
            raise ValueError("l must be strictly positive")
        if abs(float(np.linalg.norm(l)) - 1.0) > 1e-9:
            raise ValueError("l must have unit Euclidean norm")
        if abs(float(b.sum())) > 1e-9:
            raise ValueError("b must sum to zero")
        object.__setattr__(self, "l", tuple(map(float, l)))
        object.__setattr__(self, "b", tuple(map(float, b)))

    @property
    def n(self) -> int:
        return len(self.l)

    def leaf_point(self, sigma: float) -> np.ndarray:
        return sigma * np.array(self.l) + np.array(self.b)

    def leaf_parameter(self, point, tol: float = 1e-9) -> float:
        """Solve sigma*l + b = point; all components must agree on sigma."""
        u = np.asarray(point, dtype=np.float64)
        sigmas = (u - np.array(self.b)) / np.array(self.l)
        if np.ptp(sigmas) > tol * max(1.0, float(np.abs(sigmas).max())):
            raise ValueError("point does not lie on the leaf")
        return float(sigmas[0])


@dataclass(frozen=True)
class FilteredComplex:
    """Simplicial complex with an n-dimensional value on every simplex.

    Values are the componentwise max over vertices, so faces never exceed
    cofaces in any component.
    """

    complex: SimplicialComplex
    values: Mapping[Simplex, tuple]
    n: int

    def value(self, simplex: Simplex) -> np.ndarray:
        return np.array(self.values[tuple(simplex)], dtype=np.float64)

    def check_monotone(self) -> bool:
        for s in self.complex.simplices:
            if len(s) == 1:
                continue
            vs = np.array(self.values[s])
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1:]
                if np.any(np.array(self.values[face]) > vs + 1e-12):
                    return False
        return True


def sublevel_filtration(K: SimplicialComplex, f: FilteringFunction,
                        cloud: Optional[PointCloud] = None) -> FilteredComplex:
    """Filter K by f: each simplex takes the componentwise max over its vertices."""
    vert_vals: dict[int, np.ndarray] = {}
    for v in K.vertices:
        if f.kind == VERTEX_TABLE:
            vert_vals[v] = evaluate(f, v)
        else:
            if cloud is None:
                raise ValueError("point coordinates required for this filtering kind")
            vert_vals[v] = evaluate(f, cloud.points[v])
    values: dict[Simplex, tuple] = {}
    for s in K.simplices:
        stacked = np.stack([vert_vals[v] for v in s])
        values[s] = tuple(map(float, stacked.max(axis=0)))
    return FilteredComplex(K, values, f.n_components)


def foliation_reduce(F: FilteredComplex, pair: AdmissiblePair) -> FilteredComplex:
    """Collapse an n-filtered complex onto the 1D leaf of an admissible pair.

    The scalar value of a simplex is max_j (value_j - b_j) / l_j, so its
    sublevel set at sigma equals the multiparameter sublevel at sigma*l + b.
    """
    if pair.n != F.n:
        raise ValueError("admissible pair dimension mismatch")
    l = np.array(pair.l)
    b = np.array(pair.b)
    values = {
        s: (float(np.max((np.array(v) - b) / l)),)
        for s, v in F.values.items()
    }
    return FilteredComplex(F.complex, values, 1)
