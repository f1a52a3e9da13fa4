"""Ball covers, density gates, and the combinatorial complexes attached to them.

Two complexes are built from a cover: the nerve of the balls themselves
(``cech_nerve``, brute force, any ambient dimension) and the dual complex of
the Voronoi-restricted cells (``dual_complex``, 2D, a subcomplex of the
Delaunay triangulation).  Both are homotopy equivalent to the ball union, so
their Betti numbers agree; tests exploit that as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.spatial import Delaunay as _SciDelaunay
from scipy.spatial import cKDTree

Simplex = tuple[int, ...]

# Gate constants: admissible ball radius delta < sqrt(3/5)*tau for on-shape
# samples, offset s < (3 - 2*sqrt(2))*tau for near-shape samples.
ON_SHAPE_RADIUS_FACTOR = math.sqrt(3.0 / 5.0)
NEAR_SHAPE_OFFSET_FACTOR = 3.0 - 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class PointCloud:
    """Ordered list of points in R^m, stored as an (k, m) float array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2d array of shape (count, dim)")
        if pts.shape[0] < 1:
            raise ValueError("point count must be >= 1")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dim_ambient(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def bounding_box_diagonal(self) -> float:
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return float(np.linalg.norm(hi - lo))


@dataclass(frozen=True)
class BallCover:
    """Equal-radius balls centered at landmark points.

    ``tau`` is the condition parameter of the sampled shape (reciprocal of its
    condition number); it is user input, never estimated.  ``offset`` is the
    sampling slack s for landmarks taken near, rather than on, the shape.
    """

    landmarks: PointCloud
    radius: float
    tau: float
    offset: Optional[float] = None

    def __post_init__(self):
        if len(self.landmarks) == 0:
            raise ValueError("no landmarks")
        if not self.radius > 0:
            raise ValueError("invalid radius")
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.offset is not None and self.offset < 0:
            raise ValueError("offset must be >= 0")


def _close_under_faces(simplices: Iterable[Simplex]) -> frozenset[Simplex]:
    closed: set[Simplex] = set()
    stack = [tuple(sorted(s)) for s in simplices]
    while stack:
        s = stack.pop()
        if s in closed or len(s) == 0:
            continue
        closed.add(s)
        if len(s) > 1:
            for drop in range(len(s)):
                stack.append(s[:drop] + s[drop + 1:])
    return frozenset(closed)


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex over integer vertex ids.

    Simplices are ascending vertex tuples; the set is closed under faces.
    """

    simplices: frozenset[Simplex]

    @classmethod
    def from_maximal(cls, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        return cls(_close_under_faces(simplices))

    def __post_init__(self):
        for s in self.simplices:
            if tuple(sorted(set(s))) != s:
                raise ValueError(f"simplex {s} is not an ascending vertex tuple")
        if self.simplices != _close_under_faces(self.simplices):
            raise ValueError("simplex set is not closed under faces")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for s in self.simplices for v in s}))

    def of_dim(self, d: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == d + 1)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices


@dataclass(frozen=True)
class ReferenceShape:
    """Stand-in for the unknown shape X, used only by the density gates.

    Either a parametric closed curve (evaluator over [0, 1] plus an arc-length
    bound) or a dense point sample with its recorded spacing.  Density checks
    are conservative: the gap is measured against this proxy.
    """

    kind: str
    points: Optional[np.ndarray] = None
    spacing: Optional[float] = None
    evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = None
    arclength_bound: Optional[float] = None

    PARAMETRIC = "parametric-curve"
    DENSE = "dense-point-set"

    @classmethod
    def from_points(cls, points, spacing: float) -> "ReferenceShape":
        pts = np.asarray(points, dtype=np.float64)
        return cls(kind=cls.DENSE, points=pts, spacing=float(spacing))

    @classmethod
    def from_curve(cls, evaluator, arclength_bound: float) -> "ReferenceShape":
        return cls(kind=cls.PARAMETRIC, evaluator=evaluator,
                   arclength_bound=float(arclength_bound))

    @classmethod
    def circle(cls, radius: float, center=(0.0, 0.0)) -> "ReferenceShape":
        cx, cy = center

        def ev(t: np.ndarray) -> np.ndarray:
            ang = 2.0 * np.pi * np.asarray(t)
            return np.stack([cx + radius * np.cos(ang), cy + radius * np.sin(ang)], axis=-1)

        return cls.from_curve(ev, 2.0 * math.pi * radius)

    def sample(self, min_count: int = 8192) -> np.ndarray:
        if self.kind == self.DENSE:
            return self.points
        n = max(min_count, 64)
        t = np.arange(n, dtype=np.float64) / n
        return self.evaluator(t)


@dataclass(frozen=True)
class DensityReport:
    passed: bool
    max_gap: float
    margin: float
    reason: Optional[str] = None


def _max_gap(cover: BallCover, shape: ReferenceShape) -> float:
    """Largest distance from a shape point to its nearest landmark."""
    tree = cKDTree(cover.landmarks.points)
    gaps, _ = tree.query(shape.sample())
    return float(np.max(gaps))


def check_density_on(cover: BallCover, shape: ReferenceShape) -> DensityReport:
    """Gate for landmarks sampled on the shape itself.

    Passes iff delta < sqrt(3/5)*tau and every shape point lies strictly
    within delta/2 of some landmark; then the ball union deformation-retracts
    to the shape.
    """
    if cover.radius >= ON_SHAPE_RADIUS_FACTOR * cover.tau:
        gap = _max_gap(cover, shape)
        return DensityReport(False, gap, cover.radius / 2.0 - gap,
                             reason="radius too large for tau")
    gap = _max_gap(cover, shape)
    margin = cover.radius / 2.0 - gap
    if gap >= cover.radius / 2.0:
        return DensityReport(False, gap, margin, reason="cover too sparse")
    return DensityReport(True, gap, margin)


def near_radius_interval(s: float, tau: float) -> tuple[float, float]:
    """Admissible ball-radius interval for landmarks within offset s of the shape."""
    disc = s * s + tau * tau - 6.0 * s * tau
    if disc < 0:
        raise ValueError("offset too large for tau")
    root = math.sqrt(disc)
    return ((s + tau - root) / 2.0, (s + tau + root) / 2.0)


def check_density_near(cover: BallCover, shape: ReferenceShape) -> DensityReport:
    """Gate for landmarks sampled within distance s of the shape.

    Passes iff s < (3 - 2*sqrt(2))*tau, delta lies in the admissible interval
    derived from (s, tau), and every shape point is strictly within s of some
    landmark.
    """
    s = cover.offset if cover.offset is not None else 0.0
    gap = _max_gap(cover, shape)
    if s >= NEAR_SHAPE_OFFSET_FACTOR * cover.tau:
        return DensityReport(False, gap, s - gap, reason="offset too large for tau")
    lo, hi = near_radius_interval(s, cover.tau)
    if not (lo < cover.radius < hi):
        return DensityReport(False, gap, s - gap, reason="radius outside admissible interval")
    if s == 0.0:
        # Degenerate offset: fall back to the on-shape density requirement.
        if gap >= cover.radius / 2.0:
            return DensityReport(False, gap, cover.radius / 2.0 - gap, reason="cover too sparse")
        return DensityReport(True, gap, cover.radius / 2.0 - gap)
    if gap >= s:
        return DensityReport(False, gap, s - gap, reason="cover too sparse")
    return DensityReport(True, gap, s - gap)


# ---------------------------------------------------------------------------
# Smallest enclosing ball (Welzl), used by the brute-force nerve.


def _circumcircle(a, b, c):
    """Center and radius of the circle through three points, None if collinear."""
    (ax, ay), (bx, by), (cx, cy) = a, b, c
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(center - np.asarray(a)))


def _ball_from_boundary(rpts: list[np.ndarray], dim: int):
    if not rpts:
        return np.zeros(dim), 0.0
    if len(rpts) == 1:
        return rpts[0], 0.0
    if len(rpts) == 2:
        center = (rpts[0] + rpts[1]) / 2.0
        return center, float(np.linalg.norm(rpts[0] - center))
    if dim == 2 and len(rpts) == 3:
        cc = _circumcircle(rpts[0], rpts[1], rpts[2])
        if cc is not None:
            return cc
        # Collinear triple: widest pair determines the ball.
        best = None
        for i in range(3):
            for j in range(i + 1, 3):
                c = (rpts[i] + rpts[j]) / 2.0
                r = float(np.linalg.norm(rpts[i] - c))
                if best is None or r > best[1]:
                    best = (c, r)
        return best
    # General position in R^m: the circumcenter c of the boundary points
    # satisfies 2(p_i - p_0) . c = |p_i|^2 - |p_0|^2.
    base = rpts[0]
    mat = np.array([2.0 * (p - base) for p in rpts[1:]])
    rhs = np.array([float(np.dot(p, p) - np.dot(base, base)) for p in rpts[1:]])
    center, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    return center, float(np.linalg.norm(rpts[0] - center))


def miniball(points: np.ndarray, seed: int = 7) -> tuple[np.ndarray, float]:
    """Smallest enclosing ball of a point set (Welzl, move-to-front)."""
    pts = [np.asarray(p, dtype=np.float64) for p in np.atleast_2d(points)]
    dim = pts[0].shape[0]
    rng = np.random.default_rng(seed)
    order = list(rng.permutation(len(pts)))
    center, radius = _ball_from_boundary([], dim)
    tol = 1e-12

    def welzl(n: int, boundary: list[np.ndarray]):
        nonlocal tol
        if n == 0 or len(boundary) == dim + 1:
            return _ball_from_boundary(boundary, dim)
        c, r = welzl(n - 1, boundary)
        p = pts[order[n - 1]]
        if np.linalg.norm(p - c) <= r * (1.0 + 1e-12) + tol:
            return c, r
        return welzl(n - 1, boundary + [p])

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(pts) + 100))
    try:
        center, radius = welzl(len(pts), [])
    finally:
        sys.setrecursionlimit(old)
    return center, radius


# ---------------------------------------------------------------------------
# General-position preconditioning.


def _degenerate(points: np.ndarray) -> bool:
    """Detect duplicates, near-cocircular Delaunay quads, or collinear hull runs."""
    k = points.shape[0]
    seen = set()
    for p in points:
        key = (float(p[0]), float(p[1])) if points.shape[1] == 2 else tuple(map(float, p))
        if key in seen:
            return True
        seen.add(key)
    if points.shape[1] != 2 or k < 4:
        return False
    if _all_collinear(points):
        return False  # handled by the chain fallback, not by jitter
    scale = max(points.max() - points.min(), 1.0)
    try:
        tri = _SciDelaunay(points)
    except Exception:
        return True
    # A Delaunay edge shared by two triangles whose four vertices are
    # (near-)cocircular makes the triangulation non-unique.
    for t_idx, nbrs in enumerate(tri.neighbors):
        tverts = tri.simplices[t_idx]
        cc = _circumcircle(*points[tverts])
        if cc is None:
            return True
        center, radius = cc
        for nb in nbrs:
            if nb == -1 or nb < t_idx:
                continue
            opp = [v for v in tri.simplices[nb] if v not in tverts]
            if not opp:
                continue
            gap = abs(float(np.linalg.norm(points[opp[0]] - center)) - radius)
            if gap <= 1e-9 * scale:
                return True
    return False


def precondition_general_position(cloud: PointCloud, seed: int) -> PointCloud:
    """Jitter the cloud deterministically if it is degenerate, else return it.

    Displacements are bounded by 1e-9 times the bounding-box diagonal, far
    below any radius used downstream, and are driven entirely by ``seed``.
    """
    pts = np.asarray(cloud.points, dtype=np.float64)
    if not _degenerate(pts):
        return cloud
    diag = cloud.bounding_box_diagonal()
    if diag == 0.0:
        diag = 1.0
    rng = np.random.default_rng(seed)
    out = pts.copy()
    for _ in range(8):
        step = rng.uniform(-1.0, 1.0, size=out.shape)
        step /= max(np.abs(step).max(), 1.0)
        out = pts + step * (1e-9 * diag / math.sqrt(pts.shape[1]))
        if not _degenerate(out):
            break
    return PointCloud(out)


# ---------------------------------------------------------------------------
# Delaunay triangulation (2D) and the complexes built on it.


def _all_collinear(points: np.ndarray, tol: float = 0.0) -> bool:
    if points.shape[0] <= 2:
        return True
    p0 = points[0]
    d = points - p0
    ref = None
    scale = max(points.max() - points.min(), 1.0)
    for v in d[1:]:
        if np.linalg.norm(v) > 0:
            ref = v
            break
    if ref is None:
        return True
    cross = d[:, 0] * ref[1] - d[:, 1] * ref[0]
    return bool(np.all(np.abs(cross) <= max(tol, 1e-12 * scale * scale)))


def _collinear_chain(points: np.ndarray) -> SimplicialComplex:
    p0 = points[0]
    d = points - p0
    ref = max(d, key=lambda v: float(np.linalg.norm(v)))
    t = d @ ref
    order = np.argsort(t, kind="stable")
    maximal = [(int(order[i]), int(order[i + 1])) for i in range(len(order) - 1)]
    if not maximal:
        maximal = [(0,)]
    return SimplicialComplex.from_maximal(
        tuple(sorted(e)) for e in maximal
    )


def _delaunay_raw(points: np.ndarray):
    """scipy Delaunay plus the data dual_complex needs; None for chains."""
    if points.shape[0] < 3 or _all_collinear(points):
        return None
    return _SciDelaunay(points)


def delaunay_2d(cloud: PointCloud) -> SimplicialComplex:
    """Delaunay triangulation of a 2D cloud as an abstract complex.

    Fully collinear input degrades to the 1-dimensional chain along the line.
    """
    if cloud.dim_ambient != 2:
        raise ValueError("unsupported ambient dimension")
    pts = cloud.points
    if len(cloud) == 1:
        return SimplicialComplex.from_maximal([(0,)])
    tri = _delaunay_raw(pts)
    if tri is None:
        return _collinear_chain(pts)
    maximal = [tuple(sorted(map(int, s))) for s in tri.simplices]
    return SimplicialComplex.from_maximal(maximal)


def _voronoi_edge_min_dist(points: np.ndarray, tri, i: int, j: int,
                           tri_centers: dict[int, np.ndarray],
                           edge_tris: dict[tuple[int, int], list[int]]) -> float:
    """Minimum distance from landmark i to the Voronoi edge dual to (i, j).

    The Voronoi edge is a segment between adjacent triangle circumcenters, or
    a ray to infinity for hull edges.  Distance to l_i along the supporting
    bisector is convex with its minimum at the edge midpoint.
    """
    li, lj = points[i], points[j]
    mid = (li + lj) / 2.0
    tris = edge_tris[(i, j)]
    centers = [tri_centers[t] for t in tris if tri_centers[t] is not None]
    if not centers:
        return float("inf")
    if len(tris) == 2 and len(centers) == 2:
        a, b = centers
        seg = b - a
        denom = float(seg @ seg)
        if denom == 0.0:
            return float(np.linalg.norm(a - li))
        t = float((mid - a) @ seg) / denom
        t = min(max(t, 0.0), 1.0)
        closest = a + t * seg
        return float(np.linalg.norm(closest - li))
    # Hull edge: ray from the single circumcenter, pointing away from the
    # opposite vertex of the adjacent triangle.
    a = centers[0]
    tverts = tri.simplices[tris[0]]
    opp = [v for v in tverts if v != i and v != j][0]
    edge = lj - li
    normal = np.array([-edge[1], edge[0]])
    if float(normal @ (points[opp] - li)) > 0:
        normal = -normal
    norm_len = float(np.linalg.norm(normal))
    if norm_len == 0.0:
        return float(np.linalg.norm(a - li))
    normal /= norm_len
    t = float((mid - a) @ normal)
    t = max(t, 0.0)
    closest = a + t * normal
    return float(np.linalg.norm(closest - li))


def dual_complex(cover: BallCover) -> SimplicialComplex:
    """Dual complex of the Voronoi-restricted cells V_j intersected with B_j.

    A simplex enters iff the corresponding restricted cells share a point:
    edges iff the Voronoi edge meets both balls, triangles iff the Voronoi
    vertex (circumcenter) lies within the radius of its three generators.
    The result is a subcomplex of the Delaunay triangulation; its body is the
    dual shape.  Landmarks must be in general position (precondition first).
    """
    pts = cover.landmarks.points
    if cover.landmarks.dim_ambient != 2:
        raise ValueError("unsupported ambient dimension")
    delta = cover.radius
    k = len(cover.landmarks)
    maximal: list[Simplex] = [(v,) for v in range(k)]
    if k == 1:
        return SimplicialComplex.from_maximal(maximal)
    tri = _delaunay_raw(pts)
    if tri is None:
        chain = _collinear_chain(pts)
        for e in chain.of_dim(1):
            i, j = e
            if float(np.linalg.norm(pts[i] - pts[j])) / 2.0 <= delta:
                maximal.append(e)
        return SimplicialComplex.from_maximal(maximal)

    tri_centers: dict[int, np.ndarray] = {}
    tri_radii: dict[int, float] = {}
    edge_tris: dict[tuple[int, int], list[int]] = {}
    for t_idx, tverts in enumerate(tri.simplices):
        cc = _circumcircle(*pts[tverts])
        tri_centers[t_idx] = cc[0] if cc is not None else None
        tri_radii[t_idx] = cc[1] if cc is not None else float("inf")
        vs = sorted(map(int, tverts))
        for a in range(3):
            for b in range(a + 1, 3):
                edge_tris.setdefault((vs[a], vs[b]), []).append(t_idx)

    for (i, j), tris in edge_tris.items():
        if _voronoi_edge_min_dist(pts, tri, i, j, tri_centers, edge_tris) <= delta:
            maximal.append((i, j))
    for t_idx, tverts in enumerate(tri.simplices):
        if tri_radii[t_idx] <= delta:
            maximal.append(tuple(sorted(map(int, tverts))))
    return SimplicialComplex.from_maximal(maximal)


def cech_nerve(cover: BallCover, max_dim: Optional[int] = None) -> SimplicialComplex:
    """Nerve of the ball family by smallest-enclosing-ball enumeration.

    For equal radii, the balls indexed by T intersect iff the miniball of
    their centers has radius <= delta.  Subsets grow breadth-first; a subset
    whose miniball already exceeds delta prunes all its supersets.  With
    ``max_dim`` omitted the full nerve is built (needed for Betti-number
    comparisons); capping it keeps only the low skeleton.
    """
    pts = cover.landmarks.points
    k = len(cover.landmarks)
    delta = cover.radius
    if max_dim is None:
        max_dim = k - 1
    frontier: list[Simplex] = [(v,) for v in range(k)]
    accepted: list[Simplex] = list(frontier)
    dim = 0
    while frontier and dim < max_dim:
        nxt: list[Simplex] = []
        for simp in frontier:
            for j in range(simp[-1] + 1, k):
                cand = simp + (j,)
                _, r = miniball(pts[list(cand)])
                if r <= delta * (1.0 + 1e-12):
                    nxt.append(cand)
        accepted.extend(nxt)
        frontier = nxt
        dim += 1
    return SimplicialComplex.from_maximal(accepted)
