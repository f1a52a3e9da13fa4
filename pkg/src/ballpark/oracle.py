"""Independent ground-truth computations backing the test suite.

The raster oracle discretizes the ball union into a pixel complex and computes
its degree-0/1 sublevel persistence with union-find sweeps (merge events on
the occupied cells, split events on the 4-connected complement), which is the
standard planar shortcut for cubical reduction.  ``brute_rank`` recomputes
inclusion ranks with dense GF(2) elimination, deliberately sharing no code
with the engine it checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .filtration import FilteredComplex, FilteringFunction, evaluate_grid
from .geometry import BallCover, Simplex
from .persistence import INF, PersistenceDiagram

MAX_RASTER_CELLS = 30_000_000


@dataclass(frozen=True)
class RasterGrid:
    """Pixel grid over the ball union: occupancy by cell center, value by
    the max of the filtering function over the cell's four corners."""

    origin: tuple[float, float]
    h: float
    occupancy: np.ndarray
    values: np.ndarray


def build_raster(cover: BallCover, f: FilteringFunction, h: float) -> RasterGrid:
    if cover.landmarks.dim_ambient != 2:
        raise ValueError("raster oracle works in the plane only")
    if h > cover.radius / 10.0:
        raise ValueError("cell size too coarse for the ball radius")
    pts = cover.landmarks.points
    margin = cover.radius + 3.0 * h
    x0, y0 = pts.min(axis=0) - margin
    x1, y1 = pts.max(axis=0) + margin
    nx = int(math.ceil((x1 - x0) / h))
    ny = int(math.ceil((y1 - y0) / h))
    if nx * ny > MAX_RASTER_CELLS:
        raise ValueError("raster bounding box overflow")
    cx = x0 + (np.arange(nx) + 0.5) * h
    cy = y0 + (np.arange(ny) + 0.5) * h
    xx, yy = np.meshgrid(cx, cy, indexing="ij")
    tree = cKDTree(pts)
    dist, _ = tree.query(np.column_stack([xx.ravel(), yy.ravel()]), workers=-1)
    occupancy = (dist <= cover.radius).reshape(nx, ny)
    # Corner lattice is one larger in each direction; a cell's value is the
    # max over its four corners.
    gx = x0 + np.arange(nx + 1) * h
    gy = y0 + np.arange(ny + 1) * h
    gxx, gyy = np.meshgrid(gx, gy, indexing="ij")
    corner = evaluate_grid(f, gxx, gyy)
    values = np.maximum(
        np.maximum(corner[:-1, :-1], corner[1:, :-1]),
        np.maximum(corner[:-1, 1:], corner[1:, 1:]),
    )
    return RasterGrid((float(x0), float(y0)), float(h), occupancy, values)


def _merge_pairs_deg0(occ: np.ndarray, vals: np.ndarray):
    """Union-find sweep over occupied cells in increasing value order.

    Closed pixels share corners, so connectivity is 8-way.  Merges follow the
    elder rule: the younger component dies at the merging cell's value.
    """
    nx, ny = occ.shape
    n = nx * ny
    vflat = vals.ravel()
    flat_occ = np.flatnonzero(occ.ravel())
    order = [int(c) for c in flat_occ[np.argsort(vflat[flat_occ], kind="stable")]]
    parent = [-1] * n
    birth = [0.0] * n
    pairs: list[tuple[float, float]] = []

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in order:
        parent[c] = c
        val = float(vflat[c])
        birth[c] = val
        i, j = divmod(c, ny)
        for di in (-1, 0, 1):
            ni = i + di
            if ni < 0 or ni >= nx:
                continue
            base = ni * ny
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                nj = j + dj
                if nj < 0 or nj >= ny:
                    continue
                nc = base + nj
                if parent[nc] == -1:
                    continue
                ra, rb = find(c), find(nc)
                if ra == rb:
                    continue
                if birth[ra] <= birth[rb]:
                    elder, younger = ra, rb
                else:
                    elder, younger = rb, ra
                pairs.append((birth[younger], val))
                parent[younger] = elder
    roots = {find(c) for c in order}
    essentials = [(birth[r], INF) for r in roots]
    return pairs + essentials


def _merge_pairs_deg1(occ: np.ndarray, vals: np.ndarray):
    """Holes via the complement: occupied cells leave the 4-connected
    complement in decreasing value order; each split of the complement births
    a cycle, each fully-filled pocket kills one."""
    nx, ny = occ.shape
    free = ~occ
    labels, nlab = ndimage.label(free)  # 4-connectivity by default
    border = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    unbounded_labels = set(int(l) for l in np.unique(border) if l != 0)

    # One union-find node per cell plus one per unoccupied component and a
    # virtual unbounded node; unoccupied components are pre-merged with their
    # birth at +inf (they are in the complement at every level).
    n_cells = nx * ny
    virtual = n_cells + nlab
    total = n_cells + nlab + 1
    parent = [-1] * total
    birth = [0.0] * total
    is_unbounded = [False] * total
    for lab in range(1, nlab + 1):
        node = n_cells + lab - 1
        parent[node] = node
        birth[node] = math.inf
    parent[virtual] = virtual
    birth[virtual] = math.inf
    is_unbounded[virtual] = True
    for lab in unbounded_labels:
        parent[n_cells + lab - 1] = virtual

    lab_flat = labels.ravel()

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vflat = vals.ravel()
    flat_occ = np.flatnonzero(occ.ravel())
    order = [int(c) for c in flat_occ[np.argsort(-vflat[flat_occ], kind="stable")]]
    pairs: list[tuple[float, float]] = []
    for c in order:
        parent[c] = c
        b = float(vflat[c])
        birth[c] = b
        i, j = divmod(c, ny)
        for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
            if ni < 0 or ni >= nx or nj < 0 or nj >= ny:
                continue
            nc = ni * ny + nj
            if parent[nc] == -1:
                lab = lab_flat[nc]
                if lab == 0:
                    continue  # occupied, not yet active
                node = n_cells + int(lab) - 1
            else:
                node = nc
            ra, rb = find(c), find(node)
            if ra == rb:
                continue
            a_elder = (is_unbounded[ra] and not is_unbounded[rb]) or (
                is_unbounded[ra] == is_unbounded[rb] and birth[ra] >= birth[rb])
            elder, younger = (ra, rb) if a_elder else (rb, ra)
            d = birth[younger]
            if d > b:
                pairs.append((b, d))
            parent[younger] = elder
            is_unbounded[elder] = is_unbounded[elder] or is_unbounded[younger]
    return pairs


def raster_ball_union_persistence(cover: BallCover, f: FilteringFunction, h: float,
                                  degree_max: int = 1) -> PersistenceDiagram:
    """Sublevel persistence of the rasterized ball union, degrees 0 and 1."""
    grid = build_raster(cover, f, h)
    out: dict[int, list[tuple[float, float]]] = {}
    out[0] = _merge_pairs_deg0(grid.occupancy, grid.values)
    if degree_max >= 1:
        out[1] = _merge_pairs_deg1(grid.occupancy, grid.values)
    return PersistenceDiagram.from_pairs(out)


def analytic_circle_diagram(radius: float, f_kind: str = "abs-coordinate") -> PersistenceDiagram:
    """Exact diagram of a circle filtered by |y|: two arcs born at 0 merging
    at the radius, one cycle born at the radius."""
    if f_kind != "abs-coordinate":
        raise ValueError(f"no analytic diagram for filtering kind {f_kind!r}")
    if radius <= 0:
        raise ValueError("invalid radius")
    return PersistenceDiagram.from_pairs({
        0: [(0.0, INF), (0.0, radius)],
        1: [(radius, INF)],
    })


# ---------------------------------------------------------------------------
# Dense GF(2) reference ranks.


def _dense_boundary(cells: list[Simplex], faces: list[Simplex]) -> np.ndarray:
    fidx = {s: i for i, s in enumerate(faces)}
    mat = np.zeros((len(faces), len(cells)), dtype=np.uint8)
    for j, s in enumerate(cells):
        for drop in range(len(s)):
            mat[fidx[s[:drop] + s[drop + 1:]], j] ^= 1
    return mat


def _dense_rank(mat: np.ndarray) -> int:
    """Gaussian elimination over GF(2) on a dense 0/1 matrix (rows = vectors)."""
    m = (mat % 2).astype(np.uint8).copy()
    rows, cols = m.shape
    r = 0
    for col in range(cols):
        if r >= rows:
            break
        pivots = np.nonzero(m[r:, col])[0]
        if len(pivots) == 0:
            continue
        pr = r + int(pivots[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        mask = m[:, col].astype(bool).copy()
        mask[r] = False
        m[mask] ^= m[r]
        r += 1
    return r


def _dense_nullspace(mat: np.ndarray) -> np.ndarray:
    """Kernel basis (columns combine to zero), rows of the result are basis vectors."""
    rows, cols = mat.shape
    m = mat.copy() % 2
    aug = np.concatenate([m, np.eye(cols, dtype=np.uint8)], axis=0)
    # Column-reduce; kernel = columns whose top block became zero.
    lead_of_col: list[int] = []
    for j in range(cols):
        for jj in range(j):
            lead = lead_of_col[jj]
            if lead >= 0 and aug[lead, j]:
                aug[:, j] ^= aug[:, jj]
        nz = np.nonzero(aug[:rows, j])[0]
        lead_of_col.append(int(nz[0]) if len(nz) else -1)
    kernel = [aug[rows:, j] for j in range(cols) if lead_of_col[j] == -1]
    return np.array(kernel, dtype=np.uint8) if kernel else np.zeros((0, cols), dtype=np.uint8)


def brute_rank(F: FilteredComplex, degree: int, u, v) -> int:
    """Inclusion-induced rank from explicit cycle and boundary bases.

    Reference path for the query engine: reduce the sublevel-at-v boundary
    space to echelon form, then count sublevel-at-u cycles that remain
    independent modulo it.
    """
    if len(F.complex) > 512:
        raise ValueError("complex too large for the brute-force oracle")
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    vv = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if not np.all(uu < vv):
        raise ValueError("not in the domain above the diagonal")

    sub_v = [s for s, val in F.values.items() if np.all(np.asarray(val) <= vv)]
    i_cells_v = sorted(s for s in sub_v if len(s) == degree + 1)
    if not i_cells_v:
        return 0
    i_cells_u = [s for s in i_cells_v if np.all(F.value(s) <= uu)]
    if not i_cells_u:
        return 0
    idx_v = {s: k for k, s in enumerate(i_cells_v)}

    if degree == 0:
        cycles_u = np.zeros((len(i_cells_u), len(i_cells_v)), dtype=np.uint8)
        for r, s in enumerate(i_cells_u):
            cycles_u[r, idx_v[s]] = 1
    else:
        faces_u = sorted({s[:d] + s[d + 1:] for s in i_cells_u for d in range(len(s))})
        bnd_u = _dense_boundary(i_cells_u, faces_u)
        kernel = _dense_nullspace(bnd_u)
        cycles_u = np.zeros((kernel.shape[0], len(i_cells_v)), dtype=np.uint8)
        for r in range(kernel.shape[0]):
            for k, s in enumerate(i_cells_u):
                if kernel[r, k]:
                    cycles_u[r, idx_v[s]] ^= 1

    up_cells_v = sorted(s for s in sub_v if len(s) == degree + 2)
    if up_cells_v:
        bnd_v = _dense_boundary(up_cells_v, i_cells_v).T  # rows = boundary vectors
    else:
        bnd_v = np.zeros((0, len(i_cells_v)), dtype=np.uint8)

    if cycles_u.shape[0] == 0:
        return 0
    stacked = np.concatenate([bnd_v, cycles_u], axis=0)
    return _dense_rank(stacked) - _dense_rank(bnd_v)
