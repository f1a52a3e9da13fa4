"""Shipped end-to-end scenarios with self-validating expectations.

Every fixture is generated by the documented formulas below; nothing is read
from data files.  Each runner returns a ScenarioResult whose checks must all
pass, and a dict of artifacts (CSV/JSON/SVG text) the CLI writes out.

Fixture formulas
----------------
circle64       64 points on the circle of radius 4, angles 2*pi*k/64 starting
               at angle 0; cover radius 0.5, tau 4.
circle-near96  96 points at angles 2*pi*k/96 with radial offsets
               (+0.2, -0.1, 0.0, -0.1) cycling in k; cover radius 0.55,
               offset 0.25, tau 4.
quarter9       9 points spread uniformly on a quarter circle of radius 4,
               cover radius 1, tau 4.
bean-compare   circle of radius 3.1 (300 points) versus a three-fingered
               closed comb curve (fingers and gaps 1.3 wide, feet dipping to
               y=-0.1, notch saddles at y=3.9, bar top at y=5.3, corners
               rounded at radius 0.6), both filtered by |y|; covers at radii
               0.4 / 0.2 / 0.15.
color-circles  two circles of radius 1 with 80 landmarks; 2D filtering values
               trace the square (-0.4,0)..(0.4,0) for one shape and the
               pentagon (-0.4,0.04), (0.36,0.8), (0.4,0.8), (0.4,0.76),
               (-0.36,0) twice around for the other, sampled at equal
               max-norm arc steps.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import io as bio
from .certify import (
    DUAL_SHAPE,
    NEAR_MANIFOLD,
    ON_MANIFOLD,
    blind_strips,
    classify,
    equality_certificate,
    sandwich,
)
from .compare import SearchGrid, pseudodistance_bound, search_best_bound
from .filtration import (
    AdmissiblePair,
    FilteringFunction,
    foliation_reduce,
    modulus,
    sublevel_filtration,
)
from .geometry import (
    BallCover,
    PointCloud,
    ReferenceShape,
    cech_nerve,
    check_density_near,
    check_density_on,
    dual_complex,
    precondition_general_position,
)
from .oracle import raster_ball_union_persistence
from .persistence import (
    INF,
    PBNValue,
    betti_numbers,
    count_alive,
    pbn_query_1d,
    pbn_query_multi,
    reduce_filtration,
)
from .plot import plot_regions

DEFAULT_SEED = 42


def jitter_seed() -> int:
    return int(os.environ.get("PBN_SEED", DEFAULT_SEED))


# ---------------------------------------------------------------------------
# Fixture generators.


def circle_points(radius: float, count: int, center=(0.0, 0.0), phase: float = 0.0) -> np.ndarray:
    ang = phase + 2.0 * np.pi * np.arange(count) / count
    return np.column_stack([center[0] + radius * np.cos(ang),
                            center[1] + radius * np.sin(ang)])


def near96_points() -> np.ndarray:
    """96 landmarks near the radius-4 circle, radial offsets cycling
    (+0.2, -0.1, 0.0, -0.1) so every point is 0, 0.1 or 0.2 away from it."""
    k = np.arange(96)
    ang = 2.0 * np.pi * k / 96
    r = 4.0 + np.array([0.2, -0.1, 0.0, -0.1])[k % 4]
    return np.column_stack([r * np.cos(ang), r * np.sin(ang)])


def quarter9_points() -> np.ndarray:
    ang = np.linspace(0.0, np.pi / 2.0, 9)
    return np.column_stack([4.0 * np.cos(ang), 4.0 * np.sin(ang)])


def rounded_polygon(corners, fillet: float, spacing: float) -> np.ndarray:
    """Sample a closed axis-aligned polygon with 90-degree corners replaced by
    tangent arcs of the given radius, at uniform arc-length spacing."""
    pts = [np.asarray(c, dtype=np.float64) for c in corners]
    n = len(pts)
    pieces = []  # ("seg", p0, p1) or ("arc", center, r, a0, sweep)
    tangents = []
    for i in range(n):
        prev = pts[(i - 1) % n]
        cur = pts[i]
        nxt = pts[(i + 1) % n]
        u = (cur - prev) / np.linalg.norm(cur - prev)
        w = (nxt - cur) / np.linalg.norm(nxt - cur)
        t1 = cur - fillet * u
        t2 = cur + fillet * w
        center = cur - fillet * u + fillet * w
        a0 = math.atan2(t1[1] - center[1], t1[0] - center[0])
        a1 = math.atan2(t2[1] - center[1], t2[0] - center[0])
        cross = u[0] * w[1] - u[1] * w[0]
        sweep = (a1 - a0) % (2 * math.pi)
        if cross < 0:
            sweep = sweep - 2 * math.pi
        tangents.append((t1, t2, center, a0, sweep))
    for i in range(n):
        _, t2, _, _, _ = tangents[i]
        t1_next = tangents[(i + 1) % n][0]
        pieces.append(("arc",) + tangents[i][2:] + (tangents[i][0],))
        pieces.append(("seg", t2, t1_next))

    samples = []
    for piece in pieces:
        if piece[0] == "seg":
            _, p0, p1 = piece
            length = float(np.linalg.norm(p1 - p0))
            steps = max(int(math.ceil(length / spacing)), 1)
            for s in range(steps):
                samples.append(p0 + (p1 - p0) * (s / steps))
        else:
            _, center, a0, sweep, t1 = piece
            r = float(np.linalg.norm(t1 - center))
            length = abs(sweep) * r
            steps = max(int(math.ceil(length / spacing)), 1)
            for s in range(steps):
                a = a0 + sweep * (s / steps)
                samples.append(center + r * np.array([math.cos(a), math.sin(a)]))
    return np.array(samples)


BEAN_CORNERS = [
    (0.0, -0.1), (1.3, -0.1), (1.3, 3.9), (2.6, 3.9), (2.6, -0.1),
    (3.9, -0.1), (3.9, 3.9), (5.2, 3.9), (5.2, -0.1), (6.5, -0.1),
    (6.5, 5.3), (0.0, 5.3),
]
BEAN_FILLET = 0.6
BEAN_TAU = 0.6
BEAN_SPACING = 0.05
COMPARE_CIRCLE_RADIUS = 3.1
COMPARE_CIRCLE_COUNT = 300
COMPARE_CIRCLE_TAU = 3.1


def bean_polygon(spacing: float = BEAN_SPACING) -> np.ndarray:
    return rounded_polygon(BEAN_CORNERS, BEAN_FILLET, spacing)


# ---------------------------------------------------------------------------
# Color-circles value tables.


def _polyline_maxnorm_samples(vertices, count: int, laps: int = 1) -> np.ndarray:
    """Sample a closed polyline at equal max-norm arc-length steps."""
    verts = [np.asarray(v, dtype=np.float64) for v in vertices]
    n = len(verts)
    seg_len = []
    for i in range(n):
        d = verts[(i + 1) % n] - verts[i]
        seg_len.append(float(np.max(np.abs(d))))
    total = sum(seg_len) * laps
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    out = []
    for j in range(count):
        t = (total * j / count) % cum[-1]
        i = int(np.searchsorted(cum, t, side="right") - 1)
        i = min(i, n - 1)
        frac = (t - cum[i]) / seg_len[i] if seg_len[i] > 0 else 0.0
        out.append(verts[i] + frac * (verts[(i + 1) % n] - verts[i]))
    return np.array(out)


COLOR_SQUARE = [(-0.4, 0.0), (-0.4, 0.8), (0.4, 0.8), (0.4, 0.0)]
COLOR_PENTAGON = [(-0.4, 0.04), (0.36, 0.8), (0.4, 0.8), (0.4, 0.76), (-0.36, 0.0)]
COLOR_RADIUS = 1.0
COLOR_COUNT = 80
COLOR_BALL_RADIUS = 0.08
# Table-honest Lipschitz bound: consecutive color samples sit 0.04-0.041 apart
# in max norm while consecutive landmarks are 2*sin(pi/80) apart on the circle.
COLOR_LIPSCHITZ = 0.53
COLOR_PAIR = AdmissiblePair((1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)), (-0.2, 0.2))


def color_square_table() -> dict[int, tuple]:
    pts = _polyline_maxnorm_samples(COLOR_SQUARE, COLOR_COUNT, laps=1)
    return {i: tuple(p) for i, p in enumerate(pts)}


def color_pentagon_table() -> dict[int, tuple]:
    pts = _polyline_maxnorm_samples(COLOR_PENTAGON, COLOR_COUNT, laps=2)
    return {i: tuple(p) for i, p in enumerate(pts)}


# ---------------------------------------------------------------------------
# Scenario plumbing.


@dataclass
class ScenarioResult:
    name: str
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def report(self) -> str:
        lines = [f"scenario {self.name}: {'PASS' if self.passed else 'FAIL'} "
                 f"({self.elapsed:.1f}s)"]
        for label, ok, detail in self.checks:
            mark = "ok" if ok else "FAIL"
            suffix = f"  [{detail}]" if detail else ""
            lines.append(f"  {mark:4s} {label}{suffix}")
        return "\n".join(lines) + "\n"


def _dual_diagram_abs_y(cloud: PointCloud, radius: float, tau: float):
    """Dual complex of the cover, filtered by |y|, reduced."""
    pre = precondition_general_position(cloud, jitter_seed())
    cover = BallCover(pre, radius, tau=tau)
    K = dual_complex(cover)
    f = FilteringFunction.abs_coordinate(1)
    F = sublevel_filtration(K, f, pre)
    return reduce_filtration(F), K


def run_circle64(h: float = 0.01) -> ScenarioResult:
    t0 = time.monotonic()
    res = ScenarioResult("circle64")
    pts = circle_points(4.0, 64)
    cloud = PointCloud(pts)
    cover = BallCover(cloud, 0.5, tau=4.0)
    shape = ReferenceShape.circle(4.0)
    f = FilteringFunction.abs_coordinate(1)

    rep = check_density_on(cover, shape)
    res.check("density gate (radius 0.5, tau 4, 64 landmarks)", rep.passed,
              f"max_gap={rep.max_gap:.4f}")

    D_union = raster_ball_union_persistence(cover, f, h)
    sig0 = D_union.significant(0, 0.05)
    births = sorted(b for b, _ in sig0)
    deaths = [d for _, d in sig0 if d != INF]
    res.check("ball union: exactly two significant births below 4",
              len(births) == 2 and all(b < 4 for b in births),
              f"births={births}")
    res.check("ball union: one significant finite merge death",
              len(deaths) == 1, f"deaths={deaths}")
    merge = deaths[0] if deaths else float("nan")
    res.check("merge death within 0.05 of 3.53106",
              abs(merge - 3.53106) <= 0.05, f"merge={merge:.5f}")

    omega = modulus(f, cover.radius)
    D_dual, K_dual = _dual_diagram_abs_y(cloud, 0.5, 4.0)
    dual_deaths = [d for _, d in D_dual.pairs(0) if d != INF]
    band = (3.53106 - 2 * omega.omega_scalar, 3.53106 + 2 * omega.omega_scalar)
    res.check("dual shape merge inside doubled slack band",
              len(dual_deaths) == 1 and band[0] <= dual_deaths[0] <= band[1],
              f"dual merge={dual_deaths}, band=({band[0]:.3f}, {band[1]:.3f})")

    strips = blind_strips(D_union, 0, omega.omega_scalar)
    res.check("strip total width is exactly 1.0", strips.total_width == 1.0)

    cert = equality_certificate(D_union, 0, 1.0, 2.5, omega, ON_MANIFOLD)
    res.check("certified value 2 at (1.0, 2.5)", cert == 2, f"cert={cert}")
    outside = classify(strips, (1.0, 2.5)) == "outside"
    res.check("query (1.0, 2.5) lies outside the strips", outside)
    s2 = sandwich(D_union, 0, 3.0, 3.8, omega, ON_MANIFOLD, clamp=True)
    res.check("straddling query (3.0, 3.8) is not certified",
              s2.lower < s2.upper, f"bounds=({s2.lower}, {s2.upper})")

    res.artifacts["landmarks.csv"] = bio.points_to_csv(cloud)
    res.artifacts["cover.json"] = bio.cover_to_json(cover, "landmarks.csv")
    res.artifacts["diagram_union.csv"] = bio.diagram_to_csv(D_union)
    res.artifacts["diagram_dual.csv"] = bio.diagram_to_csv(D_dual)
    res.artifacts["strips_deg0.json"] = bio.strips_to_json(strips)
    res.artifacts["pbn_deg0.svg"] = plot_regions(D_union, strips, (0.0, 5.0, 0.0, 5.0), 0)
    res.artifacts["pbn_deg1.svg"] = plot_regions(
        D_union, blind_strips(D_union, 1, omega.omega_scalar), (0.0, 5.0, 0.0, 5.0), 1)
    res.elapsed = time.monotonic() - t0
    return res


def run_circle_near96(h: float = 0.01) -> ScenarioResult:
    t0 = time.monotonic()
    res = ScenarioResult("circle-near96")
    pts = near96_points()
    cloud = PointCloud(pts)
    cover = BallCover(cloud, 0.55, tau=4.0, offset=0.25)
    shape = ReferenceShape.circle(4.0)
    f = FilteringFunction.abs_coordinate(1)

    from .geometry import near_radius_interval
    lo, hi = near_radius_interval(0.25, 4.0)
    res.check("admissible radius interval is (0.539, 3.711) to 1e-3",
              abs(lo - 0.539) <= 1e-3 and abs(hi - 3.711) <= 1e-3,
              f"interval=({lo:.5f}, {hi:.5f})")
    rep = check_density_near(cover, shape)
    res.check("near-sample gate (s=0.25, radius 0.55, tau 4)", rep.passed,
              f"max_gap={rep.max_gap:.4f}")

    D_union = raster_ball_union_persistence(cover, f, h)
    deaths = [d for _, d in D_union.significant(0, 0.05) if d != INF]
    merge = deaths[0] if deaths else float("nan")
    res.check("merge death within 0.05 of 3.40955",
              len(deaths) == 1 and abs(merge - 3.40955) <= 0.05,
              f"merge={merge:.5f}")

    omega = modulus(f, cover.radius + cover.offset)
    strips = blind_strips(D_union, 0, omega.omega_scalar)
    res.check("strip total width is exactly 1.6", strips.total_width == 1.6,
              f"width={strips.total_width!r}")

    res.artifacts["landmarks.csv"] = bio.points_to_csv(cloud)
    res.artifacts["cover.json"] = bio.cover_to_json(cover, "landmarks.csv")
    res.artifacts["diagram_union.csv"] = bio.diagram_to_csv(D_union)
    res.artifacts["strips_deg0.json"] = bio.strips_to_json(strips)
    res.artifacts["pbn_deg0.svg"] = plot_regions(D_union, strips, (0.0, 5.0, 0.0, 5.0), 0)
    res.elapsed = time.monotonic() - t0
    return res


def run_quarter9() -> ScenarioResult:
    t0 = time.monotonic()
    res = ScenarioResult("quarter9")
    cloud = precondition_general_position(PointCloud(quarter9_points()), jitter_seed())
    cover = BallCover(cloud, 1.0, tau=4.0)
    K = dual_complex(cover)
    res.check("dual complex is a 9-vertex path",
              len(K.of_dim(0)) == 9 and len(K.of_dim(1)) == 8 and len(K.of_dim(2)) == 0,
              f"vertices={len(K.of_dim(0))}, edges={len(K.of_dim(1))}, "
              f"triangles={len(K.of_dim(2))}")
    expected_edges = [(i, i + 1) for i in range(8)]
    res.check("edges connect consecutive landmarks", K.of_dim(1) == expected_edges)
    nerve = cech_nerve(cover)
    bn = betti_numbers(nerve)
    bd = betti_numbers(K)
    width = max(len(bn), len(bd))
    pad = lambda t: tuple(t) + (0,) * (width - len(t))
    res.check("nerve and dual complex have equal Betti numbers",
              pad(bn) == pad(bd), f"nerve={bn}, dual={bd}")
    res.check("both contractible (Betti (1, 0, ...))",
              pad(bd)[0] == 1 and all(x == 0 for x in pad(bd)[1:]))

    res.artifacts["landmarks.csv"] = bio.points_to_csv(cloud)
    res.artifacts["cover.json"] = bio.cover_to_json(cover, "landmarks.csv")
    res.elapsed = time.monotonic() - t0
    return res


_BEAN_RADII = (0.4, 0.2, 0.15)
_BEAN_H = {0.4: 0.04, 0.2: 0.02, 0.15: 0.012}


def _bean_fixtures():
    poly = bean_polygon()
    bean_shape = ReferenceShape.from_points(poly, BEAN_SPACING)
    circ_pts = circle_points(COMPARE_CIRCLE_RADIUS, COMPARE_CIRCLE_COUNT)
    circ_shape = ReferenceShape.circle(COMPARE_CIRCLE_RADIUS)
    bean_landmarks = PointCloud(poly[::2])
    circ_landmarks = PointCloud(circ_pts)
    return bean_shape, bean_landmarks, circ_shape, circ_landmarks


def run_bean_compare(h_scale: float = 1.0) -> ScenarioResult:
    t0 = time.monotonic()
    res = ScenarioResult("bean-compare")
    f = FilteringFunction.abs_coordinate(1)
    bean_shape, bean_lm, circ_shape, circ_lm = _bean_fixtures()

    diagrams = {}
    for radius in _BEAN_RADII:
        cover_y = BallCover(bean_lm, radius, tau=BEAN_TAU)
        cover_x = BallCover(circ_lm, radius, tau=COMPARE_CIRCLE_TAU)
        rep_y = check_density_on(cover_y, bean_shape)
        rep_x = check_density_on(cover_x, circ_shape)
        res.check(f"density gates pass at radius {radius}",
                  rep_y.passed and rep_x.passed,
                  f"gaps: bean={rep_y.max_gap:.3f}, circle={rep_x.max_gap:.3f}")
        h = _BEAN_H[radius] * h_scale
        diagrams[radius] = (
            raster_ball_union_persistence(cover_y, f, h, degree_max=0),
            raster_ball_union_persistence(cover_x, f, h, degree_max=0),
        )

    # Certification covers (radius 0.15): the cited witnesses sit outside both
    # strip sets and deliver the bound 0.7 exactly.
    D_bean, D_circ = diagrams[0.15]
    omega = modulus(f, 0.15)
    strips_bean = blind_strips(D_bean, 0, omega.omega_scalar)
    strips_circ = blind_strips(D_circ, 0, omega.omega_scalar)
    w_y = (0.4, 2.2)
    w_x = (1.1, 1.5)
    out_y = classify(strips_bean, w_y) == "outside"
    out_x = classify(strips_circ, w_x) == "outside"
    res.check("witness (0.4, 2.2) outside the comb strips", out_y)
    res.check("witness (1.1, 1.5) outside the circle strips", out_x)
    beta_y = count_alive(D_bean, 0, *w_y)
    beta_x = count_alive(D_circ, 0, *w_x)
    res.check("comb PBN at (0.4, 2.2) equals 3", beta_y == 3, f"value={beta_y}")
    res.check("circle PBN at (1.1, 1.5) equals 2", beta_x == 2, f"value={beta_x}")
    cert = pseudodistance_bound(
        PBNValue(0, (w_y[0],), (w_y[1],), beta_y),
        PBNValue(0, (w_x[0],), (w_x[1],), beta_x))
    res.check("pseudodistance bound is 0.7",
              cert is not None and abs(cert.bound - 0.7) <= 1e-12,
              f"bound={None if cert is None else cert.bound!r}")
    res.artifacts["bound_certificate.json"] = bio.certificate_to_json(cert)

    # Dense covers (radius 0.2): the automated search must reach [1.1, 1.5].
    D_bean2, D_circ2 = diagrams[0.2]
    omega2 = modulus(f, 0.2)
    sb2 = blind_strips(D_bean2, 0, omega2.omega_scalar)
    sc2 = blind_strips(D_circ2, 0, omega2.omega_scalar)
    found2 = search_best_bound(D_bean2, D_circ2, sb2, sc2, degrees=(0,))
    res.check("radius-0.2 search bound within [1.1, 1.5]",
              found2 is not None and 1.1 <= found2.bound <= 1.5,
              f"bound={None if found2 is None else round(found2.bound, 4)}")

    # Coarse covers (radius 0.4): the search still clears the cited 0.7.
    D_bean4, D_circ4 = diagrams[0.4]
    omega4 = modulus(f, 0.4)
    sb4 = blind_strips(D_bean4, 0, omega4.omega_scalar)
    sc4 = blind_strips(D_circ4, 0, omega4.omega_scalar)
    found4 = search_best_bound(D_bean4, D_circ4, sb4, sc4, degrees=(0,))
    res.check("radius-0.4 search bound at least 0.7 (and at most 1.5)",
              found4 is not None and 0.7 <= found4.bound <= 1.5,
              f"bound={None if found4 is None else round(found4.bound, 4)}")

    res.artifacts["bean_polygon.csv"] = bio.points_to_csv(PointCloud(bean_polygon()))
    res.artifacts["bean_landmarks.csv"] = bio.points_to_csv(bean_lm)
    res.artifacts["circle_landmarks.csv"] = bio.points_to_csv(circ_lm)
    res.artifacts["diagram_bean_r015.csv"] = bio.diagram_to_csv(D_bean)
    res.artifacts["diagram_circle_r015.csv"] = bio.diagram_to_csv(D_circ)
    res.artifacts["search_r02.json"] = bio.certificate_to_json(found2)
    res.artifacts["search_r04.json"] = bio.certificate_to_json(found4)
    res.elapsed = time.monotonic() - t0
    return res


def run_color_circles() -> ScenarioResult:
    t0 = time.monotonic()
    res = ScenarioResult("color-circles")
    table_x = color_square_table()
    table_y = color_pentagon_table()
    f_x = FilteringFunction.vertex_table(table_x, lipschitz=(COLOR_LIPSCHITZ,) * 2)
    f_y = FilteringFunction.vertex_table(table_y, lipschitz=(COLOR_LIPSCHITZ,) * 2)

    filtered = {}
    for name, table_f, center in (("x", f_x, (0.0, 0.0)), ("y", f_y, (3.0, 0.0))):
        pts = circle_points(COLOR_RADIUS, COLOR_COUNT, center=center)
        cloud = precondition_general_position(PointCloud(pts), jitter_seed())
        cover = BallCover(cloud, COLOR_BALL_RADIUS, tau=COLOR_RADIUS)
        rep = check_density_on(cover, ReferenceShape.circle(COLOR_RADIUS, center))
        res.check(f"density gate passes for shape {name}", rep.passed,
                  f"max_gap={rep.max_gap:.4f}")
        K = dual_complex(cover)
        res.check(f"dual complex of shape {name} is an 80-cycle",
                  len(K.of_dim(0)) == 80 and len(K.of_dim(1)) == 80
                  and len(K.of_dim(2)) == 0 and betti_numbers(K) == (1, 1))
        filtered[name] = sublevel_filtration(K, table_f)

    omega = modulus(f_x, COLOR_BALL_RADIUS)
    W = 2.0 * omega.omega_scalar  # dual-shape regime doubles the slack

    leaf = {name: reduce_filtration(foliation_reduce(F, COLOR_PAIR))
            for name, F in filtered.items()}
    u_y, v_y = (-0.28, 0.12), (0.32, 0.72)
    u_x, v_x = (-0.06, 0.34), (0.1, 0.5)
    s_uy, s_vy = COLOR_PAIR.leaf_parameter(u_y), COLOR_PAIR.leaf_parameter(v_y)
    s_ux, s_vx = COLOR_PAIR.leaf_parameter(u_x), COLOR_PAIR.leaf_parameter(v_x)
    res.check("leaf parameter of (-0.28, 0.12) is -0.08*sqrt(2)",
              abs(s_uy - (-0.08 * math.sqrt(2.0))) <= 1e-12)

    beta_y_leaf = pbn_query_1d(leaf["y"], 0, s_uy, s_vy).value
    beta_x_leaf = pbn_query_1d(leaf["x"], 0, s_ux, s_vx).value
    res.check("leaf PBN of pentagon shape is 2", beta_y_leaf == 2, f"value={beta_y_leaf}")
    res.check("leaf PBN of square shape is 1", beta_x_leaf == 1, f"value={beta_x_leaf}")

    beta_y_multi = pbn_query_multi(filtered["y"], 0, u_y, v_y).value
    beta_x_multi = pbn_query_multi(filtered["x"], 0, u_x, v_x).value
    res.check("direct 2-parameter ranks agree with the leaf reduction",
              beta_y_multi == beta_y_leaf and beta_x_multi == beta_x_leaf,
              f"multi=({beta_y_multi}, {beta_x_multi})")

    strips_y = blind_strips(leaf["y"], 0, W)
    strips_x = blind_strips(leaf["x"], 0, W)
    res.check("pentagon witness outside doubled strips",
              classify(strips_y, (s_uy, s_vy)) == "outside")
    res.check("square witness outside doubled strips",
              classify(strips_x, (s_ux, s_vx)) == "outside")

    cert = pseudodistance_bound(
        PBNValue(0, u_y, v_y, beta_y_multi),
        PBNValue(0, u_x, v_x, beta_x_multi))
    res.check("pseudodistance bound is 0.22",
              cert is not None and abs(cert.bound - 0.22) <= 1e-12,
              f"bound={None if cert is None else cert.bound!r}")

    res.artifacts["square_values.json"] = bio.function_to_json(f_x)
    res.artifacts["pentagon_values.json"] = bio.function_to_json(f_y)
    res.artifacts["leaf_diagram_square.csv"] = bio.diagram_to_csv(leaf["x"])
    res.artifacts["leaf_diagram_pentagon.csv"] = bio.diagram_to_csv(leaf["y"])
    res.artifacts["bound_certificate.json"] = bio.certificate_to_json(cert)
    res.artifacts["leaf_pbn_pentagon.svg"] = plot_regions(
        leaf["y"], strips_y, (-0.5, 1.2, -0.5, 1.2), 0)
    res.elapsed = time.monotonic() - t0
    return res


SCENARIOS: dict[str, Callable[[], ScenarioResult]] = {
    "circle64": run_circle64,
    "circle-near96": run_circle_near96,
    "quarter9": run_quarter9,
    "bean-compare": run_bean_compare,
    "color-circles": run_color_circles,
}


def run_scenario(name: str) -> ScenarioResult:
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}")
    return SCENARIOS[name]()
