"""Lower bounds on the natural pseudodistance between two sampled shapes.

If one shape's PBN at (u, v) strictly exceeds the other's at (u', v'), no
homeomorphism can match the filtering functions closer than
min(min_r(u'_r - u_r), min_r(v_r - v'_r)).  Witnesses must be certified exact
(outside both blind strip sets) before the comparison says anything about the
true shapes rather than their proxies.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .certify import BlindStripSet, classify_grid
from .persistence import PBNValue, PersistenceDiagram, count_alive, count_alive_grid


@dataclass(frozen=True)
class BoundCertificate:
    degree: int
    witness_a: tuple  # (u, v) for the richer shape
    witness_b: tuple  # (u', v') for the poorer shape
    value_a: int
    value_b: int
    bound: float

    @property
    def useful(self) -> bool:
        return self.bound > 0


def pseudodistance_bound(beta_a: PBNValue, beta_b: PBNValue) -> Optional[BoundCertificate]:
    """Certificate from one strict PBN comparison, or None if values do not order."""
    if beta_a.degree != beta_b.degree:
        raise ValueError("witnesses must share a homology degree")
    if not beta_a.value > beta_b.value:
        return None
    u = np.array(beta_a.u)
    v = np.array(beta_a.v)
    up = np.array(beta_b.u)
    vp = np.array(beta_b.v)
    bound = float(min((up - u).min(), (v - vp).min()))
    return BoundCertificate(beta_a.degree, (beta_a.u, beta_a.v), (beta_b.u, beta_b.v),
                            beta_a.value, beta_b.value, bound)


@dataclass(frozen=True)
class SearchGrid:
    """Candidate generation for the witness search.

    Corner candidates come from each diagram's coordinates pushed outward by
    the strip width plus a margin (a fraction of the value range), topped up
    with a uniform grid over the value range so corners far from any diagram
    coordinate are reachable too.
    """

    margin_frac: float = 0.05
    resolution: int = 101


def _axis_candidates(D: PersistenceDiagram, degree: int, W: float,
                     grid: SearchGrid) -> np.ndarray:
    finite = [x for b, d in D.pairs(degree) for x in (b, d) if x != math.inf]
    if not finite:
        return np.array([])
    lo, hi = min(finite), max(finite)
    value_range = (hi - lo) or 1.0
    margin = grid.margin_frac * value_range
    cands = set()
    for c in set(finite):
        cands.add(c + W + margin)
        cands.add(c - W - margin)
    cands.update(np.linspace(lo - W - margin, hi + W + margin, grid.resolution))
    return np.array(sorted(cands))


def _certified_corners(D: PersistenceDiagram, strips: BlindStripSet, degree: int,
                       grid: SearchGrid) -> list[tuple[float, float, int]]:
    cands = _axis_candidates(D, degree, strips.W, grid)
    if len(cands) == 0:
        return []
    us, vs = np.meshgrid(cands, cands, indexing="ij")
    mask = us < vs
    u_flat, v_flat = us[mask], vs[mask]
    outside = classify_grid(strips, u_flat, v_flat)
    u_flat, v_flat = u_flat[outside], v_flat[outside]
    betas = count_alive_grid(D, degree, u_flat, v_flat)
    return [(float(u), float(v), int(k)) for u, v, k in zip(u_flat, v_flat, betas)]


def _pareto(corners: list[tuple[float, float, int]], rich: bool
            ) -> list[tuple[float, float, int]]:
    """Drop dominated corners.  A rich witness wants small u and large v; a
    poor witness wants large u and small v."""
    by_value: dict[int, list[tuple[float, float]]] = {}
    for u, v, k in corners:
        by_value.setdefault(k, []).append((u, v))
    kept: list[tuple[float, float, int]] = []
    for k, uv in by_value.items():
        uv.sort(key=lambda t: (t[0], -t[1]) if rich else (-t[0], t[1]))
        best = -np.inf
        for u, v in uv:
            score = v if rich else -v
            if score > best:
                best = score
                kept.append((u, v, k))
    return kept


def search_best_bound(proxy_a: PersistenceDiagram, proxy_b: PersistenceDiagram,
                      strips_a: BlindStripSet, strips_b: BlindStripSet,
                      degrees: Sequence[int],
                      grid: SearchGrid = SearchGrid()) -> Optional[BoundCertificate]:
    """Best positive certificate over certified corner pairs, both directions."""
    best: Optional[BoundCertificate] = None
    for degree in degrees:
        corners_a = _certified_corners(proxy_a, strips_a, degree, grid)
        corners_b = _certified_corners(proxy_b, strips_b, degree, grid)
        for rich, poor in ((corners_a, corners_b), (corners_b, corners_a)):
            if not rich or not poor:
                continue
            rich_f = _pareto(rich, rich=True)
            poor_f = _pareto(poor, rich=False)
            ru = np.array([c[0] for c in rich_f])
            rv = np.array([c[1] for c in rich_f])
            rk = np.array([c[2] for c in rich_f])
            pu = np.array([c[0] for c in poor_f])
            pv = np.array([c[1] for c in poor_f])
            pk = np.array([c[2] for c in poor_f])
            gain = rk[:, None] > pk[None, :]
            if not gain.any():
                continue
            bounds = np.minimum(pu[None, :] - ru[:, None], rv[:, None] - pv[None, :])
            bounds = np.where(gain, bounds, -np.inf)
            i, j = np.unravel_index(int(np.argmax(bounds)), bounds.shape)
            if not np.isfinite(bounds[i, j]) or bounds[i, j] <= 0:
                continue
            cert = BoundCertificate(degree, ((float(ru[i]),), (float(rv[i]),)),
                                    ((float(pu[j]),), (float(pv[j]),)),
                                    int(rk[i]), int(pk[j]), float(bounds[i, j]))
            if best is None or cert.bound > best.bound:
                best = cert
    return best
