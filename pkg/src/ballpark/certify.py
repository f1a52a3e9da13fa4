"""Certified bounds for the unknown shape's PBNs from a proxy diagram.

A proxy (ball union or dual shape) pins the true PBN between two of its own
values queried at widened/narrowed points; the widening is the modulus of
continuity at the sampling scale, doubled for the dual shape.  Away from the
proxy's discontinuity segments and the diagonal the two bounds coincide and
the value is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .filtration import FilteredComplex, OmegaVector
from .persistence import (
    PersistenceDiagram,
    Segment,
    count_alive,
    discontinuity_set,
    pbn_query_multi,
)

ON_MANIFOLD = "on-manifold"
NEAR_MANIFOLD = "near-manifold"
DUAL_SHAPE = "dual-shape"

_REGIME_FACTOR = {ON_MANIFOLD: 1, NEAR_MANIFOLD: 1, DUAL_SHAPE: 2}

Proxy = Union[PersistenceDiagram, FilteredComplex]


@dataclass(frozen=True)
class SandwichBound:
    degree: int
    u: tuple
    v: tuple
    lower: int
    upper: int
    slack: OmegaVector
    regime: str
    degenerate: bool = False

    @property
    def certified(self) -> bool:
        return self.lower == self.upper and not self.degenerate


def _query(proxy: Proxy, degree: int, u: np.ndarray, v: np.ndarray) -> int:
    if isinstance(proxy, PersistenceDiagram):
        if u.shape != (1,):
            raise ValueError("diagram proxies answer scalar queries only")
        return count_alive(proxy, degree, float(u[0]), float(v[0]))
    return pbn_query_multi(proxy, degree, u, v).value


def _query_degenerate(proxy: Proxy, degree: int, w: np.ndarray) -> int:
    """Classes alive exactly at level w: the limit of queries (w, w+eps)."""
    if isinstance(proxy, PersistenceDiagram):
        return sum(1 for b, d in proxy.pairs(degree) if b <= w[0] and d > w[0])
    eps = 1e-12 * max(1.0, float(np.abs(w).max()))
    return pbn_query_multi(proxy, degree, w, w + eps).value


def sandwich(proxy: Proxy, degree: int, u, v, omega: OmegaVector, regime: str,
             clamp: bool = False, extra_widening: float = 0.0) -> SandwichBound:
    """Bracket the unknown shape's PBN at (u, v) by proxy queries.

    lower = beta_proxy(u - k*w, v + k*w), upper = beta_proxy(u + k*w, v - k*w)
    with k = 1 for ball-union regimes and k = 2 for the dual shape.  The query
    must clear the diagonal by k*w; with ``clamp`` the upper query degrades to
    the diagonal limit instead of raising.  ``extra_widening`` adds the
    optional vertex-max discretization slack.
    """
    if regime not in _REGIME_FACTOR:
        raise ValueError(f"unknown regime {regime!r}")
    k = _REGIME_FACTOR[regime]
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    vv = np.atleast_1d(np.asarray(v, dtype=np.float64))
    w = k * omega.omega_scalar + extra_widening
    lower = _query(proxy, degree, uu - w, vv + w)
    degenerate = not np.all(uu + w < vv - w)
    if degenerate:
        if not clamp:
            raise ValueError("query inside forbidden diagonal band")
        # The widened interval [u + w, v - w] has collapsed; freeze the upper
        # query at the collapse point, the midpoint of u and v.
        upper = _query_degenerate(proxy, degree, (uu + vv) / 2.0)
    else:
        upper = _query(proxy, degree, uu + w, vv - w)
    return SandwichBound(degree, tuple(map(float, uu)), tuple(map(float, vv)),
                         int(lower), int(upper), omega, regime, degenerate)


def equality_certificate(proxy: Proxy, degree: int, u, v, omega: OmegaVector,
                         regime: str, extra_widening: float = 0.0) -> Optional[int]:
    """Exact PBN value of the unknown shape when the sandwich pinches shut."""
    bound = sandwich(proxy, degree, u, v, omega, regime, clamp=False,
                     extra_widening=extra_widening)
    if bound.certified:
        return bound.lower
    return None


def box_certificate(proxy: Proxy, degree: int, u_lo, u_hi, v_lo, v_hi,
                    omega: OmegaVector, regime: str) -> Optional[int]:
    """Certify a whole box of queries at once.

    For every (u*, v*) with u* in [u_lo, u_hi] and v* in [v_lo, v_hi] the
    unknown shape's PBN equals the proxy's, provided the box cleared by the
    slack stays above the diagonal and the extreme proxy queries agree.
    """
    k = _REGIME_FACTOR[regime]
    w = k * omega.omega_scalar
    u_lo = np.atleast_1d(np.asarray(u_lo, dtype=np.float64))
    u_hi = np.atleast_1d(np.asarray(u_hi, dtype=np.float64))
    v_lo = np.atleast_1d(np.asarray(v_lo, dtype=np.float64))
    v_hi = np.atleast_1d(np.asarray(v_hi, dtype=np.float64))
    if not (np.all(u_lo <= u_hi) and np.all(v_lo <= v_hi)):
        raise ValueError("empty box")
    if not np.all(u_hi + w < v_lo - w):
        raise ValueError("query inside forbidden diagonal band")
    outer = _query(proxy, degree, u_lo - w, v_hi + w)
    inner = _query(proxy, degree, u_hi + w, v_lo - w)
    if outer != inner:
        return None
    return int(outer)


@dataclass(frozen=True)
class BlindStripSet:
    """Region of Delta+ where proxy and true PBNs are not certified equal.

    The inside is the union of max-norm W-neighborhoods of the discontinuity
    segments and of the diagonal; each strip therefore has total width 2*W.
    """

    degree: int
    W: float
    segments: tuple[Segment, ...]

    @property
    def total_width(self) -> float:
        return 2.0 * self.W

    def distance(self, u: float, v: float) -> float:
        return min(seg.maxnorm_distance(u, v) for seg in self.segments)


def blind_strips(D: PersistenceDiagram, degree: int, W: float,
                 extra_widening: float = 0.0) -> BlindStripSet:
    if W < 0:
        raise ValueError("strip width must be >= 0")
    return BlindStripSet(degree, float(W + extra_widening), discontinuity_set(D, degree))


def classify(strips: BlindStripSet, q: Sequence[float]) -> str:
    """'outside' iff the max-norm distance to every segment and to the
    diagonal exceeds W; only there is the proxy value certified exact."""
    u, v = float(q[0]), float(q[1])
    if not u < v:
        raise ValueError("not in the domain above the diagonal")
    return "outside" if strips.distance(u, v) > strips.W else "inside"


def classify_grid(strips: BlindStripSet, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Vectorized classify: True where outside.  Queries must satisfy u < v."""
    u = np.asarray(us, dtype=np.float64)
    v = np.asarray(vs, dtype=np.float64)
    inside = (v - u) / 2.0 <= strips.W
    for seg in strips.segments:
        if seg.axis == Segment.DIAGONAL:
            continue
        if seg.axis == Segment.VERTICAL:
            dmain = np.abs(u - seg.value)
            dother = np.clip(np.maximum(seg.lo - v, v - seg.hi), 0.0, None)
        else:
            dmain = np.abs(v - seg.value)
            dother = np.clip(np.maximum(seg.lo - u, u - seg.hi), 0.0, None)
        inside |= np.maximum(dmain, dother) <= strips.W
    return ~inside
