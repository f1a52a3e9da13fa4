"""Certified persistent-Betti-number (PBN) estimation from ball coverings.

The pipeline: sample points of (or near) an unknown compact shape, cover them
with equal-radius balls, compute persistence of the covering or of its dual
complex, and read off the shape's PBNs with certified sandwich bounds.  The
only uncertified regions are "blind strips" around the discontinuity lines of
the proxy's PBN function and a band along the diagonal.
"""

__version__ = "0.1.0"

from .geometry import (
    BallCover,
    DensityReport,
    PointCloud,
    ReferenceShape,
    SimplicialComplex,
    cech_nerve,
    check_density_near,
    check_density_on,
    delaunay_2d,
    dual_complex,
    precondition_general_position,
)
from .filtration import (
    AdmissiblePair,
    FilteredComplex,
    FilteringFunction,
    OmegaVector,
    evaluate,
    foliation_reduce,
    modulus,
    sublevel_filtration,
)
from .persistence import (
    PBNValue,
    PersistenceDiagram,
    Segment,
    betti_numbers,
    discontinuity_set,
    pbn_query_1d,
    pbn_query_multi,
    reduce_filtration,
)
from .certify import (
    BlindStripSet,
    SandwichBound,
    blind_strips,
    box_certificate,
    classify,
    equality_certificate,
    sandwich,
)
from .compare import BoundCertificate, SearchGrid, pseudodistance_bound, search_best_bound
from .oracle import analytic_circle_diagram, brute_rank, raster_ball_union_persistence
