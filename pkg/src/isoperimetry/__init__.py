"""Exact discrete and continuous isoperimetry for Cayley digraphs on Z^d."""

from .cayley import (
    edge_boundary,
    iterated_sumset,
    subset_sums,
    sumset,
    vertex_boundary,
)
from .continuous import (
    CubeUnionBody,
    asymmetric_index,
    cube_union,
    deficit,
    fmp_ratio,
    perimeter,
)
from .errors import IsoperimetryError
from .exactgeom import (
    RationalPolytope,
    conical_hull,
    convex_hull,
    cube_clip_volume,
    dilate,
    is_generating,
    lattice_points,
    support_function,
    translate,
    volume,
    zonotope,
)
from .extremal import (
    ball,
    best_translate_symdiff,
    constants,
    edge_ball,
    edge_excess,
    kappa,
    tight_example,
    vertex_excess,
)
from .lattice import PointSet, box, unit_vectors
from .search import (
    SearchConfig,
    anneal_min_boundary,
    brunn_minkowski_check,
    conjecture_scan,
    exact_min_boundary,
    plunnecke_verify,
    stability_experiment,
)

__version__ = "0.1.0"
