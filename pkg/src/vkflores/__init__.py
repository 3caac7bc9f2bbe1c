"""Computational workbench for the generalized van Kampen-Flores theorem."""

from .complex_core import (
    ComplexError,
    GuardExceeded,
    OrderComplex,
    Poset,
    SimplicialComplex,
    boundary,
    crosspolytope,
    deletion,
    face_poset,
    from_facets,
    generate,
    join,
    order_complex,
    simplex,
    skeleton,
    suspension,
)
from .homology import BettiVector, ChainComplex, betti, is_n_acyclic, reduced_betti
from .deleted_product import ConfComplex, PermAction, build_conf, conf_skeleton, psi_map, upper_ideal_cover
from .certificates import (
    certify_hypotheses,
    check_complementary_acyclic,
    check_saturated,
    weight_lower_bound,
)
from .witness import AffineMap, Witness, constraint_lift, find_witness, random_trials, verify_witness

__version__ = "0.1.0"
