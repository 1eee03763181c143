"""Association schemes S(H) built from a scheme and a Hadamard matrix."""

__version__ = "0.1.0"

from .builder import BuiltScheme, build_sh, fission_check, hadamard_graph_scheme, lemma_maps_verify
from .groups import PermGroup, aut_group, iso_group, lower_bound, similar_check, sylvester_bound
from .hadamard import HadamardMatrix, MonomialPair, apply_pair, aut_x0, equivalence_check, normalize, sylvester, verify_hadamard
from .iso import scheme_aut_order, scheme_isomorphic
from .orbits import OrbitPartition, k_orbits
from .scheme import (
    AssociationScheme,
    algebraic_iso_check,
    generate_scheme,
    thin_group,
    thin_residue,
    trivial,
    verify_scheme,
    wreath_product,
)
