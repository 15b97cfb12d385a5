"""Finite-group graph constructions, automorphism search and classification.

Builds Haar, bi-Cayley, Cayley, generalized Petersen and double generalized
Petersen graphs; computes automorphism groups, canonical forms and symmetry
classifications; and enumerates Haar graphs over group catalogs.
"""

from .autsearch import (
    Certificate,
    automorphism_group,
    brute_force_automorphisms,
    canonical_form,
    is_automorphism,
    is_isomorphic,
)
from .census import (
    CensusConfig,
    CensusRecord,
    census_summary,
    enumerate_haar_census,
    subset_orbit_representatives,
)
from .classify import (
    ClassificationReport,
    DnrPrediction,
    HaarWitnessReport,
    analyze,
    delta_automorphism,
    find_regular_subgroup,
    is_arc_transitive,
    is_cayley,
    is_haar,
    is_vertex_transitive,
    predict_dnr,
    standard_automorphisms,
    verify_haar_witness,
    verify_theorems,
)
from .constructions import (
    Bipartition,
    DoublePetersenLayout,
    Graph,
    bicayley_graph,
    bipartition,
    cayley_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    cyclic_cover_sigma0,
    double_generalized_petersen,
    from_adjacency_text,
    generalized_petersen,
    generalized_petersen_inner_edges,
    girth,
    haar_graph,
    is_bipartite,
    kronecker_cover,
    path_graph,
    to_adjacency_text,
    voltage_double_cover,
)
from .graph6 import Graph6Error, decode_graph6, encode_graph6
from .groups import (
    CatalogGroup,
    ElementSubset,
    FiniteGroup,
    GroupTableError,
    CatalogError,
    cyclic,
    direct_product,
    format_group_file,
    generalized_dihedral,
    group_automorphisms,
    is_abelian,
    load_catalog,
    load_group_file,
    parse_group_text,
    semidirect_cyclic,
    validate_table,
)
from .permgroups import (
    PermGroup,
    Permutation,
    compose,
    generate_elements,
    group_order,
    is_regular_on,
    membership,
    orbits,
)

__version__ = "0.1.0"
