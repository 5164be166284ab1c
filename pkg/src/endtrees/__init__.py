"""Tree-decompositions of one-ended graph truncations.

The package analyzes finite radius-R snapshots (truncations) of one-ended
infinite graph families, computes end invariants (vertex degree, dominating
vertices), and constructs automorphism-invariant tree-decompositions of
finite adhesion whose decomposition tree points toward the end.
"""

from .connectivity import (THICK, CutResult, disjoint_separator_sequence,
                           end_vertex_degree, enumerate_minimal_separators,
                           find_dominating_vertices, max_disjoint_paths)
from .decomposition import (DecompositionTree, NestedFamily, RayDecomposition,
                            TreeDecomposition, build_invariant_family,
                            build_tree, build_tree_decomposition,
                            ray_decomposition, verify_tree_decomposition)
from .families import (BUILTIN_FAMILIES, FamilySpec, TruncatedGraph,
                       generate_family)
from .relevant import (AlphaTable, RelevantSeparation,
                       build_exhausting_sequence, compute_alpha,
                       compute_nice_set, enumerate_relevant, relevant_pool,
                       verify_relevant)
from .separations import (Separation, corner_separations, is_proper, is_tight,
                          leq, lt, make_separation, nested)
from .symmetry import (LARGE, AutomorphismGroup, automorphisms,
                       check_family_invariance, orbit_count_interior,
                       tree_tail_check)

__version__ = "0.1.0"
