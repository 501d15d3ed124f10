"""Matchings by inverses on finite regular semigroups.

A matching by inverses pairs every element a of a finite semigroup with
an element of V(a) = {b : aba = a, bab = b}, bijectively.  This package
decides whether such matchings (plain, involutive, H-preserving, or
signature-preserving on transformation monoids) exist, constructs and
validates them, and exposes the graph reductions that the decisions run
on.
"""

from .construct import (KernelRangePair, OPnTriple, ReesMatrixSpec,
                        Transformation, catalog, catalog_names, direct_product,
                        full_transformation_monoid,
                        orientation_preserving_monoid,
                        partial_transformation_monoid, rees_matrix)
from .core import (FiniteSemigroup, SemigroupError, TableSemigroup,
                   TransformationSemigroup, dump_table, load_table,
                   verify_associativity)
from .engine import (HallCertificate, Matching, TwoFactorCover,
                     blossom_max_matching, hall_certificate,
                     max_bipartite_matching, one_two_factor,
                     perfect_bipartite_matching, perfect_matching_with_loops)
from .graphs import (BipartiteGraph, InverseGraph, double_cover,
                     incidence_graph, inverse_graph, signature_bigraph,
                     signature_classes, signature_degree)
from .greens import (DClass, GreensStructure, eggbox_text, greens_relations,
                     is_square, is_square_class, principal_factor,
                     zero_rect_band)
from .matchers import (DClassMatchingAudit, MatchOutcome, PermutationMatching,
                       ValidationReport, dclass_matching_audit,
                       find_involution_matching, find_permutation_matching,
                       h_preserving_involution_matching,
                       h_preserving_permutation_matching,
                       hclasses_mutually_inverse, identity_is_matching,
                       involution_from_cover, matching_from_json,
                       matching_to_json, opn_involution_matching,
                       tn_signature_preserving_matching,
                       unique_inverse_in_hclass, validate_matching)
from .reports import analyze, load_semigroup, prop14_catalog, report_json, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
