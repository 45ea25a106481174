"""Exact graph-pebbling toolkit.

Closed-form pebbling numbers (trees, cycles, Jahangir graphs), extremal
distribution constructions, and a brute-force solvability engine that
verifies the formulas at desk scale.  The search kernel has a compiled
twin (pebbling._kernel_c) selected automatically at import; set
PEBBLING_BACKEND=python to force the pure fallback.
"""

from ._backend import available_backends, backend_name
from .distributions import (Distribution, contains, distribution,
                            enumerate_distributions, format_distribution,
                            parse_distribution, sample_distribution, total_on)
from .exact import (ExactResult, classify_path_segment, max_unsolvable,
                    pebbling_number, pebbling_number_rooted,
                    sample_verify_solvable)
from .extremal import (ExtremalCase, build_dstar, build_greedy_counterexample,
                       build_jahangir_lower_bound, build_path_class_extremal,
                       greedy_counterexample_rotation_scan)
from .formulas import (AlphaBreakdown, PathPartition, alpha,
                       check_cycle_convexity, cycle_pebbling_formula,
                       j2m_formula, jahangir_pebbling_formula,
                       max_path_partition, t_pebbling_even_cycle,
                       tree_pebbling_formula, validate_t_fold_rule)
from .graphs import (FamilySpec, Graph, JahangirLayout, build_cycle,
                     build_jahangir, build_path, build_tree, clone_vertex,
                     distances_from, parse_family_spec, tree_catalog)
from .solver import (Engine, Move, MoveDigraph, SolveQuery, SolveResult,
                     Witness, apply_move, blind_is_solvable, is_solvable,
                     move_digraph, normalize_witness, sinks_and_sources,
                     weight_certificate)

__version__ = "0.1.0"
