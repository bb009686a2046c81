"""slnet: exact limit-cycle analysis for semilattice networks.

A semilattice network updates every node to the fold of its in-neighbor
values under one shared commutative, associative, idempotent operation.
This package computes the exact cycle structure of such a network when its
dependency graph is strongly connected, sandwich bounds from the component
poset otherwise, and verifies everything against exhaustive phase-space
enumeration at desk scale.
"""

from ._kernels import BACKEND
from .bounds import (NetworkAnalysis, NoNeutralError, StructPolynomial,
                     bound_network, evaluate, lower_polynomial,
                     maximal_antichains, upper_polynomial)
from .cycles import (CycleStructure, divisors, period_divisor_sum,
                     periodic_state_count, prime_power_state_count,
                     product_structure, strongly_connected_structure)
from .errors import SchemaError
from .graphs import (DependencyGraph, LayerPartition, Poset, SccDecomposition,
                     build_poset, graph_from_json, layer_partition, loop_number,
                     loop_number_scc, scc_decompose, simple_cycle_gcd)
from .operators import (AxiomReport, MalformedOperatorError, NotSemilatticeError,
                        OperatorTable, and_operator, builtin_operator,
                        extend_with_neutral, find_absorbent, find_neutral, fold,
                        max_operator, min_operator, operator_from_json,
                        or_operator, semilattice_to_lattice, validate_operator)
from .phasespace import (DEFAULT_STATE_BUDGET, BudgetExceededError, CheckReport,
                         NetworkSpec, PhaseSpace, RawNetwork, apply,
                         check_collapse, check_edge_deletion,
                         check_exact_structure, check_period_divides,
                         check_rotation_conjugacy, decode_state, encode_state,
                         enumerate_phase_space, network_from_json,
                         oracle_cycle_structure, run_checks)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport", "BACKEND", "BudgetExceededError", "CheckReport",
    "CycleStructure", "DEFAULT_STATE_BUDGET", "DependencyGraph",
    "LayerPartition", "MalformedOperatorError", "NetworkAnalysis",
    "NetworkSpec", "NoNeutralError", "NotSemilatticeError", "OperatorTable",
    "PhaseSpace", "Poset", "RawNetwork", "SccDecomposition", "SchemaError",
    "StructPolynomial", "and_operator", "apply", "bound_network",
    "build_poset", "builtin_operator", "check_collapse", "check_edge_deletion",
    "check_exact_structure", "check_period_divides", "check_rotation_conjugacy",
    "decode_state", "divisors", "encode_state", "enumerate_phase_space",
    "evaluate", "extend_with_neutral", "find_absorbent", "find_neutral",
    "fold", "graph_from_json", "layer_partition", "loop_number",
    "loop_number_scc", "lower_polynomial", "max_operator",
    "maximal_antichains", "min_operator", "network_from_json",
    "operator_from_json", "or_operator", "oracle_cycle_structure",
    "period_divisor_sum", "periodic_state_count", "prime_power_state_count",
    "product_structure", "run_checks", "scc_decompose",
    "semilattice_to_lattice", "simple_cycle_gcd",
    "strongly_connected_structure", "upper_polynomial", "validate_operator",
    "__version__",
]
