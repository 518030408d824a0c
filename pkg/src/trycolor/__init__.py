"""Distributed graph coloring with polynomial trial sequences.

A synchronous round simulator with a CONGEST message audit, the batch trial
algorithm and its derived colorings, ruling sets, the one-round color
reduction with an exact configuration-graph oracle, and verifiers for every
guarantee.
"""
from ._kernels import BACKEND
from .engine import MessageAudit, NodeProgram, RunTrace, run_per_class, run_sync
from .errors import (
    BudgetExceeded, Contradiction, GraphFormatError, ParameterError, RoundLimitExceeded, SizeCapExceeded,
    StructuralError,
)
from .field import PrimeField, Polynomial, SequenceFamily, choose_prime, count_intersections, log_ceil
from .graph import Coloring, Graph, Orientation, Partition, generate, greedy_input_coloring
from .mother import MotherOutput, MotherParams, derive_bounds, max_k, run_mother
from .oneround import (
    build_config_graph, colorability, k_max, reduce_one_round, table_from_reduction, tightness_check,
)
from .palette import (
    chop_to_deltaplus1, epsilon_coloring, greedy_to_target, linial_fixed_point, run_corollary,
)
from .ruling import RulingSet, ruling_from_coloring, ruling_set_theorem
from .verify import ViolationReport, verify_bandwidth, verify_coloring, verify_ruling

__version__ = "0.1.0"
