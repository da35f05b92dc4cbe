"""Exact 2-switch combinatorics on labeled graphs."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (
    BudgetExceededError,
    DegreeParseError,
    GraphConstructionError,
    InfeasibleDegreeError,
    MembershipError,
    PreconditionError,
    RangeError,
    SwitchLabError,
    TheoremViolation,
    UndefinedParameterError,
    VertexRangeError,
)
from .graph import (
    LabeledGraph,
    build_graph,
    components,
    cyc_for,
    cycle_count,
    degree_vector,
    structural_class,
    zeta,
)
from .params import ParamId, param_value
from .realization import (
    RealizationGraph,
    are_isomorphic,
    build_realization_graph,
    connectivity,
    construct_counterexample,
    distance,
    enumerate_realizations,
)
from .stability import (
    ParamReport,
    check_interval_property,
    check_stability,
    distance_lower_bound_check,
    rank_jump_check,
)
from .switches import TwoSwitch, apply, classify, enumerate_switches, inverse, is_valid
from .transition import SwitchSequence, forest_transition, pseudoforest_transition
