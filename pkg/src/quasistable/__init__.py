"""Graph compression via quasi-stable colorings, with reduced-problem solvers
for linear programs, max flow, and betweenness centrality."""

from .centrality import approx_centrality, brandes_exact, spearman
from .coloring import (
    Coloring,
    ErrorReport,
    RothkoParams,
    q_error,
    refine_congruence,
    refine_stable,
    refine_wl2,
    rothko,
    validate,
)
from .errors import (
    CapacityError,
    InputError,
    ParameterError,
    ParseError,
    QscError,
    UndefinedCorrelation,
)
from .flow import FlowNetwork, flow_bounds, max_flow, max_uniform_flow
from .generators import barabasi_albert, gen_blowup, perturb
from .graph import WeightedDigraph, dump_edge_list, load_edge_list
from .kernels import backend_name
from .lp import LPSolution, export_mps, read_mps, solve_lp
from .reduce import (
    BipartiteColoring,
    ExtendedMatrix,
    LinearProgram,
    ReducedGraph,
    color_lp,
    error_matrices,
    lift_matrices,
    reduce_lp,
    reduced_graph,
)

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "ErrorReport",
    "RothkoParams",
    "q_error",
    "refine_congruence",
    "refine_stable",
    "refine_wl2",
    "rothko",
    "validate",
    "WeightedDigraph",
    "load_edge_list",
    "dump_edge_list",
    "FlowNetwork",
    "max_flow",
    "max_uniform_flow",
    "flow_bounds",
    "LinearProgram",
    "ExtendedMatrix",
    "BipartiteColoring",
    "ReducedGraph",
    "reduced_graph",
    "color_lp",
    "reduce_lp",
    "lift_matrices",
    "error_matrices",
    "LPSolution",
    "solve_lp",
    "export_mps",
    "read_mps",
    "approx_centrality",
    "brandes_exact",
    "spearman",
    "gen_blowup",
    "perturb",
    "barabasi_albert",
    "backend_name",
    "QscError",
    "InputError",
    "ParseError",
    "ParameterError",
    "CapacityError",
    "UndefinedCorrelation",
    "__version__",
]
