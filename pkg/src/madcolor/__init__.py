"""Deterministic LOCAL-model list-coloring of graphs with bounded maximum average degree."""

from .errors import (BoundViolationError, CapExceededError, ContractError, DivergenceError,
                     MadcolorError, MalformedInputError, NotNiceError, ProgressStallError)
from .gallai import clique_list_color, degree_list_color, reverse_bfs_greedy
from .generators import generate, random_lists, uniform_lists
from .graph import (Graph, ball, ball_within, block_decomposition, build_graph, clique_at,
                    induced_subgraph, is_gallai_tree)
from .local import GatherBall, NodeProgram, RoundTranscript, run_program
from .sparse import (ColoringResult, brooks_list, classify, color_nice, color_sparse,
                     extend_to_happy, preset_d)
from .structures import DEFAULT_C, Classification, PeelingTrace, RulingForest, radius_for
from .subroutines import find_clique, plus_one_coloring, ruling_forest

__version__ = "0.1.0"
