"""Pointer machines, binary integers as matchings, and their operator encodings."""

from .encoding import encode_machine
from .errors import (
    AlphabetError,
    CapacityError,
    EmptyGraphError,
    EmptyWordError,
    EncodingError,
    NDPMError,
    ParseError,
)
from .integer_rep import IntegerGraph, IntegerMatrix, build_graph, build_matrix, check_representation
from .machine_file import load_machine, parse_machine, parse_pseudo
from .ndpm import Machine, PseudoConfiguration, Verdict, run
from .nilpotency import ProductDynamics, crossval, is_nilpotent, is_nilpotent_matrix
from .observation import Observation
from .stconn import DirectedGraph, decide_stconn, reach_oracle
from .transforms import make_acyclic, one_move_normalize
from .words import BinaryWord, parse_word

__all__ = [
    "AlphabetError",
    "BinaryWord",
    "CapacityError",
    "DirectedGraph",
    "EmptyGraphError",
    "EmptyWordError",
    "EncodingError",
    "IntegerGraph",
    "IntegerMatrix",
    "Machine",
    "NDPMError",
    "Observation",
    "ParseError",
    "ProductDynamics",
    "PseudoConfiguration",
    "Verdict",
    "build_graph",
    "build_matrix",
    "check_representation",
    "crossval",
    "decide_stconn",
    "encode_machine",
    "is_nilpotent",
    "is_nilpotent_matrix",
    "load_machine",
    "make_acyclic",
    "one_move_normalize",
    "parse_machine",
    "parse_pseudo",
    "parse_word",
    "reach_oracle",
    "run",
]
