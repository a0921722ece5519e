"""Executable operational and denotational semantics for CCS with joint
inputs (``ccsn``) and with mixed joint prefixes (``ccsnplus``)."""
from .abstraction import check_xi, discriminate, lift_resumption
from .denotational import den_d
from .operational import den_o
from .parser import ParseError, parse_program, parse_statement
from .syntax import Calculus, Program
from .traces import Trace, render_set

__all__ = [
    "Calculus",
    "ParseError",
    "Program",
    "Trace",
    "check_xi",
    "den_d",
    "den_o",
    "discriminate",
    "lift_resumption",
    "parse_program",
    "parse_statement",
    "render_set",
]

__version__ = "0.1.0"
