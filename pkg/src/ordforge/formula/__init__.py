"""Syntax, arithmetization and schema builders for the truth theories."""

from .godel import decode, encode, is_formula_code
from .sexpr import parse_formula, pretty, to_sexpr
from .syntax import *  # noqa: F401,F403
from .syntaxfns import bicond_h, bounded_bd, close_g, readable_rd, subst_f
