"""A small textual algebra over named relations.

``&`` is natural join, ``|`` generalized union; the remaining operators
use call syntax such as ``project[y](A)`` or ``select[x < y](A)``.
"""

from . import ast
from .evaluator import Env, check_env_name, evaluate, format_relation, run
from .parser import parse, to_text, tokenize

__all__ = [
    "Env", "ast", "check_env_name", "evaluate", "format_relation", "parse", "run",
    "to_text", "tokenize",
]
