"""Expression syntax, input files and the ``foliakit`` command."""

from .main import JobConfig, main, run_command
from .parser import ParseError, UnsupportedForm, lower_to_semantics, parse_expression, parse_function, to_text

__all__ = ["JobConfig", "main", "run_command", "ParseError", "UnsupportedForm",
           "lower_to_semantics", "parse_expression", "parse_function", "to_text"]
