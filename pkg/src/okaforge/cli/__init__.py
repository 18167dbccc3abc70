"""Command-line front end: infix map grammar, JSON jobs and the bundled corpus."""

from .main import main, run
from .parser import parse_expression, parse_map, parse_second
from .serialize import SCHEMA, JobSpec, Options

__all__ = ["main", "run", "parse_expression", "parse_map", "parse_second", "SCHEMA", "JobSpec", "Options"]
