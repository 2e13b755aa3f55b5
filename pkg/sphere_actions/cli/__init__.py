"""
Command-line front end.

Modules:
- main: argument parsing, logging setup and dispatch
- commands: one function per subcommand, returning payload, exit code and text
- selfcheck: the reproduction suites run by `selfcheck`
"""

from .main import build_parser, main
from .selfcheck import SuiteResult, run_selfcheck

__all__ = ['build_parser', 'main', 'SuiteResult', 'run_selfcheck']
