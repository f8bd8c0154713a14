from .config import Config
from .driver import format_report, run
from .saturation import Verdict
from .syntax import load_problem, parse_problem

__all__ = ["Config", "Verdict", "format_report", "load_problem", "parse_problem", "run"]
