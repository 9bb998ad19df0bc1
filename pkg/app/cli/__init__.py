from .bench import cmd_bench
from .schedule import parse_schedule
from .solve import cmd_solve, cmd_verify
from .status import ExitCode

__all__ = ["ExitCode", "cmd_bench", "cmd_solve", "cmd_verify", "parse_schedule"]
