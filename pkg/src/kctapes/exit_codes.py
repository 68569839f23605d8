"""Process exit codes of the kctapes command line and their descriptions."""

from enum import IntEnum
from typing import Dict


class ExitCode(IntEnum):
    """Exit codes returned by every kctapes subcommand."""

    OK = 0
    REFUTED = 1
    USAGE = 2


EXIT_DESCRIPTIONS: Dict[int, str] = {
    0: "Check holds or command completed",
    1: "Check fails; a witness is printed",
    2: "Usage, parse or typing error",
}
