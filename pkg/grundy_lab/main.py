"""Command-line entry point: ``python -m grundy_lab <subcommand>``."""
import argparse
import logging
import sys
from typing import List, Optional

from grundy_lab.commands import COMMANDS
from grundy_lab.config import get_settings

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Exact Grundy numbers, domination, star partitions and girth bounds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    parser.add_argument("--log-level", default=None, help="Logging level (default from settings)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command_class in COMMANDS.items():
        subparser = subparsers.add_parser(name, help=command_class.help, description=command_class.help)
        command_class().add_arguments(subparser)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    options = vars(parser.parse_args(argv))
    logging.basicConfig(
        level=(options.pop("log_level") or get_settings().log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    name = options.pop("command")
    logger.debug(f"Running {name} with {options}")
    return COMMANDS[name]().execute(**options)
