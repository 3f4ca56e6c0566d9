"""
Argument parsing and dispatch for the harmonic-mapper command line
"""
import argparse
import sys
from typing import Optional, Sequence

from cli import ears_command, los_table_command, render_command, solve_command, verify_command
from core.errors import HarmonicMappingError, NotCertifiedError
from utils.config import get_config, load_config
from utils.logger import configure_logger

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 2
EXIT_INVALID_INPUT = 3

COMMANDS = (solve_command, verify_command, ears_command, render_command, los_table_command)


class _Parser(argparse.ArgumentParser):
    """Usage errors count as invalid input"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="harmonic-mapper",
        description="Univalent harmonic step maps of the disk onto polygons",
    )
    parser.add_argument("--config", help="JSON configuration file (default: ./config.json)")
    parser.add_argument("--log-dir", help="write a rotating log file to this directory")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in COMMANDS:
        command.add_parser(subparsers)
    return parser


def _setup(args):
    config = load_config(args.config) if args.config else get_config()
    log_dir = args.log_dir or config.get("logging.directory")
    return configure_logger(
        log_dir=log_dir,
        log_file=config.get("logging.file", "harmonic_mapper.log"),
        console_level="INFO" if args.verbose else config.get("logging.console_level", "WARNING"),
        max_bytes=config.get("logging.max_bytes", 10 * 1024 * 1024),
        backup_count=config.get("logging.backup_count", 5),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        logger = _setup(args)
    except (ValueError, OSError) as e:
        print(f"error: configuration: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    try:
        return args.handler(args)
    except NotCertifiedError as e:
        logger.log_operation(args.command, str(e), success=False)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_CERTIFIED
    except (ValueError, OSError) as e:
        logger.log_operation(args.command, str(e), success=False)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except HarmonicMappingError as e:
        # internal consistency failures on accepted input: no certified answer
        logger.error(f"[{args.command}] {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_CERTIFIED
