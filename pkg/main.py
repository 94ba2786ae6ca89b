import argparse
import logging
import os
import sys

from pydantic import ValidationError

from cli import run
from config import (
    DEFAULT_JOBS, DEFAULT_N, DEFAULT_SEED, EXIT_USAGE, EXIT_VERIFY_FAILED, LOG_DIR, LOG_FILE,
    PINGPONG_SAMPLES, REPORT_TEE, SUBCOMMANDS
)
from schemas import CommandConfig

logger = logging.getLogger("main")


class Logger(object):
    """Tees stdout into LOG_DIR/last_report.txt."""

    def __init__(self, log_dir: str = LOG_DIR):
        self.terminal = sys.stdout
        os.makedirs(log_dir, exist_ok=True)
        self.log = open(os.path.join(log_dir, "last_report.txt"), "w", encoding="utf-8")

    def write(self, message):
        self.terminal.write(message)
        self.log.write(message)
        self.log.flush()

    def flush(self):
        self.terminal.flush()
        self.log.flush()

    def isatty(self):
        return self.terminal.isatty()

    def fileno(self):
        return self.terminal.fileno()

    def close(self):
        self.log.close()


def setup_logging(log_dir: str = LOG_DIR, verbose: bool = False):
    os.makedirs(log_dir, exist_ok=True)
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    file_handler = logging.FileHandler(os.path.join(log_dir, LOG_FILE), encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root.addHandler(file_handler)

    # stdout carries only the report
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.DEBUG if verbose else logging.WARNING)
    console.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(console)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cb",
        description="Colored-Burau and Gassner matrices: evaluation, verification and relation searches",
    )
    parser.add_argument("command", choices=list(SUBCOMMANDS))
    parser.add_argument("--n", type=int, default=DEFAULT_N, help="Number of strands")
    parser.add_argument("--word", help='Braid word, e.g. "s1 s2^-1 A[1,3] center^2"')
    parser.add_argument("--i", type=int)
    parser.add_argument("--j", type=int)
    parser.add_argument("--jprime", type=int)
    parser.add_argument("--depth", type=int, help="Relation search length (default depends on the command)")
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    parser.add_argument("--check", action="store_true", help="puregen: cross-check against the word expansion")
    parser.add_argument("--power", type=int, default=1, help="center-det: power of the center word")
    parser.add_argument("--samples", type=int, default=PINGPONG_SAMPLES, help="pingpong: vectors per direction")
    parser.add_argument("--quick", action="store_true", help="acceptance: skip the slowest checks")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(LOG_DIR, args.verbose)

    options = {k: v for k, v in vars(args).items() if k != "verbose"}
    try:
        config = CommandConfig(**options)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        print(f"usage error: {messages}", file=sys.stderr)
        return EXIT_USAGE

    stdout = sys.stdout
    tee = Logger(LOG_DIR) if REPORT_TEE else None
    if tee:
        sys.stdout = tee
    try:
        status, report = run(config)
        print(report)
        return status
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return 130
    except Exception as e:
        logger.exception(f"CRITICAL ERROR: {e}")
        return EXIT_VERIFY_FAILED
    finally:
        if tee:
            sys.stdout = stdout
            tee.close()


if __name__ == "__main__":
    sys.exit(main())
