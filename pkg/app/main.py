import logging
import sys
from typing import Optional, Sequence

from app.core.config import get_settings
from app.core.exceptions import FpaError
from app.core.logging_config import setup_logging
from app.features.cli.router import build_parser, config_kwargs
from app.features.cli.service import EXIT_USAGE, build_config, dispatch, emit_report

setup_logging()
logger = logging.getLogger(__name__)
settings = get_settings()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage to stderr
        return EXIT_USAGE if e.code else 0

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG if args.verbose > 1 else logging.INFO)

    try:
        cfg = build_config(**config_kwargs(args))
        report, code = dispatch(cfg)
        text = emit_report(report, cfg.output_format, cfg.output)
    except FpaError as e:
        logger.error(f"{args.subcommand} failed: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.subcommand}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if not cfg.output:
        sys.stdout.write(text)
    return code


def run():
    sys.exit(main())
