# app.py - lorentz-check command-line application
import os
import sys
import logging
import argparse

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'backend'))

from routes import check_routes, norm_routes  # noqa: E402
from utils import __version__  # noqa: E402
from utils.config import EXIT_USAGE_ERROR, get_config  # noqa: E402
from utils.logger import log_error_with_context, setup_logging  # noqa: E402
from utils.validators import ValidationError  # noqa: E402

logger = logging.getLogger(__name__)


def create_app(config_class=None) -> argparse.ArgumentParser:
    """Application factory pattern: the parser with every command registered"""
    parser = argparse.ArgumentParser(
        prog='lorentz-check',
        description='Lorentz quasi-norms of step functions and sequences, and randomized checks of their embeddings'
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.set_defaults(config_class=config_class)

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    norm_routes.register(subparsers)
    check_routes.register(subparsers)
    return parser


def main(argv=None, stdout=None) -> int:
    """Run one command; returns the process exit code"""
    try:
        config = get_config()
        config.validate_config()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR

    setup_logging(config)
    parser = create_app(config)

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE_ERROR

    out = stdout if stdout is not None else sys.stdout.buffer
    try:
        return args.handler(args, config, out)
    except ValidationError as e:
        logger.debug(f"{args.command} rejected: {e}", extra={'extra_data': e.to_dict()})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except Exception as e:
        log_error_with_context(e, {'command': args.command})
        raise


if __name__ == '__main__':
    sys.exit(main())
