# backend/routes/check_routes.py
"""
check command: run one suite, every suite, or replay a single trial
"""

import logging
from typing import Any, BinaryIO, Dict

from controllers.report_controller import REPORT_FORMATS, emit_report, load_suite_config
from controllers.suite_controller import SUITES, SuiteController, get_suite
from utils.config import EXIT_CHECK_FAILURE, EXIT_SUCCESS
from utils.data_structures import SuiteConfig
from utils.validators import UsageError

logger = logging.getLogger(__name__)


def _suite_config(args, config) -> SuiteConfig:
    overrides: Dict[str, Any] = load_suite_config(args.config) if args.config else {}

    # command-line values win over the file
    file_suite = overrides.pop('suite_name', None)
    file_trials = overrides.pop('trials', None)
    file_seed = overrides.pop('seed', None)

    suite_name = args.suite or file_suite or next(iter(SUITES))
    trials = args.trials if args.trials is not None else file_trials
    seed = args.seed if args.seed is not None else file_seed

    get_suite(suite_name)
    return SuiteConfig.from_config(config, suite_name, trials=trials, seed=seed, **overrides)


def handle_check(args, config, out: BinaryIO) -> int:
    """Exit 0 when every trial passed, 1 otherwise"""
    suite_config = _suite_config(args, config)
    controller = SuiteController(show_progress=args.progress or config.SHOW_PROGRESS)

    if args.replay is not None:
        if args.all:
            raise UsageError("--replay needs a single --suite", 'replay')
        record = controller.replay_trial(suite_config, args.replay)
        out.write(emit_report(record, args.format))
        return EXIT_SUCCESS if record.report.passed else EXIT_CHECK_FAILURE

    if args.all:
        reports = controller.run_all(suite_config)
        out.write(emit_report(reports, args.format))
        passed = all(report.passed for report in reports)
    else:
        report = controller.run_suite(suite_config)
        out.write(emit_report(report, args.format))
        passed = report.passed

    return EXIT_SUCCESS if passed else EXIT_CHECK_FAILURE


def register(subparsers) -> None:
    check = subparsers.add_parser('check', help='Run randomized inequality suites')
    target = check.add_mutually_exclusive_group(required=True)
    target.add_argument('--suite', help=f"One of: {', '.join(SUITES)}")
    target.add_argument('--all', action='store_true', help='Run every suite')
    check.add_argument('--trials', type=int, help='Trials per suite')
    check.add_argument('--seed', type=int, help='Run seed, a 64-bit unsigned integer')
    check.add_argument('--config', help='JSON file with suite settings')
    check.add_argument('--progress', action='store_true', help='Show a progress bar on stderr')
    check.add_argument('--replay', type=int, metavar='OFFSET', help='Re-run only the trial at OFFSET')
    check.add_argument('--format', default='text', choices=REPORT_FORMATS)
    check.set_defaults(handler=handle_check)
